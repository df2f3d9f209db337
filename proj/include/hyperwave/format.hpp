#pragma once

#include <string>

namespace hyperwave::format {

/// Number formatting used by every table writer: 12 significant digits
/// ("%.12g"), one more than the published tables, so the convergence
/// level stays visible.
std::string sig12(double v);

}  // namespace hyperwave::format
