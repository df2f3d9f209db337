#include "hyperwave/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperwave::potential {

void PotentialParams::validate() const
{
    if (!(lambda_scale > 0.0))
        throw std::invalid_argument("PotentialParams: lambda_scale must be > 0");
    if (!std::isfinite(strength) || !std::isfinite(gamma))
        throw std::invalid_argument("PotentialParams: strength and gamma must be finite");
}

double shape(double y, double gamma)
{
    return (y + gamma) * (1.0 - y * y);
}

double evaluate_xi(double strength, double gamma, double xi)
{
    const double y = std::tanh(xi);
    return strength * shape(y, gamma);
}

double evaluate(const PotentialParams& params, double x)
{
    params.validate();
    return evaluate_xi(params.strength, params.gamma, params.lambda_scale * x);
}

static std::optional<Extremum> extremum_at(const PotentialParams& params, double y)
{
    if (!(std::abs(y) < 1.0))
        return std::nullopt;
    Extremum e;
    e.x = std::atanh(y) / params.lambda_scale;
    e.u = params.strength * shape(y, params.gamma);
    return e;
}

Extrema extrema(const PotentialParams& params)
{
    params.validate();
    const double g = params.gamma;
    const double root = std::sqrt(g * g + 3.0);
    Extrema out;
    out.plus = extremum_at(params, -(g + root) / 3.0);
    out.minus = extremum_at(params, -(g - root) / 3.0);
    return out;
}

PotentialClass classify(const PotentialParams& params)
{
    params.validate();
    PotentialClass cls;
    if (params.strength == 0.0) {
        cls.kind = PotentialKind::Well;
        cls.zero_strength = true;
        return cls;
    }
    if (std::abs(params.gamma) < 1.0) {
        cls.kind = PotentialKind::SingleWave;
    } else {
        cls.kind = params.gamma * params.strength < 0.0 ? PotentialKind::Well : PotentialKind::Barrier;
    }
    return cls;
}

double dimensionless_minimum(double strength, double gamma)
{
    const double root = std::sqrt(gamma * gamma + 3.0);
    double lo = 0.0;  // endpoints y = +-1 give W = 0
    for (double y : {-(gamma + root) / 3.0, -(gamma - root) / 3.0}) {
        if (std::abs(y) < 1.0)
            lo = std::min(lo, strength * shape(y, gamma));
    }
    return lo;
}

GridTable sample_grid(const PotentialParams& params, double x_min, double x_max, Eigen::Index count)
{
    params.validate();
    if (!(x_min < x_max))
        throw std::invalid_argument("sample_grid: require x_min < x_max");
    if (count < 2)
        throw std::invalid_argument("sample_grid: require count >= 2");

    GridTable table;
    table.x = Eigen::ArrayXd::LinSpaced(count, x_min, x_max);
    table.x(0) = x_min;  // LinSpaced endpoints are exact, keep them pinned regardless
    table.x(count - 1) = x_max;
    table.u.resize(count);
    for (Eigen::Index i = 0; i < count; ++i)
        table.u(i) = evaluate(params, table.x(i));
    return table;
}

}  // namespace hyperwave::potential
