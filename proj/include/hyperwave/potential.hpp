#pragma once

#include <Eigen/Core>
#include <optional>

namespace hyperwave::potential {

/// Parameters of the hyperbolic single-wave potential
///
///   V(x)/E0 = C (tanh(lambda x) + gamma) / cosh^2(lambda x),
///
/// with dimensionless strength C, shape parameter gamma and inverse
/// length scale lambda (E0 = (lambda hbar)^2 / 2m). All internal
/// computation is dimensionless (xi = lambda x, eps = E/E0); lambda only
/// rescales the coordinate at the I/O boundary.
struct PotentialParams {
    double strength = 0.0;      // C
    double gamma = 0.0;         // gamma
    double lambda_scale = 1.0;  // lambda > 0

    void validate() const;
};

enum class PotentialKind { SingleWave, Well, Barrier };

/// |gamma| < 1 -> SingleWave; otherwise Well for gamma*C < 0, Barrier for
/// gamma*C > 0. C = 0 degenerates to a flagged zero potential (reported
/// as Well).
struct PotentialClass {
    PotentialKind kind = PotentialKind::SingleWave;
    bool zero_strength = false;
};

/// Potential shape in the reference coordinate y = tanh(xi):
/// W(y) = (y + gamma)(1 - y^2), so U = C * W.
double shape(double y, double gamma);

/// Dimensionless potential U(xi) = V/E0 at xi = lambda x. cosh^{-2} is
/// formed as 1 - tanh^2 so large |xi| cannot overflow.
double evaluate_xi(double strength, double gamma, double xi);

/// U = V/E0 at physical coordinate x.
double evaluate(const PotentialParams& params, double x);

struct Extremum {
    double x = 0.0;  // physical coordinate
    double u = 0.0;  // U = V/E0 there
};

/// The two stationary points x_pm = atanh(-(gamma pm sqrt(gamma^2+3))/3)/lambda.
/// An extremum whose y-value falls outside (-1, 1) is absent, not an error.
struct Extrema {
    std::optional<Extremum> plus;
    std::optional<Extremum> minus;
};

Extrema extrema(const PotentialParams& params);

PotentialClass classify(const PotentialParams& params);

/// min over y in [-1,1] of C*W(y); the variational floor below which no
/// bound state can exist. Zero when the potential is nowhere negative.
double dimensionless_minimum(double strength, double gamma);

struct GridTable {
    Eigen::ArrayXd x;
    Eigen::ArrayXd u;
};

/// Uniform samples of U(x) on [x_min, x_max], exact at the endpoints.
GridTable sample_grid(const PotentialParams& params, double x_min, double x_max, Eigen::Index count);

}  // namespace hyperwave::potential
