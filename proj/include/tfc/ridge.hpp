#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace tfc::regfit {

struct RidgeSolution {
    std::vector<double> weights;
    double intercept = 0.0;
};

/// Minimises ||X w + c - y||^2 + lambda ||w||^2 with the intercept `c`
/// left unpenalised.
///
/// Columns are centred first, so the intercept drops out of the normal
/// equations. With `lambda == 0` a rank-deficient design throws
/// SingularSystemError; any `lambda > 0` makes the system well posed.
RidgeSolution ridge_solve(const Eigen::MatrixXd& design, std::span<const double> targets,
                          double lambda);

} // namespace tfc::regfit
