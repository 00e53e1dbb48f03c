#include "tfc/ridge.hpp"

#include "tfc/error.hpp"

#include <cmath>
#include <string>

namespace tfc::regfit {

RidgeSolution ridge_solve(const Eigen::MatrixXd& design, std::span<const double> targets,
                          double lambda) {
    const Eigen::Index rows = design.rows();
    const Eigen::Index cols = design.cols();
    if (rows < 1) {
        throw InsufficientDataError("ridge regression needs at least one row");
    }
    if (static_cast<std::size_t>(rows) != targets.size()) {
        throw SpecError("design has " + std::to_string(rows) + " rows but " +
                        std::to_string(targets.size()) + " targets were given");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw SpecError("ridge penalty must be a finite non-negative number");
    }

    const Eigen::Map<const Eigen::VectorXd> y(targets.data(), rows);
    const double y_mean = y.mean();
    RidgeSolution out;
    if (cols == 0) {
        out.intercept = y_mean;
        return out;
    }

    const Eigen::RowVectorXd x_mean = design.colwise().mean();
    const Eigen::MatrixXd xc = design.rowwise() - x_mean;
    const Eigen::VectorXd yc = y.array() - y_mean;

    Eigen::VectorXd w;
    if (lambda == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
        if (qr.rank() < cols) {
            throw SingularSystemError("least-squares system is singular (rank " +
                                      std::to_string(qr.rank()) + " of " + std::to_string(cols) +
                                      " columns); use a ridge penalty lambda > 0");
        }
        w = qr.solve(yc);
    } else {
        Eigen::MatrixXd gram = xc.transpose() * xc;
        gram.diagonal().array() += lambda;
        Eigen::LLT<Eigen::MatrixXd> llt(gram);
        if (llt.info() != Eigen::Success) {
            throw SingularSystemError("ridge normal equations are not positive definite");
        }
        w = llt.solve(xc.transpose() * yc);
    }

    out.weights.assign(w.data(), w.data() + w.size());
    out.intercept = y_mean - x_mean.dot(w);
    return out;
}

} // namespace tfc::regfit
