#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <string>

#include "rbmelm/matrix.hpp"

namespace rbmelm {

/// Default singular-value cutoff factor, scaled like LAPACK's gelsd.
inline double default_rcond(Index rows, Index cols) {
    return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max(rows, cols));
}

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// rcond * sigma_max count as zero, so rank-deficient inputs yield the
/// minimum-norm generalized inverse.
inline Matrix pseudoinverse(const Matrix& h, double rcond) {
    require_finite(h, "pseudoinverse");
    if (rcond < 0.0) throw std::invalid_argument("pseudoinverse: rcond must be >= 0");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw NumericError("pseudoinverse: SVD did not converge on " + std::to_string(h.rows()) +
                           "x" + std::to_string(h.cols()) + " matrix");
    }
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? rcond * sv(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    }
    Matrix out = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    require_finite(out, "pseudoinverse result");
    return out;
}

inline Matrix pseudoinverse(const Matrix& h) {
    return pseudoinverse(h, default_rcond(h.rows(), h.cols()));
}

}  // namespace rbmelm
