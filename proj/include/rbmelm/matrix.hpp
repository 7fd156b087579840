#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rbmelm/errors.hpp"

namespace rbmelm {

/// Dense real matrix. Row-major with samples as rows, so the memory layout
/// matches the on-disk and wire ordering used throughout.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline bool is_finite(const Matrix& m) { return m.allFinite(); }

inline void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw NumericError(std::string(what) + ": matrix has non-finite entries");
}

/// Logistic function, numerically stable for large |x|. The result is kept
/// strictly inside (0,1): saturated values are nudged to the nearest
/// representable neighbour.
inline double logistic(double x) {
    double y;
    if (x >= 0.0) {
        y = 1.0 / (1.0 + std::exp(-x));
    } else {
        const double e = std::exp(x);
        y = e / (1.0 + e);
    }
    if (y >= 1.0) return std::nextafter(1.0, 0.0);
    if (y <= 0.0) return std::nextafter(0.0, 1.0);
    return y;
}

inline Matrix logistic(Matrix m) {
    return m.unaryExpr([](double x) { return logistic(x); });
}

/// Row-wise argmax; ties resolve to the lowest index.
inline std::vector<int> argmax_rows(const Matrix& m) {
    std::vector<int> out(static_cast<std::size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) {
        int best = 0;
        for (Index j = 1; j < m.cols(); ++j) {
            if (m(i, j) > m(i, best)) best = static_cast<int>(j);
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

/// Relative Frobenius distance ||a-b||_F / max(||b||_F, floor).
inline double relative_error(const Matrix& a, const Matrix& b) {
    const double denom = std::max(b.norm(), std::numeric_limits<double>::min());
    return (a - b).norm() / denom;
}

}  // namespace rbmelm
