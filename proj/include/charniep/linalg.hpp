#pragma once

// Small dense helpers: guarded inversion, determinants, multiset matching.

#include "charniep/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace charniep {

inline constexpr double kMaxCondition = 1e12;

/// Inverse by partial-pivot LU; rejects matrices whose reciprocal condition
/// estimate is below 1/kMaxCondition.
inline Matrix checked_inverse(const Matrix& s) {
    if (s.rows() != s.cols() || s.rows() == 0) {
        throw Error(ErrorKind::invalid_size, "inverse needs a non-empty square matrix");
    }
    Eigen::PartialPivLU<Matrix> lu(s);
    const double rcond = lu.rcond();
    if (!(rcond > 1.0 / kMaxCondition)) {
        std::ostringstream os;
        os << "condition estimate " << (rcond > 0 ? 1.0 / rcond : INFINITY) << " exceeds "
           << kMaxCondition;
        throw Error(ErrorKind::ill_conditioned, os.str());
    }
    return lu.inverse();
}

/// Determinant by Gaussian elimination with scaled partial pivoting.
inline double determinant(RealMatrix a) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) throw Error(ErrorKind::invalid_size, "determinant needs a square matrix");
    RealVector scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        scale(i) = a.row(i).cwiseAbs().maxCoeff();
        if (scale(i) == 0.0) return 0.0;
    }
    double det = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        double best = -1.0;
        for (Eigen::Index i = k; i < n; ++i) {
            const double ratio = std::abs(a(i, k)) / scale(i);
            if (ratio > best) {
                best = ratio;
                pivot = i;
            }
        }
        if (a(pivot, k) == 0.0) return 0.0;
        if (pivot != k) {
            a.row(k).swap(a.row(pivot));
            std::swap(scale(k), scale(pivot));
            det = -det;
        }
        det *= a(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            a.row(i).tail(n - k) -= f * a.row(k).tail(n - k);
        }
    }
    return det;
}

/// Result of pairing two multisets of complex numbers.
struct MultisetMatch {
    bool equal = false;
    double max_deviation = 0.0;
    // first element of `a` left without a partner (when !equal)
    std::size_t first_unmatched = 0;
};

/// Pairs every element of `a` with its nearest unused element of `b`,
/// visiting `a` in lexicographic (re, im) order.
inline MultisetMatch match_multisets(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    MultisetMatch result;
    if (a.size() != b.size()) {
        result.first_unmatched = std::min(a.size(), b.size());
        return result;
    }
    auto lex = [](const Complex& x, const Complex& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), lex);
    std::vector<bool> used(b.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t best = b.size();
        double best_dist = INFINITY;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(a[i] - b[j]);
            if (d < best_dist) {
                best_dist = d;
                best = j;
            }
        }
        if (best == b.size() || best_dist > tol) {
            result.first_unmatched = i;
            result.max_deviation = std::max(result.max_deviation, best_dist);
            return result;
        }
        used[best] = true;
        result.max_deviation = std::max(result.max_deviation, best_dist);
    }
    result.equal = true;
    return result;
}

inline double max_abs_imag(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

inline Matrix diag(const Vector& v) { return v.asDiagonal(); }

}  // namespace charniep
