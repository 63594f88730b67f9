#pragma once

// Character tables: direct constructors (DFT, Walsh), Kronecker products,
// the class-matrix eigenvector method for arbitrary small groups, and
// character arithmetic.

#include "charniep/core.hpp"
#include "charniep/group.hpp"
#include "charniep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace charniep {

/// n×n matrix of irreducible character values q_ij = χ_i(g_j) together with
/// the class data it is indexed by. Row 0 is the trivial character and
/// column 0 the identity class.
class CharacterTable {
public:
    /// Validates all table invariants within `tol`; throws table_corrupt.
    static CharacterTable make(Matrix entries, std::vector<std::size_t> class_sizes,
                               std::vector<std::size_t> centralizer_orders, std::string label,
                               std::vector<bool> snapped = {}, const Tolerance& tol = {});

    std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t group_order() const noexcept { return group_order_; }
    const Matrix& entries() const noexcept { return entries_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    Vector row(std::size_t i) const { return entries_.row(static_cast<Eigen::Index>(i)).transpose(); }
    const std::vector<std::size_t>& class_sizes() const noexcept { return class_sizes_; }
    const std::vector<std::size_t>& centralizer_orders() const noexcept { return centralizers_; }
    const std::vector<std::size_t>& degrees() const noexcept { return degrees_; }
    const std::string& label() const noexcept { return label_; }
    bool is_real() const noexcept { return is_real_; }
    /// Imaginary parts lie between eps and the snapping radius: neither
    /// clearly real nor clearly complex.
    bool real_borderline() const noexcept { return borderline_; }
    bool snapped(std::size_t i, std::size_t j) const {
        return snapped_.empty() ? false : snapped_[i * size() + j];
    }

private:
    CharacterTable() = default;

    Matrix entries_;
    std::vector<std::size_t> class_sizes_;
    std::vector<std::size_t> centralizers_;
    std::vector<std::size_t> degrees_;
    std::vector<bool> snapped_;
    std::string label_;
    std::size_t group_order_ = 0;
    bool is_real_ = true;
    bool borderline_ = false;
};

inline CharacterTable CharacterTable::make(Matrix entries, std::vector<std::size_t> class_sizes,
                                           std::vector<std::size_t> centralizer_orders,
                                           std::string label, std::vector<bool> snapped,
                                           const Tolerance& tol) {
    const auto n = static_cast<std::size_t>(entries.rows());
    auto corrupt = [&](const std::string& why) {
        throw Error(ErrorKind::table_corrupt, label + ": " + why);
    };
    if (n == 0 || entries.cols() != entries.rows()) corrupt("table must be square and non-empty");
    if (class_sizes.size() != n || centralizer_orders.size() != n) {
        corrupt("class data length does not match table size");
    }
    if (!entries.allFinite()) corrupt("non-finite entry");
    const std::size_t order = class_sizes[0] * centralizer_orders[0];
    std::size_t class_total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (class_sizes[j] * centralizer_orders[j] != order) {
            corrupt("class " + std::to_string(j + 1) + ": size x centralizer != |G|");
        }
        class_total += class_sizes[j];
    }
    if (class_sizes[0] != 1) corrupt("first class must be the identity class");
    if (class_total != order) corrupt("class sizes do not sum to |G|");

    CharacterTable t;
    t.degrees_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex q = entries(static_cast<Eigen::Index>(i), 0);
        const double d = std::round(q.real());
        if (d < 1 || std::abs(q - Complex(d, 0)) > tol.snap) {
            corrupt("degree of row " + std::to_string(i + 1) + " is not a positive integer");
        }
        t.degrees_[i] = static_cast<std::size_t>(d);
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(entries(0, static_cast<Eigen::Index>(j)) - Complex(1, 0)) > tol.eps) {
            corrupt("first row is not the trivial character");
        }
    }
    std::size_t degree_sq = 0;
    for (auto d : t.degrees_) degree_sq += d * d;
    if (degree_sq != order) corrupt("sum of squared degrees != |G|");

    const Matrix gram = entries.adjoint() * entries;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double expect = a == b ? static_cast<double>(centralizer_orders[a]) : 0.0;
            const Complex got = gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (std::abs(got - Complex(expect, 0)) > tol.eps) {
                std::ostringstream os;
                os << "column orthogonality fails at (" << a + 1 << ", " << b + 1 << "): "
                   << std::abs(got - Complex(expect, 0));
                corrupt(os.str());
            }
        }
    }
    // row orthonormality under the class-weighted inner product
    Vector w(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        w(static_cast<Eigen::Index>(k)) = static_cast<double>(class_sizes[k]) / static_cast<double>(order);
    const Matrix rows = entries.conjugate() * w.asDiagonal() * entries.transpose();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Complex got = rows(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (std::abs(got - Complex(a == b ? 1.0 : 0.0, 0)) > tol.eps) {
                corrupt("row orthonormality fails at (" + std::to_string(a + 1) + ", " +
                        std::to_string(b + 1) + ")");
            }
        }
    }
    const double max_imag = max_abs_imag(entries);
    t.entries_ = std::move(entries);
    t.class_sizes_ = std::move(class_sizes);
    t.centralizers_ = std::move(centralizer_orders);
    t.snapped_ = std::move(snapped);
    if (!t.snapped_.empty() && t.snapped_.size() != n * n) corrupt("snap mask has wrong size");
    t.label_ = std::move(label);
    t.group_order_ = order;
    t.is_real_ = max_imag <= tol.eps;
    t.borderline_ = max_imag > tol.eps && max_imag <= tol.snap;
    return t;
}

namespace detail {

/// ω_n^k computed from the reduced exponent so that equal powers give
/// bit-identical values.
/// cos(π/2 · num/den) for 0 ≤ num ≤ den, evaluated on the reduced fraction in
/// long double, so equal angles always give the same double.
inline double quarter_cos(long long num, long long den) {
    const long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (num == 0) return 1.0;
    if (num == den) return 0.0;
    return static_cast<double>(std::cos(std::numbers::pi_v<long double> / 2 * num / den));
}

/// exp(2πik/n), reduced to the first quadrant before evaluation.
inline Complex root_of_unity(long long k, long long n) {
    const long long r = ((k % n) + n) % n;
    const long long quadrant = 4 * r / n;
    const long long rho = 4 * r - quadrant * n;  // angle = quadrant·π/2 + π/2·rho/n
    const double c = quarter_cos(rho, n), s = quarter_cos(n - rho, n);
    switch (quadrant) {
    case 0: return {c, s};
    case 1: return {s == 0.0 ? 0.0 : -s, c};
    case 2: return {-c, s == 0.0 ? 0.0 : -s};
    default: return {s, -c};
    }
}

struct SnapCandidates {
    std::vector<double> values;  // sorted
};

inline const SnapCandidates& trig_candidates() {
    static const SnapCandidates cands = [] {
        SnapCandidates c;
        for (int scale = 1; scale <= 4; ++scale) {
            for (int q = 1; q <= 24; ++q) {
                for (int p = 0; p <= q; ++p) {
                    const double v = scale * quarter_cos(p, q);
                    c.values.push_back(v);
                    c.values.push_back(-v);
                }
            }
        }
        std::sort(c.values.begin(), c.values.end());
        // one representative per cluster; keep clusters sign-symmetric
        std::vector<double> unique;
        for (double v : c.values)
            if (unique.empty() || v - unique.back() > 1e-12) unique.push_back(v);
        for (double& v : unique)
            if (v > 0) v = -*std::lower_bound(unique.begin(), unique.end(), -v - 1e-12);
        c.values = std::move(unique);
        return c;
    }();
    return cands;
}

/// Nearest value among rationals p/q (q ≤ 64) and c·cos/sin(pπ/q)
/// (c ≤ 4, q ≤ 24), if one lies within `radius`.
inline std::optional<double> snap_component(double v, double radius) {
    double best = v;
    double best_dist = INFINITY;
    for (int q = 1; q <= 64; ++q) {
        const double p = std::round(v * q);
        const double cand = p / q;
        const double d = std::abs(v - cand);
        if (d < best_dist) {
            best_dist = d;
            best = cand;
        }
    }
    // rationals win whenever they are within reach
    if (best_dist <= radius) return best == 0.0 ? 0.0 : best;
    const auto& vals = trig_candidates().values;
    auto it = std::lower_bound(vals.begin(), vals.end(), v);
    for (auto jt : {it, it == vals.begin() ? it : it - 1}) {
        if (jt == vals.end()) continue;
        const double d = std::abs(v - *jt);
        if (d < best_dist) {
            best_dist = d;
            best = *jt;
        }
    }
    if (best_dist <= radius) return best == 0.0 ? 0.0 : best;
    return std::nullopt;
}

inline std::vector<bool> snap_entries(Matrix& m, double radius) {
    std::vector<bool> mask(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            auto re = snap_component(m(i, j).real(), radius);
            auto im = snap_component(m(i, j).imag(), radius);
            m(i, j) = {re.value_or(m(i, j).real()), im.value_or(m(i, j).imag())};
            mask[static_cast<std::size_t>(i * m.cols() + j)] = re.has_value() && im.has_value();
        }
    }
    return mask;
}

}  // namespace detail

/// F_n = [ω_n^{(i-1)(j-1)}], the character table of Z_n.
inline CharacterTable dft_table(std::size_t n, const Tolerance& tol = {}) {
    if (n == 0) throw Error(ErrorKind::invalid_size, "DFT size must be positive");
    Matrix f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const auto nn = static_cast<long long>(n);
    for (long long i = 0; i < nn; ++i)
        for (long long j = 0; j < nn; ++j) f(i, j) = detail::root_of_unity(i * j, nn);
    return CharacterTable::make(std::move(f), std::vector<std::size_t>(n, 1),
                                std::vector<std::size_t>(n, n), "Z" + std::to_string(n),
                                std::vector<bool>(n * n, true), tol);
}

/// Q1 ⊗ Q2, the character table of G1 × G2; class (a, b) sits at a·n2 + b.
inline CharacterTable kron_tables(const CharacterTable& q1, const CharacterTable& q2,
                                  const Tolerance& tol = {}) {
    const std::size_t n1 = q1.size(), n2 = q2.size(), n = n1 * n2;
    Matrix k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<bool> mask(n * n);
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b)
            for (std::size_t c = 0; c < n1; ++c)
                for (std::size_t d = 0; d < n2; ++d) {
                    const std::size_t r = a * n2 + b, s = c * n2 + d;
                    k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = q1(a, c) * q2(b, d);
                    mask[r * n + s] = q1.snapped(a, c) && q2.snapped(b, d);
                }
    std::vector<std::size_t> sizes(n), cents(n);
    for (std::size_t c = 0; c < n1; ++c)
        for (std::size_t d = 0; d < n2; ++d) {
            sizes[c * n2 + d] = q1.class_sizes()[c] * q2.class_sizes()[d];
            cents[c * n2 + d] = q1.centralizer_orders()[c] * q2.centralizer_orders()[d];
        }
    return CharacterTable::make(std::move(k), std::move(sizes), std::move(cents),
                                q1.label() + "x" + q2.label(), std::move(mask), tol);
}

/// H_m = [[1,1],[1,-1]]^{⊗k} for m = 2^k, the character table of (Z2)^k.
inline CharacterTable walsh_table(std::size_t m, const Tolerance& tol = {}) {
    if (m == 0 || (m & (m - 1)) != 0) {
        throw Error(ErrorKind::invalid_size, "Walsh size " + std::to_string(m) +
                                                 " is not a power of two");
    }
    if (m == 1) return dft_table(1, tol);
    CharacterTable h = dft_table(2, tol);
    for (std::size_t k = 4; k <= m; k *= 2) h = kron_tables(h, dft_table(2, tol), tol);
    return h;
}

struct BurnsideOptions {
    std::uint64_t seed = kDefaultSeed;
    int max_draws = 8;
    double separation = 1e-6;
};

/// Character table of `g` by simultaneous diagonalization of the class
/// matrices. Columns follow `conjugacy_classes(g)`; rows are sorted by
/// degree, then by descending (re, im) of entries rounded to 1e-6, which
/// puts the trivial character first.
inline CharacterTable burnside_table(const FiniteGroup& g, const Tolerance& tol = {},
                                     const BurnsideOptions& opts = {}) {
    const auto classes = conjugacy_classes(g);
    const auto owner = class_map(g, classes);
    const std::size_t n = classes.size();
    const double order = static_cast<double>(g.order());

    // a[i](j, k) = #{(x, y) in cl_i × cl_j : xy = z} for a fixed z in cl_k
    std::vector<RealMatrix> a(n, RealMatrix::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n)));
    for (std::size_t k = 0; k < n; ++k) {
        const int z = classes[k].representative;
        for (std::size_t x = 0; x < g.order(); ++x) {
            const int y = g.multiply(g.inverse(static_cast<int>(x)), z);
            a[static_cast<std::size_t>(owner[x])](owner[static_cast<std::size_t>(y)],
                                                   static_cast<Eigen::Index>(k)) += 1.0;
        }
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix eigvecs;
    bool separated = false;
    double last_gap = 0.0;
    for (int draw = 0; draw < opts.max_draws && !separated; ++draw) {
        RealMatrix combo = RealMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) combo += unif(rng) * a[i];
        Eigen::ComplexEigenSolver<Matrix> solver(combo.cast<Complex>());
        if (solver.info() != Eigen::Success) continue;
        const Vector& lambda = solver.eigenvalues();
        double gap = INFINITY;
        for (Eigen::Index p = 0; p < lambda.size(); ++p)
            for (Eigen::Index q = p + 1; q < lambda.size(); ++q)
                gap = std::min(gap, std::abs(lambda(p) - lambda(q)));
        last_gap = n == 1 ? INFINITY : gap;
        if (last_gap >= opts.separation) {
            separated = true;
            eigvecs = solver.eigenvectors();
        }
    }
    if (!separated) {
        std::ostringstream os;
        os << g.label() << ": eigenvalues not separated after " << opts.max_draws
           << " draws (last gap " << last_gap << ")";
        throw Error(ErrorKind::numerical_degeneracy, os.str());
    }

    Matrix q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
        Vector omega = eigvecs.col(static_cast<Eigen::Index>(r));
        if (std::abs(omega(0)) < 1e-12) {
            throw Error(ErrorKind::numerical_degeneracy,
                        g.label() + ": eigenvector vanishes on the identity class");
        }
        omega /= omega(0);
        double weight = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            weight += std::norm(omega(static_cast<Eigen::Index>(k))) /
                      static_cast<double>(classes[k].size);
        const double d_float = std::sqrt(order / weight);
        const double d = std::round(d_float);
        if (d < 1 || std::abs(d - d_float) > 1e-3) {
            throw Error(ErrorKind::numerical_degeneracy,
                        g.label() + ": recovered degree is not an integer");
        }
        for (std::size_t k = 0; k < n; ++k)
            q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
                d * omega(static_cast<Eigen::Index>(k)) / static_cast<double>(classes[k].size);
    }

    auto mask = detail::snap_entries(q, tol.snap);

    std::vector<std::size_t> order_idx(n);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    auto key = [&](std::size_t r) {
        std::vector<double> k;
        k.reserve(2 * n + 1);
        k.push_back(-std::round(q(static_cast<Eigen::Index>(r), 0).real()));
        for (std::size_t c = 0; c < n; ++c) {
            const Complex v = q(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            k.push_back(std::round(v.real() * 1e6) / 1e6);
            k.push_back(std::round(v.imag() * 1e6) / 1e6);
        }
        return k;
    };
    std::vector<std::vector<double>> keys(n);
    for (std::size_t r = 0; r < n; ++r) keys[r] = key(r);
    // ascending degree (stored negated), descending entries
    std::stable_sort(order_idx.begin(), order_idx.end(),
                     [&](std::size_t x, std::size_t y) { return keys[x] > keys[y]; });

    Matrix sorted(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<bool> sorted_mask(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        sorted.row(static_cast<Eigen::Index>(r)) = q.row(static_cast<Eigen::Index>(order_idx[r]));
        for (std::size_t c = 0; c < n; ++c) sorted_mask[r * n + c] = mask[order_idx[r] * n + c];
    }
    std::vector<std::size_t> sizes(n), cents(n);
    for (std::size_t k = 0; k < n; ++k) {
        sizes[k] = classes[k].size;
        cents[k] = classes[k].centralizer_order;
    }
    return CharacterTable::make(std::move(sorted), std::move(sizes), std::move(cents), g.label(),
                                std::move(sorted_mask), tol);
}

/// [Q⁻¹]_ij = conj(q_ji) / |C_G(g_i)|.
inline Matrix inverse_table(const CharacterTable& q) {
    const auto n = static_cast<Eigen::Index>(q.size());
    Matrix inv(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            inv(i, j) = std::conj(q.entries()(j, i)) /
                        static_cast<double>(q.centralizer_orders()[static_cast<std::size_t>(i)]);
    return inv;
}

/// (1/|G|) Σ_k |cl(g_k)| conj(a_k) b_k.
inline Complex char_inner_product(const CharacterTable& q, const Vector& a, const Vector& b) {
    const auto n = static_cast<Eigen::Index>(q.size());
    if (a.size() != n || b.size() != n) {
        throw Error(ErrorKind::length_mismatch, "class functions must have length " +
                                                    std::to_string(q.size()));
    }
    Complex sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k)
        sum += static_cast<double>(q.class_sizes()[static_cast<std::size_t>(k)]) *
               std::conj(a(k)) * b(k);
    return sum / static_cast<double>(q.group_order());
}

inline void check_row_index(const CharacterTable& q, std::size_t i) {
    if (i >= q.size()) {
        throw Error(ErrorKind::index_out_of_range,
                    "row " + std::to_string(i + 1) + " outside 1.." + std::to_string(q.size()));
    }
}

/// Multiplicities of the irreducibles in χ_i·χ_j (χ_j conjugated when
/// `conjugate_second`). Indices are 0-based. Values are returned unrounded.
inline RealVector tensor_multiplicities(const CharacterTable& q, std::size_t i, std::size_t j,
                                        bool conjugate_second, const Tolerance& tol = {}) {
    check_row_index(q, i);
    check_row_index(q, j);
    const auto n = static_cast<Eigen::Index>(q.size());
    Vector rj = q.row(j);
    if (conjugate_second) rj = rj.conjugate();
    const Vector product = q.row(i).cwiseProduct(rj);
    RealVector alpha(n);
    Vector rebuilt = Vector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex m = char_inner_product(q, product, q.row(static_cast<std::size_t>(k)));
        const double nearest = std::round(m.real());
        if (std::abs(m.imag()) > 1e-4 || std::abs(m.real() - nearest) > 1e-4 || nearest < 0) {
            std::ostringstream os;
            os << q.label() << ": multiplicity " << k + 1 << " of rows (" << i + 1 << ", "
               << j + 1 << ") is " << m.real() << (m.imag() < 0 ? "-" : "+")
               << std::abs(m.imag()) << "i";
            throw Error(ErrorKind::table_corrupt, os.str());
        }
        alpha(k) = m.real();
        rebuilt += m.real() * q.row(static_cast<std::size_t>(k));
    }
    if ((rebuilt - product).cwiseAbs().maxCoeff() > tol.eps) {
        throw Error(ErrorKind::table_corrupt,
                    q.label() + ": multiplicities do not reconstruct the product character");
    }
    return alpha;
}

/// The dephased complex Hadamard matrix F4^(1)(θ); generally not a
/// character table.
inline Matrix dephased_f4_theta(double theta) {
    if (!(theta >= 0.0 && theta < std::numbers::pi)) {
        throw Error(ErrorKind::index_out_of_range, "theta must lie in [0, pi)");
    }
    const Complex u = Complex(0, 1) * std::polar(1.0, theta);
    Matrix f(4, 4);
    f << 1, 1, 1, 1,
         1, u, -1, -u,
         1, -1, 1, -1,
         1, -u, -1, u;
    return f;
}

}  // namespace charniep
