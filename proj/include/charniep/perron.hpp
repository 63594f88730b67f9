#pragma once

// Spectracones and spectratopes of an invertible matrix S: realizing
// matrices M_x = S·D_x·S⁻¹, membership tests with certificates,
// Perron-similarity / RHC / ideal checks, the reduced inequality system of
// a character table, and the classical necessary conditions.

#include "charniep/character_table.hpp"
#include "charniep/core.hpp"
#include "charniep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace charniep {

/// A similarity S with its inverse, computed once. Character tables use the
/// closed-form inverse; other matrices go through guarded LU.
class Similarity {
public:
    explicit Similarity(Matrix s) : s_(std::move(s)), inv_(checked_inverse(s_)) {}
    explicit Similarity(const CharacterTable& q) : s_(q.entries()), inv_(inverse_table(q)) {}

    const Matrix& matrix() const noexcept { return s_; }
    const Matrix& inverse() const noexcept { return inv_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(s_.rows()); }

private:
    Matrix s_;
    Matrix inv_;
};

inline void check_length(const Similarity& s, const Vector& x) {
    if (static_cast<std::size_t>(x.size()) != s.size()) {
        throw Error(ErrorKind::length_mismatch, "spectrum has length " + std::to_string(x.size()) +
                                                    ", matrix has size " + std::to_string(s.size()));
    }
    if (!x.allFinite()) throw Error(ErrorKind::parse_error, "spectrum has non-finite entries");
}

/// M_x = S·D_x·S⁻¹ as a complex matrix.
inline Matrix realize(const Similarity& s, const Vector& x) {
    check_length(s, x);
    return s.matrix() * x.asDiagonal() * s.inverse();
}

/// Real realizing matrix; imaginary parts are discarded only after they are
/// shown to be at most `tol.imag`.
struct RealizingMatrix {
    RealMatrix m;
    Vector x;
};

inline RealizingMatrix realize_real(const Similarity& s, const Vector& x, const Tolerance& tol = {}) {
    const Matrix mx = realize(s, x);
    for (Eigen::Index i = 0; i < mx.rows(); ++i)
        for (Eigen::Index j = 0; j < mx.cols(); ++j)
            if (std::abs(mx(i, j).imag()) > tol.imag) {
                std::ostringstream os;
                os << "entry (" << i + 1 << ", " << j + 1 << ") has imaginary part "
                   << mx(i, j).imag();
                throw Error(ErrorKind::non_real_realization, os.str());
            }
    return {mx.real(), x};
}

/// Names the constraint a rejected point violates.
struct Violation {
    enum class Kind { coefficient, entry, facet, row_sum };
    Kind kind = Kind::entry;
    std::size_t i = 0;  // 0-based
    std::size_t j = 0;  // entry column, unused otherwise
    Complex value = 0.0;
};

/// Outcome of a membership test. `coefficients` always satisfies
/// coefficientsᵀ·S = x (they are xᵀS⁻¹); for row-cone and facet members they
/// are the nonnegative conical weights.
struct MembershipVerdict {
    bool member = false;
    Vector coefficients;
    std::optional<Violation> violation;
};

namespace detail {

inline bool nonnegative_real(Complex v, const Tolerance& tol) {
    return std::abs(v.imag()) <= tol.imag && v.real() >= -tol.eps;
}

inline Vector row_coefficients(const Similarity& s, const Vector& x) {
    return (x.transpose() * s.inverse()).transpose();
}

}  // namespace detail

/// x ∈ C_r(S) iff xᵀS⁻¹ ≥ 0.
inline MembershipVerdict row_cone_membership(const Similarity& s, const Vector& x,
                                             const Tolerance& tol = {}) {
    check_length(s, x);
    MembershipVerdict v;
    v.coefficients = detail::row_coefficients(s, x);
    for (Eigen::Index k = 0; k < v.coefficients.size(); ++k) {
        if (!detail::nonnegative_real(v.coefficients(k), tol)) {
            v.violation = Violation{Violation::Kind::coefficient, static_cast<std::size_t>(k), 0,
                                    v.coefficients(k)};
            return v;
        }
    }
    v.member = true;
    return v;
}

/// x ∈ C(S) iff M_x is real and entrywise nonnegative.
inline MembershipVerdict spectracone_membership(const Similarity& s, const Vector& x,
                                                const Tolerance& tol = {}) {
    const Matrix mx = realize(s, x);
    MembershipVerdict v;
    v.coefficients = detail::row_coefficients(s, x);
    for (Eigen::Index i = 0; i < mx.rows(); ++i)
        for (Eigen::Index j = 0; j < mx.cols(); ++j)
            if (!detail::nonnegative_real(mx(i, j), tol)) {
                v.violation = Violation{Violation::Kind::entry, static_cast<std::size_t>(i),
                                        static_cast<std::size_t>(j), mx(i, j)};
                return v;
            }
    v.member = true;
    return v;
}

/// x ∈ P(S) iff x ∈ C(S) and M_x·e = e.
inline MembershipVerdict spectratope_membership(const Similarity& s, const Vector& x,
                                                const Tolerance& tol = {}) {
    MembershipVerdict v = spectracone_membership(s, x, tol);
    if (!v.member) return v;
    const Vector sums = realize(s, x).rowwise().sum();
    for (Eigen::Index i = 0; i < sums.size(); ++i) {
        if (std::abs(sums(i) - Complex(1.0, 0.0)) > tol.eps) {
            v.member = false;
            v.violation = Violation{Violation::Kind::row_sum, static_cast<std::size_t>(i), 0, sums(i)};
            return v;
        }
    }
    return v;
}

/// Generators (rows of Q) and facet normals |cl(g_k)|·χ_i(g_k) of C(Q).
struct ConeDescription {
    Matrix generators;
    Matrix facet_coeffs;
    std::size_t group_order = 0;

    Vector evaluate(const Vector& x) const {
        if (x.size() != facet_coeffs.cols()) {
            throw Error(ErrorKind::length_mismatch, "spectrum length does not match cone dimension");
        }
        return facet_coeffs * x;
    }
};

inline ConeDescription reduced_inequalities(const CharacterTable& q) {
    ConeDescription cd;
    cd.generators = q.entries();
    cd.facet_coeffs = q.entries();
    for (std::size_t k = 0; k < q.size(); ++k)
        cd.facet_coeffs.col(static_cast<Eigen::Index>(k)) *= static_cast<double>(q.class_sizes()[k]);
    cd.group_order = q.group_order();
    return cd;
}

/// Membership through the reduced system Σ_k |cl(g_k)| χ_i(g_k) x_k ≥ 0.
/// A facet value v is compared as v/|G| (the first-column entry of M_x);
/// the reported violation carries the unscaled v.
inline MembershipVerdict facet_membership(const CharacterTable& q, const Vector& x,
                                          const Tolerance& tol = {}) {
    const ConeDescription cd = reduced_inequalities(q);
    const Vector values = cd.evaluate(x);
    const double g = static_cast<double>(cd.group_order);
    MembershipVerdict v;
    v.coefficients = (x.transpose() * inverse_table(q)).transpose();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!detail::nonnegative_real(values(i) / g, tol)) {
            v.violation = Violation{Violation::Kind::facet, static_cast<std::size_t>(i), 0, values(i)};
            return v;
        }
    }
    v.member = true;
    return v;
}

/// Coefficients c_ℓ with |G|·[M_x]_ij = Σ_ℓ c_ℓ·facet_ℓ(x) for all x; they
/// are the multiplicities of χ_ℓ in χ_i·conj(χ_j). Indices are 0-based.
inline RealVector redundancy_certificate(const CharacterTable& q, std::size_t i, std::size_t j,
                                         const Tolerance& tol = {}) {
    const RealVector c = tensor_multiplicities(q, i, j, true, tol);
    const ConeDescription cd = reduced_inequalities(q);
    const Similarity s(q);
    const auto n = static_cast<Eigen::Index>(q.size());
    const double g = static_cast<double>(q.group_order());
    for (Eigen::Index k = 0; k < n; ++k) {
        const Vector ek = Vector::Unit(n, k);
        const Complex lhs = g * realize(s, ek)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const Complex rhs = (c.cast<Complex>().transpose() * cd.evaluate(ek))(0);
        if (std::abs(lhs - rhs) > tol.eps * std::max(1.0, g)) {
            throw Error(ErrorKind::internal_consistency,
                        "certificate for (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                            ") fails on basis vector " + std::to_string(k + 1));
        }
    }
    return c;
}

struct PerronCheck {
    bool perron = false;
    std::optional<std::size_t> column;  // 0-based witness
    std::size_t qualifying = 0;
};

namespace detail {

/// True iff v = α·p with p > 0; `alpha` receives v_0.
inline bool positive_up_to_phase(const Vector& v, Complex& alpha, const Tolerance& tol) {
    alpha = v(0);
    if (std::abs(alpha) <= tol.eps) return false;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const Complex r = v(i) / alpha;
        if (std::abs(r.imag()) > tol.imag || r.real() <= tol.eps) return false;
    }
    return true;
}

}  // namespace detail

/// S is a Perron similarity iff exactly one k has S·e_k = α·x and
/// e_kᵀ·S⁻¹ = β·yᵀ with x, y > 0 and αβ > 0.
inline PerronCheck is_perron_similarity(const Similarity& s, const Tolerance& tol = {}) {
    PerronCheck out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        Complex alpha, beta;
        const auto kk = static_cast<Eigen::Index>(k);
        if (!detail::positive_up_to_phase(s.matrix().col(kk), alpha, tol)) continue;
        if (!detail::positive_up_to_phase(s.inverse().row(kk).transpose(), beta, tol)) continue;
        const Complex ab = alpha * beta;
        if (std::abs(ab.imag()) > tol.imag || ab.real() <= tol.eps) continue;
        if (!out.column) out.column = k;
        ++out.qualifying;
    }
    out.perron = out.qualifying == 1;
    if (!out.perron) out.column.reset();
    return out;
}

struct RhcCheck {
    bool rhc = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing;  // 0-based, i <= j
    Vector failing_coefficients;
};

/// r_i ∘ r_j ∈ C_r(S) for all i ≤ j.
inline RhcCheck is_rhc(const Similarity& s, const Tolerance& tol = {}) {
    RhcCheck out;
    const auto n = static_cast<Eigen::Index>(s.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const Vector h = s.matrix().row(i).cwiseProduct(s.matrix().row(j)).transpose();
            MembershipVerdict v = row_cone_membership(s, h, tol);
            if (!v.member) {
                out.rhc = false;
                out.failing = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                out.failing_coefficients = v.coefficients;
                return out;
            }
        }
    }
    return out;
}

struct IdealCheck {
    bool ideal = false;
    bool ones_in_row_cone = false;
    RhcCheck rhc;

    std::string diagnosis() const {
        if (ideal) return "ideal";
        std::ostringstream os;
        if (!ones_in_row_cone) os << "e is not in the conical hull of the rows";
        if (!rhc.rhc && rhc.failing) {
            if (!ones_in_row_cone) os << "; ";
            os << "not RHC: r" << rhc.failing->first + 1 << " o r" << rhc.failing->second + 1
               << " leaves the row cone";
        }
        return os.str();
    }
};

/// S is ideal iff e ∈ C_r(S) and S is RHC.
inline IdealCheck is_ideal(const Similarity& s, const Tolerance& tol = {}) {
    IdealCheck out;
    out.ones_in_row_cone =
        row_cone_membership(s, Vector::Ones(static_cast<Eigen::Index>(s.size())), tol).member;
    out.rhc = is_rhc(s, tol);
    out.ideal = out.ones_in_row_cone && out.rhc.rhc;
    return out;
}

namespace detail {

inline Vector checked_column(const Matrix& s, std::size_t k, const Tolerance& tol) {
    if (k >= static_cast<std::size_t>(s.cols())) {
        throw Error(ErrorKind::index_out_of_range, "column " + std::to_string(k + 1) + " out of range");
    }
    const Vector v = s.col(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) <= tol.eps) {
            throw Error(ErrorKind::not_totally_nonzero,
                        "S e_" + std::to_string(k + 1) + " vanishes in row " + std::to_string(i + 1));
        }
    }
    return v;
}

}  // namespace detail

/// D_{v⁻¹}·S with v = S·e_k; column k of the result is all ones.
inline Matrix rescale_stochastic(const Matrix& s, std::size_t k, const Tolerance& tol = {}) {
    const Vector v = detail::checked_column(s, k, tol);
    return v.cwiseInverse().asDiagonal() * s;
}

/// D_{v⁻¹}·M_x·D_v with v = S·e_k; (x_k, e) is an eigenpair of the result.
inline Matrix eigenpair_transform(const Similarity& s, const Vector& x, std::size_t k,
                                  const Tolerance& tol = {}) {
    const Vector v = detail::checked_column(s.matrix(), k, tol);
    return v.cwiseInverse().asDiagonal() * realize(s, x) * v.asDiagonal();
}

struct ConditionResult {
    bool pass = true;
    std::string detail;
};

/// Outcome of the classical necessary conditions on a candidate spectrum:
/// (a) ρ(Λ) ∈ Λ, (b) conj(Λ) = Λ, (c) s_k ≥ 0, (d) s_k^ℓ ≤ n^{ℓ-1}·s_{kℓ}.
struct NecessaryReport {
    ConditionResult spectral_radius;
    ConditionResult self_conjugate;
    ConditionResult power_sums;
    ConditionResult jll;

    bool all_pass() const {
        return spectral_radius.pass && self_conjugate.pass && power_sums.pass && jll.pass;
    }
};

inline NecessaryReport necessary_conditions(const Vector& x, int max_power = 12,
                                            const Tolerance& tol = {}) {
    if (x.size() == 0) throw Error(ErrorKind::invalid_size, "spectrum must be non-empty");
    if (max_power < 1) throw Error(ErrorKind::invalid_size, "max_power must be positive");
    NecessaryReport r;
    const auto n = x.size();

    double rho = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) rho = std::max(rho, std::abs(x(k)));
    bool attained = false;
    for (Eigen::Index k = 0; k < n; ++k)
        if (std::abs(x(k) - Complex(rho, 0.0)) <= tol.spectrum * std::max(1.0, rho)) attained = true;
    if (!attained) {
        r.spectral_radius = {false, "spectral radius " + std::to_string(rho) + " is not in the list"};
    }

    const std::vector<Complex> list = to_std(x);
    const std::vector<Complex> conj_list = to_std(x.conjugate());
    const MultisetMatch m = match_multisets(list, conj_list, tol.spectrum);
    if (!m.equal) {
        std::ostringstream os;
        os << "conjugate of list is not the list (nearest partner off by " << m.max_deviation
           << ")";
        r.self_conjugate = {false, os.str()};
    }

    std::vector<Complex> s(static_cast<std::size_t>(max_power) + 1, 0.0);
    std::vector<double> mag(static_cast<std::size_t>(max_power) + 1, 0.0);
    for (int k = 1; k <= max_power; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
            s[static_cast<std::size_t>(k)] += std::pow(x(i), k);
            mag[static_cast<std::size_t>(k)] += std::pow(std::abs(x(i)), k);
        }
    }
    for (int k = 1; k <= max_power && r.power_sums.pass; ++k) {
        const Complex sk = s[static_cast<std::size_t>(k)];
        const double scale = std::max(1.0, mag[static_cast<std::size_t>(k)]);
        if (std::abs(sk.imag()) > tol.imag * scale || sk.real() < -tol.eps * scale) {
            std::ostringstream os;
            os << "s_" << k << " = " << sk.real();
            if (sk.imag() != 0.0) os << (sk.imag() < 0 ? "-" : "+") << std::abs(sk.imag()) << "i";
            os << " is not nonnegative";
            r.power_sums = {false, os.str()};
        }
    }
    const double nd = static_cast<double>(n);
    for (int k = 1; k <= max_power && r.jll.pass; ++k) {
        for (int l = 2; k * l <= max_power && r.jll.pass; ++l) {
            const double lhs = std::pow(s[static_cast<std::size_t>(k)].real(), l);
            const double rhs = std::pow(nd, l - 1) * s[static_cast<std::size_t>(k * l)].real();
            const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
            if (lhs > rhs + tol.eps * scale) {
                std::ostringstream os;
                os << "s_" << k << "^" << l << " = " << lhs << " > n^" << l - 1 << " s_" << k * l
                   << " = " << rhs;
                r.jll = {false, os.str()};
            }
        }
    }
    return r;
}

/// Strong connectivity of the digraph with an edge i→j whenever m_ij > eps.
inline bool is_irreducible(const RealMatrix& m, const Tolerance& tol = {}) {
    const auto n = m.rows();
    if (n != m.cols()) throw Error(ErrorKind::invalid_size, "matrix must be square");
    if (n <= 1) return true;
    auto reaches_all = [&](bool transpose) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::queue<Eigen::Index> todo;
        todo.push(0);
        seen[0] = true;
        std::size_t count = 1;
        while (!todo.empty()) {
            const Eigen::Index u = todo.front();
            todo.pop();
            for (Eigen::Index v = 0; v < n; ++v) {
                const double w = transpose ? m(v, u) : m(u, v);
                if (w > tol.eps && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    ++count;
                    todo.push(v);
                }
            }
        }
        return count == static_cast<std::size_t>(n);
    };
    return reaches_all(false) && reaches_all(true);
}

struct StructureReport {
    bool real_table = true;  // symmetric branch when true, normal otherwise
    double defect = 0.0;
};

/// Real table: M_x symmetric. Complex table: M_x normal. Throws
/// table_corrupt when the defect exceeds `tol.structure`.
inline StructureReport structure_check(const CharacterTable& q, const Vector& x,
                                       const Tolerance& tol = {}) {
    const Matrix mx = realize(Similarity(q), x);
    StructureReport r;
    r.real_table = q.is_real();
    if (r.real_table) {
        r.defect = (mx - mx.transpose()).cwiseAbs().maxCoeff();
    } else {
        r.defect = (mx.adjoint() * mx - mx * mx.adjoint()).cwiseAbs().maxCoeff();
    }
    if (r.defect > tol.structure) {
        std::ostringstream os;
        os << q.label() << ": realizing matrix is not " << (r.real_table ? "symmetric" : "normal")
           << " (defect " << r.defect << ")";
        throw Error(ErrorKind::table_corrupt, os.str());
    }
    return r;
}

/// Eigenvalues of M_x against Λ(x), nearest pairing.
inline MultisetMatch spectrum_check(const Matrix& mx, const Vector& x, double tol) {
    Eigen::ComplexEigenSolver<Matrix> solver(mx, false);
    return match_multisets(to_std(solver.eigenvalues()), to_std(x), tol);
}

}  // namespace charniep
