#pragma once

// Volumes of projected spectratopes of real character tables, the trace
// nonnegative polytope, and vertex data for plotting.

#include "charniep/character_table.hpp"
#include "charniep/core.hpp"
#include "charniep/linalg.hpp"
#include "charniep/perron.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

namespace charniep {

/// conv(v_0, ..., v_m) in R^m.
struct Simplex {
    std::vector<RealVector> vertices;

    std::size_t dimension() const { return vertices.empty() ? 0 : vertices.size() - 1; }

    /// Rows [1, v_iᵀ]; throws length_mismatch unless there are m+1 points in R^m.
    RealMatrix bordered() const {
        const std::size_t m = dimension();
        if (vertices.empty()) throw Error(ErrorKind::length_mismatch, "simplex needs vertices");
        RealMatrix b(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(m + 1));
        for (std::size_t i = 0; i <= m; ++i) {
            if (static_cast<std::size_t>(vertices[i].size()) != m) {
                throw Error(ErrorKind::length_mismatch,
                            std::to_string(m + 1) + " vertices need " + std::to_string(m) +
                                " coordinates, vertex " + std::to_string(i) + " has " +
                                std::to_string(vertices[i].size()));
            }
            b(static_cast<Eigen::Index>(i), 0) = 1.0;
            b.row(static_cast<Eigen::Index>(i)).tail(static_cast<Eigen::Index>(m)) = vertices[i].transpose();
        }
        return b;
    }

    bool degenerate() const {
        const RealMatrix b = bordered();
        double scale = 1.0;
        for (Eigen::Index i = 0; i < b.rows(); ++i) scale *= b.row(i).norm();
        return std::abs(determinant(b)) <= 1e-12 * scale;
    }
};

inline double factorial(std::size_t m) {
    double f = 1.0;
    for (std::size_t k = 2; k <= m; ++k) f *= static_cast<double>(k);
    return f;
}

/// (1/m!)·|det [1 v_iᵀ]|, or 0 for affinely dependent vertices.
inline double simplex_volume(const Simplex& s) {
    const RealMatrix b = s.bordered();
    if (s.degenerate()) return 0.0;
    return std::abs(determinant(b)) / factorial(s.dimension());
}

/// Deletes coordinate k (0-based).
inline RealVector project_drop(const RealVector& x, std::size_t k) {
    const auto n = static_cast<std::size_t>(x.size());
    if (k >= n) {
        throw Error(ErrorKind::index_out_of_range,
                    "coordinate " + std::to_string(k) + " outside vector of length " + std::to_string(n));
    }
    RealVector out(static_cast<Eigen::Index>(n - 1));
    for (std::size_t i = 0, j = 0; i < n; ++i)
        if (i != k) out(static_cast<Eigen::Index>(j++)) = x(static_cast<Eigen::Index>(i));
    return out;
}

/// Exact value of the trace nonnegative polytope volume,
/// 2^m − (1/m!)·Σ_{k=0}^{⌊(m−1)/2⌋} (−1)^k C(m,k) (m−1−2k)^m, as num/den.
struct ExactVolume {
    __int128 num = 0;
    __int128 den = 1;
    double value() const { return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)); }
};

inline constexpr std::size_t kExactTraceVolumeMax = 24;

inline ExactVolume trace_polytope_volume_exact(std::size_t m) {
    if (m > kExactTraceVolumeMax) {
        throw Error(ErrorKind::invalid_size, "exact trace polytope volume limited to m <= " +
                                                 std::to_string(kExactTraceVolumeMax));
    }
    __int128 fact = 1;
    for (std::size_t k = 2; k <= m; ++k) fact *= static_cast<__int128>(k);
    __int128 sum = 0;
    __int128 binom = 1;
    const auto mm = static_cast<long long>(m);
    for (long long k = 0; 2 * k <= mm - 1; ++k) {
        __int128 p = 1;
        for (long long e = 0; e < mm; ++e) p *= static_cast<__int128>(mm - 1 - 2 * k);
        sum += (k % 2 == 0 ? 1 : -1) * binom * p;
        binom = binom * (mm - k) / (k + 1);
    }
    ExactVolume v;
    v.num = (static_cast<__int128>(1) << m) * fact - sum;
    v.den = fact;
    __int128 a = v.num < 0 ? -v.num : v.num, b = v.den;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        v.num /= a;
        v.den /= a;
    }
    return v;
}

/// Volume of {λ ∈ [−1,1]^m : 1 + Σλ ≥ 0}.
inline double trace_polytope_volume(std::size_t m) {
    if (m <= kExactTraceVolumeMax) return trace_polytope_volume_exact(m).value();
    long double sum = 0.0L;
    long double binom = 1.0L;
    const auto mm = static_cast<long long>(m);
    for (long long k = 0; 2 * k <= mm - 1; ++k) {
        sum += (k % 2 == 0 ? 1 : -1) * binom * std::pow(static_cast<long double>(mm - 1 - 2 * k), mm);
        binom = binom * static_cast<long double>(mm - k) / static_cast<long double>(k + 1);
    }
    long double fact = 1.0L;
    for (long long k = 2; k <= mm; ++k) fact *= static_cast<long double>(k);
    return static_cast<double>(std::pow(2.0L, mm) - sum / fact);
}

struct VolumeReport {
    double formula_value = 0.0;
    double determinant_value = 0.0;
    double ratio_to_trace_polytope = 0.0;
};

inline void require_real(const CharacterTable& q) {
    if (!q.is_real()) {
        throw Error(ErrorKind::real_table_required,
                    q.label() + ": volume is defined only for real character tables");
    }
}

/// Rows of D_{v⁻¹}Q (v = degree vector) with the first coordinate dropped.
inline std::vector<RealVector> projected_stochastic_rows(const CharacterTable& q) {
    require_real(q);
    const RealMatrix scaled = rescale_stochastic(q.entries(), 0).real();
    std::vector<RealVector> rows;
    for (Eigen::Index i = 0; i < scaled.rows(); ++i)
        rows.push_back(project_drop(scaled.row(i).transpose(), 0));
    return rows;
}

/// Volume of Π₁(P(D_{v⁻¹}Q)) by the group-theoretic formula
/// √(Π|C_G(g_k)|) / ((n−1)!·Π dim ρ_k), cross-checked against the simplex
/// determinant of the projected rows.
inline VolumeReport spectratope_volume(const CharacterTable& q) {
    require_real(q);
    const std::size_t n = q.size();
    double log_v = -std::lgamma(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        log_v += 0.5 * std::log(static_cast<double>(q.centralizer_orders()[k]));
        log_v -= std::log(static_cast<double>(q.degrees()[k]));
    }
    VolumeReport r;
    r.formula_value = std::exp(log_v);
    r.determinant_value = simplex_volume(Simplex{projected_stochastic_rows(q)});
    if (std::abs(r.formula_value - r.determinant_value) > 1e-9 * std::max(1.0, r.formula_value)) {
        throw Error(ErrorKind::internal_consistency,
                    q.label() + ": volume formula and determinant disagree");
    }
    r.ratio_to_trace_polytope = r.formula_value / trace_polytope_volume(n - 1);
    return r;
}

inline double occupancy_ratio(const CharacterTable& q) {
    return spectratope_volume(q).ratio_to_trace_polytope;
}

/// Vertices of the trace nonnegative polytope in R^m: cube corners with
/// Σλ ≥ −1 plus the points where cube edges cross Σλ = −1. In 2-D they
/// are returned counterclockwise.
inline std::vector<RealVector> trace_polytope_vertices(std::size_t m) {
    if (m == 0 || m > 16) throw Error(ErrorKind::unsupported_dimension, "dimension must be 1..16");
    std::vector<RealVector> out;
    auto add = [&](const RealVector& p) {
        for (const auto& q : out)
            if ((q - p).cwiseAbs().maxCoeff() < 1e-12) return;
        out.push_back(p);
    };
    const std::size_t corners = std::size_t{1} << m;
    auto corner = [&](std::size_t bits) {
        RealVector c(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) c(static_cast<Eigen::Index>(i)) = (bits >> i) & 1 ? 1.0 : -1.0;
        return c;
    };
    for (std::size_t b = 0; b < corners; ++b) {
        const RealVector c = corner(b);
        if (c.sum() >= -1.0 - 1e-12) add(c);
    }
    for (std::size_t b = 0; b < corners; ++b) {
        for (std::size_t i = 0; i < m; ++i) {
            if ((b >> i) & 1) continue;
            const RealVector lo = corner(b), hi = corner(b | (std::size_t{1} << i));
            const double s0 = lo.sum() + 1.0, s1 = hi.sum() + 1.0;
            if ((s0 < 0) != (s1 < 0) && s0 != s1) {
                const double t = s0 / (s0 - s1);
                add(lo + t * (hi - lo));
            }
        }
    }
    if (m == 2) {
        RealVector centre = RealVector::Zero(2);
        for (const auto& p : out) centre += p;
        centre /= static_cast<double>(out.size());
        std::sort(out.begin(), out.end(), [&](const RealVector& a, const RealVector& b) {
            return std::atan2(a(1) - centre(1), a(0) - centre(0)) <
                   std::atan2(b(1) - centre(1), b(0) - centre(0));
        });
    }
    return out;
}

namespace detail {

inline std::string g12(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

}  // namespace detail

/// Plot data: `dim=<2|3>`, then `spectratope:` and `feasible:` vertex lines.
inline void write_plot_data(const CharacterTable& q, std::ostream& os) {
    const std::size_t n = q.size();
    if (n != 3 && n != 4) {
        throw Error(ErrorKind::unsupported_dimension,
                    q.label() + ": plot data needs a 3x3 or 4x4 table, got " + std::to_string(n));
    }
    const auto rows = projected_stochastic_rows(q);
    auto line = [&](const RealVector& p) {
        for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? " " : "") << detail::g12(p(i));
        os << '\n';
    };
    os << "dim=" << n - 1 << '\n' << "spectratope:\n";
    for (const auto& r : rows) line(r);
    os << "feasible:\n";
    for (const auto& v : trace_polytope_vertices(n - 1)) line(v);
}

inline void emit_plot_data(const CharacterTable& q, const std::string& path) {
    require_real(q);
    if (q.size() != 3 && q.size() != 4) {
        throw Error(ErrorKind::unsupported_dimension,
                    q.label() + ": plot data needs a 3x3 or 4x4 table, got " + std::to_string(q.size()));
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::parse_error, "cannot open " + path + " for writing");
    write_plot_data(q, out);
}

}  // namespace charniep
