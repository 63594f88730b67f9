#pragma once

// Farey fractions, unit-circle points of the Karpelevič region, total
// extremality, abelian factorization and permutation matching of tables.

#include "charniep/character_table.hpp"
#include "charniep/core.hpp"
#include "charniep/group.hpp"
#include "charniep/perron.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace charniep {

struct FareyFraction {
    long long p = 0;
    long long q = 1;

    friend bool operator==(const FareyFraction&, const FareyFraction&) = default;
};

/// F_n in ascending order, generated by the neighbour recurrence
/// (a/b, c/d) → (c/d, (k·c − a)/(k·d − b)) with k = ⌊(n + b)/d⌋.
inline std::vector<FareyFraction> farey(long long n) {
    if (n < 1) throw Error(ErrorKind::invalid_size, "Farey order must be positive");
    std::vector<FareyFraction> out{{0, 1}};
    long long a = 0, b = 1, c = 1, d = n;
    while (true) {
        out.push_back({c, d});
        if (c == 1 && d == 1) break;
        const long long k = (n + b) / d;
        const long long nc = k * c - a, nd = k * d - b;
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    return out;
}

struct CirclePoint {
    long long p = 0;
    long long q = 1;
    Complex value;
};

/// {ω_q^p : p/q ∈ F_n} closed under conjugation, deduplicated within eps.
inline std::vector<CirclePoint> karpelevic_circle_points(long long n, const Tolerance& tol = {}) {
    std::vector<CirclePoint> pts;
    auto add = [&](long long p, long long q) {
        const Complex v = detail::root_of_unity(p, q);
        for (const auto& c : pts)
            if (std::abs(c.value - v) <= tol.eps) return;
        const long long r = ((p % q) + q) % q;
        const long long g = std::gcd(r, q);
        pts.push_back({r / g, q / g, v});
    };
    for (const auto& f : farey(n)) {
        add(f.p, f.q);
        add(f.q - f.p, f.q);
    }
    return pts;
}

struct ExtremalityCheck {
    bool totally_extremal = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing;  // 0-based
};

/// Every entry within eps of a Karpelevič circle point of index n = size.
inline ExtremalityCheck is_totally_extremal(const Matrix& s, const Tolerance& tol = {}) {
    if (s.rows() != s.cols() || s.rows() == 0) {
        throw Error(ErrorKind::invalid_size, "total extremality needs a square matrix");
    }
    const auto pts = karpelevic_circle_points(s.rows(), tol);
    ExtremalityCheck out;
    for (Eigen::Index i = 0; i < s.rows(); ++i)
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            const bool near = std::any_of(pts.begin(), pts.end(), [&](const CirclePoint& c) {
                return std::abs(c.value - s(i, j)) <= tol.eps;
            });
            if (!near) {
                out.totally_extremal = false;
                out.failing = std::make_pair(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                return out;
            }
        }
    return out;
}

namespace detail {

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int exact_log(long long value, long long p) {
    int k = 0;
    while (value > 1) {
        if (value % p != 0) throw Error(ErrorKind::internal_consistency, "census is not a prime power");
        value /= p;
        ++k;
    }
    return k;
}

}  // namespace detail

/// Primary decomposition Z_{p1^n1} ⊕ ⋯ of an abelian group from its element
/// census: with N_k = #{g : g^{p^k} = e}, the number of cyclic p-factors of
/// exponent ≥ k is log_p N_k − log_p N_{k−1}. Returns the prime powers in
/// ascending order.
inline std::vector<long long> abelian_factorization(const FiniteGroup& g) {
    if (!g.is_abelian()) throw Error(ErrorKind::not_abelian, g.label() + " is not abelian");
    std::vector<long long> out;
    const auto order = static_cast<long long>(g.order());
    std::vector<int> element_orders(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) element_orders[x] = g.element_order(static_cast<int>(x));
    for (const auto& [p, a] : detail::factorize(order)) {
        std::vector<int> at_least(static_cast<std::size_t>(a) + 2, 0);
        int prev_log = 0;
        long long pk = 1;
        for (int k = 1; k <= a; ++k) {
            pk *= p;
            long long count = 0;
            for (int o : element_orders)
                if (pk % o == 0) ++count;
            const int lg = detail::exact_log(count, p);
            at_least[static_cast<std::size_t>(k)] = lg - prev_log;
            prev_log = lg;
        }
        for (int k = 1; k <= a; ++k) {
            const int exactly = at_least[static_cast<std::size_t>(k)] - at_least[static_cast<std::size_t>(k) + 1];
            long long pw = 1;
            for (int e = 0; e < k; ++e) pw *= p;
            for (int c = 0; c < exactly; ++c) out.push_back(pw);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Kronecker product of DFT tables for the given cyclic orders.
inline CharacterTable abelian_table(const std::vector<long long>& factors, const Tolerance& tol = {}) {
    if (factors.empty()) return dft_table(1, tol);
    CharacterTable t = dft_table(static_cast<std::size_t>(factors[0]), tol);
    for (std::size_t i = 1; i < factors.size(); ++i)
        t = kron_tables(t, dft_table(static_cast<std::size_t>(factors[i]), tol), tol);
    return t;
}

inline std::string abelian_label(const std::vector<long long>& factors) {
    if (factors.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "xZ" : "Z") + std::to_string(factors[i]);
    return s;
}

/// Every abelian group of order n, as lists of prime-power cyclic orders.
inline std::vector<std::vector<long long>> abelian_groups_of_order(long long n) {
    std::vector<std::vector<long long>> result{{}};
    for (const auto& [p, a] : detail::factorize(n)) {
        // partitions of a, parts descending
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        auto rec = [&](auto&& self, int remaining, int max_part) -> void {
            if (remaining == 0) {
                parts.push_back(cur);
                return;
            }
            for (int part = std::min(remaining, max_part); part >= 1; --part) {
                cur.push_back(part);
                self(self, remaining - part, part);
                cur.pop_back();
            }
        };
        rec(rec, a, a);
        std::vector<std::vector<long long>> next;
        for (const auto& base : result) {
            for (const auto& part : parts) {
                auto f = base;
                for (int e : part) {
                    long long pw = 1;
                    for (int k = 0; k < e; ++k) pw *= p;
                    f.push_back(pw);
                }
                std::sort(f.begin(), f.end());
                next.push_back(std::move(f));
            }
        }
        result = std::move(next);
    }
    return result;
}

/// Result of matching B against A: B(row_perm[i], col_perm[j]) ≈ A(i, j).
struct TableMatch {
    bool matched = false;
    std::vector<std::size_t> row_perm;
    std::vector<std::size_t> col_perm;
};

namespace detail {

using EntryKey = std::pair<long long, long long>;

inline EntryKey entry_key(Complex v) {
    return {std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6)};
}

}  // namespace detail

/// Finds independent row and column permutations taking `b` to `a`
/// (entries compared on a 1e-6 grid). Columns are assigned one at a time;
/// a partial assignment survives only while the multisets of row prefixes
/// agree. `a_weights`/`b_weights` (e.g. class sizes), when given, must match
/// on paired columns.
inline TableMatch match_tables(const Matrix& a, const Matrix& b,
                               const std::vector<std::size_t>& a_weights = {},
                               const std::vector<std::size_t>& b_weights = {},
                               std::size_t node_budget = 2'000'000) {
    TableMatch out;
    const auto n = static_cast<std::size_t>(a.rows());
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) return out;
    using detail::EntryKey;
    std::vector<std::vector<EntryKey>> ka(n, std::vector<EntryKey>(n)), kb(n, std::vector<EntryKey>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ka[i][j] = detail::entry_key(a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            kb[i][j] = detail::entry_key(b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
    auto column_profile = [&](const std::vector<std::vector<EntryKey>>& k, std::size_t j) {
        std::vector<EntryKey> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = k[i][j];
        std::sort(col.begin(), col.end());
        return col;
    };
    std::vector<std::vector<EntryKey>> pa(n), pb(n);
    for (std::size_t j = 0; j < n; ++j) {
        pa[j] = column_profile(ka, j);
        pb[j] = column_profile(kb, j);
    }
    const bool weighted = a_weights.size() == n && b_weights.size() == n;
    std::vector<std::size_t> assign;
    std::vector<bool> used(n, false);
    std::size_t nodes = 0;

    auto prefixes_agree = [&]() {
        const std::size_t d = assign.size();
        std::vector<std::vector<EntryKey>> ra(n), rb(n);
        for (std::size_t i = 0; i < n; ++i) {
            ra[i].resize(d);
            rb[i].resize(d);
            for (std::size_t c = 0; c < d; ++c) {
                ra[i][c] = ka[i][c];
                rb[i][c] = kb[i][assign[c]];
            }
        }
        std::sort(ra.begin(), ra.end());
        std::sort(rb.begin(), rb.end());
        return ra == rb;
    };

    auto search = [&](auto&& self) -> bool {
        if (++nodes > node_budget) return false;
        const std::size_t d = assign.size();
        if (d == n) return true;
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || pa[d] != pb[c]) continue;
            if (weighted && a_weights[d] != b_weights[c]) continue;
            assign.push_back(c);
            used[c] = true;
            if (prefixes_agree() && self(self)) return true;
            used[c] = false;
            assign.pop_back();
        }
        return false;
    };
    if (!search(search)) return out;

    // recover the row permutation from the full column assignment
    out.col_perm = assign;
    out.row_perm.assign(n, n);
    std::vector<bool> row_used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < n; ++r) {
            if (row_used[r]) continue;
            bool same = true;
            for (std::size_t c = 0; c < n && same; ++c) same = ka[i][c] == kb[r][assign[c]];
            if (same) {
                out.row_perm[i] = r;
                row_used[r] = true;
                break;
            }
        }
        if (out.row_perm[i] == n) return TableMatch{};
    }
    out.matched = true;
    return out;
}

inline TableMatch match_tables(const CharacterTable& a, const CharacterTable& b) {
    return match_tables(a.entries(), b.entries(), a.class_sizes(), b.class_sizes());
}

/// Evidence gathered for a candidate matrix against the closing conjecture.
struct ProbeReport {
    bool perron_normalized = false;  // Perron similarity, S·e1 = e, max |s_ij| ≤ 1 + eps
    bool ideal = false;
    bool totally_extremal = false;
    bool normalization_partial = false;  // exactly one of S·e1 = e, |s_ij| ≤ 1 holds
    bool match_attempted = false;
    std::optional<std::string> matches;
};

inline ProbeReport conjecture_probe(const Matrix& s, const Tolerance& tol = {}) {
    ProbeReport r;
    const Similarity sim(s);
    const bool first_column_ones =
        (s.col(0) - Vector::Ones(s.rows())).cwiseAbs().maxCoeff() <= tol.eps;
    const bool bounded = s.cwiseAbs().maxCoeff() <= 1.0 + tol.eps;
    r.normalization_partial = first_column_ones != bounded;
    r.perron_normalized = is_perron_similarity(sim, tol).perron && first_column_ones && bounded;
    r.ideal = is_ideal(sim, tol).ideal;
    r.totally_extremal = is_totally_extremal(s, tol).totally_extremal;
    if (r.perron_normalized && r.ideal && r.totally_extremal) {
        r.match_attempted = true;
        for (const auto& factors : abelian_groups_of_order(s.rows())) {
            const CharacterTable t = abelian_table(factors, tol);
            if (match_tables(t.entries(), s).matched) {
                r.matches = abelian_label(factors);
                break;
            }
        }
    }
    return r;
}

}  // namespace charniep
