#pragma once

// Finite groups given by a Cayley table, their constructors, and
// conjugacy-class structure.

#include "charniep/core.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace charniep {

inline constexpr std::size_t kOrderCap = 512;

/// A permutation of {0, ..., m-1} stored as its image list.
using Permutation = std::vector<int>;

/// Immutable finite group. Elements are the integers 0..order-1 and the
/// identity is always element 0. `cayley(a, b)` is the product a·b.
class FiniteGroup {
public:
    std::size_t order() const noexcept { return order_; }
    int identity() const noexcept { return identity_; }
    const std::string& label() const noexcept { return label_; }
    FiniteGroup relabeled(std::string label) const {
        FiniteGroup g = *this;
        g.label_ = std::move(label);
        return g;
    }

    int multiply(int a, int b) const { return cayley_[index(a, b)]; }
    int inverse(int g) const { return inverses_[static_cast<std::size_t>(g)]; }
    const std::vector<int>& inverses() const noexcept { return inverses_; }

    std::vector<std::vector<int>> cayley() const {
        std::vector<std::vector<int>> rows(order_, std::vector<int>(order_));
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = 0; b < order_; ++b) rows[a][b] = cayley_[a * order_ + b];
        return rows;
    }

    int element_order(int g) const {
        int k = 1;
        for (int h = g; h != identity_; h = multiply(h, g)) ++k;
        return k;
    }

    /// g^k for any integer k (negative powers go through the inverse).
    int power(int g, long long k) const {
        const long long m = element_order(g);
        k = ((k % m) + m) % m;
        int result = identity_;
        for (long long i = 0; i < k; ++i) result = multiply(result, g);
        return result;
    }

    bool is_abelian() const {
        for (std::size_t a = 0; a < order_; ++a)
            for (std::size_t b = a + 1; b < order_; ++b)
                if (cayley_[a * order_ + b] != cayley_[b * order_ + a]) return false;
        return true;
    }

    /// Validates every group axiom; throws invalid_group naming the first
    /// failure. `table` must already have the identity at index 0.
    static FiniteGroup from_validated_table(std::vector<std::vector<int>> table, std::string label);

private:
    FiniteGroup() = default;

    std::size_t index(int a, int b) const {
        return static_cast<std::size_t>(a) * order_ + static_cast<std::size_t>(b);
    }

    std::size_t order_ = 0;
    std::vector<int> cayley_;
    int identity_ = 0;
    std::vector<int> inverses_;
    std::string label_;
};

struct ConjugacyClass {
    int representative = 0;
    std::vector<int> members;  // ascending
    std::size_t size = 0;
    std::size_t centralizer_order = 0;
};

namespace detail {

inline std::string triple_text(std::size_t a, std::size_t b, std::size_t c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

}  // namespace detail

inline FiniteGroup FiniteGroup::from_validated_table(std::vector<std::vector<int>> table,
                                                     std::string label) {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::invalid_order, "group must have at least one element");
    if (n > kOrderCap) {
        throw Error(ErrorKind::group_too_large,
                    "order " + std::to_string(n) + " exceeds cap " + std::to_string(kOrderCap));
    }
    FiniteGroup g;
    g.order_ = n;
    g.label_ = std::move(label);
    g.cayley_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) {
            throw Error(ErrorKind::invalid_group, "row " + std::to_string(a) + " has length " +
                                                      std::to_string(table[a].size()) +
                                                      ", expected " + std::to_string(n));
        }
        for (std::size_t b = 0; b < n; ++b) {
            const int v = table[a][b];
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw Error(ErrorKind::invalid_group, "entry (" + std::to_string(a) + ", " +
                                                          std::to_string(b) + ") = " +
                                                          std::to_string(v) + " out of range");
            }
            g.cayley_[a * n + b] = v;
        }
    }
    // Latin square
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
            const auto r = static_cast<std::size_t>(g.cayley_[a * n + b]);
            const auto c = static_cast<std::size_t>(g.cayley_[b * n + a]);
            if (row_seen[r]) {
                throw Error(ErrorKind::invalid_group,
                            "not a Latin square: row " + std::to_string(a) + " repeats " +
                                std::to_string(r));
            }
            if (col_seen[c]) {
                throw Error(ErrorKind::invalid_group,
                            "not a Latin square: column " + std::to_string(a) + " repeats " +
                                std::to_string(c));
            }
            row_seen[r] = col_seen[c] = true;
        }
    }
    for (std::size_t b = 0; b < n; ++b) {
        if (g.cayley_[b] != static_cast<int>(b) || g.cayley_[b * n] != static_cast<int>(b)) {
            throw Error(ErrorKind::invalid_group,
                        "element 0 is not a two-sided identity at " + std::to_string(b));
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto ab = static_cast<std::size_t>(g.cayley_[a * n + b]);
            for (std::size_t c = 0; c < n; ++c) {
                const auto bc = static_cast<std::size_t>(g.cayley_[b * n + c]);
                if (g.cayley_[ab * n + c] != g.cayley_[a * n + bc]) {
                    throw Error(ErrorKind::invalid_group,
                                "associativity fails at " + detail::triple_text(a, b, c));
                }
            }
        }
    }
    g.inverses_.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (g.cayley_[a * n + b] == 0) {
                if (g.cayley_[b * n + a] != 0) {
                    throw Error(ErrorKind::invalid_group,
                                "element " + std::to_string(a) + " has no two-sided inverse");
                }
                g.inverses_[a] = static_cast<int>(b);
                break;
            }
        }
    }
    return g;
}

/// Z_n with i·j = (i + j) mod n.
inline FiniteGroup build_cyclic(std::size_t n) {
    if (n == 0) throw Error(ErrorKind::invalid_order, "cyclic group order must be positive");
    if (n > kOrderCap) {
        throw Error(ErrorKind::group_too_large, "order " + std::to_string(n) + " exceeds cap");
    }
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<int>((i + j) % n);
    return FiniteGroup::from_validated_table(std::move(t), "Z" + std::to_string(n));
}

/// G1 × G2 with element (i, j) stored at index i·|G2| + j.
inline FiniteGroup build_direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
    const std::size_t n1 = g1.order(), n2 = g2.order();
    const std::size_t n = n1 * n2;
    if (n > kOrderCap) {
        throw Error(ErrorKind::group_too_large, "order " + std::to_string(n) + " exceeds cap");
    }
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const int i = g1.multiply(static_cast<int>(a / n2), static_cast<int>(b / n2));
            const int j = g2.multiply(static_cast<int>(a % n2), static_cast<int>(b % n2));
            t[a][b] = i * static_cast<int>(n2) + j;
        }
    }
    return FiniteGroup::from_validated_table(std::move(t), g1.label() + "x" + g2.label());
}

/// Validates a raw Cayley table; the identity is relabeled to index 0 by
/// swapping it with element 0.
inline FiniteGroup build_from_cayley(std::vector<std::vector<int>> table, std::string label = "G") {
    const std::size_t n = table.size();
    if (n == 0) throw Error(ErrorKind::invalid_order, "empty Cayley table");
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) {
            throw Error(ErrorKind::invalid_group, "Cayley table is not square at row " +
                                                      std::to_string(a));
        }
        for (int v : table[a]) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw Error(ErrorKind::invalid_group, "row " + std::to_string(a) +
                                                          " has out-of-range entry " +
                                                          std::to_string(v));
            }
        }
    }
    int e = -1;
    for (std::size_t a = 0; a < n && e < 0; ++a) {
        bool ok = true;
        for (std::size_t b = 0; b < n && ok; ++b)
            ok = table[a][b] == static_cast<int>(b) && table[b][a] == static_cast<int>(b);
        if (ok) e = static_cast<int>(a);
    }
    if (e < 0) {
        // let the validator report the Latin-square or identity failure precisely
        return FiniteGroup::from_validated_table(std::move(table), std::move(label));
    }
    if (e != 0) {
        std::vector<int> relabel(n);
        std::iota(relabel.begin(), relabel.end(), 0);
        std::swap(relabel[0], relabel[static_cast<std::size_t>(e)]);
        std::vector<std::vector<int>> t(n, std::vector<int>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                t[static_cast<std::size_t>(relabel[a])][static_cast<std::size_t>(relabel[b])] =
                    relabel[static_cast<std::size_t>(table[a][b])];
        table = std::move(t);
    }
    return FiniteGroup::from_validated_table(std::move(table), std::move(label));
}

/// Closure of `generators` under `mul`, enumerated breadth-first: the queue
/// is scanned in insertion order and each element is multiplied on the right
/// by every generator in the given order. `one` becomes element 0.
template <class T, class Mul>
FiniteGroup build_from_closure(const T& one, const std::vector<T>& generators, Mul mul,
                               std::string label, std::size_t order_cap = kOrderCap) {
    std::vector<T> elements{one};
    std::map<T, int> index{{one, 0}};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const T& gen : generators) {
            T next = mul(elements[head], gen);
            if (index.find(next) == index.end()) {
                if (elements.size() >= order_cap) {
                    throw Error(ErrorKind::group_too_large,
                                "closure exceeds order cap " + std::to_string(order_cap));
                }
                index.emplace(next, static_cast<int>(elements.size()));
                elements.push_back(std::move(next));
            }
        }
    }
    const std::size_t n = elements.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            auto it = index.find(mul(elements[a], elements[b]));
            if (it == index.end()) {
                throw Error(ErrorKind::invalid_group, "generated set is not closed");
            }
            t[a][b] = it->second;
        }
    }
    return FiniteGroup::from_validated_table(std::move(t), std::move(label));
}

/// Product that applies `a` first, then `b`: (a·b)(x) = b(a(x)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[static_cast<std::size_t>(a[x])];
    return r;
}

inline void check_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (std::size_t x = 0; x < p.size(); ++x) {
        const int y = p[x];
        if (y < 0 || static_cast<std::size_t>(y) >= p.size() || seen[static_cast<std::size_t>(y)]) {
            throw Error(ErrorKind::invalid_permutation,
                        "not a bijection at point " + std::to_string(x + 1));
        }
        seen[static_cast<std::size_t>(y)] = true;
    }
}

inline FiniteGroup build_from_generators(std::vector<Permutation> perms, std::string label = "G",
                                         std::size_t order_cap = kOrderCap) {
    std::size_t degree = 1;
    for (const auto& p : perms) degree = std::max(degree, p.size());
    for (auto& p : perms) {
        check_permutation(p);
        for (std::size_t x = p.size(); x < degree; ++x) p.push_back(static_cast<int>(x));
    }
    Permutation id(degree);
    std::iota(id.begin(), id.end(), 0);
    return build_from_closure(id, perms, compose, std::move(label), order_cap);
}

/// Parses one permutation in 1-based cycle notation, e.g. "(1 2)(3 4 5)" or
/// "(1,2) (3,4)". `degree` pads to at least that many points.
inline Permutation parse_cycles(std::string_view text, std::size_t degree = 0) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::invalid_permutation, why + " in \"" + std::string(text) + "\"");
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            ++i;
            std::vector<int> cycle;
            std::string token;
            bool closed = false;
            while (i < text.size()) {
                const char d = text[i++];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    token.push_back(d);
                    continue;
                }
                if (!token.empty()) {
                    cycle.push_back(std::stoi(token));
                    token.clear();
                }
                if (d == ')') {
                    closed = true;
                    break;
                }
                if (d != ',' && !std::isspace(static_cast<unsigned char>(d))) {
                    fail(std::string("unexpected character '") + d + "'");
                }
            }
            if (!closed) fail("unterminated cycle");
            cycles.push_back(std::move(cycle));
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }
    std::size_t m = degree;
    for (const auto& cyc : cycles)
        for (int pt : cyc) {
            if (pt < 1) fail("points are 1-based");
            m = std::max(m, static_cast<std::size_t>(pt));
        }
    Permutation p(m);
    std::iota(p.begin(), p.end(), 0);
    std::vector<bool> moved(m, false);
    for (const auto& cyc : cycles) {
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const auto from = static_cast<std::size_t>(cyc[k] - 1);
            if (moved[from]) fail("point " + std::to_string(cyc[k]) + " repeated");
            moved[from] = true;
            p[from] = cyc[(k + 1) % cyc.size()] - 1;
        }
    }
    check_permutation(p);
    return p;
}

/// Splits "(1 2),(1 2 3)" into generators at top-level commas/semicolons.
inline std::vector<Permutation> parse_generator_list(std::string_view text) {
    std::vector<Permutation> gens;
    std::string current;
    int depth = 0;
    auto flush = [&] {
        bool blank = std::all_of(current.begin(), current.end(),
                                 [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
        if (!blank) gens.push_back(parse_cycles(current));
        current.clear();
    };
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == ',' || c == ';') && depth == 0) {
            flush();
        } else {
            current.push_back(c);
        }
    }
    flush();
    if (gens.empty()) throw Error(ErrorKind::invalid_permutation, "no generators given");
    return gens;
}

/// Conjugacy classes: identity class first, the rest ordered by their
/// smallest member index. Centralizer orders are counted directly and
/// cross-checked against |G| = |C_G(g)|·|cl(g)|.
inline std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<int> owner(n, -1);
    std::vector<ConjugacyClass> classes;
    for (std::size_t x = 0; x < n; ++x) {
        if (owner[x] >= 0) continue;
        ConjugacyClass cls;
        cls.representative = static_cast<int>(x);
        for (std::size_t a = 0; a < n; ++a) {
            const int y = g.multiply(g.multiply(static_cast<int>(a), static_cast<int>(x)),
                                     g.inverse(static_cast<int>(a)));
            if (owner[static_cast<std::size_t>(y)] < 0) {
                owner[static_cast<std::size_t>(y)] = static_cast<int>(classes.size());
                cls.members.push_back(y);
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        cls.size = cls.members.size();
        std::size_t commuting = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (g.multiply(static_cast<int>(a), static_cast<int>(x)) ==
                g.multiply(static_cast<int>(x), static_cast<int>(a)))
                ++commuting;
        }
        cls.centralizer_order = commuting;
        if (cls.size * cls.centralizer_order != n) {
            throw Error(ErrorKind::internal_consistency,
                        "class of " + std::to_string(x) + ": size " + std::to_string(cls.size) +
                            " x centralizer " + std::to_string(commuting) + " != " +
                            std::to_string(n));
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

/// Element -> position of its class in `classes`.
inline std::vector<int> class_map(const FiniteGroup& g, const std::vector<ConjugacyClass>& classes) {
    std::vector<int> owner(g.order(), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (int m : classes[c].members) owner[static_cast<std::size_t>(m)] = static_cast<int>(c);
    return owner;
}

}  // namespace charniep
