#pragma once

// Built-in groups: every group of order at most 16 (42 isomorphism types)
// plus Sym(4).

#include "charniep/group.hpp"

#include <functional>
#include <string>
#include <vector>

namespace charniep {

/// Product of cyclic groups Z_{n1} × Z_{n2} × ⋯ labeled "Zn1xZn2...".
inline FiniteGroup build_abelian(const std::vector<std::size_t>& cyclic_factors) {
    if (cyclic_factors.empty()) throw Error(ErrorKind::invalid_order, "no cyclic factors given");
    FiniteGroup g = build_cyclic(cyclic_factors[0]);
    for (std::size_t i = 1; i < cyclic_factors.size(); ++i)
        g = build_direct_product(g, build_cyclic(cyclic_factors[i]));
    return g;
}

/// ⟨a, b | a^m = 1, b^n = a^s, b·a·b⁻¹ = a^r⟩ with elements a^i·b^j stored
/// at j·m + i. Requires r^n ≡ 1 and r·s ≡ s (mod m).
inline FiniteGroup build_metacyclic(int m, int n, int r, int s, std::string label) {
    const std::size_t order = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    std::vector<int> rpow(static_cast<std::size_t>(n), 1);
    for (int j = 1; j < n; ++j) rpow[static_cast<std::size_t>(j)] = rpow[static_cast<std::size_t>(j) - 1] * r % m;
    std::vector<std::vector<int>> t(order, std::vector<int>(order));
    for (int j1 = 0; j1 < n; ++j1)
        for (int i1 = 0; i1 < m; ++i1)
            for (int j2 = 0; j2 < n; ++j2)
                for (int i2 = 0; i2 < m; ++i2) {
                    int i = i1 + rpow[static_cast<std::size_t>(j1)] * i2;
                    int j = j1 + j2;
                    if (j >= n) {
                        i += s;
                        j -= n;
                    }
                    i %= m;
                    t[static_cast<std::size_t>(j1 * m + i1)][static_cast<std::size_t>(j2 * m + i2)] = j * m + i;
                }
    return build_from_cayley(std::move(t), std::move(label));
}

/// (Z4 × Z2) ⋊ Z2 where the Z2 acts by (i, j) ↦ (i, j + i).
inline FiniteGroup build_z4z2_semidirect_z2() {
    auto idx = [](int i, int j, int k) { return (k * 2 + j) * 4 + i; };
    std::vector<std::vector<int>> t(16, std::vector<int>(16));
    for (int k1 = 0; k1 < 2; ++k1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i1 = 0; i1 < 4; ++i1)
                for (int k2 = 0; k2 < 2; ++k2)
                    for (int j2 = 0; j2 < 2; ++j2)
                        for (int i2 = 0; i2 < 4; ++i2)
                            t[static_cast<std::size_t>(idx(i1, j1, k1))][static_cast<std::size_t>(idx(i2, j2, k2))] =
                                idx((i1 + i2) % 4, (j1 + j2 + k1 * i2) % 2, (k1 + k2) % 2);
    return build_from_cayley(std::move(t), "(Z4xZ2):Z2");
}

inline FiniteGroup build_named_generators(const std::string& gens, std::string label) {
    return build_from_generators(parse_generator_list(gens), std::move(label));
}

struct CatalogEntry {
    std::string label;
    std::function<FiniteGroup()> build;
};

inline std::vector<CatalogEntry> builtin_catalog() {
    auto abelian = [](std::vector<std::size_t> f) {
        return [f] { return build_abelian(f); };
    };
    auto perms = [](std::string gens, std::string label) {
        return [gens, label] { return build_named_generators(gens, label); };
    };
    auto meta = [](int m, int n, int r, int s, std::string label) {
        return [=] { return build_metacyclic(m, n, r, s, label); };
    };
    auto product = [](std::function<FiniteGroup()> a, std::function<FiniteGroup()> b) {
        return [a, b] { return build_direct_product(a(), b()); };
    };
    std::vector<CatalogEntry> c;
    for (std::size_t n = 1; n <= 16; ++n) c.push_back({"Z" + std::to_string(n), abelian({n})});
    c.push_back({"Z2xZ2", abelian({2, 2})});
    c.push_back({"Z2xZ4", abelian({2, 4})});
    c.push_back({"Z2xZ2xZ2", abelian({2, 2, 2})});
    c.push_back({"Z3xZ3", abelian({3, 3})});
    c.push_back({"Z2xZ6", abelian({2, 6})});
    c.push_back({"Z4xZ4", abelian({4, 4})});
    c.push_back({"Z2xZ8", abelian({2, 8})});
    c.push_back({"Z2xZ2xZ4", abelian({2, 2, 4})});
    c.push_back({"Z2xZ2xZ2xZ2", abelian({2, 2, 2, 2})});

    c.push_back({"Sym(3)", perms("(1 2),(1 2 3)", "Sym(3)")});
    c.push_back({"D8", perms("(1 2 3 4),(1 3)", "D8")});
    c.push_back({"Q8", meta(4, 2, 3, 2, "Q8")});
    c.push_back({"D10", meta(5, 2, 4, 0, "D10")});
    c.push_back({"A4", perms("(1 2 3),(1 2)(3 4)", "A4")});
    c.push_back({"D12", meta(6, 2, 5, 0, "D12")});
    c.push_back({"Dic12", meta(3, 4, 2, 0, "Dic12")});
    c.push_back({"D14", meta(7, 2, 6, 0, "D14")});
    c.push_back({"D16", meta(8, 2, 7, 0, "D16")});
    c.push_back({"Q16", meta(8, 2, 7, 4, "Q16")});
    c.push_back({"SD16", meta(8, 2, 3, 0, "SD16")});
    c.push_back({"M16", meta(8, 2, 5, 0, "M16")});
    c.push_back({"Z4:Z4", meta(4, 4, 3, 0, "Z4:Z4")});
    c.push_back({"D8xZ2", product(perms("(1 2 3 4),(1 3)", "D8"), abelian({2}))});
    c.push_back({"Q8xZ2", product(meta(4, 2, 3, 2, "Q8"), abelian({2}))});
    c.push_back({"Pauli", perms("(1 5)(2 6)(3 7)(4 8),(5 7)(6 8),(1 2 3 4)(5 6 7 8)", "Pauli")});
    c.push_back({"(Z4xZ2):Z2", [] { return build_z4z2_semidirect_z2(); }});

    c.push_back({"Sym(4)", perms("(1 2),(1 2 3 4)", "Sym(4)")});
    return c;
}

inline std::vector<FiniteGroup> builtin_groups() {
    std::vector<FiniteGroup> out;
    for (const auto& e : builtin_catalog()) out.push_back(e.build());
    return out;
}

/// Looks up a catalog label (exact match); throws invalid_group otherwise.
inline FiniteGroup builtin_group(const std::string& label) {
    for (const auto& e : builtin_catalog())
        if (e.label == label) return e.build();
    throw Error(ErrorKind::invalid_group, "no built-in group named " + label);
}

}  // namespace charniep
