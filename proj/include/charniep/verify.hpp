#pragma once

// Golden checks over the built-in groups: published tables, Perron and
// ideal properties, inequality systems, volumes, spectra, the F4(θ)
// counterexample, strict inclusion and extremality. Each check reports
// PASS/FAIL with a short detail string.

#include "charniep/catalog.hpp"
#include "charniep/character_table.hpp"
#include "charniep/core.hpp"
#include "charniep/extremal.hpp"
#include "charniep/format.hpp"
#include "charniep/geometry.hpp"
#include "charniep/group.hpp"
#include "charniep/perron.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace charniep {

struct CheckResult {
    std::string category;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    Tolerance tol;
    std::uint64_t seed = kDefaultSeed;
    int inequality_samples = 1000;
    int spectrum_samples = 500;
    int grid = 41;
};

inline const std::vector<std::string>& verify_categories() {
    static const std::vector<std::string> c{"tables",   "perron",         "inequalities",
                                            "volumes",  "spectrum",       "counterexample",
                                            "inclusion", "extremal"};
    return c;
}

namespace detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

/// Built-in groups with their tables, computed once per tolerance/seed.
struct BuiltinTable {
    std::string label;
    FiniteGroup group;
    std::optional<CharacterTable> table;
    std::string error;
};

inline std::vector<BuiltinTable> builtin_tables(const VerifyOptions& o) {
    std::vector<BuiltinTable> out;
    BurnsideOptions bo;
    bo.seed = o.seed;
    for (const auto& e : builtin_catalog()) {
        BuiltinTable b{e.label, e.build(), std::nullopt, {}};
        try {
            b.table = burnside_table(b.group, o.tol, bo);
        } catch (const Error& err) {
            b.error = err.what();
        }
        out.push_back(std::move(b));
    }
    return out;
}

inline bool same_up_to_permutation(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    const TableMatch m = match_tables(a, b);
    if (!m.matched) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j) - b(static_cast<Eigen::Index>(m.row_perm[static_cast<std::size_t>(i)]),
                                     static_cast<Eigen::Index>(m.col_perm[static_cast<std::size_t>(j)]))) > tol)
                return false;
    return true;
}

inline std::uint32_t fnv1a(const std::string& s) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : s) h = (h ^ c) * 16777619u;
    return h;
}

inline Matrix literal(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

}  // namespace detail

class Verifier {
public:
    explicit Verifier(VerifyOptions opts = {}) : opts_(std::move(opts)) {}

    /// Runs the named categories (all when empty) in the fixed order.
    std::vector<CheckResult> run(const std::vector<std::string>& only = {}) {
        results_.clear();
        tables_ = detail::builtin_tables(opts_);
        auto wanted = [&](const std::string& c) {
            return only.empty() || std::find(only.begin(), only.end(), c) != only.end();
        };
        if (wanted("tables")) tables();
        if (wanted("perron")) perron();
        if (wanted("inequalities")) inequalities();
        if (wanted("volumes")) volumes();
        if (wanted("spectrum")) spectrum();
        if (wanted("counterexample")) counterexample();
        if (wanted("inclusion")) inclusion();
        if (wanted("extremal")) extremal();
        return results_;
    }

private:
    using Body = std::function<std::pair<bool, std::string>()>;

    void check(const std::string& category, const std::string& name, const Body& body) {
        CheckResult r{category, name, false, {}};
        try {
            auto [ok, detail] = body();
            r.pass = ok;
            r.detail = std::move(detail);
        } catch (const Error& e) {
            r.detail = e.what();
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        results_.push_back(std::move(r));
    }

    const CharacterTable& table_of(const detail::BuiltinTable& b) const {
        if (!b.table) throw std::runtime_error(b.error);
        return *b.table;
    }

    const detail::BuiltinTable& builtin(const std::string& label) const {
        for (const auto& b : tables_)
            if (b.label == label) return b;
        throw Error(ErrorKind::invalid_group, "no built-in " + label);
    }

    std::mt19937_64 rng(const std::string& salt) const {
        std::seed_seq seq{static_cast<std::uint32_t>(opts_.seed), static_cast<std::uint32_t>(opts_.seed >> 32),
                          detail::fnv1a(salt)};
        return std::mt19937_64(seq);
    }

    void tables() {
        const Tolerance& tol = opts_.tol;
        check("tables", "Z2 gives H2", [&] {
            const bool ok = detail::same_up_to_permutation(table_of(builtin("Z2")).entries(),
                                                           detail::literal({{1, 1}, {1, -1}}), 1e-8);
            return std::pair{ok, std::string(ok ? "" : "table differs from H2")};
        });
        check("tables", "Z2xZ2 gives H4", [&] {
            const Matrix h4 = detail::literal({{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
            const bool ok = detail::same_up_to_permutation(table_of(builtin("Z2xZ2")).entries(), h4, 1e-8);
            return std::pair{ok, std::string(ok ? "" : "table differs from H4")};
        });
        check("tables", "Sym(3) table", [&] {
            const CharacterTable& q = table_of(builtin("Sym(3)"));
            const Matrix want = detail::literal({{1, 1, 1}, {1, -1, 1}, {2, 0, -1}});
            const double err = q.size() == 3 ? (q.entries() - want).cwiseAbs().maxCoeff() : INFINITY;
            const bool sizes = q.class_sizes() == std::vector<std::size_t>{1, 3, 2};
            return std::pair{err <= 1e-8 && sizes, "max deviation " + detail::num(err)};
        });
        for (const auto& b : tables_) {
            check("tables", b.label + " orthogonality", [&] {
                const CharacterTable& q = table_of(b);
                const Matrix gram = q.entries().adjoint() * q.entries();
                double dev = 0.0;
                for (Eigen::Index a = 0; a < gram.rows(); ++a)
                    for (Eigen::Index c = 0; c < gram.cols(); ++c) {
                        const double want = a == c ? static_cast<double>(q.centralizer_orders()[static_cast<std::size_t>(a)]) : 0.0;
                        dev = std::max(dev, std::abs(gram(a, c) - want));
                    }
                return std::pair{dev <= tol.eps, "max deviation " + detail::num(dev)};
            });
            check("tables", b.label + " class equation", [&] {
                const auto cls = conjugacy_classes(b.group);
                std::size_t total = 0;
                for (const auto& c : cls) {
                    if (c.size * c.centralizer_order != b.group.order())
                        return std::pair{false, std::string("size x centralizer != |G|")};
                    total += c.size;
                }
                return std::pair{total == b.group.order(), std::string()};
            });
            check("tables", b.label + " inverse", [&] {
                const CharacterTable& q = table_of(b);
                const double dev = (inverse_table(q) - q.entries().inverse()).cwiseAbs().maxCoeff();
                return std::pair{dev <= 1e-8, "max deviation " + detail::num(dev)};
            });
            if (b.group.is_abelian()) {
                check("tables", b.label + " Kronecker form", [&] {
                    const auto f = abelian_factorization(b.group);
                    const bool ok = match_tables(abelian_table(f, tol), table_of(b)).matched;
                    return std::pair{ok, abelian_label(f)};
                });
            }
        }
        check("tables", "Sym(3) generators vs Cayley", [&] {
            const FiniteGroup a = build_from_generators(parse_generator_list("(1 2),(1 2 3)"));
            const FiniteGroup c = build_from_cayley(a.cayley());
            auto sizes = [](const FiniteGroup& g) {
                std::vector<std::size_t> s;
                for (const auto& cl : conjugacy_classes(g)) s.push_back(cl.size);
                std::sort(s.begin(), s.end());
                return s;
            };
            return std::pair{sizes(a) == sizes(c), std::string()};
        });
    }

    void perron() {
        for (const auto& b : tables_) {
            check("perron", b.label, [&] {
                const CharacterTable& q = table_of(b);
                const Tolerance& tol = opts_.tol;
                const Similarity s(q);
                const PerronCheck p = is_perron_similarity(s, tol);
                if (!p.perron || p.column != 0u) return std::pair{false, std::string("witness column is not 1")};
                const Matrix m = realize(s, Vector::Unit(static_cast<Eigen::Index>(q.size()), 0));
                double min_entry = INFINITY;
                for (Eigen::Index i = 0; i < m.rows(); ++i)
                    for (Eigen::Index j = 0; j < m.cols(); ++j) {
                        if (std::abs(m(i, j).imag()) > tol.imag) return std::pair{false, std::string("M_e1 is not real")};
                        min_entry = std::min(min_entry, m(i, j).real());
                    }
                if (!(min_entry > 0)) return std::pair{false, "min entry of M_e1 " + detail::num(min_entry)};
                const IdealCheck ideal = is_ideal(s, tol);
                if (!ideal.ideal) return std::pair{false, ideal.diagnosis()};
                double worst = 0.0;
                for (std::size_t i = 0; i < q.size(); ++i)
                    for (std::size_t j = 0; j < q.size(); ++j)
                        for (bool conj : {false, true}) {
                            const RealVector a = tensor_multiplicities(q, i, j, conj, tol);
                            for (Eigen::Index k = 0; k < a.size(); ++k) {
                                worst = std::max(worst, std::abs(a(k) - std::round(a(k))));
                                if (std::round(a(k)) < 0) return std::pair{false, std::string("negative multiplicity")};
                            }
                        }
                return std::pair{worst <= 1e-6, "multiplicity deviation " + detail::num(worst)};
            });
        }
    }

    void inequalities() {
        const Tolerance& tol = opts_.tol;
        check("inequalities", "Sym(3) half-spaces", [&] {
            const ConeDescription cd = reduced_inequalities(table_of(builtin("Sym(3)")));
            const Matrix want = detail::literal({{1, 3, 2}, {1, -3, 2}, {2, 0, -2}});
            const double dev = (cd.facet_coeffs - want).cwiseAbs().maxCoeff();
            return std::pair{dev <= tol.eps, format_inequality(cd.facet_coeffs.row(2).transpose())};
        });
        check("inequalities", "H4 half-spaces", [&] {
            const ConeDescription cd = reduced_inequalities(table_of(builtin("Z2xZ2")));
            const Matrix h4 = detail::literal({{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
            return std::pair{detail::same_up_to_permutation(cd.facet_coeffs, h4, tol.eps), std::string()};
        });
        check("inequalities", "Sym(3) certificate (3,3)", [&] {
            const RealVector c = redundancy_certificate(table_of(builtin("Sym(3)")), 2, 2, tol);
            const double dev = (c - RealVector::Ones(3)).cwiseAbs().maxCoeff();
            std::ostringstream os;
            os << "c = (" << c(0) << ", " << c(1) << ", " << c(2) << ")";
            return std::pair{dev <= 1e-9, os.str()};
        });
        check("inequalities", "H4 x=(1,1,1,-1) violates facet 4", [&] {
            const CharacterTable h4 = walsh_table(4, tol);
            Vector x(4);
            x << 1, 1, 1, -1;
            const MembershipVerdict v = facet_membership(h4, x, tol);
            const bool ok = !v.member && v.violation->kind == Violation::Kind::facet && v.violation->i == 3 &&
                            std::abs(v.violation->value - Complex(-2, 0)) <= tol.eps;
            return std::pair{ok, format_verdict(v)};
        });
        for (const auto& b : tables_) {
            check("inequalities", b.label + " reduced vs entrywise", [&] {
                const CharacterTable& q = table_of(b);
                const Similarity s(q);
                auto gen = rng("ineq/" + b.label);
                const auto n = static_cast<Eigen::Index>(q.size());
                std::normal_distribution<double> normal;
                std::uniform_int_distribution<int> kind(0, 3);
                int disagreements = 0, members = 0;
                for (int t = 0; t < opts_.inequality_samples; ++t) {
                    Vector x(n);
                    RealVector y(n);
                    for (Eigen::Index k = 0; k < n; ++k) y(k) = normal(gen);
                    switch (kind(gen)) {
                    case 0:  // nonnegative weights, some zero
                        for (Eigen::Index k = 0; k < n; ++k) y(k) = std::max(0.0, y(k) + 0.5);
                        x = q.entries().transpose() * y.cast<Complex>();
                        break;
                    case 1:  // mixed signs
                        x = q.entries().transpose() * y.cast<Complex>();
                        break;
                    case 2:  // arbitrary complex vector
                        for (Eigen::Index k = 0; k < n; ++k) x(k) = Complex(y(k), normal(gen));
                        break;
                    default:  // real vector
                        x = y.cast<Complex>();
                        break;
                    }
                    const bool reduced = facet_membership(q, x, tol).member;
                    const bool entrywise = spectracone_membership(s, x, tol).member;
                    members += reduced;
                    disagreements += reduced != entrywise;
                }
                return std::pair{disagreements == 0, std::to_string(disagreements) + " disagreements, " +
                                                         std::to_string(members) + " members"};
            });
        }
    }

    void volumes() {
        auto volume_check = [&](const std::string& label, const std::string& shown, const std::string& ratio_name,
                                double want_v, double want_r) {
            check("volumes", "spectratope volume " + shown, [&] {
                const VolumeReport r = spectratope_volume(table_of(builtin(label)));
                const bool ok = std::abs(r.formula_value - want_v) <= 1e-9 &&
                                std::abs(r.formula_value - r.determinant_value) <= 1e-9;
                return std::pair{ok, detail::num(r.formula_value) + " (determinant " +
                                         detail::num(r.determinant_value) + ")"};
            });
            check("volumes", "occupancy ratio " + ratio_name, [&] {
                const double r = occupancy_ratio(table_of(builtin(label)));
                return std::pair{std::abs(r - want_r) <= 1e-9, detail::num(r)};
            });
        };
        volume_check("Sym(3)", "Sym(3) = 3/2", "Sym(3) = 3/7", 1.5, 3.0 / 7.0);
        volume_check("Z2xZ2", "Z2xZ2 = 8/3", "Z2xZ2 = 2/5", 8.0 / 3.0, 0.4);
        check("volumes", "trace polytope m=2 = 7/2", [&] {
            const ExactVolume v = trace_polytope_volume_exact(2);
            return std::pair{v.num == 7 && v.den == 2 && std::abs(trace_polytope_volume(2) - 3.5) <= 1e-12,
                             detail::num(trace_polytope_volume(2))};
        });
        check("volumes", "trace polytope m=3 = 20/3", [&] {
            const ExactVolume v = trace_polytope_volume_exact(3);
            return std::pair{v.num == 20 && v.den == 3 && std::abs(trace_polytope_volume(3) - 20.0 / 3.0) <= 1e-12,
                             detail::num(trace_polytope_volume(3))};
        });
        for (const auto& b : tables_) {
            if (!b.table || !b.table->is_real()) continue;
            check("volumes", b.label + " formula vs determinant", [&] {
                const VolumeReport r = spectratope_volume(*b.table);
                return std::pair{std::abs(r.formula_value - r.determinant_value) <= 1e-9 * std::max(1.0, r.formula_value),
                                 detail::num(r.formula_value)};
            });
        }
    }

    void spectrum() {
        const Tolerance& tol = opts_.tol;
        for (const auto& b : tables_) {
            check("spectrum", b.label, [&] {
                const CharacterTable& q = table_of(b);
                const Similarity s(q);
                const auto n = static_cast<Eigen::Index>(q.size());
                auto gen = rng("spectrum/" + b.label);
                std::exponential_distribution<double> weight(1.0);
                Vector prev;
                double worst_entry = 0.0, worst_eig = 0.0, worst_structure = 0.0;
                for (int t = 0; t < opts_.spectrum_samples; ++t) {
                    RealVector c(n);
                    for (Eigen::Index k = 0; k < n; ++k) c(k) = weight(gen);
                    const Vector x = q.entries().transpose() * c.cast<Complex>();
                    const Matrix mx = realize(s, x);
                    for (Eigen::Index i = 0; i < n; ++i)
                        for (Eigen::Index j = 0; j < n; ++j) {
                            worst_entry = std::min(worst_entry, mx(i, j).real());
                            if (std::abs(mx(i, j).imag()) > tol.imag)
                                return std::pair{false, std::string("non-real realizing matrix")};
                        }
                    if (worst_entry < -1e-9) return std::pair{false, "negative entry " + detail::num(worst_entry)};
                    const MultisetMatch m = spectrum_check(mx, x, tol.spectrum);
                    worst_eig = std::max(worst_eig, m.max_deviation);
                    if (!m.equal) return std::pair{false, "eigenvalue deviation " + detail::num(m.max_deviation)};
                    const StructureReport sr = structure_check(q, x, tol);
                    worst_structure = std::max(worst_structure, sr.defect);
                    if (prev.size() == n) {
                        const Vector h = prev.cwiseProduct(x);
                        if (!spectracone_membership(s, h, tol).member)
                            return std::pair{false, std::string("Hadamard product left the cone")};
                    }
                    prev = x;
                }
                return std::pair{true, "eig " + detail::num(worst_eig) + ", structure " + detail::num(worst_structure)};
            });
        }
    }

    void counterexample() {
        const Tolerance& tol = opts_.tol;
        for (const auto& [name, theta] : std::vector<std::pair<std::string, double>>{
                 {"pi/5", std::numbers::pi / 5}, {"1", 1.0}, {"2", 2.0}}) {
            check("counterexample", "F4(" + name + ")", [&, theta = theta] {
                const Matrix f = dephased_f4_theta(theta);
                const Vector row2 = f.row(1).transpose();
                // oracle: the row is closed under conjugation iff every entry's
                // conjugate occurs in it
                bool closed = true;
                for (Eigen::Index k = 0; k < 4; ++k) {
                    bool found = false;
                    for (Eigen::Index l = 0; l < 4; ++l) found |= std::abs(std::conj(row2(k)) - row2(l)) <= 1e-9;
                    closed &= found;
                }
                const bool ideal = is_ideal(Similarity(f), tol).ideal;
                const NecessaryReport nr = necessary_conditions(row2, 12, tol);
                const bool ok = closed || (!ideal && !nr.self_conjugate.pass);
                return std::pair{ok, std::string(ideal ? "ideal" : "not ideal") +
                                         (nr.self_conjugate.pass ? "" : "; " + nr.self_conjugate.detail)};
            });
        }
        check("counterexample", "F4(0) ideal", [&] {
            const IdealCheck c = is_ideal(Similarity(dephased_f4_theta(0.0)), tol);
            return std::pair{c.ideal, c.diagnosis()};
        });
    }

    void inclusion() {
        const Tolerance& tol = opts_.tol;
        check("inclusion", "P(S) is trivial on the grid", [&] {
            Matrix s(2, 2);
            s << 1, 1, 2, -2;
            const Similarity sim(s);
            int accepted = 0;
            bool only_ones = true;
            const int g = opts_.grid;
            for (int a = 0; a < g; ++a)
                for (int c = 0; c < g; ++c) {
                    Vector x(2);
                    x << -1.0 + 2.0 * a / (g - 1), -1.0 + 2.0 * c / (g - 1);
                    if (spectratope_membership(sim, x, tol).member) {
                        ++accepted;
                        only_ones &= a == g - 1 && c == g - 1;
                    }
                }
            return std::pair{accepted == 1 && only_ones, std::to_string(accepted) + " accepted"};
        });
        check("inclusion", "rescaled S is H2 and ideal", [&] {
            Matrix s(2, 2);
            s << 1, 1, 2, -2;
            const Matrix h = rescale_stochastic(s, 0, tol);
            const Matrix h2 = detail::literal({{1, 1}, {1, -1}});
            const bool ok = (h - h2).cwiseAbs().maxCoeff() <= tol.eps && is_ideal(Similarity(h), tol).ideal;
            return std::pair{ok, std::string()};
        });
    }

    void extremal() {
        const Tolerance& tol = opts_.tol;
        for (const auto& b : tables_) {
            if (!b.group.is_abelian()) continue;
            check("extremal", b.label + " totally extremal", [&] {
                const ExtremalityCheck e = is_totally_extremal(table_of(b).entries(), tol);
                return std::pair{e.totally_extremal, std::string()};
            });
            check("extremal", b.label + " probe", [&] {
                const ProbeReport r = conjecture_probe(table_of(b).entries(), tol);
                const auto want = abelian_label(abelian_factorization(b.group));
                return std::pair{r.matches && *r.matches == want, r.matches ? *r.matches : std::string("no match")};
            });
        }
        check("extremal", "Sym(3) not totally extremal", [&] {
            return std::pair{!is_totally_extremal(table_of(builtin("Sym(3)")).entries(), tol).totally_extremal,
                             std::string()};
        });
        check("extremal", "Farey counts n <= 50", [&] {
            long long totients = 1;
            for (long long n = 1; n <= 50; ++n) {
                long long phi = 0;
                for (long long k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
                totients += phi;
                if (static_cast<long long>(farey(n).size()) != totients)
                    return std::pair{false, "mismatch at n = " + std::to_string(n)};
            }
            return std::pair{true, std::string()};
        });
    }

    VerifyOptions opts_;
    std::vector<CheckResult> results_;
    std::vector<detail::BuiltinTable> tables_;
};

}  // namespace charniep
