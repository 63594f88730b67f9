// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Oracles are recomputed here from first principles (Eigen LU inverses,
// direct character sums, hand-derived geometry) rather than taken from the
// library paths they check.

#include "charniep/charniep.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace charniep;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

Matrix literal(std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// smallest entrywise error over all row and column permutations
double permuted_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) return INFINITY;
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<Eigen::Index> rp(n), cp(n);
    std::iota(rp.begin(), rp.end(), 0);
    double best = INFINITY;
    do {
        std::iota(cp.begin(), cp.end(), 0);
        do {
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(a(rp[i], cp[j]) - b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
            best = std::min(best, worst);
        } while (std::next_permutation(cp.begin(), cp.end()));
    } while (std::next_permutation(rp.begin(), rp.end()));
    return best;
}

Matrix oracle_realize(const Matrix& s, const Vector& x) {
    return s * x.asDiagonal() * s.fullPivLu().inverse();
}

bool entrywise_nonnegative(const Matrix& m, double eps) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j).imag()) > 1e-7 || m(i, j).real() < -eps) return false;
    return true;
}

// greedy nearest pairing of two multisets; largest pair distance
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    double worst = 0.0;
    for (const Complex& z : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](Complex p, Complex q) { return std::abs(p - z) < std::abs(q - z); });
        worst = std::max(worst, std::abs(*it - z));
        b.erase(it);
    }
    return worst;
}

// multiplicity of χ_k in χ_i·conj(χ_j), by the inner product formula
Complex multiplicity(const CharacterTable& q, std::size_t i, std::size_t j, std::size_t k) {
    Complex sum = 0.0;
    for (std::size_t c = 0; c < q.size(); ++c)
        sum += static_cast<double>(q.class_sizes()[c]) * q(i, c) * std::conj(q(j, c)) * std::conj(q(k, c));
    return sum / static_cast<double>(q.group_order());
}

std::set<std::vector<long long>> rounded_rows(const Matrix& m) {
    std::set<std::vector<long long>> out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::vector<long long> r;
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(std::llround(m(i, j).real() * 1e6));
        out.insert(r);
    }
    return out;
}

struct Built {
    std::string label;
    FiniteGroup group;
    CharacterTable table;
};

const std::vector<Built>& builtins() {
    static const std::vector<Built> all = [] {
        std::vector<Built> v;
        for (const auto& e : builtin_catalog()) {
            FiniteGroup g = e.build();
            CharacterTable t = burnside_table(g);
            v.push_back({e.label, std::move(g), std::move(t)});
        }
        return v;
    }();
    return all;
}

Outcome character_tables() {
    const Matrix h2 = literal({{1, 1}, {1, -1}});
    const Matrix h4 = literal({{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}});
    const Matrix s3 = literal({{1, 1, 1}, {1, -1, 1}, {2, 0, -1}});
    const double d2 = permuted_distance(burnside_table(build_cyclic(2)).entries(), h2);
    const double d4 = permuted_distance(burnside_table(build_abelian({2, 2})).entries(), h4);
    const double d3 = permuted_distance(
        burnside_table(build_from_generators(parse_generator_list("(1 2),(1 2 3)"), "Sym(3)")).entries(), s3);
    const double worst = std::max({d2, d4, d3});
    return {worst <= 1e-8, "max entry error " + fmt(worst)};
}

Outcome perron_ideal() {
    std::size_t n_tables = 0;
    double worst_mult = 0.0, min_entry = INFINITY;
    std::string bad;
    for (const auto& b : builtins()) {
        ++n_tables;
        const CharacterTable& q = b.table;
        const auto n = static_cast<Eigen::Index>(q.size());
        const Similarity s(q);
        const PerronCheck pc = is_perron_similarity(s);
        if (!pc.perron || pc.column != std::optional<std::size_t>(0)) bad += " " + b.label + ":perron";
        const Matrix m = oracle_realize(q.entries(), Vector::Unit(n, 0));
        const Matrix lib = realize(s, Vector::Unit(n, 0));
        if ((m - lib).cwiseAbs().maxCoeff() > 1e-9) bad += " " + b.label + ":realize";
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                if (std::abs(m(i, j).imag()) > 1e-9) bad += " " + b.label + ":complex";
                min_entry = std::min(min_entry, m(i, j).real());
            }
        if (!is_ideal(s).ideal) bad += " " + b.label + ":ideal";
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j) {
                const RealVector lib_mult = tensor_multiplicities(q, i, j, true);
                for (std::size_t k = 0; k < q.size(); ++k) {
                    const Complex mu = multiplicity(q, i, j, k);
                    const double dev = std::max(std::abs(mu - std::round(mu.real())), std::abs(lib_mult(static_cast<Eigen::Index>(k)) - mu.real()));
                    worst_mult = std::max(worst_mult, dev);
                    if (std::round(mu.real()) < 0) bad += " " + b.label + ":negative-multiplicity";
                }
            }
    }
    const bool pass = bad.empty() && min_entry > 0.0 && worst_mult <= 1e-6;
    return {pass, std::to_string(n_tables) + " tables, min M_e1 entry " + fmt(min_entry) + ", multiplicity deviation " +
                      fmt(worst_mult) + bad};
}

Outcome inequalities() {
    std::string bad;
    const CharacterTable s3 = burnside_table(builtin_group("Sym(3)"));
    if (rounded_rows(reduced_inequalities(s3).facet_coeffs) != rounded_rows(literal({{1, 3, 2}, {1, -3, 2}, {2, 0, -2}})))
        bad += " Sym(3) half-spaces";
    const CharacterTable h4 = burnside_table(build_abelian({2, 2}));
    if (rounded_rows(reduced_inequalities(h4).facet_coeffs) !=
        rounded_rows(literal({{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}})))
        bad += " H4 half-spaces";
    // the degree-2 character: find it, then its self-product decomposition
    std::size_t two = 0;
    for (std::size_t i = 0; i < s3.size(); ++i)
        if (std::abs(s3(i, 0) - 2.0) < 1e-9) two = i;
    const RealVector cert = redundancy_certificate(s3, two, two);
    // (4+2)/6, (4+2)/6, (8-2)/6 from the class sizes 1, 3, 2 and chi = (2, 0, -1)
    const std::vector<double> expected{(4.0 + 2.0) / 6.0, (4.0 + 2.0) / 6.0, (8.0 - 2.0) / 6.0};
    for (Eigen::Index k = 0; k < cert.size(); ++k)
        if (std::abs(cert(k) - expected[static_cast<std::size_t>(k)]) > 1e-9) bad += " certificate";

    std::size_t disagreements = 0, members = 0, total = 0;
    for (const auto& b : builtins()) {
        const CharacterTable& q = b.table;
        const auto n = static_cast<Eigen::Index>(q.size());
        std::mt19937_64 rng(kDefaultSeed ^ detail::fnv1a(b.label));
        std::exponential_distribution<double> expo(1.0);
        std::normal_distribution<double> normal;
        for (int t = 0; t < 1000; ++t) {
            RealVector c(n);
            for (Eigen::Index k = 0; k < n; ++k) {
                switch (t % 3) {
                case 0: c(k) = expo(rng); break;
                case 1: c(k) = normal(rng); break;
                default: c(k) = expo(rng) + 0.5 * normal(rng); break;
                }
            }
            const Vector x = q.entries().transpose() * c.cast<Complex>();
            const bool oracle = entrywise_nonnegative(oracle_realize(q.entries(), x), 1e-9);
            const bool verdict = facet_membership(q, x).member;
            disagreements += oracle != verdict;
            members += verdict;
            ++total;
        }
    }
    if (disagreements) bad += " " + std::to_string(disagreements) + " disagreements";
    return {bad.empty(), std::to_string(total) + " samples, " + std::to_string(members) + " members, " +
                             std::to_string(disagreements) + " disagreements" + bad};
}

double shoelace(const std::vector<std::pair<double, double>>& p) {
    double twice = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& [x0, y0] = p[i];
        const auto& [x1, y1] = p[(i + 1) % p.size()];
        twice += x0 * y1 - x1 * y0;
    }
    return std::abs(twice) / 2;
}

Outcome volumes() {
    std::string bad;
    const CharacterTable s3 = burnside_table(builtin_group("Sym(3)"));
    const VolumeReport vs = spectratope_volume(s3);
    // rows of the stochastic rescaling of the Sym(3) table, first coordinate dropped
    const double tri = shoelace({{1, 1}, {-1, 1}, {0, -0.5}});
    if (std::abs(vs.formula_value - 1.5) > 1e-9 || std::abs(tri - 1.5) > 1e-15) bad += " Sym(3) volume";
    if (std::abs(vs.formula_value - vs.determinant_value) > 1e-9) bad += " Sym(3) formula/determinant";

    const VolumeReport vh = spectratope_volume(burnside_table(build_abelian({2, 2})));
    RealMatrix edges(3, 3);
    edges << -2, 0, -2, -2, -2, 0, 0, -2, -2;  // tetrahedron (1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1)
    const double tet = std::abs(edges.determinant()) / 6;
    if (std::abs(vh.formula_value - 8.0 / 3.0) > 1e-9 || std::abs(tet - 8.0 / 3.0) > 1e-12) bad += " H4 volume";

    const ExactVolume e2 = trace_polytope_volume_exact(2), e3 = trace_polytope_volume_exact(3);
    if (!(e2.num == 7 && e2.den == 2 && e3.num == 20 && e3.den == 3)) bad += " exact trace volumes";
    // square minus the corner below x + y = -1; cube minus the corner simplex with legs 2
    const double sq = shoelace({{-1, 0}, {0, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const double cube = 8.0 - 8.0 / 6.0;
    if (std::abs(trace_polytope_volume(2) - sq) > 1e-12 || std::abs(trace_polytope_volume(3) - cube) > 1e-12)
        bad += " trace polytope";
    if (std::abs(vs.ratio_to_trace_polytope - 3.0 / 7.0) > 1e-9 || std::abs(vh.ratio_to_trace_polytope - 2.0 / 5.0) > 1e-9)
        bad += " ratios";
    return {bad.empty(), "3/2, 8/3, 7/2, 20/3, 3/7, 2/5 reproduced" + bad};
}

Outcome spectra() {
    double worst_entry = 0.0, worst_eig = 0.0, worst_structure = 0.0;
    std::size_t hadamard_failures = 0, samples = 0;
    for (const auto& b : builtins()) {
        const CharacterTable& q = b.table;
        const auto n = static_cast<Eigen::Index>(q.size());
        const Matrix inv = q.entries().fullPivLu().inverse();
        const bool real_table = q.entries().imag().cwiseAbs().maxCoeff() <= 1e-12;
        std::mt19937_64 rng(kDefaultSeed + detail::fnv1a(b.label));
        std::exponential_distribution<double> expo(1.0);
        Vector prev;
        for (int t = 0; t < 500; ++t, ++samples) {
            RealVector c(n);
            for (auto& v : c) v = expo(rng);
            const Vector x = q.entries().transpose() * c.cast<Complex>();
            const Matrix mx = realize(Similarity(q), x);
            const Matrix ox = q.entries() * x.asDiagonal() * inv;
            worst_entry = std::max(worst_entry, (mx - ox).cwiseAbs().maxCoeff());
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) worst_entry = std::max(worst_entry, -mx(i, j).real());
            Eigen::ComplexEigenSolver<Matrix> es(mx, false);
            std::vector<Complex> eig(es.eigenvalues().begin(), es.eigenvalues().end());
            std::vector<Complex> lam(x.begin(), x.end());
            worst_eig = std::max(worst_eig, multiset_distance(eig, lam));
            const double defect = real_table ? (mx - mx.transpose()).cwiseAbs().maxCoeff()
                                             : (mx.adjoint() * mx - mx * mx.adjoint()).cwiseAbs().maxCoeff();
            worst_structure = std::max(worst_structure, defect);
            if (prev.size() == n) hadamard_failures += !entrywise_nonnegative(q.entries() * prev.cwiseProduct(x).asDiagonal() * inv, 1e-9);
            prev = x;
        }
    }
    const bool pass = worst_entry <= 1e-9 && worst_eig <= 1e-7 && worst_structure <= 1e-8 && hadamard_failures == 0;
    return {pass, std::to_string(samples) + " samples, negativity " + fmt(worst_entry) + ", eigenvalues " + fmt(worst_eig) +
                      ", structure " + fmt(worst_structure) + ", Hadamard failures " + std::to_string(hadamard_failures)};
}

Outcome counterexample() {
    std::string bad, seen;
    for (double theta : {std::numbers::pi / 5, 1.0, 2.0}) {
        const Matrix f = dephased_f4_theta(theta);
        const Vector row2 = f.row(1).transpose();
        std::vector<Complex> conj_row;
        for (const Complex& z : row2) conj_row.push_back(std::conj(z));
        const bool self_conjugate = multiset_distance(conj_row, std::vector<Complex>(row2.begin(), row2.end())) <= 1e-9;
        seen += self_conjugate ? "c" : "n";
        if (self_conjugate) continue;
        if (is_ideal(Similarity(f)).ideal) bad += " ideal at " + fmt(theta);
        if (necessary_conditions(row2).self_conjugate.pass) bad += " unflagged at " + fmt(theta);
    }
    if (!is_ideal(Similarity(dephased_f4_theta(0.0))).ideal) bad += " F4(0) not ideal";
    return {bad.empty(), "row 2 self-conjugacy " + seen + bad};
}

Outcome strict_inclusion() {
    const Matrix s = literal({{1, 1}, {2, -2}});
    const Similarity sim(s);
    std::vector<std::pair<int, int>> accepted;
    for (int a = 0; a <= 40; ++a)
        for (int b = 0; b <= 40; ++b) {
            Vector x(2);
            x << -1.0 + a / 20.0, -1.0 + b / 20.0;
            if (spectratope_membership(sim, x).member) accepted.emplace_back(a, b);
        }
    const bool only_ones = accepted == std::vector<std::pair<int, int>>{{40, 40}};
    const Matrix r = rescale_stochastic(s, 0);
    const bool h2 = (r - literal({{1, 1}, {1, -1}})).cwiseAbs().maxCoeff() <= 1e-12;
    const bool ideal = is_ideal(Similarity(r)).ideal;
    return {only_ones && h2 && ideal, std::to_string(accepted.size()) + " accepted grid point(s); rescaled " +
                                          (h2 ? "= H2" : "!= H2") + (ideal ? ", ideal" : ", not ideal")};
}

std::map<int, int> order_census(const FiniteGroup& g) {
    std::map<int, int> c;
    for (std::size_t x = 0; x < g.order(); ++x) ++c[g.element_order(static_cast<int>(x))];
    return c;
}

Outcome extremality() {
    std::string bad;
    std::size_t abelian = 0;
    for (const auto& b : builtins()) {
        if (!b.group.is_abelian()) continue;
        ++abelian;
        if (!is_totally_extremal(b.table.entries()).totally_extremal) bad += " " + b.label + ":extremal";
        const ProbeReport r = conjecture_probe(b.table.entries());
        if (!r.matches) {
            bad += " " + b.label + ":unmatched";
            continue;
        }
        // an abelian group is determined by how many elements have each order
        std::vector<std::size_t> factors;
        std::stringstream ss(r.matches->substr(1));
        std::string part;
        while (std::getline(ss, part, 'x')) factors.push_back(std::stoul(part.substr(part.find_first_of("0123456789"))));
        if (order_census(build_abelian(factors)) != order_census(b.group)) bad += " " + b.label + ":matched " + *r.matches;
    }
    if (is_totally_extremal(burnside_table(builtin_group("Sym(3)")).entries()).totally_extremal) bad += " Sym(3)";
    long long count = 1;
    for (long long n = 1; n <= 50; ++n) {
        for (long long k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
        if (static_cast<long long>(farey(n).size()) != count) bad += " farey(" + std::to_string(n) + ")";
    }
    return {bad.empty(), std::to_string(abelian) + " abelian tables matched" + bad};
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"character tables", character_tables}, {"perron and ideal", perron_ideal},
        {"inequalities", inequalities},         {"volumes", volumes},
        {"spectrum", spectra},                  {"counterexample", counterexample},
        {"strict inclusion", strict_inclusion}, {"extremality", extremality},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
    if (secs >= 10.0) {
        std::printf("FAIL runtime budget of 10 s exceeded\n");
        return 1;
    }
    return failed ? 1 : 0;
}
