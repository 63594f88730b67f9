#include "charniep/catalog.hpp"
#include "charniep/geometry.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace charniep;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::internal_consistency;
}

RealVector vec(std::initializer_list<double> v) {
    RealVector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

double shoelace(const std::vector<RealVector>& poly) {
    double twice = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const RealVector& a = poly[i];
        const RealVector& b = poly[(i + 1) % poly.size()];
        twice += a(0) * b(1) - a(1) * b(0);
    }
    return 0.5 * twice;
}

double monte_carlo_trace_volume(std::size_t m, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int inside = 0;
    for (int t = 0; t < samples; ++t) {
        double s = 1.0;
        for (std::size_t k = 0; k < m; ++k) s += u(rng);
        inside += s >= 0.0;
    }
    return std::ldexp(static_cast<double>(inside) / samples, static_cast<int>(m));
}

CharacterTable table(const std::string& label) { return burnside_table(builtin_group(label)); }

}  // namespace

TEST(Simplex, UnitSimplexVolumes) {
    for (std::size_t m = 1; m <= 6; ++m) {
        Simplex s;
        s.vertices.push_back(RealVector::Zero(static_cast<Eigen::Index>(m)));
        for (std::size_t k = 0; k < m; ++k) s.vertices.push_back(RealVector::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)));
        EXPECT_NEAR(simplex_volume(s), 1.0 / factorial(m), 1e-15);
    }
}

TEST(Simplex, PermutationAndTranslationInvariant) {
    std::mt19937_64 rng(kDefaultSeed);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t % 4);
        Simplex s;
        for (std::size_t k = 0; k <= m; ++k) {
            RealVector v(static_cast<Eigen::Index>(m));
            for (auto& c : v) c = normal(rng);
            s.vertices.push_back(v);
        }
        const double base = simplex_volume(s);
        Simplex p = s;
        std::shuffle(p.vertices.begin(), p.vertices.end(), rng);
        EXPECT_NEAR(simplex_volume(p), base, 1e-12 * std::max(1.0, base));
        RealVector shift(static_cast<Eigen::Index>(m));
        for (auto& c : shift) c = 10 * normal(rng);
        for (auto& v : p.vertices) v += shift;
        EXPECT_NEAR(simplex_volume(p), base, 1e-9 * std::max(1.0, base));
    }
}

TEST(Simplex, DegenerateAndMalformed) {
    Simplex flat{{vec({0, 0}), vec({1, 1}), vec({2, 2})}};
    EXPECT_TRUE(flat.degenerate());
    EXPECT_EQ(simplex_volume(flat), 0.0);
    Simplex wrong{{vec({0, 0}), vec({1, 0, 0}), vec({0, 1})}};
    EXPECT_EQ(kind_of([&] { simplex_volume(wrong); }), ErrorKind::length_mismatch);
}

TEST(Projection, DropCoordinate) {
    EXPECT_EQ(project_drop(vec({1, 2, 3}), 0), vec({2, 3}));
    EXPECT_EQ(project_drop(vec({1, 2, 3}), 2), vec({1, 2}));
    EXPECT_EQ(kind_of([] { project_drop(vec({1, 2}), 2); }), ErrorKind::index_out_of_range);
}

TEST(TracePolytope, PublishedValues) {
    const ExactVolume v1 = trace_polytope_volume_exact(1);
    EXPECT_EQ(static_cast<long long>(v1.num), 2);
    EXPECT_EQ(static_cast<long long>(v1.den), 1);
    const ExactVolume v2 = trace_polytope_volume_exact(2);
    EXPECT_EQ(static_cast<long long>(v2.num), 7);
    EXPECT_EQ(static_cast<long long>(v2.den), 2);
    const ExactVolume v3 = trace_polytope_volume_exact(3);
    EXPECT_EQ(static_cast<long long>(v3.num), 20);
    EXPECT_EQ(static_cast<long long>(v3.den), 3);
    EXPECT_NEAR(trace_polytope_volume(2), 3.5, 1e-12);
    EXPECT_NEAR(trace_polytope_volume(3), 20.0 / 3.0, 1e-12);
    EXPECT_EQ(trace_polytope_volume(0), 1.0);
}

TEST(TracePolytope, ShoelaceAgreesInThePlane) {
    const auto verts = trace_polytope_vertices(2);
    ASSERT_EQ(verts.size(), 5u);
    EXPECT_NEAR(shoelace(verts), 3.5, 1e-12);  // positive: counterclockwise
}

TEST(TracePolytope, MonteCarloAgrees) {
    const int samples = 400000;
    for (std::size_t m = 2; m <= 6; ++m) {
        const double p = trace_polytope_volume(m) / std::ldexp(1.0, static_cast<int>(m));
        const double sigma = std::ldexp(std::sqrt(p * (1 - p) / samples), static_cast<int>(m));
        EXPECT_NEAR(monte_carlo_trace_volume(m, samples, kDefaultSeed + m), trace_polytope_volume(m), 5 * sigma) << m;
    }
}

TEST(TracePolytope, InsideTheCube) {
    for (std::size_t m = 1; m <= 12; ++m) {
        EXPECT_LE(trace_polytope_volume(m), std::ldexp(1.0, static_cast<int>(m)));
        EXPECT_GT(trace_polytope_volume(m), 0.0);
    }
    EXPECT_EQ(kind_of([] { trace_polytope_volume_exact(kExactTraceVolumeMax + 1); }), ErrorKind::invalid_size);
    // the floating fallback continues the exact sequence
    EXPECT_NEAR(trace_polytope_volume(kExactTraceVolumeMax + 1) / std::ldexp(1.0, static_cast<int>(kExactTraceVolumeMax + 1)),
                trace_polytope_volume(kExactTraceVolumeMax) / std::ldexp(1.0, static_cast<int>(kExactTraceVolumeMax)), 0.05);
}

TEST(TracePolytope, VerticesSatisfyTheConstraints) {
    for (std::size_t m = 1; m <= 4; ++m) {
        for (const auto& v : trace_polytope_vertices(m)) {
            EXPECT_LE(v.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
            EXPECT_GE(1.0 + v.sum(), -1e-12);
        }
    }
    EXPECT_EQ(trace_polytope_vertices(3).size(), 7u);
}

TEST(Spectratope, PublishedVolumes) {
    const VolumeReport s3 = spectratope_volume(table("Sym(3)"));
    EXPECT_NEAR(s3.formula_value, 1.5, 1e-9);
    EXPECT_NEAR(s3.determinant_value, 1.5, 1e-9);
    EXPECT_NEAR(s3.ratio_to_trace_polytope, 3.0 / 7.0, 1e-9);
    const VolumeReport h4 = spectratope_volume(table("Z2xZ2"));
    EXPECT_NEAR(h4.formula_value, 8.0 / 3.0, 1e-9);
    EXPECT_NEAR(h4.ratio_to_trace_polytope, 0.4, 1e-9);
    EXPECT_NEAR(occupancy_ratio(walsh_table(4)), 0.4, 1e-9);
}

TEST(Spectratope, Sym3TriangleByShoelace) {
    const auto rows = projected_stochastic_rows(table("Sym(3)"));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0], vec({1, 1}));
    EXPECT_EQ(rows[1], vec({-1, 1}));
    EXPECT_EQ(rows[2], vec({0, -0.5}));
    EXPECT_NEAR(std::abs(shoelace(rows)), 1.5, 1e-15);
}

TEST(Spectratope, FormulaMatchesDeterminantForRealBuiltins) {
    int real_tables = 0;
    for (const auto& e : builtin_catalog()) {
        const CharacterTable q = burnside_table(e.build());
        if (!q.is_real()) {
            EXPECT_EQ(kind_of([&] { spectratope_volume(q); }), ErrorKind::real_table_required) << e.label;
            continue;
        }
        ++real_tables;
        const VolumeReport r = spectratope_volume(q);
        EXPECT_LE(std::abs(r.formula_value - r.determinant_value), 1e-9 * std::max(1.0, r.formula_value)) << e.label;
    }
    EXPECT_EQ(real_tables, 16);
}

TEST(Plot, Sym3Data) {
    std::ostringstream os;
    write_plot_data(table("Sym(3)"), os);
    EXPECT_EQ(os.str(),
              "dim=2\nspectratope:\n1 1\n-1 1\n0 -0.5\nfeasible:\n0 -1\n1 -1\n1 1\n-1 1\n-1 0\n");
}

TEST(Plot, H4FileRoundTrip) {
    const CharacterTable q = table("Z2xZ2");
    const auto path = std::filesystem::temp_directory_path() / "charniep_plot_test.dat";
    emit_plot_data(q, path.string());
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    std::ostringstream direct;
    write_plot_data(q, direct);
    EXPECT_EQ(file.str(), direct.str());
    EXPECT_EQ(file.str().rfind("dim=3\n", 0), 0u);
    std::filesystem::remove(path);
}

TEST(Plot, SpectratopeVerticesLieInTheCone) {
    for (const char* label : {"Sym(3)", "Z2xZ2", "Z2", "D10"}) {
        const CharacterTable q = table(label);
        for (const auto& r : projected_stochastic_rows(q)) {
            Vector x(r.size() + 1);
            x(0) = 1.0;
            x.tail(r.size()) = r.cast<Complex>();
            EXPECT_TRUE(facet_membership(q, x).member) << label;
        }
    }
}

TEST(Plot, Errors) {
    EXPECT_EQ(kind_of([] { emit_plot_data(burnside_table(build_cyclic(2)), "/tmp/unused.dat"); }),
              ErrorKind::unsupported_dimension);
    EXPECT_EQ(kind_of([] { emit_plot_data(burnside_table(build_cyclic(3)), "/tmp/unused.dat"); }),
              ErrorKind::real_table_required);
}
