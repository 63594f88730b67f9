// charniep command-line tool.

#include "charniep/charniep.hpp"
#include "charniep/group_file.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace charniep;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kNumerical = 3, kUnsupported = 4 };

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::numerical_degeneracy:
    case ErrorKind::table_corrupt:
    case ErrorKind::ill_conditioned:
    case ErrorKind::non_real_realization:
    case ErrorKind::not_totally_nonzero:
    case ErrorKind::internal_consistency:
        return kNumerical;
    case ErrorKind::unsupported_dimension:
    case ErrorKind::real_table_required:
    case ErrorKind::group_too_large:
    case ErrorKind::not_abelian:
        return kUnsupported;
    default:
        return kInput;
    }
}

struct Source {
    std::vector<std::size_t> cyclic;
    std::string generators;
    std::size_t dft = 0;
    std::size_t walsh = 0;
    std::optional<double> f4theta;
    std::string file;
    std::string builtin;
    std::string label;
};

struct Input {
    std::optional<CharacterTable> table;
    Matrix matrix;
};

struct Global {
    Tolerance tol;
    std::uint64_t seed = kDefaultSeed;
};

void add_source_options(CLI::App* cmd, Source& s) {
    cmd->add_option("--cyclic", s.cyclic, "cyclic factor; repeat for direct products")->check(CLI::PositiveNumber);
    cmd->add_option("--generators", s.generators, "permutation generators, e.g. \"(1 2),(1 2 3)\"");
    cmd->add_option("--dft", s.dft, "Fourier matrix of order n")->check(CLI::PositiveNumber);
    cmd->add_option("--walsh", s.walsh, "Walsh matrix of order m (power of two)")->check(CLI::PositiveNumber);
    cmd->add_option("--f4theta", s.f4theta, "dephased 4x4 complex Hadamard matrix, theta in [0, pi)");
    cmd->add_option("--file", s.file, "YAML group file");
    cmd->add_option("--builtin", s.builtin, "built-in group label (see `charniep groups`)");
    cmd->add_option("--label", s.label, "label for groups given by generators or file");
}

Input resolve(const Source& s, const Global& g) {
    const int count = static_cast<int>(!s.cyclic.empty()) + static_cast<int>(!s.generators.empty()) +
                      static_cast<int>(s.dft > 0) + static_cast<int>(s.walsh > 0) +
                      static_cast<int>(s.f4theta.has_value()) + static_cast<int>(!s.file.empty()) +
                      static_cast<int>(!s.builtin.empty());
    if (count != 1) {
        throw Error(ErrorKind::parse_error,
                    "give exactly one of --cyclic, --generators, --dft, --walsh, --f4theta, --file, --builtin");
    }
    BurnsideOptions bo;
    bo.seed = g.seed;
    Input in;
    auto from_group = [&](const FiniteGroup& grp) {
        in.table = burnside_table(s.label.empty() ? grp : grp.relabeled(s.label), g.tol, bo);
    };
    if (!s.cyclic.empty()) {
        from_group(build_abelian(s.cyclic));
    } else if (!s.generators.empty()) {
        from_group(build_from_generators(parse_generator_list(s.generators), "G"));
    } else if (s.dft > 0) {
        in.table = dft_table(s.dft, g.tol);
    } else if (s.walsh > 0) {
        in.table = walsh_table(s.walsh, g.tol);
    } else if (s.f4theta) {
        in.matrix = dephased_f4_theta(*s.f4theta);
        return in;
    } else if (!s.file.empty()) {
        from_group(load_group_file(s.file));
    } else {
        from_group(builtin_group(s.builtin));
    }
    in.matrix = in.table->entries();
    return in;
}

const CharacterTable& require_table(const Input& in, const char* what) {
    if (!in.table) {
        throw Error(ErrorKind::unsupported_dimension, std::string(what) + " needs a character table, not --f4theta");
    }
    return *in.table;
}

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

/// "p/q" when v is within 1e-9 of a fraction with q <= 1000.
std::string as_fraction(double v) {
    for (long long q = 1; q <= 1000; ++q) {
        const double p = std::round(v * static_cast<double>(q));
        if (std::abs(v - p / static_cast<double>(q)) <= 1e-9) {
            return q == 1 ? std::to_string(static_cast<long long>(p))
                          : std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q);
        }
    }
    return {};
}

std::string with_fraction(double v) {
    const std::string f = as_fraction(v);
    return f.empty() || f == g12(v) ? g12(v) : g12(v) + " (" + f + ")";
}

int cmd_chartab(const Input& in) {
    const CharacterTable& q = require_table(in, "chartab");
    std::cout << format_table(q);
    if (q.real_borderline()) std::cerr << "warning: imaginary parts between eps and the snapping radius\n";
    return kOk;
}

int cmd_cone(const Input& in, const std::string& x_text, const Global& g) {
    if (x_text.empty()) {
        const CharacterTable& q = require_table(in, "listing inequalities");
        const ConeDescription cd = reduced_inequalities(q);
        for (Eigen::Index i = 0; i < cd.facet_coeffs.rows(); ++i)
            std::cout << format_inequality(cd.facet_coeffs.row(i).transpose()) << '\n';
        return kOk;
    }
    const Vector x = parse_spectrum(x_text);
    const MembershipVerdict v = in.table ? facet_membership(*in.table, x, g.tol)
                                         : spectracone_membership(Similarity(in.matrix), x, g.tol);
    std::cout << format_verdict(v) << '\n';
    return v.member ? kOk : kNegative;
}

int cmd_volume(const Input& in) {
    const CharacterTable& q = require_table(in, "volume");
    const VolumeReport r = spectratope_volume(q);
    std::cout << "volume: " << with_fraction(r.formula_value) << '\n'
              << "determinant: " << g12(r.determinant_value) << '\n'
              << "trace_polytope: " << with_fraction(trace_polytope_volume(q.size() - 1)) << '\n'
              << "ratio: " << with_fraction(r.ratio_to_trace_polytope) << '\n';
    return kOk;
}

int cmd_plot(const Input& in, const std::string& out) {
    const CharacterTable& q = require_table(in, "plot");
    if (out.empty() || out == "-") {
        require_real(q);
        write_plot_data(q, std::cout);
    } else {
        emit_plot_data(q, out);
        std::cout << "wrote " << out << '\n';
    }
    return kOk;
}

int cmd_probe(const Input& in, const Global& g) {
    std::cout << format_probe(conjecture_probe(in.matrix, g.tol));
    return kOk;
}

int cmd_verify(const std::vector<std::string>& only, const Global& g) {
    for (const auto& c : only) {
        const auto& all = verify_categories();
        if (std::find(all.begin(), all.end(), c) == all.end()) {
            throw Error(ErrorKind::parse_error, "unknown category " + c);
        }
    }
    VerifyOptions opts;
    opts.tol = g.tol;
    opts.seed = g.seed;
    Verifier v(opts);
    const auto results = v.run(only);
    std::size_t failed = 0;
    const CheckResult* first = nullptr;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.category << ": " << r.name;
        if (!r.detail.empty()) std::cout << " [" << r.detail << "]";
        std::cout << '\n';
        if (!r.pass) {
            ++failed;
            if (!first) first = &r;
        }
    }
    std::cout << results.size() << " checks, " << failed << " failed\n";
    if (first) {
        std::cout << "first failure: " << first->category << ": " << first->name << " [" << first->detail << "]\n";
        return kNegative;
    }
    return kOk;
}

int cmd_groups() {
    for (const auto& e : builtin_catalog()) {
        const FiniteGroup g = e.build();
        std::cout << e.label << ' ' << g.order() << '\n';
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character tables, spectracones and spectratopes of finite groups"};
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    std::optional<double> tolerance;
    if (const char* env = std::getenv("CHARNIEP_TOLERANCE")) {
        try {
            tolerance = std::stod(env);
        } catch (const std::exception&) {
            std::cerr << "error: parse_error: CHARNIEP_TOLERANCE is not a number\n";
            return kInput;
        }
    }
    std::string seed_text;
    app.add_option("--tolerance", tolerance, "comparison tolerance (default 1e-9, env CHARNIEP_TOLERANCE)");
    app.add_option("--seed", seed_text, "seed for randomized internals (default 0x5EED)");

    Source src;
    std::string x_text, out_path;
    std::vector<std::string> only;

    auto* chartab = app.add_subcommand("chartab", "print the character table");
    add_source_options(chartab, src);
    auto* cone = app.add_subcommand("cone", "reduced inequalities, or membership of --x");
    add_source_options(cone, src);
    cone->add_option("--x", x_text, "spectrum as comma-separated complex numbers");
    auto* volume = app.add_subcommand("volume", "spectratope volume and occupancy ratio");
    add_source_options(volume, src);
    auto* plot = app.add_subcommand("plot", "vertex data of the projected spectratope and feasible region");
    add_source_options(plot, src);
    plot->add_option("-o,--output", out_path, "output file (stdout when omitted)");
    auto* probe = app.add_subcommand("probe", "evidence for the totally extremal conjecture");
    add_source_options(probe, src);
    auto* verify = app.add_subcommand("verify-paper", "run the golden checks on the built-in groups");
    verify->add_option("--only", only, "restrict to categories")->delimiter(',');
    auto* groups = app.add_subcommand("groups", "list built-in groups");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (tolerance) {
            if (!(*tolerance > 0.0)) throw Error(ErrorKind::parse_error, "tolerance must be positive");
            g.tol.eps = *tolerance;
        }
        if (!seed_text.empty()) {
            std::size_t used = 0;
            g.seed = std::stoull(seed_text, &used, 0);
            if (used != seed_text.size()) throw Error(ErrorKind::parse_error, "bad seed " + seed_text);
        }
        if (*verify) return cmd_verify(only, g);
        if (*groups) return cmd_groups();
        const Input in = resolve(src, g);
        if (*chartab) return cmd_chartab(in);
        if (*cone) return cmd_cone(in, x_text, g);
        if (*volume) return cmd_volume(in);
        if (*plot) return cmd_plot(in, out_path);
        if (*probe) return cmd_probe(in, g);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: parse_error: " << e.what() << '\n';
        return kInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: parse_error: " << e.what() << '\n';
        return kInput;
    }
    return kOk;
}
