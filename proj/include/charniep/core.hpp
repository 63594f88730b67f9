#pragma once

// Shared scalar/matrix aliases, tolerances and the library error type.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace charniep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Numerical thresholds used across the library.
///
/// `eps` is the identity/orthogonality/nonnegativity threshold, `snap` the
/// integrality and entry-snapping radius, `imag` the largest imaginary part
/// tolerated before a realizing matrix counts as non-real, and `spectrum`
/// the per-element radius for multiset comparisons. `structure` bounds the
/// symmetry/normality defect of realizing matrices.
struct Tolerance {
    double eps = 1e-9;
    double snap = 1e-6;
    double imag = 1e-7;
    double spectrum = 1e-7;
    double structure = 1e-8;
};

enum class ErrorKind {
    invalid_order,
    invalid_permutation,
    group_too_large,
    invalid_group,
    invalid_size,
    length_mismatch,
    index_out_of_range,
    numerical_degeneracy,
    table_corrupt,
    ill_conditioned,
    non_real_realization,
    not_totally_nonzero,
    real_table_required,
    unsupported_dimension,
    not_abelian,
    internal_consistency,
    parse_error,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_order: return "invalid-order";
    case ErrorKind::invalid_permutation: return "invalid-permutation";
    case ErrorKind::group_too_large: return "group-too-large";
    case ErrorKind::invalid_group: return "invalid-group";
    case ErrorKind::invalid_size: return "invalid-size";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::index_out_of_range: return "index-out-of-range";
    case ErrorKind::numerical_degeneracy: return "numerical-degeneracy";
    case ErrorKind::table_corrupt: return "table-corrupt";
    case ErrorKind::ill_conditioned: return "ill-conditioned";
    case ErrorKind::non_real_realization: return "non-real-realization";
    case ErrorKind::not_totally_nonzero: return "not-totally-nonzero";
    case ErrorKind::real_table_required: return "real-table-required";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::not_abelian: return "not-abelian";
    case ErrorKind::internal_consistency: return "internal-consistency";
    case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Vector to_vector(const std::vector<Complex>& xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
    return v;
}

inline std::vector<Complex> to_std(const Vector& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace charniep
