#pragma once

// Text formats: character table printout, spectrum literals, membership
// verdicts, inequality listings and probe reports.

#include "charniep/character_table.hpp"
#include "charniep/core.hpp"
#include "charniep/extremal.hpp"
#include "charniep/perron.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace charniep {

namespace detail {

inline std::string shortest(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

inline std::string sig12(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

}  // namespace detail

/// `a`, `a+bi` or `a-bi`. Exact (snapped) values use the shortest
/// round-trip decimal, others 12 significant digits.
inline std::string format_complex(Complex v, bool exact) {
    auto num = [exact](double x) { return exact ? detail::shortest(x) : detail::sig12(x); };
    const double re = v.real() == 0.0 ? 0.0 : v.real();
    const double im = v.imag() == 0.0 ? 0.0 : v.imag();
    if (im == 0.0) return num(re);
    return num(re) + (im < 0 ? "-" : "+") + num(std::abs(im)) + "i";
}

/// Header `n |G| label`, one line per character, then `classes:` and
/// `centralizers:`.
inline std::string format_table(const CharacterTable& q) {
    std::ostringstream os;
    os << q.size() << ' ' << q.group_order() << ' ' << q.label() << '\n';
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j)
            os << (j ? " " : "") << format_complex(q(i, j), q.snapped(i, j));
        os << '\n';
    }
    os << "classes:";
    for (auto s : q.class_sizes()) os << ' ' << s;
    os << "\ncentralizers:";
    for (auto c : q.centralizer_orders()) os << ' ' << c;
    os << '\n';
    return os.str();
}

/// Parses one complex literal: `2`, `-0.5+0.2i`, `3i`, `-i`, `1e-3-2e-1i`.
inline Complex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    auto fail = [&] { throw Error(ErrorKind::parse_error, "bad complex literal \"" + std::string(text) + "\""); };
    if (s.empty()) fail();
    auto to_double = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        double v = 0.0;
        const char* first = t.data();
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size()) fail();
        return v;
    };
    if (s.back() != 'i' && s.back() != 'I') return {to_double(s), 0.0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, to_double(s)};
    const std::string re = s.substr(0, split);
    if (re.empty() || re == "+" || re == "-") fail();
    return {to_double(re), to_double(s.substr(split))};
}

/// Comma-separated complex literals.
inline Vector parse_spectrum(std::string_view text) {
    std::vector<Complex> xs;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        xs.push_back(parse_complex(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return to_vector(xs);
}

inline std::string format_vector(const Vector& v) {
    std::string s = "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        Complex c = v(i);
        if (std::abs(c.imag()) <= 1e-12) c = {c.real(), 0.0};
        if (std::abs(c.real()) <= 1e-15) c = {0.0, c.imag()};
        s += format_complex(c, false);
    }
    return s + "]";
}

/// `MEMBER coeffs=[...]` or `NOT_MEMBER <constraint>=<index> value=<v>`,
/// indices 1-based.
inline std::string format_verdict(const MembershipVerdict& v) {
    if (v.member) return "MEMBER coeffs=" + format_vector(v.coefficients);
    std::ostringstream os;
    os << "NOT_MEMBER ";
    const Violation& w = *v.violation;
    switch (w.kind) {
    case Violation::Kind::facet: os << "facet=" << w.i + 1; break;
    case Violation::Kind::coefficient: os << "coeff=" << w.i + 1; break;
    case Violation::Kind::row_sum: os << "rowsum=" << w.i + 1; break;
    case Violation::Kind::entry: os << "entry=(" << w.i + 1 << "," << w.j + 1 << ")"; break;
    }
    Complex value = w.value;
    if (std::abs(value.imag()) <= 1e-12) value = {value.real(), 0.0};
    os << " value=" << format_complex(value, false);
    return os.str();
}

/// One facet as `c1x1 + c2x2 + ... >= 0`, zero terms omitted.
inline std::string format_inequality(const Vector& coeffs) {
    std::string s;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        Complex c = coeffs(k);
        if (std::abs(c) <= 1e-12) continue;
        const std::string var = "x" + std::to_string(k + 1);
        const bool real = std::abs(c.imag()) <= 1e-12;
        if (real) {
            const double r = c.real();
            const double mag = std::abs(r);
            std::string term = (std::abs(mag - 1.0) <= 1e-12 ? "" : detail::sig12(mag)) + var;
            if (s.empty()) {
                s = (r < 0 ? "-" : "") + term;
            } else {
                s += (r < 0 ? " - " : " + ") + term;
            }
        } else {
            s += (s.empty() ? "(" : " + (") + format_complex(c, false) + ")" + var;
        }
    }
    if (s.empty()) s = "0";
    return s + " >= 0";
}

inline std::string format_probe(const ProbeReport& r) {
    std::ostringstream os;
    auto b = [](bool v) { return v ? "true" : "false"; };
    os << "perron_normalized: " << b(r.perron_normalized) << '\n'
       << "ideal: " << b(r.ideal) << '\n'
       << "totally_extremal: " << b(r.totally_extremal) << '\n';
    if (r.normalization_partial) os << "normalization_partial: true\n";
    if (r.matches) os << "matches: " << *r.matches << '\n';
    else if (r.match_attempted) os << "matches: none\n";
    return os.str();
}

}  // namespace charniep
