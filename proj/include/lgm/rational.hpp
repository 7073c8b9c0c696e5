#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "lgm/errors.hpp"

namespace lgm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// Floor division toward -infinity.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int rat_floor(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }

// Canonical representative in [0, 1).
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

// Multiplicative order of a phase in Q/Z (denominator of the reduced representative).
inline Int phase_order(const Rat& r) { return rat_den(mod1(r)); }

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) {
    if (a == 0 || b == 0) return 0;
    return a / int_gcd(a, b) * b;
}

// "p/q" with "/q" omitted for integers.
inline std::string rat_str(const Rat& r) {
    std::string s = rat_num(r).str();
    if (!is_integer(r)) s += "/" + rat_den(r).str();
    return s;
}

inline Rat parse_rat(const std::string& s) {
    auto bad = [&]() { fail(ErrorCode::Parse, "bad rational '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) bad();
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(0);
}

inline std::string phases_str(const std::vector<Rat>& phases) {
    std::string s = "(";
    for (size_t i = 0; i < phases.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(phases[i]);
    }
    return s + ")";
}

} // namespace lgm
