#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "delocx/errors.hpp"

namespace delocx {

// Exact scalars. All homological computations in this library are over Q
// (or a cyclotomic extension, see cyclotomic.hpp); nothing is ever rounded.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Canonical text form: "n" or "n/d" with d > 0.
inline std::string rat_to_string(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/// Parses "n" or "n/d". Throws InputError on malformed text.
inline Rat rat_from_string(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw InputError("malformed rational: " + s);
    }
}

} // namespace delocx
