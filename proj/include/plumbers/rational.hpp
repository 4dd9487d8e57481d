#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace plumbers {

using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input.
inline rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return rat(bigint(s));
        bigint num(s.substr(0, slash));
        bigint den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

inline std::string format_rat(const rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline int sign_of(const rat& q) { return q < 0 ? -1 : q > 0 ? 1 : 0; }

} // namespace plumbers
