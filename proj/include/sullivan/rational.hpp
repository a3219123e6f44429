#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sullivan {

// Exact arithmetic over Q. boost::multiprecision keeps rationals reduced
// to lowest terms with a positive denominator, which is exactly the
// canonical form the engine relies on.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) {
    return boost::multiprecision::numerator(q);
}

inline Integer denominator(const Rational& q) {
    return boost::multiprecision::denominator(q);
}

/// Combined bit size of numerator and denominator. Elimination pivots
/// prefer the entry with the smallest bit length to limit coefficient
/// growth on sparse sign matrices.
inline std::size_t bit_length(const Rational& q) {
    if (q == 0)
        return 0;
    Integer num = boost::multiprecision::abs(numerator(q));
    Integer den = denominator(q);
    return static_cast<std::size_t>(boost::multiprecision::msb(num)) +
           static_cast<std::size_t>(boost::multiprecision::msb(den)) + 2;
}

inline std::string rational_to_string(const Rational& q) {
    Integer den = denominator(q);
    if (den == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    Integer result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;
    }
    return result;
}

/// Raised on any structural or mathematical validation failure
/// (inconsistent generators, d^2 != 0, degree mismatches, bad documents).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sullivan
