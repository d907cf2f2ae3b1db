#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace silva {

// Exact fraction with a positive denominator, normalized on construction.
// Vote shares stay small, so no overflow guarding beyond 64-bit range.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;

    Rational(std::int64_t numerator, std::int64_t denominator) : num(numerator), den(denominator) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (const auto g = std::gcd(num < 0 ? -num : num, den); g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
};

}  // namespace silva
