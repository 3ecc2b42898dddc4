#ifndef STEMP_RATIONAL_HPP
#define STEMP_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace stemp {

// Exact non-negative-denominator fraction, always kept in lowest terms.
// Score ratios in this library are small (numerators below a few thousand), so
// 64-bit cross products never overflow.
class Rational {
   public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Parses "17.82", "5", "-3", "24/5". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    // Shortest exact rendering: integers as "5", terminating decimals as
    // "4.8", anything else as "24/7".
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

   private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Closed, open, or half-open interval with exact endpoints. A missing endpoint
// is unbounded on that side.
struct Interval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    bool lo_inclusive = true;
    bool hi_inclusive = true;

    static Interval closed(Rational lo, Rational hi) { return {lo, hi, true, true}; }

    bool contains(const Rational& x) const;
    bool well_ordered() const;

    // Notation: "[2, 20]", "(3, 5.4]", "[0.5, )" (unbounded high), "(, 3]".
    static Interval parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace stemp

#endif  // STEMP_RATIONAL_HPP
