#include "stemp/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace stemp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(trim(s.substr(0, slash)), text), parse_int(trim(s.substr(slash + 1)), text));
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t den = 1;
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view frac = s.substr(dot + 1);
        if (frac.size() > 12) throw std::invalid_argument("too many decimals: '" + std::string(text) + "'");
        digits = std::string(s.substr(0, dot)) + std::string(frac);
        for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    } else {
        digits = std::string(s);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    std::int64_t num = parse_int(digits, text);
    return Rational(negative ? -num : num, den);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    int places = std::max(twos, fives);
    std::int64_t scale = 1;
    for (int k = 0; k < places; ++k) scale *= 10;
    std::int64_t scaled = num_ * (scale / den_);
    std::int64_t mag = scaled < 0 ? -scaled : scaled;
    std::string frac = std::to_string(mag % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    return (scaled < 0 ? "-" : "") + std::to_string(mag / scale) + "." + frac;
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

bool Interval::contains(const Rational& x) const {
    if (lo) {
        if (lo_inclusive ? x < *lo : x <= *lo) return false;
    }
    if (hi) {
        if (hi_inclusive ? x > *hi : x >= *hi) return false;
    }
    return true;
}

bool Interval::well_ordered() const {
    if (!lo || !hi) return true;
    if (lo_inclusive && hi_inclusive) return *lo <= *hi;
    return *lo < *hi;
}

Interval Interval::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.size() < 3) throw std::invalid_argument("bad interval: '" + std::string(text) + "'");
    Interval iv;
    if (s.front() == '[') {
        iv.lo_inclusive = true;
    } else if (s.front() == '(') {
        iv.lo_inclusive = false;
    } else {
        throw std::invalid_argument("bad interval: '" + std::string(text) + "'");
    }
    if (s.back() == ']') {
        iv.hi_inclusive = true;
    } else if (s.back() == ')') {
        iv.hi_inclusive = false;
    } else {
        throw std::invalid_argument("bad interval: '" + std::string(text) + "'");
    }
    std::string_view body = s.substr(1, s.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("bad interval: '" + std::string(text) + "'");
    std::string_view lo = trim(body.substr(0, comma));
    std::string_view hi = trim(body.substr(comma + 1));
    if (!lo.empty()) iv.lo = Rational::parse(lo);
    if (!hi.empty()) iv.hi = Rational::parse(hi);
    if (!iv.well_ordered()) throw std::invalid_argument("interval bounds out of order: '" + std::string(text) + "'");
    return iv;
}

std::string Interval::str() const {
    std::string out(1, lo_inclusive ? '[' : '(');
    if (lo) out += lo->str();
    out += ", ";
    if (hi) out += hi->str();
    out += hi_inclusive ? ']' : ')';
    return out;
}

}  // namespace stemp
