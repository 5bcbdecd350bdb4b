#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptlab {

// Exact rational with i64 numerator/denominator, always reduced, den > 0.
class Rational {
  public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) {
            throw std::invalid_argument("rational: zero denominator");
        }
        reduce();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rational operator+(const Rational& o) const {
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return Rational(num_ * o.num_, den_ * o.den_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }

    bool operator==(const Rational& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num_) * o.den_ <
               static_cast<__int128>(o.num_) * den_;
    }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    // Lowest-terms form: "3/4", integers as "3".
    std::string str() const {
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Same value written over an explicit denominator, e.g. 13/14 over 28
    // -> "26/28". The target must be a multiple of den().
    std::string str_over(std::int64_t target_den) const {
        if (target_den <= 0 || target_den % den_ != 0) {
            throw std::invalid_argument("rational: incompatible denominator " +
                                        std::to_string(target_den));
        }
        const std::int64_t scale = target_den / den_;
        return std::to_string(num_ * scale) + "/" + std::to_string(target_den);
    }

    // Accepts "n" or "n/d" with optional leading minus.
    static std::optional<Rational> parse(std::string_view text);

  private:
    void reduce() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) {
            den_ = 1;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::optional<Rational> Rational::parse(std::string_view text) {
    auto parse_int = [](std::string_view s, std::int64_t& out) {
        if (s.empty()) {
            return false;
        }
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-') {
            neg = true;
            i = 1;
            if (s.size() == 1) {
                return false;
            }
        }
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') {
                return false;
            }
            v = v * 10 + (s[i] - '0');
        }
        out = neg ? -v : v;
        return true;
    };
    const auto slash = text.find('/');
    std::int64_t n = 0;
    std::int64_t d = 1;
    if (slash == std::string_view::npos) {
        if (!parse_int(text, n)) {
            return std::nullopt;
        }
    } else {
        if (!parse_int(text.substr(0, slash), n) ||
            !parse_int(text.substr(slash + 1), d) || d == 0) {
            return std::nullopt;
        }
    }
    return Rational(n, d);
}

} // namespace ptlab
