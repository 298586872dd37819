#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lvcap {

// Exact fraction on 64-bit numerator/denominator. All capacity values, LP
// pivots and schedule values go through this type; no floating point is
// allowed anywhere in the capacity logic. Intermediate products use 128-bit
// arithmetic and overflow past 63 bits (after reduction) throws.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    static Rational from_i128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational: value out of 64-bit range");
        Rational r;
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }

    Rational operator+(const Rational& o) const {
        return from_i128((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                         (__int128)den_ * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return from_i128((__int128)num_ * o.den_ - (__int128)o.num_ * den_,
                         (__int128)den_ * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return from_i128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::domain_error("rational: division by zero");
        return from_i128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator<=(const Rational& o) const { return !(o < *this); }
    bool operator>=(const Rational& o) const { return !(*this < o); }

    bool is_zero() const { return num_ == 0; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Renders "p/q", or just "p" for integers.
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p" or "p/q".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

inline Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    __int128 l = (__int128)(a / std::gcd(a, b)) * b;
    if (l > INT64_MAX) throw std::overflow_error("lcm out of range");
    return static_cast<long long>(l);
}

} // namespace lvcap
