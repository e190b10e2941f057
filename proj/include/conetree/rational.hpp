#ifndef CONETREE_RATIONAL_HPP
#define CONETREE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

namespace conetree {

// Exact nonnegative rational for quasigeodesic and flare constants.
// Denominator 0 encodes +infinity (degenerate hallways, collapsed maps).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    static Rational infinity() {
        Rational r;
        r.num = 1;
        r.den = 0;
        return r;
    }

    bool is_infinite() const { return den == 0; }

    void normalize() {
        if (den == 0) {
            num = 1;
            return;
        }
        if (den < 0) {
            den = -den;
            num = -num;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const {
        if (den == 0) return 1e300;
        return static_cast<double>(num) / static_cast<double>(den);
    }

    std::string str() const {
        if (den == 0) return "inf";
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.den == 0) return false;
        if (b.den == 0) return true;
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }
};

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }

} // namespace conetree

#endif
