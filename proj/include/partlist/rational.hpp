#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace plc {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in exact comparison");
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in exact comparison");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in exact comparison");
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i)
        r = checked_mul(r, base);
    return r;
}

// Reduced fraction with positive denominator. Comparisons cross-multiply in 128 bits.
class Rational {
public:
    Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den)
    {
        if (den_ == 0)
            throw std::domain_error("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }
    friend bool operator==(const Rational& a, const Rational& b) { return (a <=> b) == 0; }

    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace plc
