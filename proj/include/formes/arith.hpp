#pragma once

// Exact 64-bit integer kernel. Every operation either returns the exact
// result or throws std::overflow_error; nothing wraps.

#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace formes {

using Int = std::int64_t;

[[noreturn]] inline void raise_overflow(const char* op)
{
    throw std::overflow_error(std::string("integer overflow in ") + op);
}

[[nodiscard]] constexpr Int checked_add(Int a, Int b)
{
    Int r{};
    if (__builtin_add_overflow(a, b, &r)) raise_overflow("addition");
    return r;
}

[[nodiscard]] constexpr Int checked_sub(Int a, Int b)
{
    Int r{};
    if (__builtin_sub_overflow(a, b, &r)) raise_overflow("subtraction");
    return r;
}

[[nodiscard]] constexpr Int checked_mul(Int a, Int b)
{
    Int r{};
    if (__builtin_mul_overflow(a, b, &r)) raise_overflow("multiplication");
    return r;
}

[[nodiscard]] constexpr Int checked_mul(Int a, Int b, Int c)
{
    return checked_mul(checked_mul(a, b), c);
}

[[nodiscard]] constexpr Int checked_neg(Int a)
{
    if (a == std::numeric_limits<Int>::min()) raise_overflow("negation");
    return -a;
}

[[nodiscard]] constexpr Int checked_abs(Int a)
{
    return a < 0 ? checked_neg(a) : a;
}

[[nodiscard]] constexpr Int checked_square(Int a)
{
    return checked_mul(a, a);
}

/// Quotient rounded toward negative infinity. Divisor must be nonzero.
[[nodiscard]] constexpr Int floor_div(Int a, Int b)
{
    if (b == 0) throw std::domain_error("division by zero");
    if (b == -1) return checked_neg(a);
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Quotient rounded toward positive infinity.
[[nodiscard]] constexpr Int ceil_div(Int a, Int b)
{
    if (b == 0) throw std::domain_error("division by zero");
    if (b == -1) return checked_neg(a);
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

/// Least nonnegative residue of a modulo |m|.
[[nodiscard]] constexpr Int mod_floor(Int a, Int m)
{
    if (m == 0) throw std::domain_error("modulus zero");
    Int mm = m < 0 ? checked_neg(m) : m;
    Int r = a % mm;
    return r < 0 ? r + mm : r;
}

/// Quotient of an exact division; throws std::logic_error when the
/// remainder is nonzero, since callers use it where divisibility is proven.
[[nodiscard]] inline Int exact_div(Int a, Int b, const char* what)
{
    if (b == 0 || a % b != 0)
        throw std::logic_error(std::string("expected exact division: ") + what);
    if (b == -1) return checked_neg(a);
    return a / b;
}

[[nodiscard]] constexpr Int gcd(Int a, Int b)
{
    // std::gcd is undefined when |a| or |b| is not representable.
    return std::gcd(checked_abs(a), checked_abs(b));
}

/// Floor of the square root, computed by Newton iteration on integers.
[[nodiscard]] constexpr Int isqrt(Int n)
{
    if (n < 0) throw std::domain_error("isqrt of a negative number");
    if (n < 2) return n;
    auto u = static_cast<std::uint64_t>(n);
    // 2^ceil(bits/2) >= sqrt(n), so the iteration descends monotonically.
    std::uint64_t x = std::uint64_t{1} << ((std::bit_width(u) + 1) / 2);
    for (;;) {
        std::uint64_t y = (x + u / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return static_cast<Int>(x);
}

[[nodiscard]] constexpr bool is_square(Int n)
{
    if (n < 0) return false;
    Int r = isqrt(n);
    return r * r == n;
}

struct ExtendedGcd {
    Int g;
    Int x;
    Int y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g.
[[nodiscard]] constexpr ExtendedGcd extended_gcd(Int a, Int b)
{
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = checked_sub(old_r, checked_mul(q, r));
        old_r = r;
        r = tmp;
        tmp = checked_sub(old_s, checked_mul(q, s));
        old_s = s;
        s = tmp;
        tmp = checked_sub(old_t, checked_mul(q, t));
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {checked_neg(old_r), checked_neg(old_s), checked_neg(old_t)};
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo |m| in [0, |m|). Requires gcd(a, m) = 1.
[[nodiscard]] inline Int mod_inverse(Int a, Int m)
{
    Int mm = checked_abs(m);
    if (mm == 1) return 0;
    auto e = extended_gcd(mod_floor(a, mm), mm);
    if (e.g != 1) throw std::domain_error("mod_inverse: arguments not coprime");
    return mod_floor(e.x, mm);
}

}  // namespace formes
