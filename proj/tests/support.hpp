#pragma once

// Test-side oracles and generators. These recompute things the slow, obvious
// way and must not call into the code they check.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "formes/core_forms.hpp"

namespace support {

using formes::Int;
using formes::QuadraticForm;
using formes::UnimodularTransform;

inline Int slow_isqrt(Int n)
{
    Int r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// floor(sqrt(n)) by bisection, for arguments too large to count up to
inline Int bisect_isqrt(Int n)
{
    Int lo = 0, hi = 3037000499;
    while (lo < hi) {
        Int mid = lo + (hi - lo + 1) / 2;
        if (mid <= n / mid)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

inline Int slow_gcd(Int a, Int b)
{
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Int value(const QuadraticForm& f, Int y, Int z) { return f.l * y * y + f.m * y * z + f.n * z * z; }

// g.l = f(col1), g.n = f(col2), g.m from f at col1 + col2
inline QuadraticForm substitute(const QuadraticForm& f, Int e11, Int e12, Int e21, Int e22)
{
    Int l = value(f, e11, e21);
    Int n = value(f, e12, e22);
    Int both = value(f, e11 + e12, e21 + e22);
    return {l, both - l - n, n};
}

inline QuadraticForm substitute(const QuadraticForm& f, const UnimodularTransform& t)
{
    return substitute(f, t.e11(), t.e12(), t.e21(), t.e22());
}

// (p, q, r) with pr -+ q^2 = a, p <= r, 2q <= p, r; by scanning every p
inline std::vector<std::tuple<Int, Int, Int>> slow_reduced_triples(Int a, bool plus, bool odd_only)
{
    std::vector<std::tuple<Int, Int, Int>> out;
    for (Int q = 0; 4 * q * q <= a + q * q; ++q) {
        Int prod = plus ? a + q * q : a - q * q;
        if (prod <= 0) break;
        for (Int p = 1; p <= prod; ++p) {
            if (prod % p) continue;
            Int r = prod / p;
            if (p > r || p < 2 * q || r < 2 * q) continue;
            if (odd_only && p % 2 == 0 && r % 2 == 0) continue;
            out.emplace_back(p, q, r);
        }
    }
    return out;
}

inline bool slow_squarefree(Int a)
{
    for (Int d = 2; d * d <= a; ++d)
        if (a % (d * d) == 0) return false;
    return a >= 1;
}

inline bool slow_square(Int a) { return a >= 0 && slow_isqrt(a) * slow_isqrt(a) == a; }

// Integer points (x, y) with |x|, |y| <= bound and f(x, y) = v, solving the
// quadratic in x for each y.
inline std::vector<std::pair<Int, Int>> solutions(const QuadraticForm& f, Int v, Int bound)
{
    std::vector<std::pair<Int, Int>> out;
    for (Int y = -bound; y <= bound; ++y) {
        if (f.l == 0) {
            Int lin = f.m * y, rest = v - f.n * y * y;
            if (lin == 0) {
                if (rest == 0)
                    for (Int x = -bound; x <= bound; ++x) out.emplace_back(x, y);
            } else if (rest % lin == 0 && std::abs(rest / lin) <= bound) {
                out.emplace_back(rest / lin, y);
            }
            continue;
        }
        Int disc = f.m * f.m * y * y - 4 * f.l * (f.n * y * y - v);
        if (disc < 0) continue;
        Int root = bisect_isqrt(disc);
        if (root * root != disc) continue;
        for (Int sgn : {1, -1}) {
            Int num = -f.m * y + sgn * root;
            if (num % (2 * f.l) != 0) continue;
            Int x = num / (2 * f.l);
            if (std::abs(x) <= bound) out.emplace_back(x, y);
            if (root == 0) break;
        }
    }
    return out;
}

// Some unimodular T with entries <= bound taking f to g.
inline bool wide_equivalent(const QuadraticForm& f, const QuadraticForm& g, Int bound)
{
    auto first = solutions(f, g.l, bound);
    auto second = solutions(f, g.n, bound);
    for (auto [a, c] : first)
        for (auto [b, d] : second) {
            Int det = a * d - b * c;
            if (det != 1 && det != -1) continue;
            if (substitute(f, a, b, c, d) == g) return true;
        }
    return false;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    Int range(Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(rng_); }

    QuadraticForm form(Int bound) { return {range(-bound, bound), range(-bound, bound), range(-bound, bound)}; }

    QuadraticForm nonzero_form(Int bound)
    {
        for (;;) {
            auto f = form(bound);
            if (!f.is_zero()) return f;
        }
    }

    // a product of a few shears, swaps and sign flips
    UnimodularTransform unimodular(int steps, Int shear)
    {
        Int a = 1, b = 0, c = 0, d = 1;
        for (int i = 0; i < steps; ++i) {
            Int k = range(-shear, shear);
            Int na = a, nb = b, nc = c, nd = d;
            switch (range(0, 3)) {
            case 0: nb = a * k + b; nd = c * k + d; break;  // right-multiply [[1,k],[0,1]]
            case 1: na = a + b * k; nc = c + d * k; break;  // right-multiply [[1,0],[k,1]]
            case 2: na = b; nb = a; nc = d; nd = c; break;
            default: nb = -b; nd = -d; break;
            }
            a = na, b = nb, c = nc, d = nd;
        }
        return {a, b, c, d};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace support
