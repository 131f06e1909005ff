#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "formes/arith.hpp"

namespace formes {

/// The binary quadratic form l*y^2 + m*y*z + n*z^2.
struct QuadraticForm {
    Int l = 0;
    Int m = 0;
    Int n = 0;

    friend constexpr auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;

    [[nodiscard]] bool is_zero() const { return l == 0 && m == 0 && n == 0; }

    /// |m| <= |l| and |m| <= |n|.
    [[nodiscard]] bool is_reduced() const
    {
        Int am = checked_abs(m);
        return am <= checked_abs(l) && am <= checked_abs(n);
    }

    [[nodiscard]] QuadraticForm negated() const
    {
        return {checked_neg(l), checked_neg(m), checked_neg(n)};
    }
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticForm& f)
{
    return os << '(' << f.l << ',' << f.m << ',' << f.n << ')';
}

/// Integer substitution y = e11*s + e12*x, z = e21*s + e22*x with
/// determinant +1 or -1. Construction rejects any other matrix.
class UnimodularTransform {
public:
    constexpr UnimodularTransform() = default;

    constexpr UnimodularTransform(Int e11, Int e12, Int e21, Int e22)
        : e11_(e11), e12_(e12), e21_(e21), e22_(e22)
    {
        // the products can exceed Int even when the entries do not
        __int128 d = static_cast<__int128>(e11) * e22 - static_cast<__int128>(e12) * e21;
        if (d != 1 && d != -1)
            throw std::invalid_argument("transform is not unimodular (determinant must be +1 or -1)");
    }

    [[nodiscard]] static constexpr UnimodularTransform identity() { return {}; }

    /// s -> s + k*x: adds k times the second column to the first row's image.
    [[nodiscard]] static constexpr UnimodularTransform upper_shear(Int k) { return {1, k, 0, 1}; }
    [[nodiscard]] static constexpr UnimodularTransform lower_shear(Int k) { return {1, 0, k, 1}; }
    [[nodiscard]] static constexpr UnimodularTransform swap() { return {0, 1, 1, 0}; }
    [[nodiscard]] static constexpr UnimodularTransform flip_second() { return {1, 0, 0, -1}; }

    [[nodiscard]] constexpr Int e11() const { return e11_; }
    [[nodiscard]] constexpr Int e12() const { return e12_; }
    [[nodiscard]] constexpr Int e21() const { return e21_; }
    [[nodiscard]] constexpr Int e22() const { return e22_; }

    [[nodiscard]] constexpr Int det() const
    {
        return static_cast<Int>(static_cast<__int128>(e11_) * e22_ - static_cast<__int128>(e12_) * e21_);
    }

    [[nodiscard]] UnimodularTransform inverse() const
    {
        Int d = det();
        return {d * e22_, checked_neg(d * e12_), checked_neg(d * e21_), d * e11_};
    }

    friend constexpr auto operator<=>(const UnimodularTransform&, const UnimodularTransform&) = default;

private:
    Int e11_ = 1;
    Int e12_ = 0;
    Int e21_ = 0;
    Int e22_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const UnimodularTransform& t)
{
    return os << "[[" << t.e11() << ',' << t.e12() << "],[" << t.e21() << ',' << t.e22() << "]]";
}

[[nodiscard]] inline Int evaluate(const QuadraticForm& f, Int y, Int z)
{
    return checked_add(checked_add(checked_mul(f.l, y, y), checked_mul(f.m, y, z)),
                       checked_mul(f.n, z, z));
}

/// 4ln - m^2, the negative of the modern discriminant.
[[nodiscard]] inline Int lagrange_k(const QuadraticForm& f)
{
    return checked_sub(checked_mul(4, f.l, f.n), checked_square(f.m));
}

struct FormClassification {
    enum class Kind { PositiveDefinite, NegativeDefinite, Indefinite, Split, Degenerate };

    Kind kind = Kind::Degenerate;
    Int k = 0;
    /// sqrt(-k) for Split, zero otherwise.
    Int h = 0;

    friend bool operator==(const FormClassification&, const FormClassification&) = default;
};

[[nodiscard]] inline const char* to_string(FormClassification::Kind k)
{
    switch (k) {
    case FormClassification::Kind::PositiveDefinite: return "positive-definite";
    case FormClassification::Kind::NegativeDefinite: return "negative-definite";
    case FormClassification::Kind::Indefinite: return "indefinite";
    case FormClassification::Kind::Split: return "split";
    case FormClassification::Kind::Degenerate: return "degenerate";
    }
    return "?";
}

[[nodiscard]] inline FormClassification classify(const QuadraticForm& f)
{
    using Kind = FormClassification::Kind;
    Int k = lagrange_k(f);
    if (k == 0) return {Kind::Degenerate, k, 0};
    if (k > 0) return {f.l > 0 ? Kind::PositiveDefinite : Kind::NegativeDefinite, k, 0};
    Int nk = checked_neg(k);
    Int h = isqrt(nk);
    if (h * h == nk) return {Kind::Split, k, h};
    return {Kind::Indefinite, k, 0};
}

/// g(s, x) = f(e11*s + e12*x, e21*s + e22*x).
[[nodiscard]] inline QuadraticForm apply_transform(const QuadraticForm& f, const UnimodularTransform& t)
{
    Int l = evaluate(f, t.e11(), t.e21());
    Int n = evaluate(f, t.e12(), t.e22());
    Int cross = checked_add(checked_mul(t.e11(), t.e22()), checked_mul(t.e12(), t.e21()));
    Int m = checked_add(checked_add(checked_mul(2, f.l, checked_mul(t.e11(), t.e12())),
                                    checked_mul(f.m, cross)),
                        checked_mul(2, f.n, checked_mul(t.e21(), t.e22())));
    return {l, m, n};
}

/// Matrix product t1*t2, so that
/// apply_transform(f, compose(t1, t2)) == apply_transform(apply_transform(f, t1), t2).
[[nodiscard]] inline UnimodularTransform compose(const UnimodularTransform& t1, const UnimodularTransform& t2)
{
    return {checked_add(checked_mul(t1.e11(), t2.e11()), checked_mul(t1.e12(), t2.e21())),
            checked_add(checked_mul(t1.e11(), t2.e12()), checked_mul(t1.e12(), t2.e22())),
            checked_add(checked_mul(t1.e21(), t2.e11()), checked_mul(t1.e22(), t2.e21())),
            checked_add(checked_mul(t1.e21(), t2.e12()), checked_mul(t1.e22(), t2.e22()))};
}

struct Reduction {
    QuadraticForm form;
    UnimodularTransform transform;
};

namespace detail {

// Shift m by a multiple of 2*c into [-|c|, |c|], preferring +|c| on the boundary.
// Returns the multiplier k with m + 2*c*k in range.
inline Int centering_multiplier(Int m, Int c)
{
    Int ac = checked_abs(c);
    Int two_ac = checked_mul(2, ac);
    Int r = mod_floor(m, two_ac);
    if (r > ac) r -= two_ac;
    return exact_div(checked_sub(r, m), checked_mul(2, c), "centering multiplier");
}

}  // namespace detail

/// Repeated middle-coefficient reduction until |m| <= |l| and |m| <= |n|.
/// Each step strictly decreases |m|. Works on the smaller (nonzero) outer
/// coefficient; a form whose only candidate pivots are zero has no step
/// and is rejected with std::domain_error.
[[nodiscard]] inline Reduction reduce(const QuadraticForm& f)
{
    if (f.is_zero()) throw std::invalid_argument("cannot reduce the zero form");
    QuadraticForm g = f;
    UnimodularTransform acc;
    while (!g.is_reduced()) {
        Int am = checked_abs(g.m);
        Int al = checked_abs(g.l);
        Int an = checked_abs(g.n);
        bool use_l;
        if (al <= an && g.l != 0 && am > al)
            use_l = true;
        else if (g.n != 0 && am > an)
            use_l = false;
        else if (g.l != 0 && am > al)
            use_l = true;
        else
            throw std::domain_error("form has a zero outer coefficient; no reduction step applies");

        UnimodularTransform step = use_l ? UnimodularTransform::upper_shear(detail::centering_multiplier(g.m, g.l))
                                         : UnimodularTransform::lower_shear(detail::centering_multiplier(g.m, g.n));
        g = apply_transform(g, step);
        acc = compose(acc, step);
    }
    return {g, acc};
}

/// Output of the constructive divisor decomposition: the divisor A equals
/// L*s^2 + M*s*x + N*x^2 with gcd(s, x) = 1 and the same invariant as the
/// source form.
struct WitnessDecomposition {
    Int L = 0;
    Int M = 0;
    Int N = 0;
    Int s = 0;
    Int x = 0;
    // construction intermediates
    Int quotient = 0;  // value / A
    Int b = 0;
    Int c = 0;
    Int E = 0;
    Int theta = 0;

    [[nodiscard]] QuadraticForm form() const { return {L, M, N}; }
};

/// Given coprime (t, u) and a divisor A of B t^2 + C t u + D u^2, builds the
/// form L s^2 + M s x + N x^2 representing A at coprime (s, x).
/// theta is normalized into [0, |c|). u = 0 is accepted (then t = +-1, s = 0).
[[nodiscard]] inline WitnessDecomposition theorem1_witness(Int B, Int C, Int D, Int t, Int u, Int A)
{
    if (gcd(t, u) != 1) throw std::invalid_argument("theorem1_witness: t and u must be coprime");
    if (A == 0) throw std::invalid_argument("theorem1_witness: divisor A must be nonzero");
    Int value = evaluate({B, C, D}, t, u);
    if (value == 0 || value % A != 0)
        throw std::invalid_argument("theorem1_witness: A does not divide the represented value");

    WitnessDecomposition w;
    w.quotient = exact_div(value, A, "value / A");
    w.b = gcd(w.quotient, u);
    w.c = exact_div(w.quotient, w.b, "quotient / b");
    w.s = exact_div(u, w.b, "u / b");
    w.E = exact_div(B, w.b, "B / b");
    w.theta = mod_floor(checked_mul(t, mod_inverse(w.s, w.c)), w.c);
    w.x = exact_div(checked_sub(t, checked_mul(w.theta, w.s)), w.c, "(t - theta*s) / c");

    Int numer = checked_add(checked_add(checked_mul(w.E, checked_square(w.theta)), checked_mul(C, w.theta)),
                            checked_mul(D, w.b));
    w.L = exact_div(numer, w.c, "(E theta^2 + C theta + D b) / c");
    w.M = checked_add(checked_mul(2, w.E, w.theta), C);
    w.N = checked_mul(w.E, w.c);

    if (evaluate(w.form(), w.s, w.x) != A || lagrange_k(w.form()) != lagrange_k({B, C, D}) || gcd(w.s, w.x) != 1)
        throw std::logic_error("theorem1_witness: construction postcondition violated");
    return w;
}

}  // namespace formes
