#pragma once

#include <algorithm>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "formes/arith.hpp"
#include "formes/core_forms.hpp"

namespace formes {

/// Which family of numbers: t^2 + a u^2 (Plus) or t^2 - a u^2 (Minus).
enum class Sign { Plus, Minus };

[[nodiscard]] inline const char* to_string(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

/// One row of a divisor-form table.
///   Plus:  p y^2 + 2q yz + r z^2,  p r - q^2 = a
///   Minus: p y^2 + 2q yz - r z^2,  p r + q^2 = a   (negated: -p y^2 + 2q yz + r z^2)
/// q >= 0 stands for both signs of the middle term.
struct DivisorTableEntry {
    Int a = 0;
    Sign sign = Sign::Plus;
    Int p = 0;
    Int q = 0;
    Int r = 0;
    bool negated = false;

    friend constexpr auto operator<=>(const DivisorTableEntry&, const DivisorTableEntry&) = default;

    /// The form with middle coefficient +2q.
    [[nodiscard]] QuadraticForm form() const
    {
        Int mid = checked_mul(2, q);
        if (sign == Sign::Plus) return {p, mid, r};
        return negated ? QuadraticForm{checked_neg(p), mid, r} : QuadraticForm{p, mid, checked_neg(r)};
    }

    [[nodiscard]] DivisorTableEntry negation() const
    {
        DivisorTableEntry e = *this;
        e.negated = !e.negated;
        return e;
    }
};

inline std::ostream& operator<<(std::ostream& os, const DivisorTableEntry& e)
{
    os << (e.negated ? "-" : "") << '(' << e.p << ',' << e.q << ',' << e.r << ')';
    return os;
}

struct SquarefreeKernel {
    Int a0 = 1;  // squarefree part
    Int g = 1;   // a == a0 * g^2

    friend bool operator==(const SquarefreeKernel&, const SquarefreeKernel&) = default;
};

[[nodiscard]] inline SquarefreeKernel squarefree_kernel(Int a)
{
    if (a < 1) throw std::invalid_argument("squarefree_kernel: a must be positive");
    SquarefreeKernel k;
    Int rest = a;
    for (Int d = 2; d <= rest / d; ++d) {
        int e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) k.g *= d;
        if (e % 2 == 1) k.a0 *= d;
    }
    k.a0 *= rest;
    return k;
}

[[nodiscard]] inline bool is_squarefree(Int a) { return a >= 1 && squarefree_kernel(a).g == 1; }

/// Largest q with 3q^2 <= a (Plus) or 5q^2 <= a (Minus).
[[nodiscard]] inline Int q_bound(Int a, Sign sign)
{
    if (a < 1) throw std::invalid_argument("q_bound: a must be positive");
    return isqrt(a / (sign == Sign::Plus ? 3 : 5));
}

/// Ascending divisor pairs (p, r) of n > 0 with p <= r, by trial division.
[[nodiscard]] inline std::vector<std::pair<Int, Int>> factor_pairs(Int n)
{
    std::vector<std::pair<Int, Int>> out;
    for (Int p = 1; p <= n / p; ++p)
        if (n % p == 0) out.emplace_back(p, n / p);
    return out;
}

/// Why a factor pair (p, r) of a +- q^2 was kept or dropped.
enum class Verdict { Kept, BothEven, BelowTwoQ };

[[nodiscard]] inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Kept: return "kept";
    case Verdict::BothEven: return "both-even";
    case Verdict::BelowTwoQ: return "below-2q";
    }
    return "?";
}

struct Candidate {
    Int p = 0;
    Int q = 0;
    Int r = 0;
    Verdict verdict = Verdict::Kept;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Every factor pair p <= r of a +- q^2 for q up to q_bound, with its verdict
/// under the size rule (p, r >= 2q) and, when odd_only, the parity rule.
/// Works for any a >= 1, squarefree or not.
[[nodiscard]] inline std::vector<Candidate> reduced_candidates(Int a, Sign sign, bool odd_only = true)
{
    if (a < 1) throw std::invalid_argument("enumerate: a must be positive");
    std::vector<Candidate> out;
    Int qmax = q_bound(a, sign);
    for (Int q = 0; q <= qmax; ++q) {
        Int prod = sign == Sign::Plus ? checked_add(a, q * q) : a - q * q;
        for (auto [p, r] : factor_pairs(prod)) {
            Verdict v = Verdict::Kept;
            if (p < 2 * q || r < 2 * q)
                v = Verdict::BelowTwoQ;
            else if (odd_only && p % 2 == 0 && r % 2 == 0)
                v = Verdict::BothEven;
            out.push_back({p, q, r, v});
        }
    }
    return out;
}

/// The kept candidates as table entries. Order: ascending q, then p, then
/// negated (Minus lists each form followed by its negation).
[[nodiscard]] inline std::vector<DivisorTableEntry> enumerate_reduced_entries(Int a, Sign sign, bool odd_only)
{
    std::vector<DivisorTableEntry> out;
    for (const auto& c : reduced_candidates(a, sign, odd_only)) {
        if (c.verdict != Verdict::Kept) continue;
        DivisorTableEntry e{a, sign, c.p, c.q, c.r, false};
        out.push_back(e);
        if (sign == Sign::Minus) out.push_back(e.negation());
    }
    return out;
}

/// Reduced divisor forms of t^2 +- a u^2 for squarefree a. With odd_only,
/// forms whose outer coefficients are both even are dropped. Minus entries
/// come in pairs (form, negation).
[[nodiscard]] inline std::vector<DivisorTableEntry> enumerate_divisor_forms(Int a, Sign sign, bool odd_only = true)
{
    if (a < 1) throw std::invalid_argument("enumerate_divisor_forms: a must be positive");
    if (!is_squarefree(a))
        throw std::invalid_argument("enumerate_divisor_forms: a = " + std::to_string(a) +
                                    " is not squarefree (normalize with squarefree_kernel)");
    return enumerate_reduced_entries(a, sign, odd_only);
}

/// Thrown for forms whose divisors are unrestricted (K = 0 or -K a square).
class special_form_error : public std::domain_error {
public:
    special_form_error(const std::string& what, FormClassification c) : std::domain_error(what), classification_(c) {}

    [[nodiscard]] const FormClassification& classification() const noexcept { return classification_; }

private:
    FormClassification classification_;
};

class degenerate_form_error : public special_form_error {
public:
    explicit degenerate_form_error(FormClassification c)
        : special_form_error("degenerate form (K = 0): every number is a divisor", c)
    {
    }
};

class split_form_error : public special_form_error {
public:
    explicit split_form_error(FormClassification c)
        : special_form_error("split form (K = -" + std::to_string(c.h) + "^2): product of two linear forms", c)
    {
    }
};

/// All reduced forms (P, Q, R) with 4PR - Q^2 equal to the invariant of
/// B t^2 + C t u + D u^2, |P| <= |R| and |Q| <= min(|P|, |R|).
/// Definite case: P, R carry the sign of B. Indefinite: both sign placements.
/// Order: ascending Q, then |P|, then positive P first.
[[nodiscard]] inline std::vector<QuadraticForm> enumerate_general(Int B, Int C, Int D)
{
    QuadraticForm src{B, C, D};
    FormClassification cls = classify(src);
    using Kind = FormClassification::Kind;
    if (cls.kind == Kind::Degenerate) throw degenerate_form_error(cls);
    if (cls.kind == Kind::Split) throw split_form_error(cls);

    Int K = cls.k;
    Int qmax = K > 0 ? isqrt(K / 3) : isqrt(checked_neg(K) / 5);
    Int parity = mod_floor(C, 2);
    std::vector<QuadraticForm> out;
    for (Int Q = -qmax; Q <= qmax; ++Q) {
        if (mod_floor(Q, 2) != parity) continue;
        Int aq = checked_abs(Q);
        Int prod = exact_div(checked_add(K, Q * Q), 4, "(K + Q^2) / 4");
        if (K > 0) {
            Int s = B > 0 ? 1 : -1;
            for (auto [p, r] : factor_pairs(prod))
                if (p >= aq && r >= aq) out.push_back({s * p, Q, s * r});
        } else {
            for (auto [p, r] : factor_pairs(-prod)) {
                if (p < aq || r < aq) continue;
                out.push_back({p, Q, -r});
                out.push_back({-p, Q, r});
            }
        }
    }
    return out;
}

}  // namespace formes
