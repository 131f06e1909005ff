#pragma once

// Alternating transformation method for forms p y^2 + 2q yz - r z^2 with
// p r + q^2 = a (a > 0, not a square).
//
// State after step k is (q_k, r_{k+1}); the divisors satisfy
// r_k r_{k+1} + q_k^2 = a with every r_k > 0. Odd steps substitute on the
// first variable (q_k = q_{k-1} + r_k m_k), even steps on the second
// (q_k = q_{k-1} - r_k m_k). The window multiplier is the unique integer
// below (sqrt(a) -+ q_{k-1}) / r_k; since sqrt(a) is irrational it equals
// floor((isqrt(a) -+ q_{k-1}) / r_k).

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "formes/arith.hpp"
#include "formes/core_forms.hpp"
#include "formes/enumeration.hpp"

namespace formes {

enum class Parity { Odd, Even };

struct CycleState {
    Int k = 0;
    Int q = 0;
    Int r_prev = 0;  // r_k, the divisor used by the step
    Int r_next = 0;  // r_{k+1} = (a - q_k^2) / r_k
    Int multiplier = 0;
    Parity parity = Parity::Odd;

    friend bool operator==(const CycleState&, const CycleState&) = default;
};

/// A reduced form found along a cycle, with the transform carrying the
/// cycle's start form onto it.
struct RecordedForm {
    QuadraticForm form;
    UnimodularTransform transform;
};

/// The start triple (r_lead, q0, r_trail) denotes r_lead y^2 + 2 q0 yz - r_trail z^2.
struct StartTriple {
    Int r_lead = 0;
    Int q0 = 0;
    Int r_trail = 0;

    [[nodiscard]] QuadraticForm form() const
    {
        return {r_lead, checked_mul(2, q0), checked_neg(r_trail)};
    }
};

struct Cycle {
    Int a = 0;
    QuadraticForm start;
    std::vector<CycleState> states;
    std::vector<RecordedForm> reduced_forms;
    // closure: states with k = mu and k = mu + nu carry the same (q, r_next), nu even
    Int mu = 0;
    Int nu = 0;
};

/// Both sign choices of q0 explored from the same start form.
struct Orbit {
    Int a = 0;
    QuadraticForm start;
    std::vector<Cycle> runs;
};

/// Smallest of (l, +-m, n), (n, +-m, l): the class key under the middle-sign
/// flip y -> -y and the argument swap. Negation is not identified.
[[nodiscard]] inline QuadraticForm improper_key(const QuadraticForm& f)
{
    std::array<QuadraticForm, 4> v{{{f.l, f.m, f.n},
                                    {f.l, checked_neg(f.m), f.n},
                                    {f.n, f.m, f.l},
                                    {f.n, checked_neg(f.m), f.l}}};
    return *std::min_element(v.begin(), v.end());
}

/// The four transforms realizing improper_key's symmetries, in the same order.
[[nodiscard]] inline std::array<UnimodularTransform, 4> key_symmetries()
{
    return {UnimodularTransform::identity(), UnimodularTransform::flip_second(), UnimodularTransform::swap(),
            UnimodularTransform{0, 1, -1, 0}};
}

namespace detail {

inline void check_cycle_parameter(Int a)
{
    if (a < 1) throw std::invalid_argument("cycle: a must be positive");
    if (is_square(a))
        throw split_form_error(classify({1, 0, checked_neg(a)}));
}

// Runs the method from lead*y^2 + 2q*yz - trail*z^2 (lead, trail > 0), which
// equals apply_transform(given, t0).
inline Cycle run_cycle(Int a, const QuadraticForm& given, Int lead, Int q, Int trail, const UnimodularTransform& t0)
{
    Cycle c;
    c.a = a;
    c.start = given;

    QuadraticForm g{lead, checked_mul(2, q), checked_neg(trail)};
    if (apply_transform(given, t0) != g) throw std::logic_error("cycle: bad start normalization");
    // The running transform can outgrow Int on the second lap of a long
    // period; it is only needed while new forms still turn up.
    std::optional<UnimodularTransform> acc = t0;

    const Int root = isqrt(a);
    const Int step_limit = checked_mul(checked_mul(2, checked_add(checked_mul(2, root), 1)), a);

    auto record = [&](const QuadraticForm& f, const UnimodularTransform& st) {
        for (const auto& rec : c.reduced_forms)
            if (rec.form == f) return;
        if (!acc) throw std::overflow_error("integer overflow in multiplication");
        c.reduced_forms.push_back({f, compose(*acc, st)});
    };

    std::map<std::tuple<Int, Int, int>, Int> seen;
    Int r_cur = lead;
    Int q_prev = q;

    for (Int k = 1;; ++k) {
        if (k > step_limit) throw std::logic_error("cycle: no closure within the pigeonhole bound");
        const bool odd = (k % 2) == 1;
        auto step_for = [odd](Int m) {
            return odd ? UnimodularTransform::upper_shear(m) : UnimodularTransform::lower_shear(m);
        };
        auto q_after = [&](Int m) {
            Int shift = checked_mul(r_cur, m);
            return odd ? checked_add(q_prev, shift) : checked_sub(q_prev, shift);
        };

        // every multiplier putting |2 q_new| <= r_cur; keep those also within r_new
        Int two_r = checked_mul(2, r_cur);
        Int two_q = checked_mul(2, q_prev);
        Int m_lo = odd ? ceil_div(checked_sub(checked_neg(r_cur), two_q), two_r)
                       : ceil_div(checked_sub(two_q, r_cur), two_r);
        Int m_hi = odd ? floor_div(checked_sub(r_cur, two_q), two_r)
                       : floor_div(checked_add(two_q, r_cur), two_r);
        for (Int m = m_lo; m <= m_hi; ++m) {
            Int qn = q_after(m);
            Int rest = checked_sub(a, checked_square(qn));
            if (rest <= 0) continue;
            Int rn = exact_div(rest, r_cur, "(a - q^2) / r");
            if (checked_mul(2, checked_abs(qn)) > rn) continue;
            UnimodularTransform st = step_for(m);
            record(apply_transform(g, st), st);
        }

        Int m = odd ? floor_div(checked_sub(root, q_prev), r_cur) : floor_div(checked_add(root, q_prev), r_cur);
        UnimodularTransform st = step_for(m);
        g = apply_transform(g, st);
        if (acc) {
            try {
                acc = compose(*acc, st);
            } catch (const std::overflow_error&) {
                acc.reset();
            }
        }

        Int qk = q_after(m);
        Int r_next = exact_div(checked_sub(a, checked_square(qk)), r_cur, "(a - q^2) / r");
        if (r_next <= 0) throw std::logic_error("cycle: divisor left the positive range");
        QuadraticForm expect = odd ? QuadraticForm{r_cur, 2 * qk, -r_next} : QuadraticForm{r_next, 2 * qk, -r_cur};
        if (g != expect) throw std::logic_error("cycle: transform drifted from the recurrence");

        c.states.push_back({k, qk, r_cur, r_next, m, odd ? Parity::Odd : Parity::Even});

        auto [it, fresh] = seen.try_emplace({qk, r_next, odd ? 1 : 0}, k);
        if (!fresh) {
            c.mu = it->second;
            c.nu = k - it->second;
            break;
        }
        q_prev = qk;
        r_cur = r_next;
    }
    return c;
}

struct NormalizedStart {
    Int lead;
    Int q;
    Int trail;
    UnimodularTransform t0;
};

inline NormalizedStart normalize_start(Int a, const StartTriple& s)
{
    check_cycle_parameter(a);
    if (s.r_lead == 0 || s.r_trail == 0) throw std::invalid_argument("cycle: start coefficients must be nonzero");
    if (checked_add(checked_mul(s.r_lead, s.r_trail), checked_square(s.q0)) != a)
        throw std::invalid_argument("cycle: start triple does not satisfy r_lead*r_trail + q0^2 = a");
    if ((s.r_lead > 0) != (s.r_trail > 0))
        throw std::invalid_argument("cycle: r_lead and r_trail must have the same sign");
    if (s.r_lead > 0) return {s.r_lead, s.q0, s.r_trail, UnimodularTransform::identity()};
    // -R' y^2 + 2q yz + R z^2 with the arguments swapped
    return {checked_neg(s.r_trail), s.q0, checked_neg(s.r_lead), UnimodularTransform::swap()};
}

}  // namespace detail

/// One run of the method from the given start, until the (q, r) state
/// recurs at an even distance.
[[nodiscard]] inline Cycle cycle(Int a, const StartTriple& start)
{
    auto ns = detail::normalize_start(a, start);
    return detail::run_cycle(a, start.form(), ns.lead, ns.q, ns.trail, ns.t0);
}

/// Runs for q0 and, when nonzero, -q0; transforms stay relative to the start form.
[[nodiscard]] inline Orbit orbit(Int a, const StartTriple& start)
{
    auto ns = detail::normalize_start(a, start);
    Orbit o;
    o.a = a;
    o.start = start.form();
    o.runs.push_back(detail::run_cycle(a, o.start, ns.lead, ns.q, ns.trail, ns.t0));
    if (ns.q != 0) {
        auto t = compose(ns.t0, UnimodularTransform::flip_second());
        o.runs.push_back(detail::run_cycle(a, o.start, ns.lead, checked_neg(ns.q), ns.trail, t));
    }
    return o;
}

/// Distinct reduced forms met by the run, sorted, each with a witnessing transform.
[[nodiscard]] inline std::vector<RecordedForm> reduced_members(const Cycle& c)
{
    std::map<QuadraticForm, UnimodularTransform> uniq;
    for (const auto& rec : c.reduced_forms) uniq.try_emplace(rec.form, rec.transform);
    std::vector<RecordedForm> out;
    for (const auto& [f, t] : uniq) out.push_back({f, t});
    return out;
}

[[nodiscard]] inline std::vector<RecordedForm> reduced_members(const Orbit& o)
{
    std::map<QuadraticForm, UnimodularTransform> uniq;
    for (const auto& run : o.runs)
        for (const auto& rec : run.reduced_forms) uniq.try_emplace(rec.form, rec.transform);
    std::vector<RecordedForm> out;
    for (const auto& [f, t] : uniq) out.push_back({f, t});
    return out;
}

/// Start triple for an indefinite form with even middle coefficient and
/// outer coefficients of opposite signs.
[[nodiscard]] inline StartTriple start_triple(const QuadraticForm& f)
{
    if (f.m % 2 != 0) throw std::invalid_argument("form middle coefficient must be even");
    return {f.l, f.m / 2, checked_neg(f.n)};
}

/// A transform T with apply_transform(f, T) == g, or nullopt when g is not in
/// the cycle of f. Both forms must have invariant -4a.
[[nodiscard]] inline std::optional<UnimodularTransform> equivalent_indefinite(Int a, const QuadraticForm& f,
                                                                             const QuadraticForm& g)
{
    detail::check_cycle_parameter(a);
    Int K = checked_mul(-4, a);
    if (lagrange_k(f) != K || lagrange_k(g) != K)
        throw std::invalid_argument("equivalent_indefinite: both forms must have K = -4a");

    Reduction rf = reduce(f);
    Reduction rg = reduce(g);
    UnimodularTransform back = rg.transform.inverse();
    auto finish = [&](const UnimodularTransform& middle) {
        UnimodularTransform t = compose(compose(rf.transform, middle), back);
        if (apply_transform(f, t) != g) throw std::logic_error("equivalent_indefinite: witness check failed");
        return t;
    };
    if (rf.form == rg.form) return finish(UnimodularTransform::identity());

    Orbit o = orbit(a, start_triple(rf.form));
    for (const auto& rec : reduced_members(o))
        for (const auto& sym : key_symmetries())
            if (apply_transform(rec.form, sym) == rg.form) return finish(compose(rec.transform, sym));
    return std::nullopt;
}

/// A set of divisor-form candidates connected by unimodular transforms.
struct DivisorClass {
    DivisorTableEntry representative;
    std::vector<DivisorTableEntry> members;  // enumeration order

    /// True when the class also holds the negation of its representative.
    [[nodiscard]] bool contains_negation() const
    {
        return std::find(members.begin(), members.end(), representative.negation()) != members.end();
    }
};

/// Start triple of a Minus-table entry.
[[nodiscard]] inline StartTriple start_triple(const DivisorTableEntry& e)
{
    if (e.sign != Sign::Minus) throw std::invalid_argument("start_triple: entry must be of the Minus family");
    return e.negated ? StartTriple{checked_neg(e.p), e.q, checked_neg(e.r)} : StartTriple{e.p, e.q, e.r};
}

/// Groups the odd divisor-form candidates of t^2 - a u^2 into classes: the
/// cycle of the first remaining candidate (initially y^2 - a z^2) absorbs
/// every candidate it meets. The representative is the class's first member
/// in enumeration order (q, then p, then the negation), which is also the
/// order of the classes.
[[nodiscard]] inline std::vector<DivisorClass> divisor_classes(Int a)
{
    detail::check_cycle_parameter(a);
    std::vector<DivisorTableEntry> remaining = enumerate_divisor_forms(a, Sign::Minus, true);
    std::vector<DivisorClass> classes;
    while (!remaining.empty()) {
        const DivisorTableEntry seed = remaining.front();
        std::set<QuadraticForm> keys;
        for (const auto& rec : reduced_members(orbit(a, start_triple(seed)))) keys.insert(improper_key(rec.form));
        keys.insert(improper_key(seed.form()));

        DivisorClass cls;
        std::vector<DivisorTableEntry> rest;
        for (const auto& e : remaining) {
            if (keys.count(improper_key(e.form())))
                cls.members.push_back(e);
            else
                rest.push_back(e);
        }
        remaining = std::move(rest);
        cls.representative = cls.members.front();
        classes.push_back(std::move(cls));
    }
    return classes;
}

}  // namespace formes
