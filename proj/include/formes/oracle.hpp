#pragma once

// Brute-force ground truth: direct scans over bounded argument grids and
// bounded transform boxes. Nothing here calls reduce() or the cycle code.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "formes/arith.hpp"
#include "formes/core_forms.hpp"
#include "formes/enumeration.hpp"

namespace formes::oracle {

/// Worker count for oracle scans: FORMES_THREADS when set to a positive
/// integer, otherwise the hardware concurrency (at least 1).
[[nodiscard]] inline unsigned thread_count()
{
    if (const char* env = std::getenv("FORMES_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace detail {

// Calls fn(begin, end, worker) over a partition of [0, n).
template <typename Fn>
void parallel_chunks(Int n, unsigned workers, Fn fn)
{
    workers = static_cast<unsigned>(std::clamp<Int>(workers, 1, std::max<Int>(n, 1)));
    if (workers == 1) {
        fn(Int{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    Int chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        Int b = std::min<Int>(n, w * chunk);
        Int e = std::min<Int>(n, b + chunk);
        pool.emplace_back([=, &fn] { fn(b, e, w); });
    }
    for (auto& t : pool) t.join();
}

// 0, 1, -1, 2, -2, ...
inline bool small_first(Int x, Int y)
{
    Int ax = checked_abs(x), ay = checked_abs(y);
    if (ax != ay) return ax < ay;
    return x > y;
}

inline std::vector<Int> ordered_range(Int bound)
{
    std::vector<Int> v;
    v.push_back(0);
    for (Int i = 1; i <= bound; ++i) {
        v.push_back(i);
        v.push_back(-i);
    }
    return v;
}

}  // namespace detail

/// Grid points with max(|y|, |z|) <= bound, ring by ring outward; within a
/// ring y then z run 0, 1, -1, 2, -2, ...
[[nodiscard]] inline std::vector<std::pair<Int, Int>> spiral(Int bound)
{
    std::vector<std::pair<Int, Int>> pts;
    pts.emplace_back(0, 0);
    for (Int ring = 1; ring <= bound; ++ring) {
        for (Int y : detail::ordered_range(ring)) {
            if (checked_abs(y) == ring) {
                for (Int z : detail::ordered_range(ring)) pts.emplace_back(y, z);
            } else {
                pts.emplace_back(y, ring);
                pts.emplace_back(y, -ring);
            }
        }
    }
    return pts;
}

/// {f(y, z) : |y|, |z| <= bound, gcd(y, z) = 1}
[[nodiscard]] inline std::set<Int> coprime_values(const QuadraticForm& f, Int bound)
{
    if (bound < 1) throw std::invalid_argument("coprime_values: bound must be >= 1");
    std::set<Int> out;
    for (Int y = -bound; y <= bound; ++y)
        for (Int z = -bound; z <= bound; ++z)
            if (gcd(y, z) == 1) out.insert(evaluate(f, y, z));
    return out;
}

/// Odd d in [1, cap] dividing some nonzero t^2 +- a u^2 with coprime
/// |t|, |u| <= t_bound.
[[nodiscard]] inline std::set<Int> odd_divisors(Int a, Sign sign, Int t_bound, Int cap)
{
    if (a < 1 || t_bound < 1 || cap < 1) throw std::invalid_argument("odd_divisors: parameters must be positive");
    Int s = sign == Sign::Plus ? a : checked_neg(a);
    // the value depends on t^2 and u^2 only, so t, u >= 0 suffice
    std::vector<std::vector<char>> hits(thread_count(), std::vector<char>(static_cast<std::size_t>(cap) + 1, 0));
    detail::parallel_chunks(t_bound + 1, thread_count(), [&](Int b, Int e, unsigned w) {
        auto& mark = hits[w];
        for (Int t = b; t < e; ++t)
            for (Int u = 0; u <= t_bound; ++u) {
                if (gcd(t, u) != 1) continue;
                Int v = checked_abs(checked_add(checked_square(t), checked_mul(s, checked_square(u))));
                if (v == 0) continue;
                Int top = std::min(v, cap);
                for (Int d = 1; d <= top; d += 2)
                    if (v % d == 0) mark[static_cast<std::size_t>(d)] = 1;
            }
    });
    std::set<Int> out;
    for (Int d = 1; d <= cap; d += 2)
        for (const auto& mark : hits)
            if (mark[static_cast<std::size_t>(d)]) {
                out.insert(d);
                break;
            }
    return out;
}

/// First coprime (y, z) in spiral order with f(y, z) = A.
[[nodiscard]] inline std::optional<std::pair<Int, Int>> represents(const QuadraticForm& f, Int A, Int bound)
{
    if (bound < 1) throw std::invalid_argument("represents: bound must be >= 1");
    for (auto [y, z] : spiral(bound))
        if (gcd(y, z) == 1 && evaluate(f, y, z) == A) return std::make_pair(y, z);
    return std::nullopt;
}

struct CoverageRow {
    Int divisor = 0;
    std::optional<DivisorTableEntry> witness_form;
    std::optional<std::pair<Int, Int>> witness_args;
};

struct CoverageReport {
    Int a = 0;
    Sign sign = Sign::Plus;
    Int t_bound = 0;
    Int divisor_cap = 0;
    Int rep_bound = 0;
    std::vector<CoverageRow> rows;
    Int failures = 0;
};

/// For every odd divisor found by the scan, the first odd divisor form
/// (enumeration order; negations included for Minus) that represents it
/// within rep_bound.
[[nodiscard]] inline CoverageReport coverage_report(Int a, Sign sign, Int t_bound, Int cap, Int rep_bound)
{
    if (rep_bound < 1) throw std::invalid_argument("coverage_report: rep_bound must be >= 1");
    const auto forms = enumerate_divisor_forms(a, sign, true);

    // first spiral hit of each value in [1, cap], per form; same witnesses as represents()
    const auto pts = spiral(rep_bound);
    std::vector<std::map<Int, std::pair<Int, Int>>> first(forms.size());
    detail::parallel_chunks(static_cast<Int>(forms.size()), thread_count(), [&](Int b, Int e, unsigned) {
        for (Int i = b; i < e; ++i) {
            auto f = forms[static_cast<std::size_t>(i)].form();
            for (auto [y, z] : pts) {
                if (gcd(y, z) != 1) continue;
                Int v = evaluate(f, y, z);
                if (v >= 1 && v <= cap) first[static_cast<std::size_t>(i)].try_emplace(v, y, z);
            }
        }
    });

    CoverageReport rep{a, sign, t_bound, cap, rep_bound, {}, 0};
    for (Int d : odd_divisors(a, sign, t_bound, cap)) {
        CoverageRow row{d, std::nullopt, std::nullopt};
        for (std::size_t i = 0; i < forms.size(); ++i) {
            auto it = first[i].find(d);
            if (it == first[i].end()) continue;
            row.witness_form = forms[i];
            row.witness_args = it->second;
            break;
        }
        if (!row.witness_form) ++rep.failures;
        rep.rows.push_back(row);
    }
    return rep;
}

/// First T (entries in [-bound, bound], determinant +-1) with
/// apply_transform(f, T) == g. Entries are ordered 0, 1, -1, 2, -2, ...
/// and T is minimal lexicographically in (e11, e12, e21, e22) under that order.
[[nodiscard]] inline std::optional<UnimodularTransform> bruteforce_equivalence(const QuadraticForm& f,
                                                                              const QuadraticForm& g, Int bound)
{
    if (bound < 1) throw std::invalid_argument("bruteforce_equivalence: bound must be >= 1");
    if (lagrange_k(f) != lagrange_k(g)) throw std::invalid_argument("bruteforce_equivalence: invariants differ");

    // g.l = f(e11, e21) and g.n = f(e12, e22) pin the columns
    std::vector<std::pair<Int, Int>> first_cols, second_cols;
    for (Int x = -bound; x <= bound; ++x)
        for (Int y = -bound; y <= bound; ++y) {
            Int v = evaluate(f, x, y);
            if (v == g.l) first_cols.emplace_back(x, y);
            if (v == g.n) second_cols.emplace_back(x, y);
        }

    auto before = [](const std::array<Int, 4>& x, const std::array<Int, 4>& y) {
        for (int i = 0; i < 4; ++i) {
            if (x[i] == y[i]) continue;
            return detail::small_first(x[i], y[i]);
        }
        return false;
    };

    std::optional<std::array<Int, 4>> best;
    for (auto [e11, e21] : first_cols)
        for (auto [e12, e22] : second_cols) {
            Int d = e11 * e22 - e12 * e21;
            if (d != 1 && d != -1) continue;
            UnimodularTransform t{e11, e12, e21, e22};
            if (apply_transform(f, t) != g) continue;
            std::array<Int, 4> cand{e11, e12, e21, e22};
            if (!best || before(cand, *best)) best = cand;
        }
    if (!best) return std::nullopt;
    return UnimodularTransform{(*best)[0], (*best)[1], (*best)[2], (*best)[3]};
}

}  // namespace formes::oracle
