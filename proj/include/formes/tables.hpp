#pragma once

// Divisor-form tables for squarefree a, compared row by row with an exact
// transcription of the printed historical tables (defects included).

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "formes/arith.hpp"
#include "formes/enumeration.hpp"
#include "formes/indefinite.hpp"

namespace formes {

/// Sign placement of a table entry. Both: the entry's form and its negation
/// are equivalent (printed with a +- prefix).
enum class SignMode { Positive, Negative, Both };

struct TableEntry {
    Int p = 0;
    Int q = 0;
    Int r = 0;
    SignMode mode = SignMode::Positive;

    friend bool operator==(const TableEntry&, const TableEntry&) = default;
    friend auto operator<=>(const TableEntry&, const TableEntry&) = default;
};

struct TableRow {
    Int a = 0;
    Sign sign = Sign::Plus;
    std::vector<TableEntry> entries;
    std::vector<std::string> flags;
};

namespace flag {
inline constexpr std::string_view inconsistent = "historical-row-inconsistent";
inline constexpr std::string_view extra = "extra-vs-historical";
inline constexpr std::string_view missing = "missing-vs-historical";
inline constexpr std::string_view order = "order-vs-historical";
}  // namespace flag

/// One printed row: the three comma-separated columns as typeset.
struct HistoricalRow {
    Int a;
    std::string_view p;
    std::string_view q;
    std::string_view r;
};

// t^2 + a u^2, odd divisors p y^2 +- 2q yz + r z^2, pr - q^2 = a.
inline constexpr HistoricalRow historical_table_plus[] = {
    {1, "1", "0", "1"},
    {2, "1", "0", "2"},
    {3, "1", "0", "3"},
    {5, "1, 2", "0, 1", "5, 3"},
    {6, "1, 2", "0, 0", "6, 3"},
    {7, "1", "0", "7"},
    {10, "1, 2", "0, 0", "10, 5"},
    {11, "1, 3", "0, 1", "11, 4"},
    {13, "1, 2", "0, 1", "13, 7"},
    {14, "1, 2, 3", "0, 0, 1", "14, 7, 5"},
    {15, "1, 3", "0, 0", "15, 5"},
    {17, "1, 2, 3", "0, 1", "17, 9, 6"},
    {19, "1, 4", "0, 1", "19, 5"},
    {21, "1, 3, 2, 5", "0, 0, 1, 2", "21, 7, 11, 5"},
    {22, "1, 2", "0, 0", "22, 11"},
    {23, "1, 3", "0, 1", "23, 8"},
    {26, "1, 2, 3, 5", "0, 0, 1, 2", "26, 13, 9, 6"},
    {29, "1, 3, 5", "0, 1, 1", "29, 10, 6"},
    {30, "1, 3, 5, 2", "0, 0, 0, 1", "30, 10, 6, 17"},
    {31, "1, 5", "0, 2", "31, 7"},
};

// t^2 - a u^2, odd divisors p y^2 +- 2q yz - r z^2, pr + q^2 = a.
inline constexpr HistoricalRow historical_table_minus[] = {
    {1, "1", "0", "1"},
    {2, "±1", "0", "±2"},
    {3, "1, -1", "0", "3, -3"},
    {5, "±1", "0", "±5"},
    {6, "1, -1", "0", "6, -6"},
    {7, "1, -1", "0", "7, -7"},
    {10, "±1, ±2", "0", "±10, ±5"},
    {11, "1, -1", "0", "11, -11"},
    {13, "±1", "0", "±13"},
    {14, "1, -1", "0", "14, -14"},
    {15, "1, -1, 3, -3", "0", "15, -15, 5, -5"},
    {17, "±1", "0", "±17"},
    {19, "1, -1", "0", "19, -19"},
    {21, "1, -1", "0", "21, -21"},
    {22, "1, -1", "0", "22, -22"},
    {23, "1, -1", "0", "23, -23"},
    {26, "±1, ±2", "0", "±26, ±13"},
    {29, "±1", "0", "±29"},
    {30, "1, -1, 2, -2", "0", "30, -30, 15, -15"},
    {31, "1, -1", "0", "31, -31"},
};

[[nodiscard]] inline std::optional<HistoricalRow> historical_row(Int a, Sign sign)
{
    auto find = [a](const auto& table) -> std::optional<HistoricalRow> {
        for (const auto& row : table)
            if (row.a == a) return row;
        return std::nullopt;
    };
    return sign == Sign::Plus ? find(historical_table_plus) : find(historical_table_minus);
}

namespace detail {

struct SignedToken {
    Int value;
    SignMode mode;
};

inline std::vector<SignedToken> parse_column(std::string_view col)
{
    static constexpr std::string_view plus_minus = "±";
    std::vector<SignedToken> out;
    std::size_t pos = 0;
    while (pos <= col.size()) {
        std::size_t comma = col.find(',', pos);
        std::string_view tok = col.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        SignMode mode = SignMode::Positive;
        if (tok.substr(0, plus_minus.size()) == plus_minus) {
            mode = SignMode::Both;
            tok.remove_prefix(plus_minus.size());
        } else if (!tok.empty() && tok.front() == '-') {
            mode = SignMode::Negative;
            tok.remove_prefix(1);
        }
        if (tok.empty()) throw std::logic_error("malformed historical table cell");
        out.push_back({std::stoll(std::string(tok)), mode});
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace detail

/// Entries of a printed row. A column shorter than the p column repeats its
/// last value (the printed tables write a single q for a run of equal values).
[[nodiscard]] inline std::vector<TableEntry> parse_historical(const HistoricalRow& row)
{
    auto ps = detail::parse_column(row.p);
    auto qs = detail::parse_column(row.q);
    auto rs = detail::parse_column(row.r);
    if (qs.size() > ps.size() || rs.size() > ps.size()) throw std::logic_error("historical row has surplus cells");
    std::vector<TableEntry> out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto& q = qs[std::min(i, qs.size() - 1)];
        const auto& r = rs[std::min(i, rs.size() - 1)];
        SignMode mode = ps[i].mode;
        if (r.mode != mode) throw std::logic_error("historical row mixes signs of p and r");
        out.push_back({ps[i].value, q.value, r.value, mode});
    }
    return out;
}

/// The header invariant (pr -+ q^2 = a) and the 2q bounds.
[[nodiscard]] inline bool entry_consistent(Int a, Sign sign, const TableEntry& e)
{
    Int pr = checked_mul(e.p, e.r);
    Int lhs = sign == Sign::Plus ? pr - e.q * e.q : pr + e.q * e.q;
    return lhs == a && e.p >= 2 * e.q && e.r >= 2 * e.q && e.p > 0 && e.r > 0 && e.q >= 0;
}

/// Computed entries for one squarefree a. Plus: the odd reduced forms.
/// Minus: one entry per divisor class (its representative); for a = 1 the
/// forms are split and candidates are merged by argument swap only.
[[nodiscard]] inline std::vector<TableEntry> computed_entries(Int a, Sign sign)
{
    std::vector<TableEntry> out;
    if (sign == Sign::Plus) {
        for (const auto& e : enumerate_divisor_forms(a, Sign::Plus, true)) out.push_back({e.p, e.q, e.r});
        return out;
    }
    if (is_square(a)) {
        std::set<QuadraticForm> seen;
        for (const auto& e : enumerate_divisor_forms(a, Sign::Minus, true))
            if (seen.insert(improper_key(e.form())).second)
                out.push_back({e.p, e.q, e.r, e.negated ? SignMode::Negative : SignMode::Positive});
        return out;
    }
    for (const auto& cls : divisor_classes(a)) {
        const auto& rep = cls.representative;
        SignMode mode = cls.contains_negation() ? SignMode::Both
                        : rep.negated           ? SignMode::Negative
                                                : SignMode::Positive;
        out.push_back({rep.p, rep.q, rep.r, mode});
    }
    return out;
}

/// Flags for a computed row against the printed one.
[[nodiscard]] inline std::vector<std::string> historical_flags(Int a, Sign sign, const std::vector<TableEntry>& computed,
                                                               const std::vector<TableEntry>& printed)
{
    std::vector<std::string> flags;
    bool consistent = std::all_of(printed.begin(), printed.end(),
                                  [&](const TableEntry& e) { return entry_consistent(a, sign, e); });
    if (!consistent) flags.emplace_back(flag::inconsistent);

    std::set<TableEntry> got(computed.begin(), computed.end());
    std::set<TableEntry> want(printed.begin(), printed.end());
    bool extra = std::any_of(got.begin(), got.end(), [&](const TableEntry& e) { return !want.count(e); });
    bool missing = std::any_of(want.begin(), want.end(), [&](const TableEntry& e) { return !got.count(e); });
    if (extra) flags.emplace_back(flag::extra);
    if (missing) flags.emplace_back(flag::missing);
    if (!extra && !missing && computed != printed) flags.emplace_back(flag::order);
    return flags;
}

[[nodiscard]] inline TableRow table_row(Int a, Sign sign)
{
    TableRow row{a, sign, computed_entries(a, sign), {}};
    if (auto hist = historical_row(a, sign)) row.flags = historical_flags(a, sign, row.entries, parse_historical(*hist));
    return row;
}

/// Rows for every squarefree a in [1, max_a].
[[nodiscard]] inline std::vector<TableRow> build_table(Int max_a, Sign sign)
{
    if (max_a < 1) throw std::invalid_argument("table: max-a must be positive");
    std::vector<TableRow> rows;
    for (Int a = 1; a <= max_a; ++a)
        if (is_squarefree(a)) rows.push_back(table_row(a, sign));
    return rows;
}

[[nodiscard]] inline const char* negated_label(SignMode m)
{
    switch (m) {
    case SignMode::Positive: return "false";
    case SignMode::Negative: return "true";
    case SignMode::Both: return "both";
    }
    return "?";
}

[[nodiscard]] inline std::string join_flags(const std::vector<std::string>& flags)
{
    std::string s;
    for (const auto& f : flags) {
        if (!s.empty()) s += ';';
        s += f;
    }
    return s;
}

/// Header `a,sign,p,q,r,negated,flags`; one line per entry.
inline void write_csv(std::ostream& os, const std::vector<TableRow>& rows)
{
    os << "a,sign,p,q,r,negated,flags\n";
    for (const auto& row : rows) {
        std::string flags = join_flags(row.flags);
        for (const auto& e : row.entries)
            os << row.a << ',' << to_string(row.sign) << ',' << e.p << ',' << e.q << ',' << e.r << ','
               << negated_label(e.mode) << ',' << flags << '\n';
    }
}

namespace detail {

inline std::string signed_cell(Int v, SignMode m)
{
    switch (m) {
    case SignMode::Positive: return std::to_string(v);
    case SignMode::Negative: return "-" + std::to_string(v);
    case SignMode::Both: return "±" + std::to_string(v);
    }
    return {};
}

}  // namespace detail

inline void write_markdown(std::ostream& os, const std::vector<TableRow>& rows, Sign sign)
{
    if (sign == Sign::Plus) {
        os << "## Numbers t^2 + a u^2\n\n"
           << "Odd divisors: p y^2 ± 2q yz + r z^2, where pr - q^2 = a\n\n";
    } else {
        os << "## Numbers t^2 - a u^2\n\n"
           << "Odd divisors: p y^2 ± 2q yz - r z^2, where pr + q^2 = a\n\n";
    }
    os << "| a | p | q | r | flags |\n"
       << "|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        std::string p, q, r;
        for (const auto& e : row.entries) {
            if (!p.empty()) {
                p += ", ";
                q += ", ";
                r += ", ";
            }
            p += detail::signed_cell(e.p, e.mode);
            q += std::to_string(e.q);
            r += detail::signed_cell(e.r, e.mode);
        }
        os << "| " << row.a << " | " << p << " | " << q << " | " << r << " | " << join_flags(row.flags) << " |\n";
    }
}

}  // namespace formes
