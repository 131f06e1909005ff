#pragma once

// Command-line front end. run() takes argv and the two streams so tests can
// drive it in-process; tools/formes.cpp is a thin main().

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "formes/formes.hpp"

namespace formes::cli {

enum Exit : int { ok = 0, domain = 1, verification = 2 };

namespace detail {

// "1,-2,3" -> {1, -2, 3}
inline std::vector<Int> parse_ints(const std::string& text, char sep, const std::string& what)
{
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep)) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": '" + tok + "' is not an integer");
        }
        if (used != tok.size()) throw std::invalid_argument(what + ": '" + tok + "' is not an integer");
        out.push_back(v);
    }
    if (!text.empty() && text.back() == sep) throw std::invalid_argument(what + ": trailing separator");
    return out;
}

inline QuadraticForm parse_form(const std::string& text)
{
    auto v = parse_ints(text, ',', "form");
    if (v.size() != 3) throw std::invalid_argument("form literal must be l,m,n");
    return {v[0], v[1], v[2]};
}

// p:q:r[:neg], a Minus-table entry of t^2 - a u^2
inline DivisorTableEntry parse_divisor(const std::string& text, Int a)
{
    std::string body = text;
    bool neg = false;
    if (body.size() > 4 && body.compare(body.size() - 4, 4, ":neg") == 0) {
        neg = true;
        body.resize(body.size() - 4);
    }
    auto v = parse_ints(body, ':', "divisor form");
    if (v.size() != 3) throw std::invalid_argument("divisor-form literal must be p:q:r[:neg]");
    return {a, Sign::Minus, v[0], v[1], v[2], neg};
}

// either literal syntax
inline QuadraticForm parse_any_form(const std::string& text, Int a)
{
    if (text.find(':') != std::string::npos) return parse_divisor(text, a).form();
    return parse_form(text);
}

inline Sign parse_sign(const std::string& s) { return s == "plus" ? Sign::Plus : Sign::Minus; }

inline std::string fmt_pair(std::pair<Int, Int> p)
{
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

inline void print_entry(std::ostream& out, const DivisorTableEntry& e)
{
    out << "p=" << e.p << " q=" << e.q << " r=" << e.r << " negated=" << (e.negated ? "true" : "false")
        << " form=" << e.form() << '\n';
}

inline int do_reduce(std::ostream& out, const std::string& form)
{
    QuadraticForm f = parse_form(form);
    Reduction r = reduce(f);
    out << "form " << f << '\n'
        << "K " << lagrange_k(f) << '\n'
        << "reduced " << r.form << '\n'
        << "transform " << r.transform << '\n';
    return ok;
}

inline int do_classify(std::ostream& out, const std::string& form)
{
    QuadraticForm f = parse_form(form);
    FormClassification c = classify(f);
    out << "form " << f << '\n' << "K " << c.k << '\n' << "kind " << to_string(c.kind) << '\n';
    if (c.kind == FormClassification::Kind::Split) out << "h " << c.h << '\n';
    return ok;
}

inline int do_witness(std::ostream& out, const std::string& bcd, const std::string& tu, Int A)
{
    auto c = parse_ints(bcd, ',', "bcd");
    auto p = parse_ints(tu, ',', "tu");
    if (c.size() != 3) throw std::invalid_argument("--bcd must be B,C,D");
    if (p.size() != 2) throw std::invalid_argument("--tu must be t,u");
    WitnessDecomposition w = theorem1_witness(c[0], c[1], c[2], p[0], p[1], A);
    out << "value " << evaluate({c[0], c[1], c[2]}, p[0], p[1]) << '\n'
        << "quotient " << w.quotient << '\n'
        << "b " << w.b << '\n'
        << "c " << w.c << '\n'
        << "E " << w.E << '\n'
        << "theta " << w.theta << '\n'
        << "form " << w.form() << '\n'
        << "args " << fmt_pair({w.s, w.x}) << '\n';
    return ok;
}

inline int do_enumerate(std::ostream& out, Int a, Sign sign, bool all_divisors)
{
    auto entries = enumerate_divisor_forms(a, sign, !all_divisors);
    out << "a " << a << " sign " << to_string(sign) << " entries " << entries.size() << '\n';
    for (const auto& e : entries) print_entry(out, e);
    return ok;
}

inline int do_classes(std::ostream& out, Int a)
{
    auto classes = divisor_classes(a);
    out << "a " << a << " classes " << classes.size() << '\n';
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& c = classes[i];
        out << "class " << i + 1 << " representative " << c.representative
            << (c.contains_negation() ? " (with negation)" : "") << '\n';
        for (const auto& m : c.members) out << "  " << m << ' ' << m.form() << '\n';
    }
    return ok;
}

inline int do_equivalent(std::ostream& out, Int a, const std::string& fs, const std::string& gs)
{
    QuadraticForm f = parse_any_form(fs, a);
    QuadraticForm g = parse_any_form(gs, a);
    auto t = equivalent_indefinite(a, f, g);
    out << "f " << f << '\n' << "g " << g << '\n';
    if (t)
        out << "equivalent transform " << *t << '\n';
    else
        out << "not equivalent\n";
    return ok;
}

inline int do_cycle(std::ostream& out, Int a, const std::string& start)
{
    auto v = parse_ints(start, ',', "start");
    if (v.size() != 3) throw std::invalid_argument("--start must be p,q,r");
    StartTriple st{v[0], v[1], v[2]};
    Cycle c = cycle(a, st);
    out << "a " << a << " start " << c.start << '\n';
    for (const auto& s : c.states)
        out << "k=" << s.k << " m=" << s.multiplier << " q=" << s.q << " r=" << s.r_next << '\n';
    out << "closure mu=" << c.mu << " nu=" << c.nu << '\n';
    for (const auto& rec : reduced_members(c)) out << "reduced " << rec.form << " transform " << rec.transform << '\n';
    return ok;
}

// Class partition against exhaustive transform search. A pair the partition
// joins but the search misses counts only if the cycle witness fails too;
// such pairs are listed as beyond-bound.
inline Int class_mismatches(std::ostream& out, Int a, Int bound)
{
    auto classes = divisor_classes(a);
    std::vector<std::pair<DivisorTableEntry, std::size_t>> all;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (const auto& m : classes[i].members) all.emplace_back(m, i);
    Int bad = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto& [x, cx] = all[i];
            const auto& [y, cy] = all[j];
            bool same = cx == cy;
            bool found = oracle::bruteforce_equivalence(x.form(), y.form(), bound).has_value();
            if (same == found) continue;
            if (same) {
                if (auto t = equivalent_indefinite(a, x.form(), y.form())) {
                    out << "beyond-bound " << x << ' ' << y << " transform " << *t << '\n';
                    continue;
                }
            }
            ++bad;
            out << "class-mismatch " << x << ' ' << y << " partition=" << (same ? "same" : "different")
                << " search=" << (found ? "found" : "absent") << '\n';
        }
    return bad;
}

inline int do_verify(std::ostream& out, Int a, Sign sign, Int t_bound, Int cap, Int rep_bound)
{
    auto rep = oracle::coverage_report(a, sign, t_bound, cap, rep_bound);
    out << "a " << a << " sign " << to_string(sign) << " t-bound " << t_bound << " cap " << cap << " rep-bound "
        << rep_bound << '\n';
    for (const auto& row : rep.rows) {
        out << "d=" << row.divisor;
        if (row.witness_form)
            out << " form=" << row.witness_form->form() << " at " << fmt_pair(*row.witness_args) << '\n';
        else
            out << " unrepresented\n";
    }
    out << "divisors " << rep.rows.size() << '\n' << "failures=" << rep.failures << '\n';
    Int bad = 0;
    if (sign == Sign::Minus && !is_square(a)) {
        bad = class_mismatches(out, a, 20);
        out << "class-mismatches=" << bad << '\n';
    }
    return rep.failures == 0 && bad == 0 ? ok : verification;
}

inline int do_table(std::ostream& out, Int max_a, Sign sign, const std::string& format, const std::string& path)
{
    auto rows = build_table(max_a, sign);
    std::ostringstream buf;
    if (format == "csv")
        write_csv(buf, rows);
    else
        write_markdown(buf, rows, sign);
    if (path.empty()) {
        out << buf.str();
    } else {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::invalid_argument("cannot open " + path + " for writing");
        file << buf.str();
        if (!file) throw std::invalid_argument("write to " + path + " failed");
    }
    return ok;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reduction, divisor forms and equivalence of binary quadratic forms", "formes"};
    app.require_subcommand(1);

    std::string form, bcd, tu, sign_text = "plus", fs, gs, start, format = "csv", path;
    Int A = 0, a = 0, max_a = 0, t_bound = 50, cap = 500, rep_bound = 60;
    bool all_divisors = false;
    const auto signs = CLI::IsMember({"plus", "minus"});

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a form and print the transform");
    reduce_cmd->add_option("--form", form, "l,m,n")->required();

    auto* classify_cmd = app.add_subcommand("classify", "definite, indefinite, split or degenerate");
    classify_cmd->add_option("--form", form, "l,m,n")->required();

    auto* witness_cmd = app.add_subcommand("witness", "form representing a divisor A of B t^2 + C t u + D u^2");
    witness_cmd->add_option("--bcd", bcd, "B,C,D")->required();
    witness_cmd->add_option("--tu", tu, "t,u (coprime)")->required();
    witness_cmd->add_option("--A", A, "divisor")->required();

    auto* enumerate_cmd = app.add_subcommand("enumerate", "reduced divisor forms of t^2 +- a u^2");
    enumerate_cmd->add_option("--a", a)->required();
    enumerate_cmd->add_option("--sign", sign_text)->required()->check(signs);
    enumerate_cmd->add_flag("--all-divisors", all_divisors, "keep forms with both outer coefficients even");

    auto* classes_cmd = app.add_subcommand("classes", "equivalence classes of the divisor forms of t^2 - a u^2");
    classes_cmd->add_option("--a", a)->required();

    auto* equivalent_cmd = app.add_subcommand("equivalent", "transform between two forms with K = -4a");
    equivalent_cmd->add_option("--a", a)->required();
    equivalent_cmd->add_option("--f", fs, "l,m,n or p:q:r[:neg]")->required();
    equivalent_cmd->add_option("--g", gs, "l,m,n or p:q:r[:neg]")->required();

    auto* cycle_cmd = app.add_subcommand("cycle", "trace the alternating method");
    cycle_cmd->add_option("--a", a)->required();
    cycle_cmd->add_option("--start", start, "p,q,r for p y^2 + 2q yz - r z^2")->required();

    auto* verify_cmd = app.add_subcommand("verify", "brute-force coverage of odd divisors");
    verify_cmd->add_option("--a", a)->required();
    verify_cmd->add_option("--sign", sign_text)->required()->check(signs);
    verify_cmd->add_option("--t-bound", t_bound)->capture_default_str();
    verify_cmd->add_option("--cap", cap)->capture_default_str();
    verify_cmd->add_option("--rep-bound", rep_bound)->capture_default_str();

    auto* table_cmd = app.add_subcommand("table", "regenerate a divisor-form table with historical flags");
    table_cmd->add_option("--max-a", max_a)->required();
    table_cmd->add_option("--sign", sign_text)->required()->check(signs);
    table_cmd->add_option("--format", format)->required()->check(CLI::IsMember({"csv", "md"}));
    table_cmd->add_option("--out", path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ok : domain;
    }

    Sign sign = detail::parse_sign(sign_text);
    try {
        if (*reduce_cmd) return detail::do_reduce(out, form);
        if (*classify_cmd) return detail::do_classify(out, form);
        if (*witness_cmd) return detail::do_witness(out, bcd, tu, A);
        if (*enumerate_cmd) return detail::do_enumerate(out, a, sign, all_divisors);
        if (*classes_cmd) return detail::do_classes(out, a);
        if (*equivalent_cmd) return detail::do_equivalent(out, a, fs, gs);
        if (*cycle_cmd) return detail::do_cycle(out, a, start);
        if (*verify_cmd) return detail::do_verify(out, a, sign, t_bound, cap, rep_bound);
        if (*table_cmd) return detail::do_table(out, max_a, sign, format, path);
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return domain;
    } catch (const std::logic_error& e) {
        // invalid_argument, domain_error and the special-form errors
        err << "error: " << e.what() << '\n';
        return domain;
    }
    return domain;
}

}  // namespace formes::cli
