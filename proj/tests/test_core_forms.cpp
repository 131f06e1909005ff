#include <gtest/gtest.h>

#include <sstream>

#include "formes/core_forms.hpp"
#include "support.hpp"

using namespace formes;
using Kind = FormClassification::Kind;

TEST(Evaluate, Examples)
{
    EXPECT_EQ(evaluate({2, 2, 3}, 1, 1), 7);
    EXPECT_EQ(evaluate({1, 0, 5}, 1, 0), 1);
    EXPECT_EQ(evaluate({1, 0, -79}, 9, 1), 2);
    EXPECT_THROW((void)evaluate({Int{1} << 40, 0, 0}, Int{1} << 12, 0), std::overflow_error);
}

TEST(InvariantK, Examples)
{
    EXPECT_EQ(lagrange_k({1, 0, 1}), 4);
    EXPECT_EQ(lagrange_k({2, 2, 3}), 20);
    EXPECT_EQ(lagrange_k({1, 2, 1}), 0);
    EXPECT_THROW((void)lagrange_k({Int{1} << 31, 0, Int{1} << 31}), std::overflow_error);
}

TEST(Classify, Examples)
{
    auto c = classify({1, 0, 1});
    EXPECT_EQ(c.kind, Kind::PositiveDefinite);
    EXPECT_EQ(c.k, 4);

    c = classify({1, 0, -1});
    EXPECT_EQ(c.kind, Kind::Split);
    EXPECT_EQ(c.h, 2);
    EXPECT_EQ(c.k, -4);

    c = classify({1, 0, -7});
    EXPECT_EQ(c.kind, Kind::Indefinite);
    EXPECT_EQ(c.k, -28);

    EXPECT_EQ(classify({-2, 1, -3}).kind, Kind::NegativeDefinite);
    EXPECT_EQ(classify({1, 2, 1}).kind, Kind::Degenerate);
    EXPECT_EQ(classify({0, 3, 0}).kind, Kind::Split);
}

TEST(Classify, MatchesDefinitionOnGrid)
{
    for (Int l = -6; l <= 6; ++l)
        for (Int m = -6; m <= 6; ++m)
            for (Int n = -6; n <= 6; ++n) {
                QuadraticForm f{l, m, n};
                Int k = 4 * l * n - m * m;
                auto c = classify(f);
                ASSERT_EQ(c.k, k);
                if (k == 0)
                    ASSERT_EQ(c.kind, Kind::Degenerate);
                else if (k > 0)
                    ASSERT_EQ(c.kind, l > 0 ? Kind::PositiveDefinite : Kind::NegativeDefinite);
                else if (support::slow_square(-k)) {
                    ASSERT_EQ(c.kind, Kind::Split);
                    ASSERT_EQ(c.h * c.h, -k);
                    ASSERT_GT(c.h, 0);
                } else
                    ASSERT_EQ(c.kind, Kind::Indefinite);
            }
}

TEST(Transform, RejectsNonUnimodular)
{
    EXPECT_THROW(UnimodularTransform(2, 0, 0, 1), std::invalid_argument);
    EXPECT_THROW(UnimodularTransform(1, 1, 1, 1), std::invalid_argument);
    EXPECT_NO_THROW(UnimodularTransform(0, 1, 1, 0));
    EXPECT_EQ(UnimodularTransform(1, 2, 1, 1).det(), -1);
}

TEST(Transform, ApplyExamples)
{
    EXPECT_EQ(apply_transform({1, 0, -2}, UnimodularTransform{1, 2, 1, 1}), (QuadraticForm{-1, 0, 2}));
    QuadraticForm f{7, -3, 11};
    EXPECT_EQ(apply_transform(f, UnimodularTransform::identity()), f);

    // the a = 79 steps from 3y^2 + 2yz - 26z^2: m = 2 upward, then m = 1 downward
    QuadraticForm g{3, 2, -26};
    auto t = compose(UnimodularTransform::upper_shear(2), UnimodularTransform::lower_shear(1));
    auto h = apply_transform(g, t);
    EXPECT_EQ(lagrange_k(h), -316);
    EXPECT_EQ(h, support::substitute(g, t));
    EXPECT_EQ(h, (QuadraticForm{7, -6, -10}));
}

TEST(Transform, ComposeExamples)
{
    UnimodularTransform t{1, 2, 1, 1};
    EXPECT_EQ(compose(UnimodularTransform::identity(), t), t);
    auto p = compose(t, UnimodularTransform{-1, 2, 1, -1});
    EXPECT_EQ(p, UnimodularTransform::identity());
    EXPECT_EQ(compose(t, t.inverse()), UnimodularTransform::identity());
    EXPECT_EQ(compose(t.inverse(), t), UnimodularTransform::identity());
}

TEST(Transform, Printing)
{
    std::ostringstream os;
    os << UnimodularTransform{1, -2, 0, 1} << ' ' << QuadraticForm{1, -2, 3};
    EXPECT_EQ(os.str(), "[[1,-2],[0,1]] (1,-2,3)");
}

TEST(Transform, RandomComposeAndDeterminant)
{
    support::Gen gen(11);
    for (int i = 0; i < 2000; ++i) {
        auto t1 = gen.unimodular(4, 5);
        auto t2 = gen.unimodular(4, 5);
        auto f = gen.form(20);
        auto c = compose(t1, t2);
        ASSERT_EQ(c.det(), t1.det() * t2.det());
        ASSERT_EQ(apply_transform(f, c), apply_transform(apply_transform(f, t1), t2));
    }
}

// K is unchanged by every unimodular substitution.
TEST(Properties, KInvariance)
{
    support::Gen gen(20240611);
    for (int i = 0; i < 10000; ++i) {
        auto f = gen.form(1000);
        auto t = gen.unimodular(6, 4);
        auto g = apply_transform(f, t);
        ASSERT_EQ(lagrange_k(g), lagrange_k(f)) << f << ' ' << t;
        ASSERT_EQ(g, support::substitute(f, t));
    }
}

TEST(Properties, EvaluateCoherence)
{
    support::Gen gen(5);
    for (int i = 0; i < 5000; ++i) {
        auto f = gen.form(50);
        auto t = gen.unimodular(5, 3);
        Int s = gen.range(-20, 20), x = gen.range(-20, 20);
        ASSERT_EQ(evaluate(apply_transform(f, t), s, x),
                  evaluate(f, t.e11() * s + t.e12() * x, t.e21() * s + t.e22() * x));
    }
}

TEST(Properties, CoprimalityPreserved)
{
    support::Gen gen(6);
    for (int i = 0; i < 5000; ++i) {
        auto t = gen.unimodular(5, 4);
        Int s = gen.range(-50, 50), x = gen.range(-50, 50);
        if (support::slow_gcd(s, x) != 1) continue;
        ASSERT_EQ(support::slow_gcd(t.e11() * s + t.e12() * x, t.e21() * s + t.e22() * x), 1);
    }
}

TEST(Reduce, Examples)
{
    auto r = reduce({1, 0, 5});
    EXPECT_EQ(r.form, (QuadraticForm{1, 0, 5}));
    EXPECT_EQ(r.transform, UnimodularTransform::identity());

    r = reduce({1, 3, 1});
    EXPECT_EQ(r.form.l, 1);
    EXPECT_EQ(std::abs(r.form.m), 1);
    EXPECT_EQ(r.form.n, -1);
    EXPECT_EQ(apply_transform({1, 3, 1}, r.transform), r.form);
    // an exhaustive search with entries <= 3 also connects the two
    bool found = false;
    for (Int a = -3; a <= 3 && !found; ++a)
        for (Int b = -3; b <= 3 && !found; ++b)
            for (Int c = -3; c <= 3 && !found; ++c)
                for (Int d = -3; d <= 3 && !found; ++d)
                    if ((a * d - b * c == 1 || a * d - b * c == -1) &&
                        support::substitute({1, 3, 1}, a, b, c, d) == r.form)
                        found = true;
    EXPECT_TRUE(found);

    r = reduce({1, 4, 2});
    EXPECT_EQ(r.form, (QuadraticForm{1, 0, -2}));
    EXPECT_EQ(support::substitute({1, 4, 2}, r.transform), r.form);
}

TEST(Reduce, BoundaryPrefersNonnegativeMiddle)
{
    // m = 3 against l = 3 is already reduced; m = 9 against l = 3 lands on the boundary
    auto r = reduce({3, 9, 10});
    EXPECT_EQ(r.form.m, 3);
    r = reduce({3, -9, 10});
    EXPECT_EQ(r.form.m, 3);
}

TEST(Reduce, RejectsZeroAndStuckForms)
{
    EXPECT_THROW((void)reduce({0, 0, 0}), std::invalid_argument);
    EXPECT_THROW((void)reduce({0, 1, 0}), std::domain_error);
    EXPECT_THROW((void)reduce({0, 1, 1}), std::domain_error);
    EXPECT_EQ(reduce({0, 2, 1}).form, (QuadraticForm{-1, 0, 1}));
}

// |m| <= min(|l|, |n|), equivalence, same K, and the size bounds for reduced forms.
TEST(Properties, ReducePostconditions)
{
    support::Gen gen(77);
    int done = 0;
    while (done < 10000) {
        auto f = gen.nonzero_form(5000);
        if (f.l == 0 || f.n == 0) continue;  // may be stuck, see RejectsZeroAndStuckForms
        auto r = reduce(f);
        auto g = r.form;
        Int am = std::abs(g.m);
        ASSERT_LE(am, std::abs(g.l)) << f;
        ASSERT_LE(am, std::abs(g.n)) << f;
        ASSERT_EQ(support::substitute(f, r.transform), g);
        Int k = lagrange_k(f);
        ASSERT_EQ(lagrange_k(g), k);
        if (k > 0) ASSERT_LE(am, support::slow_isqrt(k / 3));
        if (k < 0) ASSERT_LE(am, support::slow_isqrt(-k / 5));
        ++done;
    }
}

TEST(Reduce, SingleStepShrinksMiddle)
{
    support::Gen gen(8);
    for (int i = 0; i < 5000; ++i) {
        auto f = gen.form(300);
        if (f.l == 0 || std::abs(f.m) <= std::abs(f.l)) continue;
        Int k = formes::detail::centering_multiplier(f.m, f.l);
        auto g = apply_transform(f, UnimodularTransform::upper_shear(k));
        ASSERT_EQ(g.l, f.l);
        ASSERT_EQ(g.m, f.m + 2 * f.l * k);
        ASSERT_LT(std::abs(g.m), std::abs(f.m));
        ASSERT_LE(std::abs(g.m), std::abs(f.l));
        ASSERT_NE(g.m, -std::abs(f.l));
    }
}

TEST(Witness, Examples)
{
    auto w = theorem1_witness(1, 0, 1, 2, 1, 5);
    EXPECT_EQ(w.form(), (QuadraticForm{1, 0, 1}));
    EXPECT_EQ(w.s, 1);
    EXPECT_EQ(w.x, 2);

    w = theorem1_witness(1, 0, 2, 1, 1, 3);
    EXPECT_EQ(w.form(), (QuadraticForm{2, 0, 1}));
    EXPECT_EQ(w.s, 1);
    EXPECT_EQ(w.x, 1);
    EXPECT_EQ(lagrange_k(w.form()), 8);

    w = theorem1_witness(1, 0, 1, 1, 1, 2);
    EXPECT_EQ(w.form(), (QuadraticForm{1, 0, 1}));
    EXPECT_EQ(w.s, 1);
    EXPECT_EQ(w.x, 1);
}

TEST(Witness, Intermediates)
{
    // 4 + 5 = 9 for t^2 + 5u^2 at (2, 1), divisor 3: quotient 3, b = 1, c = 3, s = 1, theta = 2
    auto w = theorem1_witness(1, 0, 5, 2, 1, 3);
    EXPECT_EQ(w.quotient, 3);
    EXPECT_EQ(w.b, 1);
    EXPECT_EQ(w.c, 3);
    EXPECT_EQ(w.E, 1);
    EXPECT_EQ(w.theta, 2);
    EXPECT_EQ(w.x, 0);
    EXPECT_EQ(w.form(), (QuadraticForm{3, 4, 3}));
    EXPECT_EQ(evaluate(w.form(), w.s, w.x), 3);
}

TEST(Witness, ZeroSecondArgument)
{
    auto w = theorem1_witness(3, 1, 2, 1, 0, 3);
    EXPECT_EQ(w.s, 0);
    EXPECT_EQ(evaluate(w.form(), w.s, w.x), 3);
    auto v = theorem1_witness(3, 1, 2, -1, 0, 1);
    EXPECT_EQ(evaluate(v.form(), v.s, v.x), 1);
}

TEST(Witness, Rejections)
{
    EXPECT_THROW((void)theorem1_witness(1, 0, 1, 2, 2, 2), std::invalid_argument);
    EXPECT_THROW((void)theorem1_witness(1, 0, 1, 2, 1, 3), std::invalid_argument);
    EXPECT_THROW((void)theorem1_witness(1, 0, 1, 2, 1, 0), std::invalid_argument);
    EXPECT_THROW((void)theorem1_witness(1, 0, -1, 1, 1, 1), std::invalid_argument);
}

// Soundness over random forms, coprime arguments and every divisor of the value.
TEST(Properties, WitnessSoundness)
{
    support::Gen gen(4242);
    int checks = 0;
    while (checks < 1000) {
        Int B = gen.range(-12, 12), C = gen.range(-12, 12), D = gen.range(-12, 12);
        Int t = gen.range(-15, 15), u = gen.range(-15, 15);
        if (support::slow_gcd(t, u) != 1) continue;
        Int v = support::value({B, C, D}, t, u);
        if (v == 0) continue;
        for (Int A = -std::abs(v); A <= std::abs(v); ++A) {
            if (A == 0 || v % A != 0) continue;
            auto w = theorem1_witness(B, C, D, t, u, A);
            ASSERT_EQ(support::value(w.form(), w.s, w.x), A);
            ASSERT_EQ(4 * w.L * w.N - w.M * w.M, 4 * B * D - C * C);
            ASSERT_EQ(support::slow_gcd(w.s, w.x), 1);
            ASSERT_GE(w.theta, 0);
            ASSERT_LT(w.theta, std::max<Int>(std::abs(w.c), 1));
            ++checks;
        }
    }
}
