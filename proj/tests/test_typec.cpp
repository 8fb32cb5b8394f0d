#include <gtest/gtest.h>

#include <random>

#include "invchev/typec.hpp"

using namespace invchev;

namespace {

// Standard inner product on eps-coordinates; the coroot pairing is 2(lam,alpha)/(alpha,alpha).
int inner(const Weight& a, const Weight& b) {
    int s = 0;
    for (int i = 1; i <= a.rank(); ++i) s += a.at(i) * b.at(i);
    return s;
}
int pairing_oracle(const Weight& lam, const Root& alpha, int n) {
    Weight a = alpha.weight(n);
    return 2 * inner(lam, a) / inner(a, a);
}

Weight random_weight(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-4, 4);
    Weight w(n);
    for (int i = 1; i <= n; ++i) w = w + d(rng) * eps(n, i);
    return w;
}

int inversion_count(const WeylElt& w) {
    const int n = w.rank();
    int c = 0;
    for (const auto& a : positive_roots(n))
        if (!w.act(a).is_positive()) ++c;
    return c;
}

}  // namespace

TEST(Pairing, FundamentalWeightDuality) {
    for (int n = 1; n <= 5; ++n)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                EXPECT_EQ(pair(fundamental_weight(n, i), simple_coroot(n, j)), i == j ? 1 : 0);
    EXPECT_EQ(pair(fundamental_weight(3, 2), simple_coroot(3, 2)), 1);
}

TEST(Pairing, RhoAgainstLongTransposition) {
    // rho = (3,2,1), (eps1 - eps3)^v = (1,0,-1)
    EXPECT_EQ(rho(3).coords(), (std::vector<int>{3, 2, 1}));
    EXPECT_EQ(pair(rho(3), Root(1, 3).coroot(3)), 2);
}

TEST(Pairing, LongRootCoroot) {
    Root long3(3, -3);
    EXPECT_EQ(pair(eps(3, 3), long3.coroot(3)), 1);
    EXPECT_EQ(pairing_oracle(eps(3, 3), long3, 3), 1);
}

TEST(Pairing, CorootTableMatchesInnerProductOracle) {
    std::mt19937 rng(11);
    for (int n = 1; n <= 5; ++n)
        for (const auto& a : positive_roots(n))
            for (int t = 0; t < 5; ++t) {
                Weight lam = random_weight(n, rng);
                EXPECT_EQ(pair(lam, a.coroot(n)), pairing_oracle(lam, a, n)) << a.to_string();
            }
}

TEST(Roots, PositiveRootCountAndRendering) {
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(static_cast<int>(positive_roots(n).size()), n * n);
    EXPECT_EQ(Root(1, 2).to_string(), "(1,2)");
    EXPECT_EQ(Root(1, -2).to_string(), "(1,2̄)");
    EXPECT_EQ(Root(1, -1).to_string(), "(1,1̄)");
    EXPECT_EQ(simple_coroot(3, 3), Root(3, -3).coroot(3));
    EXPECT_EQ(simple_coroot(3, 1).coords(), (std::vector<int>{1, -1, 0}));
}

TEST(Action, Examples) {
    const int n = 3;
    EXPECT_EQ(WeylElt::identity(n).act(eps(n, 2)), eps(n, 2));
    EXPECT_EQ(WeylElt::simple(n, 3).act(eps(n, 3)), -eps(n, 3));
    EXPECT_EQ(parse_weyl(n, "s1 s2 s1").act(eps(n, 2)), eps(n, 2));
    EXPECT_EQ(parse_weyl(n, "s1 s2 s1").act(eps(n, 1)), eps(n, 3));
}

TEST(Reflect, Examples) {
    const int n = 2;
    EXPECT_EQ(reflect(n, Root(1, 2), eps(n, 1)), eps(n, 2));
    EXPECT_EQ(reflect(n, Root(1, -1), eps(n, 1)), -eps(n, 1));
    // eps1 - <eps1,(eps1+eps2)^v>(eps1+eps2)
    EXPECT_EQ(reflect(n, Root(1, -2), eps(n, 1)), -eps(n, 2));
}

TEST(Reflect, InvolutionFixingHyperplane) {
    std::mt19937 rng(3);
    for (int n = 1; n <= 4; ++n)
        for (const auto& a : positive_roots(n))
            for (int t = 0; t < 4; ++t) {
                Weight lam = random_weight(n, rng);
                EXPECT_EQ(reflect(n, a, reflect(n, a, lam)), lam);
                Weight fixed = 2 * lam - pair(lam, a.coroot(n)) * a.weight(n);
                ASSERT_EQ(pair(fixed, a.coroot(n)), 0);
                EXPECT_EQ(reflect(n, a, fixed), fixed);
                EXPECT_EQ(pair(reflect(n, a, lam), a.coroot(n)), -pair(lam, a.coroot(n)));
            }
}

TEST(Length, Examples) {
    EXPECT_EQ(WeylElt::identity(3).length(), 0);
    EXPECT_EQ(parse_weyl(3, "s1s2s1").length(), 3);
    EXPECT_EQ(longest_element(3).length(), 9);
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(longest_element(n).length(), n * n);
}

TEST(Length, InversionCountEqualsReducedWordLength) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n)) {
            EXPECT_EQ(w.length(), inversion_count(w));
            EXPECT_EQ(static_cast<int>(w.reduced_word().size()), w.length());
            EXPECT_EQ(WeylElt::from_word(n, w.reduced_word()), w);
        }
}

TEST(Length, SimpleStepsChangeLengthByOne) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (int i = 1; i <= n; ++i) EXPECT_EQ(std::abs(w.times_simple(i).length() - w.length()), 1);
}

TEST(Group, OrderAndLaws) {
    for (int n = 1; n <= 4; ++n) {
        auto g = weyl_group(n);
        EXPECT_EQ(g.size(), weyl_order(n));
        std::mt19937 rng(n);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        for (int t = 0; t < 50; ++t) {
            const auto &a = g[pick(rng)], &b = g[pick(rng)], &c = g[pick(rng)];
            EXPECT_EQ((a * b) * c, a * (b * c));
            EXPECT_EQ(a * a.inverse(), WeylElt::identity(n));
            for (int k = 1; k <= n; ++k) EXPECT_EQ(a(-k), -a(k));
        }
    }
    EXPECT_EQ(WeylElt::simple(3, 1) * WeylElt::simple(3, 1), WeylElt::identity(3));
}

TEST(Group, ActionIsEquivariantForReflections) {
    std::mt19937 rng(5);
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (const auto& a : positive_roots(n)) {
                Weight lam = random_weight(n, rng);
                Root wa = w.act(a);
                EXPECT_EQ(w.act(reflect(n, a, lam)), reflect(n, wa.abs(), w.act(lam)));
                EXPECT_EQ(w.times_reflection(a), WeylElt::reflection(n, wa.abs()) * w);
            }
}

TEST(Group, PairingIsReflectionInvariant) {
    std::mt19937 rng(9);
    for (int n = 1; n <= 4; ++n)
        for (const auto& a : positive_roots(n))
            for (const auto& g : positive_roots(n)) {
                Weight lam = random_weight(n, rng);
                EXPECT_EQ(pair(reflect(n, a, lam), g.coroot(n)), pair(lam, reflect(n, a, g.coroot(n))));
            }
}

TEST(Parsing, WordsAndWindows) {
    auto w = parse_weyl(3, "s1 s2 s3");
    EXPECT_EQ(parse_weyl(3, "s1s2s3"), w);
    EXPECT_EQ(parse_weyl(3, w.window_string()), w);
    EXPECT_EQ(parse_weyl(3, "e"), WeylElt::identity(3));
    EXPECT_EQ(WeylElt::simple(3, 3).window_string(), "[1,2,-3]");
    EXPECT_EQ(parse_weyl(3, "s1s2s3s2s1").word_string(""), "s1s2s3s2s1");
    EXPECT_THROW(parse_weyl(3, "s4"), std::invalid_argument);
    EXPECT_THROW(parse_weyl(3, "[1,1,2]"), std::invalid_argument);
}

namespace {

// The affine element w t_xi acting on the coroot space by v -> w(v + xi).
Coroot affine_apply(const AffineElt& x, const Coroot& v) { return x.w.act(v + x.xi); }

}  // namespace

TEST(Affine, TranslationsCompose) {
    Coroot xi = simple_coroot(3, 1), eta = simple_coroot(3, 2) + simple_coroot(3, 3);
    auto prod = AffineElt::translation(xi) * AffineElt::translation(eta);
    EXPECT_EQ(prod, AffineElt::translation(xi + eta));
}

TEST(Affine, ProductMatchesFaithfulAction) {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int n = 1; n <= 4; ++n) {
        auto g = weyl_group(n);
        std::uniform_int_distribution<std::size_t> pick(0, g.size() - 1);
        auto rand_coroot = [&] {
            Coroot v(n);
            for (int i = 1; i <= n; ++i) v = v + c(rng) * simple_coroot(n, i);
            return v;
        };
        for (int t = 0; t < 40; ++t) {
            AffineElt a{g[pick(rng)], rand_coroot()}, b{g[pick(rng)], rand_coroot()};
            Coroot v = rand_coroot();
            EXPECT_EQ(affine_apply(a * b, v), affine_apply(a, affine_apply(b, v)));
            EXPECT_EQ(a * a.inverse(), AffineElt::finite(WeylElt::identity(n)));
        }
    }
    // (s1 t_{alpha1^v}) (s1 t_0) = t_{s1 alpha1^v}
    AffineElt x{WeylElt::simple(3, 1), simple_coroot(3, 1)}, y = AffineElt::finite(WeylElt::simple(3, 1));
    EXPECT_EQ(x * y, AffineElt::translation(-simple_coroot(3, 1)));
}

TEST(Rank, Bounds) {
    EXPECT_THROW(WeylElt::identity(0), RankError);
    EXPECT_THROW(WeylElt::identity(kMaxRank + 1), RankError);
}
