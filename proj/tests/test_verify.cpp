#include <gtest/gtest.h>

#include "invchev/verify.hpp"

using namespace invchev;

namespace {

WeylElt W(int n, const char* s) { return parse_weyl(n, s); }

std::string failures_of(const std::vector<VerificationReport>& reports) {
    std::string s;
    for (const auto& r : reports)
        if (!r.verified) s += r.instance + "\n";
    return s;
}

}  // namespace

TEST(ParallelMap, OrderedAndDeterministic) {
    auto sq = [](std::size_t i) { return static_cast<int>(i * i); };
    auto one = parallel_map(100, 1, sq);
    auto many = parallel_map(100, 4, sq);
    EXPECT_EQ(one, many);
    for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i], static_cast<int>(i * i));
    EXPECT_TRUE(parallel_map(0, 3, sq).empty());
    EXPECT_THROW(parallel_map(10, 3,
                              [](std::size_t i) -> int {
                                  if (i == 7) throw std::runtime_error("boom");
                                  return 0;
                              }),
                 std::runtime_error);
}

TEST(Identities, FirstHalfExhaustive) {
    for (int n = 1; n <= 3; ++n) {
        auto reports = sweep_identities(n, Half::First, {}, 1, 100 + n, 2);
        EXPECT_EQ(reports.size(), weyl_order(n) * n * 2);
        EXPECT_EQ(failures_of(reports), "");
    }
}

TEST(Identities, SecondHalfExhaustive) {
    for (int n = 1; n <= 3; ++n) {
        auto reports = sweep_identities(n, Half::Second, {}, 1, 200 + n, 2);
        EXPECT_EQ(failures_of(reports), "");
    }
}

TEST(Identities, CancelFreeFirstHalfExhaustive) {
    for (int n = 2; n <= 3; ++n) {
        auto reports = sweep_identities(n, Half::First, {Variant::CancelFree, 0}, 1, 300 + n, 2);
        EXPECT_EQ(failures_of(reports), "");
        for (const auto& w : weyl_group(n))
            for (int m = 1; m <= n; ++m) {
                auto x = AffineElt::finite(w);
                EXPECT_EQ(ic_rhs_cancel_free_first(x, m), ic_rhs_first(x, m)) << w.word_string("") << " m=" << m;
            }
    }
}

TEST(Identities, DetectsAPerturbedRightHandSide) {
    IdentitySpec s{AffineElt::finite(W(3, "s1s2s1")), 3, Half::First, {}};
    DemazureCombo rhs = rhs_combo(s);
    rhs.add({WeylElt::identity(3), eps(3, 1)}, RationalCoeff(Laurent(Monomial::q_pow(1))));
    EXPECT_FALSE(detail::cleared_residual(expand_to_base(rhs), lhs_combo(s)).is_zero());
}

TEST(Identities, ReportFields) {
    auto r = verify_first_half(W(3, "s1s2s1"), 3);
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.lhs_terms, 1u);
    EXPECT_GT(r.rhs_terms, 0u);
    EXPECT_EQ(r.instance, "first w=s1s2s1 m=3");
    EXPECT_TRUE(r.residual.is_zero());
    EXPECT_TRUE(verify_second_half(W(3, "s3s2"), 2, simple_coroot(3, 1)).verified);
}

TEST(KeyProps, ExhaustiveRanks2And3) {
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : weyl_group(n))
            for (int k = 1; k <= n; ++k) EXPECT_TRUE(verify_key_props(w, k).verified) << w.word_string("") << k;
}

TEST(Specialization, AgreesWithSymbolicIdentities) {
    auto lambdas = random_dominant_weights(3, 5, 42);
    ASSERT_EQ(lambdas.size(), 5u);
    for (const auto& lam : lambdas) {
        for (int i = 0; i < 3; ++i) EXPECT_GE(lam[i], 1);
        for (int i = 3; i < kMaxRank; ++i) EXPECT_EQ(lam[i], 0);
    }
    std::mt19937_64 rng(5);
    for (const char* w : {"s1s2s1", "s3s2", "s1s2s3s2s1", "e", "s2s3s2"})
        for (int m = 1; m <= 3; ++m)
            for (Half h : {Half::First, Half::Second}) {
                IdentitySpec s{{W(3, w), random_coroot(3, rng)}, m, h, {}};
                EXPECT_TRUE(specialization_consistent(s, lambdas)) << w << " m=" << m;
            }
}

TEST(Specialization, SeparatesAWrongIdentity) {
    auto lambdas = random_dominant_weights(2, 3, 1);
    IdentitySpec s{AffineElt::finite(W(2, "s1")), 2, Half::First, {}};
    DemazureCombo rhs = expand_to_base(rhs_combo(s));
    DemazureCombo wrong = lhs_combo({AffineElt::finite(W(2, "s1")), 1, Half::First, {}});
    EXPECT_FALSE(specialized_equal(specialize(rhs, lambdas[0]), specialize(wrong, lambdas[0])));
}

TEST(Certificates, HandBuiltStreams) {
    SymbolKey k{WeylElt::identity(2), Weight(2)};
    Monomial q = Monomial::q_pow(1);
    EXPECT_TRUE(cancellation_certificate({{k, q, 1}, {k, q, 1}, {k, Monomial{}, -1}}));
    EXPECT_FALSE(cancellation_certificate({{k, q, 1}, {k, Monomial{}, -1}, {k, q, -1}}));
    EXPECT_TRUE(cancellation_certificate({}));
}

TEST(Certificates, CancelFreeStreamsAreCertifiedRank3) {
    for (const auto& w : weyl_group(3))
        for (int m = 1; m <= 3; ++m) {
            IdentitySpec s{AffineElt::finite(w), m, Half::First, {Variant::CancelFree, 0}};
            EXPECT_TRUE(cancellation_certificate(collect_stream(s))) << w.word_string("") << " m=" << m;
        }
}

TEST(Certificates, FullStreamOfTheTranspositionCancels) {
    IdentitySpec s{AffineElt::finite(W(3, "s1s2s1")), 3, Half::First, {}};
    EXPECT_FALSE(cancellation_certificate(collect_stream(s)));
}

TEST(Conjecture, WorkedInstances) {
    auto a = conjecture_instance(W(3, "s3s2"), 2);
    EXPECT_EQ(a.working_l, std::vector<int>{3});
    EXPECT_TRUE(a.hits_m_or_n());
    auto b = conjecture_instance(W(3, "s1s2s3s2s1"), 1);
    EXPECT_EQ(b.working_l, std::vector<int>{1});
    EXPECT_EQ(b.certified_l, b.working_l);
    EXPECT_EQ(b.formal_l, b.working_l);
}

TEST(Conjecture, ScanRank2HasNoCounterexample) {
    auto scan = conjecture_scan(2, 2);
    EXPECT_EQ(scan.entries.size(), 16u);
    EXPECT_TRUE(scan.counterexamples().empty());
    for (const auto& e : scan.entries) {
        EXPECT_EQ(e.formal_l, e.working_l);
        for (int l : e.certified_l)
            EXPECT_NE(std::find(e.working_l.begin(), e.working_l.end(), l), e.working_l.end());
    }
}

TEST(Involution, PairSetMatchesBruteForce) {
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : weyl_group(n))
            for (int k = 1; k <= n; ++k) {
                const int len = 2 * n - k;
                std::size_t brute = 0;
                for (unsigned mb = 0; mb < (1u << len); ++mb)
                    for (unsigned ma = 0; ma < (1u << len); ++ma) {
                        PairElt p;
                        for (int t = 1; t <= len; ++t) {
                            if (mb & (1u << (t - 1))) p.b.push_back(t);
                            if (ma & (1u << (t - 1))) p.a1.push_back(t);
                        }
                        brute += pair_stats(w, k, p).has_value();
                    }
                EXPECT_EQ(pair_set(w, k).size(), brute);
            }
}

TEST(Involution, SmallExamples) {
    auto w = W(2, "s1");
    // empty pair is fixed
    EXPECT_EQ(pair_involution(w, 1, {{}, {}}).case_id, 6);
    auto fixed = pair_involution(w, 1, {{}, {}});
    EXPECT_TRUE(fixed.image.b.empty() && fixed.image.a1.empty());
    EXPECT_THROW(pair_involution(w, 1, {{1, 1}, {}}), std::invalid_argument);
}

TEST(Involution, ExhaustiveRank3) {
    std::array<std::size_t, 7> total{};
    for (const auto& w : weyl_group(3))
        for (int k = 1; k <= 3; ++k) {
            auto c = check_pair_involution(w, k);
            EXPECT_TRUE(c.ok()) << c.first_failure;
            for (int i = 0; i < 7; ++i) total[i] += c.case_counts[i];
        }
    EXPECT_EQ(total[0], 0u);
    EXPECT_EQ(total[1], total[2]);
    EXPECT_EQ(total[3], total[4]);
    for (int i = 1; i <= 6; ++i) EXPECT_GT(total[i], 0u) << "case " << i;
}

TEST(Collapse, TranspositionExample) {
    auto sum = chained_group_sum(W(3, "s1s2s1"), 3, 1);
    GroupAlgebraElt expected{{WeylElt::identity(3), Laurent(Monomial::x_pow(1, -1) * Monomial::x_pow(2, -1))}};
    EXPECT_EQ(sum, expected);
    EXPECT_THROW(collapse_check(W(3, "s1"), 1, 1), std::out_of_range);
}

TEST(Collapse, ExhaustiveRanks3And4) {
    for (int n = 3; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (int m = 2; m <= n; ++m)
                for (int j = 1; j < m; ++j) EXPECT_TRUE(collapse_check(w, m, j)) << w.word_string("") << m << j;
}
