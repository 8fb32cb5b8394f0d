#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "invchev/qbg.hpp"

using namespace invchev;

namespace {

WeylElt W(int n, const char* s) { return parse_weyl(n, s); }

// Brute force: every directed path of exactly `len` steps from `from` to `to`, collecting weights.
std::set<Coroot> weights_of_paths(const WeylElt& from, const WeylElt& to, int len) {
    const int n = from.rank();
    std::set<Coroot> out;
    std::function<void(const WeylElt&, int, Coroot)> go = [&](const WeylElt& v, int left, Coroot wt) {
        if (left == 0) {
            if (v == to) out.insert(wt);
            return;
        }
        for (const auto& a : positive_roots(n)) {
            EdgeKind k = edge_kind(v, a);
            if (k == EdgeKind::None) continue;
            go(v.times_reflection(a), left - 1, k == EdgeKind::Quantum ? wt + a.coroot(n) : wt);
        }
    };
    go(from, len, Coroot(n));
    return out;
}

}  // namespace

TEST(EdgeKind, SimpleRootsAreAlwaysEdges) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (int i = 1; i <= n; ++i) EXPECT_NE(edge_kind(w, simple_root(n, i)), EdgeKind::None);
    for (int i = 1; i <= 3; ++i) EXPECT_EQ(edge_kind(WeylElt::identity(3), simple_root(3, i)), EdgeKind::Bruhat);
}

TEST(EdgeKind, WorkedExamples) {
    // length drops by 3 = 2<rho,(1,3)^v> - 1
    EXPECT_EQ(edge_kind(W(3, "s1s2s1"), Root(1, 3)), EdgeKind::Quantum);
    EXPECT_EQ(W(3, "s1s2s1").times_reflection(Root(1, 3)), WeylElt::identity(3));
    EXPECT_NE(edge_kind(W(3, "s3s2"), Root(2, 3)), EdgeKind::None);
    EXPECT_EQ(W(3, "s3s2").times_reflection(Root(2, 3)), W(3, "s3"));
    EXPECT_THROW(edge_kind(WeylElt::identity(3), -Root(1, 2)), std::invalid_argument);
}

TEST(EdgeKind, EdgeInvariants) {
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (const auto& e : out_edges(w)) {
                EXPECT_EQ(e.target, w.times_reflection(e.label));
                int dl = e.target.length() - w.length();
                if (e.kind == EdgeKind::Bruhat) {
                    EXPECT_EQ(dl, 1);
                }
                if (e.kind == EdgeKind::Quantum) {
                    EXPECT_EQ(dl, 1 - 2 * pair(rho(n), e.label.coroot(n)));
                }
            }
}

TEST(Criterion, AgreesWithLengthConditionsExhaustively) {
    EXPECT_TRUE(criterion_edge(WeylElt::identity(3), Root(1, 2)));
    EXPECT_TRUE(criterion_edge(W(3, "s1s2s1"), Root(1, 3)));
    for (int n = 1; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (const auto& a : positive_roots(n))
                ASSERT_EQ(criterion_edge(w, a), is_edge(w, a)) << w.window_string() << " " << a.to_string();
}

TEST(PathWeight, Examples) {
    EXPECT_EQ(path_weight({W(3, "s1s2s1"), {}}), Coroot(3));
    QbgPath p{W(3, "s1s2s1"), {{W(3, "s1s2s1"), Root(1, 3), WeylElt::identity(3), EdgeKind::Quantum}}};
    EXPECT_EQ(path_weight(p), simple_coroot(3, 1) + simple_coroot(3, 2));
    QbgPath q{W(3, "s3s2"), {{W(3, "s3s2"), Root(2, 3), W(3, "s3"), edge_kind(W(3, "s3s2"), Root(2, 3))}}};
    EXPECT_EQ(q.edges[0].kind, EdgeKind::Quantum);
    EXPECT_EQ(path_weight(q), simple_coroot(3, 2));
    QbgPath broken{W(3, "s3s2"), {{W(3, "s3"), Root(2, 3), W(3, "s3s2"), EdgeKind::Bruhat}}};
    EXPECT_THROW(path_weight(broken), std::invalid_argument);
    EXPECT_FALSE(path_is_valid(broken));
}

TEST(CanonicalPath, WorkedExamples) {
    auto p32 = p_path(W(3, "s1s2s1"), 3, 2);
    ASSERT_EQ(p32.size(), 1u);
    EXPECT_EQ(p32.edges[0].label, Root(2, 3));
    EXPECT_EQ(p32.end(), W(3, "s2s1"));
    EXPECT_EQ(path_weight(p32), simple_coroot(3, 2));

    auto p31 = p_path(W(3, "s1s2s1"), 3, 1);
    ASSERT_EQ(p31.size(), 1u);
    EXPECT_EQ(p31.edges[0].label, Root(1, 3));
    EXPECT_EQ(p31.end(), WeylElt::identity(3));

    auto b11 = p_path(W(3, "s1s2s3s2s1"), -1, 1);
    ASSERT_EQ(b11.size(), 1u);
    EXPECT_EQ(b11.edges[0].label, Root(1, -1));
    EXPECT_EQ(b11.end(), WeylElt::identity(3));

    auto b22 = p_path(W(3, "s3s2"), -2, 2);
    ASSERT_EQ(b22.size(), 2u);
    EXPECT_EQ(b22.edges[0].label, Root(2, -3));
    EXPECT_EQ(b22.edges[0].target, W(3, "s2s3s2"));
    EXPECT_EQ(b22.edges[1].label, Root(2, 3));
    EXPECT_EQ(b22.end(), W(3, "s2s3"));

    auto b23b = p_path(W(3, "s3s2"), -2, -3);
    ASSERT_EQ(b23b.size(), 1u);
    EXPECT_EQ(b23b.edges[0].label, Root(2, 3));
    EXPECT_EQ(b23b.end(), W(3, "s3"));

    auto b21 = p_path(W(3, "s3s2"), -2, 1);
    ASSERT_EQ(b21.size(), 2u);
    EXPECT_EQ(b21.edges[1].label, Root(1, 3));
    EXPECT_EQ(b21.end(), W(3, "s2s3s1s2"));
}

TEST(CanonicalPath, AlwaysValidAndConsistentWithShortestPaths) {
    for (int n = 2; n <= 3; ++n)
        for (const auto& w : weyl_group(n)) {
            std::vector<std::pair<int, int>> pairs;
            for (int m = 2; m <= n; ++m)
                for (int j = 1; j < m; ++j) pairs.push_back({m, j});
            for (int l = 1; l <= n; ++l)
                for (int p = 1; p <= order_pos(n, l < n ? -(l + 1) : n); ++p) pairs.push_back({-l, from_order_pos(n, p)});
            for (auto [from, to] : pairs) {
                auto p = p_path(w, from, to);
                ASSERT_TRUE(path_is_valid(p));
                auto sp = shortest_paths(w, p.end());
                if (static_cast<int>(p.size()) == sp.length) {
                    ASSERT_EQ(sp.weights.size(), 1u);
                    EXPECT_EQ(*sp.weights.begin(), path_weight(p));
                }
            }
        }
}

TEST(CanonicalPath, RejectsBadRanges) {
    EXPECT_THROW(p_path(W(3, "s1"), 2, 3), std::invalid_argument);
    EXPECT_THROW(p_path(W(3, "s1"), 2, -1), std::invalid_argument);
    EXPECT_THROW(p_path(W(3, "s1"), -2, -1), std::invalid_argument);
    EXPECT_THROW(p_path(W(3, "s1"), -3, -3), std::invalid_argument);
}

TEST(Distance, Examples) {
    EXPECT_EQ(distance(3, 2, 2), 0);
    EXPECT_EQ(distance(3, -3, 1), 3);
    EXPECT_EQ(distance(3, -1, 1), 5);
    EXPECT_THROW(distance(3, 4, 1), std::out_of_range);
}

TEST(GammaLabel, ThreeCases) {
    EXPECT_EQ(gamma_label(3, 2, 3), Root(2, -3));
    EXPECT_EQ(gamma_label(3, 2, 1), Root(1, -2));
    EXPECT_EQ(gamma_label(3, 2, 2), Root(2, -2));
    EXPECT_EQ(gamma_label(3, 1, -3), Root(1, 3));
    EXPECT_EQ(gamma_label(3, 1, -2), Root(1, 2));
    EXPECT_THROW(gamma_label(3, 2, -2), std::out_of_range);
}

TEST(ShortestPaths, Examples) {
    auto self = shortest_paths(W(3, "s1s2"), W(3, "s1s2"));
    EXPECT_EQ(self.length, 0);
    EXPECT_EQ(self.weights, (std::set<Coroot>{Coroot(3)}));
    auto sp = shortest_paths(W(3, "s1s2s1"), WeylElt::identity(3));
    EXPECT_EQ(sp.weights, weights_of_paths(W(3, "s1s2s1"), WeylElt::identity(3), sp.length));
    EXPECT_EQ(sp.weights, (std::set<Coroot>{simple_coroot(3, 1) + simple_coroot(3, 2)}));
}

TEST(ShortestPaths, WeightIsUniqueForAllPairsRank2) {
    for (const auto& u : weyl_group(2))
        for (const auto& v : weyl_group(2)) {
            auto sp = shortest_paths(u, v);
            ASSERT_GE(sp.length, 0);
            EXPECT_EQ(sp.weights.size(), 1u);
            EXPECT_EQ(sp.weights, weights_of_paths(u, v, sp.length));
        }
}

TEST(Lemmas, ExchangeExhaustiveRank3) {
    for (const auto& w : weyl_group(3)) EXPECT_TRUE(exchange_lemma_holds(w, 1, 2, 3)) << w.window_string();
    for (const auto& w : weyl_group(4))
        for (int k = 1; k <= 4; ++k)
            for (int l = k + 1; l <= 4; ++l)
                for (int m = l + 1; m <= 4; ++m) EXPECT_TRUE(exchange_lemma_holds(w, k, l, m));
}

TEST(Lemmas, Exchange2ExhaustiveRank3And4) {
    for (int n = 3; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (int k1 = 1; k1 <= n; ++k1)
                for (int l1 = k1 + 1; l1 <= n; ++l1)
                    for (int k2 = 1; k2 <= n; ++k2)
                        for (int l2 = k2 + 1; l2 <= n; ++l2) {
                            if (k2 == k1 || k2 == l1 || l2 == k1 || l2 == l1) continue;
                            EXPECT_TRUE(exchange2_lemma_holds(w, Root(k1, l1), Root(k2, l2)));
                        }
}

TEST(Lemmas, ExistenceAndMinimumExhaustive) {
    for (int n = 2; n <= 4; ++n)
        for (const auto& w : weyl_group(n))
            for (int m = 1; m <= n; ++m) {
                EXPECT_TRUE(existence_lemma_holds(w, m)) << w.window_string() << " m=" << m;
                EXPECT_TRUE(minimum_corollary_holds(w, m)) << w.window_string() << " m=" << m;
            }
}

TEST(Lemmas, MinimumCorollaryIsExercised) {
    int nontrivial = 0;
    for (const auto& w : weyl_group(3))
        for (int m = 1; m <= 3; ++m) nontrivial += edge_indices_into(w, m).size() >= 2;
    EXPECT_GT(nontrivial, 0);
}

TEST(Graph, ExportCountsMatchEdgeTest) {
    for (int n = 1; n <= 3; ++n) {
        std::size_t total = 0, brute = 0;
        for (const auto& w : weyl_group(n)) {
            total += out_edges(w).size();
            for (const auto& a : positive_roots(n)) brute += is_edge(w, a);
        }
        EXPECT_EQ(total, brute);
    }
}
