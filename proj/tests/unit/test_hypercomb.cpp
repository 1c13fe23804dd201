#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "paratile/paratile.hpp"

using namespace paratile;

namespace {

bool moment_checks_hold(const Hypergraph4& h) {
    MomentReport m = moment_audit(h);
    return m.ok() && m.vertices >= m.edges && m.vertices <= 2 * m.edges;
}

std::set<std::pair<int, int>> pairs_at(const VertexMatching& m, int hyperedge) {
    std::set<std::pair<int, int>> out;
    for (auto [a, b] : m.pairs[static_cast<std::size_t>(hyperedge)]) out.insert({std::min(a, b), std::max(a, b)});
    return out;
}

}  // namespace

TEST(Hypergraph, Closure) {
    EXPECT_TRUE(is_closed(five_ten_hypergraph()).closed);
    EXPECT_TRUE(is_closed(six_eleven_hypergraph()).closed);
    ClosureReport empty = is_closed(Hypergraph4{});
    EXPECT_TRUE(empty.closed);
    EXPECT_TRUE(empty.empty);
    ClosureReport disjoint = is_closed(Hypergraph4::from_edges({{0, 1, 2, 3}, {4, 5, 6, 7}}));
    EXPECT_FALSE(disjoint.closed);
    EXPECT_EQ(disjoint.violation, ClosureViolation::intersection);
    EXPECT_EQ(disjoint.intersection_size, 0u);
    EXPECT_THROW(Hypergraph4::from_edges({{0, 0, 1, 2}}), InvalidInput);
}

TEST(Hypergraph, FiveTenMoments) {
    Hypergraph4 h = five_ten_hypergraph();
    MomentReport m = moment_audit(h);
    EXPECT_EQ(m.edges, 5);
    EXPECT_EQ(m.vertices, 10);
    EXPECT_EQ(m.identities.front().lhs, 20);
    for (const auto& [v, d] : h.degrees()) EXPECT_EQ(d, 2u);
    EXPECT_TRUE(m.ok());
}

TEST(Hypergraph, DegreeFourTable) {
    EXPECT_EQ(degree4_formula(6, 12), 3);
    EXPECT_EQ(degree4_formula(7, 13), 4);
    EXPECT_EQ(degree4_formula(8, 12), 0);
    EXPECT_EQ(degree4_table_entry(6, 12).kind, Degree4Cell::count);
    EXPECT_EQ(degree4_table_entry(6, 12).value, 3);
    EXPECT_EQ(degree4_table_entry(5, 11).kind, Degree4Cell::out_of_range);
    EXPECT_EQ(degree4_table_entry(8, 10).kind, Degree4Cell::negative);
}

TEST(Hypergraph, EnumeratedGraphsSatisfyMoments) {
    std::size_t total = 0;
    for (int R = 1; R <= 6; ++R)
        for (const auto& h : enumerate_closed_hypergraphs(R)) {
            ++total;
            EXPECT_TRUE(moment_checks_hold(h));
        }
    EXPECT_EQ(total, 2u);
}

TEST(Hypergraph, RandomGraphsSatisfyMoments) {
    std::mt19937_64 rng(31);
    std::size_t made = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int R = 5 + trial % 4;
        auto h = random_closed_hypergraph(R, rng);
        if (!h) continue;
        ++made;
        EXPECT_TRUE(moment_checks_hold(*h)) << "R=" << R;
    }
    EXPECT_GT(made, 30u);
}

TEST(Hypergraph, CanonicalFormDetectsIsomorphism) {
    Hypergraph4 h = five_ten_hypergraph();
    std::vector<Hyperedge> relabeled;
    for (auto e : h.edges) {
        for (auto& v : e) v = (v * 7 + 3) % 10;
        std::sort(e.begin(), e.end());
        relabeled.push_back(e);
    }
    std::reverse(relabeled.begin(), relabeled.end());
    EXPECT_TRUE(isomorphic(h, Hypergraph4::from_edges(relabeled)));
    EXPECT_FALSE(isomorphic(h, six_eleven_hypergraph()));
}

TEST(Hypergraph, FindsReferenceSubgraphs) {
    SubgraphEmbedding a = find_5_10_or_6_11(five_ten_hypergraph());
    EXPECT_EQ(a.kind, SubgraphKind::five_ten);
    EXPECT_TRUE(verify_embedding(five_ten_hypergraph(), a));
    SubgraphEmbedding b = find_5_10_or_6_11(six_eleven_hypergraph());
    EXPECT_EQ(b.kind, SubgraphKind::six_eleven);
    EXPECT_TRUE(verify_embedding(six_eleven_hypergraph(), b));
    EXPECT_THROW(find_5_10_or_6_11(Hypergraph4::from_edges({{0, 1, 2, 3}, {4, 5, 6, 7}})), InvalidInput);
}

TEST(Hypergraph, ExtractionAgreesWithExhaustiveSearch) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 12; ++trial) {
        auto h = random_closed_hypergraph(5 + trial % 4, rng);
        if (!h) continue;
        SubgraphEmbedding e = find_5_10_or_6_11(*h);
        EXPECT_TRUE(verify_embedding(*h, e));
        auto brute = exhaustive_subgraph_search(*h, 1);
        EXPECT_FALSE(brute.empty());
        for (const auto& b : brute) EXPECT_TRUE(verify_embedding(*h, b));
    }
}

TEST(Hypergraph, StripToCoreKeepsClosure) {
    std::mt19937_64 rng(3);
    auto h = random_closed_hypergraph(8, rng);
    ASSERT_TRUE(h);
    auto core = strip_to_core(*h);
    std::vector<Hyperedge> kept;
    for (int i : core) kept.push_back(h->edges[static_cast<std::size_t>(i)]);
    EXPECT_TRUE(is_closed(Hypergraph4::from_edges(kept)).closed);
}

TEST(K5Schemes, ReferenceSchemesAreValid) {
    for (const auto& s : reference_k5_schemes()) {
        EXPECT_NO_THROW(s.validate());
        EXPECT_EQ(transitions_of(scheme_of(transitions_of(s))), transitions_of(s));
    }
    EXPECT_THROW((PloughingScheme{{{1, 2, 3}}}.validate()), InvalidInput);
}

TEST(K5Schemes, ClassStructure) {
    auto classes = enumerate_k5_schemes();
    std::size_t orbits = 0;
    std::multiset<std::size_t> circuits;
    for (const auto& c : classes) {
        orbits += c.orbit_size;
        circuits.insert(c.circuits);
    }
    EXPECT_EQ(orbits, 243u);
    EXPECT_EQ(classes.size(), 7u);
    EXPECT_EQ(circuits, (std::multiset<std::size_t>{1, 1, 1, 2, 2, 2, 3}));
    auto holding = [&](int item) {
        for (const auto& c : classes)
            if (std::count(c.listed_items.begin(), c.listed_items.end(), item)) return c;
        return K5SchemeClass{};
    };
    EXPECT_EQ(holding(1).circuits, 1u);
    EXPECT_EQ(holding(8).circuits, 3u);
    EXPECT_EQ(holding(3).canonical, holding(4).canonical);
}

TEST(K5Schemes, ItemsThreeAndFourAreRelabelings) {
    auto ref = reference_k5_schemes();
    Transitions t3 = transitions_of(ref[2]);
    Transitions t4 = transitions_of(ref[3]);
    EXPECT_EQ(relabel(t3, {1, 3, 2, 5, 4}), t4);
}

TEST(K5Schemes, MatchingOfFirstScheme) {
    VertexMatching m = scheme_to_matching(reference_k5_schemes()[0]);
    int v12 = five_ten_vertex(0, 1), v13 = five_ten_vertex(0, 2), v14 = five_ten_vertex(0, 3), v15 = five_ten_vertex(0, 4);
    std::set<std::pair<int, int>> want{{std::min(v12, v15), std::max(v12, v15)}, {std::min(v13, v14), std::max(v13, v14)}};
    EXPECT_EQ(pairs_at(m, 0), want);
}

TEST(K5Schemes, ReversalGivesSameMatching) {
    for (const auto& s : reference_k5_schemes()) {
        PloughingScheme rev = s;
        for (auto& c : rev.cycles) std::reverse(c.begin(), c.end());
        VertexMatching a = scheme_to_matching(s), b = scheme_to_matching(rev);
        for (int e = 0; e < 5; ++e) EXPECT_EQ(pairs_at(a, e), pairs_at(b, e));
    }
}

TEST(SixEleven, Classes) {
    auto classes = enumerate_6_11_matchings();
    ASSERT_EQ(classes.size(), 19u);
    std::set<std::pair<int, int>> census;
    std::size_t reduced = 0;
    for (const auto& c : classes) {
        census.insert(c.images);
        reduced += c.reduces_to.has_value();
        EXPECT_EQ(c.listed, c.item <= 18);
    }
    EXPECT_EQ(census, (std::set<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 3}}));
    EXPECT_EQ(reduced, 3u);
    EXPECT_EQ(classes[7].reduces_to, 6);
    EXPECT_EQ(classes[10].reduces_to, 7);
    EXPECT_EQ(classes[11].reduces_to, 10);
    EXPECT_EQ(classes[0].representative, (SigmaPair{{0, 0, 0}, {0, 0, 0}}));
}

TEST(SixEleven, CanonicalSigmaIsClassInvariant) {
    for (const auto& p : reference_sigma_pairs()) {
        SigmaPair q = relabel(p, {2, 0, 1}, {1, 2, 0});
        EXPECT_EQ(canonical_sigma(p), canonical_sigma(q));
        EXPECT_EQ(image_sizes(p), image_sizes(q));
    }
}

TEST(SixEleven, MatchingsAreValid) {
    for (const auto& p : reference_sigma_pairs()) EXPECT_NO_THROW(sigma_to_matching(p).validate(six_eleven_hypergraph()));
}
