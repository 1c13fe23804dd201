#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "paratile/paratile.hpp"

using namespace paratile;

namespace {

struct Fixture {
    TilingComplex complex;
    NormalFrame frame;
};

const Fixture& fixture(const std::string& name) {
    static std::map<std::string, Fixture> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    Mat g;
    if (name == "D4") g = oracle::d4_gram();
    else if (name == "shear") g = oracle::from_ints({{5, 2}, {2, 3}});
    else if (name == "pyramids") g = oracle::from_ints({{8, 4, 4, 2}, {4, 12, 8, 4}, {4, 8, 12, 6}, {2, 4, 6, 7}});
    else if (name == "elongated") g = oracle::from_ints({{2, -1, -1}, {-1, 6, 3}, {-1, 3, 9}});
    else if (name == "A3*") g = oracle::from_ints({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
    else
        for (const auto& l : oracle::lattice_suite())
            if (l.name == name) g = l.gram;
    TilingComplex c = build_complex(Lattice::from_gram(g));
    NormalFrame fr = make_frame(c);
    return cache.emplace(name, Fixture{std::move(c), std::move(fr)}).first->second;
}

int seed_orbit(const TilingComplex& c) { return c.orbits_of_dim(static_cast<int>(c.dim()) - 1).front(); }

std::vector<std::string> suite_names() { return {"Z2", "A2", "Z3", "FCC", "BCC", "HEX", "shear", "elongated"}; }

}  // namespace

TEST(Scaling, SquareVertexFamily) {
    const auto& [c, fr] = fixture("Z2");
    StarFamily f = star_scaling_d2(c, c.rep(c.orbits_of_dim(0)[0]), fr);
    EXPECT_EQ(f.family_dim(), 2);
    EXPECT_FALSE(f.unique);
    ASSERT_EQ(f.facets.size(), 4u);
    for (const auto& g : f.generators)
        for (std::size_t i = 0; i < f.facets.size(); ++i)
            for (std::size_t j = 0; j < f.facets.size(); ++j)
                if (f.facets[i].orbit == f.facets[j].orbit) EXPECT_EQ(f.value_at(f.facets[i], g), f.value_at(f.facets[j], g));
}

TEST(Scaling, HexagonVertexRay) {
    const auto& [c, fr] = fixture("A2");
    for (int o : c.orbits_of_dim(0)) {
        StarFamily f = star_scaling_d2(c, c.rep(o), fr);
        EXPECT_TRUE(f.unique);
        EXPECT_EQ(f.positive, to_vec({1, 1, 1}));
    }
}

TEST(Scaling, ShearedHexagonRayRatios) {
    const auto& [c, fr] = fixture("shear");
    for (int o : c.orbits_of_dim(0)) {
        StarFamily f = star_scaling_d2(c, c.rep(o), fr);
        EXPECT_TRUE(f.unique);
        for (const auto& x : f.positive) EXPECT_GT(x, 0);
        std::vector<Vec> normals;
        for (const auto& fa : f.facets) normals.push_back(fr.of(fa.orbit));
        EXPECT_TRUE(signed_sum_vanishes(normals, f.positive));
    }
}

TEST(Scaling, HexagonalRatioInvariance) {
    for (const std::string name : {"A2", "FCC", "BCC"}) {
        const auto& [c, fr] = fixture(name);
        for (int o : c.orbits_of_dim(static_cast<int>(c.dim()) - 2)) {
            StarFamily f = star_scaling_d2(c, c.rep(o), fr);
            if (f.facets.size() != 3) continue;
            ASSERT_EQ(f.family_dim(), 1);
            Vec a = f.positive;
            Vec b = Rational(7, 3) * f.positive;
            EXPECT_EQ(a[0] / a[1], b[0] / b[1]);
            EXPECT_EQ(a[1] / a[2], b[1] / b[2]);
        }
    }
}

TEST(Scaling, CodimensionThreeStars) {
    {
        const auto& [c, fr] = fixture("Z3");
        StarFamily f = star_scaling_d3(c, c.rep(c.orbits_of_dim(0)[0]), fr);
        EXPECT_EQ(f.family_dim(), 3);
        EXPECT_FALSE(f.unique);
    }
    {
        const auto& [c, fr] = fixture("FCC");
        for (int o : c.orbits_of_dim(0)) EXPECT_TRUE(star_scaling_d3(c, c.rep(o), fr).unique);
    }
    {
        const auto& [c, fr] = fixture("BCC");
        for (int o : c.orbits_of_dim(0)) EXPECT_TRUE(star_scaling_d3(c, c.rep(o), fr).unique);
    }
}

TEST(Scaling, PrimitiveVertexScaling) {
    for (const std::string name : {"A2", "BCC", "A3*"}) {
        const auto& [c, fr] = fixture(name);
        for (int o : c.orbits_of_dim(0)) {
            if (c.orbits[o].tiles.size() != c.dim() + 1) continue;
            PrimitiveScaling ps = primitive_vertex_scaling(c, c.rep(o), fr);
            EXPECT_TRUE(ps.triple_identity) << name;
            for (const auto& x : ps.factors) EXPECT_GT(x, 0);
        }
    }
    const auto& [a2, fr2] = fixture("A2");
    for (int o : a2.orbits_of_dim(0)) {
        PrimitiveScaling ps = primitive_vertex_scaling(a2, a2.rep(o), fr2);
        StarFamily f = star_scaling_d2(a2, a2.rep(o), fr2);
        auto ratio = parallel_ratio(ps.factors, f.positive);
        EXPECT_TRUE(ratio && *ratio > 0);
    }
    const auto& [z3, fr3] = fixture("Z3");
    EXPECT_THROW(primitive_vertex_scaling(z3, z3.rep(z3.orbits_of_dim(0)[0]), fr3), NotPrimitiveVertex);
}

TEST(Scaling, UniformGainOnCubicGrid) {
    const auto& [c, fr] = fixture("Z3");
    PropagationResult r = propagate(c, uniform_gain(c), seed_orbit(c));
    ASSERT_TRUE(r.scaling);
    for (const auto& [orb, s] : *r.scaling) EXPECT_EQ(s, 1);
}

TEST(Scaling, PropagationYieldsCanonicalScaling) {
    for (const auto& name : suite_names()) {
        const auto& [c, fr] = fixture(name);
        PropagationResult r = propagate(c, gains_from_d2_stars(c, fr, true), seed_orbit(c));
        ASSERT_TRUE(r.scaling) << name;
        EXPECT_TRUE(verify_canonical(c, *r.scaling, fr).ok) << name;
        for (const auto& [orb, s] : *r.scaling) EXPECT_GT(s, 0) << name;
    }
}

TEST(Scaling, QuadrupleBridgesNeverContradictHexagonalRatios) {
    const auto& [c, fr] = fixture("elongated");
    GainFunction hex_only = gains_from_d2_stars(c, fr, false);
    GainFunction bridged = gains_from_d2_stars(c, fr, true);
    PropagationResult r = propagate(c, bridged, seed_orbit(c));
    ASSERT_TRUE(r.scaling);
    EXPECT_TRUE(verify_canonical(c, *r.scaling, fr).ok);
    for (const auto& e : hex_only.edges) EXPECT_EQ(r.scaling->at(e.to), r.scaling->at(e.from) * e.gain);
}

TEST(Scaling, PrimitiveCircuitsAgreeWithFullCheck) {
    std::vector<std::string> names = suite_names();
    names.push_back("D4");
    for (const auto& name : names) {
        const auto& [c, fr] = fixture(name);
        if (c.dim() < 3) {
            EXPECT_THROW(primitive_circuit_violation(c, gains_from_d2_stars(c, fr, true)), InvalidInput);
            continue;
        }
        for (const GainFunction& g : {gains_from_d2_stars(c, fr, true), gains_from_d3_stars(c, fr)}) {
            if (g.edges.empty()) continue;
            bool full = propagate(c, g, seed_orbit(c)).scaling.has_value();
            bool primitive = !primitive_circuit_violation(c, g).has_value();
            EXPECT_EQ(full, primitive) << name;
        }
    }
}

TEST(Scaling, CorruptedGainGivesWitnessCircuit) {
    for (const std::string name : {"A2", "FCC", "BCC"}) {
        const auto& [c, fr] = fixture(name);
        GainFunction g = gains_from_d2_stars(c, fr, true);
        ASSERT_FALSE(g.edges.empty());
        GainEdge bad = g.edges.front();
        GainFunction corrupted = g;
        for (auto& e : corrupted.edges) {
            if (e.via != bad.via) continue;
            if (e.from == bad.from && e.to == bad.to) e.gain *= 2;
            else if (e.from == bad.to && e.to == bad.from) e.gain /= 2;
        }
        PropagationResult r = propagate(c, corrupted, seed_orbit(c));
        EXPECT_FALSE(r.scaling) << name;
        ASSERT_FALSE(r.witness.empty()) << name;
        EXPECT_EQ(r.witness.front().from, r.witness.back().to) << name;
        bool contains = false;
        for (const auto& e : r.witness)
            contains = contains || (e.via == bad.via && ((e.from == bad.from && e.to == bad.to) || (e.from == bad.to && e.to == bad.from)));
        EXPECT_TRUE(contains) << name;
        if (c.dim() >= 3) EXPECT_TRUE(primitive_circuit_violation(c, corrupted).has_value()) << name;
    }
}

TEST(Scaling, SquareGridAcceptsAnyOrbitScaling) {
    const auto& [c, fr] = fixture("Z2");
    ScalingAssignment s;
    int k = 1;
    for (int o : c.orbits_of_dim(1)) s[o] = k++;
    EXPECT_TRUE(verify_canonical(c, s, fr).ok);
}

TEST(Scaling, BrokenTripleStar) {
    const auto& [c, fr] = fixture("A2");
    ScalingAssignment ones = *propagate(c, gains_from_d2_stars(c, fr, true), seed_orbit(c)).scaling;
    EXPECT_TRUE(verify_canonical(c, ones, fr).ok);
    ScalingAssignment bad = ones;
    bad.begin()->second *= 2;
    CanonicalCheck chk = verify_canonical(c, bad, fr);
    EXPECT_FALSE(chk.ok);
    EXPECT_TRUE(chk.violated.has_value());
}

TEST(Scaling, RescaledFrameKeepsCanonicalScaling) {
    const auto& [c, fr] = fixture("BCC");
    ScalingAssignment s = *propagate(c, gains_from_d2_stars(c, fr, true), seed_orbit(c)).scaling;
    NormalFrame scaled = fr;
    int orb = scaled.normal.begin()->first;
    scaled.normal[orb] = Rational(5, 2) * scaled.normal[orb];
    s[orb] = s[orb] / Rational(5, 2);
    EXPECT_TRUE(verify_canonical(c, s, scaled).ok);
}

TEST(Scaling, LocalVerification) {
    const auto& [c, fr] = fixture("A2");
    ScalingAssignment s = *propagate(c, gains_from_d2_stars(c, fr, true), seed_orbit(c)).scaling;
    auto by_orbit = [&](const FaceRef& f) { return s.at(f.orbit); };
    EXPECT_TRUE(verify_canonical_local(c, by_orbit, fr, 2).ok);
    auto perturbed = [&](const FaceRef& f) {
        bool at_origin = std::all_of(f.shift.begin(), f.shift.end(), [](long x) { return x == 0; });
        return at_origin && f.orbit == s.begin()->first ? Rational(3) : s.at(f.orbit);
    };
    EXPECT_FALSE(verify_canonical_local(c, perturbed, fr, 2).ok);
}

TEST(Scaling, CoherenceOnFourDimensionalLattices) {
    EXPECT_TRUE(coherence_instances(fixture("D4").complex).empty());
    const auto& [c, fr] = fixture("pyramids");
    auto instances = coherence_instances(c);
    ASSERT_FALSE(instances.empty());
    for (const auto& inst : instances) {
        CoherenceResult r = test_coherence(c, dual_cell(c, inst.pi_face), dual_cell(c, inst.d4_face), fr);
        EXPECT_TRUE(r.coherent);
        auto never = [](const Vec&, const Vec&) { return false; };
        EXPECT_FALSE(test_coherence(c, dual_cell(c, inst.pi_face), dual_cell(c, inst.d4_face), fr, never).coherent);
    }
}
