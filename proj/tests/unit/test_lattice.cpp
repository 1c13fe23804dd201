#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "paratile/paratile.hpp"

using namespace paratile;

namespace {

std::set<IntVec> relevant_set(const Mat& gram) {
    auto rv = relevant_vectors(Lattice::from_gram(gram));
    return {rv.begin(), rv.end()};
}

std::map<std::size_t, std::size_t> belt_histogram(const Polytope& p) {
    std::map<std::size_t, std::size_t> h;
    for (const auto& b : belts_of(p)) ++h[b.length()];
    return h;
}

}  // namespace

TEST(Lattice, GramValidation) {
    EXPECT_THROW(Lattice::from_gram({to_vec({1, 2}), to_vec({2, 1})}), NotPositiveDefinite);
    EXPECT_THROW(Lattice::from_gram({to_vec({1, 0}), to_vec({1, 1})}), InvalidInput);
    EXPECT_THROW(Lattice::from_basis({to_vec({1, 2}), to_vec({2, 4})}), InvalidInput);
    Lattice b = Lattice::from_basis({to_vec({1, 1}), to_vec({0, 1})});
    EXPECT_EQ(b.gram, (Mat{to_vec({1, 1}), to_vec({1, 2})}));
}

TEST(Lattice, LdlReconstructsGram) {
    Mat g = oracle::from_ints({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
    Ldl f = ldl(g);
    Mat d(3, zero_vec(3));
    for (std::size_t i = 0; i < 3; ++i) d[i][i] = f.d[i];
    EXPECT_EQ(mat_mul(mat_mul(f.l, d), transpose(f.l)), g);
}

TEST(Lattice, ShortVectors) {
    EXPECT_EQ(short_vectors(identity(2), 1).size(), 5u);
    EXPECT_EQ(short_vectors(oracle::from_ints({{2, -1}, {-1, 2}}), 2).size(), 7u);
}

TEST(Lattice, SizeReductionIsUnimodular) {
    Mat g = oracle::from_ints({{1, 5}, {5, 26}});
    Mat reduced;
    Mat u = size_reduce(g, &reduced);
    EXPECT_EQ(abs(determinant(u)), 1);
    EXPECT_EQ(mat_mul(mat_mul(transpose(u), g), u), reduced);
    EXPECT_EQ(reduced, identity(2));
}

TEST(Lattice, RelevantVectorsSquareGrid) {
    EXPECT_EQ(relevant_set(identity(2)), (std::set<IntVec>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));
}

TEST(Lattice, RelevantVectorsHexagonalFrozen) {
    EXPECT_EQ(relevant_set(oracle::from_ints({{2, 1}, {1, 2}})),
              (std::set<IntVec>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}));
}

TEST(Lattice, RelevantVectorsAgreeWithCosetOracle) {
    for (const auto& l : oracle::lattice_suite()) {
        auto expected = oracle::relevant_vectors(l.gram);
        std::set<IntVec> want(expected.begin(), expected.end());
        EXPECT_EQ(relevant_set(l.gram), want) << l.name;
    }
    auto d4 = oracle::relevant_vectors(oracle::d4_gram(), 2);
    EXPECT_EQ(relevant_set(oracle::d4_gram()), std::set<IntVec>(d4.begin(), d4.end()));
    EXPECT_EQ(oracle::relevant_vectors(oracle::lattice_suite()[3].gram).size(), 12u);
}

TEST(Lattice, RelevantVectorsRandomAgainstOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
        Mat g = oracle::random_pd_gram(d, rng, 1);
        Mat reduced;
        size_reduce(g, &reduced);
        auto expected = oracle::relevant_vectors(reduced, 3);
        EXPECT_EQ(relevant_set(reduced), std::set<IntVec>(expected.begin(), expected.end())) << "trial " << trial;
    }
}

TEST(Lattice, DvCellFacetCounts) {
    std::map<std::string, std::size_t> facets{{"Z2", 4}, {"A2", 6}, {"Z3", 6}, {"FCC", 12}, {"BCC", 14}, {"HEX", 8}};
    for (const auto& l : oracle::lattice_suite()) {
        Polytope p = dv_cell(Lattice::from_gram(l.gram));
        EXPECT_EQ(p.num_facets(), facets.at(l.name)) << l.name;
        EXPECT_TRUE(venkov_check(p).ok()) << l.name;
    }
}

TEST(Lattice, CubeCellIsCentredUnitCube) {
    Polytope p = dv_cell(Lattice::from_gram(identity(3)));
    EXPECT_EQ(p.num_vertices(), 8u);
    for (const auto& v : p.vertices)
        for (const auto& x : v) EXPECT_EQ(abs(x), Rational(1, 2));
}

TEST(Lattice, RhombicDodecahedronCombinatorics) {
    Polytope p = dv_cell(Lattice::from_gram(oracle::lattice_suite()[3].gram));
    FaceLattice fl = face_lattice(p);
    EXPECT_EQ(fl.count(0), 14u);
    EXPECT_EQ(fl.count(1), 24u);
    EXPECT_EQ(belt_histogram(p), (std::map<std::size_t, std::size_t>{{6, 4}}));
}

TEST(Lattice, Belts) {
    EXPECT_EQ(belt_histogram(dv_cell(Lattice::from_gram(identity(3)))), (std::map<std::size_t, std::size_t>{{4, 3}}));
    Polytope prism = dv_cell(Lattice::from_gram(oracle::lattice_suite()[5].gram));
    EXPECT_EQ(belt_histogram(prism), (std::map<std::size_t, std::size_t>{{4, 3}, {6, 1}}));
}

TEST(Lattice, TruncatedOctahedronPassesVenkov) {
    Polytope p = dv_cell(Lattice::from_gram(oracle::lattice_suite()[4].gram));
    VenkovReport v = venkov_check(p);
    EXPECT_TRUE(v.centrally_symmetric);
    EXPECT_TRUE(v.facets_centrally_symmetric);
    EXPECT_TRUE(v.belts_ok);
    EXPECT_EQ(p.num_vertices(), 24u);
}

TEST(Lattice, TetrahedronIsNotCentrallySymmetric) {
    Polytope t = dual_description({to_vec({0, 0, 0}), to_vec({1, 0, 0}), to_vec({0, 1, 0}), to_vec({0, 0, 1})});
    EXPECT_FALSE(venkov_check(t).centrally_symmetric);
}

TEST(Lattice, FacetVectorsAreRelevantVectors) {
    for (const auto& l : oracle::lattice_suite()) {
        Lattice lat = Lattice::from_gram(l.gram);
        Polytope p = dv_cell(lat);
        std::set<IntVec> fv;
        for (std::size_t f = 0; f < p.num_facets(); ++f) fv.insert(to_intvec(facet_vector(p, f)));
        EXPECT_EQ(fv, relevant_set(l.gram)) << l.name;
    }
}

TEST(LatticeProperty, RandomFacetBound) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        Lattice lat = Lattice::from_gram(oracle::random_pd_gram(d, rng));
        Polytope p = dv_cell(lat);
        EXPECT_LE(p.num_facets(), 2 * ((1u << d) - 1)) << "trial " << trial;
        EXPECT_TRUE(venkov_check(p).ok()) << "trial " << trial;
        for (const auto& b : belts_of(p)) EXPECT_TRUE(b.length() == 4 || b.length() == 6);
    }
}

TEST(Lattice, DimensionCap) {
    EXPECT_THROW(relevant_vectors(Lattice::from_gram(identity(6))), DimensionLimit);
}
