#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "paratile/paratile.hpp"

using namespace paratile;

namespace {

std::vector<Vec> cube_points(std::size_t d) {
    std::vector<Vec> pts;
    for (std::size_t mask = 0; mask < (1u << d); ++mask) {
        Vec v(d);
        for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1u;
        pts.push_back(v);
    }
    return pts;
}

std::vector<Vec> affine_regular_hexagon() {
    return {to_vec({1, 0}), to_vec({1, 1}), to_vec({0, 1}), to_vec({-1, 0}), to_vec({-1, -1}), to_vec({0, -1})};
}

}  // namespace

TEST(Rational, PrimitiveIntegerAndParallel) {
    Vec v{Rational(2, 3), Rational(-4, 9), 0};
    EXPECT_EQ(primitive_integer(v), to_vec({3, -2, 0}));
    EXPECT_EQ(primitive_integer_oriented(-v), to_vec({3, -2, 0}));
    auto r = parallel_ratio(to_vec({2, 4}), to_vec({1, 2}));
    ASSERT_TRUE(r);
    EXPECT_EQ(*r, 2);
    EXPECT_FALSE(parallel_ratio(to_vec({2, 4}), to_vec({1, 3})));
}

TEST(Rational, RrefNullspaceSolve) {
    Mat a{to_vec({1, 2, 3}), to_vec({2, 4, 6}), to_vec({1, 0, 1})};
    EXPECT_EQ(rank(a), 2);
    Mat ns = nullspace(a, 3);
    ASSERT_EQ(ns.size(), 1u);
    EXPECT_TRUE(is_zero(mat_vec(a, ns[0])));
    auto x = solve_particular(a, to_vec({6, 12, 2}), 3);
    ASSERT_TRUE(x);
    EXPECT_EQ(mat_vec(a, *x), to_vec({6, 12, 2}));
    EXPECT_FALSE(solve_particular(a, to_vec({6, 11, 2}), 3));
}

TEST(Rational, DeterminantAndInverse) {
    Mat a{to_vec({2, 1}), to_vec({1, 2})};
    EXPECT_EQ(determinant(a), 3);
    auto inv = inverse(a);
    ASSERT_TRUE(inv);
    EXPECT_EQ(mat_mul(a, *inv), identity(2));
    EXPECT_FALSE(inverse(Mat{to_vec({1, 2}), to_vec({2, 4})}));
}

TEST(Rational, LatticeCoefficients) {
    std::vector<Vec> gens{to_vec({2, 0}), to_vec({1, 1})};
    auto c = lattice_coefficients(gens, to_vec({3, 1}));
    ASSERT_TRUE(c);
    EXPECT_EQ((*c)[0], 1);
    EXPECT_EQ((*c)[1], 1);
    EXPECT_FALSE(lattice_coefficients(gens, to_vec({1, 0})));
    std::vector<Vec> halves{Vec{Rational(1, 2), 0}, Vec{0, Rational(1, 3)}};
    EXPECT_TRUE(lattice_coefficients(halves, Vec{Rational(3, 2), Rational(-2, 3)}));
}

TEST(Rational, LatticeCoefficientsAgainstRandomCombinations) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> e(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Vec> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(to_vec({e(rng), e(rng), e(rng), e(rng)}));
        Vec target = zero_vec(4);
        for (const auto& g : gens) target += Rational(e(rng)) * g;
        auto c = lattice_coefficients(gens, target);
        ASSERT_TRUE(c);
        Vec back = zero_vec(4);
        for (std::size_t k = 0; k < gens.size(); ++k) back += Rational((*c)[k]) * gens[k];
        EXPECT_EQ(back, target);
    }
}

TEST(Lp, FeasibilityAndOptimum) {
    LpProblem p;
    p.nvars = 2;
    p.add_le(to_vec({1, 1}), 4);
    p.add_ge(to_vec({1, 0}), 1);
    p.add_ge(to_vec({0, 1}), 0);
    p.objective = to_vec({1, 2});
    LpResult r = solve_lp(p);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.value, 7);
    p.add_ge(to_vec({1, 1}), 5);
    EXPECT_FALSE(lp_feasible(p));
    LpProblem u;
    u.nvars = 1;
    u.add_ge(to_vec({1}), 0);
    u.objective = to_vec({1});
    EXPECT_EQ(solve_lp(u).status, LpStatus::unbounded);
}

TEST(Lp, StrictHomogeneous) {
    Vec w;
    EXPECT_TRUE(strict_homogeneous_feasible({to_vec({1, 0}), to_vec({0, 1})}, {}, 2, &w));
    EXPECT_LT(w[0], 0);
    EXPECT_FALSE(strict_homogeneous_feasible({to_vec({1, 0}), to_vec({-1, 0})}, {}, 2));
}

TEST(Polytope, CubeBothDescriptions) {
    Polytope c = dual_description(cube_points(3));
    EXPECT_EQ(c.dim, 3);
    EXPECT_EQ(c.num_vertices(), 8u);
    EXPECT_EQ(c.num_facets(), 6u);
    for (std::size_t f = 0; f < c.num_facets(); ++f) EXPECT_EQ(c.incidence[f].count(), 4u);
    FaceLattice fl = face_lattice(c);
    EXPECT_EQ(fl.count(0), 8u);
    EXPECT_EQ(fl.count(1), 12u);
    EXPECT_EQ(fl.count(2), 6u);
    Polytope back = dual_description(c.facets, c.equations, 3);
    EXPECT_EQ(back.vertices, c.vertices);
}

TEST(Polytope, CanonicalFormIsDeterministic) {
    auto pts = cube_points(3);
    pts.push_back(to_vec({0, 0, 0}));
    pts.push_back(Vec{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    Polytope a = dual_description(pts);
    std::reverse(pts.begin(), pts.end());
    Polytope b = dual_description(pts);
    EXPECT_EQ(a.vertices, b.vertices);
    EXPECT_EQ(a.facets, b.facets);
    EXPECT_TRUE(std::is_sorted(a.vertices.begin(), a.vertices.end()));
}

TEST(Polytope, LowerDimensionalHull) {
    Polytope sq = dual_description({to_vec({0, 0, 1}), to_vec({1, 0, 1}), to_vec({0, 1, 1}), to_vec({1, 1, 1})});
    EXPECT_EQ(sq.dim, 2);
    EXPECT_EQ(sq.equations.size(), 1u);
    EXPECT_EQ(sq.num_facets(), 4u);
    EXPECT_TRUE(relint_contains(sq, Vec{Rational(1, 2), Rational(1, 2), 1}));
    EXPECT_FALSE(relint_contains(sq, Vec{0, Rational(1, 2), 1}));
    EXPECT_TRUE(contains(sq, Vec{0, Rational(1, 2), 1}));
}

TEST(Polytope, HDescriptionErrors) {
    std::vector<Halfspace> half{{to_vec({-1, 0}), 0}};
    EXPECT_THROW(dual_description(half, {}, 2), UnboundedInput);
    std::vector<Halfspace> empty{{to_vec({1}), -1}, {to_vec({-1}), -1}};
    EXPECT_THROW(dual_description(empty, {}, 1), EmptyInput);
}

TEST(Polytope, FacetCountMatchesBruteForce) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> e(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = 2 + trial % 2;
        std::vector<Vec> pts;
        std::vector<oracle::QVec> raw;
        for (int k = 0; k < 9; ++k) {
            Vec v(d);
            for (auto& x : v) x = e(rng);
            pts.push_back(v);
            raw.push_back(v);
        }
        Polytope p = dual_description(pts);
        if (p.dim != static_cast<int>(d)) continue;
        EXPECT_EQ(p.num_facets(), oracle::facet_count(raw)) << "trial " << trial;
        for (const auto& v : pts) EXPECT_TRUE(contains(p, v));
    }
}

TEST(Polytope, ConesAndProjection) {
    Polytope sq = dual_description(cube_points(2));
    Cone c = cone_at_vertex(sq, to_vec({0, 0}));
    EXPECT_TRUE(relint_contains(c, to_vec({1, 1})));
    EXPECT_FALSE(relint_contains(c, to_vec({1, 0})));
    EXPECT_THROW(cone_at_vertex(sq, Vec{Rational(1, 2), 0}), NotAVertex);
    Cone strip = cone_minus_linspace(c, {to_vec({1, 0})});
    EXPECT_TRUE(relint_contains(strip, to_vec({-5, 1})));

    Projection proj({to_vec({0, 0, 1})}, 3);
    EXPECT_EQ(proj.target_dim(), 2u);
    EXPECT_EQ(proj(to_vec({1, 2, 3})), to_vec({1, 2}));
    Polytope shadow = project(dual_description(cube_points(3)), {to_vec({0, 0, 1})});
    EXPECT_EQ(shadow.num_vertices(), 4u);
}

TEST(Polytope, SeparationAndTranslation) {
    Polytope a = dual_description(cube_points(2));
    Polytope b = translate(a, to_vec({2, 0}));
    Hyperplane h = separate(a, b);
    for (const auto& v : a.vertices) EXPECT_LE(dot(h.normal, v), h.offset);
    for (const auto& v : b.vertices) EXPECT_GE(dot(h.normal, v), h.offset);
    EXPECT_THROW(separate(a, translate(a, Vec{Rational(1, 2), 0})), NotSeparable);
    auto meet = intersect(a, translate(a, Vec{Rational(1, 2), 0}));
    ASSERT_TRUE(meet);
    EXPECT_EQ(meet->num_vertices(), 4u);
}

TEST(Skinny, StandardShapes) {
    EXPECT_TRUE(is_skinny(dual_description(cube_points(3))));
    EXPECT_TRUE(is_skinny(dual_description({to_vec({0, 0, 0}), to_vec({1, 0, 0}), to_vec({0, 1, 0}), to_vec({0, 0, 1})})));
    EXPECT_FALSE(is_skinny(dual_description(affine_regular_hexagon())));
    auto pts = cube_points(3);
    pts.push_back(to_vec({3, 3, 3}));
    EXPECT_FALSE(is_skinny(dual_description(pts)));
}

TEST(Skinny, IlluminationWitness) {
    Polytope hex = dual_description(affine_regular_hexagon());
    bool found = false;
    for (std::size_t i = 0; i < hex.num_vertices() && !found; ++i)
        for (std::size_t j = i + 1; j < hex.num_vertices() && !found; ++j) {
            Vec u;
            if (common_illumination(hex, i, j, &u)) {
                auto lit = illuminated_vertices(hex, u);
                EXPECT_GE(lit.size(), 2u);
                found = true;
            }
        }
    EXPECT_TRUE(found);
}
