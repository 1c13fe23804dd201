#include <algorithm>
#include <map>
#include <set>

#include "paratile/lp.hpp"
#include "paratile/syssolve.hpp"

namespace paratile {

namespace {

constexpr std::size_t kLift = 5;

Vec u(int i) { return unit_vec(kLift, static_cast<std::size_t>(((i - 1) % 5 + 5) % 5)); }

Vec row(std::initializer_list<long> v) { return to_vec(v); }

void append(Mat& a, const Mat& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

// ---- regions ------------------------------------------------------------------------

Region Region::meet(const Region& o) const {
    Region r = *this;
    append(r.positive, o.positive);
    append(r.nonnegative, o.nonnegative);
    append(r.zero, o.zero);
    return r;
}

bool Region::contains(const Vec& x) const {
    if (is_zero(x)) return false;
    for (const auto& a : positive)
        if (sgn(dot(a, x)) <= 0) return false;
    for (const auto& a : nonnegative)
        if (sgn(dot(a, x)) < 0) return false;
    for (const auto& a : zero)
        if (sgn(dot(a, x)) != 0) return false;
    return true;
}

namespace {

std::size_t region_ambient(const Region& r) {
    for (const Mat* m : {&r.positive, &r.nonnegative, &r.zero})
        if (!m->empty()) return m->front().size();
    return kLift;
}

bool feasible_with(const Region& r, const Mat& extra_ge_one, Vec* witness) {
    std::size_t n = region_ambient(r);
    LpProblem lp;
    lp.nvars = n;
    for (const auto& a : r.positive) lp.add_ge(a, 1);
    for (const auto& a : extra_ge_one) lp.add_ge(a, 1);
    for (const auto& a : r.nonnegative) lp.add_ge(a, 0);
    for (const auto& a : r.zero) lp.add_eq(a, 0);
    return lp_feasible(lp, witness);
}

}  // namespace

bool region_nonempty(const Region& r, Vec* witness) {
    if (!r.positive.empty()) return feasible_with(r, {}, witness);
    std::size_t n = region_ambient(r);
    for (std::size_t i = 0; i < n; ++i)
        for (int s : {1, -1})
            if (feasible_with(r, {Rational(s) * unit_vec(n, i)}, witness)) return true;
    return false;
}

int region_dimension(const Region& r) {
    if (!region_nonempty(r)) return -1;
    std::size_t n = region_ambient(r);
    Mat eqs = r.zero;
    for (const auto& a : r.nonnegative)
        if (!feasible_with(r, {a}, nullptr)) eqs.push_back(a);
    return static_cast<int>(n) - rank(eqs.empty() ? Mat{} : eqs);
}

std::vector<Region> subtract(const Region& r, const Region& cut) {
    // Complement of the cut as a disjoint union: the first violated constraint decides the piece.
    if (cut.positive.empty() && cut.nonnegative.empty() && cut.zero.empty()) return {};
    if (!region_nonempty(r.meet(cut))) return region_nonempty(r) ? std::vector<Region>{r} : std::vector<Region>{};
    std::vector<Region> out;
    Region prefix = r;
    auto emit = [&](Region piece) {
        if (region_nonempty(piece)) out.push_back(std::move(piece));
    };
    for (const auto& a : cut.positive) {
        Region piece = prefix;
        piece.nonnegative.push_back(-a);
        emit(piece);
        prefix.positive.push_back(a);
    }
    for (const auto& a : cut.nonnegative) {
        Region piece = prefix;
        piece.positive.push_back(-a);
        emit(piece);
        prefix.nonnegative.push_back(a);
    }
    for (const auto& a : cut.zero) {
        for (int s : {1, -1}) {
            Region piece = prefix;
            piece.positive.push_back(Rational(s) * a);
            emit(piece);
        }
        prefix.zero.push_back(a);
    }
    return out;
}

bool covered_by(const Region& a, const std::vector<Region>& b) {
    std::vector<Region> rest;
    if (region_nonempty(a)) rest.push_back(a);
    for (const auto& cut : b) {
        std::vector<Region> next;
        for (const auto& piece : rest)
            for (auto& p : subtract(piece, cut)) next.push_back(std::move(p));
        rest = std::move(next);
        if (rest.empty()) return true;
    }
    return rest.empty();
}

// ---- the lifted configuration ----------------------------------------------------------

std::vector<std::pair<std::string, Vec>> lifted_points() {
    std::vector<std::pair<std::string, Vec>> out;
    for (int i = 1; i <= 5; ++i) out.push_back({"u" + std::to_string(i), u(i)});
    for (int i = 1; i <= 5; ++i) {
        int j = i % 5 + 1;
        out.push_back({"u" + std::to_string(i) + "+u" + std::to_string(j), u(i) + u(j)});
    }
    return out;
}

Polytope lifted_configuration() {
    std::vector<Vec> pts;
    for (const auto& [name, p] : lifted_points()) pts.push_back(p);
    return dual_description(pts);
}

Polytope lifted_parallelogram(int i) {
    if (i < 1 || i > 5) throw InvalidInput("lifted_parallelogram: index must be 1..5");
    return dual_description(std::vector<Vec>{u(i - 1), u(i + 1), u(i - 1) + u(i), u(i) + u(i + 1)});
}

Vec rotate(const Vec& x, int steps) {
    std::size_t n = x.size();
    Vec out(n);
    long s = ((steps % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
    for (std::size_t i = 0; i < n; ++i) out[(i + static_cast<std::size_t>(s)) % n] = x[i];
    return out;
}

Region rotate(const Region& r, int steps) {
    Region out;
    for (const auto& a : r.positive) out.positive.push_back(rotate(a, steps));
    for (const auto& a : r.nonnegative) out.nonnegative.push_back(rotate(a, steps));
    for (const auto& a : r.zero) out.zero.push_back(rotate(a, steps));
    return out;
}

namespace {

Vec lifted_point(const std::string& name) {
    for (const auto& [n, p] : lifted_points())
        if (n == name) return p;
    throw InvalidInput("unknown lifted point " + name);
}

Region negate(const Region& r) {
    Region out;
    for (const auto& a : r.positive) out.positive.push_back(-a);
    for (const auto& a : r.nonnegative) out.nonnegative.push_back(-a);
    out.zero = r.zero;
    return out;
}

Region nonvanishing_orthant(int code) {
    Region r;
    for (std::size_t i = 0; i < kLift; ++i)
        r.positive.push_back(Rational((code >> i) & 1 ? -1 : 1) * unit_vec(kLift, i));
    return r;
}

std::vector<Region> orthants() {
    std::vector<Region> out;
    for (int code = 0; code < 32; ++code) out.push_back(nonvanishing_orthant(code));
    return out;
}

std::vector<Region> subtract_all(std::vector<Region> regions, const std::vector<Region>& cuts) {
    for (const auto& cut : cuts) {
        std::vector<Region> next;
        for (const auto& r : regions)
            for (auto& p : subtract(r, cut)) next.push_back(std::move(p));
        regions = std::move(next);
    }
    return regions;
}

bool same_set(const Region& a, const Region& b) { return covered_by(a, {b}) && covered_by(b, {a}); }

std::vector<Vec> rays_of(const std::vector<Region>& regions, std::vector<SurvivingRay>* detail) {
    std::set<Vec> rays;
    for (const auto& r : regions) {
        SurvivingRay s;
        s.region = r;
        s.dimension = region_dimension(r);
        if (s.dimension == 1) {
            Mat eqs = r.zero;
            for (const auto& a : r.nonnegative)
                if (!feasible_with(r, {a}, nullptr)) eqs.push_back(a);
            Vec g = nullspace(eqs, kLift).front();
            Vec w;
            region_nonempty(r, &w);
            if (sgn(dot(g, w)) < 0) g = -g;
            s.generator = primitive_integer(g);
            rays.insert(s.generator);
        }
        if (detail) detail->push_back(s);
    }
    return {rays.begin(), rays.end()};
}

}  // namespace

ConeTest cone_test(int parallelogram, const std::string& vertex) {
    Polytope q = lifted_configuration();
    Polytope p = lifted_parallelogram(parallelogram);
    Vec v = lifted_point(vertex);
    if (contains(p, v)) throw InvalidInput("cone_test: " + vertex + " lies in the parallelogram");
    Cone at = cone_at_vertex(q, v);
    ConeTest t;
    t.parallelogram = parallelogram;
    t.vertex = vertex;
    t.cone = cone_minus_linspace(at, direction_space(p));
    for (const auto& a : t.cone.halfspaces) t.excluded.positive.push_back(-a);
    t.excluded.zero = t.cone.equations;
    return t;
}

std::vector<ConeTest> all_cone_tests() {
    std::vector<ConeTest> out;
    for (int i = 1; i <= 5; ++i) {
        Polytope p = lifted_parallelogram(i);
        for (const auto& [name, v] : lifted_points())
            if (!contains(p, v)) out.push_back(cone_test(i, name));
    }
    return out;
}

SignCover sign_cover(int i) {
    SignCover k;
    Vec s = row({1, 0, 1, 0, 0});
    k.plus.positive = {row({0, 0, 0, 1, 0}), row({0, 0, 0, 0, 1}), -s};
    k.minus = negate(k.plus);
    k.zero.zero = {s};
    k.plus = rotate(k.plus, i - 1);
    k.minus = rotate(k.minus, i - 1);
    k.zero = rotate(k.zero, i - 1);
    return k;
}

std::pair<Region, Region> j_cones(int i) {
    Region plus;
    plus.positive = {row({0, 0, 0, 0, -1}), row({0, 0, 0, -1, 0}), row({-1, 0, -1, -1, -1}), row({1, 0, 1, 0, 0})};
    plus = rotate(plus, i - 1);
    return {plus, negate(plus)};
}

ConePipelineReport cone_test_pipeline() {
    ConePipelineReport rep;
    rep.tests = all_cone_tests();

    // K^1 is exactly what P_2 against u2, u4, u5 leaves of the nonvanishing set.
    std::vector<Region> first;
    for (const auto& t : rep.tests)
        if (t.parallelogram == 2 && (t.vertex == "u2" || t.vertex == "u4" || t.vertex == "u5")) {
            first.push_back(t.excluded);
            first.push_back(negate(t.excluded));
        }
    SignCover k1 = sign_cover(1);
    std::vector<Region> left = subtract_all(orthants(), first);
    bool inside = std::all_of(left.begin(), left.end(),
                              [&](const Region& r) { return covered_by(r, {k1.plus, k1.minus, k1.zero}); });
    bool disjoint = true;
    for (const Region& k : {k1.plus, k1.minus, k1.zero})
        for (const auto& e : first)
            if (region_nonempty(k.meet(e))) disjoint = false;
    rep.sign_cover_derived = first.size() == 6 && inside && disjoint;

    for (const auto& t : rep.tests)
        if (t.parallelogram == 2 && t.vertex == "u4+u5") rep.j_cone_derived = same_set(t.excluded, j_cones(1).first);

    // Opening brackets: one of K^i_+, K^i_-, K^i_0 for every i.
    std::vector<Region> regions = orthants();
    for (int i = 1; i <= 5; ++i) {
        SignCover k = sign_cover(i);
        std::vector<Region> next;
        for (const auto& r : regions)
            for (const Region* part : {&k.plus, &k.minus, &k.zero}) {
                Region m = r.meet(*part);
                if (region_nonempty(m)) next.push_back(std::move(m));
            }
        regions = std::move(next);
    }
    rep.bracket_regions = regions.size();

    std::vector<Region> cuts;
    for (int i = 1; i <= 5; ++i) {
        auto [plus, minus] = j_cones(i);
        cuts.push_back(plus);
        cuts.push_back(minus);
    }
    for (const auto& t : rep.tests) {
        cuts.push_back(t.excluded);
        cuts.push_back(negate(t.excluded));
    }
    regions = subtract_all(std::move(regions), cuts);
    rep.survivor_rays = rays_of(regions, &rep.survivors);

    std::vector<Region> direct_cuts;
    for (const auto& t : rep.tests) {
        direct_cuts.push_back(t.excluded);
        direct_cuts.push_back(negate(t.excluded));
    }
    rep.direct_survivor_rays = rays_of(subtract_all(orthants(), direct_cuts), nullptr);

    std::set<Vec> rays(rep.survivor_rays.begin(), rep.survivor_rays.end());
    rep.cyclic_invariant = true;
    for (const auto& r : rep.survivor_rays)
        if (!rays.count(rotate(r))) rep.cyclic_invariant = false;
    bool all_rays = std::all_of(rep.survivors.begin(), rep.survivors.end(),
                                [](const SurvivingRay& s) { return s.dimension == 1; });
    rep.agrees_with_direct = all_rays && rep.survivor_rays == rep.direct_survivor_rays;
    return rep;
}

// ---- the final case ---------------------------------------------------------------------

FinalCaseReport final_case_check(const Vec& x) {
    if (x.size() != kLift || is_zero(x)) throw InvalidInput("final_case_check: direction must be a nonzero 5-vector");
    FinalCaseReport rep;
    rep.direction = x;
    auto fail = [](const std::string& what) { throw ReproductionFailure("final_case_check: " + what); };

    Projection p({x}, kLift);
    if (p.dropped_coordinates() != std::vector<int>{4}) fail("projection does not land on u1..u4");
    Polytope q = lifted_configuration();
    Polytope image = project(q, {x});
    rep.projected_vertices = image.num_vertices();

    const std::map<std::string, Vec> listed = {
        {"u1", row({1, 0, 0, 0})},     {"u2", row({0, 1, 0, 0})},    {"u3", row({0, 0, 1, 0})},
        {"u4", row({0, 0, 0, 1})},     {"u5", row({1, 1, 1, -1})},   {"u1+u2", row({1, 1, 0, 0})},
        {"u2+u3", row({0, 1, 1, 0})},  {"u3+u4", row({0, 0, 1, 1})}, {"u4+u5", row({1, 1, 1, 0})},
        {"u5+u1", row({2, 1, 1, -1})},
    };
    for (const auto& [name, pt] : lifted_points()) {
        Vec img = p(pt);
        rep.images.push_back({name, img});
        if (listed.at(name) != img) fail("image of " + name + " is " + to_string(img));
        if (image.vertex_index(img) < 0) fail("image of " + name + " is not a vertex");
    }
    if (rep.projected_vertices != 10) fail("projection does not have ten vertices");

    rep.segment = {row({1, 1, 1, 0}), Vec{1, Rational(1, 2), 1, 0}};
    rep.translation = p(u(4) + u(5) - u(1) - u(2));
    Polytope shifted = translate(image, rep.translation);
    rep.segment_in_image = contains(image, rep.segment[0]) && contains(image, rep.segment[1]);
    rep.segment_in_translate = contains(shifted, rep.segment[0]) && contains(shifted, rep.segment[1]);
    if (!rep.segment_in_image) fail("segment is not in the projection");
    if (!rep.segment_in_translate) fail("segment is not in the translated projection");

    rep.forced_image = p(u(1)) + rep.translation;
    rep.forced_vertex = u(4) + u(5) - u(2);
    if (rep.forced_image != row({1, 0, 1, 0}) || p(rep.forced_vertex) != rep.forced_image)
        fail("forced point is not [1,0,1,0]");
    rep.forced_on_segment_line = affine_dimension({rep.segment[0], rep.segment[1], rep.forced_image}) == 1;
    if (!rep.forced_on_segment_line) fail("forced point is off the line of the segment");

    Polytope second = lifted_parallelogram(2);
    rep.prism = second.vertices;
    rep.prism.push_back(u(4) + u(5));
    rep.prism.push_back(rep.forced_vertex);
    Polytope prism = dual_description(rep.prism);
    std::multiset<std::size_t> facet_sizes;
    for (const auto& inc : prism.incidence) facet_sizes.insert(inc.count());
    rep.prism_is_triangular = prism.dim == 3 && prism.num_vertices() == 6 &&
                              facet_sizes == std::multiset<std::size_t>{3, 3, 4, 4, 4};
    if (!rep.prism_is_triangular) fail("the six points are not a triangular prism");

    // The dual 4-cell forced by a triangular prism with a parallelogram subcell.
    std::vector<Vec> eight = {row({0, 0, 0, 0}), row({1, 0, 0, 0}), row({1, 1, 0, 0}), row({1, 1, 0, 1}),
                              row({0, 0, 1, 0}), row({0, 1, 1, 0}), row({0, 1, 1, 1}), row({1, 1, 1, 1})};
    Polytope cell = dual_description(eight);
    if (cell.dim != 4) fail("the eight-vertex cell is not 4-dimensional");
    rep.forced_vertex_count = cell.num_vertices();

    std::set<Vec> known;
    for (int i = 1; i <= 5; ++i)
        for (const auto& v : lifted_parallelogram(i).vertices) known.insert(v);
    rep.known_vertex_count = known.size();

    rep.report.kind = ContradictionKind::vertex_count;
    Finding f;
    f.kind = ContradictionKind::vertex_count;
    f.note = "a triangular prism forces " + std::to_string(rep.forced_vertex_count) +
             " vertices, the five parallelograms have " + std::to_string(rep.known_vertex_count);
    rep.report.findings.push_back(f);
    rep.report.resolved = rep.forced_vertex_count != rep.known_vertex_count;
    if (!rep.report.resolved) fail("vertex counts agree");
    return rep;
}

// ---- reduction identities ----------------------------------------------------------------

bool check_reduction_identities(const SolutionFamily& sf) {
    if (sf.system.kind != SystemKind::five_ten) return false;
    struct Affine {
        Vec c;
        Vec k;
        Affine operator+(const Affine& o) const {
            Affine r{c + o.c, k};
            for (std::size_t i = 0; i < k.size(); ++i) r.k[i] += o.k[i];
            return r;
        }
        Affine operator-(const Affine& o) const {
            Affine r{c - o.c, k};
            for (std::size_t i = 0; i < k.size(); ++i) r.k[i] -= o.k[i];
            return r;
        }
        bool operator==(const Affine& o) const { return c == o.c && k == o.k; }
    };
    auto label = [&](int i, int j) {
        int l = five_ten_vertex(std::min(i, j) - 1, std::max(i, j) - 1);
        Affine a{sf.particular[static_cast<std::size_t>(l)], Vec(sf.coefficients.size())};
        for (std::size_t k = 0; k < sf.coefficients.size(); ++k) a.k[k] = sf.coefficients[k][static_cast<std::size_t>(l)];
        return a;
    };
    Affine e = label(2, 5) + label(1, 3);
    // Vertex of the lifted configuration u_i corresponds to E + y_i.
    const std::array<std::pair<int, int>, 5> single = {{{2, 5}, {1, 3}, {2, 4}, {3, 5}, {1, 4}}};
    std::array<Affine, 5> y;
    for (int i = 0; i < 5; ++i) y[static_cast<std::size_t>(i)] = label(single[i].first, single[i].second) - e;
    auto of = [&](const std::string& name) -> Affine {
        if (name.find('+') == std::string::npos) return e + y[static_cast<std::size_t>(name[1] - '1')];
        return e + y[static_cast<std::size_t>(name[1] - '1')] + y[static_cast<std::size_t>(name[4] - '1')];
    };
    // u_i + u_{i+1} is v_{i,i+1}.
    for (int i = 1; i <= 5; ++i) {
        int j = i % 5 + 1;
        if (!(of("u" + std::to_string(i) + "+u" + std::to_string(j)) == label(i, j))) return false;
    }
    // P_i maps onto the hyperedge of i with its diagonals.
    for (int i = 1; i <= 5; ++i) {
        int prev = (i + 3) % 5 + 1, next = i % 5 + 1;
        std::string a = "u" + std::to_string(prev), b = "u" + std::to_string(next);
        std::string ab = "u" + std::to_string(prev) + "+u" + std::to_string(i);
        std::string bc = "u" + std::to_string(i) + "+u" + std::to_string(next);
        if (!(of(a) + of(bc) == of(b) + of(ab))) return false;
        std::set<int> images;
        for (const auto& name : {a, b, ab, bc})
            for (int s = 1; s <= 5; ++s)
                for (int t = s + 1; t <= 5; ++t)
                    if (of(name) == label(s, t) && (s == i || t == i)) images.insert(five_ten_vertex(s - 1, t - 1));
        if (images.size() != 4) return false;
    }
    return true;
}

}  // namespace paratile
