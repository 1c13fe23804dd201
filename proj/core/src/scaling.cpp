#include "paratile/scaling.hpp"

#include <algorithm>
#include <map>
#include <deque>
#include <set>

#include "paratile/lp.hpp"

namespace paratile {

namespace {

bool subset_of(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    std::set<Vec> sb(b.begin(), b.end());
    return std::all_of(a.begin(), a.end(), [&](const Vec& v) { return sb.count(v) > 0; });
}

// Rows: one per coordinate, sum_i sign_i·normal_i[r]·s_i = 0.
Mat signed_rows(const std::vector<Vec>& normals, const std::vector<int>& signs) {
    const std::size_t d = normals.front().size();
    Mat rows(d, Vec(normals.size()));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < normals.size(); ++i) rows[r][i] = signs[i] * normals[i][r];
    return rows;
}

// A strictly positive vector in span(kernel), or nullopt.
std::optional<Vec> positive_in_span(const Mat& kernel, std::size_t n) {
    if (kernel.empty()) return std::nullopt;
    LpProblem lp;
    lp.nvars = kernel.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec row(kernel.size());
        for (std::size_t j = 0; j < kernel.size(); ++j) row[j] = kernel[j][i];
        lp.add_ge(row, 1);
    }
    Vec alpha;
    if (!lp_feasible(lp, &alpha)) return std::nullopt;
    Vec s = zero_vec(n);
    for (std::size_t j = 0; j < kernel.size(); ++j) s += alpha[j] * kernel[j];
    return s;
}

struct SignedKernel {
    std::vector<int> signs;
    Mat kernel;
    Vec positive;
};

std::optional<SignedKernel> positive_signed_kernel(const std::vector<Vec>& normals) {
    const std::size_t k = normals.size();
    if (k == 0) return std::nullopt;
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::vector<int> signs(k, 1);
        for (std::size_t i = 1; i < k; ++i)
            if ((mask >> (i - 1)) & 1u) signs[i] = -1;
        Mat ker = nullspace(signed_rows(normals, signs), k);
        auto pos = positive_in_span(ker, k);
        if (pos) return SignedKernel{signs, ker, *pos};
    }
    return std::nullopt;
}

Vec positive_ray(const Vec& v) {
    Vec p = primitive_integer(v);
    for (const auto& x : p)
        if (sgn(x) != 0) return sgn(x) < 0 ? -p : p;
    return p;
}

std::vector<Vec> normals_of(const std::vector<FaceRef>& facets, const NormalFrame& frame) {
    std::vector<Vec> out;
    for (const auto& f : facets) out.push_back(frame.of(f.orbit));
    return out;
}

}  // namespace

NormalFrame make_frame(const TilingComplex& c) {
    NormalFrame frame;
    const Polytope& p = c.prototile;
    for (int o : c.orbits_of_dim(static_cast<int>(c.dim()) - 1)) {
        const Bitset& verts = c.faces.faces[c.orbits[o].rep_face].vertices;
        int facet = -1;
        for (std::size_t f = 0; f < p.facets.size(); ++f)
            if (p.incidence[f] == verts) facet = static_cast<int>(f);
        if (facet < 0) throw InvalidInput("make_frame: facet orbit without prototile facet");
        IntVec t;
        for (const auto& mu : c.orbits[o].tiles)
            if (std::any_of(mu.begin(), mu.end(), [](long x) { return x != 0; })) t = mu;
        const Vec& n = p.facets[facet].normal;
        if (sgn(dot(n, to_vec(t))) <= 0) throw InvalidInput("make_frame: normal does not point to the neighbour");
        frame.normal[o] = n;
        frame.shift[o] = t;
    }
    return frame;
}

Rational StarFamily::value_at(const FaceRef& facet, const Vec& s) const {
    auto it = std::find(facets.begin(), facets.end(), facet);
    if (it == facets.end()) throw InvalidInput("StarFamily: facet not in the star");
    return s[static_cast<std::size_t>(it - facets.begin())];
}

StarFamily star_scaling_d2(const TilingComplex& c, const FaceRef& f, const NormalFrame& frame) {
    const int d = static_cast<int>(c.dim());
    if (c.orbits.at(f.orbit).dim != d - 2) throw InvalidInput("star_scaling_d2: face is not of dimension d-2");
    classify_d2(c, f);
    StarFamily fam;
    fam.face = f;
    fam.facets = star_faces_of_dim(c, f, d - 1);
    auto sk = positive_signed_kernel(normals_of(fam.facets, frame));
    if (!sk) throw NoPositiveSolution("star_scaling_d2: no positive canonical scaling of the star");
    fam.signs = sk->signs;
    fam.generators = sk->kernel;
    fam.unique = fam.generators.size() == 1;
    fam.positive = fam.unique ? positive_ray(fam.generators[0]) : sk->positive;
    return fam;
}

StarFamily star_scaling_d3(const TilingComplex& c, const FaceRef& f, const NormalFrame& frame) {
    const int d = static_cast<int>(c.dim());
    if (c.orbits.at(f.orbit).dim != d - 3) throw InvalidInput("star_scaling_d3: face is not of dimension d-3");
    StarFamily fam;
    fam.face = f;
    fam.facets = star_faces_of_dim(c, f, d - 1);
    const std::size_t n = fam.facets.size();
    Mat rows;
    for (const auto& g : star_faces_of_dim(c, f, d - 2)) {
        std::vector<FaceRef> gf = star_faces_of_dim(c, g, d - 1);
        auto sk = positive_signed_kernel(normals_of(gf, frame));
        if (!sk) throw NoPositiveSolution("star_scaling_d3: a (d-2)-star has no positive scaling");
        Mat local = signed_rows(normals_of(gf, frame), sk->signs);
        for (const auto& lr : local) {
            Vec row(n);
            for (std::size_t i = 0; i < gf.size(); ++i) {
                auto it = std::find(fam.facets.begin(), fam.facets.end(), gf[i]);
                row[static_cast<std::size_t>(it - fam.facets.begin())] += lr[i];
            }
            rows.push_back(row);
        }
    }
    fam.generators = nullspace(rows, n);
    auto pos = positive_in_span(fam.generators, n);
    if (!pos) throw NoPositiveSolution("star_scaling_d3: no positive canonical scaling of the star");
    fam.unique = fam.generators.size() == 1;
    fam.positive = fam.unique ? positive_ray(fam.generators[0]) : *pos;
    return fam;
}

PrimitiveScaling primitive_vertex_scaling(const TilingComplex& c, const FaceRef& vertex, const NormalFrame& frame) {
    const std::size_t d = c.dim();
    if (c.orbits.at(vertex.orbit).dim != 0) throw InvalidInput("primitive_vertex_scaling: not a vertex");
    PrimitiveScaling ps;
    ps.vertex = vertex;
    ps.tiles = c.tiles_of(vertex);
    if (ps.tiles.size() != d + 1)
        throw NotPrimitiveVertex("primitive_vertex_scaling: " + std::to_string(ps.tiles.size()) + " tiles at the vertex");
    Vec x0 = c.vertices_of(vertex).at(0);
    std::vector<FaceRef> edges = star_faces_of_dim(c, vertex, 1);
    if (edges.size() != d + 1) throw NotPrimitiveVertex("primitive_vertex_scaling: vertex degree is not d+1");
    ps.edges.assign(d + 1, Vec());
    for (const auto& e : edges) {
        std::vector<IntVec> et = c.tiles_of(e);
        std::vector<IntVec> missing;
        std::set_difference(ps.tiles.begin(), ps.tiles.end(), et.begin(), et.end(), std::back_inserter(missing));
        if (missing.size() != 1) throw NotPrimitiveVertex("primitive_vertex_scaling: edge misses more than one tile");
        auto j = static_cast<std::size_t>(std::find(ps.tiles.begin(), ps.tiles.end(), missing[0]) - ps.tiles.begin());
        std::vector<Vec> ev = c.vertices_of(e);
        ps.edges[j] = ev[0] == x0 ? ev[1] - x0 : ev[0] - x0;
    }
    for (std::size_t k = 0; k <= d; ++k) {
        Mat a;
        Vec b;
        for (std::size_t j = 0; j <= d; ++j)
            if (j != k) {
                a.push_back(ps.edges[j]);
                b.push_back(1);
            }
        if (rank(a) != static_cast<int>(d)) throw NotPrimitiveVertex("primitive_vertex_scaling: dependent edges");
        ps.simplex_vertices.push_back(*solve_particular(a, b, d));
    }
    std::vector<FaceRef> facets = star_faces_of_dim(c, vertex, static_cast<int>(d) - 1);
    ps.triple_identity = true;
    for (std::size_t k = 0; k <= d; ++k)
        for (std::size_t l = k + 1; l <= d; ++l) {
            std::vector<IntVec> pair{ps.tiles[k], ps.tiles[l]};
            auto it = std::find_if(facets.begin(), facets.end(), [&](const FaceRef& f) { return c.tiles_of(f) == pair; });
            if (it == facets.end()) throw NotPrimitiveVertex("primitive_vertex_scaling: two tiles without a common facet");
            auto lambda = parallel_ratio(ps.simplex_vertices[k] - ps.simplex_vertices[l], frame.of(it->orbit));
            if (!lambda || sgn(*lambda) == 0) {
                ps.triple_identity = false;
                ps.factors.push_back(0);
            } else {
                ps.factors.push_back(abs(*lambda));
            }
            ps.facets.push_back(*it);
            ps.tile_pairs.emplace_back(static_cast<int>(k), static_cast<int>(l));
        }
    // Each (d-2)-face at the vertex lies in three tiles k,l,m; their facet factors must close up.
    for (const auto& g : star_faces_of_dim(c, vertex, static_cast<int>(d) - 2)) {
        std::vector<FaceRef> gf = star_faces_of_dim(c, g, static_cast<int>(d) - 1);
        std::vector<Vec> normals;
        Vec factors;
        for (const auto& f : gf) {
            auto it = std::find(ps.facets.begin(), ps.facets.end(), f);
            if (it == ps.facets.end()) {
                ps.triple_identity = false;
                continue;
            }
            normals.push_back(frame.of(f.orbit));
            factors.push_back(ps.factors[static_cast<std::size_t>(it - ps.facets.begin())]);
        }
        if (normals.size() != 3 || !signed_sum_vanishes(normals, factors)) ps.triple_identity = false;
    }
    return ps;
}

// ---- gains --------------------------------------------------------------------------

void GainFunction::add(int from, int to, int via, const Rational& gain) {
    for (const auto& e : edges)
        if (e.from == from && e.to == to && e.via == via && e.gain == gain) return;
    edges.push_back({from, to, via, gain});
    edges.push_back({to, from, via, 1 / gain});
}

std::optional<Rational> GainFunction::lookup(int from, int to, int via) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to && e.via == via) return e.gain;
    return std::nullopt;
}

GainFunction gains_from_d2_stars(const TilingComplex& c, const NormalFrame& frame, bool bridge_quadruples) {
    GainFunction gf;
    std::vector<std::pair<int, std::vector<int>>> quadruples;
    std::map<int, int> parent;
    auto root = [&](int x) {
        while (parent.count(x) && parent[x] != x) x = parent[x];
        return x;
    };
    auto join = [&](int a, int b) {
        int ra = root(a), rb = root(b);
        if (ra == rb) return false;
        parent[ra] = rb;
        parent[rb] = rb;
        return true;
    };
    for (int o : c.orbits_of_dim(static_cast<int>(c.dim()) - 2)) {
        StarFamily fam = star_scaling_d2(c, c.rep(o), frame);
        if (fam.facets.size() != 3) {
            std::vector<int> orbs;
            for (const auto& f : fam.facets)
                if (std::find(orbs.begin(), orbs.end(), f.orbit) == orbs.end()) orbs.push_back(f.orbit);
            quadruples.push_back({o, orbs});
            continue;
        }
        for (std::size_t i = 0; i < fam.facets.size(); ++i)
            for (std::size_t j = i + 1; j < fam.facets.size(); ++j) {
                int a = fam.facets[i].orbit, b = fam.facets[j].orbit;
                if (a == b) continue;
                gf.add(a, b, o, fam.positive[j] / fam.positive[i]);
                join(a, b);
            }
    }
    if (!bridge_quadruples) return gf;
    // Unit gains across quadruple stars, only between orbits no hexagonal chain links yet.
    for (const auto& [o, orbs] : quadruples)
        for (std::size_t i = 0; i + 1 < orbs.size(); ++i)
            if (join(orbs[i], orbs[i + 1])) gf.add(orbs[i], orbs[i + 1], o, 1);
    return gf;
}

GainFunction gains_from_d3_stars(const TilingComplex& c, const NormalFrame& frame) {
    GainFunction gf;
    const int d = static_cast<int>(c.dim());
    if (d < 3) return gf;
    for (int o : c.orbits_of_dim(d - 3)) {
        StarFamily fam = star_scaling_d3(c, c.rep(o), frame);
        if (!fam.unique) continue;
        for (const auto& g : star_faces_of_dim(c, c.rep(o), d - 2)) {
            std::vector<FaceRef> gfac = star_faces_of_dim(c, g, d - 1);
            for (std::size_t i = 0; i < gfac.size(); ++i)
                for (std::size_t j = i + 1; j < gfac.size(); ++j) {
                    if (gfac[i].orbit == gfac[j].orbit) continue;
                    gf.add(gfac[i].orbit, gfac[j].orbit, g.orbit,
                           fam.value_at(gfac[j], fam.positive) / fam.value_at(gfac[i], fam.positive));
                }
        }
    }
    return gf;
}

GainFunction uniform_gain(const TilingComplex& c) {
    GainFunction gf;
    const int d = static_cast<int>(c.dim());
    for (int o : c.orbits_of_dim(d - 2)) {
        std::vector<FaceRef> fs = star_faces_of_dim(c, c.rep(o), d - 1);
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i + 1; j < fs.size(); ++j)
                if (fs[i].orbit != fs[j].orbit) gf.add(fs[i].orbit, fs[j].orbit, o, 1);
    }
    return gf;
}

PropagationResult propagate(const TilingComplex& c, const GainFunction& gain, int seed) {
    std::vector<int> facets = c.orbits_of_dim(static_cast<int>(c.dim()) - 1);
    if (std::find(facets.begin(), facets.end(), seed) == facets.end())
        throw InvalidInput("propagate: seed is not a facet orbit");
    std::map<int, Rational> s;
    std::map<int, int> parent_edge;  // node -> index of the tree edge entering it
    std::map<int, int> depth;
    s[seed] = 1;
    depth[seed] = 0;
    std::deque<int> queue{seed};
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < gain.edges.size(); ++i) {
            const GainEdge& e = gain.edges[i];
            if (e.from != a || s.count(e.to)) continue;
            s[e.to] = s[a] * e.gain;
            parent_edge[e.to] = static_cast<int>(i);
            depth[e.to] = depth[a] + 1;
            queue.push_back(e.to);
        }
    }
    for (int f : facets)
        if (!s.count(f)) throw DisconnectedGraph("propagate: facet orbit " + std::to_string(f) + " is unreachable");

    PropagationResult out;
    for (const auto& e : gain.edges) {
        if (s[e.from] * e.gain == s[e.to]) continue;
        // Fundamental circuit: lca -> from, the edge, to -> lca.
        std::vector<GainEdge> up_from, up_to;
        int a = e.from, b = e.to;
        while (depth[a] > depth[b]) {
            up_from.push_back(gain.edges[parent_edge[a]]);
            a = gain.edges[parent_edge[a]].from;
        }
        while (depth[b] > depth[a]) {
            up_to.push_back(gain.edges[parent_edge[b]]);
            b = gain.edges[parent_edge[b]].from;
        }
        while (a != b) {
            up_from.push_back(gain.edges[parent_edge[a]]);
            a = gain.edges[parent_edge[a]].from;
            up_to.push_back(gain.edges[parent_edge[b]]);
            b = gain.edges[parent_edge[b]].from;
        }
        std::reverse(up_from.begin(), up_from.end());
        out.witness = up_from;
        out.witness.push_back(e);
        for (const auto& t : up_to) out.witness.push_back({t.to, t.from, t.via, 1 / t.gain});
        return out;
    }
    out.scaling = ScalingAssignment(s.begin(), s.end());
    return out;
}

std::optional<int> primitive_circuit_violation(const TilingComplex& c, const GainFunction& gain) {
    const int d = static_cast<int>(c.dim());
    if (d < 3) throw InvalidInput("primitive_circuit_violation: primitive circuits need dimension 3 or more");
    for (int o : c.orbits_of_dim(d - 3)) {
        FaceRef f = c.rep(o);
        std::vector<FaceRef> nodes = star_faces_of_dim(c, f, d - 1);
        struct LocalEdge {
            std::size_t a, b;
            Rational g;
        };
        std::vector<LocalEdge> edges;
        for (const auto& g : star_faces_of_dim(c, f, d - 2)) {
            std::vector<FaceRef> gf = star_faces_of_dim(c, g, d - 1);
            for (const auto& x : gf)
                for (const auto& y : gf) {
                    if (x == y) continue;
                    std::optional<Rational> t =
                        x.orbit == y.orbit ? std::optional<Rational>(1) : gain.lookup(x.orbit, y.orbit, g.orbit);
                    if (!t) continue;
                    auto ia = static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), x) - nodes.begin());
                    auto ib = static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), y) - nodes.begin());
                    edges.push_back({ia, ib, *t});
                }
        }
        std::vector<std::optional<Rational>> val(nodes.size());
        for (std::size_t root = 0; root < nodes.size(); ++root) {
            if (val[root]) continue;
            val[root] = Rational(1);
            std::deque<std::size_t> queue{root};
            while (!queue.empty()) {
                std::size_t a = queue.front();
                queue.pop_front();
                for (const auto& e : edges) {
                    if (e.a != a) continue;
                    Rational v = *val[a] * e.g;
                    if (!val[e.b]) {
                        val[e.b] = v;
                        queue.push_back(e.b);
                    } else if (*val[e.b] != v) {
                        return o;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool signed_sum_vanishes(const std::vector<Vec>& normals, const Vec& factors) {
    const std::size_t k = normals.size();
    if (k == 0) return true;
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
        Vec sum = factors[0] * normals[0];
        for (std::size_t i = 1; i < k; ++i) {
            Vec term = factors[i] * normals[i];
            if ((mask >> (i - 1)) & 1u) sum -= term;
            else sum += term;
        }
        if (is_zero(sum)) return true;
    }
    return false;
}

CanonicalCheck verify_canonical(const TilingComplex& c, const ScalingAssignment& s, const NormalFrame& frame) {
    CanonicalCheck out;
    const int d = static_cast<int>(c.dim());
    for (int o : c.orbits_of_dim(d - 2)) {
        std::vector<FaceRef> fs = star_faces_of_dim(c, c.rep(o), d - 1);
        std::vector<Vec> normals = normals_of(fs, frame);
        Vec factors;
        for (const auto& f : fs) {
            auto it = s.find(f.orbit);
            if (it == s.end() || sgn(it->second) <= 0) throw InvalidInput("verify_canonical: missing or nonpositive factor");
            factors.push_back(it->second);
        }
        if (!signed_sum_vanishes(normals, factors)) {
            out.ok = false;
            out.violated = c.rep(o);
            return out;
        }
    }
    return out;
}

CanonicalCheck verify_canonical_local(const TilingComplex& c,
                                      const std::function<Rational(const FaceRef&)>& s,
                                      const NormalFrame& frame, int radius) {
    CanonicalCheck out;
    const int d = static_cast<int>(c.dim());
    IntVec lambda(c.dim(), -radius);
    for (;;) {
        for (int o : c.orbits_of_dim(d - 2)) {
            FaceRef g{o, lambda};
            std::vector<FaceRef> fs = star_faces_of_dim(c, g, d - 1);
            Vec factors;
            for (const auto& f : fs) factors.push_back(s(f));
            if (!signed_sum_vanishes(normals_of(fs, frame), factors)) {
                out.ok = false;
                out.violated = g;
                return out;
            }
        }
        std::size_t i = 0;
        while (i < lambda.size() && lambda[i] == radius) lambda[i++] = -radius;
        if (i == lambda.size()) break;
        ++lambda[i];
    }
    return out;
}

// ---- coherence ----------------------------------------------------------------------

bool proportional_scalings(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || a.empty()) return false;
    auto r = parallel_ratio(a, b);
    return r && sgn(*r) > 0;
}

namespace {

std::vector<FaceRef> middle_faces(const TilingComplex& c, const FaceRef& g, const FaceRef& h) {
    const int d = static_cast<int>(c.dim());
    std::vector<Vec> gv = c.vertices_of(g);
    std::vector<FaceRef> out;
    for (const auto& f : star_faces_of_dim(c, h, d - 3))
        if (subset_of(c.vertices_of(f), gv)) out.push_back(f);
    return out;
}

bool is_pyramid_face(const TilingComplex& c, const FaceRef& f) {
    try {
        return classify_dual3(dual_cell(c, f)) == Dual3Type::pyramid_over_parallelogram;
    } catch (const UnclassifiableCell&) {
        return false;
    }
}

}  // namespace

CoherenceResult test_coherence(const TilingComplex& c, const DualCell& pi, const DualCell& d4,
                               const NormalFrame& frame, const ScalingComparator& compare) {
    const int d = static_cast<int>(c.dim());
    if (pi.face.orbit < 0 || d4.face.orbit < 0) throw InvalidInput("test_coherence: dual cells without faces");
    if (c.orbits.at(pi.face.orbit).dim != d - 2 || pi.verts.size() != 4)
        throw InvalidInput("test_coherence: Π is not a parallelogram dual cell");
    if (c.orbits.at(d4.face.orbit).dim != d - 4) throw InvalidInput("test_coherence: D4 is not a dual 4-cell");
    if (!subset_of(c.vertices_of(d4.face), c.vertices_of(pi.face)))
        throw InvalidInput("test_coherence: Π is not a subcell of D4");
    CoherenceResult r;
    r.pyramid_faces = middle_faces(c, pi.face, d4.face);
    if (r.pyramid_faces.size() != 2) throw HypothesisViolated("test_coherence: expected two middle (d-3)-faces");
    for (const auto& f : r.pyramid_faces)
        if (!is_pyramid_face(c, f)) throw HypothesisViolated("test_coherence: a middle dual 3-cell is not a pyramid");
    StarFamily s1 = star_scaling_d3(c, r.pyramid_faces[0], frame);
    StarFamily s2 = star_scaling_d3(c, r.pyramid_faces[1], frame);
    if (!s1.unique || !s2.unique) throw HypothesisViolated("test_coherence: pyramid star scaling is not unique");
    r.quadruple_facets = star_faces_of_dim(c, pi.face, d - 1);
    for (const auto& f : r.quadruple_facets) {
        r.first.push_back(s1.value_at(f, s1.positive));
        r.second.push_back(s2.value_at(f, s2.positive));
    }
    r.coherent = compare(r.first, r.second);
    return r;
}

std::vector<CoherencePair> coherence_instances(const TilingComplex& c) {
    const int d = static_cast<int>(c.dim());
    std::vector<CoherencePair> out;
    if (d < 4) return out;
    for (int o : c.orbits_of_dim(d - 4)) {
        FaceRef h = c.rep(o);
        for (const auto& g : star_faces_of_dim(c, h, d - 2)) {
            if (c.orbits[g.orbit].tiles.size() != 4) continue;
            std::vector<FaceRef> mid = middle_faces(c, g, h);
            if (mid.size() == 2 && is_pyramid_face(c, mid[0]) && is_pyramid_face(c, mid[1]))
                out.push_back({g, h});
        }
    }
    return out;
}

}  // namespace paratile
