#include "paratile/tiling.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "paratile/lp.hpp"

namespace paratile {

namespace {

// gcd of the maximal minors; 1 exactly when the vectors span the integer lattice.
Integer minor_gcd(const std::vector<Vec>& vecs, std::size_t d) {
    Integer g = 0;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (g == 1) return;
        if (pick.size() == d) {
            Mat m;
            for (std::size_t i : pick) m.push_back(vecs[i]);
            Rational det = abs(determinant(m));
            Integer v = det.get_num();
            g = gcd(g, v);
            return;
        }
        for (std::size_t i = from; i < vecs.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return g;
}

std::vector<Vec> face_vertex_list(const Polytope& p, const Bitset& verts) {
    std::vector<Vec> out;
    for (std::size_t v = 0; v < p.vertices.size(); ++v)
        if (verts[v]) out.push_back(p.vertices[v]);
    return out;
}

std::optional<IntVec> translation_between(const std::vector<Vec>& from, const std::vector<Vec>& to) {
    if (from.size() != to.size() || from.empty()) return std::nullopt;
    Vec t = to[0] - from[0];
    if (!is_integral(t)) return std::nullopt;
    for (std::size_t i = 1; i < from.size(); ++i)
        if (from[i] + t != to[i]) return std::nullopt;
    return to_intvec(t);
}

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVec neg(const IntVec& a) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

std::vector<Vec> to_points(const std::vector<IntVec>& pts) {
    std::vector<Vec> out;
    for (const auto& p : pts) out.push_back(to_vec(p));
    return out;
}

}  // namespace

// ---- complex ------------------------------------------------------------------------

std::vector<int> TilingComplex::orbits_of_dim(int k) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (orbits[i].dim == k) out.push_back(static_cast<int>(i));
    return out;
}

int TilingComplex::tile_orbit() const { return orbits_of_dim(static_cast<int>(dim())).at(0); }

FaceRef TilingComplex::ref_of(int face, const IntVec& mu) const {
    return {orbit_of_face.at(static_cast<std::size_t>(face)), add(offset_of_face[face], mu)};
}

std::vector<Vec> TilingComplex::vertices_of(const FaceRef& f) const {
    std::vector<Vec> out;
    Vec s = to_vec(f.shift);
    for (const auto& v : orbits.at(static_cast<std::size_t>(f.orbit)).rep_vertices) out.push_back(v + s);
    return out;
}

std::vector<IntVec> TilingComplex::tiles_of(const FaceRef& f) const {
    std::vector<IntVec> out;
    for (const auto& t : orbits.at(static_cast<std::size_t>(f.orbit)).tiles) out.push_back(add(t, f.shift));
    std::sort(out.begin(), out.end());
    return out;
}

FaceRef TilingComplex::rep(int orbit) const { return {orbit, IntVec(dim(), 0)}; }

TilingComplex build_complex(const Lattice& lat) { return build_complex(lat, dv_cell(lat)); }

TilingComplex build_complex(const Lattice& lat, const Polytope& proto_in) {
    const std::size_t d = lat.dim;
    if (d > 5) throw DimensionLimit("build_complex: dimension above 5");
    if (proto_in.ambient != d || proto_in.dim != static_cast<int>(d))
        throw InvalidInput("build_complex: prototile is not full-dimensional in the lattice space");
    TilingComplex c;
    c.lattice = lat;
    Vec center = vertex_centroid(proto_in.vertices);
    c.prototile = is_zero(center) ? proto_in : translate(proto_in, -center);
    const Polytope& p = c.prototile;

    VenkovReport vr = venkov_check(p);
    if (!vr.ok()) throw VenkovFailure("build_complex: prototile fails the Venkov conditions");
    for (std::size_t f = 0; f < p.facets.size(); ++f)
        if (!is_integral(facet_vector(p, f)))
            throw VenkovFailure("build_complex: facet vector " + to_string(facet_vector(p, f)) +
                                " is not a lattice vector");
    std::vector<Vec> fvecs;
    for (std::size_t f = 0; f < p.facets.size(); ++f) {
        Vec v = facet_vector(p, f);
        if (std::find(fvecs.begin(), fvecs.end(), -v) == fvecs.end()) fvecs.push_back(v);
    }
    if (minor_gcd(fvecs, d) != 1)
        throw VenkovFailure("build_complex: facet vectors span a proper sublattice, translates overlap");

    c.faces = face_lattice(p);
    const std::size_t nfaces = c.faces.faces.size();
    c.orbit_of_face.assign(nfaces, -1);
    c.offset_of_face.assign(nfaces, IntVec(d, 0));

    // Group faces by integral translation; the representative is the lexicographically smallest.
    std::vector<std::vector<Vec>> verts(nfaces);
    for (std::size_t i = 0; i < nfaces; ++i) verts[i] = face_vertex_list(p, c.faces.faces[i].vertices);
    std::vector<std::vector<int>> groups;
    for (std::size_t i = 0; i < nfaces; ++i) {
        if (c.faces.faces[i].dim < 0) continue;
        bool placed = false;
        for (auto& g : groups) {
            int r = g.front();
            if (c.faces.faces[r].dim != c.faces.faces[i].dim) continue;
            if (translation_between(verts[r], verts[i])) {
                g.push_back(static_cast<int>(i));
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({static_cast<int>(i)});
    }
    for (auto& g : groups)
        std::sort(g.begin(), g.end(), [&](int a, int b) { return verts[a] < verts[b]; });
    std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        int da = c.faces.faces[a.front()].dim, db = c.faces.faces[b.front()].dim;
        if (da != db) return da < db;
        return verts[a.front()] < verts[b.front()];
    });
    for (const auto& g : groups) {
        FaceOrbit o;
        o.rep_face = g.front();
        o.dim = c.faces.faces[o.rep_face].dim;
        o.rep_vertices = verts[o.rep_face];
        const int id = static_cast<int>(c.orbits.size());
        for (int m : g) {
            IntVec off = *translation_between(o.rep_vertices, verts[m]);
            o.members.push_back({m, off});
            o.tiles.push_back(neg(off));
            c.orbit_of_face[m] = id;
            c.offset_of_face[m] = off;
        }
        std::sort(o.tiles.begin(), o.tiles.end());
        c.orbits.push_back(std::move(o));
    }

    for (const auto& o : c.orbits) {
        if (o.dim == static_cast<int>(d) - 1 && o.tiles.size() != 2)
            throw VenkovFailure("build_complex: a facet lies in " + std::to_string(o.tiles.size()) + " tiles");
        if (o.dim == static_cast<int>(d) - 2 && o.tiles.size() != 3 && o.tiles.size() != 4)
            throw VenkovFailure("build_complex: a (d-2)-face lies in " + std::to_string(o.tiles.size()) + " tiles");
    }
    return c;
}

// ---- stars and dual cells -----------------------------------------------------------

Star star(const TilingComplex& c, const FaceRef& f) {
    const FaceOrbit& o = c.orbits.at(static_cast<std::size_t>(f.orbit));
    Star s;
    std::set<FaceRef> seen;
    for (const auto& m : o.members) {
        IntVec mu = sub(f.shift, m.offset);  // f - mu = member face of P
        s.tiles.push_back(mu);
        const Bitset& base = c.faces.faces[m.face].vertices;
        for (std::size_t g = 0; g < c.faces.faces.size(); ++g) {
            const Face& fg = c.faces.faces[g];
            if (fg.dim <= o.dim || fg.dim >= static_cast<int>(c.dim())) continue;
            if (!base.is_subset_of(fg.vertices)) continue;
            seen.insert(c.ref_of(static_cast<int>(g), mu));
        }
    }
    s.faces.assign(seen.begin(), seen.end());
    std::sort(s.tiles.begin(), s.tiles.end());
    return s;
}

std::vector<FaceRef> star_faces_of_dim(const TilingComplex& c, const FaceRef& f, int k) {
    std::vector<FaceRef> out;
    for (const auto& g : star(c, f).faces)
        if (c.orbits[g.orbit].dim == k) out.push_back(g);
    return out;
}

DualCell make_dual_cell(const std::vector<IntVec>& verts_in, int combdim) {
    DualCell dc;
    dc.combdim = combdim;
    dc.verts = verts_in;
    std::sort(dc.verts.begin(), dc.verts.end());
    dc.verts.erase(std::unique(dc.verts.begin(), dc.verts.end()), dc.verts.end());
    dc.hull = dual_description(to_points(dc.verts));
    return dc;
}

DualCell dual_cell(const TilingComplex& c, const FaceRef& f) {
    DualCell dc = make_dual_cell(c.tiles_of(f), static_cast<int>(c.dim()) - c.orbits.at(f.orbit).dim);
    dc.face = f;
    return dc;
}

// ---- classification -----------------------------------------------------------------

std::string to_string(FanType t) {
    switch (t) {
        case FanType::A_triangle: return "A_triangle";
        case FanType::B_parallelogram: return "B_parallelogram";
        case FanType::I: return "I";
        case FanType::II: return "II";
        case FanType::III: return "III";
        case FanType::IV: return "IV";
        case FanType::V: return "V";
    }
    return "?";
}

std::string to_string(Dual3Type t) {
    switch (t) {
        case Dual3Type::parallelepiped: return "parallelepiped";
        case Dual3Type::triangular_prism: return "triangular_prism";
        case Dual3Type::octahedron: return "octahedron";
        case Dual3Type::pyramid_over_parallelogram: return "pyramid_over_parallelogram";
        case Dual3Type::simplex: return "simplex";
    }
    return "?";
}

FanType fan_type(Dual3Type t) {
    switch (t) {
        case Dual3Type::parallelepiped: return FanType::I;
        case Dual3Type::triangular_prism: return FanType::II;
        case Dual3Type::octahedron: return FanType::III;
        case Dual3Type::pyramid_over_parallelogram: return FanType::IV;
        case Dual3Type::simplex: return FanType::V;
    }
    return FanType::V;
}

FanType classify_d2(const TilingComplex& c, const FaceRef& f) {
    if (c.orbits.at(f.orbit).dim != static_cast<int>(c.dim()) - 2)
        throw InvalidInput("classify_d2: face is not of dimension d-2");
    std::size_t n = c.orbits[f.orbit].tiles.size();
    if (n == 3) return FanType::A_triangle;
    if (n == 4) return FanType::B_parallelogram;
    throw UnexpectedStarSize("classify_d2: star has " + std::to_string(n) + " tiles");
}

Dual3Type classify_dual3(const DualCell& dc) {
    if (dc.combdim != 3) throw InvalidInput("classify_dual3: combinatorial dimension is not 3");
    const Polytope& h = dc.hull;
    if (h.dim != 3) throw UnclassifiableCell("classify_dual3: hull has dimension " + std::to_string(h.dim));
    std::size_t triangles = 0;
    for (const auto& inc : h.incidence)
        if (inc.count() == 3) ++triangles;
    switch (h.vertices.size()) {
        case 8:
            if (h.facets.size() == 6) return Dual3Type::parallelepiped;
            break;
        case 6:
            if (triangles == 2 && h.facets.size() == 5) return Dual3Type::triangular_prism;
            if (triangles == 8 && h.facets.size() == 8) return Dual3Type::octahedron;
            break;
        case 5:
            if (triangles == 4 && h.facets.size() == 5) return Dual3Type::pyramid_over_parallelogram;
            break;
        case 4: return Dual3Type::simplex;
        default: break;
    }
    throw UnclassifiableCell("classify_dual3: " + std::to_string(h.vertices.size()) + " vertices, " +
                             std::to_string(triangles) + " triangular facets");
}

IrreducibilityResult is_3_irreducible(const TilingComplex& c) {
    IrreducibilityResult r;
    if (c.dim() < 3) return r;
    for (int o : c.orbits_of_dim(static_cast<int>(c.dim()) - 3)) {
        Dual3Type t = classify_dual3(dual_cell(c, c.rep(o)));
        if (t == Dual3Type::parallelepiped || t == Dual3Type::triangular_prism) {
            r.irreducible = false;
            r.witness = o;
            r.witness_type = t;
            return r;
        }
    }
    return r;
}

// ---- parallelogram pairs ------------------------------------------------------------

std::string to_string(ParallelogramPair p) {
    switch (p) {
        case ParallelogramPair::complementary: return "complementary";
        case ParallelogramPair::adjacent: return "adjacent";
        case ParallelogramPair::translate: return "translate";
        case ParallelogramPair::skew: return "skew";
    }
    return "?";
}

namespace {

bool is_parallelogram(const DualCell& dc) {
    return dc.verts.size() == 4 && dc.hull.dim == 2 && is_centrally_symmetric(to_points(dc.verts));
}

// Edge directions of a parallelogram (two primitive directions).
std::vector<Vec> parallelogram_edges(const DualCell& dc) {
    std::vector<Vec> out;
    const Polytope& h = dc.hull;
    for (const auto& inc : h.incidence) {
        std::vector<Vec> e = face_vertex_list(h, inc);
        Vec dir = primitive_integer_oriented(e[1] - e[0]);
        if (std::find(out.begin(), out.end(), dir) == out.end()) out.push_back(dir);
    }
    return out;
}

}  // namespace

ParallelogramPair classify_parallelogram_pair(const DualCell& p1, const DualCell& p2, const DualCell& d4) {
    auto subset = [&](const DualCell& a) {
        return std::includes(d4.verts.begin(), d4.verts.end(), a.verts.begin(), a.verts.end());
    };
    if (!is_parallelogram(p1) || !is_parallelogram(p2) || p1.verts == p2.verts || !subset(p1) || !subset(p2))
        throw NotSubcells("classify_parallelogram_pair: expects two distinct parallelogram subcells");
    std::vector<IntVec> common;
    std::set_intersection(p1.verts.begin(), p1.verts.end(), p2.verts.begin(), p2.verts.end(),
                          std::back_inserter(common));
    std::vector<Vec> all = to_points(p1.verts);
    for (const auto& v : p2.verts) all.push_back(to_vec(v));
    const int aff = affine_dimension(all);
    if (common.size() == 1 && aff == 4) return ParallelogramPair::complementary;
    if (common.size() == 2 && aff == 3) {
        // The common pair must be an edge of both.
        Vec a = to_vec(common[0]), b = to_vec(common[1]);
        auto is_edge = [&](const DualCell& dc) {
            for (const auto& inc : dc.hull.incidence) {
                std::vector<Vec> e = face_vertex_list(dc.hull, inc);
                if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return true;
            }
            return false;
        };
        if (is_edge(p1) && is_edge(p2)) return ParallelogramPair::adjacent;
    }
    if (common.empty()) {
        auto t = translation_between(to_points(p2.verts), to_points(p1.verts));
        if (t && aff == 3) return ParallelogramPair::translate;
        if (aff == 4) {
            std::size_t parallel = 0;
            for (const auto& e1 : parallelogram_edges(p1))
                for (const auto& e2 : parallelogram_edges(p2))
                    if (e1 == e2) ++parallel;
            if (parallel == 1) return ParallelogramPair::skew;
        }
    }
    throw UnclassifiableCell("classify_parallelogram_pair: pair fits none of the four cases");
}

// ---- translates ---------------------------------------------------------------------

std::optional<FaceRef> locate_face(const TilingComplex& c, const std::vector<IntVec>& tiles_in) {
    if (tiles_in.empty()) return std::nullopt;
    std::vector<IntVec> tiles = tiles_in;
    std::sort(tiles.begin(), tiles.end());
    const Polytope& p = c.prototile;
    std::set<Vec> common;
    for (const auto& v : p.vertices) common.insert(v + to_vec(tiles[0]));
    for (std::size_t i = 1; i < tiles.size(); ++i) {
        std::set<Vec> next;
        Vec mu = to_vec(tiles[i]);
        for (const auto& v : p.vertices)
            if (common.count(v + mu)) next.insert(v + mu);
        common = std::move(next);
    }
    if (common.empty()) return std::nullopt;
    Bitset bits(p.vertices.size());
    Vec mu0 = to_vec(tiles[0]);
    for (const auto& v : common) bits.set(static_cast<std::size_t>(p.vertex_index(v - mu0)));
    int face = c.faces.find(bits);
    if (face < 0) return std::nullopt;
    FaceRef ref = c.ref_of(face, tiles[0]);
    if (c.tiles_of(ref) != tiles) return std::nullopt;
    return ref;
}

TranslateIntersection translate_intersection(const TilingComplex& c, const DualCell& dc, const IntVec& t) {
    if (std::all_of(t.begin(), t.end(), [](long x) { return x == 0; }))
        throw InvalidInput("translate_intersection: zero translation");
    const std::size_t d = dc.hull.ambient;
    TranslateIntersection out;
    Polytope moved = translate(dc.hull, to_vec(t));
    out.cell = intersect(dc.hull, moved);
    if (!out.cell) {
        out.separator = separate(dc.hull, moved);
        return out;
    }
    const Polytope& cell = *out.cell;
    std::vector<IntVec> dverts;
    for (const auto& v : cell.vertices) {
        if (!is_integral(v)) throw CertificationFailure("translate_intersection: non-lattice vertex " + to_string(v));
        dverts.push_back(to_intvec(v));
    }
    if (dc.face.orbit >= 0) {
        out.face = locate_face(c, dverts);
        if (!out.face) throw CertificationFailure("translate_intersection: intersection is not a dual cell");
    }
    // Hyperplane N: variables (h, c).
    LpProblem lp;
    lp.nvars = d + 1;
    auto row_for = [&](const Vec& v) {
        Vec r(d + 1);
        for (std::size_t i = 0; i < d; ++i) r[i] = v[i];
        r[d] = -1;
        return r;
    };
    std::set<Vec> in_cell(cell.vertices.begin(), cell.vertices.end());
    for (const auto& v : cell.vertices) lp.add_eq(row_for(v), 0);
    for (const auto& v : dc.hull.vertices)
        if (!in_cell.count(v)) lp.add_le(row_for(v), -1);
    for (const auto& w : moved.vertices)
        if (!in_cell.count(w)) lp.add_ge(row_for(w), 1);
    if (dc.face.orbit >= 0) {
        std::vector<Vec> fv = c.vertices_of(dc.face);
        for (std::size_t i = 1; i < fv.size(); ++i) {
            Vec r = fv[i] - fv[0];
            r.push_back(0);
            lp.add_eq(r, 0);
        }
    }
    Vec sol;
    if (!lp_feasible(lp, &sol))
        throw CertificationFailure("translate_intersection: no hyperplane certifies the face property");
    Vec h(sol.begin(), sol.begin() + static_cast<long>(d));
    if (is_zero(h)) throw CertificationFailure("translate_intersection: degenerate certificate");
    Vec prim = primitive_integer(h);
    Rational scale;
    for (std::size_t i = 0; i < d; ++i)
        if (sgn(h[i]) != 0) {
            scale = prim[i] / h[i];
            break;
        }
    out.separator = {prim, scale * sol[d]};
    return out;
}

// ---- audits -------------------------------------------------------------------------

bool parity_ok(const std::vector<IntVec>& pts) {
    std::set<IntVec> classes;
    for (const auto& p : pts) {
        IntVec k(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) k[i] = ((p[i] % 2) + 2) % 2;
        if (!classes.insert(k).second) return false;
    }
    return true;
}

SkinnyAudit skinny_audit(const TilingComplex& c) {
    if (c.dim() > 5) throw DimensionLimit("skinny_audit: dimension above 5");
    SkinnyAudit a;
    for (std::size_t o = 0; o < c.orbits.size(); ++o) {
        if (c.orbits[o].dim >= static_cast<int>(c.dim())) continue;
        DualCell dc = dual_cell(c, c.rep(static_cast<int>(o)));
        ++a.cells_checked;
        const int id = static_cast<int>(o);
        if (dc.dim() < dc.combdim) a.dimension_deficits.push_back(id);
        if (!parity_ok(dc.verts)) a.parity_violations.push_back(id);
        if (dc.dim() >= 1 && !is_skinny(dc.hull)) a.non_skinny_orbits.push_back(id);
        if (dc.dim() == 3) {
            std::size_t nv = dc.verts.size();
            bool box = nv == 8 && dc.hull.facets.size() == 6 && is_centrally_symmetric(dc.hull.vertices);
            if (nv > 8 || (nv == 8 && !box)) a.oversized_3cells.push_back(id);
        }
    }
    return a;
}

long euler_characteristic(const TilingComplex& c) {
    long chi = 0;
    for (const auto& o : c.orbits) chi += (o.dim % 2 == 0) ? 1 : -1;
    return chi;
}

}  // namespace paratile
