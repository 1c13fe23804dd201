#include "paratile/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "paratile/lp.hpp"

namespace paratile {

namespace {

struct DdRay {
    Vec v;
    Bitset zeros;  // constraints (by original index) tight at this ray
};

// Extreme rays of the pointed cone {z : B z <= 0}, B of full column rank k.
Mat pointed_dd(const Mat& b_in, std::size_t k) {
    Mat b;
    for (const auto& row : b_in)
        if (!is_zero(row)) b.push_back(primitive_integer(row));
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    const std::size_t m = b.size();
    if (k == 0) return {};

    // Initial simplicial cone from k independent rows, in insertion order.
    std::vector<std::size_t> basis_rows;
    Mat chosen;
    for (std::size_t i = 0; i < m && chosen.size() < k; ++i) {
        Mat trial = chosen;
        trial.push_back(b[i]);
        if (rank(trial) == static_cast<int>(trial.size())) {
            chosen = std::move(trial);
            basis_rows.push_back(i);
        }
    }
    if (chosen.size() != k) throw InvalidInput("pointed_dd: constraint matrix is not of full column rank");
    auto inv = inverse(chosen);
    std::vector<DdRay> rays;
    std::vector<bool> processed(m, false);
    for (std::size_t j = 0; j < k; ++j) {
        Vec r(k);
        for (std::size_t i = 0; i < k; ++i) r[i] = -(*inv)[i][j];
        DdRay ray{primitive_integer(r), Bitset(m)};
        for (std::size_t t = 0; t < k; ++t)
            if (t != j) ray.zeros.set(basis_rows[t]);
        rays.push_back(std::move(ray));
    }
    for (auto i : basis_rows) processed[i] = true;

    for (std::size_t c = 0; c < m; ++c) {
        if (processed[c]) continue;
        processed[c] = true;
        const Vec& row = b[c];
        std::vector<Rational> s(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(row, rays[i].v);
            int sg = sgn(s[i]);
            if (sg > 0) pos.push_back(i);
            else if (sg < 0) neg.push_back(i);
            else rays[i].zeros.set(c);
        }
        if (pos.empty()) continue;
        std::vector<DdRay> next;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (sgn(s[i]) <= 0) next.push_back(rays[i]);
        for (auto p : pos)
            for (auto n : neg) {
                Bitset common = rays[p].zeros & rays[n].zeros;
                if (common.count() + 2 < k) continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == n) continue;
                    if (common.is_subset_of(rays[r].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                Vec nv = s[p] * rays[n].v - s[n] * rays[p].v;
                DdRay ray{primitive_integer(nv), common};
                ray.zeros.set(c);
                next.push_back(std::move(ray));
            }
        rays = std::move(next);
    }
    Mat out;
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Mat canonical_subspace(const Mat& rows, std::size_t n) {
    Mat out;
    for (const auto& r : rref(rows, n).rows) out.push_back(primitive_integer_oriented(r));
    return out;
}

bool lex_less_halfspace(const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
}

}  // namespace

ConeRays cone_rays(const Mat& inequalities, const Mat& equations, std::size_t n) {
    // Coordinates y on ker(E): x = W^T y.
    Mat w = equations.empty() ? identity(n) : nullspace(equations, n);
    const std::size_t m = w.size();
    ConeRays out;
    if (m == 0) return out;
    Mat wt = transpose(w, n);
    Mat aw;
    for (const auto& a : inequalities) aw.push_back(mat_vec(w, a));  // rows a·w_i
    Mat lin_y = aw.empty() ? identity(m) : nullspace(aw, m);
    Mat comp = orthogonal_complement(lin_y, m);  // z coordinates: y = comp^T z
    const std::size_t k = comp.size();
    for (const auto& l : lin_y) out.lineality.push_back(mat_vec(wt, l));
    out.lineality = canonical_subspace(out.lineality, n);
    if (k == 0) return out;
    Mat compt = transpose(comp, m);
    Mat bz;
    for (const auto& row : aw) bz.push_back(mat_vec(comp, row));
    for (const auto& z : pointed_dd(bz, k)) {
        Vec y = mat_vec(compt, z);
        out.rays.push_back(primitive_integer(mat_vec(wt, y)));
    }
    std::sort(out.rays.begin(), out.rays.end());
    return out;
}

ConeFacets cone_facets(const Mat& rays, const Mat& lineality, std::size_t n) {
    // Polar cone: {a : a·r <= 0, a·l = 0}; its extreme rays are the facet normals.
    ConeRays polar = cone_rays(rays, lineality, n);
    ConeFacets out;
    out.equations = polar.lineality;
    Mat span_rows = rays;
    span_rows.insert(span_rows.end(), lineality.begin(), lineality.end());
    Mat span = span_basis(span_rows, n);
    for (const auto& a : polar.rays) {
        Vec proj = span.empty() ? a : project_onto_span(a, span);
        out.inequalities.push_back(primitive_integer(proj));
    }
    std::sort(out.inequalities.begin(), out.inequalities.end());
    out.inequalities.erase(std::unique(out.inequalities.begin(), out.inequalities.end()),
                           out.inequalities.end());
    return out;
}

// ---- polytopes ----------------------------------------------------------------------

std::vector<int> Polytope::facets_at_vertex(std::size_t v) const {
    std::vector<int> out;
    for (std::size_t f = 0; f < facets.size(); ++f)
        if (incidence[f][v]) out.push_back(static_cast<int>(f));
    return out;
}

int Polytope::vertex_index(const Vec& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) return -1;
    return static_cast<int>(it - vertices.begin());
}

Polytope dual_description(const std::vector<Vec>& points_in) {
    if (points_in.empty()) throw EmptyInput("dual_description: no points");
    const std::size_t n = points_in.front().size();
    if (n > kMaxHullDimension) throw DimensionLimit("dual_description: ambient dimension above 6");
    for (const auto& p : points_in)
        if (p.size() != n) throw InvalidInput("dual_description: points of mixed dimension");
    std::vector<Vec> pts = points_in;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    Mat gens;
    for (const auto& p : pts) {
        Vec g(n + 1);
        g[0] = 1;
        for (std::size_t i = 0; i < n; ++i) g[i + 1] = p[i];
        gens.push_back(g);
    }
    ConeFacets cf = cone_facets(gens, {}, n + 1);

    Polytope out;
    out.ambient = n;
    out.dim = affine_dimension(pts);

    // Equations c·x = d from rows (e0, c): e0 + c·x = 0.
    Mat eq_rows;
    for (const auto& e : cf.equations) {
        Vec r(n + 1);
        for (std::size_t i = 0; i < n; ++i) r[i] = e[i + 1];
        r[n] = -e[0];
        eq_rows.push_back(r);
    }
    for (const auto& r : canonical_subspace(eq_rows, n + 1)) {
        Halfspace h;
        h.normal.assign(r.begin(), r.begin() + static_cast<long>(n));
        h.offset = r[n];
        out.equations.push_back(h);
    }

    // Direction space lin(P - P).
    Mat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    Mat dir = span_basis(diffs, n);

    std::vector<Halfspace> facets;
    for (const auto& a : cf.inequalities) {
        Vec normal(a.begin() + 1, a.end());
        Rational offset = -a[0];
        Vec pn = project_onto_span(normal, dir);
        // Offset from a tight point; the projection shifts the functional by a constant on aff(P).
        const Vec* tight = nullptr;
        for (const auto& p : pts)
            if (dot(normal, p) == offset) {
                tight = &p;
                break;
            }
        if (!tight || is_zero(pn)) continue;
        Vec prim = primitive_integer(pn);
        facets.push_back({prim, dot(prim, *tight)});
    }
    std::sort(facets.begin(), facets.end(), lex_less_halfspace);
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

    // Vertices: points at which tight constraints have full rank.
    Mat eq_normals;
    for (const auto& e : out.equations) eq_normals.push_back(e.normal);
    for (const auto& p : pts) {
        Mat tight = eq_normals;
        for (const auto& f : facets)
            if (dot(f.normal, p) == f.offset) tight.push_back(f.normal);
        if (rank(tight) == static_cast<int>(n)) out.vertices.push_back(p);
    }
    out.facets = std::move(facets);
    out.incidence.assign(out.facets.size(), Bitset(out.vertices.size()));
    for (std::size_t f = 0; f < out.facets.size(); ++f)
        for (std::size_t v = 0; v < out.vertices.size(); ++v)
            if (dot(out.facets[f].normal, out.vertices[v]) == out.facets[f].offset)
                out.incidence[f].set(v);
    return out;
}

Polytope dual_description(const std::vector<Halfspace>& inequalities,
                          const std::vector<Halfspace>& equations, std::size_t n) {
    if (n > kMaxHullDimension) throw DimensionLimit("dual_description: ambient dimension above 6");
    // Homogenize: (t, x) with a·x - b t <= 0, c·x - d t = 0, -t <= 0.
    Mat ineq, eq;
    auto homog = [&](const Halfspace& h) {
        if (h.normal.size() != n) throw InvalidInput("dual_description: halfspace of wrong dimension");
        Vec r(n + 1);
        r[0] = -h.offset;
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = h.normal[i];
        return r;
    };
    for (const auto& h : inequalities) ineq.push_back(homog(h));
    for (const auto& h : equations) eq.push_back(homog(h));
    Vec t_nonneg(n + 1);
    t_nonneg[0] = -1;
    ineq.push_back(t_nonneg);
    ConeRays cr = cone_rays(ineq, eq, n + 1);
    std::vector<Vec> verts;
    bool recession = !cr.lineality.empty();
    for (const auto& r : cr.rays) {
        if (sgn(r[0]) == 0) {
            recession = true;
            continue;
        }
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = r[i + 1] / r[0];
        verts.push_back(v);
    }
    if (verts.empty()) throw EmptyInput("dual_description: the system is infeasible");
    if (recession) throw UnboundedInput("dual_description: the polyhedron is unbounded");
    return dual_description(verts);
}

// ---- cones --------------------------------------------------------------------------

Cone make_cone(const Vec& apex, const Mat& generators, const Mat& lineality) {
    const std::size_t n = apex.size();
    Cone c;
    c.apex = apex;
    Mat gens;
    for (const auto& g : generators)
        if (!is_zero(g)) gens.push_back(g);
    ConeFacets cf = cone_facets(gens, lineality, n);
    c.halfspaces = cf.inequalities;
    c.equations = canonical_subspace(cf.equations, n);
    ConeRays cr = cone_rays(c.halfspaces, c.equations, n);
    c.lineality = cr.lineality;
    c.generators = cr.rays;
    return c;
}

Cone cone_at_vertex(const Polytope& p, const Vec& vertex) {
    int vi = p.vertex_index(vertex);
    if (vi < 0) throw NotAVertex("cone_at_vertex: " + to_string(vertex) + " is not a vertex");
    const std::size_t n = p.ambient;
    Cone c;
    c.apex = vertex;
    for (int f : p.facets_at_vertex(static_cast<std::size_t>(vi))) c.halfspaces.push_back(p.facets[f].normal);
    std::sort(c.halfspaces.begin(), c.halfspaces.end());
    Mat eqs;
    for (const auto& e : p.equations) eqs.push_back(e.normal);
    c.equations = canonical_subspace(eqs, n);
    // Edge directions from the face lattice.
    FaceLattice fl = face_lattice(p);
    for (int e : fl.of_dim(1)) {
        const Bitset& vs = fl.faces[e].vertices;
        if (!vs[static_cast<std::size_t>(vi)]) continue;
        for (std::size_t w = 0; w < p.vertices.size(); ++w)
            if (vs[w] && static_cast<int>(w) != vi) c.generators.push_back(primitive_integer(p.vertices[w] - vertex));
    }
    std::sort(c.generators.begin(), c.generators.end());
    return c;
}

Cone cone_minus_linspace(const Cone& c, const Mat& subspace) {
    Mat lin = c.lineality;
    lin.insert(lin.end(), subspace.begin(), subspace.end());
    return make_cone(c.apex, c.generators, lin);
}

bool relint_contains(const Cone& c, const Vec& x) {
    Vec y = x - c.apex;
    for (const auto& e : c.equations)
        if (sgn(dot(e, y)) != 0) return false;
    for (const auto& a : c.halfspaces)
        if (sgn(dot(a, y)) >= 0) return false;
    return true;
}

// ---- face lattice -------------------------------------------------------------------

std::vector<int> FaceLattice::of_dim(int d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].dim == d) out.push_back(static_cast<int>(i));
    return out;
}

int FaceLattice::find(const Bitset& verts) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].vertices == verts) return static_cast<int>(i);
    return -1;
}

FaceLattice face_lattice(const Polytope& p) {
    FaceLattice fl;
    const std::size_t nv = p.vertices.size();
    std::map<Bitset, int> index;
    Bitset all(nv);
    all.set();
    fl.faces.push_back({all, p.dim, {}});
    index[all] = 0;
    std::vector<int> layer{0};
    for (int d = p.dim; d >= 0; --d) {
        std::vector<int> next;
        for (int fi : layer) {
            Bitset s = fl.faces[fi].vertices;
            std::vector<Bitset> cands;
            if (d == 0) {
                cands.push_back(Bitset(nv));
            } else {
                for (const auto& inc : p.incidence) {
                    Bitset c = s & inc;
                    if (c == s || c.none()) continue;
                    cands.push_back(c);
                }
                std::sort(cands.begin(), cands.end());
                cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
                std::vector<Bitset> maximal;
                for (std::size_t i = 0; i < cands.size(); ++i) {
                    bool dominated = false;
                    for (std::size_t j = 0; j < cands.size() && !dominated; ++j)
                        if (i != j && cands[i].is_proper_subset_of(cands[j])) dominated = true;
                    if (!dominated) maximal.push_back(cands[i]);
                }
                cands = std::move(maximal);
            }
            for (const auto& c : cands) {
                auto it = index.find(c);
                int ci;
                if (it == index.end()) {
                    ci = static_cast<int>(fl.faces.size());
                    fl.faces.push_back({c, d - 1, {}});
                    index[c] = ci;
                    next.push_back(ci);
                } else {
                    ci = it->second;
                }
                fl.faces[fi].subfaces.push_back(ci);
            }
        }
        layer = std::move(next);
    }
    return fl;
}

// ---- projection ---------------------------------------------------------------------

Projection::Projection(const Mat& kernel, std::size_t ambient) : ambient_(ambient) {
    if (rank(kernel) != static_cast<int>(kernel.size()))
        throw KernelNotIndependent("project: kernel vectors are linearly dependent");
    Mat rev;
    for (const auto& k : kernel) {
        if (k.size() != ambient) throw InvalidInput("project: kernel vector of wrong dimension");
        rev.emplace_back(k.rbegin(), k.rend());
    }
    Rref r = rref(rev, ambient);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        reduced_.emplace_back(r.rows[i].rbegin(), r.rows[i].rend());
        pivots_.push_back(static_cast<int>(ambient) - 1 - r.pivots[i]);
    }
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    Mat red2;
    std::vector<int> piv2;
    for (auto i : order) {
        red2.push_back(reduced_[i]);
        piv2.push_back(pivots_[i]);
    }
    reduced_ = std::move(red2);
    pivots_ = std::move(piv2);
}

Vec Projection::operator()(const Vec& x) const {
    if (x.size() != ambient_) throw InvalidInput("Projection: point of wrong dimension");
    Vec y = x;
    for (std::size_t i = 0; i < reduced_.size(); ++i) {
        Rational c = y[pivots_[i]];
        if (sgn(c) != 0) y -= c * reduced_[i];
    }
    Vec out;
    std::size_t next = 0;
    for (std::size_t j = 0; j < ambient_; ++j) {
        if (next < pivots_.size() && pivots_[next] == static_cast<int>(j)) {
            ++next;
            continue;
        }
        out.push_back(y[j]);
    }
    return out;
}

Polytope project(const Polytope& p, const Mat& kernel) {
    Projection proj(kernel, p.ambient);
    std::vector<Vec> pts;
    for (const auto& v : p.vertices) pts.push_back(proj(v));
    return dual_description(pts);
}

// ---- predicates ---------------------------------------------------------------------

bool contains(const Polytope& p, const Vec& x) {
    for (const auto& e : p.equations)
        if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : p.facets)
        if (dot(f.normal, x) > f.offset) return false;
    return true;
}

bool relint_contains(const Polytope& p, const Vec& x) {
    for (const auto& e : p.equations)
        if (dot(e.normal, x) != e.offset) return false;
    for (const auto& f : p.facets)
        if (dot(f.normal, x) >= f.offset) return false;
    return true;
}

Polytope translate(const Polytope& p, const Vec& t) {
    std::vector<Vec> pts;
    for (const auto& v : p.vertices) pts.push_back(v + t);
    return dual_description(pts);
}

std::optional<Polytope> intersect(const Polytope& a, const Polytope& b) {
    if (a.ambient != b.ambient) throw InvalidInput("intersect: ambient dimensions differ");
    std::vector<Halfspace> ineq = a.facets, eq = a.equations;
    ineq.insert(ineq.end(), b.facets.begin(), b.facets.end());
    eq.insert(eq.end(), b.equations.begin(), b.equations.end());
    try {
        return dual_description(ineq, eq, a.ambient);
    } catch (const EmptyInput&) {
        return std::nullopt;
    }
}

Hyperplane separate(const Polytope& a, const Polytope& b) {
    if (a.ambient != b.ambient) throw InvalidInput("separate: ambient dimensions differ");
    const std::size_t n = a.ambient;
    // Variables: h (n), c, tau.
    const std::size_t c_i = n, tau_i = n + 1, nv = n + 2;
    LpProblem lp;
    lp.nvars = nv;
    Vec sum_a(nv), sum_b(nv);
    for (const auto& v : a.vertices) {
        Vec row(nv);
        for (std::size_t i = 0; i < n; ++i) row[i] = v[i];
        row[c_i] = -1;
        lp.add_le(row, 0);  // h·v <= c
        sum_a += row;       // accumulates Σ (h·v - c)
    }
    for (const auto& w : b.vertices) {
        Vec row(nv);
        for (std::size_t i = 0; i < n; ++i) row[i] = -w[i];
        row[c_i] = 1;
        lp.add_le(row, 0);  // c <= h·w
        sum_b += row;       // accumulates Σ (c - h·w)
    }
    sum_a[tau_i] = 1;  // tau + Σ (h·v - c) <= 0
    sum_b[tau_i] = 1;  // tau + Σ (c - h·w) <= 0
    lp.add_le(sum_a, 0);
    lp.add_le(sum_b, 0);
    lp.add_le(unit_vec(nv, tau_i), 1);
    for (std::size_t i = 0; i < n; ++i) {
        lp.add_le(unit_vec(nv, i), 1);
        lp.add_ge(unit_vec(nv, i), -1);
    }
    lp.objective = unit_vec(nv, tau_i);
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::optimal || sgn(r.value) <= 0)
        throw NotSeparable("separate: no hyperplane weakly separates with relative interiors apart");
    Vec h(r.x.begin(), r.x.begin() + static_cast<long>(n));
    Vec prim = primitive_integer(h);
    Rational scale;
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(h[i]) != 0) {
            scale = prim[i] / h[i];
            break;
        }
    return {prim, scale * r.x[c_i]};
}

Mat direction_space(const Polytope& p) {
    Mat eqs;
    for (const auto& e : p.equations) eqs.push_back(e.normal);
    if (eqs.empty()) return identity(p.ambient);
    return nullspace(eqs, p.ambient);
}

std::vector<int> illuminated_vertices(const Polytope& p, const Vec& u) {
    if (u.size() != p.ambient) throw InvalidInput("illuminated_vertices: direction of wrong dimension");
    if (is_zero(u)) throw ZeroDirection("illuminated_vertices: zero direction");
    for (const auto& e : p.equations)
        if (sgn(dot(e.normal, u)) != 0)
            throw DirectionNotInSpan("illuminated_vertices: direction leaves the affine hull");
    std::vector<int> out;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
        bool ok = true;
        for (int f : p.facets_at_vertex(v))
            if (sgn(dot(p.facets[f].normal, u)) >= 0) {
                ok = false;
                break;
            }
        if (ok) out.push_back(static_cast<int>(v));
    }
    return out;
}

bool common_illumination(const Polytope& p, std::size_t i, std::size_t j, Vec* direction) {
    Mat strict, eqs;
    for (int f : p.facets_at_vertex(i)) strict.push_back(p.facets[f].normal);
    for (int f : p.facets_at_vertex(j)) strict.push_back(p.facets[f].normal);
    for (const auto& e : p.equations) eqs.push_back(e.normal);
    return strict_homogeneous_feasible(strict, eqs, p.ambient, direction);
}

bool is_skinny(const Polytope& p) {
    if (p.dim < 1) throw InvalidInput("is_skinny: polytope of dimension < 1");
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < p.vertices.size(); ++j)
            if (common_illumination(p, i, j)) return false;
    return true;
}

}  // namespace paratile
