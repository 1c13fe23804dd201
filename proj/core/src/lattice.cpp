#include "paratile/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace paratile {

Lattice Lattice::from_gram(const Mat& gram) {
    const std::size_t d = gram.size();
    if (d == 0) throw InvalidInput("lattice: empty Gram matrix");
    for (const auto& row : gram)
        if (row.size() != d) throw InvalidInput("lattice: Gram matrix is not square");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i]) throw InvalidInput("lattice: Gram matrix is not symmetric");
    if (!is_positive_definite(gram)) throw NotPositiveDefinite("lattice: Gram matrix is not positive definite");
    return {d, identity(d), gram};
}

Lattice Lattice::from_basis(const Mat& basis) {
    const std::size_t d = basis.size();
    if (d == 0 || rank(basis) != static_cast<int>(d))
        throw InvalidInput("lattice: basis matrix is singular");
    Lattice lat = from_gram(mat_mul(transpose(basis), basis));
    lat.basis = basis;
    return lat;
}

Rational Lattice::inner(const Vec& a, const Vec& b) const { return dot(a, mat_vec(gram, b)); }

Vec Lattice::lower(const Vec& v) const { return mat_vec(gram, v); }

Ldl ldl(const Mat& gram) {
    const std::size_t n = gram.size();
    Ldl out{identity(n), Vec(n)};
    for (std::size_t j = 0; j < n; ++j) {
        Rational dj = gram[j][j];
        for (std::size_t k = 0; k < j; ++k) dj -= out.l[j][k] * out.l[j][k] * out.d[k];
        if (sgn(dj) <= 0) throw NotPositiveDefinite("ldl: nonpositive pivot at index " + std::to_string(j));
        out.d[j] = dj;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational s = gram[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= out.l[i][k] * out.l[j][k] * out.d[k];
            out.l[i][j] = s / dj;
        }
    }
    return out;
}

bool is_positive_definite(const Mat& gram) {
    try {
        ldl(gram);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

namespace {

Integer round_q(const Rational& q) { return floor_q(q + Rational(1, 2)); }

void enumerate(const Ldl& f, std::size_t i, const Rational& budget, IntVec& x,
               std::vector<IntVec>& out) {
    const std::size_t n = x.size();
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= f.l[j][i] * x[j];
    double radius = std::sqrt(std::max(0.0, Rational(budget / f.d[i]).get_d()));
    double c = center.get_d();
    long lo = static_cast<long>(std::floor(c - radius)) - 1;
    long hi = static_cast<long>(std::ceil(c + radius)) + 1;
    for (long v = lo; v <= hi; ++v) {
        Rational diff = Rational(v) - center;
        Rational used = f.d[i] * diff * diff;
        if (used > budget) continue;
        x[i] = v;
        if (i == 0) out.push_back(x);
        else enumerate(f, i - 1, budget - used, x, out);
    }
    x[i] = 0;
}

}  // namespace

std::vector<IntVec> short_vectors(const Mat& gram, const Rational& bound) {
    const std::size_t n = gram.size();
    Ldl f = ldl(gram);
    std::vector<IntVec> out;
    IntVec x(n, 0);
    if (sgn(bound) < 0) return out;
    enumerate(f, n - 1, bound, x, out);
    std::sort(out.begin(), out.end());
    return out;
}

Mat size_reduce(const Mat& gram, Mat* reduced) {
    const std::size_t n = gram.size();
    Mat g = gram;
    Mat u = identity(n);
    // Column operations b_i -= mu b_j, applied as congruence on g.
    auto apply = [&](std::size_t i, std::size_t j, const Integer& mu) {
        Rational m(mu);
        for (std::size_t r = 0; r < n; ++r) u[r][i] -= m * u[r][j];
        for (std::size_t k = 0; k < n; ++k) g[k][i] -= m * g[k][j];
        for (std::size_t k = 0; k < n; ++k) g[i][k] -= m * g[j][k];
    };
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                if (g[i][i] < g[j][j]) continue;
                Integer mu = round_q(g[i][j] / g[j][j]);
                if (mu == 0) continue;
                Rational before = g[i][i];
                apply(i, j, mu);
                if (g[i][i] < before) changed = true;
            }
        if (!changed) break;
    }
    if (reduced) *reduced = g;
    return u;
}

std::vector<IntVec> relevant_vectors(const Lattice& lat) {
    const std::size_t d = lat.dim;
    if (d > 5) throw DimensionLimit("relevant_vectors: dimension above 5");
    Mat g;
    Mat u = size_reduce(lat.gram, &g);
    // Every coset of Z^d / 2Z^d contains a 0/1 vector; its norm bounds the coset minimum.
    Rational bound = 0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        Vec c(d);
        for (std::size_t i = 0; i < d; ++i) c[i] = (mask >> i) & 1u;
        bound = std::max(bound, dot(c, mat_vec(g, c)));
    }
    std::map<unsigned, std::pair<Rational, std::vector<IntVec>>> best;
    for (const auto& x : short_vectors(g, bound)) {
        unsigned key = 0;
        bool zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] != 0) zero = false;
            if (((x[i] % 2) + 2) % 2) key |= 1u << i;
        }
        if (zero || key == 0) continue;
        Vec xv = to_vec(x);
        Rational nrm = dot(xv, mat_vec(g, xv));
        auto it = best.find(key);
        if (it == best.end() || nrm < it->second.first) best[key] = {nrm, {x}};
        else if (nrm == it->second.first) it->second.second.push_back(x);
    }
    std::vector<IntVec> out;
    for (const auto& [key, entry] : best) {
        if (entry.second.size() != 2) continue;
        for (const auto& x : entry.second) out.push_back(to_intvec(mat_vec(u, to_vec(x))));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Polytope dv_cell(const Lattice& lat) {
    std::vector<Halfspace> ineq;
    for (const auto& v : relevant_vectors(lat)) {
        Vec vv = to_vec(v);
        ineq.push_back({lat.lower(vv), lat.norm(vv) / 2});
    }
    return dual_description(ineq, {}, lat.dim);
}

Vec vertex_centroid(const std::vector<Vec>& pts) {
    if (pts.empty()) throw EmptyInput("vertex_centroid: no points");
    Vec c = zero_vec(pts.front().size());
    for (const auto& p : pts) c += p;
    return Rational(1, static_cast<long>(pts.size())) * c;
}

Vec facet_center(const Polytope& p, std::size_t facet) {
    std::vector<Vec> pts;
    for (std::size_t v = 0; v < p.vertices.size(); ++v)
        if (p.incidence[facet][v]) pts.push_back(p.vertices[v]);
    return vertex_centroid(pts);
}

Vec facet_vector(const Polytope& p, std::size_t facet) {
    return Rational(2) * (facet_center(p, facet) - vertex_centroid(p.vertices));
}

bool is_centrally_symmetric(const std::vector<Vec>& pts) {
    if (pts.empty()) return true;
    Vec c2 = Rational(2) * vertex_centroid(pts);
    std::set<Vec> s(pts.begin(), pts.end());
    for (const auto& v : pts)
        if (!s.count(c2 - v)) return false;
    return true;
}

namespace {

std::vector<Vec> face_points(const Polytope& p, const Bitset& verts) {
    std::vector<Vec> out;
    for (std::size_t v = 0; v < p.vertices.size(); ++v)
        if (verts[v]) out.push_back(p.vertices[v]);
    return out;
}

}  // namespace

std::vector<Belt> belts_of(const Polytope& p) { return belts_of(p, face_lattice(p)); }

std::vector<Belt> belts_of(const Polytope& p, const FaceLattice& fl) {
    const int d = p.dim;
    if (d < 2) throw InvalidInput("belts_of: polytope of dimension < 2");
    const std::size_t nf = p.facets.size();
    for (std::size_t f = 0; f < nf; ++f) {
        std::vector<Vec> pts = face_points(p, p.incidence[f]);
        if (!is_centrally_symmetric(pts))
            throw FacetNotCentrallySymmetric("belts_of: facet " + std::to_string(f) + " is not centrally symmetric");
    }
    std::vector<Vec> centers2;
    for (std::size_t f = 0; f < nf; ++f) centers2.push_back(Rational(2) * facet_center(p, f));

    std::vector<int> ridges = fl.of_dim(d - 2);
    std::map<Bitset, int> ridge_index;
    for (int r : ridges) ridge_index[fl.faces[r].vertices] = r;
    auto facets_of = [&](const Bitset& verts) {
        std::vector<int> out;
        for (std::size_t f = 0; f < nf; ++f)
            if (verts.is_subset_of(p.incidence[f])) out.push_back(static_cast<int>(f));
        return out;
    };
    auto reflect = [&](const Bitset& verts, std::size_t f) {
        Bitset out(p.vertices.size());
        for (std::size_t v = 0; v < p.vertices.size(); ++v) {
            if (!verts[v]) continue;
            int w = p.vertex_index(centers2[f] - p.vertices[v]);
            if (w < 0) throw FacetNotCentrallySymmetric("belts_of: reflection left the facet");
            out.set(static_cast<std::size_t>(w));
        }
        return out;
    };

    std::vector<Belt> belts;
    std::set<int> seen;
    for (int r0 : ridges) {
        if (seen.count(r0)) continue;
        const Bitset& g0 = fl.faces[r0].vertices;
        std::vector<int> fs = facets_of(g0);
        if (fs.size() != 2) throw InvalidInput("belts_of: a (d-2)-face does not lie in exactly two facets");
        Belt belt;
        belt.d2face = r0;
        int f = fs[0];
        Bitset g = g0;
        for (std::size_t guard = 0; guard <= nf; ++guard) {
            belt.facets.push_back(f);
            Bitset g2 = reflect(g, static_cast<std::size_t>(f));
            int r2 = ridge_index.at(g2);
            belt.d2faces.push_back(r2);
            seen.insert(r2);
            std::vector<int> nb = facets_of(g2);
            int next = nb[0] == f ? nb[1] : nb[0];
            g = g2;
            f = next;
            if (f == fs[0] && g == g0) break;
        }
        belts.push_back(std::move(belt));
    }
    return belts;
}

VenkovReport venkov_check(const Polytope& p) {
    VenkovReport rep;
    if (p.dim != static_cast<int>(p.ambient)) throw InvalidInput("venkov_check: polytope is not full-dimensional");
    rep.center = vertex_centroid(p.vertices);
    rep.centrally_symmetric = is_centrally_symmetric(p.vertices);
    rep.facets_centrally_symmetric = true;
    for (std::size_t f = 0; f < p.facets.size(); ++f)
        if (!is_centrally_symmetric(face_points(p, p.incidence[f]))) rep.facets_centrally_symmetric = false;
    if (rep.facets_centrally_symmetric && p.dim >= 2) {
        rep.belts = belts_of(p);
        rep.belts_ok = std::all_of(rep.belts.begin(), rep.belts.end(),
                                   [](const Belt& b) { return b.length() == 4 || b.length() == 6; });
    } else if (p.dim < 2) {
        rep.belts_ok = true;
    }
    return rep;
}

}  // namespace paratile
