#include "paratile/lifting.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

namespace paratile {

namespace {

Vec increment(const Generatrissa& g, int orbit) { return g.scaling.at(orbit) * g.frame.of(orbit); }

Mat shift_matrix(const Generatrissa& g) {
    const IntVec& t1 = g.frame.shift.at(g.basis_orbits[0]);
    const IntVec& t2 = g.frame.shift.at(g.basis_orbits[1]);
    return {{Rational(t1[0]), Rational(t2[0])}, {Rational(t1[1]), Rational(t2[1])}};
}

IntVec add(const IntVec& a, const IntVec& b, long sign = 1) {
    IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + sign * b[i];
    return out;
}

bool in_window(const IntVec& mu, int w) {
    return std::all_of(mu.begin(), mu.end(), [w](long x) { return std::labs(x) <= w; });
}

// Offset change when stepping from tile nu to nu + t.
Rational step_offset(const Generatrissa& g, const IntVec& nu, const IntVec& t) {
    Vec jump = g.gradient(add(nu, t)) - g.gradient(nu);
    Vec mid = to_vec(nu) + Rational(1, 2) * to_vec(t);
    return -dot(jump, mid);
}

bool is_neighbour_shift(const Generatrissa& g, const IntVec& t) {
    for (const auto& [o, s] : g.frame.shift)
        if (t == s || add(IntVec(t.size(), 0), s, -1) == t) return true;
    return false;
}

}  // namespace

Vec Generatrissa::gradient(const IntVec& mu) const { return mat_vec(slope, to_vec(mu)); }

Rational Generatrissa::offset(const IntVec& mu) const {
    Vec ab = mat_vec(*inverse(shift_matrix(*this)), to_vec(mu));
    IntVec coeff = to_intvec(ab);
    IntVec nu(2, 0);
    Rational c = 0;
    for (int k = 0; k < 2; ++k) {
        const IntVec& t = frame.shift.at(basis_orbits[k]);
        long sign = coeff[k] >= 0 ? 1 : -1;
        IntVec step = add(IntVec(2, 0), t, sign);
        for (long i = 0; i < std::labs(coeff[k]); ++i) {
            c += step_offset(*this, nu, step);
            nu = add(nu, step);
        }
    }
    return c;
}

Generatrissa build_generatrissa(const TilingComplex& c, const ScalingAssignment& s,
                                const NormalFrame& frame, int window) {
    if (c.dim() != 2) throw InvalidInput("build_generatrissa: tiling is not planar");
    if (window < 1) throw InvalidInput("build_generatrissa: window must be positive");
    Generatrissa g;
    g.prototile = c.prototile;
    g.frame = frame;
    g.window = window;
    g.base_tile = c.rep(c.tile_orbit());
    std::vector<int> orbits = c.orbits_of_dim(1);
    for (int o : orbits) {
        auto it = s.find(o);
        if (it == s.end() || sgn(it->second) == 0)
            throw InvalidInput("build_generatrissa: missing or zero scale factor on orbit " + std::to_string(o));
        g.scaling[o] = it->second;
    }

    // Propagate gradients over the window, checking every closure.
    g.gradient_map[IntVec{0, 0}] = zero_vec(2);
    std::deque<IntVec> queue{IntVec{0, 0}};
    while (!queue.empty()) {
        IntVec mu = queue.front();
        queue.pop_front();
        Vec here = g.gradient_map.at(mu);
        for (int o : orbits)
            for (long sign : {1L, -1L}) {
                IntVec nu = add(mu, frame.shift.at(o), sign);
                if (!in_window(nu, window)) continue;
                Vec there = here + Rational(sign) * increment(g, o);
                auto it = g.gradient_map.find(nu);
                if (it == g.gradient_map.end()) {
                    g.gradient_map[nu] = there;
                    queue.push_back(nu);
                } else if (it->second != there) {
                    throw InconsistentScaling("build_generatrissa: gradient circuit does not close at tile " +
                                              to_string(nu));
                }
            }
    }

    for (std::size_t i = 0; i < orbits.size() && g.basis_orbits.empty(); ++i)
        for (std::size_t j = i + 1; j < orbits.size(); ++j) {
            const IntVec& a = frame.shift.at(orbits[i]);
            const IntVec& b = frame.shift.at(orbits[j]);
            if (std::labs(a[0] * b[1] - a[1] * b[0]) == 1) {
                g.basis_orbits = {orbits[i], orbits[j]};
                break;
            }
        }
    if (g.basis_orbits.empty()) throw InvalidInput("build_generatrissa: facet vectors do not contain a lattice basis");

    Mat cols(2, Vec(2));
    for (int k = 0; k < 2; ++k) {
        Vec m = increment(g, g.basis_orbits[k]);
        cols[0][k] = m[0];
        cols[1][k] = m[1];
    }
    g.slope = mat_mul(cols, *inverse(shift_matrix(g)));
    for (const auto& [mu, grad] : g.gradient_map)
        if (g.gradient(mu) != grad)
            throw InconsistentScaling("build_generatrissa: gradient is not linear in the tile shift at " + to_string(mu));
    return g;
}

Rational offset_along(const Generatrissa& g, const std::vector<IntVec>& walk) {
    if (walk.empty() || walk.front() != IntVec{0, 0})
        throw InvalidInput("offset_along: walk must start at the base tile");
    Rational c = 0;
    for (std::size_t i = 1; i < walk.size(); ++i) {
        IntVec t = add(walk[i], walk[i - 1], -1);
        if (!is_neighbour_shift(g, t)) throw InvalidInput("offset_along: consecutive tiles are not neighbours");
        c += step_offset(g, walk[i - 1], t);
    }
    return c;
}

Rational eval_G(const Generatrissa& g, const Vec& x) {
    if (x.size() != 2) throw InvalidInput("eval_G: point is not planar");
    Rational reach = 0;
    for (const auto& v : g.prototile.vertices)
        for (const auto& e : v) reach = std::max(reach, Rational(abs(e)));
    long r = ceil_q(reach).get_si() + 1;
    long fx = floor_q(x[0]).get_si();
    long fy = floor_q(x[1]).get_si();
    for (long i = fx - r; i <= fx + r; ++i)
        for (long j = fy - r; j <= fy + r; ++j) {
            IntVec mu{i, j};
            Vec local = x - to_vec(mu);
            if (!contains(g.prototile, local)) continue;
            if (g.prototile.vertex_index(local) >= 0)
                throw PointOnSkeletonAmbiguity("eval_G: point " + to_string(x) + " is a vertex of the tiling");
            return dot(g.gradient(mu), x) + g.offset(mu);
        }
    throw InvalidInput("eval_G: no tile contains the point");
}

Mat QForm2::in_basis() const {
    Mat t = {{Rational(facet_vectors[0][0]), Rational(facet_vectors[1][0])},
             {Rational(facet_vectors[0][1]), Rational(facet_vectors[1][1])}};
    Mat ti = *inverse(t);
    return mat_mul(transpose(ti), mat_mul(matrix, ti));
}

Rational QForm2::value(const Vec& x) const { return dot(x, mat_vec(in_basis(), x)); }

Vec QForm2::gradient(const Vec& x) const { return Rational(2) * mat_vec(in_basis(), x); }

QForm2 recover_qform_unchecked(const Generatrissa& g) {
    if (g.basis_orbits.size() != 2) throw InvalidInput("recover_qform: generatrissa without basis orbits");
    const IntVec& t1 = g.frame.shift.at(g.basis_orbits[0]);
    const IntVec& t2 = g.frame.shift.at(g.basis_orbits[1]);
    Vec m1 = increment(g, g.basis_orbits[0]);
    Vec m2 = increment(g, g.basis_orbits[1]);
    Rational a = dot(to_vec(t1), m1) / 2;
    Rational b = dot(to_vec(t2), m2) / 2;
    Rational cross = dot(to_vec(t2), m1) / 2;
    return {{{a, cross}, {cross, b}}, {t1, t2}};
}

QForm2 recover_qform(const Generatrissa& g) {
    QForm2 q = recover_qform_unchecked(g);
    if (!is_positive_definite(q.matrix))
        throw NotPositiveDefinite("recover_qform: the inscribed form is not positive definite");
    return q;
}

LiftingReport verify_lifting(const Generatrissa& g, const QForm2& q, const TilingComplex& c, int radius) {
    LiftingReport rep;
    for (long i = -radius; i <= radius; ++i)
        for (long j = -radius; j <= radius; ++j) {
            IntVec mu{i, j};
            Vec x = to_vec(mu);
            ++rep.centers_checked;
            if (eval_G(g, x) != q.value(x) || g.gradient(mu) != q.gradient(x)) {
                rep.tangency = false;
                rep.tangency_failures.push_back(mu);
            }
        }
    for (int o : c.orbits_of_dim(1)) {
        const IntVec& t = g.frame.shift.at(o);
        bool ok = true;
        for (long i = -radius; i <= radius && ok; ++i)
            for (long j = -radius; j <= radius && ok; ++j) {
                IntVec mu{i, j};
                Vec jump = g.gradient(add(mu, t)) - g.gradient(mu);
                if (sgn(dot(jump, to_vec(t))) <= 0) ok = false;
            }
        if (!ok) {
            rep.convexity = false;
            rep.convexity_failures.push_back(o);
        }
    }
    return rep;
}

}  // namespace paratile
