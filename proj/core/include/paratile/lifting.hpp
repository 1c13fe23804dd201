#pragma once

#include <map>
#include <vector>

#include "paratile/scaling.hpp"

namespace paratile {

/// Piecewise-linear convex lifting of a canonically scaled planar tiling.
/// On the tile P + mu the function is gradient(mu)·x + offset(mu), in basis coordinates.
struct Generatrissa {
    Polytope prototile;
    ScalingAssignment scaling;
    NormalFrame frame;
    FaceRef base_tile;
    std::vector<int> basis_orbits;           // two facet orbits whose shifts form a basis of Z^2
    Mat slope;                               // gradient(mu) = slope * mu
    std::map<IntVec, Vec> gradient_map;      // propagated over the window, closures checked
    int window = 0;

    Vec gradient(const IntVec& mu) const;
    Rational offset(const IntVec& mu) const;  // staircase along the two basis shifts
};

/// Gradient propagation over tiles with |mu_i| <= window. Throws InconsistentScaling when a
/// closure fails or the slope does not reproduce every facet orbit.
Generatrissa build_generatrissa(const TilingComplex& c, const ScalingAssignment& s,
                                const NormalFrame& frame, int window = 4);

/// Offset accumulated along an explicit walk of neighbouring tiles starting at the base tile.
Rational offset_along(const Generatrissa& g, const std::vector<IntVec>& walk);

Rational eval_G(const Generatrissa& g, const Vec& x);

/// Quadratic form in facet-vector coordinates y, with x = y1·t1 + y2·t2.
struct QForm2 {
    Mat matrix;               // 2x2 symmetric, Q(y) = y^T matrix y
    std::vector<IntVec> facet_vectors;

    Mat in_basis() const;     // the same form in basis coordinates of x
    Rational value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
};

QForm2 recover_qform(const Generatrissa& g);

/// Same form without the positive-definiteness certificate (for fault injection).
QForm2 recover_qform_unchecked(const Generatrissa& g);

struct LiftingReport {
    bool tangency = true;
    bool convexity = true;
    std::vector<IntVec> tangency_failures;  // tile centres
    std::vector<int> convexity_failures;    // facet orbits
    std::size_t centers_checked = 0;
};

LiftingReport verify_lifting(const Generatrissa& g, const QForm2& q, const TilingComplex& c, int radius = 2);

}  // namespace paratile
