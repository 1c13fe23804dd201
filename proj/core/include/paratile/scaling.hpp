#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "paratile/tiling.hpp"

namespace paratile {

/// One rational normal per facet orbit: the outward normal of the prototile at the
/// representative facet, as a coprime integer covector, and the neighbour shift t across it.
struct NormalFrame {
    std::map<int, Vec> normal;
    std::map<int, IntVec> shift;

    const Vec& of(int orbit) const { return normal.at(orbit); }
};

NormalFrame make_frame(const TilingComplex& c);

/// Positive scale factor per facet orbit.
using ScalingAssignment = std::map<int, Rational>;

/// Canonical scalings of a star, as a cone of solutions over the facets in the star.
struct StarFamily {
    FaceRef face;
    std::vector<FaceRef> facets;
    std::vector<int> signs;  // one feasible orientation pattern (first entry +1)
    Mat generators;          // basis of the solution space, one row per generator
    Vec positive;            // a strictly positive solution
    bool unique = false;     // solution space is a single ray

    int family_dim() const { return static_cast<int>(generators.size()); }
    Rational value_at(const FaceRef& facet, const Vec& s) const;
};

StarFamily star_scaling_d2(const TilingComplex& c, const FaceRef& f, const NormalFrame& frame);
StarFamily star_scaling_d3(const TilingComplex& c, const FaceRef& f, const NormalFrame& frame);

struct PrimitiveScaling {
    FaceRef vertex;
    std::vector<IntVec> tiles;
    std::vector<Vec> edges;              // edge vectors e_j from the vertex; tile j avoids edge j
    std::vector<Vec> simplex_vertices;   // v_k with v_k·e_j = 1 for j != k
    std::vector<FaceRef> facets;         // facet between tiles k < l, in (k,l) order
    std::vector<std::pair<int, int>> tile_pairs;
    Vec factors;                         // s(F_kl) = |lambda| with v_k - v_l = lambda·ñ
    bool triple_identity = false;
};

PrimitiveScaling primitive_vertex_scaling(const TilingComplex& c, const FaceRef& vertex, const NormalFrame& frame);

// ---- gains --------------------------------------------------------------------------

struct GainEdge {
    int from = -1;
    int to = -1;
    int via = -1;  // (d-2)-orbit
    Rational gain;
};

struct GainFunction {
    std::vector<GainEdge> edges;  // both directions stored

    void add(int from, int to, int via, const Rational& gain);
    std::optional<Rational> lookup(int from, int to, int via) const;
};

/// Ratios from hexagonal (d-2)-stars. With `bridge_quadruples`, also unit gains across quadruple
/// stars whose two orbits are not yet linked, one per merged component, so the graph becomes
/// connected without constraining any ratio the hexagonal stars fix.
GainFunction gains_from_d2_stars(const TilingComplex& c, const NormalFrame& frame, bool bridge_quadruples = false);

/// Ratios from every (d-3)-star whose canonical scaling is unique.
GainFunction gains_from_d3_stars(const TilingComplex& c, const NormalFrame& frame);

/// Gain 1 between every pair of facet orbits sharing a (d-2)-face.
GainFunction uniform_gain(const TilingComplex& c);

struct PropagationResult {
    std::optional<ScalingAssignment> scaling;
    std::vector<GainEdge> witness;  // violating circuit, closed, when scaling is empty
};

PropagationResult propagate(const TilingComplex& c, const GainFunction& gain, int seed);

/// Closure of the gain on circuits inside every (d-3)-star only. Returns the first offending
/// (d-3)-orbit, or nullopt if all primitive circuits close. Throws InvalidInput below dimension 3.
std::optional<int> primitive_circuit_violation(const TilingComplex& c, const GainFunction& gain);

struct CanonicalCheck {
    bool ok = true;
    std::optional<FaceRef> violated;  // first (d-2)-face without a zero signed sum
};

/// Does some choice of signs make sum s_i·ñ_i vanish around every (d-2)-face?
CanonicalCheck verify_canonical(const TilingComplex& c, const ScalingAssignment& s, const NormalFrame& frame);

/// Same, for a scale function on individual facets, over (d-2)-faces rep + lambda with
/// |lambda_i| <= radius.
CanonicalCheck verify_canonical_local(const TilingComplex& c,
                                      const std::function<Rational(const FaceRef&)>& s,
                                      const NormalFrame& frame, int radius);

/// Signed-sum test for one star: normals (one per facet) and their factors.
bool signed_sum_vanishes(const std::vector<Vec>& normals, const Vec& factors);

// ---- coherence ----------------------------------------------------------------------

/// Are two scalings of the same facets positively proportional?
using ScalingComparator = std::function<bool(const Vec&, const Vec&)>;
bool proportional_scalings(const Vec& a, const Vec& b);

struct CoherenceResult {
    bool coherent = false;
    std::vector<FaceRef> pyramid_faces;  // the two (d-3)-faces between Π and D4
    std::vector<FaceRef> quadruple_facets;
    Vec first;   // scaling of star(Π-face) from the first pyramid star
    Vec second;
};

/// Π is the dual cell of a quadruple (d-2)-face, D4 of a (d-4)-face inside it.
/// Throws HypothesisViolated unless the two (d-3)-faces between them have pyramid dual cells.
CoherenceResult test_coherence(const TilingComplex& c, const DualCell& pi, const DualCell& d4,
                               const NormalFrame& frame,
                               const ScalingComparator& compare = proportional_scalings);

struct CoherencePair {
    FaceRef pi_face;
    FaceRef d4_face;
};

/// All (Π, D4) pairs with representative (d-4)-face whose two middle cells are pyramids.
std::vector<CoherencePair> coherence_instances(const TilingComplex& c);

}  // namespace paratile
