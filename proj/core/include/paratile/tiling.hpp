#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paratile/lattice.hpp"

namespace paratile {

/// A face of the tiling: the representative face of `orbit` translated by `shift`.
struct FaceRef {
    int orbit = -1;
    IntVec shift;

    auto operator<=>(const FaceRef&) const = default;
    bool operator==(const FaceRef&) const = default;
};

/// One face of the prototile belonging to an orbit: face = representative + offset.
struct OrbitMember {
    int face = -1;  // index into TilingComplex::faces
    IntVec offset;
};

struct FaceOrbit {
    int dim = -1;
    int rep_face = -1;                // face-lattice index of the representative in the prototile
    std::vector<Vec> rep_vertices;    // sorted
    std::vector<OrbitMember> members;
    std::vector<IntVec> tiles;        // shifts mu with representative ⊂ P + mu, sorted
};

/// Periodic face-to-face tiling by translates P + mu, mu in Z^d (basis coordinates),
/// stored modulo the lattice. The prototile is centred at the origin.
class TilingComplex {
public:
    Lattice lattice;
    Polytope prototile;
    FaceLattice faces;
    std::vector<FaceOrbit> orbits;
    std::vector<int> orbit_of_face;      // face-lattice index -> orbit
    std::vector<IntVec> offset_of_face;  // face = rep(orbit) + offset

    std::size_t dim() const { return lattice.dim; }
    std::vector<int> orbits_of_dim(int k) const;
    int tile_orbit() const;

    /// FaceRef of a face of P + mu given by its face-lattice index in P.
    FaceRef ref_of(int face, const IntVec& mu) const;
    std::vector<Vec> vertices_of(const FaceRef& f) const;
    std::vector<IntVec> tiles_of(const FaceRef& f) const;
    FaceRef rep(int orbit) const;
};

TilingComplex build_complex(const Lattice& lat);

/// Explicit prototile, given in basis coordinates of `lat`. Translated to be centred at 0.
TilingComplex build_complex(const Lattice& lat, const Polytope& prototile);

struct Star {
    std::vector<FaceRef> faces;  // faces strictly containing f, sorted
    std::vector<IntVec> tiles;   // centres of tiles containing f, sorted
};

Star star(const TilingComplex& c, const FaceRef& f);

/// Faces of dimension `k` in the star of f.
std::vector<FaceRef> star_faces_of_dim(const TilingComplex& c, const FaceRef& f, int k);

struct DualCell {
    FaceRef face;
    int combdim = 0;
    std::vector<IntVec> verts;  // sorted lattice points
    Polytope hull;

    int dim() const { return hull.dim; }
};

DualCell dual_cell(const TilingComplex& c, const FaceRef& f);

/// Dual cell from explicit lattice points (synthetic instances without a complex).
DualCell make_dual_cell(const std::vector<IntVec>& verts, int combdim);

enum class FanType { A_triangle, B_parallelogram, I, II, III, IV, V };
enum class Dual3Type { parallelepiped, triangular_prism, octahedron, pyramid_over_parallelogram, simplex };

std::string to_string(FanType t);
std::string to_string(Dual3Type t);
FanType fan_type(Dual3Type t);

FanType classify_d2(const TilingComplex& c, const FaceRef& f);
Dual3Type classify_dual3(const DualCell& dc);

struct IrreducibilityResult {
    bool irreducible = true;
    std::optional<int> witness;  // offending (d-3)-orbit
    std::optional<Dual3Type> witness_type;
};

IrreducibilityResult is_3_irreducible(const TilingComplex& c);

enum class ParallelogramPair { complementary, adjacent, translate, skew };
std::string to_string(ParallelogramPair p);

ParallelogramPair classify_parallelogram_pair(const DualCell& p1, const DualCell& p2, const DualCell& d4);

struct TranslateIntersection {
    std::optional<Polytope> cell;  // D = D^k ∩ (D^k + t)
    std::optional<FaceRef> face;   // face of the tiling whose dual cell is D
    Hyperplane separator;          // N: h·x = c
};

/// Intersection of a dual cell with its translate, certified by a hyperplane N that contains
/// D and the directions of the face, with the remaining vertices of D^k strictly on one side
/// and those of D^k + t strictly on the other. Throws CertificationFailure.
TranslateIntersection translate_intersection(const TilingComplex& c, const DualCell& dc, const IntVec& t);

/// The face whose star tiles are exactly `tiles`, if there is one.
std::optional<FaceRef> locate_face(const TilingComplex& c, const std::vector<IntVec>& tiles);

struct SkinnyAudit {
    std::size_t cells_checked = 0;
    std::vector<int> non_skinny_orbits;
    std::vector<int> oversized_3cells;      // 3-dim cells with > 8 vertices, or 8 but not parallelepipeds
    std::vector<int> dimension_deficits;    // orbits with dim(D) < combdim
    std::vector<int> parity_violations;

    bool ok() const { return non_skinny_orbits.empty() && oversized_3cells.empty() && parity_violations.empty(); }
};

SkinnyAudit skinny_audit(const TilingComplex& c);

/// Alternating sum of orbit counts (0 for a tiling of the torus).
long euler_characteristic(const TilingComplex& c);

/// No two points congruent modulo 2 Z^d.
bool parity_ok(const std::vector<IntVec>& pts);

}  // namespace paratile
