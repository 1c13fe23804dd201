#pragma once

#include <vector>

#include "paratile/polytope.hpp"

namespace paratile {

/// Full-rank lattice in R^d. All geometry is done in basis coordinates, where the
/// lattice is Z^d and distances come from the Gram form.
struct Lattice {
    std::size_t dim = 0;
    Mat basis;  // columns generate the lattice; identity when only the Gram matrix is known
    Mat gram;

    static Lattice from_gram(const Mat& gram);
    static Lattice from_basis(const Mat& basis);

    Rational inner(const Vec& a, const Vec& b) const;
    Rational norm(const Vec& a) const { return inner(a, a); }
    Vec lower(const Vec& v) const;  // gram * v
};

/// Rational LDL^T test: all pivots strictly positive.
bool is_positive_definite(const Mat& gram);

/// L (unit lower triangular) and the diagonal D of gram = L D L^T. Throws NotPositiveDefinite.
struct Ldl {
    Mat l;
    Vec d;
};
Ldl ldl(const Mat& gram);

/// All integer vectors with x^T gram x <= bound, exact. Includes 0.
std::vector<IntVec> short_vectors(const Mat& gram, const Rational& bound);

/// Unimodular size reduction: reduced = U^T gram U. Returns U.
Mat size_reduce(const Mat& gram, Mat* reduced = nullptr);

/// Voronoi-relevant vectors in basis coordinates, sorted, closed under negation.
std::vector<IntVec> relevant_vectors(const Lattice& lat);

/// Dirichlet-Voronoi cell of 0 in basis coordinates:
/// one facet (G v)·x <= v^T G v / 2 per relevant vector v.
Polytope dv_cell(const Lattice& lat);

/// Mean of the vertices (the center for centrally symmetric bodies).
Vec vertex_centroid(const std::vector<Vec>& pts);
Vec facet_center(const Polytope& p, std::size_t facet);

/// Vector from the center of p to the center of the neighbour across `facet`: 2 (c_F - c_P).
Vec facet_vector(const Polytope& p, std::size_t facet);

struct Belt {
    std::vector<int> facets;    // cyclic order, indices into Polytope::facets
    std::vector<int> d2faces;   // face-lattice indices of the (d-2)-faces crossed
    int d2face = -1;            // generating (d-2)-face
    std::size_t length() const { return facets.size(); }
};

std::vector<Belt> belts_of(const Polytope& p);
std::vector<Belt> belts_of(const Polytope& p, const FaceLattice& fl);

struct VenkovReport {
    bool centrally_symmetric = false;
    bool facets_centrally_symmetric = false;
    bool belts_ok = false;
    Vec center;
    std::vector<Belt> belts;

    bool ok() const { return centrally_symmetric && facets_centrally_symmetric && belts_ok; }
};

VenkovReport venkov_check(const Polytope& p);

bool is_centrally_symmetric(const std::vector<Vec>& pts);

}  // namespace paratile
