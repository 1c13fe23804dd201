#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <vector>

#include "paratile/rational.hpp"

namespace paratile {

using Bitset = boost::dynamic_bitset<>;

/// normal·x <= offset for inequalities, normal·x = offset for equations.
struct Halfspace {
    Vec normal;
    Rational offset;

    bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
};

using Hyperplane = Halfspace;

constexpr std::size_t kMaxHullDimension = 6;

/// Bounded polytope with both descriptions. Canonical form:
///   vertices sorted lexicographically;
///   facet normals are coprime integer vectors lying in lin(P - P), sorted lexicographically;
///   affine-hull equations in reduced echelon form, coprime integers, positive leading entry.
struct Polytope {
    std::size_t ambient = 0;
    int dim = -1;
    std::vector<Vec> vertices;
    std::vector<Halfspace> facets;
    std::vector<Halfspace> equations;
    std::vector<Bitset> incidence;  // incidence[f][v] <=> vertex v lies on facet f

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_facets() const { return facets.size(); }
    std::vector<int> facets_at_vertex(std::size_t v) const;
    int vertex_index(const Vec& v) const;  // -1 if not a vertex
};

/// V -> H. Redundant and repeated points are dropped.
Polytope dual_description(const std::vector<Vec>& points);

/// H -> V. Throws UnboundedInput or EmptyInput.
Polytope dual_description(const std::vector<Halfspace>& inequalities,
                          const std::vector<Halfspace>& equations, std::size_t ambient);

// ---- cones --------------------------------------------------------------------------

/// Lineality space plus extreme rays of {x : A x <= 0, E x = 0}.
struct ConeRays {
    Mat lineality;
    Mat rays;
};
ConeRays cone_rays(const Mat& inequalities, const Mat& equations, std::size_t n);

/// Irredundant H-description of cone(rays) + span(lineality).
struct ConeFacets {
    Mat equations;     // a·x = 0
    Mat inequalities;  // a·x <= 0
};
ConeFacets cone_facets(const Mat& rays, const Mat& lineality, std::size_t n);

/// apex + cone(generators) + span(lineality), kept in both descriptions.
struct Cone {
    Vec apex;
    Mat generators;  // extreme rays modulo lineality, coprime integers
    Mat lineality;   // reduced echelon basis
    Mat halfspaces;  // a with a·(x - apex) <= 0, irredundant
    Mat equations;   // a with a·(x - apex) = 0

    std::size_t ambient() const { return apex.size(); }
};

Cone make_cone(const Vec& apex, const Mat& generators, const Mat& lineality = {});
Cone cone_at_vertex(const Polytope& p, const Vec& vertex);
Cone cone_minus_linspace(const Cone& c, const Mat& subspace);

// ---- faces ------------------------------------------------------------------------

struct Face {
    Bitset vertices;
    int dim = -1;
    std::vector<int> subfaces;  // indices of faces one dimension lower (Hasse diagram)
};

struct FaceLattice {
    std::vector<Face> faces;  // sorted by decreasing dimension; faces[0] is the polytope

    std::vector<int> of_dim(int d) const;
    std::size_t count(int d) const { return of_dim(d).size(); }
    int find(const Bitset& verts) const;  // -1 if not a face
};

FaceLattice face_lattice(const Polytope& p);

// ---- projections ------------------------------------------------------------------

/// Linear projection along span(kernel) onto the coordinate complement obtained by
/// deleting one pivot coordinate per kernel vector (pivots chosen from the highest index).
class Projection {
public:
    Projection(const Mat& kernel, std::size_t ambient);
    Vec operator()(const Vec& x) const;
    std::size_t source_dim() const { return ambient_; }
    std::size_t target_dim() const { return ambient_ - reduced_.size(); }
    const std::vector<int>& dropped_coordinates() const { return pivots_; }

private:
    std::size_t ambient_;
    Mat reduced_;              // kernel basis with unit entries at the pivots
    std::vector<int> pivots_;  // sorted ascending
};

Polytope project(const Polytope& p, const Mat& kernel);

// ---- predicates -------------------------------------------------------------------

bool contains(const Polytope& p, const Vec& x);
bool relint_contains(const Polytope& p, const Vec& x);
bool relint_contains(const Cone& c, const Vec& x);

Polytope translate(const Polytope& p, const Vec& t);
std::optional<Polytope> intersect(const Polytope& a, const Polytope& b);

/// Hyperplane h·x = c with relint(a) in h·x < c and relint(b) in h·x > c. Throws NotSeparable.
Hyperplane separate(const Polytope& a, const Polytope& b);

/// Indices of vertices v with v + t·u in relint(p) for small t > 0.
std::vector<int> illuminated_vertices(const Polytope& p, const Vec& u);

/// No direction illuminates two distinct vertices.
bool is_skinny(const Polytope& p);

/// Is there a direction illuminating both vertices i and j? Fills `direction` when there is.
bool common_illumination(const Polytope& p, std::size_t i, std::size_t j, Vec* direction = nullptr);

/// Directions u of lin(p - p), as a basis.
Mat direction_space(const Polytope& p);

}  // namespace paratile
