#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "paratile/errors.hpp"

namespace paratile {

using Hyperedge = std::array<int, 4>;  // sorted, distinct

/// Hypergraph with 4-element hyperedges.
struct Hypergraph4 {
    std::vector<int> vertices;  // sorted
    std::vector<Hyperedge> edges;

    /// Vertex set = union of the edges. Sorts every edge; throws InvalidInput on repeated
    /// vertices inside an edge or repeated edges.
    static Hypergraph4 from_edges(std::vector<Hyperedge> edges);

    std::size_t degree(int v) const;
    std::map<int, std::size_t> degrees() const;
};

enum class ClosureViolation { none, intersection, degree };

struct ClosureReport {
    bool closed = true;
    bool empty = false;
    ClosureViolation violation = ClosureViolation::none;
    std::pair<int, int> edge_pair{-1, -1};  // for intersection violations
    int vertex = -1;                        // for degree violations
    std::size_t intersection_size = 0;
};

ClosureReport is_closed(const Hypergraph4& h);

struct MomentIdentity {
    std::string name;
    long lhs = 0;
    long rhs = 0;
    bool holds() const { return lhs == rhs; }
};

struct MomentReport {
    long edges = 0;     // R
    long vertices = 0;  // V
    std::vector<MomentIdentity> identities;
    bool degree_bounds_ok = true;  // 2 <= m_v <= 4
    long degree4_count = 0;

    bool ok() const;
};

/// Throws InvalidInput unless h is closed.
MomentReport moment_audit(const Hypergraph4& h);

/// Degree-4 count predicted from R and V: R(R-17)/2 + 3V.
long degree4_formula(long R, long V);

enum class Degree4Cell { count, negative, out_of_range };
struct Degree4Entry {
    Degree4Cell kind = Degree4Cell::count;
    long value = 0;
};
Degree4Entry degree4_table_entry(long R, long V);

// ---- reference graphs ----------------------------------------------------------------

/// Dual of K5. Vertex ids 0..9 are the pairs {i,j} of 0..4 in lexicographic order;
/// hyperedge i is the star of i.
Hypergraph4 five_ten_hypergraph();
int five_ten_vertex(int i, int j);
std::pair<int, int> five_ten_pair(int vertex);

/// Vertex 0 is s, vertex 10 is s', vertex 1 + 3k + l is the meet of hyperedge k in S with
/// hyperedge l in S'. Hyperedges 0..2 form S (through s), 3..5 form S' (through s').
Hypergraph4 six_eleven_hypergraph();
int six_eleven_vertex(int k, int l);

/// Complete isomorphism invariant for hypergraphs without isolated vertices: every vertex is
/// recorded as the set of hyperedges through it, minimised over hyperedge relabelings.
std::vector<std::uint32_t> canonical_form(const Hypergraph4& h);
bool isomorphic(const Hypergraph4& a, const Hypergraph4& b);

// ---- subgraph extraction ---------------------------------------------------------------

enum class SubgraphKind { five_ten, six_eleven };
std::string to_string(SubgraphKind k);

struct SubgraphEmbedding {
    SubgraphKind kind = SubgraphKind::five_ten;
    std::vector<int> edges;         // edge indices of h, in the reference graph's hyperedge order
    std::map<int, int> vertex_map;  // vertex of h -> reference vertex
    std::string rule;               // which case of the argument produced it
};

/// Does the embedding carry the reference hyperedges onto the chosen hyperedges of h?
bool verify_embedding(const Hypergraph4& h, const SubgraphEmbedding& e);

/// Remove hyperedges whose removal keeps the graph closed, until none is removable.
/// Returns the indices of the remaining hyperedges.
std::vector<int> strip_to_core(const Hypergraph4& h);

/// Throws InvalidInput unless h is closed and nonempty; SearchFailure if no case applies.
SubgraphEmbedding find_5_10_or_6_11(const Hypergraph4& h);

/// Brute force over 5- and 6-subsets of hyperedges.
std::vector<SubgraphEmbedding> exhaustive_subgraph_search(const Hypergraph4& h, std::size_t limit = 1);

/// Closed hypergraphs with R hyperedges, one per isomorphism class.
std::vector<Hypergraph4> enumerate_closed_hypergraphs(int R);

/// A random closed hypergraph with R hyperedges, or nullopt if none exists.
std::optional<Hypergraph4> random_closed_hypergraph(int R, std::mt19937_64& rng);

// ---- ploughing schemes on K5 ------------------------------------------------------------

/// Closed walks on K5 (vertices 1..5) using every edge exactly once overall.
struct PloughingScheme {
    std::vector<std::vector<int>> cycles;

    /// Throws InvalidInput unless the cycles cover each edge of K5 exactly once.
    void validate() const;
};

/// At each vertex v, which neighbour is paired with the smallest neighbour (0..2 indexes the
/// remaining three in increasing order).
using Transitions = std::array<int, 5>;

Transitions transitions_of(const PloughingScheme& p);
PloughingScheme scheme_of(const Transitions& t);
Transitions relabel(const Transitions& t, const std::array<int, 5>& perm);  // perm[v-1] = image of v
Transitions canonical_transitions(const Transitions& t);

struct K5SchemeClass {
    PloughingScheme representative;
    Transitions canonical{};
    std::vector<int> listed_items;  // reference list entries (1-based) falling in this class
    std::size_t circuits = 0;
    std::size_t orbit_size = 0;
};

/// The eight reference schemes in their printed labelling.
std::vector<PloughingScheme> reference_k5_schemes();

/// All 3^5 transition systems grouped under the 120 relabelings.
std::vector<K5SchemeClass> enumerate_k5_schemes();

/// Diagonal pairs per hyperedge of a reference graph.
struct VertexMatching {
    std::vector<std::array<std::pair<int, int>, 2>> pairs;

    /// Throws InvalidInput unless each hyperedge's four vertices are split into two pairs.
    void validate(const Hypergraph4& h) const;
};

VertexMatching scheme_to_matching(const PloughingScheme& p);

// ---- 6-11 matchings ------------------------------------------------------------------

/// sigma[k] = hyperedge of S' whose meet with hyperedge k of S is diagonal to s;
/// sigma_prime[l] likewise from S' to S.
struct SigmaPair {
    std::array<int, 3> sigma{};
    std::array<int, 3> sigma_prime{};

    auto operator<=>(const SigmaPair&) const = default;
    bool operator==(const SigmaPair&) const = default;
};

SigmaPair relabel(const SigmaPair& p, const std::array<int, 3>& perm_s, const std::array<int, 3>& perm_sp);
SigmaPair swap_sides(const SigmaPair& p);
SigmaPair canonical_sigma(const SigmaPair& p);
std::pair<int, int> image_sizes(const SigmaPair& p);

VertexMatching sigma_to_matching(const SigmaPair& p);

struct SigmaClass {
    int item = 0;
    SigmaPair representative;
    std::pair<int, int> images{};
    std::optional<int> reduces_to;
    bool listed = true;  // appears in the reference list
    std::size_t orbit_size = 0;
};

/// The eighteen reference pairs in their printed labelling.
std::vector<SigmaPair> reference_sigma_pairs();

/// Orbits under relabeling of S and S' with |Im sigma| <= |Im sigma'|, numbered as the
/// reference list; classes missing from it are appended.
std::vector<SigmaClass> enumerate_6_11_matchings();

}  // namespace paratile
