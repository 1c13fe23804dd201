#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "paratile/hypercomb.hpp"
#include "paratile/polytope.hpp"

namespace paratile {

enum class SystemKind { five_ten, six_eleven };
std::string to_string(SystemKind k);

/// Diagonal-midpoint equations of a parallelogram system.
/// Unknowns are labeled points in R^dim; label i is vertex i of the reference hypergraph.
struct LinearSystem {
    struct Equation {
        int hyperedge = 0;
        std::array<int, 2> lhs{};  // lhs[0] + lhs[1] = rhs[0] + rhs[1]
        std::array<int, 2> rhs{};
    };

    SystemKind kind = SystemKind::five_ten;
    std::size_t dim = 5;
    std::vector<std::string> labels;
    std::vector<Equation> equations;
    std::vector<std::optional<Vec>> gauge;  // fixed points, one slot per label

    std::vector<int> unknowns() const;  // labels without a gauge value
};

/// Table order: v12, v13, ..., v45.
std::vector<std::string> five_ten_labels();
/// Table order: s, v11', ..., v33', s'.
std::vector<std::string> six_eleven_labels();
int label_index(const LinearSystem& ls, const std::string& label);

/// Base point 0 is pinned to the origin; the two first hyperedges through it become
/// conv{0,e1,e2,e1+e2} and conv{0,e3,e4,e3+e4} with the diagonal partner of 0 at e1+e2 (e3+e4).
LinearSystem build_system(SystemKind kind, const VertexMatching& m, std::size_t dim = 5);
LinearSystem build_system(const PloughingScheme& p, std::size_t dim = 5);
LinearSystem build_system(const SigmaPair& p, std::size_t dim = 5);

/// point(label) = particular[label] + sum_k coefficients[k][label] * a^k with free a^k in R^dim.
struct SolutionFamily {
    LinearSystem system;
    std::vector<Vec> particular;      // per label
    std::vector<Vec> coefficients;    // per free parameter, one entry per label
    std::vector<std::string> parameter_names;

    std::size_t num_parameters() const { return coefficients.size(); }
    bool parameter_free(int label) const;
    /// Does label a minus label b involve no parameter?
    bool parameter_free_difference(int a, int b) const;
    /// Coordinates as rows, labels as columns, parameter part dropped.
    Mat matrix() const;
    /// Substitute every equation symbolically: constant and parameter parts separately.
    bool satisfies_system() const;
};

/// Exact row reduction. Free parameters are the non-pivot labels in column order, named
/// a, b, ...; coordinate j of parameter a is a^j.
std::optional<SolutionFamily> solve(const LinearSystem& ls);

enum class ContradictionKind {
    no_solution,
    coincidence,
    parity,
    nonconvex,
    residual,
    coincidence_with_diagonal,
    vertex_count,
};
std::string to_string(ContradictionKind k);

struct Finding {
    ContradictionKind kind = ContradictionKind::residual;
    std::vector<int> labels;
    // parity: difference = sum_k 2 * lattice_coefficients[k] * generators[k]
    std::vector<Vec> generators;
    std::vector<Integer> lattice_coefficients;
    // nonconvex: point labels[0] = sum_i weights[i] * point labels[i + 1]
    std::vector<Rational> weights;
    // coincidence_with_diagonal: the centrally symmetric six labels and their centre
    std::vector<int> symmetric_set;
    Vec centre;
    int hyperedge = -1;
    std::string note;
};

struct ContradictionReport {
    ContradictionKind kind = ContradictionKind::residual;
    std::vector<Finding> findings;
    bool resolved = false;  // a residual case settled by an additional argument

    bool has(ContradictionKind k) const;
    bool has(ContradictionKind k, const std::vector<int>& labels) const;  // labels as a set
};

/// Checks in order: coincidence, parity modulo 2Λ', convex position, and otherwise residual.
/// Λ' is the Z-span of the parameter-free labeled points and of parameter-free differences.
/// Residual cases also get the centrally-symmetric six-set test.
ContradictionReport detect_contradiction(const SolutionFamily& sf);
ContradictionReport no_solution_report();

/// Independent re-check of a finding against the solution family.
bool verify_finding(const SolutionFamily& sf, const Finding& f);

/// Centrally symmetric six-point subsets of affine dimension 3 with an axis that is also a
/// diagonal of one of the system's parallelograms.
std::vector<Finding> symmetric_six_diagonal_findings(const SolutionFamily& sf);

struct CaseRow {
    SystemKind kind = SystemKind::five_ten;
    int item = 0;                  // 1-based row number
    std::optional<int> reduces_to;
    bool listed = true;
    std::optional<LinearSystem> system;
    std::optional<SolutionFamily> solution;
    ContradictionReport report;
};

struct CaseTable {
    std::vector<CaseRow> five_ten;
    std::vector<CaseRow> six_eleven;
};

/// Schemes used for the eight 5-10 rows (row 2 uses a relabeling inside its class).
std::vector<PloughingScheme> five_ten_case_schemes();

/// Every 5-10 and 6-11 row. Rows are independent; `threads` > 1 runs them concurrently
/// with the output order unchanged.
CaseTable run_all_cases(unsigned threads = 1);

// ---- cone tests for the residual 5-10 case -------------------------------------------

/// {x : positive·x > 0, nonnegative·x >= 0, zero·x = 0}, with x != 0.
struct Region {
    Mat positive;
    Mat nonnegative;
    Mat zero;

    Region meet(const Region& o) const;
    bool contains(const Vec& x) const;
};

bool region_nonempty(const Region& r, Vec* witness = nullptr);
/// Dimension of the linear hull; -1 for the empty region.
int region_dimension(const Region& r);
/// r minus an open cone, as disjoint nonempty pieces.
std::vector<Region> subtract(const Region& r, const Region& open_cone);
/// Is every point of a covered by the union of the regions in b?
bool covered_by(const Region& a, const std::vector<Region>& b);

/// u_1..u_5 and u_i + u_{i+1}, named "u1".."u5", "u1+u2", ..., "u5+u1".
std::vector<std::pair<std::string, Vec>> lifted_points();
Polytope lifted_configuration();
/// P_i = conv{u_{i-1}, u_{i+1}, u_{i-1}+u_i, u_i+u_{i+1}}, i = 1..5.
Polytope lifted_parallelogram(int i);
/// Index substitution i -> i+1 applied to coordinates.
Vec rotate(const Vec& x, int steps = 1);
Region rotate(const Region& r, int steps = 1);

struct ConeTest {
    int parallelogram = 0;
    std::string vertex;
    Cone cone;               // cone(Q - v) minus lin(P_i - P_i)
    Region excluded;         // relint of the cone; its negative is excluded too
};

ConeTest cone_test(int parallelogram, const std::string& vertex);
std::vector<ConeTest> all_cone_tests();

struct SignCover {
    Region plus;
    Region minus;
    Region zero;
};
/// K^i_+, K^i_-, K^i_0: K^1 is {x4>0, x5>0, x1+x3<0}, its negative and {x1+x3 = 0};
/// K^i is K^1 with indices shifted by i-1.
SignCover sign_cover(int i);
/// J^i_+ (J^1_+ = {x5<0, x4<0, x1+x3+x4+x5<0, x1+x3>0}) and J^i_- = -J^i_+.
std::pair<Region, Region> j_cones(int i);

struct SurvivingRay {
    Region region;
    int dimension = 0;
    Vec generator;  // coprime integers when dimension == 1
};

struct ConePipelineReport {
    std::vector<ConeTest> tests;
    bool sign_cover_derived = false;  // K^1 equals what the three tests leave
    bool j_cone_derived = false;      // J^1_+ is the relint excluded by P_2 against u4+u5
    std::size_t bracket_regions = 0;  // nonempty sign patterns after opening brackets
    std::vector<SurvivingRay> survivors;
    std::vector<Vec> survivor_rays;          // generators, sorted
    std::vector<Vec> direct_survivor_rays;   // from all tests without the K/J bookkeeping
    bool cyclic_invariant = false;
    bool agrees_with_direct = false;
};

ConePipelineReport cone_test_pipeline();

struct FinalCaseReport {
    Vec direction;
    std::vector<std::pair<std::string, Vec>> images;  // p of the ten lifted points
    std::size_t projected_vertices = 0;
    std::array<Vec, 2> segment;
    Vec translation;                       // p(u4 + u5 - u1 - u2)
    bool segment_in_image = false;
    bool segment_in_translate = false;
    Vec forced_image;                      // [1,0,1,0]
    Vec forced_vertex;                     // y4 + y5 - y2
    bool forced_on_segment_line = false;
    std::vector<Vec> prism;                // Vert(P_2) with y4+y5 and y4+y5-y2
    bool prism_is_triangular = false;
    std::size_t forced_vertex_count = 0;   // vertices of the eight-vertex dual 4-cell
    std::size_t known_vertex_count = 0;    // distinct vertices of the five parallelograms
    ContradictionReport report;
};

/// Throws ReproductionFailure if a step of the argument fails.
FinalCaseReport final_case_check(const Vec& x);

/// Reduction identities of the residual row: E = v25 + v13, y_i = (vertex) - E, and the
/// five parallelograms in y-coordinates, checked symbolically on the solution family.
bool check_reduction_identities(const SolutionFamily& row2);

}  // namespace paratile
