#pragma once

#include <string>

#include "json.hpp"

#include "paratile/paratile.hpp"

namespace paratile::io {

using nlohmann::json;

/// Rationals are [num, den]; either entry becomes a decimal string once it leaves int64.
json to_json(const Rational& q);
json to_json(const Vec& v);
json to_json(const Mat& m);
json to_json(const IntVec& v);
json to_json(const Polytope& p);
json to_json(const Hypergraph4& h);
json to_json(const FaceRef& f);
json to_json(const PloughingScheme& p);
json to_json(const SigmaPair& p);
json to_json(const MomentReport& m);
json to_json(const SubgraphEmbedding& e);
json to_json(const LinearSystem& ls);
json to_json(const SolutionFamily& sf);
json to_json(const Finding& f, const std::vector<std::string>& labels);
json to_json(const ContradictionReport& r, const std::vector<std::string>& labels);
json to_json(const CaseRow& row);
json to_json(const CaseTable& t);
json to_json(const Region& r);
json to_json(const ConePipelineReport& r);
json to_json(const FinalCaseReport& r);

/// Accepts an integer, a string "p" or "p/q", or a pair [p, q] of integers or strings.
Rational rational_from_json(const json& j);
Vec vec_from_json(const json& j);
Mat mat_from_json(const json& j);

/// {"gram": [[...]]} or {"basis": [[...]]}; a bare matrix is read as a Gram matrix.
Lattice lattice_from_json(const json& j);
/// Optional "prototile": {"vertices": [...]} next to the lattice.
TilingComplex complex_from_json(const json& j);
Hypergraph4 hypergraph_from_json(const json& j);
/// {"orbit": factor, ...} or [[orbit, factor], ...]
ScalingAssignment scaling_from_json(const json& j);

/// Reads and parses a file. Throws InvalidInput with the byte offset of a syntax error.
json read_json_file(const std::string& path);

struct GoldenMismatch {
    std::string table;
    int row = 0;
    std::string what;
};

/// Compare run_all_cases output with golden tables five_ten.json and six_eleven.json in `dir`.
std::vector<GoldenMismatch> compare_with_golden(const CaseTable& t, const std::string& dir);
std::vector<GoldenMismatch> compare_with_golden(const CaseTable& t, const json& five_ten, const json& six_eleven);

}  // namespace paratile::io
