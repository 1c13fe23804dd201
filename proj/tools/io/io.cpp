#include "paratile/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace paratile::io {

namespace {

json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("not an integer: " + j.get<std::string>());
        return z;
    }
    throw InvalidInput("expected an integer, got " + j.dump());
}

std::vector<std::string> label_names(const std::vector<int>& idx, const std::vector<std::string>& labels) {
    std::vector<std::string> out;
    for (int i : idx) out.push_back(labels.at(static_cast<std::size_t>(i)));
    return out;
}

}  // namespace

json to_json(const Rational& q) {
    return json::array({integer_json(q.get_num()), integer_json(q.get_den())});
}

json to_json(const Vec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

json to_json(const Mat& m) {
    json out = json::array();
    for (const auto& r : m) out.push_back(to_json(r));
    return out;
}

json to_json(const IntVec& v) { return json(v); }

json to_json(const Polytope& p) {
    json facets = json::array();
    for (const auto& f : p.facets) facets.push_back({{"normal", to_json(f.normal)}, {"offset", to_json(f.offset)}});
    json eqs = json::array();
    for (const auto& e : p.equations) eqs.push_back({{"normal", to_json(e.normal)}, {"offset", to_json(e.offset)}});
    return {{"ambient", p.ambient}, {"dim", p.dim}, {"vertices", to_json(p.vertices)},
            {"facets", facets}, {"equations", eqs}};
}

json to_json(const Hypergraph4& h) {
    json edges = json::array();
    for (const auto& e : h.edges) edges.push_back(json(std::vector<int>(e.begin(), e.end())));
    return {{"vertices", h.vertices}, {"edges", edges}};
}

json to_json(const FaceRef& f) { return {{"orbit", f.orbit}, {"shift", f.shift}}; }

json to_json(const PloughingScheme& p) { return json(p.cycles); }

json to_json(const SigmaPair& p) {
    auto one_based = [](const std::array<int, 3>& a) { return std::vector<int>{a[0] + 1, a[1] + 1, a[2] + 1}; };
    return {{"sigma", one_based(p.sigma)}, {"sigma_prime", one_based(p.sigma_prime)}};
}

json to_json(const MomentReport& m) {
    json ids = json::array();
    for (const auto& i : m.identities) ids.push_back({{"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds()}});
    return {{"edges", m.edges},
            {"vertices", m.vertices},
            {"identities", ids},
            {"degree_bounds_ok", m.degree_bounds_ok},
            {"degree4_count", m.degree4_count},
            {"degree4_formula", degree4_formula(m.edges, m.vertices)},
            {"ok", m.ok()}};
}

json to_json(const SubgraphEmbedding& e) {
    json vm = json::array();
    for (const auto& [a, b] : e.vertex_map) vm.push_back({a, b});
    return {{"kind", to_string(e.kind)}, {"edges", e.edges}, {"vertex_map", vm}, {"rule", e.rule}};
}

json to_json(const LinearSystem& ls) {
    json eqs = json::array();
    for (const auto& e : ls.equations)
        eqs.push_back({{"hyperedge", e.hyperedge},
                       {"lhs", {ls.labels[static_cast<std::size_t>(e.lhs[0])], ls.labels[static_cast<std::size_t>(e.lhs[1])]}},
                       {"rhs", {ls.labels[static_cast<std::size_t>(e.rhs[0])], ls.labels[static_cast<std::size_t>(e.rhs[1])]}}});
    json gauge = json::object();
    for (std::size_t i = 0; i < ls.labels.size(); ++i)
        if (ls.gauge[i]) gauge[ls.labels[i]] = to_json(*ls.gauge[i]);
    return {{"kind", to_string(ls.kind)}, {"dim", ls.dim}, {"labels", ls.labels}, {"equations", eqs}, {"gauge", gauge}};
}

json to_json(const SolutionFamily& sf) {
    json params = json::array();
    for (std::size_t k = 0; k < sf.coefficients.size(); ++k) {
        json coeff = json::object();
        for (std::size_t l = 0; l < sf.system.labels.size(); ++l)
            if (sgn(sf.coefficients[k][l]) != 0) coeff[sf.system.labels[l]] = to_json(sf.coefficients[k][l]);
        params.push_back({{"name", sf.parameter_names[k]}, {"coefficients", coeff}});
    }
    return {{"labels", sf.system.labels}, {"matrix", to_json(sf.matrix())}, {"parameters", params}};
}

json to_json(const Finding& f, const std::vector<std::string>& labels) {
    json out = {{"kind", to_string(f.kind)}, {"labels", label_names(f.labels, labels)}};
    if (!f.generators.empty()) {
        json coeff = json::array();
        for (const auto& c : f.lattice_coefficients) coeff.push_back(integer_json(c));
        out["generators"] = to_json(f.generators);
        out["lattice_coefficients"] = coeff;
    }
    if (!f.weights.empty()) out["weights"] = to_json(Vec(f.weights));
    if (!f.symmetric_set.empty()) {
        out["symmetric_set"] = label_names(f.symmetric_set, labels);
        out["centre"] = to_json(f.centre);
        out["hyperedge"] = f.hyperedge + 1;
    }
    if (!f.note.empty()) out["note"] = f.note;
    return out;
}

json to_json(const ContradictionReport& r, const std::vector<std::string>& labels) {
    json findings = json::array();
    for (const auto& f : r.findings) findings.push_back(to_json(f, labels));
    return {{"kind", to_string(r.kind)}, {"resolved", r.resolved}, {"findings", findings}};
}

json to_json(const CaseRow& row) {
    json out = {{"table", to_string(row.kind)}, {"case", row.item}, {"listed", row.listed}};
    if (row.reduces_to) {
        out["reduces_to"] = *row.reduces_to;
        return out;
    }
    std::vector<std::string> labels = row.system ? row.system->labels : std::vector<std::string>{};
    if (row.system) out["system"] = to_json(*row.system);
    out["solution"] = row.solution ? to_json(*row.solution) : json(nullptr);
    out["contradiction"] = to_json(row.report, labels);
    return out;
}

json to_json(const CaseTable& t) {
    json a = json::array(), b = json::array();
    for (const auto& r : t.five_ten) a.push_back(to_json(r));
    for (const auto& r : t.six_eleven) b.push_back(to_json(r));
    return {{"five_ten", a}, {"six_eleven", b}};
}

json to_json(const Region& r) {
    return {{"positive", to_json(r.positive)}, {"nonnegative", to_json(r.nonnegative)}, {"zero", to_json(r.zero)}};
}

json to_json(const ConePipelineReport& r) {
    json tests = json::array();
    for (const auto& t : r.tests)
        tests.push_back({{"parallelogram", t.parallelogram}, {"vertex", t.vertex}, {"excluded", to_json(t.excluded)}});
    json survivors = json::array();
    for (const auto& s : r.survivors)
        survivors.push_back({{"dimension", s.dimension}, {"generator", to_json(s.generator)}, {"region", to_json(s.region)}});
    return {{"tests", tests},
            {"sign_cover_derived", r.sign_cover_derived},
            {"j_cone_derived", r.j_cone_derived},
            {"bracket_regions", r.bracket_regions},
            {"survivors", survivors},
            {"survivor_rays", to_json(r.survivor_rays)},
            {"direct_survivor_rays", to_json(r.direct_survivor_rays)},
            {"cyclic_invariant", r.cyclic_invariant},
            {"agrees_with_direct", r.agrees_with_direct}};
}

json to_json(const FinalCaseReport& r) {
    json images = json::array();
    for (const auto& [name, v] : r.images) images.push_back({{"point", name}, {"image", to_json(v)}});
    return {{"direction", to_json(r.direction)},
            {"images", images},
            {"projected_vertices", r.projected_vertices},
            {"segment", {to_json(r.segment[0]), to_json(r.segment[1])}},
            {"translation", to_json(r.translation)},
            {"segment_in_image", r.segment_in_image},
            {"segment_in_translate", r.segment_in_translate},
            {"forced_image", to_json(r.forced_image)},
            {"forced_vertex", to_json(r.forced_vertex)},
            {"forced_on_segment_line", r.forced_on_segment_line},
            {"prism", to_json(r.prism)},
            {"prism_is_triangular", r.prism_is_triangular},
            {"forced_vertex_count", r.forced_vertex_count},
            {"known_vertex_count", r.known_vertex_count},
            {"contradiction", to_json(r.report, {})}};
}

// ---- input ------------------------------------------------------------------------------

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        Rational q;
        if (q.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("not a rational: " + j.get<std::string>());
        q.canonicalize();
        if (sgn(q.get_den()) == 0) throw InvalidInput("zero denominator: " + j.get<std::string>());
        return q;
    }
    if (j.is_array() && j.size() == 2) {
        Integer num = integer_from_json(j[0]);
        Integer den = integer_from_json(j[1]);
        if (sgn(den) == 0) throw InvalidInput("zero denominator in " + j.dump());
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    throw InvalidInput("expected a rational, got " + j.dump());
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected a vector, got " + j.dump());
    Vec out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

Mat mat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a nonempty matrix");
    Mat out;
    for (const auto& r : j) out.push_back(vec_from_json(r));
    for (const auto& r : out)
        if (r.size() != out.front().size()) throw InvalidInput("ragged matrix");
    return out;
}

Lattice lattice_from_json(const json& j) {
    Lattice lat;
    if (j.is_array()) lat = Lattice::from_gram(mat_from_json(j));
    else if (j.contains("gram")) lat = Lattice::from_gram(mat_from_json(j.at("gram")));
    else if (j.contains("basis")) lat = Lattice::from_basis(mat_from_json(j.at("basis")));
    else throw InvalidInput("lattice needs \"gram\" or \"basis\"");
    if (lat.dim > 5) throw DimensionLimit("lattice dimension " + std::to_string(lat.dim) + " exceeds 5");
    return lat;
}

TilingComplex complex_from_json(const json& j) {
    Lattice lat = lattice_from_json(j);
    if (j.is_object() && j.contains("prototile")) {
        std::vector<Vec> pts;
        for (const auto& v : j.at("prototile").at("vertices")) pts.push_back(vec_from_json(v));
        return build_complex(lat, dual_description(pts));
    }
    return build_complex(lat);
}

Hypergraph4 hypergraph_from_json(const json& j) {
    const json& edges = j.is_object() ? j.at("edges") : j;
    std::vector<Hyperedge> out;
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 4) throw InvalidInput("hyperedge must have 4 vertices: " + e.dump());
        out.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
    }
    return Hypergraph4::from_edges(out);
}

ScalingAssignment scaling_from_json(const json& j) {
    ScalingAssignment s;
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) s[std::stoi(k)] = rational_from_json(v);
    } else if (j.is_array()) {
        for (const auto& e : j) s[e.at(0).get<int>()] = rational_from_json(e.at(1));
    } else {
        throw InvalidInput("scaling must be an object or a list of pairs");
    }
    return s;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// ---- golden tables ------------------------------------------------------------------------

namespace {

void compare_row(const CaseRow& row, const json& g, const std::string& table, std::vector<GoldenMismatch>& out) {
    auto miss = [&](const std::string& what) { out.push_back({table, row.item, what}); };
    if (g.contains("reduces_to")) {
        if (!row.reduces_to || *row.reduces_to != g.at("reduces_to").get<int>()) miss("reduction tag differs");
        return;
    }
    if (row.reduces_to) {
        miss("row is reduced but the table solves it");
        return;
    }
    const json& sol = g.at("solution");
    if (sol.is_null()) {
        if (row.solution) miss("table has no solution");
    } else if (!row.solution) {
        miss("system has no solution");
    } else {
        const SolutionFamily& sf = *row.solution;
        Mat want = mat_from_json(sol.at("constant"));
        if (want != sf.matrix()) miss("solution matrix differs");
        json params = sol.value("parameters", json::array());
        if (params.size() != sf.num_parameters()) {
            miss("number of free parameters differs");
        } else {
            for (std::size_t k = 0; k < params.size(); ++k) {
                std::set<std::string> labels = params[k].at("labels").get<std::set<std::string>>();
                for (std::size_t l = 0; l < sf.system.labels.size(); ++l) {
                    Rational c = sf.coefficients[k][l];
                    bool listed = labels.count(sf.system.labels[l]) > 0;
                    if ((listed && c != 1) || (!listed && sgn(c) != 0)) miss("parameter " + std::to_string(k + 1) + " differs");
                }
            }
        }
        if (!sf.satisfies_system()) miss("solution does not satisfy the system");
        for (const auto& f : row.report.findings)
            if (!verify_finding(sf, f)) miss("finding " + to_string(f.kind) + " does not re-verify");
    }

    const json& reason = g.at("reason");
    std::string kind = reason.at("kind").get<std::string>();
    std::vector<int> labels;
    if (reason.contains("labels") && row.system)
        for (const auto& l : reason.at("labels")) labels.push_back(label_index(*row.system, l.get<std::string>()));
    if (kind == "no_solution") {
        if (row.report.kind != ContradictionKind::no_solution) miss("expected no solution");
    } else if (kind == "coincidence") {
        if (!row.report.has(ContradictionKind::coincidence, labels)) miss("expected the listed coincidence");
    } else if (kind == "parity") {
        if (!row.report.has(ContradictionKind::parity, labels)) miss("expected the listed parity collision");
    } else if (kind == "nonconvex") {
        if (!row.report.has(ContradictionKind::nonconvex)) miss("expected a convex-position failure");
    } else if (kind == "residual") {
        if (row.report.kind != ContradictionKind::residual) miss("expected a residual case");
        std::string by = reason.value("resolved_by", "");
        if (by == "coincidence_with_diagonal" &&
            !(row.report.resolved && row.report.has(ContradictionKind::coincidence_with_diagonal)))
            miss("expected the symmetric six-set diagonal");
        if (by == "cone_pipeline" && row.report.resolved) miss("expected an unresolved residual case");
    } else {
        miss("unknown reason kind " + kind);
    }
}

void compare_table(const std::vector<CaseRow>& rows, const json& golden, const std::string& table,
                   std::vector<GoldenMismatch>& out) {
    for (const auto& g : golden.at("rows")) {
        int item = g.at("case").get<int>();
        auto it = std::find_if(rows.begin(), rows.end(), [item](const CaseRow& r) { return r.item == item; });
        if (it == rows.end()) {
            out.push_back({table, item, "row missing"});
            continue;
        }
        if (golden.contains("labels") && it->system && golden.at("labels").get<std::vector<std::string>>() != it->system->labels)
            out.push_back({table, item, "label order differs"});
        compare_row(*it, g, table, out);
    }
}

}  // namespace

std::vector<GoldenMismatch> compare_with_golden(const CaseTable& t, const json& five_ten, const json& six_eleven) {
    std::vector<GoldenMismatch> out;
    compare_table(t.five_ten, five_ten, "5-10", out);
    compare_table(t.six_eleven, six_eleven, "6-11", out);
    return out;
}

std::vector<GoldenMismatch> compare_with_golden(const CaseTable& t, const std::string& dir) {
    return compare_with_golden(t, read_json_file(dir + "/five_ten.json"), read_json_file(dir + "/six_eleven.json"));
}

}  // namespace paratile::io
