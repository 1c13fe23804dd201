#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "paratile/io.hpp"

using namespace paratile;
using paratile::io::json;
using paratile::io::to_json;

namespace {

enum Exit : int { ok = 0, violation = 1, input_error = 2 };

struct Options {
    std::string gram;
    std::string input;
    std::string out;
    std::string scaling;
    std::string golden;
    std::string plot;
    std::string x;
    int window = 4;
    int radius = 2;
    int edges = 6;
    std::uint64_t seed = 1;
    bool d3_gains = false;
};

unsigned thread_count() {
    const char* env = std::getenv("PARATILE_THREADS");
    if (!env) return 1;
    try {
        long n = std::stol(env);
        if (n == 0) return std::max(1u, std::thread::hardware_concurrency());
        if (n < 0) throw InvalidInput("PARATILE_THREADS must be nonnegative");
        return static_cast<unsigned>(n);
    } catch (const std::logic_error&) {
        throw InvalidInput(std::string("PARATILE_THREADS is not a number: ") + env);
    }
}

void emit(const json& j, const Options& o) {
    if (o.out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InvalidInput("cannot write " + o.out);
    f << j.dump(2) << "\n";
}

TilingComplex load_complex(const Options& o) { return io::complex_from_json(io::read_json_file(o.gram)); }

json lattice_json(const Lattice& lat) { return {{"dim", lat.dim}, {"gram", to_json(lat.gram)}}; }

json belt_json(const Belt& b) { return {{"length", b.length()}, {"facets", b.facets}}; }

json face_json(const TilingComplex& c, const FaceRef& f) {
    return {{"orbit", f.orbit}, {"shift", f.shift}, {"vertices", to_json(c.vertices_of(f))}};
}

int run_dv(const Options& o) {
    Lattice lat = io::lattice_from_json(io::read_json_file(o.gram));
    Polytope p = dv_cell(lat);
    VenkovReport v = venkov_check(p);
    json relevant = json::array();
    for (const auto& r : relevant_vectors(lat)) relevant.push_back(r);
    json belts = json::array();
    for (const auto& b : v.belts) belts.push_back(belt_json(b));
    emit({{"lattice", lattice_json(lat)},
          {"polytope", to_json(p)},
          {"relevant_vectors", relevant},
          {"venkov",
           {{"centrally_symmetric", v.centrally_symmetric},
            {"facets_centrally_symmetric", v.facets_centrally_symmetric},
            {"belts_ok", v.belts_ok}}},
          {"belts", belts}},
         o);
    return v.ok() ? ok : violation;
}

json orbit_json(const TilingComplex& c, int orbit) {
    const FaceOrbit& fo = c.orbits[static_cast<std::size_t>(orbit)];
    json j = {{"orbit", orbit},
              {"dim", fo.dim},
              {"vertices", to_json(fo.rep_vertices)},
              {"members", fo.members.size()},
              {"tiles", fo.tiles}};
    int d = static_cast<int>(c.dim());
    if (fo.dim == d - 2 && d >= 2) j["fan"] = to_string(classify_d2(c, c.rep(orbit)));
    if (fo.dim == d - 3 && d >= 3) {
        Dual3Type t = classify_dual3(dual_cell(c, c.rep(orbit)));
        j["dual_cell"] = to_string(t);
        j["fan"] = to_string(fan_type(t));
    }
    return j;
}

int run_tiling_audit(const Options& o) {
    TilingComplex c = load_complex(o);
    json counts = json::array();
    json orbits = json::array();
    for (int k = 0; k <= static_cast<int>(c.dim()); ++k) {
        counts.push_back(c.orbits_of_dim(k).size());
        for (int orb : c.orbits_of_dim(k)) orbits.push_back(orbit_json(c, orb));
    }
    SkinnyAudit sa = skinny_audit(c);
    long chi = euler_characteristic(c);
    json audit = {{"cells_checked", sa.cells_checked},
                  {"non_skinny_orbits", sa.non_skinny_orbits},
                  {"oversized_3cells", sa.oversized_3cells},
                  {"dimension_deficits", sa.dimension_deficits},
                  {"parity_violations", sa.parity_violations},
                  {"ok", sa.ok()}};
    json out = {{"lattice", lattice_json(c.lattice)},
                {"prototile", to_json(c.prototile)},
                {"orbit_counts", counts},
                {"orbits", orbits},
                {"euler_characteristic", chi},
                {"skinny_audit", audit}};
    if (c.dim() >= 3) out["three_irreducible"] = is_3_irreducible(c).irreducible;
    emit(out, o);
    return sa.ok() && chi == 0 ? ok : violation;
}

int run_dual_cells(const Options& o) {
    TilingComplex c = load_complex(o);
    json cells = json::array();
    bool all_skinny = true;
    for (std::size_t orb = 0; orb < c.orbits.size(); ++orb) {
        DualCell dc = dual_cell(c, c.rep(static_cast<int>(orb)));
        bool skinny = is_skinny(dc.hull);
        all_skinny = all_skinny && skinny;
        json j = {{"face", face_json(c, dc.face)},
                  {"combdim", dc.combdim},
                  {"dim", dc.dim()},
                  {"vertices", dc.verts},
                  {"skinny", skinny},
                  {"parity_ok", parity_ok(dc.verts)}};
        if (dc.combdim == 3) j["type"] = to_string(classify_dual3(dc));
        cells.push_back(j);
    }
    emit({{"lattice", lattice_json(c.lattice)}, {"dual_cells", cells}}, o);
    return all_skinny ? ok : violation;
}

int run_irreducible(const Options& o) {
    TilingComplex c = load_complex(o);
    if (c.dim() < 3) throw InvalidInput("3-irreducibility needs dimension at least 3");
    IrreducibilityResult r = is_3_irreducible(c);
    json out = {{"irreducible", r.irreducible}};
    if (r.witness) {
        out["witness"] = orbit_json(c, *r.witness);
        out["witness_type"] = to_string(*r.witness_type);
    }
    emit(out, o);
    return ok;
}

json scaling_json(const ScalingAssignment& s) {
    json j = json::object();
    for (const auto& [orb, f] : s) j[std::to_string(orb)] = to_json(f);
    return j;
}

json gain_edges_json(const std::vector<GainEdge>& edges) {
    json out = json::array();
    for (const auto& e : edges) out.push_back({{"from", e.from}, {"to", e.to}, {"via", e.via}, {"gain", to_json(e.gain)}});
    return out;
}

std::optional<ScalingAssignment> build_scaling(const TilingComplex& c, const NormalFrame& fr, bool d3, json& out) {
    GainFunction g = d3 ? gains_from_d3_stars(c, fr) : gains_from_d2_stars(c, fr, true);
    int seed = c.orbits_of_dim(static_cast<int>(c.dim()) - 1).front();
    PropagationResult pr = propagate(c, g, seed);
    out["seed_orbit"] = seed;
    if (c.dim() >= 3) {
        auto pv = primitive_circuit_violation(c, g);
        out["primitive_violation"] = pv ? json(*pv) : json(nullptr);
    }
    if (!pr.scaling) {
        out["witness"] = gain_edges_json(pr.witness);
        return std::nullopt;
    }
    return pr.scaling;
}

int run_scaling_build(const Options& o) {
    TilingComplex c = load_complex(o);
    NormalFrame fr = make_frame(c);
    json out = {{"lattice", lattice_json(c.lattice)}};
    auto s = build_scaling(c, fr, o.d3_gains, out);
    if (!s) {
        out["scaling"] = nullptr;
        emit(out, o);
        return violation;
    }
    CanonicalCheck cc = verify_canonical(c, *s, fr);
    out["scaling"] = scaling_json(*s);
    out["canonical"] = cc.ok;
    emit(out, o);
    return cc.ok ? ok : violation;
}

int run_scaling_verify(const Options& o) {
    TilingComplex c = load_complex(o);
    NormalFrame fr = make_frame(c);
    ScalingAssignment s = io::scaling_from_json(io::read_json_file(o.scaling));
    for (int orb : c.orbits_of_dim(static_cast<int>(c.dim()) - 1))
        if (!s.count(orb)) throw InvalidInput("no factor for facet orbit " + std::to_string(orb));
    CanonicalCheck cc = verify_canonical(c, s, fr);
    json out = {{"canonical", cc.ok}};
    out["violated"] = cc.violated ? face_json(c, *cc.violated) : json(nullptr);
    emit(out, o);
    return cc.ok ? ok : violation;
}

int run_scaling_coherence(const Options& o) {
    TilingComplex c = load_complex(o);
    NormalFrame fr = make_frame(c);
    json pairs = json::array();
    bool all = true;
    for (const auto& inst : coherence_instances(c)) {
        CoherenceResult r = test_coherence(c, dual_cell(c, inst.pi_face), dual_cell(c, inst.d4_face), fr);
        all = all && r.coherent;
        pairs.push_back({{"pi_face", to_json(inst.pi_face)},
                         {"d4_face", to_json(inst.d4_face)},
                         {"coherent", r.coherent},
                         {"first", to_json(r.first)},
                         {"second", to_json(r.second)}});
    }
    emit({{"instances", pairs}, {"coherent", all}}, o);
    return all ? ok : violation;
}

int run_lift(const Options& o) {
    TilingComplex c = load_complex(o);
    if (c.dim() != 2) throw InvalidInput("lift needs a planar lattice");
    NormalFrame fr = make_frame(c);
    json out;
    ScalingAssignment s;
    if (!o.scaling.empty()) {
        s = io::scaling_from_json(io::read_json_file(o.scaling));
    } else {
        auto built = build_scaling(c, fr, false, out);
        if (!built) {
            emit(out, o);
            return violation;
        }
        s = *built;
    }
    Generatrissa g = build_generatrissa(c, s, fr, o.window);
    QForm2 q = recover_qform_unchecked(g);
    LiftingReport r = verify_lifting(g, q, c, o.radius);
    bool pd = is_positive_definite(q.matrix);
    out = {{"Q", to_json(q.matrix)},
           {"Q_basis", to_json(q.in_basis())},
           {"positive_definite", pd},
           {"tangency", r.tangency},
           {"convexity", r.convexity},
           {"tangency_failures", r.tangency_failures},
           {"convexity_failures", r.convexity_failures},
           {"centers_checked", r.centers_checked},
           {"scaling", scaling_json(s)}};
    emit(out, o);
    if (!o.plot.empty()) {
        std::ofstream f(o.plot);
        if (!f) throw InvalidInput("cannot write " + o.plot);
        for (long i = -o.radius; i <= o.radius; ++i)
            for (long j = -o.radius; j <= o.radius; ++j) {
                IntVec mu{i, j};
                f << "# tile " << i << " " << j << "\n";
                const auto& vs = c.prototile.vertices;
                std::vector<Vec> ring = vs;
                Vec ctr = vertex_centroid(vs);
                std::sort(ring.begin(), ring.end(), [&](const Vec& a, const Vec& b) {
                    double ax = Rational(a[0] - ctr[0]).get_d(), ay = Rational(a[1] - ctr[1]).get_d();
                    double bx = Rational(b[0] - ctr[0]).get_d(), by = Rational(b[1] - ctr[1]).get_d();
                    return std::atan2(ay, ax) < std::atan2(by, bx);
                });
                ring.push_back(ring.front());
                for (const auto& v : ring) {
                    Vec x = v + to_vec(mu);
                    Rational h = dot(g.gradient(mu), x) + g.offset(mu);
                    f << to_string(x[0]) << " " << to_string(x[1]) << " " << to_string(h) << "\n";
                }
                f << "\n";
            }
    }
    return r.tangency && r.convexity && pd ? ok : violation;
}

json k5_class_json(const K5SchemeClass& k) {
    return {{"representative", to_json(k.representative)},
            {"transitions", std::vector<int>(k.canonical.begin(), k.canonical.end())},
            {"circuits", k.circuits},
            {"orbit_size", k.orbit_size},
            {"listed_items", k.listed_items}};
}

int run_enumerate_k5(const Options& o) {
    auto classes = enumerate_k5_schemes();
    json arr = json::array();
    for (const auto& k : classes) arr.push_back(k5_class_json(k));
    emit({{"classes", arr}, {"count", classes.size()}}, o);
    return ok;
}

int run_hyper_audit(const Options& o) {
    Hypergraph4 h = io::hypergraph_from_json(io::read_json_file(o.input));
    ClosureReport cr = is_closed(h);
    json out = {{"hypergraph", to_json(h)}, {"closed", cr.closed}};
    if (!cr.closed) {
        out["violation"] = cr.violation == ClosureViolation::degree ? "degree" : "intersection";
        if (cr.violation == ClosureViolation::degree) out["vertex"] = cr.vertex;
        else out["edge_pair"] = {cr.edge_pair.first, cr.edge_pair.second};
        emit(out, o);
        return violation;
    }
    MomentReport m = moment_audit(h);
    out["moments"] = to_json(m);
    emit(out, o);
    return m.ok() ? ok : violation;
}

int run_find_subgraph(const Options& o) {
    Hypergraph4 h = io::hypergraph_from_json(io::read_json_file(o.input));
    SubgraphEmbedding e = find_5_10_or_6_11(h);
    json out = to_json(e);
    out["verified"] = verify_embedding(h, e);
    emit(out, o);
    return ok;
}

int run_hyper_random(const Options& o) {
    std::mt19937_64 rng(o.seed);
    auto h = random_closed_hypergraph(o.edges, rng);
    if (!h) {
        emit({{"hypergraph", nullptr}}, o);
        return violation;
    }
    emit({{"hypergraph", to_json(*h)}, {"seed", o.seed}}, o);
    return ok;
}

int run_cases(const Options& o) {
    CaseTable t = run_all_cases(thread_count());
    json out = to_json(t);
    bool mismatch = false;
    if (!o.golden.empty()) {
        auto diffs = io::compare_with_golden(t, o.golden);
        json arr = json::array();
        for (const auto& d : diffs) arr.push_back({{"table", d.table}, {"case", d.row}, {"what", d.what}});
        out["golden"] = {{"dir", o.golden}, {"matches", diffs.empty()}, {"mismatches", arr}};
        for (const auto& d : diffs) std::cerr << "golden mismatch: " << d.table << " row " << d.row << ": " << d.what << "\n";
        mismatch = !diffs.empty();
    }
    emit(out, o);
    if (mismatch) return violation;
    for (const auto* rows : {&t.five_ten, &t.six_eleven})
        for (const auto& r : *rows)
            if (!r.reduces_to && (r.report.kind != ContradictionKind::residual || r.report.resolved)) return violation;
    return ok;
}

int run_cone_pipeline(const Options& o) {
    emit(to_json(cone_test_pipeline()), o);
    return ok;
}

int run_final_case(const Options& o) {
    Vec x = to_vec({-1, -1, -1, 1, 1});
    if (!o.x.empty()) x = io::vec_from_json(json::parse(o.x));
    if (x.size() != 5) throw InvalidInput("--x needs five coordinates");
    FinalCaseReport r = final_case_check(x);
    emit(to_json(r), o);
    return r.report.resolved || r.report.has(ContradictionKind::vertex_count) ? violation : ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations for parallelotope tilings and their dual cells"};
    app.require_subcommand(1);
    Options o;
    int (*action)(const Options&) = nullptr;

    auto gram_opt = [&](CLI::App* sub) {
        sub->add_option("--gram,-g", o.gram, "lattice JSON ({\"gram\": ...} or {\"basis\": ...})")->required()->check(CLI::ExistingFile);
        sub->add_option("--out,-o", o.out, "write JSON here instead of stdout");
    };

    auto* dv = app.add_subcommand("dv", "Dirichlet-Voronoi cell, Venkov conditions and belts");
    gram_opt(dv);
    dv->callback([&] { action = run_dv; });

    auto* tiling = app.add_subcommand("tiling", "face-to-face tiling complex");
    tiling->require_subcommand(1);
    auto* audit = tiling->add_subcommand("audit", "orbit tables, fan types and the skinny audit");
    gram_opt(audit);
    audit->callback([&] { action = run_tiling_audit; });

    auto* dual = app.add_subcommand("dual-cells", "dual cell of every face orbit");
    gram_opt(dual);
    dual->callback([&] { action = run_dual_cells; });

    auto* irr = app.add_subcommand("irreducible", "3-irreducibility test");
    gram_opt(irr);
    irr->callback([&] { action = run_irreducible; });

    auto* scaling = app.add_subcommand("scaling", "canonical scalings");
    scaling->require_subcommand(1);
    auto* build = scaling->add_subcommand("build", "propagate facet gains into a canonical scaling");
    gram_opt(build);
    build->add_flag("--d3-gains", o.d3_gains, "use gains from unique (d-3)-star scalings");
    build->callback([&] { action = run_scaling_build; });
    auto* verify = scaling->add_subcommand("verify", "check a scaling around every (d-2)-face");
    gram_opt(verify);
    verify->add_option("--scaling,-s", o.scaling, "scaling JSON keyed by facet orbit")->required()->check(CLI::ExistingFile);
    verify->callback([&] { action = run_scaling_verify; });
    auto* coh = scaling->add_subcommand("coherence", "coherence of parallelogram dual cells");
    gram_opt(coh);
    coh->callback([&] { action = run_scaling_coherence; });

    auto* lift = app.add_subcommand("lift", "convex lifting of a planar tiling");
    gram_opt(lift);
    lift->add_option("--scaling,-s", o.scaling, "scaling JSON; built from the tiling when absent")->check(CLI::ExistingFile);
    lift->add_option("--window", o.window, "gradient propagation window")->check(CLI::Range(1, 12));
    lift->add_option("--radius", o.radius, "tile centres checked")->check(CLI::Range(0, 8));
    lift->add_option("--plot", o.plot, "polyline dump of the lifted tiles");
    lift->callback([&] { action = run_lift; });

    auto* hyper = app.add_subcommand("hyper", "closed 4-uniform hypergraphs");
    hyper->require_subcommand(1);
    auto* k5 = hyper->add_subcommand("enumerate-k5", "snow ploughing schemes of K5 up to relabeling");
    k5->add_option("--out,-o", o.out);
    k5->callback([&] { action = run_enumerate_k5; });
    auto* haudit = hyper->add_subcommand("audit", "closure and moment identities");
    haudit->add_option("file", o.input, "hypergraph JSON")->required()->check(CLI::ExistingFile);
    haudit->add_option("--out,-o", o.out);
    haudit->callback([&] { action = run_hyper_audit; });
    auto* fs = hyper->add_subcommand("find-subgraph", "locate a 5-10 or 6-11 subgraph");
    fs->add_option("file", o.input, "hypergraph JSON")->required()->check(CLI::ExistingFile);
    fs->add_option("--out,-o", o.out);
    fs->callback([&] { action = run_find_subgraph; });
    auto* rnd = hyper->add_subcommand("random", "random closed hypergraph");
    rnd->add_option("--edges,-r", o.edges, "number of hyperedges")->check(CLI::Range(1, 10));
    rnd->add_option("--seed", o.seed);
    rnd->add_option("--out,-o", o.out);
    rnd->callback([&] { action = run_hyper_random; });

    auto* cases = app.add_subcommand("cases", "5-10 and 6-11 linear systems");
    cases->require_subcommand(1);
    auto* all = cases->add_subcommand("run-all", "solve every row and record its contradiction");
    all->add_option("--out,-o", o.out);
    all->add_option("--golden", o.golden, "directory with five_ten.json and six_eleven.json")->check(CLI::ExistingDirectory);
    all->callback([&] { action = run_cases; });
    auto* cp = cases->add_subcommand("cone-pipeline", "cone tests for the residual 5-10 row");
    cp->add_option("--out,-o", o.out);
    cp->callback([&] { action = run_cone_pipeline; });
    auto* fc = cases->add_subcommand("final-case", "projection along a surviving direction");
    fc->add_option("--x", o.x, "direction as a JSON array, default [-1,-1,-1,1,1]");
    fc->add_option("--out,-o", o.out);
    fc->callback([&] { action = run_final_case; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : input_error;
    }

    try {
        return action(o);
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const DimensionLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    } catch (const Error& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return violation;
    }
}
