#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

#include "paratile/lp.hpp"
#include "paratile/syssolve.hpp"

namespace paratile {

std::string to_string(SystemKind k) { return k == SystemKind::five_ten ? "5-10" : "6-11"; }

std::string to_string(ContradictionKind k) {
    switch (k) {
        case ContradictionKind::no_solution: return "no_solution";
        case ContradictionKind::coincidence: return "coincidence";
        case ContradictionKind::parity: return "parity";
        case ContradictionKind::nonconvex: return "nonconvex";
        case ContradictionKind::residual: return "residual";
        case ContradictionKind::coincidence_with_diagonal: return "coincidence_with_diagonal";
        case ContradictionKind::vertex_count: return "vertex_count";
    }
    return "unknown";
}

std::vector<std::string> five_ten_labels() {
    std::vector<std::string> out;
    for (int v = 0; v < 10; ++v) {
        auto [i, j] = five_ten_pair(v);
        out.push_back("v" + std::to_string(i + 1) + std::to_string(j + 1));
    }
    return out;
}

std::vector<std::string> six_eleven_labels() {
    std::vector<std::string> out{"s"};
    for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l) out.push_back("v" + std::to_string(k) + std::to_string(l) + "'");
    out.push_back("s'");
    return out;
}

int label_index(const LinearSystem& ls, const std::string& label) {
    auto it = std::find(ls.labels.begin(), ls.labels.end(), label);
    if (it == ls.labels.end()) throw InvalidInput("label_index: unknown label " + label);
    return static_cast<int>(it - ls.labels.begin());
}

std::vector<int> LinearSystem::unknowns() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!gauge[i]) out.push_back(static_cast<int>(i));
    return out;
}

LinearSystem build_system(SystemKind kind, const VertexMatching& m, std::size_t dim) {
    Hypergraph4 h = kind == SystemKind::five_ten ? five_ten_hypergraph() : six_eleven_hypergraph();
    m.validate(h);
    if (dim < 4) throw InvalidInput("build_system: the gauge needs dimension at least 4");
    LinearSystem ls;
    ls.kind = kind;
    ls.dim = dim;
    ls.labels = kind == SystemKind::five_ten ? five_ten_labels() : six_eleven_labels();
    ls.gauge.assign(ls.labels.size(), std::nullopt);
    for (std::size_t e = 0; e < m.pairs.size(); ++e) {
        const auto& [p, q] = m.pairs[e];
        ls.equations.push_back({static_cast<int>(e), {p.first, p.second}, {q.first, q.second}});
    }

    ls.gauge[0] = zero_vec(dim);
    std::size_t axis = 0;
    for (std::size_t e = 0; e < h.edges.size() && axis < 4; ++e) {
        const auto& [p, q] = m.pairs[e];
        std::pair<int, int> through, rest;
        if (p.first == 0 || p.second == 0) {
            through = p;
            rest = q;
        } else if (q.first == 0 || q.second == 0) {
            through = q;
            rest = p;
        } else {
            continue;
        }
        int mate = through.first == 0 ? through.second : through.first;
        Vec a = unit_vec(dim, axis), b = unit_vec(dim, axis + 1);
        ls.gauge[static_cast<std::size_t>(mate)] = a + b;
        ls.gauge[static_cast<std::size_t>(std::min(rest.first, rest.second))] = a;
        ls.gauge[static_cast<std::size_t>(std::max(rest.first, rest.second))] = b;
        axis += 2;
    }
    return ls;
}

LinearSystem build_system(const PloughingScheme& p, std::size_t dim) {
    return build_system(SystemKind::five_ten, scheme_to_matching(p), dim);
}

LinearSystem build_system(const SigmaPair& p, std::size_t dim) {
    return build_system(SystemKind::six_eleven, sigma_to_matching(p), dim);
}

// ---- solving --------------------------------------------------------------------------

bool SolutionFamily::parameter_free(int label) const {
    return std::all_of(coefficients.begin(), coefficients.end(),
                       [label](const Vec& c) { return sgn(c[static_cast<std::size_t>(label)]) == 0; });
}

bool SolutionFamily::parameter_free_difference(int a, int b) const {
    return std::all_of(coefficients.begin(), coefficients.end(), [a, b](const Vec& c) {
        return c[static_cast<std::size_t>(a)] == c[static_cast<std::size_t>(b)];
    });
}

Mat SolutionFamily::matrix() const {
    Mat out(system.dim, Vec(particular.size()));
    for (std::size_t j = 0; j < particular.size(); ++j)
        for (std::size_t i = 0; i < system.dim; ++i) out[i][j] = particular[j][i];
    return out;
}

bool SolutionFamily::satisfies_system() const {
    for (std::size_t i = 0; i < system.labels.size(); ++i)
        if (system.gauge[i] && (particular[i] != *system.gauge[i] || !parameter_free(static_cast<int>(i))))
            return false;
    for (const auto& eq : system.equations) {
        auto at = [&](int l) { return particular[static_cast<std::size_t>(l)]; };
        if (at(eq.lhs[0]) + at(eq.lhs[1]) != at(eq.rhs[0]) + at(eq.rhs[1])) return false;
        for (const auto& c : coefficients) {
            auto k = [&](int l) { return c[static_cast<std::size_t>(l)]; };
            if (k(eq.lhs[0]) + k(eq.lhs[1]) != k(eq.rhs[0]) + k(eq.rhs[1])) return false;
        }
    }
    return true;
}

std::optional<SolutionFamily> solve(const LinearSystem& ls) {
    std::vector<int> unknown = ls.unknowns();
    std::vector<int> column(ls.labels.size(), -1);
    for (std::size_t c = 0; c < unknown.size(); ++c) column[static_cast<std::size_t>(unknown[c])] = static_cast<int>(c);

    Mat a(ls.equations.size(), Vec(unknown.size()));
    Mat rhs(ls.dim, Vec(ls.equations.size()));
    for (std::size_t r = 0; r < ls.equations.size(); ++r) {
        const auto& eq = ls.equations[r];
        auto put = [&](int label, int sign) {
            const auto& g = ls.gauge[static_cast<std::size_t>(label)];
            if (g) {
                for (std::size_t j = 0; j < ls.dim; ++j) rhs[j][r] -= sign * (*g)[j];
            } else {
                a[r][static_cast<std::size_t>(column[static_cast<std::size_t>(label)])] += sign;
            }
        };
        put(eq.lhs[0], 1);
        put(eq.lhs[1], 1);
        put(eq.rhs[0], -1);
        put(eq.rhs[1], -1);
    }

    SolutionFamily sf;
    sf.system = ls;
    sf.particular.assign(ls.labels.size(), zero_vec(ls.dim));
    for (std::size_t i = 0; i < ls.labels.size(); ++i)
        if (ls.gauge[i]) sf.particular[i] = *ls.gauge[i];
    for (std::size_t j = 0; j < ls.dim; ++j) {
        auto x = solve_particular(a, rhs[j], unknown.size());
        if (!x) return std::nullopt;
        for (std::size_t c = 0; c < unknown.size(); ++c) sf.particular[static_cast<std::size_t>(unknown[c])][j] = (*x)[c];
    }
    for (const Vec& k : nullspace(a, unknown.size())) {
        Vec coeff = zero_vec(ls.labels.size());
        for (std::size_t c = 0; c < unknown.size(); ++c) coeff[static_cast<std::size_t>(unknown[c])] = k[c];
        sf.coefficients.push_back(coeff);
        std::size_t n = sf.parameter_names.size();
        sf.parameter_names.push_back(n < 26 ? std::string(1, static_cast<char>('a' + n)) : "p" + std::to_string(n));
    }
    return sf;
}

// ---- contradictions ---------------------------------------------------------------------

bool ContradictionReport::has(ContradictionKind k) const {
    return std::any_of(findings.begin(), findings.end(), [k](const Finding& f) { return f.kind == k; });
}

bool ContradictionReport::has(ContradictionKind k, const std::vector<int>& labels) const {
    std::set<int> want(labels.begin(), labels.end());
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) {
        if (f.kind != k) return false;
        if (k == ContradictionKind::nonconvex) return !f.labels.empty() && want == std::set<int>{f.labels[0]};
        return std::set<int>(f.labels.begin(), f.labels.end()) == want;
    });
}

ContradictionReport no_solution_report() {
    ContradictionReport r;
    r.kind = ContradictionKind::no_solution;
    r.findings.push_back({ContradictionKind::no_solution, {}, {}, {}, {}, {}, Vec{}, -1, "the system has no solution"});
    return r;
}

namespace {

bool same_point(const SolutionFamily& sf, int a, int b) {
    return sf.particular[static_cast<std::size_t>(a)] == sf.particular[static_cast<std::size_t>(b)] &&
           sf.parameter_free_difference(a, b);
}

// Generators of Λ': parameter-free points and parameter-free differences.
std::vector<Vec> parity_generators(const SolutionFamily& sf) {
    std::vector<Vec> gens;
    std::size_t n = sf.particular.size();
    std::vector<bool> used(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        if (sf.parameter_free(static_cast<int>(a))) {
            gens.push_back(sf.particular[a]);
            continue;
        }
        for (std::size_t b = 0; b < a; ++b)
            if (!sf.parameter_free(static_cast<int>(b)) &&
                sf.parameter_free_difference(static_cast<int>(a), static_cast<int>(b))) {
                gens.push_back(sf.particular[a] - sf.particular[b]);
                break;
            }
    }
    return gens;
}

bool is_parity_generator(const SolutionFamily& sf, const Vec& g) {
    std::size_t n = sf.particular.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (sf.parameter_free(static_cast<int>(a)) && sf.particular[a] == g) return true;
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && sf.parameter_free_difference(static_cast<int>(a), static_cast<int>(b)) &&
                sf.particular[a] - sf.particular[b] == g)
                return true;
    }
    return false;
}

std::optional<std::vector<Rational>> convex_weights(const Vec& target, const std::vector<Vec>& pts) {
    if (pts.empty()) return std::nullopt;
    LpProblem lp;
    lp.nvars = pts.size();
    for (std::size_t i = 0; i < target.size(); ++i) {
        Vec row(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) row[k] = pts[k][i];
        lp.add_eq(row, target[i]);
    }
    lp.add_eq(Vec(pts.size(), Rational(1)), 1);
    for (std::size_t k = 0; k < pts.size(); ++k) lp.add_ge(unit_vec(pts.size(), k), 0);
    Vec w;
    if (!lp_feasible(lp, &w)) return std::nullopt;
    return w;
}

bool all_parameter_free(const SolutionFamily& sf) {
    for (std::size_t i = 0; i < sf.particular.size(); ++i)
        if (!sf.parameter_free(static_cast<int>(i))) return false;
    return true;
}

}  // namespace

std::vector<Finding> symmetric_six_diagonal_findings(const SolutionFamily& sf) {
    std::vector<Finding> out;
    if (!all_parameter_free(sf)) return out;
    const auto& pts = sf.particular;
    int n = static_cast<int>(pts.size());
    std::vector<int> pick(6);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == 6) {
            Vec centre = zero_vec(sf.system.dim);
            for (int i : pick) centre += pts[static_cast<std::size_t>(i)];
            centre = Rational(1, 6) * centre;
            std::vector<std::pair<int, int>> axes;
            std::set<int> seen;
            for (int i : pick) {
                if (seen.count(i)) continue;
                Vec mirror = Rational(2) * centre - pts[static_cast<std::size_t>(i)];
                int mate = -1;
                for (int j : pick)
                    if (j != i && !seen.count(j) && pts[static_cast<std::size_t>(j)] == mirror) mate = j;
                if (mate < 0) return;
                seen.insert(i);
                seen.insert(mate);
                axes.push_back({i, mate});
            }
            std::vector<Vec> six;
            for (int i : pick) six.push_back(pts[static_cast<std::size_t>(i)]);
            if (affine_dimension(six) != 3) return;
            for (const auto& [a, b] : axes)
                for (const auto& eq : sf.system.equations)
                    for (const auto& diag : {eq.lhs, eq.rhs}) {
                        if (std::set<int>{diag[0], diag[1]} != std::set<int>{a, b}) continue;
                        Finding f;
                        f.kind = ContradictionKind::coincidence_with_diagonal;
                        f.labels = {std::min(a, b), std::max(a, b)};
                        f.symmetric_set = pick;
                        f.centre = centre;
                        f.hyperedge = eq.hyperedge;
                        f.note = "axis of a centrally symmetric six-point set is a parallelogram diagonal";
                        out.push_back(f);
                    }
            return;
        }
        for (int i = start; i < n; ++i) {
            pick[static_cast<std::size_t>(depth)] = i;
            rec(i + 1, depth + 1);
        }
    };
    // Distinct points only: a coincidence is reported separately.
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (same_point(sf, a, b)) return out;
    rec(0, 0);
    return out;
}

ContradictionReport detect_contradiction(const SolutionFamily& sf) {
    ContradictionReport rep;
    int n = static_cast<int>(sf.particular.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (same_point(sf, a, b)) {
                Finding f;
                f.kind = ContradictionKind::coincidence;
                f.labels = {a, b};
                rep.findings.push_back(f);
            }

    std::vector<Vec> gens = parity_generators(sf);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (!sf.parameter_free_difference(a, b)) continue;
            Vec half = Rational(1, 2) * (sf.particular[static_cast<std::size_t>(b)] - sf.particular[static_cast<std::size_t>(a)]);
            auto coeff = lattice_coefficients(gens, half);
            if (!coeff) continue;
            Finding f;
            f.kind = ContradictionKind::parity;
            f.labels = {a, b};
            f.generators = gens;
            f.lattice_coefficients = *coeff;
            if (is_zero(half)) f.note = "coincident points";
            rep.findings.push_back(f);
        }

    if (all_parameter_free(sf)) {
        for (int a = 0; a < n; ++a) {
            std::vector<int> others;
            std::vector<Vec> pts;
            for (int b = 0; b < n; ++b)
                if (b != a && !same_point(sf, a, b)) {
                    others.push_back(b);
                    pts.push_back(sf.particular[static_cast<std::size_t>(b)]);
                }
            auto w = convex_weights(sf.particular[static_cast<std::size_t>(a)], pts);
            if (!w) continue;
            Finding f;
            f.kind = ContradictionKind::nonconvex;
            f.labels.push_back(a);
            for (std::size_t k = 0; k < others.size(); ++k)
                if (sgn((*w)[k]) != 0) {
                    f.labels.push_back(others[k]);
                    f.weights.push_back((*w)[k]);
                }
            rep.findings.push_back(f);
        }
    }

    if (rep.has(ContradictionKind::coincidence)) rep.kind = ContradictionKind::coincidence;
    else if (rep.has(ContradictionKind::parity)) rep.kind = ContradictionKind::parity;
    else if (rep.has(ContradictionKind::nonconvex)) rep.kind = ContradictionKind::nonconvex;
    else rep.kind = ContradictionKind::residual;

    if (rep.kind == ContradictionKind::residual) {
        for (auto& f : symmetric_six_diagonal_findings(sf)) rep.findings.push_back(std::move(f));
        rep.resolved = rep.has(ContradictionKind::coincidence_with_diagonal);
    }
    return rep;
}

bool verify_finding(const SolutionFamily& sf, const Finding& f) {
    int n = static_cast<int>(sf.particular.size());
    auto valid = [n](int l) { return l >= 0 && l < n; };
    if (!std::all_of(f.labels.begin(), f.labels.end(), valid)) return false;
    auto pt = [&](int l) { return sf.particular[static_cast<std::size_t>(l)]; };
    switch (f.kind) {
        case ContradictionKind::no_solution:
        case ContradictionKind::residual:
        case ContradictionKind::vertex_count:
            return false;
        case ContradictionKind::coincidence:
            return f.labels.size() == 2 && f.labels[0] != f.labels[1] && pt(f.labels[0]) == pt(f.labels[1]) &&
                   sf.parameter_free_difference(f.labels[0], f.labels[1]);
        case ContradictionKind::parity: {
            if (f.labels.size() != 2 || f.generators.size() != f.lattice_coefficients.size()) return false;
            if (!sf.parameter_free_difference(f.labels[0], f.labels[1])) return false;
            Vec sum = zero_vec(sf.system.dim);
            for (std::size_t k = 0; k < f.generators.size(); ++k) {
                if (!is_parity_generator(sf, f.generators[k])) return false;
                sum += Rational(2 * f.lattice_coefficients[k]) * f.generators[k];
            }
            return sum == pt(f.labels[1]) - pt(f.labels[0]);
        }
        case ContradictionKind::nonconvex: {
            if (f.labels.size() != f.weights.size() + 1 || f.weights.empty()) return false;
            if (!all_parameter_free(sf)) return false;
            Rational total = 0;
            Vec comb = zero_vec(sf.system.dim);
            for (std::size_t k = 0; k < f.weights.size(); ++k) {
                if (sgn(f.weights[k]) < 0) return false;
                if (pt(f.labels[k + 1]) == pt(f.labels[0])) return false;
                total += f.weights[k];
                comb += f.weights[k] * pt(f.labels[k + 1]);
            }
            return total == 1 && comb == pt(f.labels[0]);
        }
        case ContradictionKind::coincidence_with_diagonal: {
            if (f.labels.size() != 2 || f.symmetric_set.size() != 6) return false;
            if (!std::all_of(f.symmetric_set.begin(), f.symmetric_set.end(), valid)) return false;
            std::vector<Vec> six;
            for (int l : f.symmetric_set) six.push_back(pt(l));
            for (const Vec& p : six) {
                Vec mirror = Rational(2) * f.centre - p;
                if (std::count(six.begin(), six.end(), mirror) != 1 || mirror == p) return false;
            }
            if (affine_dimension(six) != 3) return false;
            if (pt(f.labels[0]) + pt(f.labels[1]) != Rational(2) * f.centre) return false;
            for (const auto& eq : sf.system.equations) {
                if (eq.hyperedge != f.hyperedge) continue;
                for (const auto& diag : {eq.lhs, eq.rhs})
                    if (std::set<int>{diag[0], diag[1]} == std::set<int>(f.labels.begin(), f.labels.end())) return true;
            }
            return false;
        }
    }
    return false;
}

// ---- the full table ---------------------------------------------------------------------

std::vector<PloughingScheme> five_ten_case_schemes() {
    auto schemes = reference_k5_schemes();
    schemes[1] = PloughingScheme{{{1, 4, 3, 1, 5, 3, 2, 5, 4, 2}}};
    return schemes;
}

namespace {

void run_row(CaseRow& row, const std::function<LinearSystem()>& make) {
    row.system = make();
    row.solution = solve(*row.system);
    row.report = row.solution ? detect_contradiction(*row.solution) : no_solution_report();
}

}  // namespace

CaseTable run_all_cases(unsigned threads) {
    CaseTable table;
    std::vector<std::function<void()>> jobs;

    auto schemes = five_ten_case_schemes();
    table.five_ten.resize(schemes.size());
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        CaseRow& row = table.five_ten[i];
        row.kind = SystemKind::five_ten;
        row.item = static_cast<int>(i + 1);
        PloughingScheme p = schemes[i];
        jobs.push_back([&row, p] { run_row(row, [&] { return build_system(p); }); });
    }

    auto classes = enumerate_6_11_matchings();
    table.six_eleven.resize(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        CaseRow& row = table.six_eleven[i];
        row.kind = SystemKind::six_eleven;
        row.item = classes[i].item;
        row.listed = classes[i].listed;
        row.reduces_to = classes[i].reduces_to;
        if (row.reduces_to) continue;
        SigmaPair p = classes[i].representative;
        jobs.push_back([&row, p] { run_row(row, [&] { return build_system(p); }); });
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) jobs[j]();
    };
    unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return table;
}

}  // namespace paratile
