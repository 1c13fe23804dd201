#include "paratile/hypercomb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace paratile {

// ---- hypergraphs ----------------------------------------------------------------------

Hypergraph4 Hypergraph4::from_edges(std::vector<Hyperedge> edges) {
    std::set<int> verts;
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InvalidInput("hypergraph: a hyperedge repeats a vertex");
        verts.insert(e.begin(), e.end());
    }
    std::vector<Hyperedge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidInput("hypergraph: repeated hyperedge");
    return {{verts.begin(), verts.end()}, std::move(edges)};
}

std::size_t Hypergraph4::degree(int v) const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [v](const Hyperedge& e) {
        return std::find(e.begin(), e.end(), v) != e.end();
    }));
}

std::map<int, std::size_t> Hypergraph4::degrees() const {
    std::map<int, std::size_t> out;
    for (int v : vertices) out[v] = 0;
    for (const auto& e : edges)
        for (int v : e) ++out[v];
    return out;
}

namespace {

std::size_t meet_size(const Hyperedge& a, const Hyperedge& b) {
    std::size_t n = 0;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) ++n;
    return n;
}

std::optional<int> meet(const Hyperedge& a, const Hyperedge& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return x;
    return std::nullopt;
}

bool has(const Hyperedge& e, int v) { return std::find(e.begin(), e.end(), v) != e.end(); }

}  // namespace

ClosureReport is_closed(const Hypergraph4& h) {
    ClosureReport r;
    r.empty = h.edges.empty();
    for (std::size_t i = 0; i < h.edges.size(); ++i)
        for (std::size_t j = i + 1; j < h.edges.size(); ++j) {
            std::size_t m = meet_size(h.edges[i], h.edges[j]);
            if (m != 1) {
                r.closed = false;
                r.violation = ClosureViolation::intersection;
                r.edge_pair = {static_cast<int>(i), static_cast<int>(j)};
                r.intersection_size = m;
                return r;
            }
        }
    for (const auto& [v, d] : h.degrees())
        if (d < 2) {
            r.closed = false;
            r.violation = ClosureViolation::degree;
            r.vertex = v;
            return r;
        }
    return r;
}

bool MomentReport::ok() const {
    return degree_bounds_ok &&
           std::all_of(identities.begin(), identities.end(), [](const MomentIdentity& m) { return m.holds(); });
}

long degree4_formula(long R, long V) { return R * (R - 17) / 2 + 3 * V; }

Degree4Entry degree4_table_entry(long R, long V) {
    if (V < R || V > 2 * R) return {Degree4Cell::out_of_range, 0};
    long n = degree4_formula(R, V);
    if (n < 0) return {Degree4Cell::negative, n};
    return {Degree4Cell::count, n};
}

MomentReport moment_audit(const Hypergraph4& h) {
    if (!is_closed(h).closed) throw InvalidInput("moment_audit: hypergraph is not closed");
    MomentReport r;
    r.edges = static_cast<long>(h.edges.size());
    r.vertices = static_cast<long>(h.vertices.size());
    const long R = r.edges;
    const long V = r.vertices;
    long s1 = 0, s2 = 0, t1 = 0, t2 = 0;
    for (const auto& [v, dv] : h.degrees()) {
        long m = static_cast<long>(dv);
        if (m < 2 || m > 4) r.degree_bounds_ok = false;
        if (m == 4) ++r.degree4_count;
        s1 += m;
        s2 += m * m;
        t1 += m - 2;
        t2 += (m - 2) * (m - 2);
    }
    r.identities = {
        {"sum m_v = 4R", s1, 4 * R},
        {"sum m_v^2 = R(R+3)", s2, R * (R + 3)},
        {"sum (m_v-2) = 4R-2V", t1, 4 * R - 2 * V},
        {"sum (m_v-2)^2 = R(R-13)+4V", t2, R * (R - 13) + 4 * V},
        {"#{m_v = 4} = R(R-17)/2+3V", r.degree4_count, degree4_formula(R, V)},
    };
    return r;
}

// ---- reference graphs ----------------------------------------------------------------

int five_ten_vertex(int i, int j) {
    if (i == j || i < 0 || j < 0 || i > 4 || j > 4) throw InvalidInput("five_ten_vertex: bad pair");
    if (i > j) std::swap(i, j);
    static const int base[4] = {0, 4, 7, 9};
    return base[i] + (j - i - 1);
}

std::pair<int, int> five_ten_pair(int vertex) {
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            if (five_ten_vertex(i, j) == vertex) return {i, j};
    throw InvalidInput("five_ten_pair: vertex out of range");
}

Hypergraph4 five_ten_hypergraph() {
    std::vector<Hyperedge> es;
    for (int i = 0; i < 5; ++i) {
        Hyperedge e{};
        int n = 0;
        for (int j = 0; j < 5; ++j)
            if (j != i) e[static_cast<std::size_t>(n++)] = five_ten_vertex(i, j);
        es.push_back(e);
    }
    return Hypergraph4::from_edges(es);
}

int six_eleven_vertex(int k, int l) { return 1 + 3 * k + l; }

Hypergraph4 six_eleven_hypergraph() {
    std::vector<Hyperedge> es;
    for (int k = 0; k < 3; ++k)
        es.push_back({0, six_eleven_vertex(k, 0), six_eleven_vertex(k, 1), six_eleven_vertex(k, 2)});
    for (int l = 0; l < 3; ++l)
        es.push_back({six_eleven_vertex(0, l), six_eleven_vertex(1, l), six_eleven_vertex(2, l), 10});
    return Hypergraph4::from_edges(es);
}

std::vector<std::uint32_t> canonical_form(const Hypergraph4& h) {
    const std::size_t R = h.edges.size();
    if (R > 12) throw DimensionLimit("canonical_form: more than 12 hyperedges");
    std::vector<std::vector<std::size_t>> through;
    for (int v : h.vertices) {
        std::vector<std::size_t> es;
        for (std::size_t i = 0; i < R; ++i)
            if (has(h.edges[i], v)) es.push_back(i);
        through.push_back(es);
    }
    std::vector<std::size_t> perm(R);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> best;
    do {
        std::vector<std::uint32_t> masks;
        for (const auto& es : through) {
            std::uint32_t m = 0;
            for (std::size_t i : es) m |= 1u << perm[i];
            masks.push_back(m);
        }
        std::sort(masks.begin(), masks.end());
        if (best.empty() || masks < best) best = masks;
    } while (std::next_permutation(perm.begin(), perm.end()));
    best.insert(best.begin(), static_cast<std::uint32_t>(R));
    return best;
}

bool isomorphic(const Hypergraph4& a, const Hypergraph4& b) {
    if (a.edges.size() != b.edges.size() || a.vertices.size() != b.vertices.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

// ---- subgraph extraction ---------------------------------------------------------------

std::string to_string(SubgraphKind k) { return k == SubgraphKind::five_ten ? "five_ten" : "six_eleven"; }

bool verify_embedding(const Hypergraph4& h, const SubgraphEmbedding& e) {
    Hypergraph4 ref = e.kind == SubgraphKind::five_ten ? five_ten_hypergraph() : six_eleven_hypergraph();
    if (e.edges.size() != ref.edges.size()) return false;
    if (e.vertex_map.size() != ref.vertices.size()) return false;
    std::set<int> images;
    for (const auto& [v, w] : e.vertex_map) images.insert(w);
    if (images.size() != ref.vertices.size()) return false;
    std::set<int> used(e.edges.begin(), e.edges.end());
    if (used.size() != e.edges.size()) return false;
    for (std::size_t k = 0; k < ref.edges.size(); ++k) {
        int idx = e.edges[k];
        if (idx < 0 || static_cast<std::size_t>(idx) >= h.edges.size()) return false;
        Hyperedge mapped{};
        for (std::size_t i = 0; i < 4; ++i) {
            auto it = e.vertex_map.find(h.edges[static_cast<std::size_t>(idx)][i]);
            if (it == e.vertex_map.end()) return false;
            mapped[i] = it->second;
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped != ref.edges[k]) return false;
    }
    return true;
}

namespace {

// Five hyperedges meeting pairwise in distinct points.
std::optional<SubgraphEmbedding> embed_five_ten(const Hypergraph4& h, const std::vector<int>& idx,
                                                const std::string& rule) {
    SubgraphEmbedding e{SubgraphKind::five_ten, idx, {}, rule};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            auto m = meet(h.edges[static_cast<std::size_t>(idx[i])], h.edges[static_cast<std::size_t>(idx[j])]);
            if (!m || e.vertex_map.count(*m)) return std::nullopt;
            e.vertex_map[*m] = five_ten_vertex(i, j);
        }
    if (!verify_embedding(h, e)) return std::nullopt;
    return e;
}

// Three hyperedges through s and three through t.
std::optional<SubgraphEmbedding> embed_six_eleven(const Hypergraph4& h, const std::vector<int>& through_s,
                                                  const std::vector<int>& through_t, int s, int t,
                                                  const std::string& rule) {
    SubgraphEmbedding e{SubgraphKind::six_eleven, {}, {}, rule};
    e.edges = through_s;
    e.edges.insert(e.edges.end(), through_t.begin(), through_t.end());
    e.vertex_map[s] = 0;
    e.vertex_map[t] = 10;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
            auto m = meet(h.edges[static_cast<std::size_t>(through_s[k])], h.edges[static_cast<std::size_t>(through_t[l])]);
            if (!m || e.vertex_map.count(*m)) return std::nullopt;
            e.vertex_map[*m] = six_eleven_vertex(k, l);
        }
    if (!verify_embedding(h, e)) return std::nullopt;
    return e;
}

std::vector<int> edges_through(const Hypergraph4& h, const std::vector<int>& core, int v, int avoid = -1) {
    std::vector<int> out;
    for (int i : core) {
        const Hyperedge& e = h.edges[static_cast<std::size_t>(i)];
        if (has(e, v) && (avoid < 0 || !has(e, avoid))) out.push_back(i);
    }
    return out;
}

std::map<int, std::size_t> core_degrees(const Hypergraph4& h, const std::vector<int>& core) {
    std::map<int, std::size_t> deg;
    for (int i : core)
        for (int v : h.edges[static_cast<std::size_t>(i)]) ++deg[v];
    return deg;
}

bool share_edge(const Hypergraph4& h, const std::vector<int>& core, int a, int b) {
    return std::any_of(core.begin(), core.end(), [&](int i) {
        const Hyperedge& e = h.edges[static_cast<std::size_t>(i)];
        return has(e, a) && has(e, b);
    });
}

}  // namespace

std::vector<int> strip_to_core(const Hypergraph4& h) {
    std::vector<int> core(h.edges.size());
    std::iota(core.begin(), core.end(), 0);
    bool changed = true;
    while (changed && core.size() > 1) {
        changed = false;
        auto deg = core_degrees(h, core);
        for (std::size_t k = 0; k < core.size(); ++k) {
            const Hyperedge& e = h.edges[static_cast<std::size_t>(core[k])];
            if (std::all_of(e.begin(), e.end(), [&](int v) { return deg[v] >= 3; })) {
                core.erase(core.begin() + static_cast<long>(k));
                changed = true;
                break;
            }
        }
    }
    return core;
}

SubgraphEmbedding find_5_10_or_6_11(const Hypergraph4& h) {
    ClosureReport cr = is_closed(h);
    if (!cr.closed) throw InvalidInput("find_5_10_or_6_11: hypergraph is not closed");
    if (cr.empty) throw InvalidInput("find_5_10_or_6_11: hypergraph is empty");

    std::vector<int> core = strip_to_core(h);
    auto deg = core_degrees(h, core);
    const std::size_t R = core.size();
    const std::size_t V = deg.size();
    std::vector<int> deg4, deg3plus;
    for (const auto& [v, d] : deg) {
        if (d == 4) deg4.push_back(v);
        if (d >= 3) deg3plus.push_back(v);
    }
    auto first3 = [](std::vector<int> v) {
        v.resize(3);
        return v;
    };

    // (A) two vertices of degree 4.
    if (deg4.size() >= 2) {
        int a = deg4[0], b = deg4[1];
        auto e = embed_six_eleven(h, first3(edges_through(h, core, a, b)), first3(edges_through(h, core, b, a)), a, b,
                                  "two vertices of degree 4");
        if (e) return *e;
    }
    // (B) two vertices of degree >= 3 with no common hyperedge.
    for (std::size_t i = 0; i < deg3plus.size(); ++i)
        for (std::size_t j = i + 1; j < deg3plus.size(); ++j) {
            int a = deg3plus[i], b = deg3plus[j];
            if (share_edge(h, core, a, b)) continue;
            auto e = embed_six_eleven(h, first3(edges_through(h, core, a)), first3(edges_through(h, core, b)), a, b,
                                      "two separated vertices of degree >= 3");
            if (e) return *e;
        }
    // (C) all degrees 2.
    if (deg3plus.empty()) {
        if (R == 5) {
            auto e = embed_five_ten(h, core, "all degrees 2");
            if (e) return *e;
        }
        throw SearchFailure("find_5_10_or_6_11: all degrees are 2 but R != 5");
    }
    // (D) R >= 9: five hyperedges avoiding the star of a high-degree vertex.
    if (R >= 9) {
        int v = deg4.empty() ? deg3plus[0] : deg4[0];
        std::vector<int> rest;
        for (int i : core)
            if (!has(h.edges[static_cast<std::size_t>(i)], v)) rest.push_back(i);
        rest.resize(5);
        auto e = embed_five_ten(h, rest, "five hyperedges off a high-degree star");
        if (e) return *e;
        throw SearchFailure("find_5_10_or_6_11: the off-star hyperedges do not form a 5-10 graph");
    }
    // R = 6, V = 11: the two degree-3 vertices share a hyperedge Q.
    if (R == 6 && V == 11 && deg3plus.size() == 2) {
        int a = deg3plus[0], b = deg3plus[1];
        for (int q : core) {
            const Hyperedge& Q = h.edges[static_cast<std::size_t>(q)];
            if (!has(Q, a) || !has(Q, b)) continue;
            std::vector<int> pick{q};
            for (int u : Q)
                for (int i : core)
                    if (i != q && has(h.edges[static_cast<std::size_t>(i)], u)) {
                        pick.push_back(i);
                        break;
                    }
            if (pick.size() == 5) {
                auto e = embed_five_ten(h, pick, "R = 6, V = 11, shared hyperedge");
                if (e) return *e;
            }
        }
    }
    throw SearchFailure("find_5_10_or_6_11: no case of the argument applies (R = " + std::to_string(R) +
                        ", V = " + std::to_string(V) + ")");
}

std::vector<SubgraphEmbedding> exhaustive_subgraph_search(const Hypergraph4& h, std::size_t limit) {
    std::vector<SubgraphEmbedding> out;
    const int R = static_cast<int>(h.edges.size());
    std::vector<int> pick;
    std::function<void(int, int)> choose5 = [&](int start, int left) {
        if (out.size() >= limit) return;
        if (left == 0) {
            if (auto e = embed_five_ten(h, pick, "exhaustive")) out.push_back(*e);
            return;
        }
        for (int i = start; i < R; ++i) {
            pick.push_back(i);
            choose5(i + 1, left - 1);
            pick.pop_back();
        }
    };
    choose5(0, 5);
    // 6-11: a pair of vertices with three hyperedges each, none containing both.
    for (int a : h.vertices)
        for (int b : h.vertices) {
            if (a >= b || out.size() >= limit) continue;
            std::vector<int> all(static_cast<std::size_t>(R));
            std::iota(all.begin(), all.end(), 0);
            auto sa = edges_through(h, all, a, b);
            auto sb = edges_through(h, all, b, a);
            if (sa.size() < 3 || sb.size() < 3) continue;
            if (auto e = embed_six_eleven(h, {sa[0], sa[1], sa[2]}, {sb[0], sb[1], sb[2]}, a, b, "exhaustive"))
                out.push_back(*e);
        }
    return out;
}

namespace {

// Closed hypergraphs with R hyperedges correspond to partitions of the pairs of {0..R-1} into
// cliques of size 2..4 with every point in exactly four cliques (a clique is a vertex).
struct CliqueSearch {
    int R;
    std::vector<std::vector<bool>> covered;
    std::vector<int> count;
    std::vector<std::vector<int>> cliques;
    std::mt19937_64* rng = nullptr;
    std::function<bool(const std::vector<std::vector<int>>&)> emit;

    explicit CliqueSearch(int r) : R(r), covered(r, std::vector<bool>(r, false)), count(r, 0) {}

    int uncovered_at(int i) const {
        int n = 0;
        for (int j = 0; j < R; ++j)
            if (j != i && !covered[i][j]) ++n;
        return n;
    }

    bool feasible() const {
        for (int i = 0; i < R; ++i) {
            int u = uncovered_at(i);
            int slots = 4 - count[i];
            if (slots < 0 || u > 3 * slots || (u == 0 && slots > 0) || (u > 0 && slots == 0) || u < slots) return false;
        }
        return true;
    }

    void set(const std::vector<int>& c, bool value) {
        for (std::size_t x = 0; x < c.size(); ++x) {
            count[c[x]] += value ? 1 : -1;
            for (std::size_t y = x + 1; y < c.size(); ++y) covered[c[x]][c[y]] = covered[c[y]][c[x]] = value;
        }
    }

    // Returns true to stop.
    bool run() {
        int fi = -1, fj = -1;
        for (int i = 0; i < R && fi < 0; ++i)
            for (int j = i + 1; j < R; ++j)
                if (!covered[i][j]) {
                    fi = i;
                    fj = j;
                    break;
                }
        if (fi < 0) {
            if (std::any_of(count.begin(), count.end(), [](int n) { return n != 4; })) return false;
            return emit(cliques);
        }
        std::vector<int> extra;
        for (int k = 0; k < R; ++k)
            if (k != fi && k != fj && !covered[fi][k] && !covered[fj][k] && count[k] < 4) extra.push_back(k);
        std::vector<std::vector<int>> options{{fi, fj}};
        for (std::size_t a = 0; a < extra.size(); ++a) {
            options.push_back({fi, fj, extra[a]});
            for (std::size_t b = a + 1; b < extra.size(); ++b)
                if (!covered[extra[a]][extra[b]]) options.push_back({fi, fj, extra[a], extra[b]});
        }
        if (rng) std::shuffle(options.begin(), options.end(), *rng);
        for (auto& c : options) {
            std::sort(c.begin(), c.end());
            set(c, true);
            cliques.push_back(c);
            if (feasible() && run()) return true;
            cliques.pop_back();
            set(c, false);
        }
        return false;
    }
};

Hypergraph4 from_cliques(int R, const std::vector<std::vector<int>>& cliques) {
    std::vector<Hyperedge> es(static_cast<std::size_t>(R));
    std::vector<int> filled(static_cast<std::size_t>(R), 0);
    for (std::size_t v = 0; v < cliques.size(); ++v)
        for (int i : cliques[v]) es[static_cast<std::size_t>(i)][static_cast<std::size_t>(filled[i]++)] = static_cast<int>(v);
    return Hypergraph4::from_edges(es);
}

}  // namespace

std::vector<Hypergraph4> enumerate_closed_hypergraphs(int R) {
    if (R < 1) return {};
    CliqueSearch search(R);
    std::vector<Hypergraph4> out;
    std::set<std::vector<std::uint32_t>> seen;
    search.emit = [&](const std::vector<std::vector<int>>& cliques) {
        Hypergraph4 h = from_cliques(R, cliques);
        if (seen.insert(canonical_form(h)).second) out.push_back(h);
        return false;
    };
    search.run();
    return out;
}

std::optional<Hypergraph4> random_closed_hypergraph(int R, std::mt19937_64& rng) {
    if (R < 1) return std::nullopt;
    CliqueSearch search(R);
    search.rng = &rng;
    std::optional<Hypergraph4> found;
    search.emit = [&](const std::vector<std::vector<int>>& cliques) {
        found = from_cliques(R, cliques);
        return true;
    };
    search.run();
    if (!found) return found;
    // Random vertex names and hyperedge order.
    std::vector<int> names(found->vertices.size());
    std::iota(names.begin(), names.end(), 0);
    std::shuffle(names.begin(), names.end(), rng);
    std::vector<Hyperedge> es = found->edges;
    for (auto& e : es)
        for (auto& v : e) v = names[static_cast<std::size_t>(v)];
    std::shuffle(es.begin(), es.end(), rng);
    return Hypergraph4::from_edges(es);
}

// ---- ploughing schemes ---------------------------------------------------------------

namespace {

std::array<int, 4> neighbours(int v) {
    std::array<int, 4> out{};
    int n = 0;
    for (int w = 1; w <= 5; ++w)
        if (w != v) out[static_cast<std::size_t>(n++)] = w;
    return out;
}

int partner(const Transitions& t, int v, int arriving_from) {
    auto nb = neighbours(v);
    int mate = nb[static_cast<std::size_t>(1 + t[static_cast<std::size_t>(v - 1)])];
    std::vector<int> rest;
    for (int w : nb)
        if (w != nb[0] && w != mate) rest.push_back(w);
    if (arriving_from == nb[0]) return mate;
    if (arriving_from == mate) return nb[0];
    return arriving_from == rest[0] ? rest[1] : rest[0];
}

std::pair<int, int> road(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

void PloughingScheme::validate() const {
    std::set<std::pair<int, int>> used;
    for (const auto& c : cycles) {
        if (c.size() < 3) throw InvalidInput("ploughing scheme: a cycle has fewer than 3 vertices");
        for (std::size_t k = 0; k < c.size(); ++k) {
            int a = c[k], b = c[(k + 1) % c.size()];
            if (a < 1 || a > 5 || a == b) throw InvalidInput("ploughing scheme: bad vertex sequence");
            if (!used.insert(road(a, b)).second) throw InvalidInput("ploughing scheme: an edge is used twice");
        }
    }
    if (used.size() != 10) throw InvalidInput("ploughing scheme: not every edge of K5 is covered");
}

Transitions transitions_of(const PloughingScheme& p) {
    p.validate();
    Transitions t{};
    for (const auto& c : p.cycles)
        for (std::size_t k = 0; k < c.size(); ++k) {
            int prev = c[(k + c.size() - 1) % c.size()], cur = c[k], next = c[(k + 1) % c.size()];
            auto nb = neighbours(cur);
            int other = prev == nb[0] ? next : next == nb[0] ? prev : -1;
            if (other < 0) continue;
            for (int i = 1; i < 4; ++i)
                if (nb[static_cast<std::size_t>(i)] == other) t[static_cast<std::size_t>(cur - 1)] = i - 1;
        }
    return t;
}

PloughingScheme scheme_of(const Transitions& t) {
    PloughingScheme p;
    std::set<std::pair<int, int>> used;
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) {
            if (used.count({a, b})) continue;
            std::vector<int> seq{a};
            used.insert({a, b});
            int prev = a, cur = b;
            while (true) {
                int next = partner(t, cur, prev);
                if (cur == a && next == b) break;
                seq.push_back(cur);
                used.insert(road(cur, next));
                prev = cur;
                cur = next;
            }
            p.cycles.push_back(seq);
        }
    return p;
}

Transitions relabel(const Transitions& t, const std::array<int, 5>& perm) {
    Transitions out{};
    for (int v = 1; v <= 5; ++v) {
        auto nb = neighbours(v);
        int mate = nb[static_cast<std::size_t>(1 + t[static_cast<std::size_t>(v - 1)])];
        // Pairs {nb0, mate} and the rest, mapped.
        int pv = perm[static_cast<std::size_t>(v - 1)];
        std::set<int> pair1{perm[static_cast<std::size_t>(nb[0] - 1)], perm[static_cast<std::size_t>(mate - 1)]};
        auto pnb = neighbours(pv);
        int low = pnb[0];
        int low_mate = -1;
        if (pair1.count(low)) {
            for (int x : pair1)
                if (x != low) low_mate = x;
        } else {
            for (int w : nb)
                if (w != nb[0] && w != mate && perm[static_cast<std::size_t>(w - 1)] != low)
                    low_mate = perm[static_cast<std::size_t>(w - 1)];
        }
        for (int i = 1; i < 4; ++i)
            if (pnb[static_cast<std::size_t>(i)] == low_mate) out[static_cast<std::size_t>(pv - 1)] = i - 1;
    }
    return out;
}

Transitions canonical_transitions(const Transitions& t) {
    std::array<int, 5> perm{1, 2, 3, 4, 5};
    Transitions best = t;
    do {
        best = std::min(best, relabel(t, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<PloughingScheme> reference_k5_schemes() {
    return {
        {{{1, 2, 3, 1, 4, 2, 5, 4, 3, 5}}},
        {{{1, 3, 5, 1, 2, 5, 4, 2, 3, 4}}},
        {{{1, 2, 3, 1, 4, 2, 5, 3, 4, 5}}},
        {{{1, 2, 3, 1, 4, 5, 2, 4, 3, 5}}},
        {{{1, 4, 2, 5, 3, 4, 5}, {1, 2, 3}}},
        {{{1, 2, 3, 4}, {1, 5, 2, 4, 5, 3}}},
        {{{1, 2, 3, 4, 5}, {1, 3, 5, 2, 4}}},
        {{{1, 5, 2, 4}, {1, 2, 3}, {3, 4, 5}}},
    };
}

std::vector<K5SchemeClass> enumerate_k5_schemes() {
    std::map<Transitions, K5SchemeClass> classes;
    for (int code = 0; code < 243; ++code) {
        Transitions t{};
        int c = code;
        for (int v = 0; v < 5; ++v, c /= 3) t[static_cast<std::size_t>(v)] = c % 3;
        Transitions key = canonical_transitions(t);
        auto& cls = classes[key];
        cls.canonical = key;
        ++cls.orbit_size;
    }
    auto refs = reference_k5_schemes();
    for (std::size_t i = 0; i < refs.size(); ++i) {
        auto& cls = classes.at(canonical_transitions(transitions_of(refs[i])));
        if (cls.listed_items.empty()) cls.representative = refs[i];
        cls.listed_items.push_back(static_cast<int>(i + 1));
    }
    std::vector<K5SchemeClass> out;
    for (auto& [key, cls] : classes) {
        if (cls.listed_items.empty()) cls.representative = scheme_of(key);
        cls.circuits = scheme_of(key).cycles.size();
        out.push_back(cls);
    }
    std::stable_sort(out.begin(), out.end(), [](const K5SchemeClass& a, const K5SchemeClass& b) {
        int ia = a.listed_items.empty() ? 1000 : a.listed_items.front();
        int ib = b.listed_items.empty() ? 1000 : b.listed_items.front();
        return ia < ib;
    });
    return out;
}

void VertexMatching::validate(const Hypergraph4& h) const {
    if (pairs.size() != h.edges.size()) throw InvalidInput("vertex matching: one entry per hyperedge required");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::vector<int> seen;
        for (const auto& [a, b] : pairs[k]) {
            if (a == b) throw InvalidInput("vertex matching: a vertex is paired with itself");
            seen.push_back(a);
            seen.push_back(b);
        }
        std::sort(seen.begin(), seen.end());
        if (!std::equal(seen.begin(), seen.end(), h.edges[k].begin()))
            throw InvalidInput("vertex matching: pairs do not partition hyperedge " + std::to_string(k));
    }
}

VertexMatching scheme_to_matching(const PloughingScheme& p) {
    p.validate();
    std::vector<std::vector<std::pair<int, int>>> at(5);
    for (const auto& c : p.cycles)
        for (std::size_t k = 0; k < c.size(); ++k) {
            int prev = c[(k + c.size() - 1) % c.size()], cur = c[k], next = c[(k + 1) % c.size()];
            at[static_cast<std::size_t>(cur - 1)].push_back(
                {five_ten_vertex(prev - 1, cur - 1), five_ten_vertex(cur - 1, next - 1)});
        }
    VertexMatching m;
    for (const auto& ps : at) {
        if (ps.size() != 2) throw InvalidInput("scheme_to_matching: a vertex is not visited twice");
        m.pairs.push_back({ps[0], ps[1]});
    }
    m.validate(five_ten_hypergraph());
    return m;
}

// ---- 6-11 matchings ------------------------------------------------------------------

SigmaPair relabel(const SigmaPair& p, const std::array<int, 3>& perm_s, const std::array<int, 3>& perm_sp) {
    SigmaPair out;
    for (std::size_t k = 0; k < 3; ++k)
        out.sigma[static_cast<std::size_t>(perm_s[k])] = perm_sp[static_cast<std::size_t>(p.sigma[k])];
    for (std::size_t l = 0; l < 3; ++l)
        out.sigma_prime[static_cast<std::size_t>(perm_sp[l])] = perm_s[static_cast<std::size_t>(p.sigma_prime[l])];
    return out;
}

SigmaPair swap_sides(const SigmaPair& p) { return {p.sigma_prime, p.sigma}; }

SigmaPair canonical_sigma(const SigmaPair& p) {
    SigmaPair best = p;
    std::array<int, 3> a{0, 1, 2};
    do {
        std::array<int, 3> b{0, 1, 2};
        do {
            best = std::min(best, relabel(p, a, b));
        } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    return best;
}

std::pair<int, int> image_sizes(const SigmaPair& p) {
    std::set<int> a(p.sigma.begin(), p.sigma.end());
    std::set<int> b(p.sigma_prime.begin(), p.sigma_prime.end());
    return {static_cast<int>(a.size()), static_cast<int>(b.size())};
}

VertexMatching sigma_to_matching(const SigmaPair& p) {
    VertexMatching m;
    for (int k = 0; k < 3; ++k) {
        int mate = six_eleven_vertex(k, p.sigma[static_cast<std::size_t>(k)]);
        std::vector<int> rest;
        for (int l = 0; l < 3; ++l)
            if (l != p.sigma[static_cast<std::size_t>(k)]) rest.push_back(six_eleven_vertex(k, l));
        m.pairs.push_back({std::pair{0, mate}, std::pair{rest[0], rest[1]}});
    }
    for (int l = 0; l < 3; ++l) {
        int mate = six_eleven_vertex(p.sigma_prime[static_cast<std::size_t>(l)], l);
        std::vector<int> rest;
        for (int k = 0; k < 3; ++k)
            if (k != p.sigma_prime[static_cast<std::size_t>(l)]) rest.push_back(six_eleven_vertex(k, l));
        m.pairs.push_back({std::pair{10, mate}, std::pair{rest[0], rest[1]}});
    }
    m.validate(six_eleven_hypergraph());
    return m;
}

std::vector<SigmaPair> reference_sigma_pairs() {
    return {
        {{0, 0, 0}, {0, 0, 0}}, {{0, 0, 0}, {0, 0, 1}}, {{0, 0, 0}, {0, 1, 1}}, {{0, 0, 0}, {0, 1, 2}},
        {{0, 0, 1}, {0, 0, 1}}, {{0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}}, {{0, 0, 1}, {0, 1, 0}},
        {{0, 1, 0}, {0, 1, 0}}, {{1, 0, 0}, {0, 1, 0}}, {{0, 0, 1}, {1, 0, 0}}, {{0, 1, 0}, {1, 0, 0}},
        {{1, 0, 0}, {1, 0, 0}}, {{0, 0, 1}, {0, 1, 2}}, {{0, 1, 0}, {0, 1, 2}}, {{1, 0, 0}, {0, 1, 2}},
        {{0, 1, 2}, {0, 1, 2}}, {{0, 1, 2}, {1, 0, 2}},
    };
}

std::vector<SigmaClass> enumerate_6_11_matchings() {
    std::map<SigmaPair, SigmaClass> orbits;
    for (int code = 0; code < 729; ++code) {
        SigmaPair p;
        int c = code;
        for (std::size_t k = 0; k < 3; ++k, c /= 3) p.sigma[k] = c % 3;
        for (std::size_t l = 0; l < 3; ++l, c /= 3) p.sigma_prime[l] = c % 3;
        auto sizes = image_sizes(p);
        if (sizes.first > sizes.second) continue;
        SigmaPair key = canonical_sigma(p);
        auto& cls = orbits[key];
        cls.representative = key;
        cls.images = sizes;
        ++cls.orbit_size;
    }
    auto refs = reference_sigma_pairs();
    std::map<SigmaPair, int> item_of;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        SigmaPair key = canonical_sigma(refs[i]);
        if (item_of.count(key)) continue;
        item_of[key] = static_cast<int>(i + 1);
        orbits.at(key).representative = refs[i];
    }
    std::vector<SigmaClass> out;
    int next = static_cast<int>(refs.size()) + 1;
    for (auto& [key, cls] : orbits) {
        auto it = item_of.find(key);
        cls.listed = it != item_of.end();
        cls.item = cls.listed ? it->second : next++;
        out.push_back(cls);
    }
    for (auto& cls : out) {
        SigmaPair swapped = canonical_sigma(swap_sides(cls.representative));
        for (const auto& other : out)
            if (other.item < cls.item && canonical_sigma(other.representative) == swapped) cls.reduces_to = other.item;
    }
    std::sort(out.begin(), out.end(), [](const SigmaClass& a, const SigmaClass& b) { return a.item < b.item; });
    return out;
}

}  // namespace paratile
