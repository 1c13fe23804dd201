#pragma once

// Brute-force reference computations. They share only the number type with the library.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;
using QVec = std::vector<Q>;
using QMat = std::vector<QVec>;

inline QMat from_ints(const std::vector<std::vector<long>>& rows) {
    QMat m;
    for (const auto& r : rows) {
        QVec v;
        for (long x : r) v.emplace_back(x);
        m.push_back(v);
    }
    return m;
}

struct NamedLattice {
    std::string name;
    QMat gram;
};

inline std::vector<NamedLattice> lattice_suite() {
    return {
        {"Z2", from_ints({{1, 0}, {0, 1}})},
        {"A2", from_ints({{2, -1}, {-1, 2}})},
        {"Z3", from_ints({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})},
        {"FCC", from_ints({{2, 0, 1}, {0, 2, 1}, {1, 1, 2}})},
        {"BCC", from_ints({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}})},
        {"HEX", from_ints({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}})},
    };
}

inline QMat d4_gram() { return from_ints({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}); }

inline Q quad(const QMat& g, const std::vector<long>& v) {
    Q s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) s += g[i][j] * v[i] * v[j];
    return s;
}

/// Determinant by cofactor expansion; fine for d <= 5.
inline Q det(const QMat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    Q s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        QMat minor;
        for (std::size_t r = 1; r < n; ++r) {
            QVec row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        Q term = m[0][c] * det(minor);
        s += (c % 2 == 0) ? term : Q(-term);
    }
    return s;
}

/// Sylvester's criterion.
inline bool positive_definite(const QMat& g) {
    for (std::size_t k = 1; k <= g.size(); ++k) {
        QMat lead(g.begin(), g.begin() + static_cast<long>(k));
        for (auto& r : lead) r.resize(k);
        if (det(lead) <= 0) return false;
    }
    return true;
}

/// Gram matrix B^T B of a random small integer basis of full rank.
inline QMat random_pd_gram(std::size_t d, std::mt19937_64& rng, long spread = 2) {
    std::uniform_int_distribution<long> entry(-spread, spread);
    for (;;) {
        std::vector<std::vector<long>> b(d, std::vector<long>(d));
        for (auto& r : b)
            for (auto& x : r) x = entry(rng);
        QMat g(d, QVec(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                long s = 0;
                for (std::size_t k = 0; k < d; ++k) s += b[k][i] * b[k][j];
                g[i][j] = s;
            }
        if (positive_definite(g)) return g;
    }
}

/// Voronoi's criterion: v is relevant iff +-v are the only shortest vectors of v + 2Z^d.
/// Searches the box [-box, box]^d.
inline std::set<std::vector<long>> relevant_vectors(const QMat& g, long box = 3) {
    std::size_t d = g.size();
    std::map<std::vector<long>, std::vector<std::vector<long>>> best;
    std::map<std::vector<long>, Q> best_norm;
    std::vector<long> v(d, -box);
    for (;;) {
        std::vector<long> cls(d);
        bool zero = true;
        for (std::size_t i = 0; i < d; ++i) {
            cls[i] = ((v[i] % 2) + 2) % 2;
            zero = zero && cls[i] == 0;
        }
        if (!zero) {
            Q n = quad(g, v);
            auto it = best_norm.find(cls);
            if (it == best_norm.end() || n < it->second) {
                best_norm[cls] = n;
                best[cls] = {v};
            } else if (n == it->second) {
                best[cls].push_back(v);
            }
        }
        std::size_t i = 0;
        while (i < d && v[i] == box) v[i++] = -box;
        if (i == d) break;
        ++v[i];
    }
    std::set<std::vector<long>> out;
    for (const auto& [cls, vs] : best)
        if (vs.size() == 2) out.insert(vs.begin(), vs.end());
    return out;
}

/// Facets of the hull of full-dimensional points, by testing every d-subset.
/// Returns the number of distinct supporting hyperplanes with points on one side only.
inline std::size_t facet_count(const std::vector<QVec>& pts) {
    std::size_t n = pts.size();
    std::size_t d = pts.front().size();
    std::set<std::vector<Q>> planes;
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    auto next = [&]() {
        long i = static_cast<long>(d) - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - d + static_cast<std::size_t>(i)) --i;
        if (i < 0) return false;
        ++idx[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    do {
        // normal via cofactors of the (d-1) x d matrix of differences
        QMat diffs;
        for (std::size_t k = 1; k < d; ++k) {
            QVec row(d);
            for (std::size_t c = 0; c < d; ++c) row[c] = pts[idx[k]][c] - pts[idx[0]][c];
            diffs.push_back(row);
        }
        QVec normal(d);
        bool nonzero = false;
        for (std::size_t c = 0; c < d; ++c) {
            QMat minor;
            for (const auto& r : diffs) {
                QVec row;
                for (std::size_t k = 0; k < d; ++k)
                    if (k != c) row.push_back(r[k]);
                minor.push_back(row);
            }
            normal[c] = det(minor);
            if (c % 2 == 1) normal[c] = -normal[c];
            nonzero = nonzero || normal[c] != 0;
        }
        if (!nonzero) continue;
        Q offset = 0;
        for (std::size_t c = 0; c < d; ++c) offset += normal[c] * pts[idx[0]][c];
        int pos = 0, neg = 0;
        for (const auto& p : pts) {
            Q s = -offset;
            for (std::size_t c = 0; c < d; ++c) s += normal[c] * p[c];
            pos += s > 0;
            neg += s < 0;
        }
        if (pos > 0 && neg > 0) continue;
        if (neg > 0) {
            for (auto& x : normal) x = -x;
            offset = -offset;
        }
        Q scale = 0;
        for (const auto& x : normal)
            if (x != 0) {
                scale = abs(x);
                break;
            }
        std::vector<Q> key;
        for (const auto& x : normal) key.push_back(x / scale);
        key.push_back(offset / scale);
        planes.insert(key);
    } while (next());
    return planes.size();
}

/// Quadratic-form value x^T g x / 2 evaluated on rationals.
inline Q half_norm(const QMat& g, const QVec& x) {
    Q s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += g[i][j] * x[i] * x[j];
    return s / 2;
}

}  // namespace oracle
