#include "paratile/rational.hpp"

#include <algorithm>
#include <sstream>

namespace paratile {

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n, Rational(0));
    v.at(i) = 1;
    return v;
}

Vec to_vec(const IntVec& v) {
    Vec out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

Vec to_vec(std::initializer_list<long> v) { return to_vec(IntVec(v)); }

bool is_integral(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntVec to_intvec(const Vec& v) {
    IntVec out;
    out.reserve(v.size());
    for (const auto& q : v) {
        if (q.get_den() != 1 || !q.get_num().fits_slong_p())
            throw InvalidInput("expected an integral coordinate, got " + to_string(q));
        out.push_back(q.get_num().get_si());
    }
    return out;
}

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    r += b;
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    r -= b;
    return r;
}

Vec operator-(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Vec operator*(const Rational& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Vec& operator+=(Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("vector sum: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

Vec& operator-=(Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw InvalidInput("vector difference: dimension mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Vec primitive_integer(const Vec& v) {
    Integer l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    Integer g = 0;
    std::vector<Integer> nums;
    nums.reserve(v.size());
    for (const auto& q : v) {
        Integer n = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
        nums.push_back(n);
    }
    Vec out(v.size());
    if (g == 0) return Vec(v.size(), Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(nums[i] / g);
    return out;
}

Vec primitive_integer_oriented(const Vec& v) {
    Vec p = primitive_integer(v);
    for (const auto& q : p) {
        if (sgn(q) > 0) break;
        if (sgn(q) < 0) return -p;
    }
    return p;
}

std::optional<Rational> parallel_ratio(const Vec& a, const Vec& b) {
    if (a.size() != b.size() || is_zero(b)) return std::nullopt;
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(b[i]) == 0) {
            if (sgn(a[i]) != 0) return std::nullopt;
            continue;
        }
        Rational r = a[i] / b[i];
        if (lambda && *lambda != r) return std::nullopt;
        lambda = r;
    }
    return lambda;
}

Mat transpose(const Mat& a, std::size_t ncols) {
    std::size_t n = a.empty() ? ncols : a.front().size();
    Mat t(n, Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = a[i][j];
    return t;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    std::size_t inner = a.front().size();
    if (b.size() != inner) throw InvalidInput("mat_mul: dimension mismatch");
    std::size_t m = b.empty() ? 0 : b.front().size();
    Mat c(a.size(), Vec(m, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
    return y;
}

Mat identity(std::size_t n) {
    Mat m(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Rref rref(const Mat& a, std::size_t ncols) {
    Mat m = a;
    std::size_t n = m.empty() ? ncols : m.front().size();
    Rref out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < n; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || sgn(m[i][col]) == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < n; ++j)
                if (sgn(m[row][j]) != 0) m[i][j] -= f * m[row][j];
        }
        out.pivots.push_back(static_cast<int>(col));
        ++row;
    }
    m.resize(row);
    out.rows = std::move(m);
    return out;
}

int rank(const Mat& a) { return static_cast<int>(rref(a).pivots.size()); }

Mat nullspace(const Mat& a, std::size_t ncols) {
    Rref r = rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : r.pivots) is_pivot[p] = true;
    Mat basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        Vec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.rows.size(); ++i) v[r.pivots[i]] = -r.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve_particular(const Mat& a, const Vec& b, std::size_t ncols) {
    if (a.size() != b.size()) throw InvalidInput("solve: dimension mismatch");
    Mat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    Rref r = rref(aug, ncols + 1);
    Vec x(ncols, Rational(0));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        if (static_cast<std::size_t>(r.pivots[i]) == ncols) return std::nullopt;
        x[r.pivots[i]] = r.rows[i][ncols];
    }
    return x;
}

std::optional<Mat> inverse(const Mat& a) {
    std::size_t n = a.size();
    Mat aug = a;
    for (std::size_t i = 0; i < n; ++i) {
        if (aug[i].size() != n) throw InvalidInput("inverse: matrix is not square");
        for (std::size_t j = 0; j < n; ++j) aug[i].emplace_back(i == j ? 1 : 0);
    }
    Rref r = rref(aug, 2 * n);
    if (r.pivots.size() < n || static_cast<std::size_t>(r.pivots[n - 1]) != n - 1) return std::nullopt;
    Mat inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = r.rows[i][n + j];
    return inv;
}

Rational determinant(const Mat& a) {
    Mat m = a;
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(m[piv][col]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

int affine_dimension(const std::vector<Vec>& pts) {
    if (pts.empty()) return -1;
    Mat diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
    return rank(diffs);
}

Mat span_basis(const Mat& rows, std::size_t ncols) { return rref(rows, ncols).rows; }

Mat orthogonal_complement(const Mat& rows, std::size_t ncols) { return nullspace(rows, ncols); }

Vec project_onto_span(const Vec& v, const Mat& basis) {
    if (basis.empty()) return zero_vec(v.size());
    // Solve (B Bᵀ) c = B v, projection = Bᵀ c.
    std::size_t k = basis.size();
    Mat gram(k, Vec(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], v);
    }
    auto c = solve_particular(gram, rhs, k);
    if (!c) throw InvalidInput("project_onto_span: dependent basis");
    Vec out = zero_vec(v.size());
    for (std::size_t i = 0; i < k; ++i) out += (*c)[i] * basis[i];
    return out;
}

Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_q(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::optional<std::vector<Integer>> lattice_coefficients(const std::vector<Vec>& generators,
                                                         const Vec& target) {
    std::size_t n = target.size();
    std::size_t m = generators.size();
    Integer l = 1;
    auto absorb = [&](const Vec& v) {
        for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    };
    for (const auto& g : generators) {
        if (g.size() != n) throw InvalidInput("lattice_coefficients: dimension mismatch");
        absorb(g);
    }
    absorb(target);
    // Columns are generators; column operations are mirrored on the unimodular matrix u.
    std::vector<std::vector<Integer>> h(n, std::vector<Integer>(m));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = generators[j][i] * Rational(l);
            h[i][j] = s.get_num();
        }
    std::vector<Integer> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = Rational(target[i] * Rational(l)).get_num();
    std::vector<std::vector<Integer>> u(m, std::vector<Integer>(m, 0));
    for (std::size_t j = 0; j < m; ++j) u[j][j] = 1;

    auto col_combine = [&](std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                           const Integer& r, const Integer& s) {
        // (col a, col b) <- (p*a + q*b, r*a + s*b)
        for (std::size_t i = 0; i < n; ++i) {
            Integer x = h[i][a], y = h[i][b];
            h[i][a] = p * x + q * y;
            h[i][b] = r * x + s * y;
        }
        for (std::size_t i = 0; i < m; ++i) {
            Integer x = u[i][a], y = u[i][b];
            u[i][a] = p * x + q * y;
            u[i][b] = r * x + s * y;
        }
    };

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t col = 0;
    for (std::size_t row = 0; row < n && col < m; ++row) {
        for (std::size_t j = col + 1; j < m; ++j) {
            if (h[row][j] == 0) continue;
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h[row][col].get_mpz_t(),
                       h[row][j].get_mpz_t());
            Integer a = h[row][col] / g, b = h[row][j] / g;
            col_combine(col, j, x, y, -b, a);
        }
        if (h[row][col] != 0) {
            pivots.emplace_back(row, col);
            ++col;
        }
    }
    std::vector<Integer> y(m, 0);
    std::vector<Integer> residual = t;
    for (auto [row, c] : pivots) {
        // Rows between pivots must already be consistent with earlier choices.
        if (residual[row] % h[row][c] != 0) return std::nullopt;
        y[c] = residual[row] / h[row][c];
        for (std::size_t i = 0; i < n; ++i) residual[i] -= h[i][c] * y[c];
    }
    for (const auto& r : residual)
        if (r != 0) return std::nullopt;
    std::vector<Integer> x(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x[i] += u[i][j] * y[j];
    return x;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Vec& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
    os << ']';
    return os.str();
}

std::string to_string(const IntVec& v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ']';
    return os.str();
}

}  // namespace paratile
