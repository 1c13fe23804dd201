#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "paratile/errors.hpp"

namespace paratile {

using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;      // row-major
using IntVec = std::vector<long>;  // coordinates of lattice vectors

// ---- vectors -------------------------------------------------------------

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
Vec to_vec(const IntVec& v);
Vec to_vec(std::initializer_list<long> v);
IntVec to_intvec(const Vec& v);  // throws InvalidInput on non-integral entries
bool is_integral(const Vec& v);

Rational dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator-(const Vec& a);
Vec operator*(const Rational& s, const Vec& a);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
bool is_zero(const Vec& v);

/// Positive multiple of v whose entries are coprime integers. Zero stays zero.
Vec primitive_integer(const Vec& v);

/// Same, but additionally flipped so that the first nonzero entry is positive.
Vec primitive_integer_oriented(const Vec& v);

/// If a = λ·b for some rational λ, returns λ.
std::optional<Rational> parallel_ratio(const Vec& a, const Vec& b);

// ---- matrices ------------------------------------------------------------

Mat transpose(const Mat& a, std::size_t ncols = 0);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_vec(const Mat& a, const Vec& x);
Mat identity(std::size_t n);

struct Rref {
    Mat rows;                 // nonzero rows of the reduced echelon form
    std::vector<int> pivots;  // pivot column of each row
};

/// Reduced row echelon form; `ncols` is needed when `a` is empty.
Rref rref(const Mat& a, std::size_t ncols = 0);
int rank(const Mat& a);

/// Basis of {x : a x = 0} with one unit free variable per vector, free variables in column order.
Mat nullspace(const Mat& a, std::size_t ncols);

/// Particular solution of a x = b with all free variables zero, or nullopt.
std::optional<Vec> solve_particular(const Mat& a, const Vec& b, std::size_t ncols);

std::optional<Mat> inverse(const Mat& a);
Rational determinant(const Mat& a);

/// Affine rank (dimension of the affine hull) of a point set; -1 for the empty set.
int affine_dimension(const std::vector<Vec>& pts);

/// Basis of the linear span of `rows` in reduced echelon form.
Mat span_basis(const Mat& rows, std::size_t ncols);

/// Basis (rows) of the orthogonal complement of span(rows) in Q^ncols.
Mat orthogonal_complement(const Mat& rows, std::size_t ncols);

/// Orthogonal projection of v onto span(basis), basis given by independent rows.
Vec project_onto_span(const Vec& v, const Mat& basis);

// ---- integers and lattices ----------------------------------------------

Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);

/// Integer coefficients c with Σ c_i generators[i] = target, or nullopt if target is
/// outside the Z-span of the (rational) generators.
std::optional<std::vector<Integer>> lattice_coefficients(const std::vector<Vec>& generators,
                                                         const Vec& target);

// ---- formatting ----------------------------------------------------------

std::string to_string(const Rational& q);
std::string to_string(const Vec& v);
std::string to_string(const IntVec& v);

}  // namespace paratile
