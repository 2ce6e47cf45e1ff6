#pragma once

#include "invarforms/gaussian.hpp"

#include <optional>
#include <vector>

namespace invarforms {

using Vec = std::vector<GaussRational>;

/// Dense row-major matrix over Q(i).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GaussRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec column(std::size_t c) const;
  bool is_zero() const;
  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussRational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, const GaussRational& s);
Vec apply(const Matrix& a, const Vec& v);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

/// Rank by fraction-free (Bareiss) elimination after clearing denominators row
/// by row, so the working entries are Gaussian integers.
std::size_t rank(const Matrix& a);
/// Reduced row echelon form; pivot columns returned through `pivots`.
Matrix rref(Matrix a, std::vector<std::size_t>* pivots = nullptr);
/// Basis of the right kernel (one vector per free column).
std::vector<Vec> kernel(const Matrix& a);
/// Some x with a x = b, or nullopt.
std::optional<Vec> solve(const Matrix& a, const Vec& b);
std::optional<Matrix> inverse(const Matrix& a);
/// True iff every column of `w` lies in the column span of `s`.
bool span_contains(const Matrix& s, const Matrix& w);
/// Column-space intersection, returned as columns (possibly dependent-free basis).
Matrix intersect_spans(const Matrix& a, const Matrix& b);

/// Complex m x k matrix acting on real coordinates (Re x, Im x) interleaved
/// per column; rows split as (Re row, Im row).
Matrix realify(const Matrix& a);

}  // namespace invarforms
