#include "invarforms/linalg.hpp"

#include <stdexcept>

namespace invarforms {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussRational(1);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in product");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch in sum");
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + scaled(b, GaussRational(-1)); }

Matrix scaled(const Matrix& a, const GaussRational& s) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= s;
  return out;
}

Vec apply(const Matrix& a, const Vec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  Vec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) out(a.rows() + i, j) = b(i, j);
  }
  return out;
}

std::size_t rank(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 0 || n == 0) return 0;
  std::vector<std::vector<GaussRational>> w(m, std::vector<GaussRational>(n));
  for (std::size_t i = 0; i < m; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const auto& x = a(i, j);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im().get_den_mpz_t());
    }
    GaussRational scale{mpq_class(l)};
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a(i, j) * scale;
  }
  GaussRational prev(1);
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < m; ++col) {
    std::size_t piv = r;
    while (piv < m && w[piv][col].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(w[piv], w[r]);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) {
        GaussRational t = w[r][col] * w[i][j] - w[i][col] * w[r][j];
        w[i][j] = t / prev;
      }
      w[i][col] = GaussRational();
    }
    prev = w[r][col];
    ++r;
  }
  return r;
}

Matrix rref(Matrix a, std::vector<std::size_t>* pivots) {
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    GaussRational inv = GaussRational(1) / a(r, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, col).is_zero()) continue;
      GaussRational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    if (pivots) pivots->push_back(col);
    ++r;
  }
  return a;
}

std::vector<Vec> kernel(const Matrix& a) {
  std::vector<std::size_t> piv;
  Matrix e = rref(a, &piv);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec v(a.cols());
    v[f] = GaussRational(1);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -e(k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug = hstack(a, Matrix::from_columns(a.rows(), {b}));
  if (a.cols() == 0) {
    for (const auto& x : b)
      if (!x.is_zero()) return std::nullopt;
    return Vec{};
  }
  std::vector<std::size_t> piv;
  Matrix e = rref(aug, &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = e(k, a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  std::vector<std::size_t> piv;
  Matrix e = rref(hstack(a, Matrix::identity(n)), &piv);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = e(i, n + j);
  return out;
}

bool span_contains(const Matrix& s, const Matrix& w) {
  if (w.cols() == 0) return true;
  if (s.cols() == 0) return w.is_zero();
  return rank(hstack(s, w)) == rank(s);
}

Matrix intersect_spans(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return Matrix(a.rows(), 0);
  // a x = b y  <=>  [a | -b] (x,y) = 0
  auto ker = kernel(hstack(a, scaled(b, GaussRational(-1))));
  std::vector<Vec> cols;
  for (const auto& k : ker) {
    Vec x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(a.cols()));
    Vec v = invarforms::apply(a, x);
    bool nz = false;
    for (const auto& c : v) nz = nz || !c.is_zero();
    if (nz) cols.push_back(std::move(v));
  }
  return Matrix::from_columns(a.rows(), cols);
}

Matrix realify(const Matrix& a) {
  Matrix out(2 * a.rows(), 2 * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& z = a(i, j);
      // (p + i q)(x + i y) = (p x - q y) + i (q x + p y)
      out(2 * i, 2 * j) = GaussRational(z.re());
      out(2 * i, 2 * j + 1) = GaussRational(-z.im());
      out(2 * i + 1, 2 * j) = GaussRational(z.im());
      out(2 * i + 1, 2 * j + 1) = GaussRational(z.re());
    }
  }
  return out;
}

}  // namespace invarforms
