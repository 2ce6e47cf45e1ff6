#include "invarforms/cohomology.hpp"

#include "invarforms/linalg.hpp"
#include "invarforms/operators.hpp"

#include <stdexcept>

namespace invarforms {

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::DeRham: return "deRham";
    case Theory::Dolbeault: return "dolbeault";
    case Theory::BottChern: return "bottChern";
    case Theory::Aeppli: return "aeppli";
    case Theory::MorseNovikov: return "morseNovikov";
  }
  return "";
}

Theory parse_theory(const std::string& name) {
  if (name == "deRham" || name == "derham" || name == "dR") return Theory::DeRham;
  if (name == "dolbeault") return Theory::Dolbeault;
  if (name == "bottChern" || name == "bc" || name == "BC") return Theory::BottChern;
  if (name == "aeppli" || name == "a" || name == "A") return Theory::Aeppli;
  if (name == "morseNovikov" || name == "mn" || name == "MN") return Theory::MorseNovikov;
  throw std::invalid_argument("unknown cohomology theory: " + name);
}

namespace {

void require_constant(const AlgebraSpec& s) {
  if (s.has_params()) throw ValidationError("cohomology needs all parameters instantiated");
  for (const auto& f : s.d_table)
    if (!f.is_constant()) throw ValidationError("cohomology needs constant structure equations");
}

void require_complex(const AlgebraSpec& s) {
  if (!s.frame.complex) throw ValidationError("bigraded cohomology needs a complex frame");
}

bool in_range(const Frame& f, int p, int q) { return p >= 0 && q >= 0 && p <= f.n && q <= f.n; }

std::size_t piece_dim(const Frame& f, int p, int q) { return in_range(f, p, q) ? basis(f, p, q).size() : 0; }

/// Numeric matrix of a bidegree-shifting operator, with empty shapes outside the range.
Matrix bi_matrix(const AlgebraSpec& s, int p, int q, int dp, int dq, int which) {
  const Frame& f = s.frame;
  std::size_t rows = piece_dim(f, p + dp, q + dq), cols = piece_dim(f, p, q);
  if (rows == 0 || cols == 0) return Matrix(rows, cols);
  switch (which) {
    case 0: return assemble_del(s, p, q).numeric();
    case 1: return assemble_delbar(s, p, q).numeric();
    default: return assemble_deldelbar(s, p, q).numeric();
  }
}

Matrix del_m(const AlgebraSpec& s, int p, int q) { return bi_matrix(s, p, q, 1, 0, 0); }
Matrix delbar_m(const AlgebraSpec& s, int p, int q) { return bi_matrix(s, p, q, 0, 1, 1); }
Matrix ddbar_m(const AlgebraSpec& s, int p, int q) { return bi_matrix(s, p, q, 1, 1, 2); }

Matrix from_vecs(std::size_t rows, const std::vector<Vec>& cols) {
  if (cols.empty()) return Matrix(rows, 0);
  return Matrix::from_columns(rows, cols);
}

/// Columns spanning ker∂ ∩ ker∂̄ on Λ^{p,q}.
Matrix closed_space(const AlgebraSpec& s, int p, int q) {
  std::size_t dim = piece_dim(s.frame, p, q);
  Matrix both = vstack(del_m(s, p, q), delbar_m(s, p, q));
  if (both.rows() == 0) return Matrix::identity(dim);
  return from_vecs(dim, kernel(both));
}

Matrix degree_matrix(const AlgebraSpec& s, const std::optional<Form>& theta, int k) {
  if (theta) return twisted_d(s, *theta, TwistVariant::Plain, GaussRational(1), k).numeric();
  return assemble_d(s, k).numeric();
}

std::map<int, long> degree_dims(const AlgebraSpec& s, const std::optional<Form>& theta) {
  std::map<int, long> out;
  int top = s.frame.gens();
  std::vector<long> ranks(static_cast<std::size_t>(top + 1), 0);
  for (int k = 0; k < top; ++k) ranks[static_cast<std::size_t>(k)] = static_cast<long>(rank(degree_matrix(s, theta, k)));
  for (int k = 0; k <= top; ++k) {
    long dim = static_cast<long>(basis(s.frame, k).size());
    long in = k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0;
    out[k] = dim - ranks[static_cast<std::size_t>(k)] - in;
  }
  return out;
}

}  // namespace

CohomologyReport cohomology_dims(const AlgebraSpec& s, Theory theory, const std::optional<Form>& theta) {
  require_constant(s);
  CohomologyReport r;
  r.theory = theory;
  r.notes.push_back("computed on invariant forms; identification with manifold cohomology is assumed, not verified");
  const Frame& f = s.frame;
  if (theory == Theory::DeRham) {
    r.by_degree = degree_dims(s, std::nullopt);
    return r;
  }
  if (theory == Theory::MorseNovikov) {
    Form th = theta ? *theta : Form(f);
    if (!th.is_constant()) throw ValidationError("theta must have constant coefficients");
    require_closed_one_form(s, th);
    r.theta = th;
    r.by_degree = degree_dims(s, th);
    return r;
  }
  require_complex(s);
  int n = f.n;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      long dim = static_cast<long>(piece_dim(f, p, q));
      long h = 0;
      switch (theory) {
        case Theory::Dolbeault:
          h = dim - static_cast<long>(rank(delbar_m(s, p, q))) - static_cast<long>(rank(delbar_m(s, p, q - 1)));
          break;
        case Theory::BottChern:
          h = static_cast<long>(closed_space(s, p, q).cols()) - static_cast<long>(rank(ddbar_m(s, p - 1, q - 1)));
          break;
        case Theory::Aeppli: {
          long ker = dim - static_cast<long>(rank(ddbar_m(s, p, q)));
          Matrix a = del_m(s, p - 1, q), b = delbar_m(s, p, q - 1);
          Matrix im = a.cols() == 0 ? b : (b.cols() == 0 ? a : hstack(a, b));
          h = ker - static_cast<long>(rank(im));
          break;
        }
        default: break;
      }
      r.by_bidegree[{p, q}] = h;
    }
  return r;
}

DdbarReport ddbar_lemma_check(const AlgebraSpec& s) {
  require_constant(s);
  require_complex(s);
  DdbarReport r;
  int n = s.frame.n;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      std::size_t dim = piece_dim(s.frame, p, q);
      Matrix closed = closed_space(s, p, q);
      Matrix a = del_m(s, p - 1, q), b = delbar_m(s, p, q - 1);
      Matrix exact = a.cols() == 0 ? b : (b.cols() == 0 ? a : hstack(a, b));
      bool ok = true;
      if (exact.cols() > 0 && closed.cols() > 0) {
        Matrix meet = intersect_spans(closed, exact);
        Matrix target = ddbar_m(s, p - 1, q - 1);
        if (target.cols() == 0) target = Matrix(dim, 0);
        ok = span_contains(target, meet);
      }
      r.per_bidegree[{p, q}] = ok;
      r.global = r.global && ok;
    }
  return r;
}

bool bc_to_dolbeault_injectivity(const AlgebraSpec& s, int p, int q) {
  require_constant(s);
  require_complex(s);
  if (!in_range(s.frame, p, q)) return true;
  std::size_t dim = piece_dim(s.frame, p, q);
  Matrix closed = closed_space(s, p, q);
  Matrix exact = delbar_m(s, p, q - 1);
  if (exact.cols() == 0 || closed.cols() == 0) return true;
  Matrix meet = intersect_spans(closed, exact);
  Matrix target = ddbar_m(s, p - 1, q - 1);
  if (target.cols() == 0) target = Matrix(dim, 0);
  return span_contains(target, meet);
}

namespace {

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

}  // namespace

bool weak_ddbar_check(const AlgebraSpec& s) {
  require_constant(s);
  require_complex(s);
  const Frame& f = s.frame;
  int n = f.n;
  if (n < 2) return true;
  auto src = basis(f, n - 1, n - 1);
  std::size_t N = src.size();
  std::map<Mono, std::size_t> idx;
  for (std::size_t i = 0; i < N; ++i) idx[src[i]] = i;
  // real structure: x_{σ(m)} = s_m conj(x_m), in coordinates (Re, Im) interleaved
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < N; ++i) {
    Form c = conjugate_form(Form::monomial(f, src[i]));
    const auto& [mono, coef] = *c.terms().begin();
    std::size_t j = idx.at(mono);
    GaussRational sg = coef.constant_value();
    Vec re(2 * N), im(2 * N);
    re[2 * j] += GaussRational(1);
    re[2 * i] -= sg;
    im[2 * j + 1] += GaussRational(1);
    im[2 * i + 1] += sg;
    rows.push_back(re);
    rows.push_back(im);
  }
  Matrix real_cond(rows.size(), 2 * N);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < 2 * N; ++c) real_cond(r, c) = rows[r][c];
  Matrix dbar = delbar_m(s, n - 1, n - 1);
  Matrix dl = del_m(s, n - 2, n);
  Matrix cond = real_cond;
  if (dl.cols() > 0 && !dl.is_zero()) {
    // ∂̄α ∈ im∂  ⟺  every functional vanishing on im∂ kills ∂̄α
    auto ann = kernel(transpose(dl));
    if (!ann.empty()) cond = vstack(cond, realify(transpose(from_vecs(dl.rows(), ann)) * dbar));
  } else {
    cond = vstack(cond, realify(dbar));
  }
  std::vector<Vec> witnesses;
  for (const auto& w : kernel(cond)) {
    Vec x(N);
    for (std::size_t i = 0; i < N; ++i) x[i] = w[2 * i] + GaussRational::i() * w[2 * i + 1];
    witnesses.push_back(invarforms::apply(dbar, x));
  }
  if (witnesses.empty()) return true;
  Matrix image = from_vecs(dbar.rows(), witnesses);
  Matrix target = ddbar_m(s, n - 2, n - 1);
  if (target.cols() == 0) target = Matrix(dbar.rows(), 0);
  return span_contains(target, image);
}

long delta_degrees(const AlgebraSpec& s, int k) {
  long sum = delta_degrees_single(s, k);
  long b = cohomology_dims(s, Theory::DeRham).by_degree.at(k);
  return sum - b;
}

long delta_degrees_single(const AlgebraSpec& s, int k) {
  auto bc = cohomology_dims(s, Theory::BottChern).by_bidegree;
  auto ae = cohomology_dims(s, Theory::Aeppli).by_bidegree;
  long sum = 0;
  for (const auto& [pq, h] : bc)
    if (pq.first + pq.second == k) sum += h + ae.at(pq);
  return sum - cohomology_dims(s, Theory::DeRham).by_degree.at(k);
}

}  // namespace invarforms
