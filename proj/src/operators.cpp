#include "invarforms/operators.hpp"

#include <stdexcept>

namespace invarforms {

bool OperatorMatrix::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

bool OperatorMatrix::is_constant() const {
  for (const auto& e : entries)
    if (!e.is_constant()) return false;
  return true;
}

Matrix OperatorMatrix::numeric() const {
  Matrix m(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) {
      const Scalar& e = at(r, c);
      if (!e.is_constant()) throw ValidationError("operator still depends on parameters: " + e.to_string());
      m(r, c) = e.constant_value();
    }
  return m;
}

Form OperatorMatrix::apply(const Form& a) const {
  Form out(frame);
  for (std::size_t c = 0; c < cols(); ++c) {
    Scalar x = a.coefficient(src_basis[c]);
    if (x.is_zero()) continue;
    for (std::size_t r = 0; r < rows(); ++r)
      if (!at(r, c).is_zero()) out.add_term(dst_basis[r], at(r, c) * x);
  }
  return out;
}

Form OperatorMatrix::column_form(std::size_t c) const {
  Form out(frame);
  for (std::size_t r = 0; r < rows(); ++r)
    if (!at(r, c).is_zero()) out.add_term(dst_basis[r], at(r, c));
  return out;
}

OperatorMatrix matrix_of(const LinearMap& f, Frame frame, std::vector<Mono> src, std::vector<Mono> dst) {
  OperatorMatrix m;
  m.frame = frame;
  m.src_basis = std::move(src);
  m.dst_basis = std::move(dst);
  m.src_degree = m.src_basis.empty() ? 0 : popcount(m.src_basis.front());
  m.dst_degree = m.dst_basis.empty() ? 0 : popcount(m.dst_basis.front());
  m.entries.assign(m.rows() * m.cols(), Scalar());
  std::map<Mono, std::size_t> row_of;
  for (std::size_t r = 0; r < m.rows(); ++r) row_of[m.dst_basis[r]] = r;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Form img = f(Form::monomial(frame, m.src_basis[c]));
    for (const auto& [mono, coef] : img.terms()) {
      auto it = row_of.find(mono);
      if (it == row_of.end())
        throw std::logic_error("operator image leaves the target piece: " + monomial_label(frame, mono));
      m.entries[it->second * m.cols() + c] = coef;
    }
  }
  return m;
}

OperatorMatrix matrix_of_degree(const LinearMap& f, Frame frame, int src_degree, int dst_degree) {
  OperatorMatrix m = matrix_of(f, frame, basis(frame, src_degree), basis(frame, dst_degree));
  m.src_degree = src_degree;
  m.dst_degree = dst_degree;
  return m;
}

OperatorMatrix matrix_of_bidegree(const LinearMap& f, Frame frame, int p, int q, int dp, int dq) {
  OperatorMatrix m = matrix_of(f, frame, basis(frame, p, q), basis(frame, dp, dq));
  m.src_degree = p + q;
  m.dst_degree = dp + dq;
  m.src_p = p;
  m.src_q = q;
  m.dst_p = dp;
  m.dst_q = dq;
  return m;
}

OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.src_basis != b.dst_basis) throw std::invalid_argument("operators are not composable");
  OperatorMatrix out;
  out.frame = a.frame;
  out.src_degree = b.src_degree;
  out.dst_degree = a.dst_degree;
  out.src_p = b.src_p;
  out.src_q = b.src_q;
  out.dst_p = a.dst_p;
  out.dst_q = a.dst_q;
  out.src_basis = b.src_basis;
  out.dst_basis = a.dst_basis;
  out.entries.assign(out.rows() * out.cols(), Scalar());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (!b.at(k, c).is_zero()) out.entries[r * out.cols() + c] += a.at(r, k) * b.at(k, c);
    }
  return out;
}

OperatorMatrix assemble_d(const AlgebraSpec& s, int degree) {
  return matrix_of_degree([&](const Form& a) { return exterior_d(s, a); }, s.frame, degree, degree + 1);
}

namespace {

void require_complex(const AlgebraSpec& s, const char* what) {
  if (!s.frame.complex) throw ValidationError(std::string(what) + " needs a complex frame");
}

Form del_component(const AlgebraSpec& s, const Form& a, int dp, int dq) {
  require_complex(s, "del/delbar");
  Form out(s.frame);
  int n = s.frame.n;
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      Form piece = bidegree_project(a, p, q);
      if (piece.is_zero()) continue;
      out += bidegree_project(exterior_d(s, piece), p + dp, q + dq);
    }
  return out;
}

}  // namespace

Form del(const AlgebraSpec& s, const Form& a) { return del_component(s, a, 1, 0); }
Form delbar(const AlgebraSpec& s, const Form& a) { return del_component(s, a, 0, 1); }

OperatorMatrix assemble_del(const AlgebraSpec& s, int p, int q) {
  return matrix_of_bidegree([&](const Form& a) { return del(s, a); }, s.frame, p, q, p + 1, q);
}

OperatorMatrix assemble_delbar(const AlgebraSpec& s, int p, int q) {
  return matrix_of_bidegree([&](const Form& a) { return delbar(s, a); }, s.frame, p, q, p, q + 1);
}

OperatorMatrix assemble_deldelbar(const AlgebraSpec& s, int p, int q) {
  return matrix_of_bidegree([&](const Form& a) { return del(s, delbar(s, a)); }, s.frame, p, q, p + 1, q + 1);
}

namespace {

Scalar i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return Scalar(1);
    case 1: return Scalar::i();
    case 2: return Scalar(-1);
    default: return -Scalar::i();
  }
}

Form scale_by_bidegree(const Form& a, int sign) {
  Form out(a.frame());
  for (const auto& [m, c] : a.terms()) {
    auto [p, q] = bidegree(a.frame(), m);
    out.add_term(m, c * i_power(sign * (p - q)));
  }
  return out;
}

}  // namespace

Form apply_J(const Form& a, JConvention c) {
  if (!a.frame().complex) throw ValidationError("J needs a complex frame");
  return scale_by_bidegree(a, c == JConvention::PminusQ ? 1 : -1);
}

Form apply_J_inverse(const Form& a, JConvention c) {
  if (!a.frame().complex) throw ValidationError("J needs a complex frame");
  return scale_by_bidegree(a, c == JConvention::PminusQ ? -1 : 1);
}

void require_closed_one_form(const AlgebraSpec& s, const Form& theta) {
  if (!theta.is_zero() && theta.degree() != 1) throw ValidationError("theta must be a 1-form");
  if (!exterior_d(s, theta).is_zero()) throw ValidationError("theta is not closed: d theta = " + exterior_d(s, theta).to_string());
}

Form twisted_d_apply(const AlgebraSpec& s, const Form& theta, const GaussRational& ell, const Form& a) {
  Form out = exterior_d(s, a);
  if (!ell.is_zero() && !theta.is_zero()) out -= wedge(theta, a) * Scalar(ell);
  return out;
}

Form twisted_dc_apply(const AlgebraSpec& s, const Form& theta, const GaussRational& ell, const Form& a,
                      JConvention c) {
  return apply_J_inverse(twisted_d_apply(s, theta, ell, apply_J(a, c)), c);
}

OperatorMatrix twisted_d(const AlgebraSpec& s, const Form& theta, TwistVariant variant, const GaussRational& ell,
                         int degree) {
  require_closed_one_form(s, theta);
  if (variant == TwistVariant::Plain)
    return matrix_of_degree([&](const Form& a) { return twisted_d_apply(s, theta, ell, a); }, s.frame, degree,
                            degree + 1);
  require_complex(s, "c-twisted differential");
  return matrix_of_degree([&](const Form& a) { return twisted_dc_apply(s, theta, ell, a); }, s.frame, degree,
                          degree + 1);
}

std::vector<GaussRational> leading_minors(const Matrix& m) {
  std::vector<GaussRational> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    // Gaussian elimination on the leading k x k block
    Matrix b(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) b(r, c) = m(r, c);
    GaussRational det(1);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t piv = c;
      while (piv < k && b(piv, c).is_zero()) ++piv;
      if (piv == k) {
        det = GaussRational();
        break;
      }
      if (piv != c) {
        for (std::size_t j = 0; j < k; ++j) std::swap(b(piv, j), b(c, j));
        det = -det;
      }
      det *= b(c, c);
      for (std::size_t r = c + 1; r < k; ++r) {
        if (b(r, c).is_zero()) continue;
        GaussRational f = b(r, c) / b(c, c);
        for (std::size_t j = c; j < k; ++j) b(r, j) -= f * b(c, j);
      }
    }
    out.push_back(det);
  }
  return out;
}

std::vector<std::vector<Scalar>> hermitian_matrix(const Form& omega) {
  const Frame& f = omega.frame();
  if (!f.complex) throw ValidationError("Hermitian matrix needs a complex frame");
  std::vector<std::vector<Scalar>> h(static_cast<std::size_t>(f.n), std::vector<Scalar>(static_cast<std::size_t>(f.n)));
  for (int j = 0; j < f.n; ++j)
    for (int k = 0; k < f.n; ++k) {
      Mono m = (Mono{1} << j) | (Mono{1} << (f.n + k));
      h[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = -Scalar::i() * omega.coefficient(m);
    }
  return h;
}

namespace {

mpz_class factorial(int k) {
  mpz_class r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

MetricData make_metric(const AlgebraSpec& s, const Form& Omega) {
  MetricData m;
  m.spec = s;
  const Frame& f = s.frame;
  if (!Omega.is_constant()) throw ValidationError("metric data needs constant coefficients");
  if (Omega.is_zero() || Omega.degree() != 2) throw ValidationError("Omega must be a nonzero 2-form");
  int g = f.gens();
  if (g % 2) throw ValidationError("odd dimension admits no nondegenerate 2-form");
  m.n = g / 2;
  m.Omega = Form(f) + Omega;
  auto gs = static_cast<std::size_t>(g);
  m.omega_matrix = Matrix(gs, gs);
  for (const auto& [mono, c] : Omega.terms()) {
    int a = -1, b = -1;
    for (int k = 0; k < g; ++k)
      if (mono & (Mono{1} << k)) (a < 0 ? a : b) = k;
    m.omega_matrix(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = c.constant_value();
    m.omega_matrix(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) = -c.constant_value();
  }
  auto inv = inverse(m.omega_matrix);
  if (!inv) throw ValidationError("Omega is degenerate");
  m.bivector = *inv;
  if (f.complex) {
    m.omega = bidegree_project(Omega, 1, 1);
    auto h = hermitian_matrix(m.omega);
    auto ns = static_cast<std::size_t>(f.n);
    m.hmat = Matrix(ns, ns);
    for (std::size_t j = 0; j < ns; ++j)
      for (std::size_t k = 0; k < ns; ++k) m.hmat(j, k) = h[j][k].constant_value();
    for (std::size_t j = 0; j < ns; ++j)
      for (std::size_t k = 0; k < ns; ++k)
        if (m.hmat(j, k) != m.hmat(k, j).conj()) throw ValidationError("(1,1)-part is not real");
    bool pos = true;
    for (const auto& d : leading_minors(m.hmat)) pos = pos && d.is_real() && sgn(d.re()) > 0;
    m.positive = pos;
    m.dual_gram = Matrix(gs, gs);
    if (auto hinv = inverse(m.hmat)) {
      // g(∂_j, ∂̄_k) = H_jk, so the dual pairing is G(φ^j, φ̄^k) = (H^{-1})_{kj}
      for (std::size_t j = 0; j < ns; ++j)
        for (std::size_t k = 0; k < ns; ++k) {
          m.dual_gram(j, ns + k) = (*hinv)(k, j);
          m.dual_gram(ns + k, j) = (*hinv)(k, j);
        }
    }
  } else {
    m.omega = m.Omega;
  }
  m.vol = power(m.omega, m.n) * Scalar(GaussRational(mpq_class(1, factorial(m.n))));
  return m;
}

Form lefschetz_L(const MetricData& m, const Form& a) { return wedge(m.Omega, a); }

Form lefschetz_Lambda(const MetricData& m, const Form& a) {
  // -½ Σ P^{ab} ι_b ι_a; the sign is fixed by [L,Λ] = (k-n) on Λ^k
  Form out(a.frame());
  int g = a.frame().gens();
  for (int x = 0; x < g; ++x) {
    Form ia = interior(a, x);
    if (ia.is_zero()) continue;
    for (int y = 0; y < g; ++y) {
      const GaussRational& p = m.bivector(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
      if (p.is_zero()) continue;
      out += interior(ia, y) * Scalar(p * GaussRational(mpq_class(-1, 2)));
    }
  }
  return out;
}

Form lefschetz_H(const MetricData& m, const Form& a) {
  Form out(a.frame());
  for (const auto& [mono, c] : a.terms()) out.add_term(mono, c * Scalar(m.n - popcount(mono)));
  return out;
}

LefschetzOps lefschetz_ops(const MetricData& m) {
  LefschetzOps ops;
  const Frame& f = m.spec.frame;
  int top = f.gens();
  for (int k = 0; k <= top; ++k) {
    ops.L.push_back(k + 2 <= top ? matrix_of_degree([&](const Form& a) { return lefschetz_L(m, a); }, f, k, k + 2)
                                 : matrix_of(
                                       [&](const Form& a) { return lefschetz_L(m, a); }, f, basis(f, k), {}));
    ops.Lambda.push_back(k >= 2 ? matrix_of_degree([&](const Form& a) { return lefschetz_Lambda(m, a); }, f, k, k - 2)
                                : matrix_of([&](const Form& a) { return lefschetz_Lambda(m, a); }, f, basis(f, k), {}));
    ops.H.push_back(matrix_of_degree([&](const Form& a) { return lefschetz_H(m, a); }, f, k, k));
    ops.L.back().src_degree = ops.Lambda.back().src_degree = k;
    ops.L.back().dst_degree = k + 2;
    ops.Lambda.back().dst_degree = k - 2;
  }
  return ops;
}

namespace {

void require_hermitian(const MetricData& m) {
  if (!m.spec.frame.complex) throw ValidationError("Hodge star needs a complex frame");
  if (!m.positive) throw ValidationError("metric is not positive");
}

std::vector<int> bits_of(Mono mono, int g) {
  std::vector<int> out;
  for (int k = 0; k < g; ++k)
    if (mono & (Mono{1} << k)) out.push_back(k);
  return out;
}

GaussRational gram_entry(const MetricData& m, Mono x, Mono y) {
  int g = m.spec.frame.gens();
  auto bx = bits_of(x, g), by = bits_of(y, g);
  if (bx.size() != by.size()) return GaussRational();
  std::size_t k = bx.size();
  if (k == 0) return GaussRational(1);
  Matrix sub(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      sub(r, c) = m.dual_gram(static_cast<std::size_t>(bx[r]), static_cast<std::size_t>(by[c]));
  return leading_minors(sub).back();
}

}  // namespace

GaussRational inner(const MetricData& m, const Form& a, const Form& b) {
  require_hermitian(m);
  GaussRational out;
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) {
      if (popcount(x) != popcount(y)) continue;
      GaussRational e = gram_entry(m, x, y);
      if (!e.is_zero()) out += cx.constant_value() * cy.constant_value() * e;
    }
  return out;
}

Form hodge_star(const MetricData& m, const Form& a) {
  require_hermitian(m);
  const Frame& f = m.spec.frame;
  if (!a.is_homogeneous()) throw ValidationError("Hodge star needs a homogeneous form");
  Form out(f);
  if (a.is_zero()) return out;
  int k = a.degree();
  GaussRational v = top_coefficient(m.vol).constant_value();
  Mono top = f.top_mask();
  // b∧⋆a = ⟨b,a⟩ vol pairs e^C only with its complement
  for (Mono c : basis(f, k)) {
    GaussRational gca = inner(m, Form::monomial(f, c), a);
    if (gca.is_zero()) continue;
    Mono comp = top & ~c;
    out.add_term(comp, Scalar(gca * v * GaussRational(wedge_sign(c, comp))));
  }
  return out;
}

std::vector<Form> primitive_basis(const MetricData& m, int k) {
  const Frame& f = m.spec.frame;
  std::vector<Form> out;
  auto bk = basis(f, k);
  if (k < 2) {
    for (Mono b : bk) out.push_back(Form::monomial(f, b));
    return out;
  }
  Matrix lam = matrix_of_degree([&](const Form& a) { return lefschetz_Lambda(m, a); }, f, k, k - 2).numeric();
  for (const auto& v : kernel(lam)) {
    Form x(f);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) x.add_term(bk[i], Scalar(v[i]));
    out.push_back(x);
  }
  return out;
}

namespace {

Form L_power(const MetricData& m, const Form& a, int j) {
  Form out = a;
  for (int i = 0; i < j; ++i) out = lefschetz_L(m, out);
  return out;
}

}  // namespace

std::vector<std::pair<int, Form>> primitive_decompose(const MetricData& m, const Form& a) {
  const Frame& f = m.spec.frame;
  if (!a.is_homogeneous()) throw ValidationError("primitive decomposition needs a homogeneous form");
  if (a.is_zero()) return {};
  if (!a.is_constant()) throw ValidationError("primitive decomposition needs constant coefficients");
  int k = a.degree();
  auto bk = basis(f, k);
  std::map<Mono, std::size_t> row;
  for (std::size_t i = 0; i < bk.size(); ++i) row[bk[i]] = i;
  std::vector<Vec> cols;
  std::vector<std::pair<int, Form>> owners;
  for (int j = 0; 2 * j <= k; ++j)
    for (const Form& b : primitive_basis(m, k - 2 * j)) {
      Form img = L_power(m, b, j);
      if (img.is_zero()) continue;
      Vec v(bk.size());
      for (const auto& [mono, c] : img.terms()) v[row.at(mono)] = c.constant_value();
      cols.push_back(v);
      owners.emplace_back(j, b);
    }
  Vec rhs(bk.size());
  for (const auto& [mono, c] : a.terms()) rhs[row.at(mono)] = c.constant_value();
  auto x = solve(Matrix::from_columns(bk.size(), cols), rhs);
  if (!x) throw std::logic_error("Lefschetz decomposition failed");
  std::map<int, Form> parts;
  for (std::size_t i = 0; i < owners.size(); ++i) {
    if ((*x)[i].is_zero()) continue;
    auto [j, b] = owners[i];
    auto it = parts.try_emplace(j, Form(f)).first;
    it->second += b * Scalar((*x)[i]);
  }
  std::vector<std::pair<int, Form>> out;
  for (auto& [j, b] : parts)
    if (!b.is_zero()) out.emplace_back(j, b);
  return out;
}

Form weyl_residual(const MetricData& m, const Form& alpha, int j, JConvention c) {
  if (alpha.is_zero()) return alpha;
  int k = alpha.degree();
  int n = m.n;
  Form lhs = hodge_star(m, L_power(m, alpha, j));
  if (n - k - j < 0) return lhs;
  mpq_class coef(factorial(j), factorial(n - k - j));
  if ((k * (k + 1) / 2) % 2) coef = -coef;
  Form rhs = L_power(m, apply_J(alpha, c), n - k - j) * Scalar(GaussRational(coef));
  return lhs - rhs;
}

Form lemma_lcs_residual(const MetricData& m, const Form& theta, int k, int ell, const Form& a) {
  const AlgebraSpec& s = m.spec;
  return twisted_d_apply(s, theta, GaussRational(ell + k), L_power(m, a, k)) -
         L_power(m, twisted_d_apply(s, theta, GaussRational(ell), a), k);
}

std::vector<Form> verify_twisted_kahler_identity(const MetricData& m, const Form& theta, int j, int k, int ell,
                                                 JConvention c) {
  const AlgebraSpec& s = m.spec;
  require_closed_one_form(s, theta);
  if (!bidegree_project(m.Omega, 2, 0).is_zero()) throw ValidationError("Omega has a (2,0)-part: not lcK data");
  Form dO = exterior_d(s, m.Omega) - wedge(theta, m.Omega);
  if (!dO.is_zero()) throw ValidationError("d Omega != theta ^ Omega: not lcK data");
  std::vector<Form> out;
  int weight = m.n + ell - k - 2 * j;
  for (const Form& alpha : primitive_basis(m, k)) {
    Form x = L_power(m, alpha, j);
    Form lhs = lefschetz_Lambda(m, twisted_d_apply(s, theta, GaussRational(ell), x)) -
               twisted_d_apply(s, theta, GaussRational(ell - 1), lefschetz_Lambda(m, x));
    Form rhs = hodge_star(m, apply_J_inverse(twisted_d_apply(s, theta, GaussRational(weight),
                                                              apply_J(hodge_star(m, x), c)),
                                             c));
    out.push_back(lhs - rhs);
  }
  return out;
}

}  // namespace invarforms
