#pragma once

#include "invarforms/form.hpp"
#include "invarforms/linalg.hpp"
#include "invarforms/spec.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace invarforms {

/// Linear map between graded pieces in the canonical monomial bases. Entries
/// are Scalars so that symbolic specs assemble too.
struct OperatorMatrix {
  Frame frame;
  int src_degree = 0;
  int dst_degree = 0;
  /// Bidegrees, or -1 when the piece is a full degree.
  int src_p = -1, src_q = -1, dst_p = -1, dst_q = -1;
  std::vector<Mono> src_basis;
  std::vector<Mono> dst_basis;
  std::vector<Scalar> entries;  // row-major, dst_basis.size() x src_basis.size()

  std::size_t rows() const { return dst_basis.size(); }
  std::size_t cols() const { return src_basis.size(); }
  const Scalar& at(std::size_t r, std::size_t c) const { return entries[r * cols() + c]; }
  bool is_zero() const;
  bool is_constant() const;
  /// Throws ValidationError while parameters remain.
  Matrix numeric() const;
  Form apply(const Form& a) const;
  Form column_form(std::size_t c) const;
};

using LinearMap = std::function<Form(const Form&)>;

OperatorMatrix matrix_of(const LinearMap& f, Frame frame, std::vector<Mono> src, std::vector<Mono> dst);
OperatorMatrix matrix_of_degree(const LinearMap& f, Frame frame, int src_degree, int dst_degree);
OperatorMatrix matrix_of_bidegree(const LinearMap& f, Frame frame, int p, int q, int dp, int dq);
/// a after b; shapes must be composable.
OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b);

/// d on degree `degree`, Leibniz-extended from the d_table.
OperatorMatrix assemble_d(const AlgebraSpec& s, int degree);
/// d' and d'' of an integrable complex spec: the (1,0) and (0,1) components of d.
Form del(const AlgebraSpec& s, const Form& a);
Form delbar(const AlgebraSpec& s, const Form& a);
OperatorMatrix assemble_del(const AlgebraSpec& s, int p, int q);
OperatorMatrix assemble_delbar(const AlgebraSpec& s, int p, int q);
OperatorMatrix assemble_deldelbar(const AlgebraSpec& s, int p, int q);

/// Action of J on complex forms: Λ^{p,q} scaled by i^{p-q} (PminusQ) or i^{q-p}.
enum class JConvention { PminusQ, QminusP };
/// The convention fixed by the Kähler-identity calibration on the torus.
inline constexpr JConvention kJConvention = JConvention::PminusQ;
Form apply_J(const Form& a, JConvention c = kJConvention);
Form apply_J_inverse(const Form& a, JConvention c = kJConvention);

enum class TwistVariant { Plain, CTwist };
/// d_{lθ} a = da - l θ∧a.
Form twisted_d_apply(const AlgebraSpec& s, const Form& theta, const GaussRational& ell, const Form& a);
/// J^{-1} d_{lθ} J a.
Form twisted_dc_apply(const AlgebraSpec& s, const Form& theta, const GaussRational& ell, const Form& a,
                      JConvention c = kJConvention);
/// Rejects θ that is not a closed 1-form.
OperatorMatrix twisted_d(const AlgebraSpec& s, const Form& theta, TwistVariant variant, const GaussRational& ell,
                         int degree);
void require_closed_one_form(const AlgebraSpec& s, const Form& theta);

/// Hermitian data of a taming 2-form; constant coefficients only.
struct MetricData {
  AlgebraSpec spec;
  Form Omega;             // symplectic form used by L and Λ
  Form omega;             // (1,1)-part, defines g and vol (complex frames)
  Matrix hmat;            // ω = i Σ hmat_{jk} φ^j∧φ̄^k
  Matrix omega_matrix;    // Ω = ½ Σ Ω_ab e^a∧e^b over all generators
  Matrix bivector;        // inverse of omega_matrix
  Matrix dual_gram;       // complex-bilinear metric on 1-forms, generator basis
  Form vol;               // ω^n / n!
  bool positive = false;  // all leading principal minors of hmat positive
  int n = 0;              // half the real dimension
};

/// Throws ValidationError for symbolic or degenerate Ω, or a non-Hermitian (1,1)-part.
MetricData make_metric(const AlgebraSpec& s, const Form& Omega);
/// Leading principal minors of a square matrix.
std::vector<GaussRational> leading_minors(const Matrix& m);
/// Hermitian coefficient matrix of the (1,1)-part, entries -i·coef(φ^j∧φ̄^k).
std::vector<std::vector<Scalar>> hermitian_matrix(const Form& omega);

Form lefschetz_L(const MetricData& m, const Form& a);
Form lefschetz_Lambda(const MetricData& m, const Form& a);
Form lefschetz_H(const MetricData& m, const Form& a);

struct LefschetzOps {
  std::vector<OperatorMatrix> L, Lambda, H;  // indexed by source degree
};
LefschetzOps lefschetz_ops(const MetricData& m);

/// Complex-bilinear extension of the induced inner product.
GaussRational inner(const MetricData& m, const Form& a, const Form& b);
Form hodge_star(const MetricData& m, const Form& a);

/// Basis of P^k = ker Λ on Λ^k, as forms.
std::vector<Form> primitive_basis(const MetricData& m, int k);
/// a = Σ L^j b_j with b_j primitive; only nonzero components listed.
std::vector<std::pair<int, Form>> primitive_decompose(const MetricData& m, const Form& a);

/// ⋆L^j α - (-1)^{k(k+1)/2} j!/(n-k-j)! L^{n-k-j} J α for α ∈ P^k.
Form weyl_residual(const MetricData& m, const Form& alpha, int j, JConvention c = kJConvention);
/// d_{(l+k)θ} L^k a - L^k d_{lθ} a.
Form lemma_lcs_residual(const MetricData& m, const Form& theta, int k, int ell, const Form& a);
/// (Λ d_{lθ} - d_{(l-1)θ} Λ)(x) - (⋆ J^{-1} d_{(n+l-k-2j)θ} J ⋆)(x), one entry per basis
/// element x = L^j α of L^j P^k.
std::vector<Form> verify_twisted_kahler_identity(const MetricData& m, const Form& theta, int j, int k, int ell,
                                                 JConvention c = kJConvention);

}  // namespace invarforms
