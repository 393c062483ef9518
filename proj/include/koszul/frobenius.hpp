#pragma once

#include <string>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/matrix.hpp"
#include "koszul/presentation.hpp"

namespace koszul {

/// Graded Frobenius structure of a finite-dimensional computed algebra:
/// top class delta, dual basis eta, the lambda matrix and the pairing
/// tables <a,b> = coefficient of ab on delta.
template <class F>
struct FrobeniusData {
  int top_degree = 0;
  Word delta_word;
  F delta_scale = F(1);
  /// eta[j]: degree-(d-1) coordinates with e_i . eta_j = delta_ij delta
  std::vector<std::vector<F>> eta;
  Matrix<F> lambda;
  /// pairing[k](i,j) = <basis_i of E_k, basis_j of E_{d-k}>
  std::vector<Matrix<F>> pairing;
};

/// Detect the Frobenius structure of E. The top-degree search stops at
/// 2n+4; delta defaults to the selected monomial of the top component
/// with coefficient 1 (delta_scale rescales it; the downstream maps must
/// not depend on that choice).
template <class F>
FrobeniusData<F> frobenius_structure(const Algebra<F>& E,
                                     const F& delta_scale = F(1)) {
  const int hard_bound = static_cast<int>(2 * E.num_generators()) + 4;
  int top = -1;
  for (int d = 0; d <= hard_bound + 1; ++d) {
    if (E.dim(d) == 0) {
      if (E.dim(d + 1) != 0)
        throw NotFrobenius("gap in dimensions at degree " + std::to_string(d));
      top = d - 1;
      break;
    }
  }
  if (top < 0)
    throw NotFrobenius("does not terminate below hard bound " +
                       std::to_string(hard_bound));
  if (E.dim(top) != 1)
    throw NotFrobenius("top-dim != 1 (degree " + std::to_string(top) +
                       " has dim " + std::to_string(E.dim(top)) + ")");
  if (delta_scale == F(0)) throw NotFrobenius("delta scale must be nonzero");

  FrobeniusData<F> out;
  out.top_degree = top;
  out.delta_word = E.component(top).selected_monomials[0];
  out.delta_scale = delta_scale;

  for (int k = 0; k <= top; ++k) {
    const std::size_t dk = E.dim(k), dk2 = E.dim(top - k);
    if (dk != dk2)
      throw NotFrobenius("degenerate pairing at degree " + std::to_string(k) +
                         " (dims " + std::to_string(dk) + " vs " +
                         std::to_string(dk2) + ")");
    Matrix<F> pk(dk, dk2);
    for (std::size_t i = 0; i < dk; ++i) {
      GradedElement<F> a{k, std::vector<F>(dk, F(0))};
      a.coords[i] = F(1);
      for (std::size_t j = 0; j < dk2; ++j) {
        GradedElement<F> b{top - k, std::vector<F>(dk2, F(0))};
        b.coords[j] = F(1);
        auto prod = E.multiply(a, b);
        pk(i, j) = prod.coords[0] / delta_scale;
      }
    }
    if (!inverse(pk))
      throw NotFrobenius("degenerate pairing at degree " + std::to_string(k));
    out.pairing.push_back(std::move(pk));
  }

  const std::size_t n = E.num_generators();
  if (top >= 1) {
    // e_i . eta_j = delta_ij delta: columns of pairing[1]^{-1}
    auto hinv = inverse(out.pairing[1]);
    out.eta.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.eta[j] = hinv->col(j);
    // lambda_ij: eta_i . e_j = lambda_ij delta
    const auto& pm = out.pairing[static_cast<std::size_t>(top - 1)];
    out.lambda = Matrix<F>(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t b = 0; b < n; ++b)
          out.lambda(i, j) += out.eta[i][b] * pm(b, j);
  }
  return out;
}

/// <a,b> for classes a, b with deg a + deg b = top.
template <class F>
F pair(const FrobeniusData<F>& fd, const GradedElement<F>& a,
       const GradedElement<F>& b) {
  const auto& pk = fd.pairing[static_cast<std::size_t>(a.degree)];
  F s(0);
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    for (std::size_t j = 0; j < b.coords.size(); ++j)
      s += a.coords[i] * b.coords[j] * pk(i, j);
  return s;
}

/// Nakayama automorphism of the Frobenius algebra restricted to degree 1,
/// solved from <a,b> = <mu(b),a> with a over degree d-1 and b over the
/// generators. Row i is the image of generator i.
template <class F>
Matrix<F> nakayama_mu(const FrobeniusData<F>& fd) {
  if (fd.top_degree == 0) return Matrix<F>(0, 0);
  const std::size_t n = fd.pairing[1].rows();
  const int d = fd.top_degree;
  const auto& p1 = fd.pairing[1];
  const auto& pd1 = fd.pairing[static_cast<std::size_t>(d - 1)];
  auto p1t_inv = inverse(p1.transpose());
  Matrix<F> mu(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // <a, e_j> = <mu(e_j), a> for all degree d-1 basis elements a
    auto rhs = pd1.col(j);
    auto sol = p1t_inv->apply(rhs);
    for (std::size_t i = 0; i < n; ++i) mu(j, i) = sol[i];
  }
  return mu;
}

template <class F>
struct NakayamaResult {
  Matrix<F> mu_on_degree1;
  Matrix<F> nu_on_generators;
  int top_degree = 0;
};

/// Automorphism validation used across modules: theta (row i = image of
/// generator i) must be invertible and map R into R.
template <class F>
void require_preserves_relations(const QuadraticPresentation<F>& a,
                                 const Matrix<F>& theta,
                                 const char* kind = "automorphism") {
  const std::size_t n = a.num_generators();
  if (theta.rows() != n || theta.cols() != n)
    throw NotAutomorphism("matrix size does not match generator count");
  if (!inverse(theta)) throw NotAutomorphism("matrix is singular");
  const auto& rels = a.relations;
  for (std::size_t r = 0; r < rels.rows(); ++r) {
    std::vector<F> img(n * n, F(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const F& c = rels(r, i * n + j);
        if (c == F(0)) continue;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l)
            img[k * n + l] += c * theta(i, k) * theta(j, l);
      }
    if (!in_row_space(rels, img))
      throw NotAutomorphism(std::string(kind) +
                            " does not preserve relation row " +
                            std::to_string(r));
  }
}

/// Nakayama automorphism nu of A via the Frobenius structure of A^!:
/// nu|V = (-1)^(d+1) mu*, with mu* realized as the transpose.
template <class F>
NakayamaResult<F> nakayama_nu(const QuadraticPresentation<F>& a) {
  Algebra<F> dual(quadratic_dual(a));
  auto fd = frobenius_structure(dual);
  auto mu = nakayama_mu(fd);
  const int d = fd.top_degree;
  Matrix<F> nu = mu.transpose();
  if ((d + 1) % 2 != 0) nu = F(-1) * nu;
  require_preserves_relations(a, nu, "computed Nakayama map");
  return {std::move(mu), std::move(nu), d};
}

/// Homological determinant of theta: extend theta* multiplicatively over
/// A^! and read off the scalar action on the top class.
template <class F>
F hdet(const QuadraticPresentation<F>& a, const Matrix<F>& theta) {
  require_preserves_relations(a, theta);
  Algebra<F> dual(quadratic_dual(a));
  auto fd = frobenius_structure(dual);
  GradedElement<F> cur = dual.one();
  for (int letter : fd.delta_word) {
    // theta*(e_l^*) = sum_j theta_{jl} e_j^*
    GradedElement<F> img{1, theta.col(static_cast<std::size_t>(letter))};
    cur = dual.multiply(cur, img);
  }
  return cur.coords[0];
}

}  // namespace koszul
