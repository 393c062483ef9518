#pragma once

#include <array>
#include <string>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/frobenius.hpp"
#include "koszul/matrix.hpp"
#include "koszul/presentation.hpp"

namespace koszul {

/// Graded automorphism of A given on generators: theta(e_i) = sum_j
/// C_ij e_j. Composition f.g ("g first") has matrix M(g) M(f).
template <class F>
struct GradedAut {
  Matrix<F> matrix;
};

template <class F>
GradedAut<F> check_automorphism(const QuadraticPresentation<F>& a,
                                const Matrix<F>& m) {
  require_preserves_relations(a, m);
  return GradedAut<F>{m};
}

/// theta* on A^! is the transpose, an anti-homomorphism of composition.
template <class F>
GradedAut<F> dual_aut(const GradedAut<F>& theta) {
  return GradedAut<F>{theta.matrix.transpose()};
}

/// Algebra homomorphism sigma: A -> M_2(A) of trimmed double-Ore type:
/// scalars p, q plus blocks S[j][k] with sigma_{jk}(e_i) = sum_l
/// (S_jk)_il e_l. Block layout [[S11,S12],[S21,S22]].
template <class F>
struct SigmaHom {
  F p, q;
  std::array<std::array<Matrix<F>, 2>, 2> S;
};

namespace detail {

/// Image of a degree-2 tensor t under a hom A -> M_2(A) given by blocks:
/// out[a][b] = sum_k (blocks_{ak} (x) blocks_{kb}) t, each a tensor in
/// the n^2 basis.
template <class F>
std::array<std::array<std::vector<F>, 2>, 2> apply_m2_to_tensor2(
    const std::array<std::array<Matrix<F>, 2>, 2>& blocks,
    const std::vector<F>& t, std::size_t n) {
  std::array<std::array<std::vector<F>, 2>, 2> out;
  for (auto& row : out)
    for (auto& v : row) v.assign(n * n, F(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const F& c = t[i * n + j];
      if (c == F(0)) continue;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int k = 0; k < 2; ++k) {
            const auto& L = blocks[a][k];
            const auto& R = blocks[k][b];
            for (std::size_t ii = 0; ii < n; ++ii) {
              if (L(i, ii) == F(0)) continue;
              for (std::size_t jj = 0; jj < n; ++jj)
                out[a][b][ii * n + jj] += c * L(i, ii) * R(j, jj);
            }
          }
    }
  return out;
}

}  // namespace detail

template <class F>
SigmaHom<F> check_sigma(const QuadraticPresentation<F>& a, const F& p,
                        const F& q,
                        const std::array<std::array<Matrix<F>, 2>, 2>& S) {
  if (p == F(0)) throw ZeroP();
  const std::size_t n = a.num_generators();
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      if (S[j][k].rows() != n || S[j][k].cols() != n)
        throw NotHomomorphism("sigma block size does not match generators");
  const auto& rels = a.relations;
  for (std::size_t r = 0; r < rels.rows(); ++r) {
    auto img = detail::apply_m2_to_tensor2(S, rels.row(r), n);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (!in_row_space(rels, img[j][k]))
          throw NotHomomorphism("sigma(relation " + std::to_string(r) +
                                ") entry (" + std::to_string(j + 1) + "," +
                                std::to_string(k + 1) +
                                ") leaves the relation space");
  }
  return SigmaHom<F>{p, q, S};
}

/// The inverse phi of sigma in the sense of the two defining identities
/// sum_k phi_jk(sigma_ik(r)) = delta_ij r and sum_k sigma_kj(phi_ki(r)) =
/// delta_ij r. On generators this is a 2n x 2n block inversion; the
/// identities are then re-verified on a spanning set of A_2 and phi is
/// checked to be a homomorphism.
template <class F>
std::array<std::array<Matrix<F>, 2>, 2> invert_sigma(
    const QuadraticPresentation<F>& a, const SigmaHom<F>& sigma) {
  const std::size_t n = a.num_generators();
  Matrix<F> big(2 * n, 2 * n);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          big(j * n + i, k * n + l) = sigma.S[j][k](i, l);
  auto inv = inverse(big);
  if (!inv) throw NotInvertible("sigma has no inverse on generators");
  std::array<std::array<Matrix<F>, 2>, 2> phi;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      phi[j][k] = Matrix<F>(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          phi[j][k](i, l) = (*inv)(k * n + i, j * n + l);
    }

  // phi must itself be a homomorphism A -> M_2(A)
  const auto& rels = a.relations;
  for (std::size_t r = 0; r < rels.rows(); ++r) {
    auto img = detail::apply_m2_to_tensor2(phi, rels.row(r), n);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        if (!in_row_space(rels, img[j][k]))
          throw NotInvertible("phi fails the homomorphism law on relation " +
                              std::to_string(r));
  }

  // re-verify both defining identities on the products e_a e_b spanning A_2
  Algebra<F> alg(a);
  for (std::size_t ga = 0; ga < n; ++ga)
    for (std::size_t gb = 0; gb < n; ++gb) {
      std::vector<F> t(n * n, F(0));
      t[ga * n + gb] = F(1);
      auto base = alg.class_of_tensor2(t);
      auto st = detail::apply_m2_to_tensor2(sigma.S, t, n);
      auto pt = detail::apply_m2_to_tensor2(phi, t, n);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          std::vector<F> lhs1(alg.dim(2), F(0)), lhs2(alg.dim(2), F(0));
          for (int k = 0; k < 2; ++k) {
            auto u = detail::apply_m2_to_tensor2(phi, st[i][k], n)[j][k];
            auto v = detail::apply_m2_to_tensor2(sigma.S, pt[k][i], n)[k][j];
            auto cu = alg.class_of_tensor2(u);
            auto cv = alg.class_of_tensor2(v);
            for (std::size_t b = 0; b < lhs1.size(); ++b) {
              lhs1[b] += cu.coords[b];
              lhs2[b] += cv.coords[b];
            }
          }
          std::vector<F> want(alg.dim(2), F(0));
          if (i == j) want = base.coords;
          if (lhs1 != want || lhs2 != want)
            throw NotInvertible(
                "inverse identities fail on a degree-2 product");
        }
    }
  return phi;
}

/// det_r sigma: a |-> -q s12(s11(a)) + s22(s11(a)) - p s12(s21(a)),
/// validated as a graded automorphism.
template <class F>
GradedAut<F> det_r(const QuadraticPresentation<F>& a,
                   const SigmaHom<F>& sigma) {
  const auto& S = sigma.S;
  Matrix<F> m = S[0][0] * S[1][1] - sigma.q * (S[0][0] * S[0][1]) -
                sigma.p * (S[1][0] * S[0][1]);
  return check_automorphism(a, m);
}

/// det_l phi = -q phi11.phi21 + phi11.phi22 - p phi12.phi21.
template <class F>
GradedAut<F> det_l(const std::array<std::array<Matrix<F>, 2>, 2>& phi,
                   const F& p, const F& q) {
  Matrix<F> m = phi[1][1] * phi[0][0] - q * (phi[1][0] * phi[0][0]) -
                p * (phi[1][0] * phi[0][1]);
  return GradedAut<F>{m};
}

template <class F>
struct WXYZ {
  F W, X, Y, Z;
};

/// sigma*(delta) = (W delta, X delta; Y delta, Z delta): extend the
/// blockwise transposes multiplicatively over A^! and apply to the top
/// class of the Frobenius dual.
template <class F>
WXYZ<F> wxyz(const Algebra<F>& dual, const FrobeniusData<F>& fd,
             const std::array<std::array<Matrix<F>, 2>, 2>& blocks) {
  if (dual.dim(fd.top_degree) != 1)
    throw InconsistentDual("top component is not one-dimensional");
  std::array<std::array<GradedElement<F>, 2>, 2> acc;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      acc[i][j] = GradedElement<F>{0, {i == j ? F(1) : F(0)}};
  for (int letter : fd.delta_word) {
    // sigma*_{jk}(e_l^*) = sum_m (S_jk)_ml e_m^*
    std::array<std::array<GradedElement<F>, 2>, 2> next;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        GradedElement<F> s{acc[i][0].degree + 1,
                           std::vector<F>(dual.dim(acc[i][0].degree + 1), F(0))};
        for (int k = 0; k < 2; ++k) {
          GradedElement<F> img{
              1, blocks[k][j].col(static_cast<std::size_t>(letter))};
          auto term = dual.multiply(acc[i][k], img);
          for (std::size_t b = 0; b < s.coords.size(); ++b)
            s.coords[b] += term.coords[b];
        }
        next[i][j] = std::move(s);
      }
    acc = std::move(next);
  }
  return WXYZ<F>{acc[0][0].coords[0], acc[0][1].coords[0],
                 acc[1][0].coords[0], acc[1][1].coords[0]};
}

template <class F>
WXYZ<F> wxyz(const QuadraticPresentation<F>& a, const SigmaHom<F>& sigma) {
  Algebra<F> dual(quadratic_dual(a));
  auto fd = frobenius_structure(dual);
  return wxyz(dual, fd, sigma.S);
}

}  // namespace koszul
