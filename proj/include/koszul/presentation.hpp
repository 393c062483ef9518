#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "koszul/errors.hpp"
#include "koszul/matrix.hpp"

namespace koszul {

/// Degree-n word over the generators, letters as generator indices.
using Word = std::vector<int>;

/// Finitely presented quadratic algebra T(V)/<R>. Relations are rows in
/// the n^2 monomial basis of V (x) V, lexicographic e_i (x) e_j with i
/// major, kept in RREF.
template <class F>
struct QuadraticPresentation {
  std::vector<std::string> generator_names;
  Matrix<F> relations;

  QuadraticPresentation() = default;
  QuadraticPresentation(std::vector<std::string> names, const Matrix<F>& rels)
      : generator_names(std::move(names)),
        relations(row_space_basis(rels)) {}

  std::size_t num_generators() const { return generator_names.size(); }
};

/// Monomial basis of one graded component of the quotient.
template <class F>
struct ComponentBasis {
  int degree = 0;
  std::vector<Word> selected_monomials;
  /// Projection from (previous component basis) (x) V coordinates to
  /// this component's coordinates; for degree <= 1 it is the identity.
  Matrix<F> projection;

  std::size_t dim() const { return selected_monomials.size(); }
};

template <class F>
struct GradedElement {
  int degree = 0;
  std::vector<F> coords;

  bool is_zero() const {
    for (const auto& c : coords)
      if (c != F(0)) return false;
    return true;
  }
  friend bool operator==(const GradedElement& a, const GradedElement& b) {
    return a.degree == b.degree && a.coords == b.coords;
  }
};

/// A presentation together with its component cache. Queries are
/// internally synchronized, so a shared Algebra behaves as a value.
template <class F>
class Algebra {
public:
  explicit Algebra(QuadraticPresentation<F> pres) : pres_(std::move(pres)) {}

  const QuadraticPresentation<F>& presentation() const { return pres_; }
  std::size_t num_generators() const { return pres_.num_generators(); }

  const ComponentBasis<F>& component(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    ensure(n);
    return *comps_[static_cast<std::size_t>(n)];
  }

  std::size_t dim(int n) const { return component(n).dim(); }

  std::vector<std::size_t> hilbert(int bound) const {
    std::vector<std::size_t> dims;
    for (int k = 0; k <= bound; ++k) dims.push_back(dim(k));
    return dims;
  }

  GradedElement<F> one() const { return {0, {F(1)}}; }

  GradedElement<F> generator(int i) const {
    GradedElement<F> g{1, std::vector<F>(num_generators(), F(0))};
    g.coords[static_cast<std::size_t>(i)] = F(1);
    return g;
  }

  /// Right-multiply a class by a generator.
  GradedElement<F> times_generator(const GradedElement<F>& a, int j) const {
    const std::size_t n = num_generators();
    const auto& next = component(a.degree + 1);
    std::vector<F> lifted(dim(a.degree) * n, F(0));
    for (std::size_t b = 0; b < a.coords.size(); ++b)
      lifted[b * n + static_cast<std::size_t>(j)] = a.coords[b];
    return {a.degree + 1, next.projection.apply(lifted)};
  }

  GradedElement<F> multiply(const GradedElement<F>& a,
                            const GradedElement<F>& b) const {
    if (b.degree == 0) return scale(b.coords.empty() ? F(0) : b.coords[0], a);
    if (a.degree == 0) return scale(a.coords.empty() ? F(0) : a.coords[0], b);
    const auto& cb = component(b.degree);
    GradedElement<F> acc{a.degree + b.degree,
                         std::vector<F>(dim(a.degree + b.degree), F(0))};
    for (std::size_t w = 0; w < cb.selected_monomials.size(); ++w) {
      if (b.coords[w] == F(0)) continue;
      GradedElement<F> cur = a;
      for (int letter : cb.selected_monomials[w])
        cur = times_generator(cur, letter);
      for (std::size_t k = 0; k < acc.coords.size(); ++k)
        acc.coords[k] += b.coords[w] * cur.coords[k];
    }
    return acc;
  }

  GradedElement<F> class_of_word(const Word& w) const {
    GradedElement<F> cur = one();
    for (int letter : w) cur = times_generator(cur, letter);
    return cur;
  }

  /// Class of a degree-2 tensor given in the n^2 lex basis.
  GradedElement<F> class_of_tensor2(const std::vector<F>& t) const {
    const std::size_t n = num_generators();
    GradedElement<F> acc{2, std::vector<F>(dim(2), F(0))};
    const auto& proj = component(2).projection;
    auto img = proj.apply(t);
    (void)n;
    acc.coords = img;
    return acc;
  }

  static GradedElement<F> scale(const F& s, const GradedElement<F>& a) {
    GradedElement<F> out = a;
    for (auto& c : out.coords) c = s * c;
    return out;
  }

  static GradedElement<F> add(const GradedElement<F>& a,
                              const GradedElement<F>& b) {
    GradedElement<F> out = a;
    for (std::size_t i = 0; i < out.coords.size(); ++i)
      out.coords[i] += b.coords[i];
    return out;
  }

private:
  void ensure(int n) const {
    const std::size_t ng = pres_.num_generators();
    while (comps_.size() <= static_cast<std::size_t>(n)) {
      int deg = static_cast<int>(comps_.size());
      auto c = std::make_unique<ComponentBasis<F>>();
      c->degree = deg;
      if (deg == 0) {
        c->selected_monomials = {Word{}};
        c->projection = Matrix<F>::identity(1);
      } else if (deg == 1) {
        for (std::size_t i = 0; i < ng; ++i)
          c->selected_monomials.push_back(Word{static_cast<int>(i)});
        c->projection = Matrix<F>::identity(ng);
      } else {
        build_component(deg, *c);
      }
      comps_.push_back(std::move(c));
    }
  }

  // A_n = (A_{n-1} (x) V) / image of V^{(x)(n-2)} (x) R; the older
  // insertions V^i (x) R (x) V^j already vanish in A_{n-1} (x) V.
  void build_component(int deg, ComponentBasis<F>& out) const {
    const std::size_t ng = pres_.num_generators();
    const auto& prev = *comps_[static_cast<std::size_t>(deg - 1)];
    const auto& prev2 = *comps_[static_cast<std::size_t>(deg - 2)];
    const std::size_t cols = prev.dim() * ng;
    const auto& rels = pres_.relations;

    Matrix<F> rows(0, cols);
    std::vector<F> rowbuf;
    for (std::size_t w = 0; w < prev2.dim(); ++w) {
      for (std::size_t r = 0; r < rels.rows(); ++r) {
        rowbuf.assign(cols, F(0));
        for (std::size_t i = 0; i < ng; ++i) {
          for (std::size_t j = 0; j < ng; ++j) {
            const F& cij = rels(r, i * ng + j);
            if (cij == F(0)) continue;
            // class of (w . e_i) in A_{n-1}: column w*ng+i of prev proj
            for (std::size_t b = 0; b < prev.dim(); ++b) {
              const F& cb = prev.projection(b, w * ng + i);
              if (cb != F(0)) rowbuf[b * ng + j] += cij * cb;
            }
          }
        }
        rows.append_row(rowbuf);
      }
    }

    auto [rr, pivots] = rref(std::move(rows));
    std::vector<std::size_t> free_cols;
    {
      std::size_t pi = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (pi < pivots.size() && pivots[pi] == c) { ++pi; continue; }
        free_cols.push_back(c);
      }
    }
    out.selected_monomials.clear();
    for (std::size_t c : free_cols) {
      Word w = prev.selected_monomials[c / ng];
      w.push_back(static_cast<int>(c % ng));
      out.selected_monomials.push_back(std::move(w));
    }
    Matrix<F> proj(free_cols.size(), cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      proj(k, free_cols[k]) = F(1);
      for (std::size_t i = 0; i < pivots.size(); ++i)
        proj(k, pivots[i]) = -rr(i, free_cols[k]);
    }
    out.projection = std::move(proj);
  }

  QuadraticPresentation<F> pres_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<ComponentBasis<F>>> comps_;
};

inline std::string dual_generator_name(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

/// A^! = T(V*)/<R-perp>. Under the evaluation pairing the perp space is
/// the plain null space of the relation matrix.
template <class F>
QuadraticPresentation<F> quadratic_dual(const QuadraticPresentation<F>& a) {
  std::vector<std::string> names;
  for (const auto& g : a.generator_names)
    names.push_back(dual_generator_name(g));
  const std::size_t n2 = a.num_generators() * a.num_generators();
  Matrix<F> rels = a.relations.cols() == n2 ? a.relations : Matrix<F>(0, n2);
  return QuadraticPresentation<F>(std::move(names), null_space(rels));
}

struct KoszulReport {
  std::string label = "numerical Koszulity (necessary condition)";
  bool pass = false;
  int bound = 0;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> dual_dims;
  /// convolution[m] = sum_k (-1)^k dim A!_k dim A_{m-k}; must be [m==0]
  std::vector<long long> convolution;
};

template <class F>
KoszulReport koszul_check(const Algebra<F>& a, const Algebra<F>& dual,
                          int bound) {
  KoszulReport rep;
  rep.bound = bound;
  rep.dims = a.hilbert(bound);
  rep.dual_dims = dual.hilbert(bound);
  rep.pass = true;
  for (int m = 0; m <= bound; ++m) {
    long long s = 0;
    for (int k = 0; k <= m; ++k) {
      long long term = static_cast<long long>(rep.dual_dims[k]) *
                       static_cast<long long>(rep.dims[m - k]);
      s += (k % 2 == 0) ? term : -term;
    }
    rep.convolution.push_back(s);
    if (s != (m == 0 ? 1 : 0)) rep.pass = false;
  }
  return rep;
}

template <class F>
KoszulReport koszul_check(const Algebra<F>& a, int bound) {
  Algebra<F> dual(quadratic_dual(a.presentation()));
  return koszul_check(a, dual, bound);
}

}  // namespace koszul
