#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ltft/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<ltft::Rational> {
  using Real = ltft::Rational;
  using NonInteger = ltft::Rational;
  using Nested = ltft::Rational;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 20
  };
  static ltft::Rational epsilon() { return ltft::Rational(0); }
  static ltft::Rational dummy_precision() { return ltft::Rational(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<ltft::Fp> {
  using Real = ltft::Fp;
  using NonInteger = ltft::Fp;
  using Nested = ltft::Fp;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static ltft::Fp epsilon() { return ltft::Fp(0); }
  static ltft::Fp dummy_precision() { return ltft::Fp(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace ltft {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> mat_zero(Eigen::Index r, Eigen::Index c) {
  Mat<S> m(r, c);
  m.setConstant(S(0));
  return m;
}

template <class S>
Mat<S> mat_identity(Eigen::Index n) {
  Mat<S> m = mat_zero<S>(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
Vec<S> vec_unit(Eigen::Index n, Eigen::Index i) {
  Vec<S> v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = S(0);
  v(i) = S(1);
  return v;
}

// In-place reduced row echelon form. Returns the pivot columns. Deterministic:
// first nonzero entry scanning rows top-down in each column is the pivot.
template <class S>
std::vector<Eigen::Index> rref_inplace(Mat<S>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row) m.row(piv).swap(m.row(row));
    S inv = S(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      S f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
Eigen::Index rank(Mat<S> m) {
  return static_cast<Eigen::Index>(rref_inplace(m).size());
}

// Basis of the null space {v : m v = 0}, one column per free variable, in
// the canonical reduced-echelon normalisation (free coordinate set to 1).
template <class S>
Mat<S> kernel(Mat<S> m) {
  const Eigen::Index n = m.cols();
  auto pivots = rref_inplace(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<S> basis = mat_zero<S>(n, static_cast<Eigen::Index>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], static_cast<Eigen::Index>(k)) = S(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<Eigen::Index>(k)) = -m(static_cast<Eigen::Index>(r), free_cols[k]);
  }
  return basis;
}

// Column space basis in canonical form: rows of rref(m^T), transposed back.
template <class S>
Mat<S> image_basis(const Mat<S>& m) {
  Mat<S> t = m.transpose();
  auto pivots = rref_inplace(t);
  Mat<S> basis(m.rows(), static_cast<Eigen::Index>(pivots.size()));
  for (size_t k = 0; k < pivots.size(); ++k)
    basis.col(static_cast<Eigen::Index>(k)) = t.row(static_cast<Eigen::Index>(k)).transpose();
  return basis;
}

// Row-space basis in canonical (RREF) form, one row per basis vector.
template <class S>
Mat<S> row_space_basis(Mat<S> m) {
  auto pivots = rref_inplace(m);
  return m.topRows(static_cast<Eigen::Index>(pivots.size()));
}

// Solves a X = b for all columns of b; returns nullopt when inconsistent.
// When the solution is not unique the free variables are set to zero.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  Mat<S> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  auto pivots = rref_inplace(aug);
  for (auto c : pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat<S> x = mat_zero<S>(a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    x.row(pivots[r]) = aug.block(static_cast<Eigen::Index>(r), a.cols(), 1, b.cols());
  return x;
}

template <class S>
std::optional<Mat<S>> try_inverse(const Mat<S>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve<S>(m, mat_identity<S>(m.rows()));
  if (!x) return std::nullopt;
  if (Mat<S>(*x * m) != mat_identity<S>(m.rows())) return std::nullopt;
  return x;
}

template <class S>
Mat<S> inverse(const Mat<S>& m) {
  auto inv = try_inverse(m);
  if (!inv) throw std::domain_error("inverse: matrix is singular");
  return *inv;
}

template <class S>
bool is_invertible(const Mat<S>& m) {
  return m.rows() == m.cols() && rank<S>(m) == m.rows();
}

// Does every column of v lie in the column span of basis?
template <class S>
bool subspace_contains(const Mat<S>& basis, const Mat<S>& v) {
  return solve<S>(basis, v).has_value();
}

template <class S>
bool same_column_span(const Mat<S>& a, const Mat<S>& b) {
  return subspace_contains(a, b) && subspace_contains(b, a);
}

struct NotIdempotent : std::domain_error {
  NotIdempotent() : std::domain_error("split_idempotent: p*p != p") {}
};

// A subspace presented by an embedding and a projection: project * embed = id
// on the subspace and embed * project is the idempotent being split.
template <class S>
struct Splitting {
  Mat<S> embed;    // ambient x sub
  Mat<S> project;  // sub x ambient

  Eigen::Index ambient_dim() const { return embed.rows(); }
  Eigen::Index dim() const { return embed.cols(); }

  static Splitting identity(Eigen::Index n) {
    return {mat_identity<S>(n), mat_identity<S>(n)};
  }
};

template <class S>
Splitting<S> split_idempotent(const Mat<S>& p) {
  if (p.rows() != p.cols()) throw std::invalid_argument("split_idempotent: not square");
  if (Mat<S>(p * p) != p) throw NotIdempotent();
  Mat<S> embed = image_basis(p);
  // p acts as the identity on its image, so solving embed * X = p gives the
  // projection, and project * embed = id follows by injectivity of embed.
  auto project = solve<S>(embed, p);
  if (!project) throw std::logic_error("split_idempotent: inconsistent system");
  return {embed, *project};
}

}  // namespace ltft
