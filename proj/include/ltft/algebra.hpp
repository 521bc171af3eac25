#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ltft/tensor.hpp"

namespace ltft {

// Finite-dimensional associative unital algebra given by structure constants
// in a fixed basis: a_i a_j = sum_k c[i][j][k] a_k. No canonicalisation of
// the basis is attempted; everything downstream is basis-stable.
template <class S>
struct Algebra {
  Eigen::Index dim = 0;
  std::vector<Mat<S>> left;  // left[i](k,j) = c_{ij}^k, i.e. the matrix of L_{a_i}
  Vec<S> unit;

  const S& c(Eigen::Index i, Eigen::Index j, Eigen::Index k) const {
    return left[static_cast<size_t>(i)](k, j);
  }

  Vec<S> multiply(const Vec<S>& x, const Vec<S>& y) const {
    Vec<S> out = mat_zero<S>(dim, 1);
    for (Eigen::Index i = 0; i < dim; ++i)
      if (!x(i).is_zero()) out += x(i) * (left[static_cast<size_t>(i)] * y);
    return out;
  }

  Mat<S> left_mult(const Vec<S>& x) const {
    Mat<S> out = mat_zero<S>(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      if (!x(i).is_zero()) out += x(i) * left[static_cast<size_t>(i)];
    return out;
  }

  Mat<S> right_mult(const Vec<S>& y) const {
    Mat<S> out = mat_zero<S>(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
      Vec<S> col = multiply(vec_unit<S>(dim, j), y);
      out.col(j) = col;
    }
    return out;
  }

  Vec<S> basis(Eigen::Index i) const { return vec_unit<S>(dim, i); }

  std::optional<std::string> check() const {
    for (Eigen::Index i = 0; i < dim; ++i) {
      Vec<S> e = basis(i);
      if (multiply(unit, e) != e || multiply(e, unit) != e)
        return "unit fails on basis element " + std::to_string(i);
    }
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        Vec<S> ij = multiply(basis(i), basis(j));
        for (Eigen::Index k = 0; k < dim; ++k) {
          if (multiply(ij, basis(k)) != multiply(basis(i), multiply(basis(j), basis(k))))
            return "associativity fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + ")";
        }
      }
    return std::nullopt;
  }
};

template <class S>
Algebra<S> algebra_from_table(Eigen::Index dim, const std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>>& table,
                              const Vec<S>& unit) {
  Algebra<S> a;
  a.dim = dim;
  a.left.assign(static_cast<size_t>(dim), mat_zero<S>(dim, dim));
  for (auto& [i, j, k, v] : table) a.left[static_cast<size_t>(i)](k, j) += v;
  a.unit = unit;
  return a;
}

// --- counit, Frobenius structure ------------------------------------------

template <class S>
Vec<S> trace_counit(const Algebra<S>& a) {
  Vec<S> eps(a.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i) {
    S t(0);
    for (Eigen::Index k = 0; k < a.dim; ++k) t += a.left[static_cast<size_t>(i)](k, k);
    eps(i) = t;
  }
  return eps;
}

struct NotFrobenius : std::domain_error {
  Eigen::Index gram_rank;
  explicit NotFrobenius(Eigen::Index r)
      : std::domain_error("trace pairing is degenerate (rank " + std::to_string(r) + ")"), gram_rank(r) {}
};

// The data of a Frobenius algebra with trace pairing: counit eps(a)=tr(L_a),
// Gram matrix G_ij = eps(a_i a_j), dual basis a_i' with <a_i, a_j'> = d_ij,
// and the copairing beta(1) = sum_i a_i' (x) a_i.
template <class S>
struct FrobeniusData {
  Vec<S> counit;
  Mat<S> gram;        // G_ij = eps(a_i a_j)
  Mat<S> dual_basis;  // column i = coordinates of a_i'
  Mat<S> copairing;   // beta(1)_jk: coefficient of a_j (x) a_k

  Vec<S> dual(Eigen::Index i) const { return dual_basis.col(i); }
};

template <class S>
FrobeniusData<S> frobenius_data(const Algebra<S>& a) {
  Vec<S> eps = trace_counit(a);
  Mat<S> g(a.dim, a.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    for (Eigen::Index j = 0; j < a.dim; ++j) {
      Vec<S> prod = a.multiply(a.basis(i), a.basis(j));
      S v(0);
      for (Eigen::Index k = 0; k < a.dim; ++k) v += eps(k) * prod(k);
      g(i, j) = v;
    }
  auto ginv = try_inverse(g);
  if (!ginv) throw NotFrobenius(rank<S>(g));
  FrobeniusData<S> f;
  f.counit = eps;
  f.gram = g;
  f.dual_basis = *ginv;  // a_i' = sum_j (G^{-1})_{ji} a_j
  f.copairing = *ginv;   // beta(1) = sum_i a_i' (x) a_i has coefficients (G^{-1})_{jk}
  return f;
}

template <class S>
std::optional<FrobeniusData<S>> try_frobenius(const Algebra<S>& a) {
  try {
    return frobenius_data(a);
  } catch (const NotFrobenius&) {
    return std::nullopt;
  }
}

// --- centre, commutator quotient ------------------------------------------

template <class S>
Splitting<S> splitting_from_basis(const Mat<S>& basis_cols) {
  Splitting<S> s;
  s.embed = basis_cols;
  if (basis_cols.cols() == 0) {
    s.project = mat_zero<S>(0, basis_cols.rows());
    return s;
  }
  Mat<S> et = basis_cols.transpose();
  auto xt = solve<S>(et, mat_identity<S>(basis_cols.cols()));
  if (!xt) throw std::invalid_argument("splitting_from_basis: columns not independent");
  s.project = xt->transpose();
  return s;
}

// Basis of {z : za = az for all a}, from the commutation linear system.
template <class S>
Splitting<S> centre(const Algebra<S>& a) {
  Mat<S> sys(a.dim * a.dim, a.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i) {
    Mat<S> diff = a.left[static_cast<size_t>(i)] - a.right_mult(a.basis(i));
    sys.middleRows(i * a.dim, a.dim) = diff;
  }
  return splitting_from_basis(kernel(sys));
}

template <class S>
struct CommutatorQuotient {
  Eigen::Index dim;        // dim A - dim [A,A]
  Mat<S> complement;       // columns: standard basis vectors spanning a complement of [A,A]
  Mat<S> commutator_span;  // canonical basis of [A,A]
};

template <class S>
CommutatorQuotient<S> commutator_quotient(const Algebra<S>& a) {
  Mat<S> cols(a.dim, a.dim * a.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    for (Eigen::Index j = 0; j < a.dim; ++j)
      cols.col(i * a.dim + j) =
          a.multiply(a.basis(i), a.basis(j)) - a.multiply(a.basis(j), a.basis(i));
  Mat<S> span = image_basis(cols);
  // Complement: standard basis vectors at the non-pivot coordinates of the
  // row space of span^T.
  Mat<S> t = span.transpose();
  auto pivots = rref_inplace(t);
  std::vector<bool> is_pivot(static_cast<size_t>(a.dim), false);
  for (auto c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  Mat<S> comp(a.dim, a.dim - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < a.dim; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) comp.col(k++) = vec_unit<S>(a.dim, c);
  return {a.dim - static_cast<Eigen::Index>(pivots.size()), comp, span};
}

// p_ot(x) = sum_i a_i x a_i' -- idempotent with image the centre (Lemma on
// Z(A) = A/[A,A] for Frobenius algebras with trace pairing).
template <class S>
Mat<S> centre_projector(const Algebra<S>& a, const FrobeniusData<S>& f) {
  Mat<S> p = mat_zero<S>(a.dim, a.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    p += a.left[static_cast<size_t>(i)] * a.right_mult(f.dual(i));
  return p;
}

// --- algebra maps -----------------------------------------------------------

template <class S>
struct AlgebraMap {
  const Algebra<S>* source = nullptr;
  const Algebra<S>* target = nullptr;
  Mat<S> matrix;  // target_dim x source_dim

  Vec<S> apply(const Vec<S>& x) const { return matrix * x; }
};

template <class S>
std::optional<std::string> check_algebra_map(const AlgebraMap<S>& f) {
  const auto& A = *f.source;
  const auto& B = *f.target;
  if (f.matrix.rows() != B.dim || f.matrix.cols() != A.dim) return "shape mismatch";
  if (f.apply(A.unit) != B.unit) return "not unital";
  for (Eigen::Index i = 0; i < A.dim; ++i)
    for (Eigen::Index j = 0; j < A.dim; ++j)
      if (f.apply(A.multiply(A.basis(i), A.basis(j))) !=
          B.multiply(f.apply(A.basis(i)), f.apply(A.basis(j))))
        return "not multiplicative at (" + std::to_string(i) + "," + std::to_string(j) + ")";
  return std::nullopt;
}

template <class S>
AlgebraMap<S> compose(const AlgebraMap<S>& g, const AlgebraMap<S>& f) {
  if (g.source != f.target) throw std::invalid_argument("compose: maps not composable");
  return {f.source, g.target, Mat<S>(g.matrix * f.matrix)};
}

template <class S>
AlgebraMap<S> identity_map(const Algebra<S>& a) {
  return {&a, &a, mat_identity<S>(a.dim)};
}

// --- builders ---------------------------------------------------------------

template <class S>
Algebra<S> field_algebra() {
  return algebra_from_table<S>(1, {{0, 0, 0, S(1)}}, vec_unit<S>(1, 0));
}

// M_n with basis E_{rc}, index r*n+c.
template <class S>
Algebra<S> matrix_algebra(Eigen::Index n) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>> tbl;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index c2 = 0; c2 < n; ++c2)
        tbl.push_back({r * n + c, c * n + c2, r * n + c2, S(1)});
  Vec<S> unit = mat_zero<S>(n * n, 1);
  for (Eigen::Index r = 0; r < n; ++r) unit(r * n + r) = S(1);
  return algebra_from_table<S>(n * n, tbl, unit);
}

// Group algebra of Z/n with basis g^0, ..., g^{n-1}.
template <class S>
Algebra<S> cyclic_group_algebra(Eigen::Index n) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>> tbl;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) tbl.push_back({i, j, (i + j) % n, S(1)});
  return algebra_from_table<S>(n, tbl, vec_unit<S>(n, 0));
}

// Group algebra of S_3; basis indexed by permutations of {0,1,2} in
// lexicographic one-line order.
template <class S>
Algebra<S> s3_group_algebra() {
  std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<Eigen::Index>(i);
    throw std::logic_error("s3: bad permutation");
  };
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>> tbl;
  for (size_t i = 0; i < perms.size(); ++i)
    for (size_t j = 0; j < perms.size(); ++j) {
      std::array<int, 3> comp;
      for (int x = 0; x < 3; ++x) comp[x] = perms[i][static_cast<size_t>(perms[j][static_cast<size_t>(x)])];
      tbl.push_back({static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), index_of(comp), S(1)});
    }
  return algebra_from_table<S>(6, tbl, vec_unit<S>(6, 0));
}

// Upper triangular n x n matrices; basis E_{rc} with r <= c, ordered by row
// then column. T_2 (n = 2) is the standard non-Frobenius example.
template <class S>
Algebra<S> upper_triangular_algebra(Eigen::Index n) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> idx;
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = r; c < n; ++c) idx.push_back({r, c});
  auto find = [&](Eigen::Index r, Eigen::Index c) {
    for (size_t i = 0; i < idx.size(); ++i)
      if (idx[i] == std::make_pair(r, c)) return static_cast<Eigen::Index>(i);
    throw std::logic_error("upper_triangular: bad index");
  };
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>> tbl;
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      if (idx[i].second == idx[j].first)
        tbl.push_back({static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j), find(idx[i].first, idx[j].second), S(1)});
  Vec<S> unit = mat_zero<S>(static_cast<Eigen::Index>(idx.size()), 1);
  for (Eigen::Index r = 0; r < n; ++r) unit(find(r, r)) = S(1);
  return algebra_from_table<S>(static_cast<Eigen::Index>(idx.size()), tbl, unit);
}

template <class S>
Algebra<S> direct_sum(const Algebra<S>& a, const Algebra<S>& b) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Eigen::Index, S>> tbl;
  for (Eigen::Index i = 0; i < a.dim; ++i)
    for (Eigen::Index j = 0; j < a.dim; ++j)
      for (Eigen::Index k = 0; k < a.dim; ++k)
        if (!a.c(i, j, k).is_zero()) tbl.push_back({i, j, k, a.c(i, j, k)});
  for (Eigen::Index i = 0; i < b.dim; ++i)
    for (Eigen::Index j = 0; j < b.dim; ++j)
      for (Eigen::Index k = 0; k < b.dim; ++k)
        if (!b.c(i, j, k).is_zero()) tbl.push_back({a.dim + i, a.dim + j, a.dim + k, b.c(i, j, k)});
  Vec<S> unit(a.dim + b.dim);
  unit << a.unit, b.unit;
  return algebra_from_table<S>(a.dim + b.dim, tbl, unit);
}

// k + k, i.e. the diagonal 2x2 matrices.
template <class S>
Algebra<S> ksum2() {
  return direct_sum(field_algebra<S>(), field_algebra<S>());
}

}  // namespace ltft
