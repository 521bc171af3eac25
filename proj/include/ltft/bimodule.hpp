#pragma once
#include <cmath>

#include <optional>
#include <string>
#include <vector>

#include "ltft/algebra.hpp"

namespace ltft {

struct AlgebraMismatch : std::invalid_argument {
  explicit AlgebraMismatch(const std::string& w) : std::invalid_argument(w) {}
};

template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out = mat_zero<S>(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

// Finite-dimensional (left_alg, right_alg)-bimodule with explicit action
// matrices per basis element of each algebra.
template <class S>
struct Bimodule {
  const Algebra<S>* left_alg = nullptr;
  const Algebra<S>* right_alg = nullptr;
  Eigen::Index dim = 0;
  std::vector<Mat<S>> lact;  // lact[i] = matrix of (a_i . -)
  std::vector<Mat<S>> ract;  // ract[j] = matrix of (- . b_j)

  Mat<S> left_of(const Vec<S>& a) const {
    Mat<S> m = mat_zero<S>(dim, dim);
    for (Eigen::Index i = 0; i < left_alg->dim; ++i)
      if (!a(i).is_zero()) m += a(i) * lact[static_cast<size_t>(i)];
    return m;
  }
  Mat<S> right_of(const Vec<S>& b) const {
    Mat<S> m = mat_zero<S>(dim, dim);
    for (Eigen::Index j = 0; j < right_alg->dim; ++j)
      if (!b(j).is_zero()) m += b(j) * ract[static_cast<size_t>(j)];
    return m;
  }

  std::optional<std::string> check() const {
    const auto& A = *left_alg;
    const auto& B = *right_alg;
    if (left_of(A.unit) != mat_identity<S>(dim)) return "left action not unital";
    if (right_of(B.unit) != mat_identity<S>(dim)) return "right action not unital";
    for (Eigen::Index i = 0; i < A.dim; ++i)
      for (Eigen::Index j = 0; j < A.dim; ++j)
        if (left_of(A.multiply(A.basis(i), A.basis(j))) !=
            Mat<S>(lact[static_cast<size_t>(i)] * lact[static_cast<size_t>(j)]))
          return "left action not associative";
    for (Eigen::Index i = 0; i < B.dim; ++i)
      for (Eigen::Index j = 0; j < B.dim; ++j)
        if (right_of(B.multiply(B.basis(i), B.basis(j))) !=
            Mat<S>(ract[static_cast<size_t>(j)] * ract[static_cast<size_t>(i)]))
          return "right action not associative";
    for (Eigen::Index i = 0; i < A.dim; ++i)
      for (Eigen::Index j = 0; j < B.dim; ++j)
        if (Mat<S>(lact[static_cast<size_t>(i)] * ract[static_cast<size_t>(j)]) !=
            Mat<S>(ract[static_cast<size_t>(j)] * lact[static_cast<size_t>(i)]))
          return "left and right actions do not commute";
    return std::nullopt;
  }
};

// The algebra as a bimodule over itself.
template <class S>
Bimodule<S> regular_bimodule(const Algebra<S>& a) {
  Bimodule<S> x;
  x.left_alg = x.right_alg = &a;
  x.dim = a.dim;
  x.lact = a.left;
  x.ract.reserve(static_cast<size_t>(a.dim));
  for (Eigen::Index j = 0; j < a.dim; ++j) x.ract.push_back(a.right_mult(a.basis(j)));
  return x;
}

// X^-: the (B,A)-bimodule on X^* with (b.phi.a)(x) = phi(a.x.b).
template <class S>
Bimodule<S> dual(const Bimodule<S>& x) {
  Bimodule<S> d;
  d.left_alg = x.right_alg;
  d.right_alg = x.left_alg;
  d.dim = x.dim;
  d.lact.reserve(x.ract.size());
  for (auto& r : x.ract) d.lact.push_back(r.transpose());
  d.ract.reserve(x.lact.size());
  for (auto& l : x.lact) d.ract.push_back(l.transpose());
  return d;
}

// B_f for an algebra map f : A -> B: carrier B, left action by
// multiplication, right action x.a = x f(a).
template <class S>
Bimodule<S> module_from_map(const AlgebraMap<S>& f) {
  const auto& B = *f.target;
  Bimodule<S> x;
  x.left_alg = f.target;
  x.right_alg = f.source;
  x.dim = B.dim;
  x.lact = B.left;
  x.ract.reserve(static_cast<size_t>(f.source->dim));
  for (Eigen::Index j = 0; j < f.source->dim; ++j)
    x.ract.push_back(B.right_mult(f.apply(f.source->basis(j))));
  return x;
}

template <class S>
Bimodule<S> direct_sum(const Bimodule<S>& x, const Bimodule<S>& y) {
  if (x.left_alg != y.left_alg || x.right_alg != y.right_alg)
    throw AlgebraMismatch("direct_sum: different algebra pairs");
  Bimodule<S> s;
  s.left_alg = x.left_alg;
  s.right_alg = x.right_alg;
  s.dim = x.dim + y.dim;
  auto block = [&](const Mat<S>& a, const Mat<S>& b) {
    Mat<S> m = mat_zero<S>(s.dim, s.dim);
    m.topLeftCorner(x.dim, x.dim) = a;
    m.bottomRightCorner(y.dim, y.dim) = b;
    return m;
  };
  for (size_t i = 0; i < x.lact.size(); ++i) s.lact.push_back(block(x.lact[i], y.lact[i]));
  for (size_t j = 0; j < x.ract.size(); ++j) s.ract.push_back(block(x.ract[j], y.ract[j]));
  return s;
}

// Twists the right action by an algebra endomorphism: x.a := x.sigma(a).
template <class S>
Bimodule<S> twist_right(const Bimodule<S>& x, const AlgebraMap<S>& sigma) {
  if (sigma.target != x.right_alg) throw AlgebraMismatch("twist_right: wrong algebra");
  Bimodule<S> t = x;
  t.right_alg = sigma.source;
  t.ract.clear();
  for (Eigen::Index j = 0; j < sigma.source->dim; ++j)
    t.ract.push_back(x.right_of(sigma.apply(sigma.source->basis(j))));
  return t;
}

// --- tensor products via the Frobenius idempotents --------------------------

// p_ot(m (x) n) = sum_i (m.a_i') (x) (a_i.n) on M (x) N (right-A side of M
// against left-A side of N); its image realises M (x)_A N.
template <class S>
Mat<S> pair_projector(const Bimodule<S>& m, const Algebra<S>& a, const FrobeniusData<S>& fa,
                      const Bimodule<S>& n) {
  if (m.right_alg != &a || n.left_alg != &a) throw AlgebraMismatch("pair_projector: actions do not match");
  Mat<S> p = mat_zero<S>(m.dim * n.dim, m.dim * n.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    p += kron(m.right_of(fa.dual(i)), n.lact[static_cast<size_t>(i)]);
  return p;
}

template <class S>
Splitting<S> tensor_over(const Bimodule<S>& m, const Algebra<S>& a, const Bimodule<S>& n) {
  auto fa = frobenius_data(a);
  return split_idempotent(pair_projector(m, a, fa, n));
}

// p_ot(x) = sum_i a_i.x.a_i' for an (A,A)-bimodule X; image is the cyclic
// tensor product, equal to the centre when X = A.
template <class S>
Mat<S> cyclic_projector(const Bimodule<S>& x) {
  if (x.left_alg != x.right_alg) throw AlgebraMismatch("cyclic_projector: not an (A,A)-bimodule");
  const auto& a = *x.left_alg;
  auto fa = frobenius_data(a);
  Mat<S> p = mat_zero<S>(x.dim, x.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    p += x.lact[static_cast<size_t>(i)] * x.right_of(fa.dual(i));
  return p;
}

template <class S>
Splitting<S> cyclic_tensor(const Bimodule<S>& x) {
  return split_idempotent(cyclic_projector(x));
}

// Combined idempotent for a chain X_1 (x) ... (x) X_n with matching
// intermediate algebras; when cyclic the two ends are joined as well.
template <class S>
Mat<S> multi_projector(const std::vector<const Bimodule<S>*>& chain, bool cyclic) {
  const size_t n = chain.size();
  if (n == 0) throw std::invalid_argument("multi_projector: empty chain");
  for (size_t k = 0; k + 1 < n; ++k)
    if (chain[k]->right_alg != chain[k + 1]->left_alg)
      throw AlgebraMismatch("multi_projector: adjacent algebras differ at position " + std::to_string(k));
  if (cyclic && chain[n - 1]->right_alg != chain[0]->left_alg)
    throw AlgebraMismatch("multi_projector: end algebras differ");

  // Connection c sits between X_{c-1} and X_c (and c = 0 wraps when cyclic).
  std::vector<const Algebra<S>*> conn(n, nullptr);
  std::vector<FrobeniusData<S>> fd(n);
  for (size_t c = 0; c < n; ++c) {
    if (c == 0 && !cyclic) continue;
    conn[c] = chain[c]->left_alg;
    fd[c] = frobenius_data(*conn[c]);
  }

  Eigen::Index total = 1;
  for (auto* x : chain) total *= x->dim;

  // Sum over one basis index per connection of the kron of per-factor maps
  // x_k -> a.x_k.a'.
  std::vector<Eigen::Index> idx(n, 0);
  Mat<S> p = mat_zero<S>(total, total);
  bool done = false;
  while (!done) {
    Mat<S> term = mat_identity<S>(1);
    bool skip = false;
    for (size_t k = 0; k < n && !skip; ++k) {
      Mat<S> op = mat_identity<S>(chain[k]->dim);
      if (conn[k]) op = chain[k]->lact[static_cast<size_t>(idx[k])] * op;
      size_t cnext = (k + 1) % n;
      if (cnext < n && (cyclic || cnext != 0) && conn[cnext])
        op = op * chain[k]->right_of(fd[cnext].dual(idx[cnext]));
      term = kron(term, op);
    }
    p += term;
    // bump indices over active connections
    done = true;
    for (size_t c = n; c-- > 0;) {
      if (!conn[c]) continue;
      if (++idx[c] < conn[c]->dim) {
        done = false;
        break;
      }
      idx[c] = 0;
    }
  }
  return p;
}

template <class S>
Splitting<S> multi_tensor(const std::vector<const Bimodule<S>*>& chain, bool cyclic) {
  return split_idempotent(multi_projector(chain, cyclic));
}

// --- bimodule maps ----------------------------------------------------------

template <class S>
struct BimoduleMap {
  const Bimodule<S>* source = nullptr;
  const Bimodule<S>* target = nullptr;
  Mat<S> matrix;  // target.dim x source.dim

  std::optional<std::string> check() const {
    if (source->left_alg != target->left_alg || source->right_alg != target->right_alg)
      return "different algebra pairs";
    for (size_t i = 0; i < source->lact.size(); ++i)
      if (Mat<S>(matrix * source->lact[i]) != Mat<S>(target->lact[i] * matrix))
        return "does not intertwine left action";
    for (size_t j = 0; j < source->ract.size(); ++j)
      if (Mat<S>(matrix * source->ract[j]) != Mat<S>(target->ract[j] * matrix))
        return "does not intertwine right action";
    return std::nullopt;
  }
};

// Reduced-echelon basis of Hom_{A|B}(X, Y), as matrices.
template <class S>
std::vector<Mat<S>> hom_space(const Bimodule<S>& x, const Bimodule<S>& y) {
  if (x.left_alg != y.left_alg || x.right_alg != y.right_alg)
    throw AlgebraMismatch("hom_space: different algebra pairs");
  const Eigen::Index rows = y.dim * x.dim;
  std::vector<Mat<S>> constraints;
  for (size_t i = 0; i < x.lact.size(); ++i)
    constraints.push_back(kron(y.lact[i], mat_identity<S>(x.dim)) -
                          kron(mat_identity<S>(y.dim), Mat<S>(x.lact[i].transpose())));
  for (size_t j = 0; j < x.ract.size(); ++j)
    constraints.push_back(kron(y.ract[j], mat_identity<S>(x.dim)) -
                          kron(mat_identity<S>(y.dim), Mat<S>(x.ract[j].transpose())));
  Mat<S> sys(static_cast<Eigen::Index>(constraints.size()) * rows, rows);
  for (size_t c = 0; c < constraints.size(); ++c)
    sys.middleRows(static_cast<Eigen::Index>(c) * rows, rows) = constraints[c];
  Mat<S> null = kernel(sys);
  std::vector<Mat<S>> basis;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    Mat<S> f(y.dim, x.dim);
    for (Eigen::Index r = 0; r < y.dim; ++r)
      for (Eigen::Index q = 0; q < x.dim; ++q) f(r, q) = null(r * x.dim + q, c);
    basis.push_back(f);
  }
  return basis;
}

// --- the Hom <-> cyclic tensor isomorphism ----------------------------------

// phi : cyt_A (Y (x)_B X^*) -> Hom_{A|B}(X, Y). Domain coordinates are taken
// with respect to `sp`, the splitting of the cyclic chain (Y, X^*).
template <class S>
struct PhiIso {
  const Bimodule<S>* x;
  const Bimodule<S>* y;
  Bimodule<S> xdual;
  Splitting<S> sp;  // of the combined idempotent on Y (x) X^*

  // gamma (coordinates in sp) -> bimodule map X -> Y
  Mat<S> forward(const Vec<S>& gamma) const {
    Vec<S> e = sp.embed * gamma;  // element of Y (x) X^*
    Mat<S> h(y->dim, x->dim);
    for (Eigen::Index iy = 0; iy < y->dim; ++iy)
      for (Eigen::Index j = 0; j < x->dim; ++j) h(iy, j) = e(iy * x->dim + j);
    return h;
  }

  Vec<S> backward(const Mat<S>& h) const {
    Vec<S> w(y->dim * x->dim);
    for (Eigen::Index iy = 0; iy < y->dim; ++iy)
      for (Eigen::Index j = 0; j < x->dim; ++j) w(iy * x->dim + j) = h(iy, j);
    return sp.project * w;
  }
};

template <class S>
PhiIso<S> phi_iso(const Bimodule<S>& y, const Bimodule<S>& x) {
  if (x.left_alg != y.left_alg || x.right_alg != y.right_alg)
    throw AlgebraMismatch("phi_iso: different algebra pairs");
  PhiIso<S> iso;
  iso.x = &x;
  iso.y = &y;
  iso.xdual = dual(x);
  iso.sp = multi_tensor<S>({&y, &iso.xdual}, /*cyclic=*/true);
  return iso;
}

// --- isomorphism testing ----------------------------------------------------

enum class IsoVerdict { Isomorphic, NotIsomorphic, Undecided };

template <class S>
struct IsoResult {
  IsoVerdict verdict;
  Mat<S> witness;  // invertible intertwiner when Isomorphic
};

// Searches hom_space(X, Y) for an invertible element: deterministic small
// coefficient vectors first, then (over Q) the full integer grid {0..d}^r,
// which decides the question since det is a degree-d form. Grid blowup is
// reported as Undecided instead of "no".
template <class S>
IsoResult<S> bimodule_isomorphic(const Bimodule<S>& x, const Bimodule<S>& y) {
  if (x.dim != y.dim) return {IsoVerdict::NotIsomorphic, Mat<S>()};
  auto basis = hom_space(x, y);
  if (basis.empty()) return {IsoVerdict::NotIsomorphic, Mat<S>()};
  auto combine = [&](const std::vector<long>& c) {
    Mat<S> m = mat_zero<S>(y.dim, x.dim);
    for (size_t i = 0; i < basis.size(); ++i) m += S(c[i]) * basis[i];
    return m;
  };
  std::vector<std::vector<long>> quick;
  for (size_t i = 0; i < basis.size(); ++i) {
    std::vector<long> c(basis.size(), 0);
    c[i] = 1;
    quick.push_back(c);
  }
  {
    std::vector<long> c(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) c[i] = static_cast<long>(i) + 1;
    quick.push_back(c);
    std::vector<long> ones(basis.size(), 1);
    quick.push_back(ones);
  }
  for (auto& c : quick) {
    Mat<S> m = combine(c);
    if (is_invertible(m)) return {IsoVerdict::Isomorphic, m};
  }
  const long d = static_cast<long>(x.dim);
  double grid = std::pow(static_cast<double>(d + 1), static_cast<double>(basis.size()));
  if (grid > 200000.0) return {IsoVerdict::Undecided, Mat<S>()};
  std::vector<long> c(basis.size(), 0);
  while (true) {
    Mat<S> m = combine(c);
    if (is_invertible(m)) return {IsoVerdict::Isomorphic, m};
    size_t k = c.size();
    bool done = true;
    while (k-- > 0) {
      if (++c[k] <= d) {
        done = false;
        break;
      }
      c[k] = 0;
    }
    if (done) break;
  }
  return {IsoVerdict::NotIsomorphic, Mat<S>()};
}

}  // namespace ltft
