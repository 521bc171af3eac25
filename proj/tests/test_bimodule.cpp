#include "doctest.h"

#include "ltft/bimodule.hpp"

using namespace ltft;
using R = Rational;

namespace {

// Inner automorphism of M_2 given by conjugation with u = [[1,1],[0,1]].
AlgebraMap<R> m2_inner_auto(const Algebra<R>& m2) {
  Mat<R> u(2, 2), uinv(2, 2);
  u << R(1), R(1), R(0), R(1);
  uinv << R(1), R(-1), R(0), R(1);
  Mat<R> f = mat_zero<R>(4, 4);
  for (Eigen::Index r = 0; r < 2; ++r)
    for (Eigen::Index c = 0; c < 2; ++c) {
      Mat<R> e = mat_zero<R>(2, 2);
      e(r, c) = R(1);
      Mat<R> im = u * e * uinv;
      for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j) f(i * 2 + j, r * 2 + c) = im(i, j);
    }
  return {&m2, &m2, f};
}

// The sign automorphism of Q[Z/2]: e -> e, g -> -g.
AlgebraMap<R> z2_sign_auto(const Algebra<R>& z2) {
  Mat<R> m = mat_zero<R>(2, 2);
  m(0, 0) = R(1);
  m(1, 1) = R(-1);
  return {&z2, &z2, m};
}

Eigen::Index coinvariants_rank_oracle(const Bimodule<R>& x) {
  // brute-force the span of {a.v - v.a} and return its codimension
  const auto& a = *x.left_alg;
  Mat<R> cols(x.dim, a.dim * x.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i)
    for (Eigen::Index v = 0; v < x.dim; ++v)
      cols.col(i * x.dim + v) =
          Vec<R>(x.lact[static_cast<size_t>(i)].col(v) - x.ract[static_cast<size_t>(i)].col(v));
  return x.dim - rank<R>(cols);
}

}  // namespace

TEST_CASE("regular bimodule and dual") {
  auto k = field_algebra<R>();
  auto kk = regular_bimodule(k);
  CHECK_FALSE(kk.check().has_value());
  auto d = dual(kk);
  CHECK(d.dim == 1);
  CHECK(d.lact[0] == kk.lact[0]);

  auto m2 = matrix_algebra<R>(2);
  auto xm = regular_bimodule(m2);
  CHECK_FALSE(xm.check().has_value());
  auto dm = dual(xm);
  CHECK(dm.dim == 4);
  CHECK_FALSE(dm.check().has_value());
  // (b.phi.a)(x) = phi(a.x.b): spot check with phi = E_11^*, a = E_12, b = 1
  Vec<R> phi = vec_unit<R>(4, 0);
  Vec<R> moved = dm.right_of(m2.basis(1)) * phi;  // phi.E_12
  // (phi.E_12)(x) = phi(E_12 x): nonzero on x = E_21 (E_12 E_21 = E_11)
  CHECK(moved(2) == R(1));
  CHECK(moved(0) == R(0));

  // double dual is literally the identity on this presentation
  auto dd = dual(dm);
  CHECK(dd.lact[0] == xm.lact[0]);
  CHECK(dd.ract[2] == xm.ract[2]);
}

TEST_CASE("tensor_over") {
  SUBCASE("A (x)_A A has dimension dim A") {
    for (auto a : {field_algebra<R>(), cyclic_group_algebra<R>(2), matrix_algebra<R>(2)}) {
      auto x = regular_bimodule(a);
      auto sp = tensor_over(x, a, x);
      CHECK(sp.dim() == a.dim);
    }
  }
  SUBCASE("k^2 over k+k: mixed components die") {
    auto kk = ksum2<R>();
    auto x = regular_bimodule(kk);
    auto sp = tensor_over(x, kk, x);
    CHECK(sp.dim() == 2);
  }
  SUBCASE("balance p(m.a (x) n) = p(m (x) a.n)") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    auto fa = frobenius_data(m2);
    Mat<R> p = pair_projector(x, m2, fa, x);
    for (Eigen::Index i = 0; i < 4; ++i) {
      Mat<R> viaRight = p * kron(x.ract[static_cast<size_t>(i)], mat_identity<R>(4));
      Mat<R> viaLeft = p * kron(mat_identity<R>(4), x.lact[static_cast<size_t>(i)]);
      CHECK(viaRight == viaLeft);
    }
    CHECK(Mat<R>(p * p) == p);
  }
  SUBCASE("rejects non-Frobenius base") {
    auto t2 = upper_triangular_algebra<R>(2);
    auto x = regular_bimodule(t2);
    CHECK_THROWS_AS(tensor_over(x, t2, x), NotFrobenius);
  }
}

TEST_CASE("cyclic_tensor") {
  SUBCASE("X = A = M_2: dim 1") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    CHECK(cyclic_tensor(x).dim() == 1);
  }
  SUBCASE("commutative: all of A") {
    auto z3 = cyclic_group_algebra<R>(3);
    auto x = regular_bimodule(z3);
    CHECK(cyclic_tensor(x).dim() == 3);
  }
  SUBCASE("twisted action: dim matches cokernel oracle") {
    auto m2 = matrix_algebra<R>(2);
    auto sigma = m2_inner_auto(m2);
    auto x = twist_right(regular_bimodule(m2), sigma);
    CHECK_FALSE(x.check().has_value());
    CHECK(cyclic_tensor(x).dim() == coinvariants_rank_oracle(x));
    CHECK(cyclic_tensor(x).dim() == 1);  // inner twist is isomorphic to the regular bimodule
  }
  SUBCASE("cokernel oracle agrees on direct sums") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    auto s = direct_sum(x, x);
    CHECK(cyclic_tensor(s).dim() == coinvariants_rank_oracle(s));
    CHECK(cyclic_tensor(s).dim() == 2);
  }
}

TEST_CASE("multi_tensor") {
  auto m2 = matrix_algebra<R>(2);
  auto x = regular_bimodule(m2);

  SUBCASE("single module, non-cyclic: identity splitting") {
    auto sp = multi_tensor<R>({&x}, false);
    CHECK(sp.dim() == 4);
    CHECK(sp.embed == mat_identity<R>(4));
  }
  SUBCASE("triple (A,A,A) cyclic collapses to Z(A)") {
    auto sp = multi_tensor<R>({&x, &x, &x}, true);
    CHECK(sp.dim() == 1);
  }
  SUBCASE("(B_f, B_f^*) cyclic has dim of the centraliser") {
    auto kk = ksum2<R>();
    Mat<R> fm = mat_zero<R>(4, 2);
    fm(0, 0) = R(1);  // E_11 <- first idempotent
    fm(3, 1) = R(1);  // E_22 <- second
    AlgebraMap<R> f{&kk, &m2, fm};
    REQUIRE_FALSE(check_algebra_map(f).has_value());
    auto bf = module_from_map(f);
    auto bfd = dual(bf);
    auto sp = multi_tensor<R>({&bf, &bfd}, true);
    // centraliser of the diagonal matrices inside M_2 = diagonal matrices
    CHECK(sp.dim() == 2);
    CHECK(static_cast<size_t>(sp.dim()) == hom_space(bf, bf).size());
  }
  SUBCASE("pairwise route and combined route give the same subspace") {
    auto sp2 = multi_tensor<R>({&x, &x}, false);
    auto fa = frobenius_data(m2);
    Mat<R> p = pair_projector(x, m2, fa, x);
    CHECK(same_column_span(Mat<R>(sp2.embed), image_basis(p)));
  }
  SUBCASE("cyclic rotation intertwines the projectors") {
    auto kk = ksum2<R>();
    Mat<R> fm = mat_zero<R>(4, 2);
    fm(0, 0) = R(1);
    fm(3, 1) = R(1);
    AlgebraMap<R> f{&kk, &m2, fm};
    auto bf = module_from_map(f);
    auto bfd = dual(bf);
    Mat<R> p12 = multi_projector<R>({&bf, &bfd}, true);
    Mat<R> p21 = multi_projector<R>({&bfd, &bf}, true);
    // rotation X1 (x) X2 -> X2 (x) X1
    Eigen::Index d1 = bf.dim, d2 = bfd.dim;
    Mat<R> rot = mat_zero<R>(d1 * d2, d1 * d2);
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d2; ++j) rot(j * d1 + i, i * d2 + j) = R(1);
    CHECK(Mat<R>(rot * p12) == Mat<R>(p21 * rot));
  }
  SUBCASE("mismatched algebras throw") {
    auto kk = ksum2<R>();
    auto y = regular_bimodule(kk);
    CHECK_THROWS_AS(multi_tensor<R>({&x, &y}, false), AlgebraMismatch);
  }
}

TEST_CASE("hom_space") {
  SUBCASE("Hom_{A|A}(A,A) = Z(A)") {
    for (auto a : {matrix_algebra<R>(2), cyclic_group_algebra<R>(3), s3_group_algebra<R>()}) {
      auto x = regular_bimodule(a);
      CHECK(static_cast<Eigen::Index>(hom_space(x, x).size()) == centre(a).dim());
    }
  }
  SUBCASE("non-isomorphic simple summands: zero") {
    auto kk = ksum2<R>();
    auto k = field_algebra<R>();
    Mat<R> p1(1, 2), p2(1, 2);
    p1 << R(1), R(0);
    p2 << R(0), R(1);
    AlgebraMap<R> f1{&kk, &k, p1}, f2{&kk, &k, p2};
    auto b1 = module_from_map(f1);
    auto b2 = module_from_map(f2);
    CHECK(hom_space(b1, b2).empty());
  }
  SUBCASE("hom basis elements are intertwiners") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    for (auto& h : hom_space(x, x)) {
      BimoduleMap<R> f{&x, &x, h};
      CHECK_FALSE(f.check().has_value());
    }
  }
}

TEST_CASE("phi_iso") {
  SUBCASE("X = Y = A: both sides are Z(A)") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    auto iso = phi_iso(x, x);
    CHECK(iso.sp.dim() == 1);
    CHECK(hom_space(x, x).size() == 1);
    Mat<R> h = iso.forward(vec_unit<R>(1, 0));
    BimoduleMap<R> f{&x, &x, h};
    CHECK_FALSE(f.check().has_value());
    CHECK(h != mat_zero<R>(4, 4));
    // round trip
    CHECK(iso.backward(h) == vec_unit<R>(1, 0));
  }
  SUBCASE("canonical element maps to the identity") {
    auto m2 = matrix_algebra<R>(2);
    auto x = regular_bimodule(m2);
    auto iso = phi_iso(x, x);
    Vec<R> gamma = iso.backward(mat_identity<R>(4));
    CHECK(iso.forward(gamma) == mat_identity<R>(4));
  }
  SUBCASE("dimension match and injectivity across test pairs") {
    auto m2 = matrix_algebra<R>(2);
    auto kk = ksum2<R>();
    Mat<R> fm = mat_zero<R>(4, 2);
    fm(0, 0) = R(1);
    fm(3, 1) = R(1);
    AlgebraMap<R> f{&kk, &m2, fm};
    auto bf = module_from_map(f);
    auto iso = phi_iso(bf, bf);
    CHECK(static_cast<size_t>(iso.sp.dim()) == hom_space(bf, bf).size());
    Mat<R> images = mat_zero<R>(bf.dim * bf.dim, iso.sp.dim());
    for (Eigen::Index c = 0; c < iso.sp.dim(); ++c) {
      Mat<R> h = iso.forward(vec_unit<R>(iso.sp.dim(), c));
      BimoduleMap<R> hm{&bf, &bf, h};
      CHECK_FALSE(hm.check().has_value());
      for (Eigen::Index r = 0; r < bf.dim; ++r)
        for (Eigen::Index q = 0; q < bf.dim; ++q) images(r * bf.dim + q, c) = h(r, q);
    }
    CHECK(rank<R>(images) == iso.sp.dim());
  }
}

TEST_CASE("module_from_map") {
  SUBCASE("f = id gives the regular bimodule") {
    auto m2 = matrix_algebra<R>(2);
    auto f = identity_map(m2);
    auto b = module_from_map(f);
    auto x = regular_bimodule(m2);
    CHECK(b.lact[1] == x.lact[1]);
    CHECK(b.ract[2] == x.ract[2]);
  }
  SUBCASE("diagonal embedding k+k -> T_2: dim 3, End has dim 2") {
    auto kk = ksum2<R>();
    auto t2 = upper_triangular_algebra<R>(2);
    Mat<R> m = mat_zero<R>(3, 2);
    m(0, 0) = R(1);
    m(2, 1) = R(1);
    AlgebraMap<R> f{&kk, &t2, m};
    auto bf = module_from_map(f);
    CHECK(bf.dim == 3);
    CHECK_FALSE(bf.check().has_value());
    CHECK(hom_space(bf, bf).size() == 2);
  }
  SUBCASE("m_{g,f}: C_g (x)_B B_f -> C_{gf} is an isomorphism") {
    auto m2 = matrix_algebra<R>(2);
    auto kk = ksum2<R>();
    Mat<R> fm = mat_zero<R>(4, 2);
    fm(0, 0) = R(1);
    fm(3, 1) = R(1);
    AlgebraMap<R> f{&kk, &m2, fm};
    AlgebraMap<R> g = m2_inner_auto(m2);
    auto cg = module_from_map(g);
    auto bf = module_from_map(f);
    auto sp = tensor_over(cg, m2, bf);
    // m(c (x) b) = c g(b) on the ambient space
    Mat<R> mul(4, 16);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j)
        mul.col(i * 4 + j) = m2.multiply(m2.basis(i), g.apply(m2.basis(j)));
    Mat<R> m_gf = mul * sp.embed;
    CHECK(is_invertible(m_gf));
    // and it intertwines the right k+k-action with that of C_{g o f}
    auto gf = compose(g, f);
    auto cgf = module_from_map(gf);
    for (Eigen::Index i = 0; i < kk.dim; ++i) {
      Mat<R> act_src = sp.project * kron(mat_identity<R>(4), bf.ract[static_cast<size_t>(i)]) * sp.embed;
      Mat<R> lhs = m_gf * act_src;
      Mat<R> rhs = cgf.ract[static_cast<size_t>(i)] * m_gf;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("bimodule isomorphism decision") {
  auto z2 = cyclic_group_algebra<R>(2);
  SUBCASE("B_id vs B_sigma over Q[Z/2]: not isomorphic (sigma outer)") {
    auto f = identity_map(z2);
    auto sigma = z2_sign_auto(z2);
    REQUIRE_FALSE(check_algebra_map(sigma).has_value());
    auto bi = module_from_map(f);
    auto bs = module_from_map(sigma);
    auto res = bimodule_isomorphic(bi, bs);
    CHECK(res.verdict == IsoVerdict::NotIsomorphic);
  }
  SUBCASE("dual of B_sigma is B_{sigma^{-1}} over Q[Z/2]") {
    auto sigma = z2_sign_auto(z2);
    auto bs = module_from_map(sigma);
    auto bsd = dual(bs);
    auto sigma_inv = sigma;  // the sign automorphism is an involution
    auto bsi = module_from_map(sigma_inv);
    auto res = bimodule_isomorphic(bsd, bsi);
    CHECK(res.verdict == IsoVerdict::Isomorphic);
  }
  SUBCASE("inner automorphism of M_2: B_g isomorphic to B_id, with conjugation witness") {
    auto m2 = matrix_algebra<R>(2);
    auto g = m2_inner_auto(m2);
    auto bg = module_from_map(g);
    auto bid = module_from_map(identity_map(m2));
    auto res = bimodule_isomorphic(bid, bg);
    REQUIRE(res.verdict == IsoVerdict::Isomorphic);
    // psi : B_id -> B_g intertwiner, u := psi(1) invertible, id = u g(-) u^{-1}
    Vec<R> u = res.witness * m2.unit;
    Mat<R> umat(2, 2);
    umat << u(0), u(1), u(2), u(3);
    REQUIRE(is_invertible(umat));
    Mat<R> uinv = inverse(umat);
    for (Eigen::Index r = 0; r < 2; ++r)
      for (Eigen::Index c = 0; c < 2; ++c) {
        Vec<R> gb = g.apply(m2.basis(r * 2 + c));
        Mat<R> gbm(2, 2);
        gbm << gb(0), gb(1), gb(2), gb(3);
        Mat<R> conj = umat * gbm * uinv;
        Mat<R> expect = mat_zero<R>(2, 2);
        expect(r, c) = R(1);
        CHECK(conj == expect);
      }
  }
}
