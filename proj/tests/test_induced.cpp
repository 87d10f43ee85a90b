#include <qha/induced.hpp>

#include <gtest/gtest.h>

using namespace qha;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF5 = FieldSpec::prime_field(5);

QuiverPtr a2() { return make_quiver("A2", {"1", "2"}, {{"a", "1", "2"}}); }
QuiverPtr a3() { return make_quiver("A3", {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }

struct A2 {
  Rep1 c;
  Rep1::Object p1, p2, s1, s2;

  explicit A2(FieldSpec f = kQ)
      : c(a2(), FdVect(f)), p1(c.indecomposable_projectives()[0]), p2(c.indecomposable_projectives()[1]),
        s1(c.simples()[0]), s2(c.simples()[1]) {}

  Rep1::Object sum(const Rep1::Object& x, const Rep1::Object& y) const { return c.direct_sum(x, y).sum; }
};

template <class C>
std::vector<std::size_t> cohomology_dims(const ComplexOps<C>& ops, const Complex<C>& x, int lo, int hi) {
  std::vector<std::size_t> out;
  for (int i = lo; i <= hi; ++i)
    out.push_back(ops.cat().dim(ops.cohomology(x, i).object));
  return out;
}

}  // namespace

TEST(Eigen, RationalAndModular) {
  Mat d = Mat::from_rows(kQ, {{2, 0}, {0, 3}});
  auto l = field_eigenvalue(d);
  ASSERT_TRUE(l.has_value());
  EXPECT_TRUE(*l == 2 || *l == 3);
  EXPECT_FALSE(field_eigenvalue(Mat::from_rows(kQ, {{0, -1}, {1, 0}})).has_value());
  auto m = field_eigenvalue(Mat::from_rows(kF5, {{0, 4}, {1, 0}}));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(kF5.reduce(*m * *m + 1), 0);
  Mat j = Mat::from_rows(kQ, {{1, 2}, {0, 1}});
  j = j.scaled(Scalar(1, 2));
  EXPECT_EQ(*field_eigenvalue(j), Scalar(1, 2));
}

TEST(Decompose, SummandsOnA2) {
  for (auto f : {kQ, kF5}) {
    A2 fx(f);
    Rng rng(1);
    auto parts = decompose(fx.c, fx.sum(fx.p1, fx.s1), rng);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(fx.c.dimension_vector(parts[0]), fx.c.dimension_vector(fx.s1));
    EXPECT_EQ(fx.c.dimension_vector(parts[1]), fx.c.dimension_vector(fx.p1));
    EXPECT_EQ(decompose(fx.c, fx.p1, rng).size(), 1u);
    EXPECT_EQ(decompose(fx.c, fx.sum(fx.p1, fx.p1), rng).size(), 2u);
    EXPECT_EQ(decompose(fx.c, fx.sum(fx.sum(fx.s2, fx.s1), fx.p1), rng).size(), 3u);
  }
}

TEST(Decompose, Isomorphism) {
  A2 fx;
  Rng rng(2);
  auto inj = fx.c.indecomposable_injectives();
  EXPECT_TRUE(is_isomorphic(fx.c, inj[0], fx.s1, rng));
  EXPECT_TRUE(is_isomorphic(fx.c, inj[1], fx.p1, rng));
  EXPECT_FALSE(is_isomorphic(fx.c, fx.s1, fx.s2, rng));
  EXPECT_FALSE(is_isomorphic(fx.c, fx.p1, fx.sum(fx.s1, fx.s2), rng));
}

TEST(Suite, StalkSuiteOnA2) {
  A2 fx;
  Rng rng(3);
  auto s = stalk_suite(fx.c, rng);
  std::vector<std::string> names;
  for (const auto& e : s)
    names.push_back(e.name);
  EXPECT_EQ(names, (std::vector<std::string>{"P1", "P2", "S1"}));
}

TEST(Tilting, CertificateOutcomes) {
  A2 fx;
  Rng rng(4);
  auto morita = build_tilting_functor(fx.c, fx.sum(fx.p1, fx.p2), rng);
  EXPECT_EQ(morita.cert.summands, 2u);
  EXPECT_EQ(morita.cert.projective_dimension, 0);
  EXPECT_TRUE(morita.spec.is_exact);

  auto apr = build_tilting_functor(fx.c, fx.sum(fx.p1, fx.s1), rng);
  EXPECT_EQ(apr.cert.projective_dimension, 1);
  EXPECT_EQ(apr.cert.self_ext1, 0u);
  EXPECT_TRUE(apr.spec.is_left_exact);
  EXPECT_FALSE(apr.spec.is_exact);
  EXPECT_EQ(apr.spec.target.quiver().vertex_count(), 2u);
  EXPECT_EQ(apr.spec.target.quiver().arrow_count(), 1u);

  auto expect_reject = [&](const Rep1::Object& t, const std::string& needle) {
    try {
      build_tilting_functor(fx.c, t, rng);
      ADD_FAILURE() << "accepted a non-tilting object";
    } catch (const TiltingError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_reject(fx.s1, "non-isomorphic summands");
  expect_reject(fx.sum(fx.s1, fx.s2), "Ext^1");
  expect_reject(fx.sum(fx.p1, fx.p1), "non-isomorphic summands");

  Rep2 sq(a2(), fx.c);
  auto s11 = sq.simples()[0];
  try {
    build_tilting_functor(sq, s11, rng);
    ADD_FAILURE() << "accepted a simple of projective dimension 2";
  } catch (const TiltingError& e) {
    EXPECT_NE(std::string(e.what()).find("projective dimension 2"), std::string::npos) << e.what();
  }
}

TEST(Tilting, MoritaPreservesHom) {
  Rng rng(5);
  for (auto q : {a2(), a3()}) {
    Rep1 c(q, FdVect(kQ));
    std::vector<Rep1::Object> ps = c.indecomposable_projectives();
    auto t = c.direct_sum_n(ps).sum;
    auto f = build_tilting_functor(c, t, rng);
    for (int k = 0; k < 20; ++k) {
      auto m = random_object(c, rng, 2);
      auto n = random_object(c, rng, 2);
      EXPECT_EQ(c.hom_basis(m, n).size(), f.spec.target.hom_basis(f.spec(m), f.spec(n)).size());
      EXPECT_EQ(c.dim(m), f.spec.target.dim(f.spec(m)));
    }
  }
}

TEST(Tilting, AprValues) {
  A2 fx;
  Rng rng(6);
  auto f = build_tilting_functor(fx.c, fx.sum(fx.p1, fx.s1), rng);
  // Hom(P1 (+) S1, -): S1 -> (1,1), S2 -> 0, P1 -> (1,0) in summand order.
  EXPECT_EQ(f.spec.target.dim(f.spec(fx.s2)), 0u);
  EXPECT_EQ(f.spec.target.dim(f.spec(fx.s1)), 2u);
  EXPECT_EQ(f.spec.target.dim(f.spec(fx.p1)), 1u);
}

TEST(Tilting, GeneratorsFromQuiver) {
  Rng rng(16);
  A2 fx;
  EXPECT_TRUE(is_isomorphic(fx.c, apr_tilt(fx.c), fx.sum(fx.p1, fx.s1), rng));
  EXPECT_TRUE(is_isomorphic(fx.c, projective_generator(fx.c), fx.sum(fx.p1, fx.p2), rng));

  // A3: tau^-1 of the simple projective is S2.
  Rep1 c3(a3(), FdVect(kQ));
  auto ps = c3.indecomposable_projectives();
  auto want = c3.direct_sum_n({ps[0], ps[1], c3.simples()[1]}).sum;
  EXPECT_TRUE(is_isomorphic(c3, apr_tilt(c3), want, rng));

  // Two arrows into the sink: the new summand is the indecomposable 1 1 1.
  Rep1 v(make_quiver("V", {"1", "2", "3"}, {{"a", "1", "3"}, {"b", "2", "3"}}), FdVect(kF5));
  auto t = apr_tilt(v);
  auto parts = decompose(v, t, rng);
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(v.dimension_vector(parts[2]), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(build_tilting_functor(v, t, rng).cert.summands, 3u);

  Rep1 k2(make_quiver("K2", {"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}), FdVect(kQ));
  EXPECT_THROW(apr_tilt(k2), TiltingError);
  EXPECT_THROW(apr_tilt(Rep1(make_quiver("pt", {"1"}, {}), FdVect(kQ))), TiltingError);
}

TEST(DeriveInduced, ZeroIdentityAndExact) {
  Rng rng(7);
  FdVect k(kQ);
  Rep1 c(a2(), k);
  ComplexOps<Rep1> ops(c);
  auto id = make_derived(identity_functor(k), rng);
  auto sq = make_derived(power_functor(k, 2), rng);
  EXPECT_TRUE(derive_induced(id, c, ops.zero_complex()).empty());
  for (int t = 0; t < 30; ++t) {
    auto x = ops.random_complex(rng, -1, 3, 2);
    auto rx = derive_induced(id, c, x);
    EXPECT_EQ(cohomology_dims(ops, rx, -3, 3), cohomology_dims(ops, x, -3, 3));
    auto r2 = derive_induced(sq, c, x);
    auto fq = induced_functor(sq.underlying, c);
    ComplexOps<Rep1> ops2(fq.target);
    EXPECT_EQ(cohomology_dims(ops2, r2, -3, 3), cohomology_dims(ops2, apply_degreewise(fq, x), -3, 3));
  }
}

TEST(DeriveInduced, ResolutionIndependence) {
  Rng rng(8);
  A2 fx;
  Rep2 qa(a2(), fx.c);
  ComplexOps<Rep2> ops(qa);
  auto df = make_derived(build_tilting_functor(fx.c, fx.sum(fx.p1, fx.s1), rng).spec, rng);
  auto fq = induced_functor(df.underlying, qa);
  ComplexOps<RepCat<Rep1>> qb(fq.target);
  for (int t = 0; t < 10; ++t) {
    auto x = std::make_shared<const Complex<Rep2>>(ops.random_complex(rng, 0, 2, 1));
    auto r1 = injective_resolution(ops, x);
    auto r2 = padded_injective_resolution(ops, x, rng);
    ASSERT_TRUE(ops.is_quasi_iso(r2.map));
    auto sigma = extend_up_to_homotopy(ops, r1.map, r2.map);
    ASSERT_TRUE(sigma.has_value());
    auto i1 = std::make_shared<const Complex<RepCat<Rep1>>>(derive_induced(df, qa, r1));
    auto i2 = std::make_shared<const Complex<RepCat<Rep1>>>(derive_induced(df, qa, r2));
    EXPECT_TRUE(qb.is_quasi_iso(apply_degreewise(fq, *sigma, i1, i2)));
  }
}

TEST(Square22, IdentityAndExactFunctors) {
  Rng rng(9);
  FdVect k(kF5);
  Rep1 c(a3(), k);
  ComplexOps<Rep1> ops(c);
  auto id = make_derived(identity_functor(k), rng);
  auto sq = make_derived(power_functor(k, 2), rng);
  for (int t = 0; t < 30; ++t) {
    auto x = ops.random_complex(rng, -1, 3, 2);
    EXPECT_TRUE(check_square22(id, c, x).passed());
    EXPECT_TRUE(check_square22(sq, c, x).passed());
  }
}

TEST(Square22, TiltingFunctor) {
  Rng rng(10);
  A2 fx;
  Rep2 qa(a2(), fx.c);
  ComplexOps<Rep2> ops(qa);
  auto df = make_derived(build_tilting_functor(fx.c, fx.sum(fx.p1, fx.s1), rng).spec, rng);
  for (const auto& s : stalk_suite(qa, rng))
    EXPECT_TRUE(check_square22(df, qa, ops.stalk(s.object)).passed()) << s.name;
  for (int t = 0; t < 5; ++t)
    EXPECT_TRUE(check_square22(df, qa, ops.random_complex(rng, 0, 2, 1)).passed());
}

TEST(Experiments, Thm21OnA2) {
  A2 fx;
  Rng rng(11);
  auto suite = stalk_suite(fx.c, rng);
  auto rep = experiment_thm21(fx.c, suite, -1, 2, 11);
  EXPECT_EQ(rep.cases.size(), 36u);
  EXPECT_TRUE(rep.all_checks_pass());
  bool seen = false;
  for (const auto& c : rep.cases)
    if (c.id == "S1,P2,1") {
      seen = true;
      EXPECT_EQ(c.left, 1u);
      EXPECT_EQ(c.right, 0u);
    }
  EXPECT_TRUE(seen);
  EXPECT_EQ(rep.render(), experiment_thm21(fx.c, suite, -1, 2, 11).render());
}

TEST(Experiments, Thm21SingleVertexAgrees) {
  Rep1 c(make_quiver("pt", {"1"}, {}), FdVect(kQ));
  Rng rng(12);
  auto rep = experiment_thm21(c, stalk_suite(c, rng), -1, 2, 12);
  EXPECT_TRUE(rep.all_checks_pass());
  EXPECT_EQ(rep.agreements(), rep.cases.size());
}

TEST(Experiments, Thm24Morita) {
  A2 fx;
  Rng rng(13);
  Rep2 qa(a2(), fx.c);
  auto df = make_derived(build_tilting_functor(fx.c, fx.sum(fx.p1, fx.p2), rng).spec, rng);
  auto rep = experiment_thm24(qa, df, stalk_suite(qa, rng), -1, 2, 8, 13, rng);
  EXPECT_TRUE(rep.all_checks_pass());
  EXPECT_EQ(rep.agreements(), rep.cases.size());
  for (const auto& p : rep.probes)
    EXPECT_TRUE(p.found) << p.target;
}
