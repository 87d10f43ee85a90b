#include <qha/functor.hpp>
#include <qha/random.hpp>
#include <qha/rep.hpp>

#include <gtest/gtest.h>

using namespace qha;

namespace {

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF5 = FieldSpec::prime_field(5);

QuiverPtr a2() { return make_quiver("A2", {"1", "2"}, {{"a", "1", "2"}}); }
QuiverPtr a3() { return make_quiver("A3", {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }
QuiverPtr tree4() {
  return make_quiver("T4", {"1", "2", "3", "4"}, {{"a", "1", "2"}, {"b", "3", "2"}, {"c", "2", "4"}});
}

Rep1::Object rep(const Rep1& c, std::vector<std::size_t> dims, std::vector<std::string> maps) {
  std::vector<VectSpace> vs;
  for (auto d : dims)
    vs.push_back({d});
  std::vector<Mat> as;
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const auto& ar = c.quiver().arrow(a);
    as.push_back(parse_matrix(c.field(), maps[a], std::pair{dims[ar.head], dims[ar.tail]}));
  }
  return c.make_object(vs, as);
}

std::vector<std::size_t> dims(const Rep1& c, const Rep1::Object& x) { return c.dimension_vector(x); }

// Pointwise rank of every component, computed directly on the matrices.
std::vector<std::size_t> component_ranks(const Rep1::Morphism& f) {
  std::vector<std::size_t> out;
  for (const auto& m : f.comp)
    out.push_back(rank(m));
  return out;
}

}  // namespace

TEST(RepA2, HomDimensions) {
  Rep1 c(a2(), FdVect(kQ));
  auto p1 = rep(c, {1, 1}, {"1"});
  auto s1 = rep(c, {1, 0}, {"-"});
  auto s2 = rep(c, {0, 1}, {"-"});
  EXPECT_EQ(c.hom_basis(p1, p1).size(), 1u);
  EXPECT_EQ(c.hom_basis(s1, s2).size(), 0u);
  EXPECT_EQ(c.hom_basis(s2, p1).size(), 1u);
  EXPECT_EQ(c.hom_basis(p1, s2).size(), 0u);
}

TEST(RepA2, IdentityInSpanOfHomBasis) {
  Rep1 c(a2(), FdVect(kQ));
  Rng rng(1);
  for (int it = 0; it < 30; ++it) {
    auto m = random_object(c, rng, 3);
    auto basis = c.hom_basis(m, m);
    EXPECT_TRUE(coordinates_in_basis(c, m, m, basis, c.identity(m)).has_value());
  }
}

TEST(RepA2, RejectsUnnaturalMap) {
  Rep1 c(a2(), FdVect(kQ));
  auto p1 = rep(c, {1, 1}, {"1"});
  try {
    c.make_map(p1, p1, {Mat::from_rows(kQ, {{1}}), Mat::from_rows(kQ, {{2}})});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_EQ(std::string(e.what()), "naturality square fails at arrow a");
  }
  EXPECT_THROW(rep(c, {1, 2}, {"1"}), std::invalid_argument);
}

TEST(RepA2, KernelAndCokernelExamples) {
  Rep1 c(a2(), FdVect(kQ));
  auto p1 = rep(c, {1, 1}, {"1"});
  auto p2 = rep(c, {0, 1}, {"-"});
  auto s1 = rep(c, {1, 0}, {"-"});
  auto cover = c.make_map(p1, s1, {Mat::from_rows(kQ, {{1}}), Mat(kQ, 0, 1)});
  auto k = c.kernel(cover);
  EXPECT_EQ(dims(c, k.object), dims(c, p2));
  EXPECT_TRUE(c.is_mono(k.incl));
  EXPECT_TRUE(c.is_zero(c.compose(cover, k.incl)));

  auto incl = c.make_map(p2, p1, {Mat(kQ, 1, 0), Mat::from_rows(kQ, {{1}})});
  auto ck = c.cokernel(incl);
  EXPECT_EQ(dims(c, ck.object), dims(c, s1));
  EXPECT_TRUE(c.is_epi(ck.proj));

  EXPECT_EQ(c.dim(c.kernel(c.identity(p1)).object), 0u);
  EXPECT_EQ(c.dim(c.cokernel(c.identity(p1)).object), 0u);
  EXPECT_EQ(dims(c, c.kernel(c.zero_map(p1, s1)).object), dims(c, p1));
  EXPECT_EQ(dims(c, c.cokernel(c.zero_map(p1, s1)).object), dims(c, s1));

  auto im = image_factorization(c, cover);
  EXPECT_EQ(dims(c, im.image), dims(c, s1));
  EXPECT_TRUE(c.equal(c.compose(im.mono, im.epi), cover));
  EXPECT_TRUE(c.is_iso(im.mono));
}

TEST(RepA2, ProjectivesAndInjectives) {
  Rep1 c(a2(), FdVect(kQ));
  auto ps = c.indecomposable_projectives();
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(dims(c, ps[0]), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(dims(c, ps[1]), (std::vector<std::size_t>{0, 1}));
  auto is = c.indecomposable_injectives();
  ASSERT_EQ(is.size(), 2u);
  EXPECT_EQ(dims(c, is[0]), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(dims(c, is[1]), (std::vector<std::size_t>{1, 1}));
  auto sum = c.direct_sum(ps[0], ps[1]);
  EXPECT_EQ(dims(c, sum.sum), (std::vector<std::size_t>{1, 2}));

  auto s1 = rep(c, {1, 0}, {"-"});
  auto cov = c.projective_cover(s1);
  EXPECT_EQ(dims(c, cov.object), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(c.is_epi(cov.map));
  auto hull = c.injective_hull(rep(c, {0, 1}, {"-"}));
  EXPECT_EQ(dims(c, hull.object), (std::vector<std::size_t>{1, 1}));
  EXPECT_TRUE(c.is_mono(hull.map));
}

TEST(RepEmbedding, ZeroAndUnknownVertex) {
  Rep1 c(a3(), FdVect(kQ));
  EXPECT_EQ(c.embed_at_vertex(1, VectSpace{0}), c.zero_object());
  EXPECT_THROW(c.embed_at_vertex("9", VectSpace{1}), std::invalid_argument);
  EXPECT_EQ(dims(c, c.embed_at_vertex("2", VectSpace{3})), (std::vector<std::size_t>{0, 3, 0}));
}

class RepProperties : public ::testing::TestWithParam<FieldSpec> {};

TEST_P(RepProperties, PointwiseKernelLawAndRankNullity) {
  Rng rng(15);
  for (auto qp : {a2(), a3(), tree4()}) {
    Rep1 c(qp, FdVect(GetParam()));
    for (int it = 0; it < 70; ++it) {
      auto x = random_object(c, rng, 4);
      auto y = random_object(c, rng, 4);
      auto f = random_map(c, x, y, rng);
      auto k = c.kernel(f);
      auto ck = c.cokernel(f);
      auto r = component_ranks(f);
      for (std::size_t v = 0; v < qp->vertex_count(); ++v) {
        EXPECT_EQ(k.object.vertex[v].dim + r[v], x.vertex[v].dim);
        EXPECT_EQ(ck.object.vertex[v].dim + r[v], y.vertex[v].dim);
      }
      EXPECT_TRUE(c.is_zero(c.compose(f, k.incl)));
      EXPECT_TRUE(c.is_zero(c.compose(ck.proj, f)));
      auto im = image_factorization(c, f);
      EXPECT_TRUE(c.equal(c.compose(im.mono, im.epi), f));
      EXPECT_TRUE(c.is_mono(im.mono));
      EXPECT_TRUE(c.is_epi(im.epi));
      EXPECT_EQ(c.dimension_vector(im.image), r);
    }
  }
}

TEST_P(RepProperties, KernelUniversalProperty) {
  Rng rng(8);
  Rep1 c(a3(), FdVect(GetParam()));
  for (int it = 0; it < 20; ++it) {
    auto x = random_object(c, rng, 3);
    auto y = random_object(c, rng, 3);
    auto f = random_map(c, x, y, rng, 50);
    auto k = c.kernel(f);
    for (int j = 0; j < 20; ++j) {
      auto w = random_object(c, rng, 2);
      // Maps with f g = 0 are exactly the images of maps into the kernel.
      auto g = c.compose(k.incl, random_map(c, w, k.object, rng));
      ASSERT_TRUE(c.is_zero(c.compose(f, g)));
      auto basis = c.hom_basis(w, k.object);
      std::vector<Rep1::Morphism> images;
      for (const auto& b : basis)
        images.push_back(c.compose(k.incl, b));
      Mat a = coords_matrix(c, c.coord_size(w, x), images);
      EXPECT_EQ(rank(a), basis.size());  // uniqueness
      auto sol = solve(a, Mat::column_vector(c.field(), coords_of(c, g)));
      EXPECT_TRUE(sol.has_value());  // existence
    }
  }
}

TEST_P(RepProperties, BiproductIdentities) {
  Rng rng(21);
  Rep1 c(tree4(), FdVect(GetParam()));
  for (int it = 0; it < 100; ++it) {
    auto m = random_object(c, rng, 3);
    auto n = random_object(c, rng, 3);
    auto s = c.direct_sum(m, n);
    EXPECT_TRUE(c.equal(c.compose(s.proj[0], s.incl[0]), c.identity(m)));
    EXPECT_TRUE(c.equal(c.compose(s.proj[1], s.incl[1]), c.identity(n)));
    EXPECT_TRUE(c.is_zero(c.compose(s.proj[1], s.incl[0])));
    EXPECT_TRUE(c.is_zero(c.compose(s.proj[0], s.incl[1])));
    EXPECT_TRUE(c.equal(c.add(c.compose(s.incl[0], s.proj[0]), c.compose(s.incl[1], s.proj[1])),
                        c.identity(s.sum)));
    // The structural maps are natural.
    EXPECT_NO_THROW(c.make_map(m, s.sum, s.incl[0].comp));
    EXPECT_NO_THROW(c.make_map(s.sum, n, s.proj[1].comp));
  }
}

TEST_P(RepProperties, HomGroupAxioms) {
  Rng rng(4);
  Rep1 c(a3(), FdVect(GetParam()));
  for (int it = 0; it < 30; ++it) {
    auto x = random_object(c, rng, 3), y = random_object(c, rng, 3), z = random_object(c, rng, 3);
    auto basis = c.hom_basis(x, y);
    auto f1 = random_map(c, x, y, rng), f2 = random_map(c, x, y, rng);
    auto g1 = random_map(c, y, z, rng), g2 = random_map(c, y, z, rng);
    EXPECT_TRUE(coordinates_in_basis(c, x, y, basis, c.add(f1, f2)).has_value());
    EXPECT_TRUE(c.equal(c.compose(g1, c.add(f1, f2)), c.add(c.compose(g1, f1), c.compose(g1, f2))));
    EXPECT_TRUE(c.equal(c.compose(c.add(g1, g2), f1), c.add(c.compose(g1, f1), c.compose(g2, f1))));
    // Sums are natural: they re-validate.
    EXPECT_NO_THROW(c.make_map(x, y, c.add(f1, f2).comp));
  }
}

TEST_P(RepProperties, EmbeddingFullFaithfulExact) {
  Rng rng(12);
  FdVect base(GetParam());
  Rep1 c(a3(), base);
  for (std::size_t d = 0; d < 3; ++d) {
    for (int it = 0; it < 50; ++it) {
      VectSpace u{rng.below(4)}, w{rng.below(4)};
      auto hb = c.hom_basis(c.embed_at_vertex(d, u), c.embed_at_vertex(d, w));
      EXPECT_EQ(hb.size(), base.hom_basis(u, w).size());
      // Faithful: embedded base basis stays independent.
      std::vector<Rep1::Morphism> emb;
      for (const auto& m : base.hom_basis(u, w))
        emb.push_back(c.embed_morphism(d, m));
      EXPECT_EQ(rank(coords_matrix(c, c.coord_size(c.embed_at_vertex(d, u), c.embed_at_vertex(d, w)),
                                   emb)),
                emb.size());
    }
    for (int it = 0; it < 20; ++it) {
      auto [i, p] = random_short_exact(base, rng, 4);
      EXPECT_TRUE(is_short_exact(c, c.embed_morphism(d, i), c.embed_morphism(d, p)));
    }
  }
}

TEST_P(RepProperties, InducedFunctors) {
  Rng rng(31);
  FdVect base(GetParam());
  Rep1 c(a3(), base);
  auto id = identity_functor(base);
  auto k2 = power_functor(base, 2);
  auto bc = basis_change_functor(base);
  for (int it = 0; it < 50; ++it) {
    auto x = random_object(c, rng, 3);
    auto y = random_object(c, rng, 3);
    EXPECT_EQ(apply_induced(id, c, x), x);
    auto x2 = apply_induced(k2, c, x);
    for (std::size_t v = 0; v < 3; ++v)
      EXPECT_EQ(x2.vertex[v].dim, 2 * x.vertex[v].dim);
    // Additivity and naturality of F_Q on morphisms.
    auto f = random_map(c, x, y, rng), g = random_map(c, x, y, rng);
    Rep1 c2 = induced_category(k2, c);
    EXPECT_TRUE(c2.equal(apply_induced(k2, c, c.add(f, g)),
                         c2.add(apply_induced(k2, c, f), apply_induced(k2, c, g))));
    // Equivalence transfer: Hom dimensions preserved.
    EXPECT_EQ(c.hom_basis(apply_induced(bc, c, x), apply_induced(bc, c, y)).size(),
              c.hom_basis(x, y).size());
  }
  for (int it = 0; it < 20; ++it) {
    auto [i, p] = random_short_exact(c, rng, 3);
    Rep1 c2 = induced_category(k2, c);
    EXPECT_TRUE(is_short_exact(c2, apply_induced(k2, c, i), apply_induced(k2, c, p)));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, RepProperties, ::testing::Values(kQ, kF5),
                         [](const auto& info) { return info.param.is_prime_field() ? "F5" : "Q"; });

TEST(FunctorCertification, FlagsMatchExpectations) {
  Rng rng(2);
  FdVect base(kQ);
  auto k2 = power_functor(base, 2);
  auto cert = register_functor(k2, rng);
  EXPECT_TRUE(cert.exact);
  EXPECT_TRUE(k2.is_exact);
  Rep1 c(a2(), base);
  auto fq = induced_functor(k2, c);
  auto cq = certify_functor(fq, rng, 6, 2);
  EXPECT_TRUE(cq.functorial && cq.additive && cq.exact);
}

TEST(NestedRep, TwoLevelsBehave) {
  Rep1 inner(a2(), FdVect(kQ));
  Rep2 outer(a2(), inner);
  auto ps = outer.indecomposable_projectives();
  ASSERT_EQ(ps.size(), 4u);
  EXPECT_EQ(outer.dimension_vector(ps[0]), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(outer.atom_labels()[1], "1/2");
  Rng rng(6);
  for (int it = 0; it < 20; ++it) {
    auto x = random_object(outer, rng, 2);
    auto y = random_object(outer, rng, 2);
    auto f = random_map(outer, x, y, rng);
    auto k = outer.kernel(f);
    EXPECT_TRUE(outer.is_zero(outer.compose(f, k.incl)));
    auto im = image_factorization(outer, f);
    EXPECT_TRUE(outer.equal(outer.compose(im.mono, im.epi), f));
    auto cov = outer.projective_cover(x);
    EXPECT_TRUE(outer.is_epi(cov.map));
    auto hull = outer.injective_hull(x);
    EXPECT_TRUE(outer.is_mono(hull.map));
  }
}
