#pragma once

#include "qha/rep.hpp"
#include "qha/rng.hpp"

namespace qha {

// Seeded random objects and morphisms for property tests and experiment
// suites. Morphisms are random combinations of a Hom basis, so they are
// valid by construction in every base.

template <AbelianBase C>
typename C::Morphism random_map(const C& c, const typename C::Object& x,
                                const typename C::Object& y, Rng& rng, unsigned density = 75) {
  auto basis = c.hom_basis(x, y);
  std::vector<Scalar> coeffs;
  for (std::size_t k = 0; k < basis.size(); ++k)
    coeffs.push_back(rng.coin(density) ? rng.scalar(c.field()) : Scalar(0));
  return combine(c, x, y, basis, coeffs);
}

inline VectSpace random_object(const FdVect&, Rng& rng, std::size_t max_dim) {
  return {rng.below(max_dim + 1)};
}

template <AbelianBase B>
RepObject<B> random_object(const RepCat<B>& c, Rng& rng, std::size_t max_dim) {
  const Quiver& q = c.quiver();
  std::vector<typename B::Object> vs;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    vs.push_back(random_object(c.base(), rng, max_dim));
  std::vector<typename B::Morphism> as;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    as.push_back(random_map(c.base(), vs[q.arrow(a).tail], vs[q.arrow(a).head], rng));
  return c.make_object(std::move(vs), std::move(as));
}

/// Random short exact sequence a -> b -> coker, with a -> b a random mono
/// obtained as the image inclusion of a random map.
template <AbelianBase C>
std::pair<typename C::Morphism, typename C::Morphism> random_short_exact(const C& c, Rng& rng,
                                                                         std::size_t max_dim) {
  auto x = random_object(c, rng, max_dim);
  auto y = random_object(c, rng, max_dim);
  auto f = random_map(c, x, y, rng);
  auto im = image_factorization(c, f);
  auto ck = c.cokernel(im.mono);
  return {im.mono, ck.proj};
}

}  // namespace qha
