#pragma once

#include "qha/random.hpp"
#include "qha/rep.hpp"

#include <functional>
#include <string>

namespace qha {

/// An additive functor between computable abelian bases, given by its
/// action on objects and on morphisms (with explicit endpoints, so zero
/// maps between zero objects carry enough information).
template <AbelianBase Src, AbelianBase Dst>
struct FunctorSpec {
  using SrcObject = typename Src::Object;
  using SrcMorphism = typename Src::Morphism;
  using DstObject = typename Dst::Object;
  using DstMorphism = typename Dst::Morphism;

  std::string name;
  Src source;
  Dst target;
  std::function<DstObject(const SrcObject&)> on_object;
  std::function<DstMorphism(const SrcObject&, const SrcObject&, const SrcMorphism&)> on_morphism;
  bool is_exact = false;
  bool is_left_exact = false;

  DstObject operator()(const SrcObject& x) const { return on_object(x); }
  DstMorphism operator()(const SrcMorphism& f) const {
    return on_morphism(source.domain(f), source.codomain(f), f);
  }
};

// ---------------------------------------------------------------------------
// Built-in functors.

template <AbelianBase C>
FunctorSpec<C, C> identity_functor(const C& c) {
  return {"identity",
          c,
          c,
          [](const typename C::Object& x) { return x; },
          [](const typename C::Object&, const typename C::Object&, const typename C::Morphism& m) {
            return m;
          },
          true,
          true};
}

/// x -> x^{(+)m}; on fdVect this is the tensor product with k^m.
template <AbelianBase C>
FunctorSpec<C, C> power_functor(const C& c, std::size_t m) {
  std::string name =
      std::is_same_v<C, FdVect> ? "tensor k^" + std::to_string(m) : "power " + std::to_string(m);
  auto on_object = [c, m](const typename C::Object& x) {
    return c.direct_sum_n(std::vector<typename C::Object>(m, x)).sum;
  };
  auto on_morphism = [c, m](const typename C::Object& x, const typename C::Object& y,
                            const typename C::Morphism& g) {
    auto sx = c.direct_sum_n(std::vector<typename C::Object>(m, x));
    auto sy = c.direct_sum_n(std::vector<typename C::Object>(m, y));
    auto out = c.zero_map(sx.sum, sy.sum);
    for (std::size_t k = 0; k < m; ++k)
      out = c.add(out, c.compose(sy.incl[k], c.compose(g, sx.proj[k])));
    return out;
  };
  return {name, c, c, on_object, on_morphism, true, true};
}

/// Change of basis on fdVect: f -> G_m f G_n^{-1} with fixed invertible
/// G_n. Naturally isomorphic to the identity, hence an equivalence.
inline FunctorSpec<FdVect, FdVect> basis_change_functor(const FdVect& c) {
  auto g = [fs = c.field()](std::size_t n) {
    Mat m = Mat::identity(fs, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        m.set(i, j, fs.from_int(static_cast<long>((i + 2 * j) % 3) - 1));
    return m;
  };
  return {"basis change",
          c,
          c,
          [](const VectSpace& x) { return x; },
          [g](const VectSpace& x, const VectSpace& y, const Mat& m) {
            return g(y.dim) * m * *inverse(g(x.dim));
          },
          true,
          true};
}

// ---------------------------------------------------------------------------
// Induced functor F_Q : Q(Src) -> Q(Dst), F_Q(G) = F o G.

template <AbelianBase Src, AbelianBase Dst>
RepCat<Dst> induced_category(const FunctorSpec<Src, Dst>& f, const RepCat<Src>& rc) {
  return RepCat<Dst>(rc.quiver_ptr(), f.target);
}

template <AbelianBase Src, AbelianBase Dst>
RepObject<Dst> apply_induced(const FunctorSpec<Src, Dst>& f, const RepCat<Src>& rc,
                             const RepObject<Src>& m) {
  if (!(rc.base() == f.source))
    throw std::invalid_argument("apply_induced: functor source does not match the base");
  const Quiver& q = rc.quiver();
  std::vector<typename Dst::Object> vs;
  for (const auto& v : m.vertex)
    vs.push_back(f.on_object(v));
  std::vector<typename Dst::Morphism> as;
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    as.push_back(f.on_morphism(m.vertex[q.arrow(a).tail], m.vertex[q.arrow(a).head], m.arrow[a]));
  return induced_category(f, rc).make_object(std::move(vs), std::move(as));
}

template <AbelianBase Src, AbelianBase Dst>
RepMap<Dst> apply_induced(const FunctorSpec<Src, Dst>& f, const RepCat<Src>& rc,
                          const RepMap<Src>& g) {
  auto dom = std::make_shared<const RepObject<Dst>>(apply_induced(f, rc, *g.dom));
  auto cod = std::make_shared<const RepObject<Dst>>(apply_induced(f, rc, *g.cod));
  std::vector<typename Dst::Morphism> comp;
  for (std::size_t v = 0; v < g.comp.size(); ++v)
    comp.push_back(f.on_morphism(g.dom->vertex[v], g.cod->vertex[v], g.comp[v]));
  return induced_category(f, rc).make_map(dom, cod, std::move(comp));
}

/// F_Q packaged as a functor in its own right, so it can be induced again
/// or derived.
template <AbelianBase Src, AbelianBase Dst>
FunctorSpec<RepCat<Src>, RepCat<Dst>> induced_functor(const FunctorSpec<Src, Dst>& f,
                                                      const RepCat<Src>& rc) {
  return {f.name + "_Q",
          rc,
          induced_category(f, rc),
          [f, rc](const RepObject<Src>& x) { return apply_induced(f, rc, x); },
          [f, rc](const RepObject<Src>&, const RepObject<Src>&, const RepMap<Src>& g) {
            return apply_induced(f, rc, g);
          },
          f.is_exact,
          f.is_left_exact};
}

// ---------------------------------------------------------------------------
// Exactness certification by probing short exact sequences.

/// A short exact sequence 0 -> a -i-> b -p-> c -> 0.
template <AbelianBase C>
struct ShortExact {
  typename C::Morphism i;
  typename C::Morphism p;
};

/// Checks 0 -> a -> b -> c -> 0 is exact using dimensions only.
template <AbelianBase C>
bool is_short_exact(const C& c, const typename C::Morphism& i, const typename C::Morphism& p) {
  if (!c.is_zero(c.compose(p, i)) || !c.is_mono(i) || !c.is_epi(p))
    return false;
  return c.dim(c.domain(i)) + c.dim(c.codomain(p)) == c.dim(c.domain(p));
}

/// Sequences built from a map f: kernel/coimage, image/cokernel, and the
/// syzygy sequence of a projective cover.
template <AbelianBase C>
std::vector<ShortExact<C>> probe_sequences(const C& c, const typename C::Morphism& f) {
  std::vector<ShortExact<C>> out;
  auto k = c.kernel(f);
  auto im = image_factorization(c, f);
  out.push_back({k.incl, im.epi});
  auto ck = c.cokernel(f);
  out.push_back({im.mono, ck.proj});
  auto cov = c.projective_cover(c.domain(f));
  auto syz = c.kernel(cov.map);
  out.push_back({syz.incl, cov.map});
  return out;
}

struct ExactnessCertificate {
  bool functorial = true;
  bool additive = true;
  bool exact = true;
  bool left_exact = true;
  std::size_t probes = 0;
};

/// Random probes of identities, composition, additivity and (left)
/// exactness. The flags are empirical certificates, not proofs.
template <AbelianBase Src, AbelianBase Dst>
ExactnessCertificate certify_functor(const FunctorSpec<Src, Dst>& f, Rng& rng, int trials = 12,
                                     std::size_t max_dim = 3) {
  ExactnessCertificate cert;
  const Src& s = f.source;
  const Dst& t = f.target;
  for (int it = 0; it < trials; ++it) {
    auto x = random_object(s, rng, max_dim);
    auto y = random_object(s, rng, max_dim);
    auto z = random_object(s, rng, max_dim);
    auto g = random_map(s, x, y, rng);
    auto h = random_map(s, y, z, rng);
    auto g2 = random_map(s, x, y, rng);
    auto fg = f.on_morphism(x, y, g);
    auto fh = f.on_morphism(y, z, h);
    if (!t.equal(f.on_morphism(x, x, s.identity(x)), t.identity(f.on_object(x))) ||
        !t.equal(f.on_morphism(x, z, s.compose(h, g)), t.compose(fh, fg)))
      cert.functorial = false;
    if (!t.equal(f.on_morphism(x, y, s.add(g, g2)), t.add(fg, f.on_morphism(x, y, g2))))
      cert.additive = false;
    for (const auto& ses : probe_sequences(s, g)) {
      ++cert.probes;
      const auto& a = s.domain(ses.i);
      const auto& b = s.codomain(ses.i);
      const auto& cc = s.codomain(ses.p);
      auto fi = f.on_morphism(a, b, ses.i);
      auto fp = f.on_morphism(b, cc, ses.p);
      bool zero = t.is_zero(t.compose(fp, fi));
      bool mono = t.is_mono(fi);
      bool middle = zero && t.dim(t.kernel(fp).object) == t.dim(t.domain(fi));
      if (!(zero && mono && middle))
        cert.left_exact = false;
      if (!(zero && mono && middle && t.is_epi(fp)))
        cert.exact = false;
    }
  }
  return cert;
}

/// Replaces the declared flags by certified ones.
template <AbelianBase Src, AbelianBase Dst>
ExactnessCertificate register_functor(FunctorSpec<Src, Dst>& f, Rng& rng) {
  auto cert = certify_functor(f, rng);
  if (!cert.functorial || !cert.additive)
    throw std::invalid_argument("functor " + f.name + " failed the functoriality/additivity probes");
  f.is_exact = cert.exact;
  f.is_left_exact = cert.left_exact;
  return cert;
}

}  // namespace qha
