#pragma once

#include "qha/derived.hpp"
#include "qha/functor.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace qha {

// ---------------------------------------------------------------------------
// Endomorphisms as matrices on the total space.

inline Mat total_matrix(const FdVect&, const Mat& m) { return m; }

template <AbelianBase B>
Mat total_matrix(const RepCat<B>& c, const RepMap<B>& f) {
  std::vector<Mat> blocks;
  for (std::size_t v = 0; v < f.comp.size(); ++v)
    blocks.push_back(total_matrix(c.base(), f.comp[v]));
  return Mat::block_diagonal(c.field(), blocks);
}

namespace detail {

/// Characteristic polynomial by Faddeev-LeVerrier, lowest coefficient
/// first. Valid in characteristic zero.
inline std::vector<Scalar> char_poly(const Mat& a) {
  const std::size_t n = a.rows();
  std::vector<Scalar> coef(n + 1, Scalar(0));
  coef[n] = 1;
  Mat m(a.field(), n, n);
  Mat id = Mat::identity(a.field(), n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + id.scaled(coef[n - k + 1]);
    Mat am = a * m;
    Scalar tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      tr += am(i, i);
    coef[n - k] = -tr / Scalar(static_cast<long>(k));
  }
  return coef;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0)
    n = -n;
  std::vector<std::pair<mpz_class, int>> fac;
  for (mpz_class d = 2; d * d <= n && d < 1000000; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e)
      fac.emplace_back(d, e);
  }
  if (n > 1)
    fac.emplace_back(n, 1);  // possibly composite; only narrows the search
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : fac) {
    const std::size_t sz = out.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i)
        out.push_back(out[i] * pk);
    }
    if (out.size() > 20000)
      break;
  }
  return out;
}

inline Scalar horner(const std::vector<Scalar>& coef, const Scalar& x) {
  Scalar acc = 0;
  for (std::size_t i = coef.size(); i-- > 0;)
    acc = acc * x + coef[i];
  return acc;
}

}  // namespace detail

/// Some eigenvalue of a square matrix lying in the field, if one is found.
/// Over Q: rational roots of the characteristic polynomial. Over F_p: a
/// scan of the residues, so p is limited to 16 bits.
inline std::optional<Scalar> field_eigenvalue(const Mat& a) {
  const FieldSpec& fs = a.field();
  const std::size_t n = a.rows();
  if (n == 0)
    return std::nullopt;
  Mat id = Mat::identity(fs, n);
  if (fs.is_prime_field()) {
    if (fs.characteristic() > 65536)
      throw std::invalid_argument("eigenvalue search over F_p needs p below 2^16");
    for (std::uint64_t l = 0; l < fs.characteristic(); ++l) {
      Scalar s(static_cast<unsigned long>(l));
      if (rank(a - id.scaled(s)) < n)
        return s;
    }
    return std::nullopt;
  }
  auto coef = detail::char_poly(a);
  std::size_t low = 0;
  while (low < coef.size() && coef[low] == 0)
    ++low;
  if (low > 0)
    return Scalar(0);
  mpz_class den = 1;
  for (const auto& c : coef)
    den = lcm(den, mpz_class(c.get_den()));
  std::vector<Scalar> ic;
  for (const auto& c : coef)
    ic.push_back(c * den);
  for (const auto& p : detail::divisors(mpz_class(ic.front().get_num())))
    for (const auto& q : detail::divisors(mpz_class(ic.back().get_num())))
      for (int sgn : {1, -1}) {
        Scalar x(p * sgn, q);
        x.canonicalize();
        if (detail::horner(coef, x) == 0)
          return x;
      }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Krull-Schmidt decomposition and isomorphism tests.

namespace detail {

template <AbelianBase C>
std::vector<typename C::Morphism> endomorphism_candidates(const C& c, const typename C::Object& x, Rng& rng) {
  auto basis = c.hom_basis(x, x);
  std::vector<typename C::Morphism> out = basis;
  for (int k = 0; k < 12 && !basis.empty(); ++k) {
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < basis.size(); ++i)
      coeffs.push_back(c.field().is_prime_field() ? rng.scalar(c.field())
                                                  : Scalar(static_cast<long>(rng.range(-3, 3))));
    out.push_back(combine(c, x, x, basis, coeffs));
  }
  return out;
}

/// Fitting decomposition x = ker psi^n (+) im psi^n for psi = phi - lambda
/// with lambda an eigenvalue of phi; nullopt when no candidate splits x.
template <AbelianBase C>
std::optional<std::pair<typename C::Object, typename C::Object>> fitting_split(const C& c,
                                                                            const typename C::Object& x,
                                                                            Rng& rng) {
  const std::size_t n = c.dim(x);
  for (const auto& phi : endomorphism_candidates(c, x, rng)) {
    auto lambda = field_eigenvalue(total_matrix(c, phi));
    if (!lambda)
      continue;
    auto psi = c.sub(phi, c.scale(*lambda, c.identity(x)));
    auto pw = c.identity(x);
    for (std::size_t k = 0; k < n; ++k)
      pw = c.compose(psi, pw);
    auto ker = c.kernel(pw);
    const std::size_t kd = c.dim(ker.object);
    if (kd == 0 || kd == n)
      continue;
    return std::make_pair(ker.object, image_factorization(c, pw).image);
  }
  return std::nullopt;
}

}  // namespace detail

/// Indecomposable summands of x, ordered by total dimension and then by
/// dimension vector.
template <AbelianBase C>
std::vector<typename C::Object> decompose(const C& c, const typename C::Object& x, Rng& rng) {
  std::vector<typename C::Object> work{x}, out;
  while (!work.empty()) {
    auto y = work.back();
    work.pop_back();
    if (c.dim(y) == 0)
      continue;
    auto s = detail::fitting_split(c, y, rng);
    if (!s) {
      out.push_back(y);
      continue;
    }
    work.push_back(s->first);
    work.push_back(s->second);
  }
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    if (c.dim(a) != c.dim(b))
      return c.dim(a) < c.dim(b);
    return c.dimension_vector(a) > c.dimension_vector(b);
  });
  return out;
}

/// Searches Hom(x, y) for an isomorphism: the basis, then seeded random
/// combinations (exhaustive for small prime fields). A negative answer is
/// certain for mismatched dimension vectors and probabilistic otherwise.
template <AbelianBase C>
std::optional<typename C::Morphism> find_isomorphism(const C& c, const typename C::Object& x,
                                                     const typename C::Object& y, Rng& rng) {
  if (c.dimension_vector(x) != c.dimension_vector(y))
    return std::nullopt;
  auto basis = c.hom_basis(x, y);
  if (c.dim(x) == 0)
    return c.zero_map(x, y);
  for (const auto& b : basis)
    if (c.is_iso(b))
      return b;
  const auto& fs = c.field();
  double space = 1;
  if (fs.is_prime_field())
    for (std::size_t i = 0; i < basis.size() && space < 5000; ++i)
      space *= static_cast<double>(fs.characteristic());
  if (fs.is_prime_field() && space < 5000) {
    std::vector<Scalar> coeffs(basis.size(), Scalar(0));
    const auto p = fs.characteristic();
    for (;;) {
      std::size_t i = 0;
      while (i < coeffs.size()) {
        coeffs[i] += 1;
        if (coeffs[i] < Scalar(static_cast<unsigned long>(p)))
          break;
        coeffs[i] = 0;
        ++i;
      }
      if (i == coeffs.size())
        return std::nullopt;
      auto f = combine(c, x, y, basis, coeffs);
      if (c.is_iso(f))
        return f;
    }
  }
  for (int k = 0; k < 32; ++k) {
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < basis.size(); ++i)
      coeffs.push_back(fs.is_prime_field() ? rng.scalar(fs) : Scalar(static_cast<long>(rng.range(-9, 9))));
    auto f = combine(c, x, y, basis, coeffs);
    if (c.is_iso(f))
      return f;
  }
  return std::nullopt;
}

template <AbelianBase C>
bool is_isomorphic(const C& c, const typename C::Object& x, const typename C::Object& y, Rng& rng) {
  return find_isomorphism(c, x, y, rng).has_value();
}

// ---------------------------------------------------------------------------
// Tilting functors F = Hom(T, -).

struct TiltingError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TiltingCertificate {
  int projective_dimension = 0;
  std::size_t self_ext1 = 0;
  std::size_t summands = 0;      // pairwise non-isomorphic
  std::size_t vertices = 0;
  ExactnessCertificate functor;
};

template <AbelianBase A>
struct TiltingFunctor {
  FunctorSpec<A, Rep1> spec;
  std::vector<typename A::Object> summands;  // T_1 .. T_n, the End-quiver vertices
  TiltingCertificate cert;
};

/// F = Hom(t, -) into representations of the quiver of End(t). An
/// irreducible g : T_j -> T_k gives an arrow k -> j, acting by
/// precomposition. Rejects t when an axiom fails, naming it.
template <AbelianBase A>
TiltingFunctor<A> build_tilting_functor(const A& c, const typename A::Object& t, Rng& rng,
                                        std::string name = "Hom(T,-)") {
  ComplexOps<A> ops(c);
  TiltingCertificate cert;
  cert.vertices = c.simples().size();
  auto res = projective_resolution(ops, t);
  cert.projective_dimension = resolution_length(*res.complex);
  if (cert.projective_dimension > 1)
    throw TiltingError("tilting certificate: projective dimension " +
                       std::to_string(cert.projective_dimension) + " exceeds 1");
  cert.self_ext1 = hom_derived(ops, res, ops.stalk(t), 1).dim;
  if (cert.self_ext1 != 0)
    throw TiltingError("tilting certificate: Ext^1(T,T) has dimension " + std::to_string(cert.self_ext1));
  std::vector<typename A::Object> basic;
  for (const auto& s : decompose(c, t, rng)) {
    bool seen = false;
    for (const auto& b : basic)
      seen = seen || is_isomorphic(c, s, b, rng);
    if (!seen)
      basic.push_back(s);
  }
  cert.summands = basic.size();
  if (cert.summands != cert.vertices)
    throw TiltingError("tilting certificate: " + std::to_string(cert.summands) +
                       " non-isomorphic summands, expected " + std::to_string(cert.vertices));

  const std::size_t n = basic.size();
  std::vector<std::vector<std::vector<typename A::Morphism>>> hom(n, std::vector<std::vector<typename A::Morphism>>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      hom[j][k] = c.hom_basis(basic[j], basic[k]);
  for (std::size_t j = 0; j < n; ++j)
    if (hom[j][j].size() != 1)
      throw TiltingError("End-quiver: summand " + std::to_string(j + 1) + " has non-scalar endomorphisms");
  // Irreducible maps: a complement of the composites through a third summand.
  struct Irr {
    std::size_t j, k;
    typename A::Morphism g;
  };
  std::vector<Irr> irr;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k || hom[j][k].empty())
        continue;
      const std::size_t sz = c.coord_size(basic[j], basic[k]);
      std::vector<typename A::Morphism> span;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == j || l == k)
          continue;
        for (const auto& g : hom[j][l])
          for (const auto& h : hom[l][k])
            span.push_back(c.compose(h, g));
      }
      std::size_t r = span.empty() ? 0 : rank(coords_matrix(c, sz, span));
      for (const auto& b : hom[j][k]) {
        span.push_back(b);
        std::size_t nr = rank(coords_matrix(c, sz, span));
        if (nr == r) {
          span.pop_back();
          continue;
        }
        r = nr;
        irr.push_back({j, k, b});
      }
    }
  // No relations: composites of irreducibles along paths form a basis of
  // each Hom(T_j, T_k), and there are no composites from T_j to itself.
  using Maps = std::vector<std::vector<std::vector<typename A::Morphism>>>;
  Maps all(n, std::vector<std::vector<typename A::Morphism>>(n));
  Maps frontier = all;
  for (const auto& e : irr)
    frontier[e.j][e.k].push_back(e.g);
  for (std::size_t len = 1;; ++len) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        any = any || !frontier[j][k].empty();
        for (const auto& m : frontier[j][k])
          all[j][k].push_back(m);
      }
    if (!any)
      break;
    if (len > n)
      throw TiltingError("End-quiver: oriented cycle among summands");
    Maps next(n, std::vector<std::vector<typename A::Morphism>>(n));
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& e : irr)
        for (const auto& m : frontier[j][e.j])
          next[j][e.k].push_back(c.compose(e.g, m));
    frontier = std::move(next);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t want = j == k ? 0 : hom[j][k].size();
      bool ok = all[j][k].size() == want;
      if (ok && want > 0)
        ok = rank(coords_matrix(c, c.coord_size(basic[j], basic[k]), all[j][k])) == want;
      if (!ok)
        throw TiltingError("End-quiver: End(T) has relations between T" + std::to_string(j + 1) + " and T" +
                           std::to_string(k + 1));
    }
  std::vector<std::string> vnames;
  for (std::size_t j = 0; j < n; ++j)
    vnames.push_back("T" + std::to_string(j + 1));
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (std::size_t e = 0; e < irr.size(); ++e)
    arrows.emplace_back("g" + std::to_string(e + 1), vnames[irr[e].k], vnames[irr[e].j]);
  QuiverPtr q = make_quiver("End(T)", vnames, arrows);
  Rep1 target(q, FdVect(c.field()));

  auto on_object = [c, basic, irr, target](const typename A::Object& m) {
    std::vector<VectSpace> vs;
    std::vector<std::vector<typename A::Morphism>> bases;
    for (const auto& tj : basic) {
      bases.push_back(c.hom_basis(tj, m));
      vs.push_back({bases.back().size()});
    }
    std::vector<Mat> as;
    for (const auto& e : irr) {
      std::vector<std::vector<Scalar>> cols;
      for (const auto& phi : bases[e.k])
        cols.push_back(*coordinates_in_basis(c, basic[e.j], m, bases[e.j], c.compose(phi, e.g)));
      as.push_back(Mat::from_columns(c.field(), bases[e.j].size(), cols));
    }
    return target.make_object(std::move(vs), std::move(as));
  };
  auto on_morphism = [c, basic, on_object, target](const typename A::Object& m, const typename A::Object& n2,
                                                    const typename A::Morphism& f) {
    auto fm = std::make_shared<const Rep1::Object>(on_object(m));
    auto fn = std::make_shared<const Rep1::Object>(on_object(n2));
    std::vector<Mat> comp;
    for (const auto& tj : basic) {
      auto bm = c.hom_basis(tj, m);
      auto bn = c.hom_basis(tj, n2);
      std::vector<std::vector<Scalar>> cols;
      for (const auto& phi : bm)
        cols.push_back(*coordinates_in_basis(c, tj, n2, bn, c.compose(f, phi)));
      comp.push_back(Mat::from_columns(c.field(), bn.size(), cols));
    }
    return target.make_map(fm, fn, std::move(comp));
  };
  TiltingFunctor<A> out{{name, c, target, on_object, on_morphism, false, false}, basic, cert};
  out.cert.functor = register_functor(out.spec, rng);
  if (!out.cert.functor.left_exact)
    throw TiltingError("tilting functor failed the left-exactness probes");
  return out;
}


/// Sum of the indecomposable projectives; Hom(T, -) is then a Morita
/// equivalence.
template <AbelianBase B>
RepObject<B> projective_generator(const RepCat<B>& c) {
  return c.direct_sum_n(c.indecomposable_projectives()).sum;
}

/// APR tilt at the sink k (the largest sink with incoming arrows):
/// T = sum of P_j for j != k, plus coker(P_k -> sum over arrows j -> k of P_j).
/// Each arrow j -> k must be the only path from j to k.
inline Rep1::Object apr_tilt(const Rep1& c) {
  const Quiver& q = c.quiver();
  std::optional<std::size_t> sink;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (q.arrows_out_of(v).empty() && !q.arrows_into(v).empty())
      sink = v;
  if (!sink)
    throw TiltingError("apr: quiver " + q.name() + " has no sink with incoming arrows");
  auto ps = c.indecomposable_projectives();
  std::vector<Rep1::Object> targets;
  for (auto a : q.arrows_into(*sink)) {
    if (paths_between(q, q.arrow(a).tail, *sink).size() != 1)
      throw TiltingError("apr: arrow " + q.arrow(a).name + " is not the only path into the sink");
    targets.push_back(ps[q.arrow(a).tail]);
  }
  auto sum = c.direct_sum_n(targets);
  auto m = c.zero_map(ps[*sink], sum.sum);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    auto basis = c.hom_basis(ps[*sink], targets[k]);
    m = c.add(m, c.compose(sum.incl[k], basis.at(0)));
  }
  std::vector<Rep1::Object> parts;
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    if (v != *sink)
      parts.push_back(ps[v]);
  parts.push_back(c.cokernel(m).object);
  return c.direct_sum_n(parts).sum;
}

// ---------------------------------------------------------------------------
// Derived functors of left exact functors.

template <AbelianBase A, AbelianBase B>
struct DerivedFunctorSpec {
  FunctorSpec<A, B> underlying;
  ExactnessCertificate cert;
  int cap = kDefaultResolutionCap;
};

/// Certifies left exactness by probes; rejects functors that fail them.
template <AbelianBase A, AbelianBase B>
DerivedFunctorSpec<A, B> make_derived(FunctorSpec<A, B> f, Rng& rng, int cap = kDefaultResolutionCap) {
  auto cert = register_functor(f, rng);
  if (!cert.left_exact)
    throw std::invalid_argument("functor " + f.name + " is not left exact");
  return {std::move(f), cert, cap};
}

/// F applied degreewise to a complex and to a chain map.
template <AbelianBase A, AbelianBase B>
Complex<B> apply_degreewise(const FunctorSpec<A, B>& f, const Complex<A>& x) {
  ComplexOps<B> ops(f.target);
  std::vector<typename B::Object> objs;
  std::vector<typename B::Morphism> diffs;
  for (const auto& o : x.obj)
    objs.push_back(f.on_object(o));
  for (std::size_t k = 0; k < x.diff.size(); ++k)
    diffs.push_back(f.on_morphism(x.obj[k], x.obj[k + 1], x.diff[k]));
  return ops.make(x.lo, objs, diffs);
}

template <AbelianBase A, AbelianBase B>
ChainMap<B> apply_degreewise(const FunctorSpec<A, B>& f, const ChainMap<A>& g, ComplexPtr<B> dom,
                             ComplexPtr<B> cod) {
  ComplexOps<A> aops(f.source);
  ComplexOps<B> bops(f.target);
  std::map<int, typename B::Morphism> comps;
  auto [lo, hi] = ComplexOps<B>::intersection(*dom, *cod);
  for (int i = lo; i <= hi; ++i)
    comps.emplace(i, f.on_morphism(aops.object(*g.dom, i), aops.object(*g.cod, i), aops.component(g, i)));
  return bops.make_map(dom, cod, comps);
}

/// RF(x) = F(I(x)) on the base itself.
template <AbelianBase A, AbelianBase B>
std::pair<Resolution<A>, ComplexPtr<B>> derive_base(const DerivedFunctorSpec<A, B>& df, const Complex<A>& x) {
  ComplexOps<A> ops(df.underlying.source);
  auto r = injective_resolution(ops, std::make_shared<const Complex<A>>(x), df.cap);
  return {r, std::make_shared<const Complex<B>>(apply_degreewise(df.underlying, *r.complex))};
}

/// R(F_Q)(x) = F_Q(I(x)) for a complex over Q(A).
template <AbelianBase A, AbelianBase B>
Complex<RepCat<B>> derive_induced(const DerivedFunctorSpec<A, B>& df, const RepCat<A>& rc,
                                  const Complex<RepCat<A>>& x) {
  ComplexOps<RepCat<A>> ops(rc);
  auto r = injective_resolution(ops, std::make_shared<const Complex<RepCat<A>>>(x), df.cap);
  return apply_degreewise(induced_functor(df.underlying, rc), *r.complex);
}


/// F_Q applied to a given injective resolution.
template <AbelianBase A, AbelianBase B>
Complex<RepCat<B>> derive_induced(const DerivedFunctorSpec<A, B>& df, const RepCat<A>& rc,
                                  const Resolution<RepCat<A>>& r) {
  return apply_degreewise(induced_functor(df.underlying, rc), *r.complex);
}

/// A second injective resolution, I(x) (+) (J -id-> J) with J the
/// injective hull of a random object placed at a random degree. Differs
/// from the first one by a contractible summand.
template <AbelianBase C>
Resolution<C> padded_injective_resolution(const ComplexOps<C>& ops, ComplexPtr<C> x, Rng& rng,
                                          int cap = kDefaultResolutionCap) {
  const C& c = ops.cat();
  auto r = injective_resolution(ops, x, cap);
  typename C::Object seed = random_object(c, rng, 2);
  while (c.dim(seed) == 0)
    seed = random_object(c, rng, 2);
  auto j = c.injective_hull(seed).object;
  int at = (r.complex->empty() ? 0 : r.complex->lo) + static_cast<int>(rng.below(2));
  auto pad = ops.make(at, {j, j}, {c.identity(j)});
  auto sum = ops.direct_sum({*r.complex, pad});
  auto total = std::make_shared<const Complex<C>>(sum.sum);
  auto incl = ops.with_endpoints(sum.incl[0], sum.incl[0].dom, total);
  return {total, ops.compose(ops.with_endpoints(incl, r.complex, total), r.map)};
}

// ---------------------------------------------------------------------------
// The square T_B o R(F_Q) versus (RF)_Q o T_A.

struct Square22Result {
  std::vector<bool> vertex_qis;      // comparison map is a quasi-isomorphism
  std::vector<bool> vertex_cohomology;  // cohomology dimensions match degreewise
  bool arrows = false;               // arrow squares commute in D(B)
  bool passed() const {
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return arrows && all(vertex_qis) && all(vertex_cohomology);
  }
};

/// Builds both composites at every vertex and compares them through
/// phi_v : I(x)(v) -> J(x_v) with phi_v iota(x)_v ~ iota_v, i.e. the map
/// between two injective resolutions of x_v.
template <AbelianBase A, AbelianBase B>
Square22Result check_square22(const DerivedFunctorSpec<A, B>& df, const RepCat<A>& rc,
                              const Complex<RepCat<A>>& x) {
  using QA = RepCat<A>;
  const FunctorSpec<A, B>& f = df.underlying;
  ComplexOps<QA> qops(rc);
  ComplexOps<A> aops(rc.base());
  ComplexOps<B> bops(f.target);
  auto fq = induced_functor(f, rc);
  ComplexOps<RepCat<B>> qbops(fq.target);
  const Quiver& q = rc.quiver();

  auto xp = std::make_shared<const Complex<QA>>(x);
  auto ix = injective_resolution(qops, xp, df.cap);
  TObject<B> left = apply_T(qbops, apply_degreewise(fq, *ix.complex));

  TObject<A> ta = apply_T(qops, x);
  std::vector<Resolution<A>> jv;
  std::vector<ChainMap<B>> phi;
  TObject<B> right{rc.quiver_ptr(), {}, {}};
  Square22Result out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    auto xv = std::make_shared<const Complex<A>>(ta.vertex[v]);
    jv.push_back(injective_resolution(aops, xv, df.cap));
    right.vertex.push_back(apply_degreewise(f, *jv[v].complex));
  }
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    auto iv = std::make_shared<const Complex<A>>(evaluate(qops, *ix.complex, v));
    auto iota = evaluate(qops, ix.map, v, std::make_shared<const Complex<A>>(ta.vertex[v]), iv);
    auto p = extend_up_to_homotopy(aops, iota, jv[v].map);
    auto lv = std::make_shared<const Complex<B>>(left.vertex[v]);
    auto rv = std::make_shared<const Complex<B>>(right.vertex[v]);
    bool ok = p.has_value();
    if (ok) {
      phi.push_back(apply_degreewise(f, *p, lv, rv));
      ok = bops.is_quasi_iso(phi.back());
    } else {
      phi.push_back(bops.zero_map(lv, rv));
    }
    out.vertex_qis.push_back(ok);
    bool coh = true;
    int lo = std::min(lv->empty() ? 0 : lv->lo, rv->empty() ? 0 : rv->lo);
    int hi = std::max(lv->empty() ? 0 : lv->hi(), rv->empty() ? 0 : rv->hi());
    for (int i = lo; i <= hi; ++i)
      coh = coh && f.target.dim(bops.cohomology(*lv, i).object) == f.target.dim(bops.cohomology(*rv, i).object);
    out.vertex_cohomology.push_back(coh);
  }
  bool arrows_ok = true;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t v = q.arrow(a).tail, w = q.arrow(a).head;
    const Roof<A>& r = ta.arrow[a];
    // rho : J_v -> J_w with rho iota_v ~ iota_w o x(a).
    auto target = aops.compose(jv[w].map, aops.with_endpoints(r.right, jv[v].map.dom, jv[w].map.dom));
    auto rho = extend_up_to_homotopy(aops, jv[v].map, target);
    if (!rho) {
      arrows_ok = false;
      right.arrow.push_back(identity_roof(bops, std::make_shared<const Complex<B>>(right.vertex[v])));
      continue;
    }
    auto fr = apply_degreewise(f, *rho, std::make_shared<const Complex<B>>(right.vertex[v]),
                               std::make_shared<const Complex<B>>(right.vertex[w]));
    right.arrow.push_back(localize(bops, fr));
  }
  out.arrows = arrows_ok && std::all_of(out.vertex_qis.begin(), out.vertex_qis.end(), [](bool b) { return b; }) &&
               is_T_isomorphism(bops, left, right, phi, df.cap);
  return out;
}

// ---------------------------------------------------------------------------
// Named object suites.

template <AbelianBase C>
struct Named {
  std::string name;
  typename C::Object object;
};

/// Indecomposable projectives, then simples and injectives not isomorphic
/// to an earlier entry. Named P<atom>, I<atom>, S<atom>.
template <AbelianBase B>
std::vector<Named<RepCat<B>>> stalk_suite(const RepCat<B>& c, Rng& rng) {
  std::vector<Named<RepCat<B>>> out;
  auto labels = c.atom_labels();
  auto add = [&](const std::string& prefix, const std::vector<RepObject<B>>& objs) {
    for (std::size_t k = 0; k < objs.size(); ++k) {
      bool seen = false;
      for (const auto& e : out)
        seen = seen || is_isomorphic(c, e.object, objs[k], rng);
      if (!seen)
        out.push_back({prefix + labels[k], objs[k]});
    }
  };
  add("P", c.indecomposable_projectives());
  add("S", c.simples());
  add("I", c.indecomposable_injectives());
  return out;
}

// ---------------------------------------------------------------------------
// Experiment reports.

struct CaseRecord {
  std::string id;
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::pair<std::string, bool>> checks;
  std::string audit;  // constraint-system sizes, if any

  bool agree() const { return left == right; }
  bool checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  }
};

struct ProbeRecord {
  std::string target;
  std::string result;
  bool found = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> header;
  std::vector<CaseRecord> cases;
  std::vector<ProbeRecord> probes;

  std::size_t agreements() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.agree(); }));
  }
  std::size_t failed_checks() const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.checks_pass(); }));
  }
  bool all_checks_pass() const { return failed_checks() == 0; }

  std::string render() const {
    std::ostringstream os;
    os << "qha experiment " << experiment << "\n";
    for (const auto& [k, v] : header)
      os << k << ": " << v << "\n";
    os << "summary: cases=" << cases.size() << " agree=" << agreements()
       << " disagree=" << cases.size() - agreements() << " checks_failed=" << failed_checks() << "\n";
    if (!probes.empty()) {
      std::size_t found = 0;
      for (const auto& p : probes)
        found += p.found;
      os << "probes: targets=" << probes.size() << " found=" << found << "\n";
    }
    os << "\n```records\n";
    for (const auto& c : cases) {
      os << "case " << c.id << " left=" << c.left << " right=" << c.right << " agree=" << (c.agree() ? "true" : "false")
         << " checks=";
      for (std::size_t k = 0; k < c.checks.size(); ++k)
        os << (k ? "," : "") << c.checks[k].first << ":" << (c.checks[k].second ? "ok" : "FAIL");
      os << "\n";
    }
    os << "```\n";
    bool audit = std::any_of(cases.begin(), cases.end(), [](const auto& c) { return !c.audit.empty(); });
    if (audit) {
      os << "\n```audit\n";
      for (const auto& c : cases)
        if (!c.audit.empty())
          os << "audit " << c.id << " " << c.audit << "\n";
      os << "```\n";
    }
    if (!probes.empty()) {
      os << "\n```probes\n";
      for (const auto& p : probes)
        os << "probe " << p.target << " " << p.result << "\n";
      os << "```\n";
    }
    return os.str();
  }
};

inline constexpr const char* kSettingNote =
    "finite-dimensional representations over a field replace the geometric setting";

inline std::string shift_range(int lo, int hi) { return std::to_string(lo) + ".." + std::to_string(hi); }

inline std::string case_id(const std::string& x, const std::string& y, int n) {
  return x + "," + y + "," + std::to_string(n);
}

/// dim H^n(Hom(X, Y)) for every n in [lo, hi] from one set of Hom degrees.
template <AbelianBase C>
std::vector<std::size_t> hom_cohomology_range(const ComplexOps<C>& ops, const Complex<C>& x, const Complex<C>& y,
                                              int lo, int hi) {
  std::map<int, HomDegree<C>> h;
  for (int k = lo - 1; k <= hi + 1; ++k)
    h.emplace(k, ops.hom_degree(x, y, k));
  std::map<int, std::size_t> dr;  // rank of delta^k : Hom^k -> Hom^{k+1}
  for (int k = lo - 1; k <= hi; ++k)
    dr[k] = rank(ops.delta(x, y, h.at(k), h.at(k + 1)));
  std::vector<std::size_t> out;
  for (int n = lo; n <= hi; ++n)
    out.push_back(h.at(n).dim - dr[n] - dr[n - 1]);
  return out;
}

/// Full faithfulness probe for T on a stalk suite: Hom_D(x, y[n]) against
/// hom_QD(T x, T y[n]). Each side is cross-checked by an independent route;
/// agreement is recorded, not required.
template <AbelianBase B>
ExperimentReport experiment_thm21(const RepCat<B>& c, const std::vector<Named<RepCat<B>>>& suite, int shift_lo,
                                  int shift_hi, std::uint64_t seed, const std::string& suite_name = "stalks") {
  using QC = RepCat<B>;
  ComplexOps<QC> ops(c);
  ComplexOps<B> bops(c.base());
  ExperimentReport rep;
  rep.experiment = "thm21";
  std::string members;
  for (const auto& s : suite)
    members += (members.empty() ? "" : " ") + s.name;
  rep.header = {{"setting", kSettingNote},
                {"field", c.field().to_string()},
                {"quiver", c.quiver().name()},
                {"base", c.base().name()},
                {"functor", "T"},
                {"seed", std::to_string(seed)},
                {"suite", suite_name + " (" + members + ")"},
                {"shifts", shift_range(shift_lo, shift_hi)},
                {"left", "dim Hom_D(x, y[n]) via projective resolution"},
                {"right", "dim Hom_QD(T x, T y[n])"}};
  std::vector<ComplexPtr<QC>> stalks;
  std::vector<Resolution<QC>> pres, ires;
  std::vector<TObject<B>> tx;
  for (const auto& s : suite) {
    stalks.push_back(std::make_shared<const Complex<QC>>(ops.stalk(s.object)));
    pres.push_back(projective_resolution(ops, stalks.back()));
    ires.push_back(injective_resolution(ops, stalks.back()));
    tx.push_back(apply_T(ops, *stalks.back()));
  }
  for (std::size_t i = 0; i < suite.size(); ++i)
    for (std::size_t j = 0; j < suite.size(); ++j) {
      auto proj = hom_cohomology_range(ops, *pres[i].complex, *stalks[j], shift_lo, shift_hi);
      auto inj = hom_cohomology_range(ops, *stalks[i], *ires[j].complex, shift_lo, shift_hi);
      for (int n = shift_lo; n <= shift_hi; ++n) {
        CaseRecord rec;
        rec.id = case_id(suite[i].name, suite[j].name, n);
        rec.left = proj[n - shift_lo];
        rec.checks.emplace_back("inj", inj[n - shift_lo] == rec.left);
        rec.checks.emplace_back("ext", ext_oracle(c, suite[i].object, suite[j].object, n) == rec.left);
        auto ty = apply_T(ops, ops.shift(*stalks[j], n));
        auto qd = hom_QD(bops, tx[i], ty);
        rec.right = qd.dim;
        rec.checks.emplace_back("qd-inj", hom_QD_injective(bops, tx[i], ty).dim == rec.right);
        rec.audit = "unknowns=" + std::to_string(qd.unknowns) + " homotopy=" + std::to_string(qd.homotopy_unknowns) +
                    " equations=" + std::to_string(qd.equations);
        rep.cases.push_back(std::move(rec));
      }
    }
  return rep;
}

/// Derived-equivalence probe for R(F_Q): Hom_D(x, y[n]) over Q(A) against
/// Hom_D(Rx, Ry[n]) over Q(B) on a stalk suite, plus a bounded essential
/// surjectivity search for each stalk indecomposable of Q(B).
template <AbelianBase A, AbelianBase B>
ExperimentReport experiment_thm24(const RepCat<A>& rc, const DerivedFunctorSpec<A, B>& df,
                                  const std::vector<Named<RepCat<A>>>& suite, int shift_lo, int shift_hi,
                                  std::size_t bound, std::uint64_t seed, Rng& rng,
                                  const std::string& suite_name = "stalks") {
  using QA = RepCat<A>;
  using QB = RepCat<B>;
  ComplexOps<QA> qa(rc);
  QB rcb = induced_category(df.underlying, rc);
  ComplexOps<QB> qb(rcb);
  ExperimentReport rep;
  rep.experiment = "thm24";
  std::string members;
  for (const auto& s : suite)
    members += (members.empty() ? "" : " ") + s.name;
  rep.header = {{"setting", kSettingNote},
                {"field", rc.field().to_string()},
                {"quiver", rc.quiver().name()},
                {"base", rc.base().quiver().name()},
                {"functor", df.underlying.name},
                {"seed", std::to_string(seed)},
                {"suite", suite_name + " (" + members + ")"},
                {"shifts", shift_range(shift_lo, shift_hi)},
                {"bound", std::to_string(bound)},
                {"left", "dim Hom_D(x, y[n]) over Q(A)"},
                {"right", "dim Hom_D(Rx, Ry[n]) over Q(B)"}};
  std::vector<ComplexPtr<QA>> xs;
  std::vector<Resolution<QA>> xp, xi;
  std::vector<ComplexPtr<QB>> rx;
  std::vector<Resolution<QB>> rp, ri;
  for (const auto& s : suite) {
    xs.push_back(std::make_shared<const Complex<QA>>(qa.stalk(s.object)));
    xp.push_back(projective_resolution(qa, xs.back(), df.cap));
    xi.push_back(injective_resolution(qa, xs.back(), df.cap));
    rx.push_back(std::make_shared<const Complex<QB>>(derive_induced(df, rc, xi.back())));
    rp.push_back(projective_resolution(qb, rx.back(), df.cap));
    ri.push_back(injective_resolution(qb, rx.back(), df.cap));
  }
  for (std::size_t i = 0; i < suite.size(); ++i)
    for (std::size_t j = 0; j < suite.size(); ++j) {
      auto lp = hom_cohomology_range(qa, *xp[i].complex, *xs[j], shift_lo, shift_hi);
      auto li = hom_cohomology_range(qa, *xs[i], *xi[j].complex, shift_lo, shift_hi);
      auto rpd = hom_cohomology_range(qb, *rp[i].complex, *rx[j], shift_lo, shift_hi);
      auto rid = hom_cohomology_range(qb, *rx[i], *ri[j].complex, shift_lo, shift_hi);
      for (int n = shift_lo; n <= shift_hi; ++n) {
        const std::size_t k = static_cast<std::size_t>(n - shift_lo);
        CaseRecord rec;
        rec.id = case_id(suite[i].name, suite[j].name, n);
        rec.left = lp[k];
        rec.right = rpd[k];
        rec.checks.emplace_back("inj", li[k] == rec.left);
        rec.checks.emplace_back("ext", ext_oracle(rc, suite[i].object, suite[j].object, n) == rec.left);
        rec.checks.emplace_back("image-inj", rid[k] == rec.right);
        rep.cases.push_back(std::move(rec));
      }
    }
  // Essential surjectivity: z ~ R(x)[d] when R(x) has cohomology only in
  // degree -d and that cohomology is isomorphic to z.
  for (const auto& z : stalk_suite(rcb, rng)) {
    ProbeRecord pr;
    pr.target = z.name;
    for (std::size_t i = 0; i < suite.size() && !pr.found; ++i) {
      if (rc.dim(suite[i].object) > bound)
        continue;
      const auto& r = *rx[i];
      int deg = 0, nonzero = 0;
      typename QB::Object h = rcb.zero_object();
      for (int d = r.empty() ? 0 : r.lo; !r.empty() && d <= r.hi(); ++d) {
        auto hd = qb.cohomology(r, d).object;
        if (rcb.dim(hd) != 0) {
          ++nonzero;
          deg = d;
          h = hd;
        }
      }
      if (nonzero != 1)
        continue;
      if (deg < shift_lo || deg > shift_hi)
        continue;
      if (is_isomorphic(rcb, h, z.object, rng)) {
        pr.found = true;
        pr.result = "found x=" + suite[i].name + "[" + std::to_string(deg) + "]";
      }
    }
    if (!pr.found)
      pr.result = "not found at bound";
    rep.probes.push_back(std::move(pr));
  }
  return rep;
}

}  // namespace qha
