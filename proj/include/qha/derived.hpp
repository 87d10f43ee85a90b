#pragma once

#include "qha/complex.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A resolution together with its comparison map: P -> X for projective
/// resolutions, X -> I for injective ones.
template <AbelianBase C>
struct Resolution {
  ComplexPtr<C> complex;
  ChainMap<C> map;
};

inline constexpr int kDefaultResolutionCap = 8;

/// Projective resolution of a bounded complex, built downward from the top
/// degree. At degree i, with Z = ker d_P^{i+1}, the pullback
///   E = ker( Z (+) X^i -> X^{i+1},  (z, x) -> q z - d x )
/// is covered by a projective; this keeps H(q) surjective at i and injective
/// at i+1. The construction stops once E vanishes below the window.
template <AbelianBase C>
Resolution<C> projective_resolution(const ComplexOps<C>& ops, ComplexPtr<C> x,
                                    int cap = kDefaultResolutionCap) {
  const C& c = ops.cat();
  if (x->empty())
    return {x, ops.identity(x)};
  std::vector<typename C::Object> objs;  // built top-down
  std::vector<typename C::Morphism> diffs;
  std::map<int, typename C::Morphism> q;
  auto zero = c.zero_object();
  typename C::Morphism dnext = c.zero_map(zero, zero);
  typename C::Morphism qnext = c.zero_map(zero, ops.object(*x, x->hi() + 1));
  int i = x->hi();
  for (;; --i) {
    if (x->lo - i > cap)
      throw ResolutionError("projective resolution exceeds the length cap " + std::to_string(cap));
    auto z = c.kernel(dnext);
    auto xi = ops.object(*x, i);
    auto s = c.direct_sum(z.object, xi);
    auto m = c.sub(c.compose(qnext, c.compose(z.incl, s.proj[0])),
                   c.compose(ops.differential(*x, i), s.proj[1]));
    auto e = c.kernel(m);
    if (i < x->lo && c.dim(e.object) == 0)
      break;
    auto cov = c.projective_cover(e.object);
    typename C::Object pi_obj = cov.object;
    typename C::Morphism pi = cov.map;
    if (c.is_iso(cov.map)) {
      // E is already projective; keep it so projective inputs resolve to
      // themselves.
      pi_obj = e.object;
      pi = c.identity(e.object);
    }
    auto to_sum = c.compose(e.incl, pi);
    auto di = c.compose(z.incl, c.compose(s.proj[0], to_sum));
    auto qi = c.compose(s.proj[1], to_sum);
    objs.push_back(pi_obj);
    if (i < x->hi())
      diffs.push_back(di);
    q.emplace(i, qi);
    dnext = di;
    qnext = qi;
  }
  std::reverse(objs.begin(), objs.end());
  std::reverse(diffs.begin(), diffs.end());
  auto p = std::make_shared<const Complex<C>>(ops.make(i + 1, objs, diffs));
  std::map<int, typename C::Morphism> qc;
  for (auto& [d, m] : q)
    if (p->in_window(d) && x->in_window(d))
      qc.emplace(d, m);
  return {p, ops.make_map(p, x, qc)};
}

/// Injective resolution by duality: resolve DX projectively over the
/// opposite category and dualize back.
template <AbelianBase C>
Resolution<C> injective_resolution(const ComplexOps<C>& ops, ComplexPtr<C> x,
                                   int cap = kDefaultResolutionCap) {
  ComplexOps<C> op(ops.cat().opposite());
  auto dx = std::make_shared<const Complex<C>>(ops.dual_complex(*x));
  auto r = projective_resolution(op, dx, cap);
  auto inj = std::make_shared<const Complex<C>>(op.dual_complex(*r.complex));
  return {inj, op.dual_map(r.map, x, inj)};
}

/// Resolution of a stalk complex, cached by the caller as needed.
template <AbelianBase C>
Resolution<C> projective_resolution(const ComplexOps<C>& ops, const typename C::Object& m,
                                    int cap = kDefaultResolutionCap) {
  return projective_resolution(ops, std::make_shared<const Complex<C>>(ops.stalk(m)), cap);
}

template <AbelianBase C>
int resolution_length(const Complex<C>& p) {
  return p.empty() ? 0 : p.hi() - p.lo;
}

// ---------------------------------------------------------------------------
// Hom in the homotopy category.

/// dim H^n(Hom(X, Y)).
template <AbelianBase C>
std::size_t hom_cohomology_dim(const ComplexOps<C>& ops, const Complex<C>& x, const Complex<C>& y, int n) {
  auto hm = ops.hom_degree(x, y, n - 1);
  auto h0 = ops.hom_degree(x, y, n);
  auto h1 = ops.hom_degree(x, y, n + 1);
  std::size_t nullity = h0.dim - rank(ops.delta(x, y, h0, h1));
  return nullity - rank(ops.delta(x, y, hm, h0));
}

/// H^0(Hom(X, Y)) = Hom_K(X, Y) with chain-map representatives of a basis
/// (cocycles complementing the boundaries).
template <AbelianBase C>
struct HomK {
  std::size_t dim = 0;
  std::vector<ChainMap<C>> reps;
  std::size_t cocycles = 0;
  std::size_t boundaries = 0;
};

template <AbelianBase C>
HomK<C> hom_k(const ComplexOps<C>& ops, ComplexPtr<C> x, ComplexPtr<C> y) {
  auto hm = ops.hom_degree(*x, *y, -1);
  auto h0 = ops.hom_degree(*x, *y, 0);
  auto h1 = ops.hom_degree(*x, *y, 1);
  Mat z = nullspace(ops.delta(*x, *y, h0, h1));
  Mat b = ops.delta(*x, *y, hm, h0);
  HomK<C> out;
  out.cocycles = z.cols();
  out.boundaries = rank(b);
  out.dim = out.cocycles - out.boundaries;
  Mat cur = b;
  std::size_t r = out.boundaries;
  Mat raw = h0.raw_basis * z;
  for (std::size_t j = 0; j < z.cols() && out.reps.size() < out.dim; ++j) {
    Mat next = cur.hconcat(raw.column(j));
    std::size_t nr = rank(next);
    if (nr == r)
      continue;
    cur = std::move(next);
    r = nr;
    out.reps.push_back(ops.make_map(x, y, ops.from_basis_coords(h0, *x, *y, z.column_entries(j))));
  }
  return out;
}

/// Hom_D(X, Y[n]) computed as H^0 Hom(P(X), Y[n]).
template <AbelianBase C>
struct DerivedHom {
  std::size_t dim = 0;
  std::vector<ChainMap<C>> reps;  // chain maps P(X) -> Y[n]
  Resolution<C> resolution;
  ComplexPtr<C> shifted_target;
};

template <AbelianBase C>
DerivedHom<C> hom_derived(const ComplexOps<C>& ops, const Resolution<C>& px, const Complex<C>& y, int n) {
  auto yn = std::make_shared<const Complex<C>>(ops.shift(y, n));
  auto hk = hom_k(ops, px.complex, yn);
  return {hk.dim, std::move(hk.reps), px, yn};
}

template <AbelianBase C>
DerivedHom<C> hom_derived(const ComplexOps<C>& ops, const Complex<C>& x, const Complex<C>& y, int n,
                          int cap = kDefaultResolutionCap) {
  return hom_derived(ops, projective_resolution(ops, std::make_shared<const Complex<C>>(x), cap), y, n);
}

/// Cross-oracle: Hom_K(X, I(Y)[n]) through an injective resolution of Y.
template <AbelianBase C>
std::size_t hom_derived_injective(const ComplexOps<C>& ops, const Complex<C>& x, const Resolution<C>& iy,
                                  int n) {
  return hom_cohomology_dim(ops, x, *iy.complex, n);
}

template <AbelianBase C>
std::size_t hom_derived_injective(const ComplexOps<C>& ops, const Complex<C>& x, const Complex<C>& y, int n,
                                  int cap = kDefaultResolutionCap) {
  return hom_derived_injective(ops, x, injective_resolution(ops, std::make_shared<const Complex<C>>(y), cap),
                               n);
}

/// Classical Ext^n(M, N): resolve M by iterated projective covers and
/// syzygies, then take cohomology of the cochain complex Hom(P_k, N).
/// Uses only category-level operations, not the complex machinery.
template <AbelianBase C>
std::size_t ext_oracle(const C& c, const typename C::Object& m, const typename C::Object& n, int degree,
                       int cap = kDefaultResolutionCap) {
  if (degree < 0)
    return 0;
  std::vector<typename C::Object> ps;
  std::vector<typename C::Morphism> ds;  // ds[k] : P_{k+1} -> P_k
  auto cov = c.projective_cover(m);
  ps.push_back(cov.object);
  auto syz = c.kernel(cov.map);
  while (c.dim(syz.object) != 0) {
    if (static_cast<int>(ps.size()) > cap)
      throw ResolutionError("ext_oracle: resolution exceeds the length cap");
    auto next = c.projective_cover(syz.object);
    ds.push_back(c.compose(syz.incl, next.map));
    ps.push_back(next.object);
    syz = c.kernel(next.map);
  }
  auto hom_dim = [&](int k) -> std::size_t {
    if (k < 0 || k >= static_cast<int>(ps.size()))
      return 0;
    return c.hom_basis(ps[k], n).size();
  };
  // rank of Hom(P_k, N) -> Hom(P_{k+1}, N), phi -> phi o d.
  auto delta_rank = [&](int k) -> std::size_t {
    if (k < 0 || k + 1 >= static_cast<int>(ps.size()))
      return 0;
    std::vector<typename C::Morphism> images;
    for (const auto& phi : c.hom_basis(ps[k], n))
      images.push_back(c.compose(phi, ds[k]));
    if (images.empty())
      return 0;
    return rank(coords_matrix(c, c.coord_size(ps[k + 1], n), images));
  };
  return hom_dim(degree) - delta_rank(degree) - delta_rank(degree - 1);
}

/// Ext^1 between all pairs of simples vanishes.
template <AbelianBase C>
bool is_semisimple(const C& c) {
  ComplexOps<C> ops(c);
  auto ss = c.simples();
  for (const auto& s : ss) {
    auto rs = projective_resolution(ops, s);
    for (const auto& t : ss)
      if (hom_derived(ops, rs, ops.stalk(t), 1).dim != 0)
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Factoring through quasi-isomorphisms up to homotopy.

/// beta : P -> A with alpha o beta ~ phi, where alpha : A -> X is a
/// quasi-isomorphism and P is a bounded complex of projectives.
template <AbelianBase C>
std::optional<ChainMap<C>> lift_up_to_homotopy(const ComplexOps<C>& ops, const ChainMap<C>& alpha,
                                               const ChainMap<C>& phi) {
  auto gens = ops.chain_map_basis(phi.dom, alpha.dom);
  std::vector<ChainMap<C>> images;
  for (const auto& g : gens)
    images.push_back(ops.compose(alpha, g));
  auto s = ops.homotopy_solve(*phi.dom, *phi.cod, images, phi);
  if (!s)
    return std::nullopt;
  ChainMap<C> beta = ops.zero_map(phi.dom, alpha.dom);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (s->coeffs[k] != 0)
      beta = ops.add(beta, ops.scale(s->coeffs[k], gens[k]));
  return beta;
}

/// mu : X -> J with mu o alpha ~ phi, where alpha : A -> X is a
/// quasi-isomorphism and J is a bounded complex of injectives.
template <AbelianBase C>
std::optional<ChainMap<C>> extend_up_to_homotopy(const ComplexOps<C>& ops, const ChainMap<C>& alpha,
                                                 const ChainMap<C>& phi) {
  auto gens = ops.chain_map_basis(alpha.cod, phi.cod);
  std::vector<ChainMap<C>> images;
  for (const auto& g : gens)
    images.push_back(ops.compose(g, alpha));
  auto s = ops.homotopy_solve(*phi.dom, *phi.cod, images, phi);
  if (!s)
    return std::nullopt;
  ChainMap<C> mu = ops.zero_map(alpha.cod, phi.cod);
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (s->coeffs[k] != 0)
      mu = ops.add(mu, ops.scale(s->coeffs[k], gens[k]));
  return mu;
}

// ---------------------------------------------------------------------------
// Roofs.

/// X <-left- apex -right-> Y with left a quasi-isomorphism.
template <AbelianBase C>
struct Roof {
  ChainMap<C> left;
  ChainMap<C> right;
  QisCertificate cert;

  const Complex<C>& apex() const { return *left.dom; }
  const Complex<C>& source() const { return *left.cod; }
  const Complex<C>& target() const { return *right.cod; }
};

template <AbelianBase C>
Roof<C> make_roof(const ComplexOps<C>& ops, ChainMap<C> left, ChainMap<C> right) {
  if (!(*left.dom == *right.dom))
    throw std::invalid_argument("roof: legs do not share an apex");
  auto cert = ops.quasi_iso_certificate(left);
  if (!cert.is_qis)
    throw std::invalid_argument("roof: left leg is not a quasi-isomorphism");
  right.dom = left.dom;
  return {std::move(left), std::move(right), std::move(cert)};
}

/// The localization of a chain map: [f / Id].
template <AbelianBase C>
Roof<C> localize(const ComplexOps<C>& ops, const ChainMap<C>& f) {
  return make_roof(ops, ops.identity(f.dom), f);
}

template <AbelianBase C>
Roof<C> identity_roof(const ComplexOps<C>& ops, ComplexPtr<C> x) {
  return localize(ops, ops.identity(x));
}

template <AbelianBase C>
bool is_identity_map(const ComplexOps<C>& ops, const ChainMap<C>& f) {
  return *f.dom == *f.cod && ops.equal(f, ops.identity(f.dom));
}

template <AbelianBase C>
struct SquareCompletion {
  ComplexPtr<C> apex;
  ChainMap<C> t;       // apex -> X, quasi-isomorphism
  ChainMap<C> u2;      // apex -> Y''
  Homotopy<C> witness; // u t - s u2 = d h + h d
  QisCertificate cert;
};

/// Square completion up to homotopy for u : X -> Y and a quasi-isomorphism
/// s : Y'' -> Y. The apex is the homotopy pullback
///   X''^i = X^i (+) Y''^i (+) Y^{i-1},  d = (d x, d y'', -d y + u x - s y'').
template <AbelianBase C>
SquareCompletion<C> complete_square(const ComplexOps<C>& ops, const ChainMap<C>& u, const ChainMap<C>& s) {
  const C& c = ops.cat();
  if (!(*u.cod == *s.cod))
    throw std::invalid_argument("complete_square: maps do not share a target");
  if (is_identity_map(ops, s)) {
    Homotopy<C> none;
    return {u.dom, ops.identity(u.dom), ops.with_endpoints(u, u.dom, s.dom), none,
            ops.quasi_iso_certificate(ops.identity(u.dom))};
  }
  const auto& x = *u.dom;
  const auto& y2 = *s.dom;
  const auto& y = *u.cod;
  int lo = 0, hi = -1;
  bool any = false;
  auto widen = [&](int a, int b) {
    lo = any ? std::min(lo, a) : a;
    hi = any ? std::max(hi, b) : b;
    any = true;
  };
  if (!x.empty())
    widen(x.lo, x.hi());
  if (!y2.empty())
    widen(y2.lo, y2.hi());
  if (!y.empty())
    widen(y.lo + 1, y.hi() + 1);
  std::vector<typename C::Biproduct> sums;
  std::vector<typename C::Object> objs;
  for (int i = lo; i <= hi + 1; ++i) {
    sums.push_back(c.direct_sum_n({ops.object(x, i), ops.object(y2, i), ops.object(y, i - 1)}));
    objs.push_back(sums.back().sum);
  }
  objs.pop_back();
  std::vector<typename C::Morphism> diffs;
  for (int i = lo; i < hi; ++i) {
    const auto& a = sums[i - lo];
    const auto& b = sums[i - lo + 1];
    auto d = c.compose(b.incl[0], c.compose(ops.differential(x, i), a.proj[0]));
    d = c.add(d, c.compose(b.incl[1], c.compose(ops.differential(y2, i), a.proj[1])));
    auto third = c.scale(Scalar(-1), c.compose(ops.differential(y, i - 1), a.proj[2]));
    third = c.add(third, c.compose(ops.component(u, i), a.proj[0]));
    third = c.sub(third, c.compose(ops.component(s, i), a.proj[1]));
    d = c.add(d, c.compose(b.incl[2], third));
    diffs.push_back(std::move(d));
  }
  auto apex = std::make_shared<const Complex<C>>(ops.make(lo, objs, diffs));
  std::map<int, typename C::Morphism> tc, uc;
  Homotopy<C> h;
  for (int i = lo; i <= hi; ++i) {
    if (!apex->in_window(i))
      continue;
    if (x.in_window(i))
      tc.emplace(i, sums[i - lo].proj[0]);
    if (y2.in_window(i))
      uc.emplace(i, sums[i - lo].proj[1]);
    if (y.in_window(i - 1))
      h.emplace(i, sums[i - lo].proj[2]);
  }
  auto t = ops.make_map(apex, u.dom, tc);
  auto u2 = ops.make_map(apex, s.dom, uc);
  auto cert = ops.quasi_iso_certificate(t);
  return {apex, std::move(t), std::move(u2), std::move(h), std::move(cert)};
}

/// Checks the stored witness: u t - s u2 = d h + h d exactly.
template <AbelianBase C>
bool verify_completion(const ComplexOps<C>& ops, const ChainMap<C>& u, const ChainMap<C>& s,
                       const SquareCompletion<C>& sq) {
  auto diff = ops.sub(ops.compose(u, sq.t), ops.compose(s, sq.u2));
  return sq.cert.is_qis && sq.cert.recheck() && ops.verify_homotopy(diff, sq.witness);
}

/// (g / beta) o (f / alpha) through a completed square.
template <AbelianBase C>
Roof<C> compose_roofs(const ComplexOps<C>& ops, const Roof<C>& r2, const Roof<C>& r1) {
  if (!(r1.target() == r2.source()))
    throw std::invalid_argument("compose_roofs: endpoints do not match");
  if (is_identity_map(ops, r2.left) && is_identity_map(ops, r1.left)) {
    auto f = ops.with_endpoints(r1.right, r1.left.dom, r2.left.dom);
    return localize(ops, ops.compose(r2.right, f));
  }
  auto sq = complete_square(ops, r1.right, r2.left);
  return make_roof(ops, ops.compose(r1.left, sq.t), ops.compose(r2.right, sq.u2));
}

namespace detail {

/// Zero in D(R, Y): precompose with a projective resolution of R and test
/// for a null-homotopy.
template <AbelianBase C>
bool vanishes_in_derived(const ComplexOps<C>& ops, const ChainMap<C>& f, int cap) {
  if (ops.is_zero(f))
    return true;
  auto pr = projective_resolution(ops, f.dom, cap);
  return ops.is_null_homotopic(ops.compose(f, pr.map)).has_value();
}

template <AbelianBase C>
bool refinement_test(const ComplexOps<C>& ops, const Roof<C>& r1, const Roof<C>& r2, int cap) {
  auto sq = complete_square(ops, r1.left, ops.with_endpoints(r2.left, r2.left.dom, r1.left.cod));
  auto f2 = ops.with_endpoints(r2.right, r2.left.dom, r1.right.cod);
  auto diff = ops.sub(ops.compose(r1.right, sq.t), ops.compose(f2, sq.u2));
  return vanishes_in_derived(ops, diff, cap);
}

}  // namespace detail

/// Decides equality in the derived category by a common refinement. One
/// retry in the symmetric order precedes a negative answer.
template <AbelianBase C>
bool roof_equivalent(const ComplexOps<C>& ops, const Roof<C>& r1, const Roof<C>& r2,
                     int cap = kDefaultResolutionCap) {
  if (!(r1.source() == r2.source()) || !(r1.target() == r2.target()))
    throw std::invalid_argument("roof_equivalent: endpoints do not match");
  if (detail::refinement_test(ops, r1, r2, cap))
    return true;
  return detail::refinement_test(ops, r2, r1, cap);
}

// ---------------------------------------------------------------------------
// The comparison functor T : D(Q(B)) -> Q(D(B)).

/// A representation of the quiver in D(B): a complex per vertex and a roof
/// per arrow.
template <AbelianBase B>
struct TObject {
  QuiverPtr quiver;
  std::vector<Complex<B>> vertex;
  std::vector<Roof<B>> arrow;
};

template <AbelianBase B>
TObject<B> apply_T(const ComplexOps<RepCat<B>>& ops, const Complex<RepCat<B>>& x) {
  ComplexOps<B> bops(ops.cat().base());
  auto t = transpose(ops, x);
  TObject<B> out{t.quiver, t.vertex, {}};
  for (const auto& a : t.arrow)
    out.arrow.push_back(localize(bops, a));
  return out;
}

/// T on a roof: evaluate apex and both legs at each vertex.
template <AbelianBase B>
std::vector<Roof<B>> apply_T_morphism(const ComplexOps<RepCat<B>>& ops, const Roof<RepCat<B>>& r) {
  ComplexOps<B> bops(ops.cat().base());
  std::vector<Roof<B>> out;
  for (std::size_t v = 0; v < ops.cat().quiver().vertex_count(); ++v) {
    auto apex = std::make_shared<const Complex<B>>(evaluate(ops, r.apex(), v));
    auto src = std::make_shared<const Complex<B>>(evaluate(ops, r.source(), v));
    auto tgt = std::make_shared<const Complex<B>>(evaluate(ops, r.target(), v));
    out.push_back(make_roof(bops, evaluate(ops, r.left, v, apex, src), evaluate(ops, r.right, v, apex, tgt)));
  }
  return out;
}

/// T(x[n]) for the shifted complex.
template <AbelianBase B>
TObject<B> apply_T_shifted(const ComplexOps<RepCat<B>>& ops, const Complex<RepCat<B>>& x, int n) {
  return apply_T(ops, ops.shift(x, n));
}

/// Audit data for hom_QD: the dimension, the size of the constraint system,
/// and the Hom_D dimensions per vertex.
struct HomQD {
  std::size_t dim = 0;
  std::size_t unknowns = 0;
  std::size_t homotopy_unknowns = 0;
  std::size_t equations = 0;
  std::vector<std::size_t> vertex_dims;
};

namespace detail {

/// Assembles [eta columns | homotopy columns] and returns
/// colsC - rank(M) + rank(H).
inline HomQD solve_qd_system(const FieldSpec& fs, std::size_t eta_cols,
                             const std::vector<std::vector<std::vector<Scalar>>>& eta_blocks,
                             const std::vector<Mat>& homotopy_blocks) {
  HomQD out;
  out.unknowns = eta_cols;
  std::size_t rows = 0, hcols = 0;
  for (const auto& h : homotopy_blocks) {
    rows += h.rows();
    hcols += h.cols();
  }
  out.equations = rows;
  out.homotopy_unknowns = hcols;
  Mat m(fs, rows, eta_cols + hcols);
  std::size_t r0 = 0, c0 = eta_cols;
  for (std::size_t a = 0; a < homotopy_blocks.size(); ++a) {
    const auto& cols = eta_blocks[a];
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i)
        if (cols[j][i] != 0)
          m.set(r0 + i, j, m(r0 + i, j) + cols[j][i]);
    m.set_block(r0, c0, homotopy_blocks[a]);
    r0 += homotopy_blocks[a].rows();
    c0 += homotopy_blocks[a].cols();
  }
  Mat h = m.block(0, eta_cols, rows, hcols);
  out.dim = eta_cols - rank(m) + rank(h);
  return out;
}

}  // namespace detail

/// dim Hom_{Q(D(B))}(tx, ty): vertexwise derived maps eta_v subject to
/// eta_w o tx(a) = ty(a) o eta_v in D(B). Computed with projective
/// resolutions of the source vertex complexes.
template <AbelianBase B>
HomQD hom_QD(const ComplexOps<B>& bops, const TObject<B>& tx, const TObject<B>& ty,
             int cap = kDefaultResolutionCap) {
  const Quiver& q = *tx.quiver;
  const std::size_t nv = q.vertex_count();
  std::vector<Resolution<B>> res;
  std::vector<DerivedHom<B>> hd;
  std::vector<std::size_t> offset{0};
  HomQD audit;
  for (std::size_t v = 0; v < nv; ++v) {
    res.push_back(projective_resolution(bops, std::make_shared<const Complex<B>>(tx.vertex[v]), cap));
    hd.push_back(hom_derived(bops, res[v], ty.vertex[v], 0));
    offset.push_back(offset.back() + hd[v].dim);
    audit.vertex_dims.push_back(hd[v].dim);
  }
  std::vector<std::vector<std::vector<Scalar>>> eta_blocks;
  std::vector<Mat> hblocks;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t v = q.arrow(a).tail, w = q.arrow(a).head;
    const auto& pv = res[v].complex;
    auto tyw = std::make_shared<const Complex<B>>(ty.vertex[w]);
    // gamma : P_v -> P_w with q_w gamma ~ tx(a) q_v.
    const Roof<B>& ra = tx.arrow[a];
    ChainMap<B> beta = res[v].map;
    if (!is_identity_map(bops, ra.left)) {
      auto l = lift_up_to_homotopy(bops, ra.left, res[v].map);
      if (!l)
        throw std::logic_error("hom_QD: lift through a quasi-isomorphism failed");
      beta = *l;
    }
    auto fb = bops.compose(ra.right, beta);
    auto gamma = lift_up_to_homotopy(bops, res[w].map, fb);
    if (!gamma)
      throw std::logic_error("hom_QD: lift to the resolution failed");
    auto h0 = bops.hom_degree(*pv, *tyw, 0);
    auto hm = bops.hom_degree(*pv, *tyw, -1);
    std::vector<std::vector<Scalar>> cols(offset.back(), std::vector<Scalar>(h0.raw_size, Scalar(0)));
    for (std::size_t k = 0; k < hd[w].reps.size(); ++k) {
      auto rep = bops.with_endpoints(hd[w].reps[k], res[w].complex, tyw);
      auto raw = bops.raw_coords(h0, bops.with_endpoints(bops.compose(rep, *gamma), pv, tyw));
      for (std::size_t i = 0; i < raw.size(); ++i)
        cols[offset[w] + k][i] += raw[i];
    }
    const Roof<B>& sa = ty.arrow[a];
    for (std::size_t k = 0; k < hd[v].reps.size(); ++k) {
      auto rep = bops.with_endpoints(hd[v].reps[k], pv, sa.left.cod);
      ChainMap<B> eps = rep;
      if (!is_identity_map(bops, sa.left)) {
        auto l = lift_up_to_homotopy(bops, sa.left, rep);
        if (!l)
          throw std::logic_error("hom_QD: lift through a quasi-isomorphism failed");
        eps = *l;
      }
      auto raw = bops.raw_coords(h0, bops.with_endpoints(bops.compose(sa.right, eps), pv, tyw));
      for (std::size_t i = 0; i < raw.size(); ++i)
        cols[offset[v] + k][i] -= raw[i];
    }
    eta_blocks.push_back(std::move(cols));
    hblocks.push_back(bops.delta(*pv, *tyw, hm, h0));
  }
  auto out = detail::solve_qd_system(bops.field(), offset.back(), eta_blocks, hblocks);
  out.vertex_dims = audit.vertex_dims;
  return out;
}

/// The same dimension computed through injective resolutions of the target
/// vertex complexes: Hom_D(X, Y) = Hom_K(X, I(Y)).
template <AbelianBase B>
HomQD hom_QD_injective(const ComplexOps<B>& bops, const TObject<B>& tx, const TObject<B>& ty,
                       int cap = kDefaultResolutionCap) {
  const Quiver& q = *tx.quiver;
  const std::size_t nv = q.vertex_count();
  std::vector<ComplexPtr<B>> xs;
  std::vector<Resolution<B>> res;
  std::vector<HomK<B>> hk;
  std::vector<std::size_t> offset{0};
  std::vector<std::size_t> vdims;
  for (std::size_t v = 0; v < nv; ++v) {
    xs.push_back(std::make_shared<const Complex<B>>(tx.vertex[v]));
    res.push_back(injective_resolution(bops, std::make_shared<const Complex<B>>(ty.vertex[v]), cap));
    hk.push_back(hom_k(bops, xs[v], res[v].complex));
    offset.push_back(offset.back() + hk[v].dim);
    vdims.push_back(hk[v].dim);
  }
  std::vector<std::vector<std::vector<Scalar>>> eta_blocks;
  std::vector<Mat> hblocks;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t v = q.arrow(a).tail, w = q.arrow(a).head;
    const auto& jw = res[w].complex;
    auto h0 = bops.hom_degree(*xs[v], *jw, 0);
    auto hm = bops.hom_degree(*xs[v], *jw, -1);
    std::vector<std::vector<Scalar>> cols(offset.back(), std::vector<Scalar>(h0.raw_size, Scalar(0)));
    const Roof<B>& ra = tx.arrow[a];
    for (std::size_t k = 0; k < hk[w].reps.size(); ++k) {
      auto rf = bops.compose(hk[w].reps[k], bops.with_endpoints(ra.right, ra.left.dom, xs[w]));
      ChainMap<B> mu = rf;
      if (!is_identity_map(bops, ra.left)) {
        auto e = extend_up_to_homotopy(bops, bops.with_endpoints(ra.left, ra.left.dom, xs[v]), rf);
        if (!e)
          throw std::logic_error("hom_QD_injective: extension through a quasi-isomorphism failed");
        mu = *e;
      }
      auto raw = bops.raw_coords(h0, bops.with_endpoints(mu, xs[v], jw));
      for (std::size_t i = 0; i < raw.size(); ++i)
        cols[offset[w] + k][i] += raw[i];
    }
    const Roof<B>& sa = ty.arrow[a];
    // nu : ty_v -> J_w with nu sigma ~ iota_w g, then rho : J_v -> J_w with
    // rho iota_v ~ nu.
    auto ig = bops.compose(res[w].map, bops.with_endpoints(sa.right, sa.left.dom, res[w].map.dom));
    ChainMap<B> nu = ig;
    if (!is_identity_map(bops, sa.left)) {
      auto e = extend_up_to_homotopy(bops, bops.with_endpoints(sa.left, sa.left.dom, res[v].map.dom), ig);
      if (!e)
        throw std::logic_error("hom_QD_injective: extension through a quasi-isomorphism failed");
      nu = *e;
    }
    auto rho = extend_up_to_homotopy(bops, res[v].map, bops.with_endpoints(nu, res[v].map.dom, jw));
    if (!rho)
      throw std::logic_error("hom_QD_injective: extension to the resolution failed");
    for (std::size_t k = 0; k < hk[v].reps.size(); ++k) {
      auto term = bops.compose(*rho, hk[v].reps[k]);
      auto raw = bops.raw_coords(h0, bops.with_endpoints(term, xs[v], jw));
      for (std::size_t i = 0; i < raw.size(); ++i)
        cols[offset[v] + k][i] -= raw[i];
    }
    eta_blocks.push_back(std::move(cols));
    hblocks.push_back(bops.delta(*xs[v], *jw, hm, h0));
  }
  auto out = detail::solve_qd_system(bops.field(), offset.back(), eta_blocks, hblocks);
  out.vertex_dims = vdims;
  return out;
}

/// Checks that a vertexwise family phi_v : tx(v) -> ty(v) of
/// quasi-isomorphisms is an isomorphism of TObjects: each arrow square
/// commutes in D(B).
template <AbelianBase B>
bool is_T_isomorphism(const ComplexOps<B>& bops, const TObject<B>& tx, const TObject<B>& ty,
                      const std::vector<ChainMap<B>>& phi, int cap = kDefaultResolutionCap) {
  const Quiver& q = *tx.quiver;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (!(*phi[v].dom == tx.vertex[v]) || !(*phi[v].cod == ty.vertex[v]) || !bops.is_quasi_iso(phi[v]))
      return false;
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t v = q.arrow(a).tail, w = q.arrow(a).head;
    auto lhs = compose_roofs(bops, ty.arrow[a], localize(bops, phi[v]));
    auto rhs = compose_roofs(bops, localize(bops, phi[w]), tx.arrow[a]);
    if (!roof_equivalent(bops, lhs, rhs, cap))
      return false;
  }
  return true;
}

template <AbelianBase B>
struct Strictification {
  std::optional<Complex<RepCat<B>>> complex;
  std::vector<ChainMap<B>> witness;  // T(complex)(v) -> tx(v)
  std::string status;
};

/// Looks for a complex x with T(x) isomorphic to tx: resolve each vertex
/// complex projectively and lift every arrow roof to a chain map between
/// the resolutions. On a free quiver the only failure mode is the
/// resolution bound.
template <AbelianBase B>
Strictification<B> strictify(const ComplexOps<RepCat<B>>& ops, const TObject<B>& tx,
                             int bound = kDefaultResolutionCap) {
  ComplexOps<B> bops(ops.cat().base());
  const Quiver& q = *tx.quiver;
  Strictification<B> out;
  std::vector<Resolution<B>> res;
  try {
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      res.push_back(projective_resolution(bops, std::make_shared<const Complex<B>>(tx.vertex[v]), bound));
  } catch (const ResolutionError&) {
    out.status = "no strictification found at bound";
    return out;
  }
  TransposedRep<B> t;
  t.quiver = tx.quiver;
  for (auto& r : res)
    t.vertex.push_back(*r.complex);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const std::size_t v = q.arrow(a).tail, w = q.arrow(a).head;
    const Roof<B>& ra = tx.arrow[a];
    std::optional<ChainMap<B>> beta = res[v].map;
    if (!is_identity_map(bops, ra.left))
      beta = lift_up_to_homotopy(bops, ra.left, res[v].map);
    std::optional<ChainMap<B>> gamma;
    if (beta)
      gamma = lift_up_to_homotopy(bops, res[w].map, bops.compose(ra.right, *beta));
    if (!gamma) {
      out.status = "no strictification found at bound";
      return out;
    }
    t.arrow.push_back(*gamma);
  }
  out.complex = transpose_inv(ops, t);
  for (auto& r : res)
    out.witness.push_back(r.map);
  out.status = "strictified";
  return out;
}

}  // namespace qha
