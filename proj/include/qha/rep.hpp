#pragma once

#include "qha/category.hpp"
#include "qha/quiver.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

/// Representation of a quiver in a base category: a family of base objects
/// A_i and base morphisms phi_a : A_{t(a)} -> A_{h(a)}.
template <class B>
struct RepObject {
  QuiverPtr quiver;
  std::vector<typename B::Object> vertex;
  std::vector<typename B::Morphism> arrow;

  bool operator==(const RepObject& o) const {
    return same_quiver(quiver, o.quiver) && vertex == o.vertex && arrow == o.arrow;
  }
};

/// Natural transformation between representations: one base morphism per
/// vertex.
template <class B>
struct RepMap {
  std::shared_ptr<const RepObject<B>> dom;
  std::shared_ptr<const RepObject<B>> cod;
  std::vector<typename B::Morphism> comp;

  bool operator==(const RepMap& o) const { return comp == o.comp; }
};

/// The category Q(B) of representations of an acyclic quiver in B. It is
/// itself an AbelianBase, so it nests: RepCat<RepCat<FdVect>>.
template <AbelianBase B>
class RepCat {
 public:
  using Base = B;
  using Object = RepObject<B>;
  using Morphism = RepMap<B>;
  using ObjectPtr = std::shared_ptr<const Object>;
  using Kernel = KernelOf<Object, Morphism>;
  using Cokernel = CokernelOf<Object, Morphism>;
  using Biproduct = BiproductOf<Object, Morphism>;
  using ResolvingMap = ResolvingMapOf<Object, Morphism>;
  static constexpr int depth = B::depth + 1;
  static_assert(depth <= 2, "representation categories nest at most two levels deep");

  RepCat(QuiverPtr quiver, B base) : quiver_(std::move(quiver)), base_(std::move(base)) {
    if (!quiver_)
      throw std::invalid_argument("RepCat: null quiver");
  }

  const Quiver& quiver() const { return *quiver_; }
  const QuiverPtr& quiver_ptr() const { return quiver_; }
  const B& base() const { return base_; }
  const FieldSpec& field() const { return base_.field(); }
  std::string name() const { return "Rep(" + quiver_->name() + ", " + base_.name() + ")"; }

  bool operator==(const RepCat& o) const {
    return same_quiver(quiver_, o.quiver_) && base_ == o.base_;
  }

  // -- construction -------------------------------------------------------

  /// Validates that each arrow map runs between the right vertex objects.
  Object make_object(std::vector<typename B::Object> vertex,
                     std::vector<typename B::Morphism> arrow) const {
    const Quiver& q = *quiver_;
    if (vertex.size() != q.vertex_count())
      throw std::invalid_argument("representation: expected " + std::to_string(q.vertex_count()) +
                                  " vertex objects");
    if (arrow.size() != q.arrow_count())
      throw std::invalid_argument("representation: expected " + std::to_string(q.arrow_count()) +
                                  " arrow maps");
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      check_base_morphism(arrow[a], vertex[ar.tail], vertex[ar.head], "arrow " + ar.name);
    }
    return Object{quiver_, std::move(vertex), std::move(arrow)};
  }

  /// Validates naturality: cod.phi_a o f_t = f_h o dom.phi_a for every arrow.
  Morphism make_map(ObjectPtr dom, ObjectPtr cod, std::vector<typename B::Morphism> comp) const {
    const Quiver& q = *quiver_;
    if (comp.size() != q.vertex_count())
      throw std::invalid_argument("morphism: expected " + std::to_string(q.vertex_count()) +
                                  " components");
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      check_base_morphism(comp[v], dom->vertex[v], cod->vertex[v],
                          "component at " + q.vertex_name(v));
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      auto lhs = base_.compose(cod->arrow[a], comp[ar.tail]);
      auto rhs = base_.compose(comp[ar.head], dom->arrow[a]);
      if (!base_.equal(lhs, rhs))
        throw std::invalid_argument("naturality square fails at arrow " + ar.name);
    }
    return Morphism{std::move(dom), std::move(cod), std::move(comp)};
  }

  Morphism make_map(const Object& dom, const Object& cod,
                    std::vector<typename B::Morphism> comp) const {
    return make_map(std::make_shared<const Object>(dom), std::make_shared<const Object>(cod),
                    std::move(comp));
  }

  // -- objects ------------------------------------------------------------

  Object zero_object() const {
    std::vector<typename B::Object> vs(quiver_->vertex_count(), base_.zero_object());
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < quiver_->arrow_count(); ++a)
      as.push_back(base_.zero_map(base_.zero_object(), base_.zero_object()));
    return Object{quiver_, std::move(vs), std::move(as)};
  }

  std::size_t dim(const Object& x) const {
    std::size_t d = 0;
    for (const auto& v : x.vertex)
      d += base_.dim(v);
    return d;
  }

  bool is_zero_object(const Object& x) const { return dim(x) == 0; }
  bool same_object(const Object& x, const Object& y) const { return x == y; }
  const Object& domain(const Morphism& f) const { return *f.dom; }
  const Object& codomain(const Morphism& f) const { return *f.cod; }

  /// I_D(a): a at vertex d, zero elsewhere.
  Object embed_at_vertex(std::size_t d, const typename B::Object& a) const {
    if (d >= quiver_->vertex_count())
      throw std::invalid_argument("embed_at_vertex: unknown vertex index");
    Object z = zero_object();
    z.vertex[d] = a;
    for (std::size_t k = 0; k < quiver_->arrow_count(); ++k) {
      const auto& ar = quiver_->arrow(k);
      z.arrow[k] = base_.zero_map(z.vertex[ar.tail], z.vertex[ar.head]);
    }
    return z;
  }

  Object embed_at_vertex(const std::string& d, const typename B::Object& a) const {
    return embed_at_vertex(quiver_->vertex_index(d), a);
  }

  /// I_D on morphisms.
  Morphism embed_morphism(std::size_t d, const typename B::Morphism& f) const {
    auto dom = std::make_shared<const Object>(embed_at_vertex(d, base_domain(f)));
    auto cod = std::make_shared<const Object>(embed_at_vertex(d, base_codomain(f)));
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < quiver_->vertex_count(); ++v)
      comp.push_back(v == d ? f : base_.zero_map(dom->vertex[v], cod->vertex[v]));
    return Morphism{dom, cod, std::move(comp)};
  }

  /// The composite arrow map along a path (identity on trivial paths).
  typename B::Morphism path_map(const Object& x, const Path& p) const {
    auto m = base_.identity(x.vertex[p.source]);
    for (auto a : p.traversal())
      m = base_.compose(x.arrow[a], m);
    return m;
  }

  // -- morphism algebra ---------------------------------------------------

  Morphism identity(const Object& x) const {
    auto px = std::make_shared<const Object>(x);
    std::vector<typename B::Morphism> comp;
    for (const auto& v : x.vertex)
      comp.push_back(base_.identity(v));
    return Morphism{px, px, std::move(comp)};
  }

  Morphism zero_map(const Object& x, const Object& y) const {
    return zero_map(std::make_shared<const Object>(x), std::make_shared<const Object>(y));
  }

  Morphism zero_map(ObjectPtr x, ObjectPtr y) const {
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < quiver_->vertex_count(); ++v)
      comp.push_back(base_.zero_map(x->vertex[v], y->vertex[v]));
    return Morphism{std::move(x), std::move(y), std::move(comp)};
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    std::vector<typename B::Morphism> comp;
    comp.reserve(f.comp.size());
    for (std::size_t v = 0; v < f.comp.size(); ++v)
      comp.push_back(base_.compose(g.comp[v], f.comp[v]));
    return Morphism{f.dom, g.cod, std::move(comp)};
  }

  Morphism add(const Morphism& f, const Morphism& g) const {
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < f.comp.size(); ++v)
      comp.push_back(base_.add(f.comp[v], g.comp[v]));
    return Morphism{f.dom, f.cod, std::move(comp)};
  }

  Morphism sub(const Morphism& f, const Morphism& g) const { return add(f, negate(g)); }

  Morphism scale(const Scalar& c, const Morphism& f) const {
    std::vector<typename B::Morphism> comp;
    for (const auto& m : f.comp)
      comp.push_back(base_.scale(c, m));
    return Morphism{f.dom, f.cod, std::move(comp)};
  }

  Morphism negate(const Morphism& f) const { return scale(Scalar(-1), f); }

  bool equal(const Morphism& f, const Morphism& g) const {
    for (std::size_t v = 0; v < f.comp.size(); ++v)
      if (!base_.equal(f.comp[v], g.comp[v]))
        return false;
    return true;
  }

  bool is_zero(const Morphism& f) const {
    for (const auto& m : f.comp)
      if (!base_.is_zero(m))
        return false;
    return true;
  }

  // -- coordinates --------------------------------------------------------

  std::size_t coord_size(const Object& x, const Object& y) const {
    std::size_t n = 0;
    for (std::size_t v = 0; v < x.vertex.size(); ++v)
      n += base_.coord_size(x.vertex[v], y.vertex[v]);
    return n;
  }

  void append_coords(const Morphism& f, std::vector<Scalar>& out) const {
    for (const auto& m : f.comp)
      base_.append_coords(m, out);
  }

  Morphism from_coords(const Object& x, const Object& y, std::span<const Scalar> c) const {
    return from_coords(std::make_shared<const Object>(x), std::make_shared<const Object>(y), c);
  }

  Morphism from_coords(ObjectPtr x, ObjectPtr y, std::span<const Scalar> c) const {
    std::vector<typename B::Morphism> comp;
    std::size_t off = 0;
    for (std::size_t v = 0; v < x->vertex.size(); ++v) {
      std::size_t n = base_.coord_size(x->vertex[v], y->vertex[v]);
      comp.push_back(base_.from_coords(x->vertex[v], y->vertex[v], c.subspan(off, n)));
      off += n;
    }
    return Morphism{std::move(x), std::move(y), std::move(comp)};
  }

  /// Basis of natural transformations x -> y: solve the naturality
  /// constraints over per-vertex base Hom bases.
  std::vector<Morphism> hom_basis(const Object& x, const Object& y) const {
    const Quiver& q = *quiver_;
    const std::size_t nv = q.vertex_count();
    std::vector<std::vector<typename B::Morphism>> vb(nv);
    std::vector<std::size_t> offset(nv + 1, 0);
    for (std::size_t v = 0; v < nv; ++v) {
      vb[v] = base_.hom_basis(x.vertex[v], y.vertex[v]);
      offset[v + 1] = offset[v] + vb[v].size();
    }
    const std::size_t unknowns = offset[nv];
    // One block of equations per arrow: y.phi_a f_t - f_h x.phi_a = 0.
    std::size_t eqs = 0;
    std::vector<std::size_t> eq_off;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      eq_off.push_back(eqs);
      eqs += base_.coord_size(x.vertex[q.arrow(a).tail], y.vertex[q.arrow(a).head]);
    }
    Mat sys(field(), eqs, unknowns);
    std::vector<Scalar> tmp;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      for (std::size_t k = 0; k < vb[ar.tail].size(); ++k) {
        tmp.clear();
        base_.append_coords(base_.compose(y.arrow[a], vb[ar.tail][k]), tmp);
        for (std::size_t i = 0; i < tmp.size(); ++i)
          if (tmp[i] != 0)
            sys.set(eq_off[a] + i, offset[ar.tail] + k, sys(eq_off[a] + i, offset[ar.tail] + k) + tmp[i]);
      }
      for (std::size_t k = 0; k < vb[ar.head].size(); ++k) {
        tmp.clear();
        base_.append_coords(base_.compose(vb[ar.head][k], x.arrow[a]), tmp);
        for (std::size_t i = 0; i < tmp.size(); ++i)
          if (tmp[i] != 0)
            sys.set(eq_off[a] + i, offset[ar.head] + k, sys(eq_off[a] + i, offset[ar.head] + k) - tmp[i]);
      }
    }
    Mat ns = nullspace(sys);
    auto px = std::make_shared<const Object>(x);
    auto py = std::make_shared<const Object>(y);
    std::vector<Morphism> out;
    out.reserve(ns.cols());
    for (std::size_t j = 0; j < ns.cols(); ++j) {
      std::vector<typename B::Morphism> comp;
      for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Scalar> c(vb[v].size());
        for (std::size_t k = 0; k < vb[v].size(); ++k)
          c[k] = ns(offset[v] + k, j);
        comp.push_back(combine(base_, x.vertex[v], y.vertex[v], vb[v], c));
      }
      out.push_back(Morphism{px, py, std::move(comp)});
    }
    return out;
  }

  // -- abelian structure --------------------------------------------------

  /// Pointwise kernels; arrow maps are the unique lifts through the
  /// inclusions.
  Kernel kernel(const Morphism& f) const {
    const Quiver& q = *quiver_;
    std::vector<typename B::Kernel> ks;
    for (const auto& c : f.comp)
      ks.push_back(base_.kernel(c));
    std::vector<typename B::Object> vs;
    for (auto& k : ks)
      vs.push_back(k.object);
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      auto g = base_.compose(f.dom->arrow[a], ks[ar.tail].incl);
      auto l = base_.lift_through_mono(ks[ar.head].incl, g);
      if (!l)
        throw std::logic_error("kernel: arrow map does not restrict");
      as.push_back(*l);
    }
    auto kobj = std::make_shared<const Object>(Object{quiver_, std::move(vs), std::move(as)});
    std::vector<typename B::Morphism> inc;
    for (auto& k : ks)
      inc.push_back(k.incl);
    return {*kobj, Morphism{kobj, f.dom, std::move(inc)}};
  }

  Cokernel cokernel(const Morphism& f) const {
    const Quiver& q = *quiver_;
    std::vector<typename B::Cokernel> cs;
    for (const auto& c : f.comp)
      cs.push_back(base_.cokernel(c));
    std::vector<typename B::Object> vs;
    for (auto& c : cs)
      vs.push_back(c.object);
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      auto g = base_.compose(cs[ar.head].proj, f.cod->arrow[a]);
      auto d = base_.descend_through_epi(cs[ar.tail].proj, g);
      if (!d)
        throw std::logic_error("cokernel: arrow map does not descend");
      as.push_back(*d);
    }
    auto cobj = std::make_shared<const Object>(Object{quiver_, std::move(vs), std::move(as)});
    std::vector<typename B::Morphism> pr;
    for (auto& c : cs)
      pr.push_back(c.proj);
    return {*cobj, Morphism{f.cod, cobj, std::move(pr)}};
  }

  std::optional<Morphism> lift_through_mono(const Morphism& m, const Morphism& g) const {
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < m.comp.size(); ++v) {
      auto l = base_.lift_through_mono(m.comp[v], g.comp[v]);
      if (!l)
        return std::nullopt;
      comp.push_back(std::move(*l));
    }
    return Morphism{g.dom, m.dom, std::move(comp)};
  }

  std::optional<Morphism> descend_through_epi(const Morphism& e, const Morphism& g) const {
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < e.comp.size(); ++v) {
      auto l = base_.descend_through_epi(e.comp[v], g.comp[v]);
      if (!l)
        return std::nullopt;
      comp.push_back(std::move(*l));
    }
    return Morphism{e.cod, g.cod, std::move(comp)};
  }

  /// x : P -> X with e o x = g; searched inside Hom(P, X) so naturality holds.
  std::optional<Morphism> lift_from_projective(const Morphism& g, const Morphism& e) const {
    auto basis = hom_basis(*g.dom, *e.dom);
    std::vector<Morphism> images;
    for (const auto& b : basis)
      images.push_back(compose(e, b));
    const std::size_t n = coord_size(*g.dom, *g.cod);
    auto sol = solve(coords_matrix(*this, n, images), Mat::column_vector(field(), coords_of(*this, g)));
    if (!sol)
      return std::nullopt;
    return combine(*this, *g.dom, *e.dom, basis, sol->column_entries(0));
  }

  /// x : Y -> I with x o m = g.
  std::optional<Morphism> extend_to_injective(const Morphism& g, const Morphism& m) const {
    auto basis = hom_basis(*m.cod, *g.cod);
    std::vector<Morphism> images;
    for (const auto& b : basis)
      images.push_back(compose(b, m));
    const std::size_t n = coord_size(*g.dom, *g.cod);
    auto sol = solve(coords_matrix(*this, n, images), Mat::column_vector(field(), coords_of(*this, g)));
    if (!sol)
      return std::nullopt;
    return combine(*this, *m.cod, *g.cod, basis, sol->column_entries(0));
  }

  /// Vertexwise biproducts; arrow maps are sum_k i_k phi^k_a p_k.
  Biproduct direct_sum_n(const std::vector<Object>& xs) const {
    const Quiver& q = *quiver_;
    std::vector<typename B::Biproduct> vb;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      std::vector<typename B::Object> parts;
      for (const auto& x : xs)
        parts.push_back(x.vertex[v]);
      vb.push_back(base_.direct_sum_n(parts));
    }
    std::vector<typename B::Object> vs;
    for (auto& b : vb)
      vs.push_back(b.sum);
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      auto m = base_.zero_map(vb[ar.tail].sum, vb[ar.head].sum);
      for (std::size_t k = 0; k < xs.size(); ++k)
        m = base_.add(m, base_.compose(vb[ar.head].incl[k],
                                       base_.compose(xs[k].arrow[a], vb[ar.tail].proj[k])));
      as.push_back(std::move(m));
    }
    auto sum = std::make_shared<const Object>(Object{quiver_, std::move(vs), std::move(as)});
    Biproduct out;
    out.sum = *sum;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      auto part = std::make_shared<const Object>(xs[k]);
      std::vector<typename B::Morphism> ic, pc;
      for (std::size_t v = 0; v < q.vertex_count(); ++v) {
        ic.push_back(vb[v].incl[k]);
        pc.push_back(vb[v].proj[k]);
      }
      out.incl.push_back(Morphism{part, sum, std::move(ic)});
      out.proj.push_back(Morphism{sum, part, std::move(pc)});
    }
    return out;
  }

  Biproduct direct_sum(const Object& x, const Object& y) const { return direct_sum_n({x, y}); }

  /// The projective P_v(b) = sum over paths p from v of b placed at h(p):
  /// the left adjoint of evaluation at v applied to b.
  Object induced_projective(std::size_t v, const typename B::Object& b) const {
    const Quiver& q = *quiver_;
    std::vector<std::vector<Path>> paths(q.vertex_count());
    std::vector<typename B::Biproduct> sums;
    for (std::size_t w = 0; w < q.vertex_count(); ++w) {
      paths[w] = paths_between(q, v, w);
      sums.push_back(base_.direct_sum_n(std::vector<typename B::Object>(paths[w].size(), b)));
    }
    std::vector<typename B::Object> vs;
    for (auto& s : sums)
      vs.push_back(s.sum);
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      auto m = base_.zero_map(sums[ar.tail].sum, sums[ar.head].sum);
      for (std::size_t k = 0; k < paths[ar.tail].size(); ++k) {
        Path ext = qha::compose(Path::of_arrow(q, a), paths[ar.tail][k]);
        auto it = std::find(paths[ar.head].begin(), paths[ar.head].end(), ext);
        std::size_t idx = static_cast<std::size_t>(it - paths[ar.head].begin());
        m = base_.add(m, base_.compose(sums[ar.head].incl[idx], sums[ar.tail].proj[k]));
      }
      as.push_back(std::move(m));
    }
    return Object{quiver_, std::move(vs), std::move(as)};
  }

  /// Minimal projective cover: cover the top at each vertex in the base and
  /// induce.
  ResolvingMap projective_cover(const Object& x) const {
    const Quiver& q = *quiver_;
    std::vector<Object> parts;
    std::vector<std::vector<typename B::Morphism>> part_maps;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      auto in = q.arrows_into(v);
      typename B::Object top;
      typename B::Morphism to_top;
      if (in.empty()) {
        top = x.vertex[v];
        to_top = base_.identity(x.vertex[v]);
      } else {
        std::vector<typename B::Object> srcs;
        for (auto a : in)
          srcs.push_back(x.vertex[q.arrow(a).tail]);
        auto s = base_.direct_sum_n(srcs);
        auto m = base_.zero_map(s.sum, x.vertex[v]);
        for (std::size_t k = 0; k < in.size(); ++k)
          m = base_.add(m, base_.compose(x.arrow[in[k]], s.proj[k]));
        auto c = base_.cokernel(m);
        top = c.object;
        to_top = c.proj;
      }
      if (base_.dim(top) == 0)
        continue;
      auto cov = base_.projective_cover(top);
      auto lam = base_.lift_from_projective(cov.map, to_top);
      if (!lam)
        throw std::logic_error("projective_cover: base lift failed");
      Object ind = induced_projective(v, cov.object);
      std::vector<typename B::Morphism> comp;
      for (std::size_t w = 0; w < q.vertex_count(); ++w) {
        auto ps = paths_between(q, v, w);
        auto sb = base_.direct_sum_n(std::vector<typename B::Object>(ps.size(), cov.object));
        auto m = base_.zero_map(ind.vertex[w], x.vertex[w]);
        for (std::size_t k = 0; k < ps.size(); ++k)
          m = base_.add(m, base_.compose(path_map(x, ps[k]), base_.compose(*lam, sb.proj[k])));
        comp.push_back(std::move(m));
      }
      parts.push_back(std::move(ind));
      part_maps.push_back(std::move(comp));
    }
    auto px = std::make_shared<const Object>(x);
    if (parts.empty()) {
      auto z = std::make_shared<const Object>(zero_object());
      return {*z, zero_map(z, px)};
    }
    auto sum = direct_sum_n(parts);
    auto psum = std::make_shared<const Object>(sum.sum);
    Morphism total = zero_map(psum, px);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      Morphism pk{std::make_shared<const Object>(parts[k]), px, part_maps[k]};
      total = add(total, compose(pk, sum.proj[k]));
    }
    total.dom = psum;
    return {sum.sum, total};
  }

  /// Injective hull by duality with the opposite quiver.
  ResolvingMap injective_hull(const Object& x) const {
    RepCat op = opposite();
    auto cov = op.projective_cover(dual_object(x));
    Object hull = op.dual_object(cov.object);
    Morphism m = op.dual_morphism(cov.map);
    m.dom = std::make_shared<const Object>(x);
    return {hull, m};
  }

  std::vector<Object> simples() const {
    std::vector<Object> out;
    for (std::size_t v = 0; v < quiver_->vertex_count(); ++v)
      for (const auto& s : base_.simples())
        out.push_back(embed_at_vertex(v, s));
    return out;
  }

  std::vector<Object> indecomposable_projectives() const {
    std::vector<Object> out;
    for (std::size_t v = 0; v < quiver_->vertex_count(); ++v)
      for (const auto& p : base_.indecomposable_projectives())
        out.push_back(induced_projective(v, p));
    return out;
  }

  std::vector<Object> indecomposable_injectives() const {
    RepCat op = opposite();
    std::vector<Object> out;
    for (const auto& p : op.indecomposable_projectives())
      out.push_back(op.dual_object(p));
    return out;
  }

  // -- duality ------------------------------------------------------------

  RepCat opposite() const {
    return RepCat(std::make_shared<const Quiver>(quiver_->opposite()), base_.opposite());
  }

  /// Linear dual: an object of the opposite category.
  Object dual_object(const Object& x) const {
    auto opq = std::make_shared<const Quiver>(quiver_->opposite());
    std::vector<typename B::Object> vs;
    for (const auto& v : x.vertex)
      vs.push_back(base_.dual_object(v));
    std::vector<typename B::Morphism> as;
    for (const auto& a : x.arrow)
      as.push_back(base_.dual_morphism(a));
    return Object{opq, std::move(vs), std::move(as)};
  }

  Morphism dual_morphism(const Morphism& f) const {
    std::vector<typename B::Morphism> comp;
    for (const auto& c : f.comp)
      comp.push_back(base_.dual_morphism(c));
    return Morphism{std::make_shared<const Object>(dual_object(*f.cod)),
                    std::make_shared<const Object>(dual_object(*f.dom)), std::move(comp)};
  }

  // -- predicates ---------------------------------------------------------

  bool is_mono(const Morphism& f) const {
    for (const auto& c : f.comp)
      if (!base_.is_mono(c))
        return false;
    return true;
  }

  bool is_epi(const Morphism& f) const {
    for (const auto& c : f.comp)
      if (!base_.is_epi(c))
        return false;
    return true;
  }

  bool is_iso(const Morphism& f) const {
    for (const auto& c : f.comp)
      if (!base_.is_iso(c))
        return false;
    return true;
  }

  std::vector<LabelledBlock> blocks(const Morphism& f) const {
    std::vector<LabelledBlock> out;
    for (std::size_t v = 0; v < f.comp.size(); ++v)
      for (auto& b : base_.blocks(f.comp[v]))
        out.push_back({quiver_->vertex_name(v) + (b.label.empty() ? "" : "/" + b.label),
                       std::move(b.matrix)});
    return out;
  }

  std::vector<std::size_t> dimension_vector(const Object& x) const {
    std::vector<std::size_t> out;
    for (const auto& v : x.vertex)
      for (auto d : base_.dimension_vector(v))
        out.push_back(d);
    return out;
  }

  std::vector<std::string> atom_labels() const {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < quiver_->vertex_count(); ++v)
      for (const auto& l : base_.atom_labels())
        out.push_back(quiver_->vertex_name(v) + (l.empty() ? "" : "/" + l));
    return out;
  }

  void check_morphism(const Morphism& f, const Object& x, const Object& y) const {
    if (!(*f.dom == x) || !(*f.cod == y))
      throw std::invalid_argument("morphism endpoints do not match");
  }

 private:
  typename B::Object base_domain(const typename B::Morphism& f) const { return base_.domain(f); }
  typename B::Object base_codomain(const typename B::Morphism& f) const {
    return base_.codomain(f);
  }

  void check_base_morphism(const typename B::Morphism& f, const typename B::Object& x,
                           const typename B::Object& y, const std::string& where) const {
    try {
      base_.check_morphism(f, x, y);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }

  QuiverPtr quiver_;
  B base_;
};

using Rep1 = RepCat<FdVect>;
using Rep2 = RepCat<RepCat<FdVect>>;

/// Image factorization f = m o e with e epi and m mono: the image is the
/// kernel of the cokernel.
template <AbelianBase C>
struct ImageFactorization {
  typename C::Object image;
  typename C::Morphism epi;
  typename C::Morphism mono;
};

template <AbelianBase C>
ImageFactorization<C> image_factorization(const C& c, const typename C::Morphism& f) {
  auto ck = c.cokernel(f);
  auto im = c.kernel(ck.proj);
  auto e = c.lift_through_mono(im.incl, f);
  if (!e)
    throw std::logic_error("image_factorization: map does not factor through its image");
  return {im.object, *e, im.incl};
}

}  // namespace qha
