#pragma once

#include "qha/random.hpp"
#include "qha/rep.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

/// Bounded cochain complex X^lo -> ... -> X^hi. The window is normalized so
/// that X^lo and X^hi are nonzero (the zero complex has no objects).
template <AbelianBase C>
struct Complex {
  int lo = 0;
  std::vector<typename C::Object> obj;
  std::vector<typename C::Morphism> diff;  // diff[k] : obj[k] -> obj[k+1]

  int hi() const { return lo + static_cast<int>(obj.size()) - 1; }
  bool empty() const { return obj.empty(); }
  bool in_window(int i) const { return !obj.empty() && i >= lo && i <= hi(); }
  bool operator==(const Complex& o) const {
    return lo == o.lo && obj == o.obj && diff == o.diff;
  }
};

template <AbelianBase C>
using ComplexPtr = std::shared_ptr<const Complex<C>>;

/// Chain map; components are stored on the intersection of the two
/// windows, where all nonzero components live.
template <AbelianBase C>
struct ChainMap {
  ComplexPtr<C> dom;
  ComplexPtr<C> cod;
  int lo = 0;
  std::vector<typename C::Morphism> comp;

  bool operator==(const ChainMap& o) const { return lo == o.lo && comp == o.comp; }
};

/// Degree i component of a homotopy h^i : X^i -> Y^{i-1}.
template <AbelianBase C>
using Homotopy = std::map<int, typename C::Morphism>;

/// Cohomology at one degree: Z = ker d^i with inclusion z, and H = Z / im
/// d^{i-1} with projection pi : Z -> H.
template <AbelianBase C>
struct CohomologyData {
  typename C::Object cycles;
  typename C::Morphism z;
  typename C::Object object;
  typename C::Morphism pi;
};

struct BlockWitness {
  std::string label;
  std::size_t rank = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool operator==(const BlockWitness&) const = default;
};

/// Per-degree H^i(f) blocks with (rank, rows, cols) witnesses. A degree is
/// an isomorphism iff every block is square of full rank.
struct QisDegree {
  int degree = 0;
  std::vector<LabelledBlock> hmap;
  std::vector<BlockWitness> witness;
  bool iso = true;
};

struct QisCertificate {
  bool is_qis = true;
  std::vector<QisDegree> degrees;

  /// Re-derives the verdict from the stored matrices alone.
  bool recheck() const {
    bool all = true;
    for (const auto& d : degrees) {
      bool ok = true;
      for (const auto& b : d.hmap)
        ok = ok && b.matrix.rows() == b.matrix.cols() && rank(b.matrix) == b.matrix.rows();
      all = all && ok && ok == d.iso;
    }
    return all == is_qis;
  }
};

/// One degree of the Hom complex Hom^k(X, Y) = prod_i Hom(X^i, Y^{i+k}).
/// Raw coordinates concatenate the base coordinates of each component.
template <AbelianBase C>
struct HomDegree {
  int k = 0;
  int first = 0;  // source degree of the first component
  std::vector<std::vector<typename C::Morphism>> basis;
  std::vector<std::size_t> basis_offset;
  std::vector<std::size_t> raw_offset;
  std::size_t dim = 0;
  std::size_t raw_size = 0;
  Mat raw_basis;  // raw_size x dim
};

/// Operations on bounded complexes over an abelian base C.
template <AbelianBase C>
class ComplexOps {
 public:
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;
  using Cx = Complex<C>;
  using Map = ChainMap<C>;

  explicit ComplexOps(C cat) : c_(std::move(cat)) {}
  const C& cat() const { return c_; }
  const FieldSpec& field() const { return c_.field(); }

  // -- construction -------------------------------------------------------

  /// Validates shapes and d^{i+1} d^i = 0, then trims zero ends.
  Cx make(int lo, std::vector<Object> obj, std::vector<Morphism> diff) const {
    if (obj.empty()) {
      if (!diff.empty())
        throw std::invalid_argument("complex: differentials given for an empty window");
      return {};
    }
    if (diff.size() + 1 != obj.size())
      throw std::invalid_argument("complex: expected " + std::to_string(obj.size() - 1) +
                                  " differentials");
    for (std::size_t k = 0; k < diff.size(); ++k) {
      try {
        c_.check_morphism(diff[k], obj[k], obj[k + 1]);
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("complex: diff " + std::to_string(lo + static_cast<int>(k)) +
                                    ": " + e.what());
      }
    }
    for (std::size_t k = 0; k + 1 < diff.size(); ++k)
      if (!c_.is_zero(c_.compose(diff[k + 1], diff[k])))
        throw std::invalid_argument("complex: d^" + std::to_string(lo + static_cast<int>(k) + 1) +
                                    " o d^" + std::to_string(lo + static_cast<int>(k)) +
                                    " is not zero");
    std::size_t b = 0, e = obj.size();
    while (b < e && c_.dim(obj[b]) == 0)
      ++b;
    while (e > b && c_.dim(obj[e - 1]) == 0)
      --e;
    Cx x;
    if (b == e)
      return x;
    x.lo = lo + static_cast<int>(b);
    x.obj.assign(obj.begin() + b, obj.begin() + e);
    x.diff.assign(diff.begin() + b, diff.begin() + (e - 1));
    return x;
  }

  Cx zero_complex() const { return {}; }

  Cx stalk(const Object& x, int degree = 0) const { return make(degree, {x}, {}); }

  Object object(const Cx& x, int i) const {
    return x.in_window(i) ? x.obj[i - x.lo] : c_.zero_object();
  }

  /// d^i : X^i -> X^{i+1} (zero outside the window).
  Morphism differential(const Cx& x, int i) const {
    if (x.in_window(i) && x.in_window(i + 1))
      return x.diff[i - x.lo];
    return c_.zero_map(object(x, i), object(x, i + 1));
  }

  /// Degrees covered by both windows (possibly empty: lo > hi).
  static std::pair<int, int> intersection(const Cx& x, const Cx& y) {
    if (x.empty() || y.empty())
      return {0, -1};
    return {std::max(x.lo, y.lo), std::min(x.hi(), y.hi())};
  }

  static std::pair<int, int> hull(const Cx& x, const Cx& y) {
    if (x.empty())
      return y.empty() ? std::pair{0, -1} : std::pair{y.lo, y.hi()};
    if (y.empty())
      return {x.lo, x.hi()};
    return {std::min(x.lo, y.lo), std::max(x.hi(), y.hi())};
  }

  /// Builds and validates a chain map from components indexed by degree;
  /// missing degrees are zero.
  Map make_map(ComplexPtr<C> dom, ComplexPtr<C> cod, const std::map<int, Morphism>& comps) const {
    auto [lo, hi] = intersection(*dom, *cod);
    for (const auto& [i, m] : comps)
      if ((i < lo || i > hi) && !c_.is_zero(m))
        throw std::invalid_argument("chain map: nonzero component outside the common window at degree " +
                                    std::to_string(i));
    Map f{dom, cod, lo, {}};
    for (int i = lo; i <= hi; ++i) {
      auto it = comps.find(i);
      if (it == comps.end()) {
        f.comp.push_back(c_.zero_map(object(*dom, i), object(*cod, i)));
      } else {
        try {
          c_.check_morphism(it->second, object(*dom, i), object(*cod, i));
        } catch (const std::invalid_argument& e) {
          throw std::invalid_argument("chain map: degree " + std::to_string(i) + ": " + e.what());
        }
        f.comp.push_back(it->second);
      }
    }
    check_chain(f);
    return f;
  }

  Map make_map(const Cx& dom, const Cx& cod, const std::map<int, Morphism>& comps) const {
    return make_map(std::make_shared<const Cx>(dom), std::make_shared<const Cx>(cod), comps);
  }

  /// Throws unless d_Y f = f d_X in every degree.
  void check_chain(const Map& f) const {
    auto [lo, hi] = hull(*f.dom, *f.cod);
    for (int i = lo - 1; i <= hi; ++i) {
      auto lhs = c_.compose(differential(*f.cod, i), component(f, i));
      auto rhs = c_.compose(component(f, i + 1), differential(*f.dom, i));
      if (!c_.equal(lhs, rhs))
        throw std::invalid_argument("chain map: square fails at degree " + std::to_string(i));
    }
  }

  Morphism component(const Map& f, int i) const {
    int k = i - f.lo;
    if (k >= 0 && k < static_cast<int>(f.comp.size()))
      return f.comp[k];
    return c_.zero_map(object(*f.dom, i), object(*f.cod, i));
  }

  std::map<int, Morphism> components(const Map& f) const {
    std::map<int, Morphism> out;
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      out.emplace(f.lo + static_cast<int>(k), f.comp[k]);
    return out;
  }

  // -- chain map algebra ----------------------------------------------------

  Map identity(const Cx& x) const { return identity(std::make_shared<const Cx>(x)); }
  Map identity(ComplexPtr<C> x) const {
    Map f{x, x, x->lo, {}};
    for (const auto& o : x->obj)
      f.comp.push_back(c_.identity(o));
    return f;
  }

  Map zero_map(ComplexPtr<C> x, ComplexPtr<C> y) const {
    auto [lo, hi] = intersection(*x, *y);
    Map f{x, y, lo, {}};
    for (int i = lo; i <= hi; ++i)
      f.comp.push_back(c_.zero_map(object(*x, i), object(*y, i)));
    return f;
  }

  Map compose(const Map& g, const Map& f) const {
    auto [lo, hi] = intersection(*f.dom, *g.cod);
    Map h{f.dom, g.cod, lo, {}};
    for (int i = lo; i <= hi; ++i)
      h.comp.push_back(c_.compose(component(g, i), component(f, i)));
    return h;
  }

  Map add(const Map& f, const Map& g) const {
    Map h{f.dom, f.cod, f.lo, {}};
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      h.comp.push_back(c_.add(f.comp[k], g.comp[k]));
    return h;
  }

  Map scale(const Scalar& s, const Map& f) const {
    Map h{f.dom, f.cod, f.lo, {}};
    for (const auto& m : f.comp)
      h.comp.push_back(c_.scale(s, m));
    return h;
  }

  Map sub(const Map& f, const Map& g) const { return add(f, scale(Scalar(-1), g)); }

  bool equal(const Map& f, const Map& g) const {
    if (f.comp.size() != g.comp.size())
      return false;
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      if (!c_.equal(f.comp[k], g.comp[k]))
        return false;
    return true;
  }

  bool is_zero(const Map& f) const {
    for (const auto& m : f.comp)
      if (!c_.is_zero(m))
        return false;
    return true;
  }

  /// Retargets a map whose endpoints are structurally equal to new ones.
  Map with_endpoints(Map f, ComplexPtr<C> dom, ComplexPtr<C> cod) const {
    if ((f.dom != dom && !(*f.dom == *dom)) || (f.cod != cod && !(*f.cod == *cod)))
      throw std::invalid_argument("with_endpoints: endpoints differ");
    f.dom = std::move(dom);
    f.cod = std::move(cod);
    return f;
  }

  // -- shift, cone ----------------------------------------------------------

  /// X[n]^i = X^{i+n}, d_{X[n]} = (-1)^n d_X.
  Cx shift(const Cx& x, int n) const {
    if (x.empty())
      return x;
    Cx y = x;
    y.lo = x.lo - n;
    if (n % 2 != 0)
      for (auto& d : y.diff)
        d = c_.scale(Scalar(-1), d);
    return y;
  }

  Map shift_map(const Map& f, int n) const {
    Map g = f;
    g.dom = std::make_shared<const Cx>(shift(*f.dom, n));
    g.cod = std::make_shared<const Cx>(shift(*f.cod, n));
    g.lo = f.lo - n;
    return g;
  }

  struct Cone {
    Cx cone;
    Map incl_y;  // Y -> cone(f)
    Map proj_x;  // cone(f) -> X[1]
  };

  /// cone(f)^i = X^{i+1} (+) Y^i with d = [[-d_X, 0], [f, d_Y]].
  Cone cone(const Map& f) const {
    const Cx& x = *f.dom;
    const Cx& y = *f.cod;
    auto [hlo, hhi] = hull(shift(x, 1), y);
    std::vector<typename C::Biproduct> sums;
    std::vector<Object> objs;
    for (int i = hlo; i <= hhi + 1; ++i) {
      sums.push_back(c_.direct_sum(object(x, i + 1), object(y, i)));
      objs.push_back(sums.back().sum);
    }
    std::vector<Morphism> diffs;
    for (int i = hlo; i < hhi; ++i) {
      const auto& s = sums[i - hlo];
      const auto& t = sums[i - hlo + 1];
      auto d = c_.scale(Scalar(-1), c_.compose(t.incl[0], c_.compose(differential(x, i + 1), s.proj[0])));
      d = c_.add(d, c_.compose(t.incl[1], c_.compose(component(f, i + 1), s.proj[0])));
      d = c_.add(d, c_.compose(t.incl[1], c_.compose(differential(y, i), s.proj[1])));
      diffs.push_back(std::move(d));
    }
    objs.pop_back();
    if (hhi < hlo)
      return {zero_complex(), zero_map(std::make_shared<const Cx>(y), std::make_shared<const Cx>()),
              zero_map(std::make_shared<const Cx>(), std::make_shared<const Cx>(shift(x, 1)))};
    Cx cn = make(hlo, objs, diffs);
    auto pc = std::make_shared<const Cx>(cn);
    auto py = std::make_shared<const Cx>(y);
    auto px1 = std::make_shared<const Cx>(shift(x, 1));
    std::map<int, Morphism> iy, px;
    for (int i = hlo; i <= hhi; ++i) {
      if (cn.in_window(i)) {
        if (y.in_window(i))
          iy.emplace(i, sums[i - hlo].incl[1]);
        if (x.in_window(i + 1))
          px.emplace(i, sums[i - hlo].proj[0]);
      }
    }
    return {cn, make_map(py, pc, iy), make_map(pc, px1, px)};
  }

  struct Sum {
    Cx sum;
    std::vector<Map> incl;
    std::vector<Map> proj;
  };

  /// Degreewise biproduct of complexes with its structural chain maps.
  Sum direct_sum(const std::vector<Cx>& xs) const {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& x : xs)
      if (!x.empty()) {
        lo = any ? std::min(lo, x.lo) : x.lo;
        hi = any ? std::max(hi, x.hi()) : x.hi();
        any = true;
      }
    std::vector<typename C::Biproduct> sums;
    std::vector<Object> objs;
    for (int i = lo; i <= hi; ++i) {
      std::vector<Object> parts;
      for (const auto& x : xs)
        parts.push_back(object(x, i));
      sums.push_back(c_.direct_sum_n(parts));
      objs.push_back(sums.back().sum);
    }
    std::vector<Morphism> diffs;
    for (int i = lo; i < hi; ++i) {
      const auto& s = sums[i - lo];
      const auto& t = sums[i - lo + 1];
      auto d = c_.zero_map(s.sum, t.sum);
      for (std::size_t k = 0; k < xs.size(); ++k)
        d = c_.add(d, c_.compose(t.incl[k], c_.compose(differential(xs[k], i), s.proj[k])));
      diffs.push_back(std::move(d));
    }
    Sum out{make(lo, objs, diffs), {}, {}};
    auto ps = std::make_shared<const Cx>(out.sum);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      auto px = std::make_shared<const Cx>(xs[k]);
      std::map<int, Morphism> ic, pc;
      for (int i = lo; i <= hi; ++i)
        if (xs[k].in_window(i)) {
          ic.emplace(i, sums[i - lo].incl[k]);
          pc.emplace(i, sums[i - lo].proj[k]);
        }
      out.incl.push_back(make_map(px, ps, ic));
      out.proj.push_back(make_map(ps, px, pc));
    }
    return out;
  }

  // -- cohomology ---------------------------------------------------------

  CohomologyData<C> cohomology(const Cx& x, int i) const {
    auto k = c_.kernel(differential(x, i));
    auto b = c_.lift_through_mono(k.incl, differential(x, i - 1));
    if (!b)
      throw std::logic_error("cohomology: d o d != 0");
    auto q = c_.cokernel(*b);
    return {k.object, k.incl, q.object, q.proj};
  }

  /// H^i(f) : H^i(X) -> H^i(Y) given precomputed cohomology data.
  Morphism cohomology_map(const Map& f, int i, const CohomologyData<C>& hx,
                          const CohomologyData<C>& hy) const {
    auto g = c_.compose(component(f, i), hx.z);
    auto l = c_.lift_through_mono(hy.z, g);
    if (!l)
      throw std::logic_error("cohomology_map: cycles do not map to cycles");
    auto d = c_.descend_through_epi(hx.pi, c_.compose(hy.pi, *l));
    if (!d)
      throw std::logic_error("cohomology_map: boundaries do not map to boundaries");
    return *d;
  }

  Morphism cohomology_map(const Map& f, int i) const {
    return cohomology_map(f, i, cohomology(*f.dom, i), cohomology(*f.cod, i));
  }

  bool is_acyclic(const Cx& x) const {
    for (int i = x.lo; i <= x.hi(); ++i)
      if (c_.dim(cohomology(x, i).object) != 0)
        return false;
    return true;
  }

  QisCertificate quasi_iso_certificate(const Map& f) const {
    QisCertificate cert;
    auto [lo, hi] = hull(*f.dom, *f.cod);
    for (int i = lo; i <= hi; ++i) {
      QisDegree d;
      d.degree = i;
      d.hmap = c_.blocks(cohomology_map(f, i));
      for (const auto& b : d.hmap) {
        std::size_t r = rank(b.matrix);
        d.witness.push_back({b.label, r, b.matrix.rows(), b.matrix.cols()});
        d.iso = d.iso && b.matrix.rows() == b.matrix.cols() && r == b.matrix.rows();
      }
      cert.is_qis = cert.is_qis && d.iso;
      cert.degrees.push_back(std::move(d));
    }
    return cert;
  }

  bool is_quasi_iso(const Map& f) const { return quasi_iso_certificate(f).is_qis; }

  /// (H^i(X), 0): an object of Kom_0.
  Cx cohomology_complex(const Cx& x) const {
    if (x.empty())
      return x;
    std::vector<Object> objs;
    std::vector<Morphism> diffs;
    for (int i = x.lo; i <= x.hi(); ++i)
      objs.push_back(cohomology(x, i).object);
    for (std::size_t k = 0; k + 1 < objs.size(); ++k)
      diffs.push_back(c_.zero_map(objs[k], objs[k + 1]));
    return make(x.lo, objs, diffs);
  }

  // -- Hom complex and homotopies ------------------------------------------

  HomDegree<C> hom_degree(const Cx& x, const Cx& y, int k) const {
    HomDegree<C> h;
    h.k = k;
    h.first = x.empty() ? 0 : x.lo;
    h.basis_offset.push_back(0);
    h.raw_offset.push_back(0);
    std::vector<std::vector<Scalar>> cols;
    for (int i = x.lo; !x.empty() && i <= x.hi(); ++i) {
      Object a = object(x, i), b = object(y, i + k);
      auto basis = c_.hom_basis(a, b);
      std::size_t n = c_.coord_size(a, b);
      for (const auto& m : basis) {
        std::vector<Scalar> col(h.raw_size, Scalar(0));
        c_.append_coords(m, col);
        cols.push_back(std::move(col));
      }
      h.raw_size += n;
      h.dim += basis.size();
      h.basis.push_back(std::move(basis));
      h.basis_offset.push_back(h.dim);
      h.raw_offset.push_back(h.raw_size);
    }
    for (auto& col : cols)
      col.resize(h.raw_size, Scalar(0));
    h.raw_basis = Mat::from_columns(field(), h.raw_size, cols);
    return h;
  }

  /// Raw coordinates of a family of components h^i : X^i -> Y^{i+k}.
  std::vector<Scalar> raw_coords(const HomDegree<C>& h, const Cx& x, const Cx& y,
                                 const std::map<int, Morphism>& comps) const {
    std::vector<Scalar> out;
    out.reserve(h.raw_size);
    for (std::size_t j = 0; j < h.basis.size(); ++j) {
      int i = h.first + static_cast<int>(j);
      auto it = comps.find(i);
      if (it != comps.end())
        c_.append_coords(it->second, out);
      else
        out.resize(out.size() + c_.coord_size(object(x, i), object(y, i + h.k)), Scalar(0));
    }
    return out;
  }

  std::vector<Scalar> raw_coords(const HomDegree<C>& h, const Map& f) const {
    return raw_coords(h, *f.dom, *f.cod, components(f));
  }

  /// delta(h) = d_Y h - (-1)^k h d_X, as a raw-coordinate matrix from the
  /// basis of Hom^k to raw coordinates of Hom^{k+1}.
  Mat delta(const Cx& x, const Cx& y, const HomDegree<C>& from, const HomDegree<C>& to) const {
    const int k = from.k;
    const Scalar sign = (k % 2 == 0) ? Scalar(-1) : Scalar(1);
    Mat d(field(), to.raw_size, from.dim);
    std::vector<Scalar> tmp;
    for (std::size_t j = 0; j < from.basis.size(); ++j) {
      int i = from.first + static_cast<int>(j);
      for (std::size_t b = 0; b < from.basis[j].size(); ++b) {
        const auto& m = from.basis[j][b];
        std::size_t col = from.basis_offset[j] + b;
        // Component at source degree i: d_Y^{i+k} m.
        tmp.clear();
        c_.append_coords(c_.compose(differential(y, i + k), m), tmp);
        for (std::size_t r = 0; r < tmp.size(); ++r)
          if (tmp[r] != 0)
            d.set(to.raw_offset[j] + r, col, d(to.raw_offset[j] + r, col) + tmp[r]);
        // Component at source degree i-1: -(-1)^k m d_X^{i-1}.
        if (j > 0) {
          tmp.clear();
          c_.append_coords(c_.compose(m, differential(x, i - 1)), tmp);
          for (std::size_t r = 0; r < tmp.size(); ++r)
            if (tmp[r] != 0)
              d.set(to.raw_offset[j - 1] + r, col, d(to.raw_offset[j - 1] + r, col) + sign * tmp[r]);
        }
      }
    }
    return d;
  }

  /// Components from basis coefficients of Hom^k.
  std::map<int, Morphism> from_basis_coords(const HomDegree<C>& h, const Cx& x, const Cx& y,
                                            const std::vector<Scalar>& coeffs) const {
    std::map<int, Morphism> out;
    for (std::size_t j = 0; j < h.basis.size(); ++j) {
      int i = h.first + static_cast<int>(j);
      std::vector<Scalar> seg(coeffs.begin() + h.basis_offset[j], coeffs.begin() + h.basis_offset[j + 1]);
      out.emplace(i, combine(c_, object(x, i), object(y, i + h.k), h.basis[j], seg));
    }
    return out;
  }

  /// Basis of Z^0(Hom(X, Y)), the chain maps X -> Y.
  std::vector<Map> chain_map_basis(ComplexPtr<C> x, ComplexPtr<C> y) const {
    auto h0 = hom_degree(*x, *y, 0);
    auto h1 = hom_degree(*x, *y, 1);
    Mat ns = nullspace(delta(*x, *y, h0, h1));
    std::vector<Map> out;
    for (std::size_t j = 0; j < ns.cols(); ++j)
      out.push_back(make_map(x, y, from_basis_coords(h0, *x, *y, ns.column_entries(j))));
    return out;
  }

  struct HomotopySolution {
    std::vector<Scalar> coeffs;
    Homotopy<C> h;
  };

  /// Finds c and h with sum_j c_j gen_j - target = d h + h d. All maps go
  /// X -> Y. One global linear solve over every degree.
  std::optional<HomotopySolution> homotopy_solve(const Cx& x, const Cx& y,
                                                 const std::vector<Map>& gens,
                                                 const Map& target) const {
    auto h0 = hom_degree(x, y, 0);
    auto hm = hom_degree(x, y, -1);
    Mat dm = delta(x, y, hm, h0);
    std::vector<std::vector<Scalar>> cols;
    for (const auto& g : gens)
      cols.push_back(raw_coords(h0, g));
    Mat a = Mat::from_columns(field(), h0.raw_size, cols).hconcat(-dm);
    auto sol = solve(a, Mat::column_vector(field(), raw_coords(h0, target)));
    if (!sol)
      return std::nullopt;
    auto all = sol->column_entries(0);
    HomotopySolution out;
    out.coeffs.assign(all.begin(), all.begin() + gens.size());
    std::vector<Scalar> hc(all.begin() + gens.size(), all.end());
    auto comps = from_basis_coords(hm, x, y, hc);
    for (auto& [i, m] : comps)
      out.h.emplace(i, std::move(m));
    return out;
  }

  std::optional<Homotopy<C>> is_null_homotopic(const Map& f) const {
    auto s = homotopy_solve(*f.dom, *f.cod, {}, scale(Scalar(-1), f));
    if (!s)
      return std::nullopt;
    return s->h;
  }

  bool homotopic(const Map& f, const Map& g) const { return is_null_homotopic(sub(f, g)).has_value(); }

  /// Exact check of f = d h + h d.
  bool verify_homotopy(const Map& f, const Homotopy<C>& h) const {
    auto hom = [&](int i) {
      auto it = h.find(i);
      return it != h.end() ? it->second : c_.zero_map(object(*f.dom, i), object(*f.cod, i - 1));
    };
    auto [lo, hi] = hull(*f.dom, *f.cod);
    for (int i = lo - 1; i <= hi + 1; ++i) {
      auto rhs = c_.add(c_.compose(differential(*f.cod, i - 1), hom(i)),
                        c_.compose(hom(i + 1), differential(*f.dom, i)));
      if (!c_.equal(component(f, i), rhs))
        return false;
    }
    return true;
  }

  // -- duality --------------------------------------------------------------

  /// (DX)^i = D(X^{-i}) over the opposite category.
  Complex<C> dual_complex(const Cx& x) const {
    ComplexOps<C> op(c_.opposite());
    if (x.empty())
      return {};
    std::vector<Object> objs;
    std::vector<Morphism> diffs;
    for (int i = -x.hi(); i <= -x.lo; ++i)
      objs.push_back(c_.dual_object(object(x, -i)));
    for (int i = -x.hi(); i < -x.lo; ++i)
      diffs.push_back(c_.dual_morphism(differential(x, -i - 1)));
    return op.make(-x.hi(), objs, diffs);
  }

  /// D(f) : DY -> DX; pass the dual complexes to share their storage.
  Map dual_map(const Map& f, ComplexPtr<C> dy, ComplexPtr<C> dx) const {
    Map g{std::move(dy), std::move(dx), 0, {}};
    auto [lo, hi] = intersection(*f.dom, *f.cod);
    g.lo = -hi;
    for (int i = -hi; i <= -lo; ++i)
      g.comp.push_back(c_.dual_morphism(component(f, -i)));
    if (hi < lo)
      g.lo = 0;
    return g;
  }

  // -- random generation --------------------------------------------------

  /// Random complex with `length` degrees starting at lo. Each differential
  /// factors through the cokernel of the previous one, so d o d = 0.
  Cx random_complex(Rng& rng, int lo, int length, std::size_t max_dim, bool zero_diff = false) const {
    std::vector<Object> objs;
    std::vector<Morphism> diffs;
    for (int k = 0; k < length; ++k)
      objs.push_back(random_object(c_, rng, max_dim));
    for (int k = 0; k + 1 < length; ++k) {
      if (zero_diff) {
        diffs.push_back(c_.zero_map(objs[k], objs[k + 1]));
        continue;
      }
      Morphism prev = k == 0 ? c_.zero_map(c_.zero_object(), objs[0]) : diffs.back();
      auto ck = c_.cokernel(prev);
      diffs.push_back(c_.compose(random_map(c_, ck.object, objs[k + 1], rng), ck.proj));
    }
    return make(lo, objs, diffs);
  }

  Map random_chain_map(ComplexPtr<C> x, ComplexPtr<C> y, Rng& rng) const {
    auto basis = chain_map_basis(x, y);
    Map f = zero_map(x, y);
    for (const auto& b : basis)
      if (rng.coin(75))
        f = add(f, scale(rng.scalar(field()), b));
    return f;
  }

 private:
  C c_;
};

// ---------------------------------------------------------------------------
// Transposition Kom(Q(B)) <-> Q(Kom(B)).

/// A representation of the quiver in complexes over B: one complex per
/// vertex and one chain map per arrow.
template <AbelianBase B>
struct TransposedRep {
  QuiverPtr quiver;
  std::vector<Complex<B>> vertex;
  std::vector<ChainMap<B>> arrow;

  bool operator==(const TransposedRep& o) const {
    return same_quiver(quiver, o.quiver) && vertex == o.vertex && arrow == o.arrow;
  }
};

/// Evaluation of a complex over Q(B) at one vertex.
template <AbelianBase B>
Complex<B> evaluate(const ComplexOps<RepCat<B>>& ops, const Complex<RepCat<B>>& x, std::size_t v) {
  ComplexOps<B> bops(ops.cat().base());
  std::vector<typename B::Object> objs;
  std::vector<typename B::Morphism> diffs;
  for (const auto& o : x.obj)
    objs.push_back(o.vertex[v]);
  for (const auto& d : x.diff)
    diffs.push_back(d.comp[v]);
  return bops.make(x.lo, objs, diffs);
}

/// Evaluation of a chain map at one vertex, between given evaluated
/// complexes.
template <AbelianBase B>
ChainMap<B> evaluate(const ComplexOps<RepCat<B>>& ops, const ChainMap<RepCat<B>>& f, std::size_t v,
                     ComplexPtr<B> dom, ComplexPtr<B> cod) {
  ComplexOps<B> bops(ops.cat().base());
  auto [lo, hi] = ComplexOps<B>::intersection(*dom, *cod);
  ChainMap<B> g{dom, cod, lo, {}};
  for (int i = lo; i <= hi; ++i)
    g.comp.push_back(ops.component(f, i).comp[v]);
  return g;
}

template <AbelianBase B>
ChainMap<B> evaluate(const ComplexOps<RepCat<B>>& ops, const ChainMap<RepCat<B>>& f, std::size_t v) {
  return evaluate(ops, f, v, std::make_shared<const Complex<B>>(evaluate(ops, *f.dom, v)),
                  std::make_shared<const Complex<B>>(evaluate(ops, *f.cod, v)));
}

/// Evaluates a homotopy at one vertex.
template <AbelianBase B>
Homotopy<B> evaluate(const std::map<int, RepMap<B>>& h, std::size_t v) {
  Homotopy<B> out;
  for (const auto& [i, m] : h)
    out.emplace(i, m.comp[v]);
  return out;
}

/// K: complexes of representations to representations in complexes.
template <AbelianBase B>
TransposedRep<B> transpose(const ComplexOps<RepCat<B>>& ops, const Complex<RepCat<B>>& x) {
  const RepCat<B>& rc = ops.cat();
  const Quiver& q = rc.quiver();
  ComplexOps<B> bops(rc.base());
  TransposedRep<B> t;
  t.quiver = rc.quiver_ptr();
  std::vector<ComplexPtr<B>> ptrs;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    t.vertex.push_back(evaluate(ops, x, v));
    ptrs.push_back(std::make_shared<const Complex<B>>(t.vertex.back()));
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    auto [lo, hi] = ComplexOps<B>::intersection(*ptrs[ar.tail], *ptrs[ar.head]);
    ChainMap<B> m{ptrs[ar.tail], ptrs[ar.head], lo, {}};
    for (int i = lo; i <= hi; ++i)
      m.comp.push_back(ops.object(x, i).arrow[a]);
    t.arrow.push_back(std::move(m));
  }
  return t;
}

/// K': the inverse transposition. Validates the arrow chain maps.
template <AbelianBase B>
Complex<RepCat<B>> transpose_inv(const ComplexOps<RepCat<B>>& ops, const TransposedRep<B>& t) {
  const RepCat<B>& rc = ops.cat();
  const Quiver& q = rc.quiver();
  if (!same_quiver(t.quiver, rc.quiver_ptr()))
    throw std::invalid_argument("transpose_inv: quiver mismatch");
  ComplexOps<B> bops(rc.base());
  for (const auto& m : t.arrow)
    bops.check_chain(m);
  bool any = false;
  int lo = 0, hi = -1;
  for (const auto& x : t.vertex) {
    if (x.empty())
      continue;
    lo = any ? std::min(lo, x.lo) : x.lo;
    hi = any ? std::max(hi, x.hi()) : x.hi();
    any = true;
  }
  if (!any)
    return {};
  std::vector<typename RepCat<B>::Object> objs;
  for (int i = lo; i <= hi; ++i) {
    std::vector<typename B::Object> vs;
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      vs.push_back(bops.object(t.vertex[v], i));
    std::vector<typename B::Morphism> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
      as.push_back(bops.component(t.arrow[a], i));
    objs.push_back(rc.make_object(std::move(vs), std::move(as)));
  }
  std::vector<typename RepCat<B>::Morphism> diffs;
  for (int i = lo; i < hi; ++i) {
    std::vector<typename B::Morphism> comp;
    for (std::size_t v = 0; v < q.vertex_count(); ++v)
      comp.push_back(bops.differential(t.vertex[v], i));
    diffs.push_back(rc.make_map(objs[i - lo], objs[i - lo + 1], std::move(comp)));
  }
  return ops.make(lo, std::move(objs), std::move(diffs));
}

}  // namespace qha
