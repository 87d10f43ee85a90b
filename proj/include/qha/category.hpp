#pragma once

#include "qha/matrix.hpp"

#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qha {

template <class Object, class Morphism>
struct KernelOf {
  Object object;
  Morphism incl;
};

template <class Object, class Morphism>
struct CokernelOf {
  Object object;
  Morphism proj;
};

/// A finite biproduct with its structural maps: p_k i_k = id, p_j i_k = 0,
/// and sum_k i_k p_k = id.
template <class Object, class Morphism>
struct BiproductOf {
  Object sum;
  std::vector<Morphism> incl;
  std::vector<Morphism> proj;
};

/// Epimorphism from a projective (or monomorphism into an injective).
template <class Object, class Morphism>
struct ResolvingMapOf {
  Object object;
  Morphism map;
};

/// One atomic matrix block of a morphism, labelled by the atomic vertex it
/// lives at (empty label for fdVect).
struct LabelledBlock {
  std::string label;
  Mat matrix;
};

/// Interface every computable abelian base satisfies. All categories here
/// are k-linear with finite-dimensional Hom spaces; every morphism
/// flattens to scalar coordinates, so categorical questions reduce to
/// linear systems.
template <class C>
concept AbelianBase = requires(const C& c, const typename C::Object& x,
                               const typename C::Morphism& f, std::vector<Scalar>& out) {
  { c.field() } -> std::convertible_to<FieldSpec>;
  { c.zero_object() } -> std::same_as<typename C::Object>;
  { c.dim(x) } -> std::convertible_to<std::size_t>;
  { c.identity(x) } -> std::same_as<typename C::Morphism>;
  { c.zero_map(x, x) } -> std::same_as<typename C::Morphism>;
  { c.compose(f, f) } -> std::same_as<typename C::Morphism>;
  { c.add(f, f) } -> std::same_as<typename C::Morphism>;
  { c.scale(Scalar{}, f) } -> std::same_as<typename C::Morphism>;
  { c.equal(f, f) } -> std::convertible_to<bool>;
  { c.is_zero(f) } -> std::convertible_to<bool>;
  { c.coord_size(x, x) } -> std::convertible_to<std::size_t>;
  c.append_coords(f, out);
  { c.hom_basis(x, x) } -> std::same_as<std::vector<typename C::Morphism>>;
  c.kernel(f);
  c.cokernel(f);
  c.direct_sum_n(std::vector<typename C::Object>{});
  c.projective_cover(x);
  c.injective_hull(x);
  c.simples();
  { c.opposite() } -> std::same_as<C>;
  { c.is_iso(f) } -> std::convertible_to<bool>;
  { c.blocks(f) } -> std::same_as<std::vector<LabelledBlock>>;
};

struct VectSpace {
  std::size_t dim = 0;
  bool operator==(const VectSpace&) const = default;
};

/// Finite-dimensional vector spaces k^n with matrices as morphisms.
class FdVect {
 public:
  using Object = VectSpace;
  using Morphism = Mat;
  using Kernel = KernelOf<Object, Morphism>;
  using Cokernel = CokernelOf<Object, Morphism>;
  using Biproduct = BiproductOf<Object, Morphism>;
  using ResolvingMap = ResolvingMapOf<Object, Morphism>;
  static constexpr int depth = 0;

  explicit FdVect(FieldSpec field = {}) : field_(field) {}

  const FieldSpec& field() const { return field_; }
  std::string name() const { return "fdVect(" + field_.to_string() + ")"; }
  bool operator==(const FdVect&) const = default;

  Object make(std::size_t d) const { return {d}; }
  Object zero_object() const { return {0}; }
  std::size_t dim(const Object& x) const { return x.dim; }
  bool is_zero_object(const Object& x) const { return x.dim == 0; }
  bool same_object(const Object& x, const Object& y) const { return x == y; }
  Object domain(const Morphism& f) const { return {f.cols()}; }
  Object codomain(const Morphism& f) const { return {f.rows()}; }

  Morphism identity(const Object& x) const { return Mat::identity(field_, x.dim); }
  Morphism zero_map(const Object& x, const Object& y) const { return Mat(field_, y.dim, x.dim); }
  Morphism compose(const Morphism& g, const Morphism& f) const { return g * f; }
  Morphism add(const Morphism& f, const Morphism& g) const { return f + g; }
  Morphism sub(const Morphism& f, const Morphism& g) const { return f - g; }
  Morphism scale(const Scalar& c, const Morphism& f) const { return f.scaled(c); }
  Morphism negate(const Morphism& f) const { return -f; }
  bool equal(const Morphism& f, const Morphism& g) const { return f == g; }
  bool is_zero(const Morphism& f) const { return f.is_zero(); }

  std::size_t coord_size(const Object& x, const Object& y) const { return x.dim * y.dim; }
  void append_coords(const Morphism& f, std::vector<Scalar>& out) const {
    out.insert(out.end(), f.data().begin(), f.data().end());
  }
  Morphism from_coords(const Object& x, const Object& y, std::span<const Scalar> c) const {
    Mat m(field_, y.dim, x.dim);
    for (std::size_t i = 0; i < y.dim; ++i)
      for (std::size_t j = 0; j < x.dim; ++j)
        m.set(i, j, c[i * x.dim + j]);
    return m;
  }

  /// Elementary matrices E_ij in row-major order.
  std::vector<Morphism> hom_basis(const Object& x, const Object& y) const {
    std::vector<Morphism> b;
    for (std::size_t i = 0; i < y.dim; ++i)
      for (std::size_t j = 0; j < x.dim; ++j) {
        Mat e(field_, y.dim, x.dim);
        e.set(i, j, Scalar(1));
        b.push_back(std::move(e));
      }
    return b;
  }

  Kernel kernel(const Morphism& f) const {
    Mat n = nullspace(f);
    return {{n.cols()}, n};
  }

  Cokernel cokernel(const Morphism& f) const {
    Mat p = f.cols() == 0 ? Mat::identity(field_, f.rows()) : left_nullspace(f);
    return {{p.rows()}, p};
  }

  /// x with m x = g.
  std::optional<Morphism> lift_through_mono(const Morphism& m, const Morphism& g) const {
    return solve(m, g);
  }

  /// x with x e = g.
  std::optional<Morphism> descend_through_epi(const Morphism& e, const Morphism& g) const {
    auto t = solve(e.transpose(), g.transpose());
    if (!t)
      return std::nullopt;
    return t->transpose();
  }

  /// x with e x = g, where g has projective source and e is epi.
  std::optional<Morphism> lift_from_projective(const Morphism& g, const Morphism& e) const {
    return solve(e, g);
  }

  /// x with x m = g, where g has injective target and m is mono.
  std::optional<Morphism> extend_to_injective(const Morphism& g, const Morphism& m) const {
    return descend_through_epi(m, g);
  }

  Biproduct direct_sum_n(const std::vector<Object>& xs) const {
    Biproduct b;
    std::size_t total = 0;
    for (const auto& x : xs)
      total += x.dim;
    b.sum = {total};
    std::size_t off = 0;
    for (const auto& x : xs) {
      Mat i(field_, total, x.dim), p(field_, x.dim, total);
      for (std::size_t k = 0; k < x.dim; ++k) {
        i.set(off + k, k, Scalar(1));
        p.set(k, off + k, Scalar(1));
      }
      b.incl.push_back(std::move(i));
      b.proj.push_back(std::move(p));
      off += x.dim;
    }
    return b;
  }

  Biproduct direct_sum(const Object& x, const Object& y) const { return direct_sum_n({x, y}); }

  std::vector<Object> simples() const { return {{1}}; }
  std::vector<Object> indecomposable_projectives() const { return {{1}}; }
  std::vector<Object> indecomposable_injectives() const { return {{1}}; }
  ResolvingMap projective_cover(const Object& x) const { return {x, identity(x)}; }
  ResolvingMap injective_hull(const Object& x) const { return {x, identity(x)}; }

  FdVect opposite() const { return *this; }
  Object dual_object(const Object& x) const { return x; }
  Morphism dual_morphism(const Morphism& f) const { return f.transpose(); }

  bool is_mono(const Morphism& f) const { return rank(f) == f.cols(); }
  bool is_epi(const Morphism& f) const { return rank(f) == f.rows(); }
  bool is_iso(const Morphism& f) const { return f.rows() == f.cols() && is_mono(f); }

  std::vector<LabelledBlock> blocks(const Morphism& f) const { return {{"", f}}; }
  std::vector<std::size_t> dimension_vector(const Object& x) const { return {x.dim}; }
  std::vector<std::string> atom_labels() const { return {""}; }

  void check_morphism(const Morphism& f, const Object& x, const Object& y) const {
    if (f.rows() != y.dim || f.cols() != x.dim)
      throw std::invalid_argument("morphism shape " + f.shape() + " does not match " +
                                  std::to_string(x.dim) + " -> " + std::to_string(y.dim));
  }

 private:
  FieldSpec field_;
};

// ---------------------------------------------------------------------------
// Generic helpers over any AbelianBase.

template <AbelianBase C>
std::vector<Scalar> coords_of(const C& c, const typename C::Morphism& f) {
  std::vector<Scalar> v;
  c.append_coords(f, v);
  return v;
}

/// Matrix whose columns are the coordinates of the given morphisms.
template <AbelianBase C>
Mat coords_matrix(const C& c, std::size_t height, const std::vector<typename C::Morphism>& fs) {
  std::vector<std::vector<Scalar>> cols;
  cols.reserve(fs.size());
  for (const auto& f : fs) {
    cols.push_back(coords_of(c, f));
    if (cols.back().size() != height)
      throw std::logic_error("coords_matrix: coordinate length mismatch");
  }
  return Mat::from_columns(c.field(), height, cols);
}

template <AbelianBase C>
typename C::Morphism combine(const C& c, const typename C::Object& x, const typename C::Object& y,
                             const std::vector<typename C::Morphism>& basis,
                             const std::vector<Scalar>& coeffs) {
  const std::size_t n = c.coord_size(x, y);
  std::vector<Scalar> acc(n);
  std::vector<Scalar> tmp;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == 0)
      continue;
    tmp.clear();
    c.append_coords(basis[k], tmp);
    for (std::size_t i = 0; i < n; ++i)
      acc[i] += coeffs[k] * tmp[i];
  }
  for (auto& a : acc)
    a = c.field().reduce(a);
  return c.from_coords(x, y, acc);
}

/// Coordinates of f in the given basis of Hom(x, y); nullopt if f is not in
/// the span.
template <AbelianBase C>
std::optional<std::vector<Scalar>> coordinates_in_basis(const C& c, const typename C::Object& x,
                                                        const typename C::Object& y,
                                                        const std::vector<typename C::Morphism>& basis,
                                                        const typename C::Morphism& f) {
  const std::size_t n = c.coord_size(x, y);
  Mat a = coords_matrix(c, n, basis);
  Mat b = Mat::column_vector(c.field(), coords_of(c, f));
  auto s = solve(a, b);
  if (!s)
    return std::nullopt;
  return s->column_entries(0);
}

template <AbelianBase C>
std::size_t hom_dimension(const C& c, const typename C::Object& x, const typename C::Object& y) {
  return c.hom_basis(x, y).size();
}

/// Sum of morphisms sharing endpoints x -> y.
template <AbelianBase C>
typename C::Morphism sum_maps(const C& c, const typename C::Object& x, const typename C::Object& y,
                              const std::vector<typename C::Morphism>& fs) {
  typename C::Morphism s = c.zero_map(x, y);
  for (const auto& f : fs)
    s = c.add(s, f);
  return s;
}

}  // namespace qha
