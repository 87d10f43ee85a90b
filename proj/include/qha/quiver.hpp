#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qha {

struct Arrow {
  std::string name;
  std::size_t tail;
  std::size_t head;
  bool operator==(const Arrow&) const = default;
};

/// Finite acyclic quiver. Vertices and arrows are addressed by index; the
/// string identifiers are stable and used in every file format and report.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::string name, std::vector<std::string> vertices,
         std::vector<std::tuple<std::string, std::string, std::string>> arrows)
      : name_(std::move(name)), vertices_(std::move(vertices)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_)
      if (!seen.insert(v).second)
        throw std::invalid_argument("quiver " + name_ + ": duplicate vertex '" + v + "'");
    std::set<std::string> anames;
    for (const auto& [a, t, h] : arrows) {
      if (!anames.insert(a).second)
        throw std::invalid_argument("quiver " + name_ + ": duplicate arrow '" + a + "'");
      auto ti = find_vertex(t), hi = find_vertex(h);
      if (!ti)
        throw std::invalid_argument("quiver " + name_ + ": arrow '" + a + "' has unknown tail '" +
                                    t + "'");
      if (!hi)
        throw std::invalid_argument("quiver " + name_ + ": arrow '" + a + "' has unknown head '" +
                                    h + "'");
      arrows_.push_back({a, *ti, *hi});
    }
    compute_topological_order();
  }

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
  const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  std::optional<std::size_t> find_vertex(const std::string& v) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::size_t vertex_index(const std::string& v) const {
    auto i = find_vertex(v);
    if (!i)
      throw std::invalid_argument("quiver " + name_ + ": unknown vertex '" + v + "'");
    return *i;
  }

  std::optional<std::size_t> find_arrow(const std::string& a) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == a)
        return i;
    return std::nullopt;
  }

  std::size_t arrow_index(const std::string& a) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == a)
        return i;
    throw std::invalid_argument("quiver " + name_ + ": unknown arrow '" + a + "'");
  }

  std::vector<std::size_t> arrows_into(std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].head == v)
        r.push_back(i);
    return r;
  }

  std::vector<std::size_t> arrows_out_of(std::size_t v) const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].tail == v)
        r.push_back(i);
    return r;
  }

  /// Same vertices, reversed arrows. Involutive: opposite().opposite() == *this.
  Quiver opposite() const {
    Quiver q;
    const std::string suffix = "^op";
    q.name_ = name_.size() >= suffix.size() &&
                      name_.compare(name_.size() - suffix.size(), suffix.size(), suffix) == 0
                  ? name_.substr(0, name_.size() - suffix.size())
                  : name_ + suffix;
    q.vertices_ = vertices_;
    for (const auto& a : arrows_)
      q.arrows_.push_back({a.name, a.head, a.tail});
    q.compute_topological_order();
    return q;
  }

  bool operator==(const Quiver& o) const {
    return name_ == o.name_ && vertices_ == o.vertices_ && arrows_ == o.arrows_;
  }

  std::string to_text() const {
    std::string s = "quiver " + name_ + "\nvertices";
    for (const auto& v : vertices_)
      s += " " + v;
    s += "\n";
    for (const auto& a : arrows_)
      s += "arrow " + a.name + ": " + vertices_[a.tail] + " -> " + vertices_[a.head] + "\n";
    return s;
  }

 private:
  void compute_topological_order() {
    std::vector<std::size_t> indeg(vertices_.size(), 0);
    for (const auto& a : arrows_)
      ++indeg[a.head];
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
      if (!indeg[v])
        ready.push_back(v);
    topo_.clear();
    while (!ready.empty()) {
      std::size_t v = *std::min_element(ready.begin(), ready.end());
      ready.erase(std::find(ready.begin(), ready.end(), v));
      topo_.push_back(v);
      for (const auto& a : arrows_)
        if (a.tail == v && --indeg[a.head] == 0)
          ready.push_back(a.head);
    }
    if (topo_.size() != vertices_.size())
      throw std::invalid_argument("quiver " + name_ + ": contains a directed cycle");
  }

  std::string name_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> topo_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

inline QuiverPtr make_quiver(std::string name, std::vector<std::string> vertices,
                             std::vector<std::tuple<std::string, std::string, std::string>> arrows) {
  return std::make_shared<const Quiver>(std::move(name), std::move(vertices), std::move(arrows));
}

inline bool same_quiver(const QuiverPtr& a, const QuiverPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A path a_1 a_2 ... a_n, written in composition order: a_n is traversed
/// first, a_1 last. The empty sequence is the trivial path e_v.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  bool trivial() const { return arrows.empty(); }
  std::size_t length() const { return arrows.size(); }
  bool operator==(const Path&) const = default;

  static Path trivial_at(std::size_t v) { return Path{v, v, {}}; }

  static Path of_arrow(const Quiver& q, std::size_t a) {
    return Path{q.arrow(a).tail, q.arrow(a).head, {a}};
  }

  /// Arrows in traversal order (first traversed first).
  std::vector<std::size_t> traversal() const { return {arrows.rbegin(), arrows.rend()}; }

  std::string label(const Quiver& q) const {
    if (arrows.empty())
      return "e_" + q.vertex_name(source);
    std::string s;
    for (auto a : arrows)
      s += q.arrow(a).name;
    return s;
  }

  /// Composability check: h(a_{i+1}) = t(a_i), endpoints consistent.
  bool valid(const Quiver& q) const {
    if (arrows.empty())
      return source == target && source < q.vertex_count();
    if (q.arrow(arrows.back()).tail != source || q.arrow(arrows.front()).head != target)
      return false;
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
      if (q.arrow(arrows[i + 1]).head != q.arrow(arrows[i]).tail)
        return false;
    return true;
  }
};

/// p after q; requires source(p) = target(q).
inline Path compose(const Path& p, const Path& q) {
  if (p.source != q.target)
    throw std::invalid_argument("compose: endpoint mismatch (source of outer path differs from "
                                "target of inner path)");
  Path r{q.source, p.target, p.arrows};
  r.arrows.insert(r.arrows.end(), q.arrows.begin(), q.arrows.end());
  return r;
}

namespace detail {
inline bool path_less(const Quiver& q, const Path& a, const Path& b) {
  if (a.length() != b.length())
    return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    const auto& an = q.arrow(a.arrows[i]).name;
    const auto& bn = q.arrow(b.arrows[i]).name;
    if (an != bn)
      return an < bn;
  }
  return a.source < b.source;
}
}  // namespace detail

/// All paths from `source` to `target`, ordered by length then arrow names.
inline std::vector<Path> paths_between(const Quiver& q, std::size_t source, std::size_t target) {
  std::vector<Path> out;
  std::vector<Path> frontier{Path::trivial_at(source)};
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      if (p.target == target)
        out.push_back(p);
      for (auto a : q.arrows_out_of(p.target)) {
        Path e{p.source, q.arrow(a).head, {a}};
        e.arrows.insert(e.arrows.end(), p.arrows.begin(), p.arrows.end());
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(),
            [&](const Path& a, const Path& b) { return detail::path_less(q, a, b); });
  return out;
}

/// Every morphism of the free category, including trivial paths.
inline std::map<std::pair<std::size_t, std::size_t>, std::vector<Path>> enumerate_morphisms(
    const Quiver& q) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Path>> m;
  for (std::size_t s = 0; s < q.vertex_count(); ++s)
    for (std::size_t t = 0; t < q.vertex_count(); ++t) {
      auto ps = paths_between(q, s, t);
      if (!ps.empty())
        m[{s, t}] = std::move(ps);
    }
  return m;
}

inline std::size_t morphism_count(const Quiver& q) {
  std::size_t n = 0;
  for (const auto& [k, v] : enumerate_morphisms(q))
    n += v.size();
  return n;
}

}  // namespace qha
