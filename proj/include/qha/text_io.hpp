#pragma once

#include "qha/derived.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

// Text formats for quivers, representations, morphisms, complexes, chain
// maps and roofs over Rep(Q, fdVect). One declaration per line; blank lines
// and lines starting with '#' are ignored. A block ends where the next
// top-level keyword begins.
//
//   quiver A2
//   vertices 1 2
//   arrow a: 1 -> 2
//
//   rep M over A2 field Q
//   vertex 1 dim 1
//   vertex 2 dim 1
//   map a: 1
//
//   morphism f: M -> N
//   at 1: 1
//
//   complex C over A2 field Q window 0 1
//   degree 0
//   vertex 1 dim 1
//   ...
//   diff 0:
//   at 1: 1
//
//   chainmap g: C -> D
//   component 0
//   at 1: 1
//
//   roof r: C -> D
//   apex A
//   left l
//   right g
//   certificate qis degrees 0 1

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Built-in quivers: A<n> with arrows a, b, c, ... along 1 -> 2 -> ... -> n,
/// the Kronecker quiver K2, and the one-point quiver pt.
inline QuiverPtr builtin_quiver(const std::string& name) {
  if (name == "pt")
    return make_quiver("pt", {"1"}, {});
  if (name == "K2")
    return make_quiver("K2", {"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
  if (name.size() >= 2 && name[0] == 'A' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    int n = std::stoi(name.substr(1));
    if (n < 1 || n > 26)
      return nullptr;
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> as;
    for (int i = 1; i <= n; ++i)
      vs.push_back(std::to_string(i));
    for (int i = 1; i < n; ++i)
      as.emplace_back(std::string(1, static_cast<char>('a' + i - 1)), std::to_string(i), std::to_string(i + 1));
    return make_quiver(name, vs, as);
  }
  return nullptr;
}

inline FieldSpec parse_field(const std::string& tok, const std::string& next = "") {
  if (tok == "Q")
    return FieldSpec::rationals();
  if (tok == "Fp" && !next.empty())
    return FieldSpec::prime_field(std::stoull(next));
  if (tok.size() > 1 && tok[0] == 'F')
    return FieldSpec::prime_field(std::stoull(tok.substr(1)));
  throw std::invalid_argument("field: expected Q, Fp <p> or F<p>, got '" + tok + "'");
}

inline std::string field_token(const FieldSpec& f) {
  return f.is_prime_field() ? "F" + std::to_string(f.characteristic()) : "Q";
}

struct NamedRep {
  Rep1 cat;
  Rep1::Object object;
};

struct NamedMorphism {
  Rep1 cat;
  Rep1::Morphism map;
  std::string dom, cod;
};

struct NamedComplex {
  Rep1 cat;
  ComplexPtr<Rep1> complex;
};

struct NamedChainMap {
  Rep1 cat;
  ChainMap<Rep1> map;
  std::string dom, cod;
};

struct NamedRoof {
  Rep1 cat;
  Roof<Rep1> roof;
  std::string apex, left, right;
};

/// Everything read from one or more input files; names are unique per kind.
struct Workspace {
  std::map<std::string, QuiverPtr> quivers;
  std::map<std::string, NamedRep> reps;
  std::map<std::string, NamedMorphism> morphisms;
  std::map<std::string, NamedComplex> complexes;
  std::map<std::string, NamedChainMap> chainmaps;
  std::map<std::string, NamedRoof> roofs;

  QuiverPtr quiver(const std::string& name) const {
    auto it = quivers.find(name);
    if (it != quivers.end())
      return it->second;
    return builtin_quiver(name);
  }
};

namespace detail {

struct Line {
  int number;
  std::vector<std::string> tok;  // whitespace split
  std::string rest;              // text after the first ':', spaces removed
};

inline std::vector<Line> lex(std::istream& in) {
  std::vector<Line> out;
  std::string s;
  int n = 0;
  while (std::getline(in, s)) {
    ++n;
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos || s[first] == '#')
      continue;
    Line l{n, {}, {}};
    std::istringstream ss(s);
    std::string t;
    while (ss >> t)
      l.tok.push_back(t);
    auto colon = s.find(':');
    if (colon != std::string::npos)
      for (char ch : s.substr(colon + 1))
        if (ch != ' ' && ch != '\t' && ch != '\r')
          l.rest.push_back(ch);
    out.push_back(std::move(l));
  }
  return out;
}

inline std::string strip_colon(std::string s) {
  if (!s.empty() && s.back() == ':')
    s.pop_back();
  return s;
}

inline int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = std::stoi(s, &used);
  if (used != s.size())
    throw std::invalid_argument("not an integer");
  return v;
}

inline bool is_top_level(const std::string& k) {
  return k == "quiver" || k == "rep" || k == "morphism" || k == "complex" || k == "chainmap" || k == "roof";
}

class Parser {
 public:
  Parser(std::string file, std::vector<Line> lines, Workspace& ws)
      : file_(std::move(file)), lines_(std::move(lines)), ws_(ws) {}

  void run() {
    while (pos_ < lines_.size()) {
      const auto& k = lines_[pos_].tok[0];
      if (k == "quiver")
        quiver();
      else if (k == "rep")
        rep();
      else if (k == "morphism")
        morphism();
      else if (k == "complex")
        complex();
      else if (k == "chainmap")
        chainmap();
      else if (k == "roof")
        roof();
      else
        fail(lines_[pos_], "a top-level declaration (quiver, rep, morphism, complex, chainmap, roof)");
    }
  }

 private:
  [[noreturn]] void fail(const Line& l, const std::string& what) const {
    throw ParseError(file_ + ":" + std::to_string(l.number) + ": expected " + what);
  }
  [[noreturn]] void fail_at(const Line& l, const std::string& msg) const {
    throw ParseError(file_ + ":" + std::to_string(l.number) + ": " + msg);
  }

  bool more_in_block() const { return pos_ < lines_.size() && !is_top_level(lines_[pos_].tok[0]); }

  template <class M>
  void unique(const M& m, const std::string& name, const Line& l, const std::string& kind) {
    if (m.count(name))
      fail_at(l, "duplicate " + kind + " name '" + name + "'");
  }

  void quiver() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() != 2)
      fail(h, "'quiver <name>'");
    unique(ws_.quivers, h.tok[1], h, "quiver");
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> as;
    while (more_in_block()) {
      const Line& l = lines_[pos_++];
      if (l.tok[0] == "vertices") {
        vs.assign(l.tok.begin() + 1, l.tok.end());
      } else if (l.tok[0] == "arrow" && l.tok.size() == 5 && l.tok[3] == "->") {
        as.emplace_back(strip_colon(l.tok[1]), l.tok[2], l.tok[4]);
      } else {
        fail(l, "'vertices v1 v2 ...' or 'arrow <name>: <tail> -> <head>'");
      }
    }
    try {
      ws_.quivers[h.tok[1]] = make_quiver(h.tok[1], vs, as);
    } catch (const std::exception& e) {
      fail_at(h, e.what());
    }
  }

  Rep1 category(const Line& l, const std::string& qname, std::size_t field_at) {
    auto q = ws_.quiver(qname);
    if (!q)
      fail_at(l, "unknown quiver '" + qname + "'");
    if (l.tok.size() <= field_at + 1 || l.tok[field_at] != "field")
      fail(l, "'field <spec>'");
    try {
      const std::string& a = l.tok[field_at + 1];
      std::string b = l.tok.size() > field_at + 2 ? l.tok[field_at + 2] : "";
      return Rep1(q, FdVect(parse_field(a, a == "Fp" ? b : "")));
    } catch (const std::exception& e) {
      fail_at(l, e.what());
    }
  }

  // vertex/map lines up to the next 'degree', 'diff' or top-level keyword.
  Rep1::Object rep_body(const Rep1& c, const Line& header) {
    const Quiver& q = c.quiver();
    std::vector<std::size_t> dims(q.vertex_count(), 0);
    std::map<std::size_t, std::pair<std::string, const Line*>> maps;
    while (more_in_block() && lines_[pos_].tok[0] != "degree" && lines_[pos_].tok[0] != "diff") {
      const Line& l = lines_[pos_++];
      if (l.tok[0] == "vertex" && l.tok.size() == 4 && l.tok[2] == "dim") {
        auto v = q.find_vertex(l.tok[1]);
        if (!v)
          fail_at(l, "unknown vertex '" + l.tok[1] + "'");
        int d = -1;
        try {
          d = to_int(l.tok[3]);
        } catch (const std::exception&) {
        }
        if (d < 0)
          fail(l, "a non-negative dimension after 'dim'");
        dims[*v] = static_cast<std::size_t>(d);
      } else if (l.tok[0] == "map" && l.tok.size() >= 2) {
        auto a = q.find_arrow(strip_colon(l.tok[1]));
        if (!a)
          fail_at(l, "unknown arrow '" + strip_colon(l.tok[1]) + "'");
        maps[*a] = {l.rest, &l};
      } else {
        fail(l, "'vertex <v> dim <d>' or 'map <arrow>: <matrix>'");
      }
    }
    std::vector<VectSpace> vs;
    for (auto d : dims)
      vs.push_back({d});
    std::vector<Mat> as;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
      std::pair<std::size_t, std::size_t> shape{dims[q.arrow(a).head], dims[q.arrow(a).tail]};
      auto it = maps.find(a);
      if (it == maps.end()) {
        if (shape.first * shape.second != 0)
          fail_at(header, "missing 'map " + q.arrow(a).name + ":' line");
        as.push_back(Mat(c.field(), shape.first, shape.second));
        continue;
      }
      try {
        as.push_back(parse_matrix(c.field(), it->second.first, shape));
      } catch (const std::exception& e) {
        fail_at(*it->second.second, e.what());
      }
    }
    try {
      return c.make_object(std::move(vs), std::move(as));
    } catch (const std::exception& e) {
      fail_at(header, e.what());
    }
  }

  // at lines up to the next non-'at' line.
  Rep1::Morphism morphism_body(const Rep1& c, const Rep1::Object& x, const Rep1::Object& y, const Line& header) {
    const Quiver& q = c.quiver();
    std::map<std::size_t, std::pair<std::string, const Line*>> at;
    while (more_in_block() && lines_[pos_].tok[0] == "at") {
      const Line& l = lines_[pos_++];
      if (l.tok.size() < 2)
        fail(l, "'at <vertex>: <matrix>'");
      auto v = q.find_vertex(strip_colon(l.tok[1]));
      if (!v)
        fail_at(l, "unknown vertex '" + strip_colon(l.tok[1]) + "'");
      at[*v] = {l.rest, &l};
    }
    std::vector<Mat> comp;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) {
      std::pair<std::size_t, std::size_t> shape{y.vertex[v].dim, x.vertex[v].dim};
      auto it = at.find(v);
      if (it == at.end()) {
        if (shape.first * shape.second != 0)
          fail_at(header, "missing 'at " + q.vertex_name(v) + ":' line");
        comp.push_back(Mat(c.field(), shape.first, shape.second));
        continue;
      }
      try {
        comp.push_back(parse_matrix(c.field(), it->second.first, shape));
      } catch (const std::exception& e) {
        fail_at(*it->second.second, e.what());
      }
    }
    try {
      return c.make_map(x, y, std::move(comp));
    } catch (const std::exception& e) {
      fail_at(header, e.what());
    }
  }

  void rep() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() < 6 || h.tok[2] != "over")
      fail(h, "'rep <name> over <quiver> field <spec>'");
    unique(ws_.reps, h.tok[1], h, "rep");
    Rep1 c = category(h, h.tok[3], 4);
    auto obj = rep_body(c, h);
    if (more_in_block())
      fail(lines_[pos_], "'vertex' or 'map' inside rep " + h.tok[1]);
    ws_.reps.emplace(h.tok[1], NamedRep{c, std::move(obj)});
  }

  void morphism() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() != 5 || h.tok[3] != "->")
      fail(h, "'morphism <name>: <rep> -> <rep>'");
    std::string name = strip_colon(h.tok[1]);
    unique(ws_.morphisms, name, h, "morphism");
    auto x = ws_.reps.find(h.tok[2]);
    auto y = ws_.reps.find(h.tok[4]);
    if (x == ws_.reps.end() || y == ws_.reps.end())
      fail_at(h, "unknown rep '" + (x == ws_.reps.end() ? h.tok[2] : h.tok[4]) + "'");
    if (!(x->second.cat == y->second.cat))
      fail_at(h, "reps live in different categories");
    auto m = morphism_body(x->second.cat, x->second.object, y->second.object, h);
    if (more_in_block())
      fail(lines_[pos_], "'at <vertex>: <matrix>' inside morphism " + name);
    ws_.morphisms.emplace(name, NamedMorphism{x->second.cat, std::move(m), h.tok[2], h.tok[4]});
  }

  void complex() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() < 9 || h.tok[2] != "over")
      fail(h, "'complex <name> over <quiver> field <spec> window <lo> <hi>'");
    unique(ws_.complexes, h.tok[1], h, "complex");
    Rep1 c = category(h, h.tok[3], 4);
    std::size_t w = h.tok[5] == "Fp" ? 7 : 6;
    if (h.tok.size() != w + 3 || h.tok[w] != "window")
      fail(h, "'window <lo> <hi>'");
    int lo = 0, hi = 0;
    try {
      lo = to_int(h.tok[w + 1]);
      hi = to_int(h.tok[w + 2]);
    } catch (const std::exception&) {
      fail(h, "integer window bounds");
    }
    if (hi < lo)
      fail_at(h, "window upper bound below lower bound");
    std::map<int, Rep1::Object> objs;
    std::map<int, std::pair<std::size_t, const Line*>> diffs;  // line index of the diff header
    while (more_in_block()) {
      const Line& l = lines_[pos_];
      if (l.tok[0] == "degree" && l.tok.size() == 2) {
        ++pos_;
        int d = 0;
        try {
          d = to_int(l.tok[1]);
        } catch (const std::exception&) {
          fail(l, "an integer degree");
        }
        if (d < lo || d > hi)
          fail_at(l, "degree " + std::to_string(d) + " outside the window");
        objs[d] = rep_body(c, l);
      } else if (l.tok[0] == "diff" && l.tok.size() == 2) {
        ++pos_;
        int d = 0;
        try {
          d = to_int(strip_colon(l.tok[1]));
        } catch (const std::exception&) {
          fail(l, "an integer degree after 'diff'");
        }
        if (d < lo || d >= hi)
          fail_at(l, "diff " + std::to_string(d) + " outside the window");
        diffs[d] = {pos_, &l};
        while (more_in_block() && lines_[pos_].tok[0] == "at")
          ++pos_;
      } else {
        fail(l, "'degree <i>' or 'diff <i>:'");
      }
    }
    std::vector<Rep1::Object> ob;
    for (int i = lo; i <= hi; ++i)
      ob.push_back(objs.count(i) ? objs.at(i) : c.zero_object());
    std::vector<Rep1::Morphism> df;
    const std::size_t resume = pos_;
    for (int i = lo; i < hi; ++i) {
      auto it = diffs.find(i);
      if (it == diffs.end()) {
        if (c.dim(ob[i - lo]) * c.dim(ob[i - lo + 1]) != 0)
          fail_at(h, "missing 'diff " + std::to_string(i) + ":' block");
        df.push_back(c.zero_map(ob[i - lo], ob[i - lo + 1]));
        continue;
      }
      pos_ = it->second.first;
      df.push_back(morphism_body(c, ob[i - lo], ob[i - lo + 1], *it->second.second));
    }
    pos_ = resume;
    ComplexOps<Rep1> ops(c);
    try {
      ws_.complexes.emplace(h.tok[1], NamedComplex{c, std::make_shared<const Complex<Rep1>>(ops.make(lo, ob, df))});
    } catch (const std::exception& e) {
      fail_at(h, e.what());
    }
  }

  void chainmap() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() != 5 || h.tok[3] != "->")
      fail(h, "'chainmap <name>: <complex> -> <complex>'");
    std::string name = strip_colon(h.tok[1]);
    unique(ws_.chainmaps, name, h, "chainmap");
    auto x = ws_.complexes.find(h.tok[2]);
    auto y = ws_.complexes.find(h.tok[4]);
    if (x == ws_.complexes.end() || y == ws_.complexes.end())
      fail_at(h, "unknown complex '" + (x == ws_.complexes.end() ? h.tok[2] : h.tok[4]) + "'");
    const Rep1& c = x->second.cat;
    ComplexOps<Rep1> ops(c);
    std::map<int, Rep1::Morphism> comps;
    while (more_in_block()) {
      const Line& l = lines_[pos_++];
      if (l.tok[0] != "component" || l.tok.size() != 2)
        fail(l, "'component <degree>'");
      int d = 0;
      try {
        d = to_int(l.tok[1]);
      } catch (const std::exception&) {
        fail(l, "an integer degree after 'component'");
      }
      comps[d] = morphism_body(c, ops.object(*x->second.complex, d), ops.object(*y->second.complex, d), l);
    }
    try {
      auto m = ops.make_map(x->second.complex, y->second.complex, comps);
      ws_.chainmaps.emplace(name, NamedChainMap{c, std::move(m), h.tok[2], h.tok[4]});
    } catch (const std::exception& e) {
      fail_at(h, e.what());
    }
  }

  void roof() {
    const Line& h = lines_[pos_++];
    if (h.tok.size() != 5 || h.tok[3] != "->")
      fail(h, "'roof <name>: <complex> -> <complex>'");
    std::string name = strip_colon(h.tok[1]);
    unique(ws_.roofs, name, h, "roof");
    std::map<std::string, const Line*> fields;
    bool claimed = false;
    const Line* cert = nullptr;
    while (more_in_block()) {
      const Line& l = lines_[pos_++];
      if ((l.tok[0] == "apex" || l.tok[0] == "left" || l.tok[0] == "right") && l.tok.size() == 2) {
        fields[l.tok[0]] = &l;
      } else if (l.tok[0] == "certificate" && l.tok.size() >= 2) {
        claimed = l.tok[1] == "qis";
        cert = &l;
      } else {
        fail(l, "'apex <complex>', 'left <chainmap>', 'right <chainmap>' or 'certificate qis degrees ...'");
      }
    }
    for (const char* k : {"apex", "left", "right"})
      if (!fields.count(k))
        fail_at(h, std::string("roof is missing its '") + k + "' line");
    auto l = ws_.chainmaps.find(fields["left"]->tok[1]);
    auto r = ws_.chainmaps.find(fields["right"]->tok[1]);
    if (l == ws_.chainmaps.end())
      fail_at(*fields["left"], "unknown chainmap '" + fields["left"]->tok[1] + "'");
    if (r == ws_.chainmaps.end())
      fail_at(*fields["right"], "unknown chainmap '" + fields["right"]->tok[1] + "'");
    const std::string& apex = fields["apex"]->tok[1];
    if (l->second.dom != apex || r->second.dom != apex)
      fail_at(h, "roof legs must start at the apex '" + apex + "'");
    if (l->second.cod != h.tok[2] || r->second.cod != h.tok[4])
      fail_at(h, "roof legs do not end at " + h.tok[2] + " and " + h.tok[4]);
    ComplexOps<Rep1> ops(l->second.cat);
    try {
      auto rf = make_roof(ops, l->second.map, r->second.map);
      if (cert && !claimed)
        fail_at(*cert, "stored certificate does not claim a quasi-isomorphism");
      ws_.roofs.emplace(name, NamedRoof{l->second.cat, std::move(rf), apex, l->first, r->first});
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail_at(h, e.what());
    }
  }

  std::string file_;
  std::vector<Line> lines_;
  Workspace& ws_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline void parse_into(Workspace& ws, std::istream& in, const std::string& file = "<input>") {
  detail::Parser(file, detail::lex(in), ws).run();
}

inline Workspace parse_text(const std::string& text, const std::string& file = "<input>") {
  Workspace ws;
  std::istringstream in(text);
  parse_into(ws, in, file);
  return ws;
}

inline void load_file(Workspace& ws, const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path + ": cannot open file");
  parse_into(ws, in, path);
}

// ---------------------------------------------------------------------------
// Writers. Each output re-parses to a structurally equal value.

inline std::string write_quiver(const Quiver& q) {
  std::ostringstream os;
  os << "quiver " << q.name() << "\nvertices";
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    os << " " << q.vertex_name(v);
  os << "\n";
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    os << "arrow " << q.arrow(a).name << ": " << q.vertex_name(q.arrow(a).tail) << " -> "
       << q.vertex_name(q.arrow(a).head) << "\n";
  return os.str();
}

namespace detail {

inline void write_rep_body(std::ostream& os, const Rep1& c, const Rep1::Object& x) {
  const Quiver& q = c.quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v)
    os << "vertex " << q.vertex_name(v) << " dim " << x.vertex[v].dim << "\n";
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    os << "map " << q.arrow(a).name << ": " << x.arrow[a].to_string() << "\n";
}

inline void write_morphism_body(std::ostream& os, const Rep1& c, const Rep1::Morphism& f) {
  for (std::size_t v = 0; v < c.quiver().vertex_count(); ++v)
    os << "at " << c.quiver().vertex_name(v) << ": " << f.comp[v].to_string() << "\n";
}

inline std::string over(const Rep1& c) { return " over " + c.quiver().name() + " field " + field_token(c.field()); }

}  // namespace detail

inline std::string write_rep(const std::string& name, const Rep1& c, const Rep1::Object& x) {
  std::ostringstream os;
  os << "rep " << name << detail::over(c) << "\n";
  detail::write_rep_body(os, c, x);
  return os.str();
}

inline std::string write_morphism(const std::string& name, const std::string& dom, const std::string& cod,
                                  const Rep1& c, const Rep1::Morphism& f) {
  std::ostringstream os;
  os << "morphism " << name << ": " << dom << " -> " << cod << "\n";
  detail::write_morphism_body(os, c, f);
  return os.str();
}

/// An empty complex is written with the window 0 0 and a zero object.
inline std::string write_complex(const std::string& name, const Rep1& c, const Complex<Rep1>& x) {
  std::ostringstream os;
  int lo = x.empty() ? 0 : x.lo, hi = x.empty() ? 0 : x.hi();
  os << "complex " << name << detail::over(c) << " window " << lo << " " << hi << "\n";
  ComplexOps<Rep1> ops(c);
  for (int i = lo; i <= hi; ++i) {
    os << "degree " << i << "\n";
    detail::write_rep_body(os, c, ops.object(x, i));
  }
  for (int i = lo; i < hi; ++i) {
    os << "diff " << i << ":\n";
    detail::write_morphism_body(os, c, ops.differential(x, i));
  }
  return os.str();
}

inline std::string write_chainmap(const std::string& name, const std::string& dom, const std::string& cod,
                                  const Rep1& c, const ChainMap<Rep1>& f) {
  std::ostringstream os;
  os << "chainmap " << name << ": " << dom << " -> " << cod << "\n";
  for (std::size_t k = 0; k < f.comp.size(); ++k) {
    os << "component " << f.lo + static_cast<int>(k) << "\n";
    detail::write_morphism_body(os, c, f.comp[k]);
  }
  return os.str();
}

/// Apex complex, both legs, then the roof record with its certificate.
/// Source and target complexes are referenced by name and must be written
/// separately.
inline std::string write_roof(const std::string& name, const std::string& src, const std::string& tgt,
                              const Rep1& c, const Roof<Rep1>& r) {
  std::ostringstream os;
  const std::string apex = name + ".apex", left = name + ".left", right = name + ".right";
  os << write_complex(apex, c, r.apex()) << "\n";
  os << write_chainmap(left, apex, src, c, r.left) << "\n";
  os << write_chainmap(right, apex, tgt, c, r.right) << "\n";
  os << "roof " << name << ": " << src << " -> " << tgt << "\napex " << apex << "\nleft " << left << "\nright "
     << right << "\ncertificate " << (r.cert.is_qis ? "qis" : "none") << " degrees";
  for (const auto& d : r.cert.degrees)
    os << " " << d.degree;
  os << "\n";
  return os.str();
}

}  // namespace qha
