// qha: command-line front end for the quiver homological algebra library.
//
// Values that have a file format are printed in it (descriptive lines start
// with '#', so the whole output re-parses); scalar answers are key=value.
// Exit status is 0 for every computed result, including recorded
// disagreements, and nonzero for input or validation errors.

#include <qha/induced.hpp>
#include <qha/text_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace qha;

namespace {

struct Options {
  std::vector<std::string> field{"Q"};
  std::uint64_t seed = 1;
  std::vector<std::string> in;
  std::string out;
  std::size_t bound = kDefaultResolutionCap;
  std::string quiver = "A2";
  std::string base = "A2";
  std::string suite = "stalks";
  std::string shifts = "-1..2";
  std::string left, right, map, name;
  std::optional<int> degree;
  std::string vertex = "1";
  std::size_t dim = 1;
  std::string side = "proj";
  std::string tilt = "morita";
  int trials = 30;
};

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Env {
 public:
  explicit Env(const Options& o) : o_(o) {
    field_ = parse_field(o.field.at(0), o.field.size() > 1 ? o.field[1] : "");
    for (const auto& f : o.in)
      load_file(ws_, f);
  }

  const Options& opt() const { return o_; }
  const Workspace& ws() const { return ws_; }
  const FieldSpec& field() const { return field_; }

  QuiverPtr quiver(const std::string& name) const {
    auto q = ws_.quiver(name);
    if (!q)
      throw CliError("unknown quiver '" + name + "' (built-ins: A<n>, K2, pt)");
    return q;
  }

  Rep1 cat() const { return Rep1(quiver(o_.quiver), FdVect(field_)); }

  /// A rep from the workspace, or a built-in atom P<v>, S<v>, I<v>.
  NamedRep rep(const std::string& name) const {
    if (name.empty())
      throw CliError("missing object name (--left/--right)");
    if (auto it = ws_.reps.find(name); it != ws_.reps.end())
      return it->second;
    Rep1 c = cat();
    if (auto a = atom(c, name))
      return {c, *a};
    throw CliError("unknown rep '" + name + "' (not in the inputs, and not P<v>, S<v> or I<v> on " + o_.quiver + ")");
  }

  /// A complex from the workspace, or the stalk at degree 0 of a rep.
  NamedComplex complex(const std::string& name) const {
    if (auto it = ws_.complexes.find(name); it != ws_.complexes.end())
      return it->second;
    if (name.empty())
      return only(ws_.complexes, "complex");
    auto r = rep(name);
    ComplexOps<Rep1> ops(r.cat);
    return {r.cat, std::make_shared<const Complex<Rep1>>(ops.stalk(r.object))};
  }

  template <class M>
  static typename M::mapped_type pick(const M& m, const std::string& name, const std::string& kind) {
    if (name.empty())
      return only(m, kind);
    auto it = m.find(name);
    if (it == m.end())
      throw CliError("unknown " + kind + " '" + name + "'");
    return it->second;
  }

  template <class M>
  static typename M::mapped_type only(const M& m, const std::string& kind) {
    if (m.size() != 1)
      throw CliError("name a " + kind + " (the inputs define " + std::to_string(m.size()) + ")");
    return m.begin()->second;
  }

  static std::optional<Rep1::Object> atom(const Rep1& c, const std::string& name) {
    if (name.size() < 2)
      return std::nullopt;
    auto v = c.quiver().find_vertex(name.substr(1));
    if (!v)
      return std::nullopt;
    switch (name[0]) {
      case 'P': return c.indecomposable_projectives()[*v];
      case 'S': return c.simples()[*v];
      case 'I': return c.indecomposable_injectives()[*v];
      default: return std::nullopt;
    }
  }

 private:
  const Options& o_;
  Workspace ws_;
  FieldSpec field_;
};

std::pair<int, int> parse_shifts(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int n = std::stoi(s);
      return {n, n};
    }
    int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
    if (hi < lo)
      throw CliError("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw CliError("--shifts: expected a..b with a <= b, got '" + s + "'");
  }
}

std::string dims_text(const Rep1& c, const Rep1::Object& x) {
  std::string s;
  for (std::size_t v = 0; v < c.quiver().vertex_count(); ++v)
    s += (s.empty() ? "" : " ") + c.quiver().vertex_name(v) + ":" + std::to_string(x.vertex[v].dim);
  return s;
}

/// The quiver declaration, unless the parser resolves the name by itself.
std::string quiver_block(const Quiver& q) {
  auto b = builtin_quiver(q.name());
  return b && *b == q ? "" : write_quiver(q) + "\n";
}

void same_category(const Rep1& a, const Rep1& b) {
  if (!(a == b))
    throw CliError("objects live in different categories (" + a.name() + " vs " + b.name() + ")");
}

// -- tilting modules --------------------------------------------------------

Rep1::Object tilting_module(const Env& env, const Rep1& c) {
  const std::string& t = env.opt().tilt;
  if (t == "morita")
    return projective_generator(c);
  if (t == "apr")
    return apr_tilt(c);
  std::vector<Rep1::Object> parts;
  std::stringstream ss(t);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    auto a = Env::atom(c, tok);
    if (!a)
      throw CliError("--tilt: unknown summand '" + tok + "' (use morita, apr, or a sum like P1+S1)");
    parts.push_back(*a);
  }
  return c.direct_sum_n(parts).sum;
}

std::string tilt_name(const Options& o) { return "Hom(T,-) T=" + o.tilt; }

// -- commands -----------------------------------------------------------------

void quiver_check(const Env& env, std::ostream& os) {
  const auto& name = env.opt().name;
  const auto& defined = env.ws().quivers;
  QuiverPtr q = name.empty() && defined.size() == 1 ? defined.begin()->second
                                                    : env.quiver(name.empty() ? env.opt().quiver : name);
  std::string topo;
  for (auto v : q->topological_order())
    topo += " " + q->vertex_name(v);
  os << "# acyclic=true topological-order" << topo << " morphisms=" << morphism_count(*q) << "\n"
     << write_quiver(*q);
}

void rep_hom(const Env& env, std::ostream& os) {
  auto x = env.rep(env.opt().left), y = env.rep(env.opt().right);
  same_category(x.cat, y.cat);
  os << "dim=" << x.cat.hom_basis(x.object, y.object).size() << "\n";
}

void rep_kernel(const Env& env, std::ostream& os, bool cokernel) {
  auto f = Env::pick(env.ws().morphisms, env.opt().map, "morphism");
  const Rep1& c = f.cat;
  std::string name = env.opt().map.empty() ? "f" : env.opt().map;
  os << quiver_block(c.quiver()) << write_rep(f.dom, c, *f.map.dom) << write_rep(f.cod, c, *f.map.cod);
  if (!cokernel) {
    auto k = c.kernel(f.map);
    os << "# kernel of " << name << ": dims " << dims_text(c, k.object) << "\n"
       << write_rep("ker." + name, c, k.object) << write_morphism("ker." + name + ".incl", "ker." + name, f.dom, c, k.incl);
  } else {
    auto k = c.cokernel(f.map);
    os << "# cokernel of " << name << ": dims " << dims_text(c, k.object) << "\n"
       << write_rep("coker." + name, c, k.object)
       << write_morphism("coker." + name + ".proj", f.cod, "coker." + name, c, k.proj);
  }
}

void rep_sum(const Env& env, std::ostream& os) {
  auto x = env.rep(env.opt().left), y = env.rep(env.opt().right);
  same_category(x.cat, y.cat);
  auto s = x.cat.direct_sum(x.object, y.object);
  os << "# " << env.opt().left << " (+) " << env.opt().right << ": dims " << dims_text(x.cat, s.sum) << "\n"
     << quiver_block(x.cat.quiver()) << write_rep("sum", x.cat, s.sum);
}

void rep_embed(const Env& env, std::ostream& os) {
  Rep1 c = env.cat();
  auto v = c.quiver().find_vertex(env.opt().vertex);
  if (!v)
    throw CliError("unknown vertex '" + env.opt().vertex + "'");
  auto x = c.embed_at_vertex(*v, VectSpace{env.opt().dim});
  os << "# k^" << env.opt().dim << " placed at vertex " << env.opt().vertex << "\n"
     << quiver_block(c.quiver()) << write_rep("embed", c, x);
}

void complex_cohomology(const Env& env, std::ostream& os) {
  auto nc = env.complex(env.opt().name);
  ComplexOps<Rep1> ops(nc.cat);
  const auto& x = *nc.complex;
  int lo = x.empty() ? 0 : x.lo, hi = x.empty() ? 0 : x.hi();
  if (env.opt().degree)
    lo = hi = *env.opt().degree;
  os << quiver_block(nc.cat.quiver());
  for (int i = lo; i <= hi; ++i) {
    auto h = ops.cohomology(x, i).object;
    os << "# H^" << i << " dims " << dims_text(nc.cat, h) << "\n"
       << write_rep("H" + std::to_string(i), nc.cat, h);
  }
}

void complex_qis(const Env& env, std::ostream& os) {
  auto f = Env::pick(env.ws().chainmaps, env.opt().map, "chainmap");
  ComplexOps<Rep1> ops(f.cat);
  auto cert = ops.quasi_iso_certificate(f.map);
  os << "qis=" << (cert.is_qis ? "true" : "false") << "\n";
  for (const auto& d : cert.degrees) {
    os << "# H^" << d.degree << (d.iso ? " iso" : " not iso");
    for (const auto& w : d.witness)
      os << " " << w.label << ":rank " << w.rank << " of " << w.rows << "x" << w.cols;
    os << "\n";
  }
  os << "# certificate recheck " << (cert.recheck() ? "ok" : "FAIL") << "\n";
}

void complex_transpose(const Env& env, std::ostream& os) {
  auto nc = env.complex(env.opt().name);
  ComplexOps<Rep1> ops(nc.cat);
  ComplexOps<FdVect> bops(nc.cat.base());
  auto t = transpose(ops, *nc.complex);
  const Quiver& q = *t.quiver;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto& x = t.vertex[v];
    os << "vertex " << q.vertex_name(v) << ":";
    if (x.empty()) {
      os << " zero\n";
      continue;
    }
    os << " window " << x.lo << " " << x.hi() << " dims";
    for (const auto& o : x.obj)
      os << " " << o.dim;
    for (std::size_t i = 0; i < x.diff.size(); ++i)
      os << " diff " << x.lo + static_cast<int>(i) << ": " << x.diff[i].to_string();
    os << "\n";
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    os << "arrow " << q.arrow(a).name << ":";
    const auto& f = t.arrow[a];
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      os << " component " << f.lo + static_cast<int>(k) << ": " << f.comp[k].to_string();
    os << "\n";
  }
  bool back = transpose_inv(ops, t) == *nc.complex && transpose(ops, transpose_inv(ops, t)) == t;
  os << "roundtrip=" << (back ? "ok" : "FAIL") << "\n";
}

void derived_hom(const Env& env, std::ostream& os) {
  auto x = env.complex(env.opt().left), y = env.complex(env.opt().right);
  same_category(x.cat, y.cat);
  ComplexOps<Rep1> ops(x.cat);
  int n = env.opt().degree.value_or(0);
  auto h = hom_derived(ops, *x.complex, *y.complex, n);
  auto inj = hom_derived_injective(ops, *x.complex, *y.complex, n);
  os << "dim=" << h.dim << "\n"
     << "# injective route dim=" << inj << (inj == h.dim ? " agrees" : " DISAGREES") << "\n";
}

void derived_resolve(const Env& env, std::ostream& os) {
  auto x = env.complex(env.opt().left);
  ComplexOps<Rep1> ops(x.cat);
  const std::string name = env.opt().left.empty() ? "X" : env.opt().left;
  bool proj = env.opt().side != "inj";
  if (env.opt().side != "inj" && env.opt().side != "proj")
    throw CliError("--side: expected proj or inj");
  auto r = proj ? projective_resolution(ops, x.complex, static_cast<int>(env.opt().bound))
                : injective_resolution(ops, x.complex, static_cast<int>(env.opt().bound));
  const std::string rn = (proj ? "P." : "I.") + name;
  os << "# " << (proj ? "projective" : "injective") << " resolution, length " << resolution_length(*r.complex)
     << ", comparison map qis=" << (ops.is_quasi_iso(r.map) ? "true" : "false") << "\n"
     << quiver_block(x.cat.quiver()) << write_complex(name, x.cat, *x.complex) << "\n"
     << write_complex(rn, x.cat, *r.complex) << "\n"
     << (proj ? write_chainmap("q", rn, name, x.cat, r.map) : write_chainmap("j", name, rn, x.cat, r.map));
}

void write_tobject(const TObject<FdVect>& t, std::ostream& os) {
  const Quiver& q = *t.quiver;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    const auto& x = t.vertex[v];
    os << "vertex " << q.vertex_name(v) << ":";
    if (x.empty())
      os << " zero";
    else
      for (int i = x.lo; i <= x.hi(); ++i)
        os << " C^" << i << "=" << x.obj[i - x.lo].dim;
    os << "\n";
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    os << "arrow " << q.arrow(a).name << ": roof with apex of total dim " << [&] {
      std::size_t d = 0;
      for (const auto& o : t.arrow[a].apex().obj)
        d += o.dim;
      return d;
    }() << ", left leg qis=" << (t.arrow[a].cert.is_qis ? "true" : "false") << "\n";
}

void derived_T(const Env& env, std::ostream& os) {
  auto x = env.complex(env.opt().left);
  ComplexOps<Rep1> ops(x.cat);
  ComplexOps<FdVect> bops(x.cat.base());
  auto t = apply_T(ops, *x.complex);
  os << "# T(" << (env.opt().left.empty() ? "X" : env.opt().left) << ") over " << x.cat.quiver().name() << "\n";
  write_tobject(t, os);
  os << "end-dim=" << hom_QD(bops, t, t).dim << "\n";
}

void derived_strictify(const Env& env, std::ostream& os) {
  auto x = env.complex(env.opt().left);
  ComplexOps<Rep1> ops(x.cat);
  ComplexOps<FdVect> bops(x.cat.base());
  auto t = apply_T(ops, *x.complex);
  auto s = strictify(ops, t, static_cast<int>(env.opt().bound));
  os << "status=" << s.status << "\n";
  if (s.complex) {
    bool iso = is_T_isomorphism(bops, apply_T(ops, *s.complex), t, s.witness);
    os << "# T-isomorphic to T(input): " << (iso ? "verified" : "FAILED") << "\n"
       << quiver_block(x.cat.quiver()) << write_complex("strict", x.cat, *s.complex);
  }
}

void functor_build_tilt(const Env& env, std::ostream& os) {
  Rep1 c = env.cat();
  Rng rng(env.opt().seed);
  auto t = tilting_module(env, c);
  auto f = build_tilting_functor(c, t, rng, tilt_name(env.opt()));
  const auto& cert = f.cert;
  os << "# functor " << f.spec.name << " on " << c.name() << "\n"
     << "# projective-dimension=" << cert.projective_dimension << " self-ext1=" << cert.self_ext1
     << " summands=" << cert.summands << " vertices=" << cert.vertices
     << " left-exact=" << (f.spec.is_left_exact ? "true" : "false") << "\n";
  for (std::size_t k = 0; k < f.summands.size(); ++k)
    os << "# T" << k + 1 << " dims " << dims_text(c, f.summands[k]) << "\n";
  const Rep1& e = f.spec.target;
  os << write_quiver(e.quiver()) << "\n";
  for (const auto& s : stalk_suite(c, rng)) {
    auto img = f.spec(s.object);
    os << write_rep("F" + s.name, e, img);
  }
}

void functor_derive(const Env& env, std::ostream& os) {
  auto x = env.complex(env.opt().left);
  Rng rng(env.opt().seed);
  auto f = build_tilting_functor(x.cat, tilting_module(env, x.cat), rng, tilt_name(env.opt()));
  auto df = make_derived(f.spec, rng, static_cast<int>(env.opt().bound));
  auto [res, rx] = derive_base(df, *x.complex);
  const Rep1& e = f.spec.target;
  ComplexOps<Rep1> eops(e);
  os << "# R" << f.spec.name << " via an injective resolution of length " << resolution_length(*res.complex) << "\n";
  for (int i = rx->empty() ? 0 : rx->lo; !rx->empty() && i <= rx->hi(); ++i)
    os << "# H^" << i << " dims " << dims_text(e, eops.cohomology(*rx, i).object) << "\n";
  os << write_quiver(e.quiver()) << "\n" << write_complex("RF", e, *rx);
}

template <AbelianBase A, AbelianBase B>
void run_square22(const DerivedFunctorSpec<A, B>& df, const RepCat<A>& rc, int trials, std::size_t max_dim, Rng& rng,
                  std::ostream& os) {
  ComplexOps<RepCat<A>> ops(rc);
  int passed = 0;
  auto flags = [](const std::vector<bool>& v) {
    std::string s;
    for (bool b : v)
      s += b ? '1' : '0';
    return s;
  };
  for (int k = 0; k < trials; ++k) {
    auto x = std::make_shared<const Complex<RepCat<A>>>(ops.random_complex(rng, 0, 2, max_dim));
    auto r = check_square22(df, rc, *x);
    passed += r.passed() ? 1 : 0;
    os << "trial " << k << ": vertex-qis=" << flags(r.vertex_qis) << " cohomology=" << flags(r.vertex_cohomology)
       << " arrows=" << (r.arrows ? "ok" : "FAIL") << (r.passed() ? " pass" : " FAIL") << "\n";
  }
  os << "passed=" << passed << "/" << trials << "\n";
}

void functor_square22(const Env& env, std::ostream& os) {
  Rng rng(env.opt().seed);
  const auto& o = env.opt();
  os << "# square22 functor=" << o.tilt << " quiver=" << o.quiver << " field=" << env.field().to_string()
     << " seed=" << o.seed << "\n";
  if (o.tilt == "identity" || o.tilt == "double") {
    FdVect k(env.field());
    auto df = make_derived(o.tilt == "identity" ? identity_functor(k) : power_functor(k, 2), rng);
    run_square22(df, env.cat(), o.trials, 2, rng, os);
    return;
  }
  Rep1 a(env.quiver(o.base), FdVect(env.field()));
  auto f = build_tilting_functor(a, tilting_module(env, a), rng, tilt_name(o));
  auto df = make_derived(f.spec, rng);
  run_square22(df, Rep2(env.quiver(o.quiver), a), o.trials, 1, rng, os);
}

template <class C>
std::vector<Named<C>> choose_suite(const C& c, const std::string& which, Rng& rng) {
  auto all = stalk_suite(c, rng);
  if (which == "stalks")
    return all;
  char prefix = which == "projectives" ? 'P' : which == "simples" ? 'S' : which == "injectives" ? 'I' : 0;
  if (!prefix)
    throw CliError("--suite: expected stalks, projectives, simples or injectives");
  std::vector<Named<C>> out;
  for (auto& s : all)
    if (s.name[0] == prefix)
      out.push_back(std::move(s));
  return out;
}

void experiment_21(const Env& env, std::ostream& os) {
  const auto& o = env.opt();
  Rng rng(o.seed);
  auto [lo, hi] = parse_shifts(o.shifts);
  Rep1 c = env.cat();
  os << experiment_thm21(c, choose_suite(c, o.suite, rng), lo, hi, o.seed, o.suite).render();
}

void experiment_24(const Env& env, std::ostream& os) {
  const auto& o = env.opt();
  Rng rng(o.seed);
  auto [lo, hi] = parse_shifts(o.shifts);
  Rep1 a(env.quiver(o.base), FdVect(env.field()));
  auto f = build_tilting_functor(a, tilting_module(env, a), rng, tilt_name(o));
  auto df = make_derived(f.spec, rng);
  Rep2 qa(env.quiver(o.quiver), a);
  os << experiment_thm24(qa, df, choose_suite(qa, o.suite, rng), lo, hi, o.bound, o.seed, rng, o.suite).render();
}

// CLI11 reads "-1..2" or "-1" after an option as another flag; glue such
// values to their option.
std::vector<std::string> normalize_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if ((a == "--shifts" || a == "--degree") && i + 1 < argc && argv[i + 1][0] == '-') {
      args.push_back(a + "=" + argv[++i]);
      continue;
    }
    args.push_back(a);
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homological algebra over quiver representations", "qha"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "Q, F<p> or 'Fp <p>'")->expected(1, 2);
  app.add_option("--seed", o.seed, "seed for every random choice");
  app.add_option("--in", o.in, "input file (repeatable)");
  app.add_option("--out", o.out, "write output here instead of stdout");
  app.add_option("--bound", o.bound, "search cap: resolution length or probe dimension");
  app.add_option("--quiver", o.quiver, "quiver name (file-defined or A<n>, K2, pt)");
  app.add_option("--base", o.base, "quiver of the base category for decorated experiments");
  app.add_option("--suite", o.suite, "stalks, projectives, simples or injectives");
  app.add_option("--shifts", o.shifts, "shift range a..b");
  app.add_option("--left", o.left, "first object: input name or P<v>, S<v>, I<v>");
  app.add_option("--right", o.right, "second object");
  app.add_option("--map", o.map, "morphism or chain map name");
  app.add_option("--name", o.name, "complex or quiver name");
  app.add_option("--degree", o.degree, "degree or shift");
  app.add_option("--vertex", o.vertex, "vertex for rep embed");
  app.add_option("--dim", o.dim, "dimension for rep embed");
  app.add_option("--side", o.side, "proj or inj for derived resolve");
  app.add_option("--tilt", o.tilt, "morita, apr, a sum such as P1+S1; square22 also takes identity, double");
  app.add_option("--trials", o.trials, "random complexes for functor square22");

  using Cmd = std::function<void(const Env&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Cmd>> cmds;
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, const std::string& help, Cmd cmd) {
    cmds.emplace_back(g->add_subcommand(name, help), std::move(cmd));
  };

  auto* q = group("quiver", "quiver operations");
  leaf(q, "check", "validate a quiver and count its paths", quiver_check);
  auto* r = group("rep", "representations");
  leaf(r, "hom", "dim Hom(left, right)", rep_hom);
  leaf(r, "kernel", "kernel of --map", [](const Env& e, std::ostream& os) { rep_kernel(e, os, false); });
  leaf(r, "cokernel", "cokernel of --map", [](const Env& e, std::ostream& os) { rep_kernel(e, os, true); });
  leaf(r, "sum", "direct sum of left and right", rep_sum);
  leaf(r, "embed", "k^dim placed at --vertex", rep_embed);
  auto* c = group("complex", "bounded complexes");
  leaf(c, "cohomology", "H^i per vertex (all degrees unless --degree)", complex_cohomology);
  leaf(c, "qis", "quasi-isomorphism certificate of --map", complex_qis);
  leaf(c, "transpose", "complex of representations as representation of complexes", complex_transpose);
  auto* d = group("derived", "derived category");
  leaf(d, "hom", "dim Hom_D(left, right[degree])", derived_hom);
  leaf(d, "resolve", "projective or injective resolution of --left", derived_resolve);
  leaf(d, "T", "vertexwise complexes and arrow roofs of --left", derived_T);
  leaf(d, "strictify", "find a complex realizing T(--left) within --bound", derived_strictify);
  auto* f = group("functor", "tilting functors");
  leaf(f, "build-tilt", "certify --tilt and build Hom(T, -)", functor_build_tilt);
  leaf(f, "derive", "R Hom(T, -) applied to --left", functor_derive);
  leaf(f, "square22", "induced-derived comparison on random complexes", functor_square22);
  auto* x = group("experiment", "report-producing experiments");
  leaf(x, "thm21", "T on the derived category: Hom_D against Hom_QD", experiment_21);
  leaf(x, "thm24", "derived equivalence of induced tilting functors", experiment_24);

  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    Env env(o);
    std::ostringstream buf;
    for (auto& [sub, cmd] : cmds)
      if (sub->parsed())
        cmd(env, buf);
    if (o.out.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file)
        throw CliError("cannot write " + o.out);
      file << buf.str();
    }
  } catch (const std::exception& e) {
    std::cerr << "qha: error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
