#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "icat/cache.hpp"
#include "icat/enriched.hpp"

namespace icat {

inline constexpr std::size_t kDefaultBound = 3;

// ---------------------------------------------------------------------------
// Graphs, paths and the free-category monad
// ---------------------------------------------------------------------------

struct FGraph {
  FiniteSet vertices, edges;
  FiniteMap src, tgt;

  FGraph() = default;
  FGraph(FiniteSet v, FiniteSet e, FiniteMap s, FiniteMap t)
      : vertices(std::move(v)), edges(std::move(e)), src(std::move(s)), tgt(std::move(t)) {
    for (const FiniteMap* m : {&src, &tgt}) {
      if (!(m->dom() == edges) || !(m->cod() == vertices)) throw MalformedData("graph structure map has the wrong shape");
    }
  }
};

struct Path {
  Index start = 0;
  std::vector<Index> edges;

  std::size_t length() const { return edges.size(); }
  Index end(const FGraph& g) const { return edges.empty() ? start : g.tgt[edges.back()]; }
  friend bool operator==(const Path&, const Path&) = default;
};

inline Atom path_atom(const FGraph& g, const Path& p) {
  std::vector<Atom> es;
  for (Index e : p.edges) es.push_back(g.edges[e]);
  return tup({g.vertices[p.start], tup(es)});
}

inline bool is_path(const FGraph& g, const Path& p) {
  if (p.start >= g.vertices.size()) return false;
  Index at = p.start;
  for (Index e : p.edges) {
    if (e >= g.edges.size() || g.src[e] != at) return false;
    at = g.tgt[e];
  }
  return true;
}

inline Path concat(const FGraph& g, const Path& a, const Path& b) {
  if (a.end(g) != b.start) throw DomainMismatch("paths do not meet");
  Path r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

// Paths of length <= bound: shortest first, then by start and edge sequence.
inline std::vector<Path> enumerate_paths(const FGraph& g, std::size_t bound) {
  std::vector<std::vector<Index>> out(g.vertices.size());
  for (Index e = 0; e < g.edges.size(); ++e) out[g.src[e]].push_back(e);
  std::vector<Path> all, level;
  for (Index v = 0; v < g.vertices.size(); ++v) level.push_back(Path{v, {}});
  for (std::size_t k = 0;; ++k) {
    all.insert(all.end(), level.begin(), level.end());
    if (k == bound) break;
    std::vector<Path> next;
    for (const Path& p : level)
      for (Index e : out[p.end(g)]) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    if (next.empty()) break;
    level = std::move(next);
  }
  return all;
}

// FC(G) truncated at a path length bound; composition is concatenation.
class LazyCategory {
 public:
  LazyCategory(FGraph g, std::size_t bound) : g_(std::move(g)), bound_(bound), paths_(enumerate_paths(g_, bound)) {
    std::vector<Atom> atoms;
    for (const Path& p : paths_) atoms.push_back(path_atom(g_, p));
    set_ = FiniteSet("FC", atoms);
    for (Index i = 0; i < paths_.size(); ++i) index_.emplace(atoms[i].str(), i);
  }

  const FGraph& graph() const { return g_; }
  std::size_t bound() const { return bound_; }
  const std::vector<Path>& arrows() const { return paths_; }
  const FiniteSet& arrow_set() const { return set_; }

  std::size_t count(std::size_t length) const {
    std::size_t n = 0;
    for (const Path& p : paths_) n += p.length() == length;
    return n;
  }

  Index index_of(const Path& p) const {
    if (!is_path(g_, p)) throw DomainMismatch("not a path");
    if (p.length() > bound_) throw BoundExceeded("path of length " + std::to_string(p.length()) + " exceeds bound " + std::to_string(bound_));
    return index_.at(path_atom(g_, p).str());
  }
  Index id(Index v) const { return index_of(Path{v, {}}); }
  // q after p
  Index compose(Index q, Index p) const { return index_of(concat(g_, paths_[p], paths_[q])); }

 private:
  FGraph g_;
  std::size_t bound_;
  std::vector<Path> paths_;
  FiniteSet set_;
  std::unordered_map<std::string, Index> index_;
};

inline LazyCategory free_category(const FGraph& g, std::size_t bound) { return LazyCategory(g, bound); }

// A path in FC(G): consecutive paths of G.
struct PathOfPaths {
  Index start = 0;
  std::vector<Path> items;
};

inline Path flatten(const FGraph& g, const PathOfPaths& pp) {
  Path r{pp.start, {}};
  for (const Path& p : pp.items) r = concat(g, r, p);
  return r;
}

inline Atom nested_atom(const FGraph& g, const PathOfPaths& pp) {
  std::vector<Atom> items;
  for (const Path& p : pp.items) items.push_back(path_atom(g, p));
  return tup({g.vertices[pp.start], tup(items)});
}

namespace detail {

// Calls fn on each sequence of at most `items` consecutive elements starting
// at v whose total weight is at most `budget`.
template <class Elem, class Out, class Weight, class End, class Fn>
void for_each_chain(Index v, std::size_t items, std::size_t budget, const Out& out, Weight&& weight, End&& end,
                    std::vector<Elem>& acc, Fn&& fn) {
  fn(static_cast<const std::vector<Elem>&>(acc));
  if (items == 0) return;
  for (const Elem& e : out(v)) {
    std::size_t w = weight(e);
    if (w > budget) continue;
    acc.push_back(e);
    for_each_chain<Elem>(end(e), items - 1, budget - w, out, weight, end, acc, fn);
    acc.pop_back();
  }
}

}  // namespace detail

// The monad laws of FC checked on every (nested) path within the bound:
// each list has at most `bound` entries and flattens to at most `bound` edges.
inline CheckReport fc_monad_laws(const FGraph& g, std::size_t bound, const CheckOptions& opt = {},
                                 const std::string& subject = "fc") {
  CheckReport r(subject, "fc");
  LazyCategory fc(g, bound);
  const auto& paths = fc.arrows();

  auto& en = r.axiom("fc.enumeration");
  en.expect(fc.arrow_set().size() == paths.size(), [&] { return Witness{leaf("duplicates")}; });
  {
    const std::size_t n = g.vertices.size();
    std::vector<std::size_t> walks(n * n, 0), step(n * n, 0);
    for (Index v = 0; v < n; ++v) walks[v * n + v] = 1;
    for (Index e = 0; e < g.edges.size(); ++e) ++step[g.src[e] * n + g.tgt[e]];
    for (std::size_t k = 0; k <= bound; ++k) {
      std::size_t total = 0;
      for (auto w : walks) total += w;
      en.expect(fc.count(k) == total, [&] { return Witness{leaf(std::to_string(k))}; });
      std::vector<std::size_t> next(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t m = 0; m < n; ++m)
          for (std::size_t j = 0; j < n; ++j) next[i * n + j] += walks[i * n + m] * step[m * n + j];
      walks = std::move(next);
    }
  }

  auto& ul = r.axiom("fc.unit_left");
  auto& ur = r.axiom("fc.unit_right");
  for (const Path& p : paths) {
    ul.expect(flatten(g, PathOfPaths{p.start, {p}}) == p, [&] { return Witness{path_atom(g, p)}; });
    PathOfPaths fe{p.start, {}};
    for (Index e : p.edges) fe.items.push_back(Path{g.src[e], {e}});
    ur.expect(flatten(g, fe) == p, [&] { return Witness{path_atom(g, p)}; });
  }

  std::vector<std::vector<Path>> from(g.vertices.size());
  for (const Path& p : paths) from[p.start].push_back(p);
  auto paths_from = [&](Index v) -> const std::vector<Path>& { return from[v]; };
  auto path_len = [](const Path& p) { return p.length(); };
  auto path_end = [&](const Path& p) { return p.end(g); };

  // Paths of paths, by start vertex, for the outer level.
  std::vector<std::vector<PathOfPaths>> pp_from(g.vertices.size());
  for (Index v = 0; v < g.vertices.size(); ++v) {
    std::vector<Path> acc;
    detail::for_each_chain<Path>(v, bound, bound, paths_from, path_len, path_end, acc,
                                 [&](const std::vector<Path>& items) { pp_from[v].push_back(PathOfPaths{v, items}); });
  }
  auto pp_len = [&](const PathOfPaths& pp) { return flatten(g, pp).length(); };
  auto pp_end = [&](const PathOfPaths& pp) { return flatten(g, pp).end(g); };
  auto pps_from = [&](Index v) -> const std::vector<PathOfPaths>& { return pp_from[v]; };

  auto& as = r.axiom("fc.associativity");
  for (Index v = 0; v < g.vertices.size(); ++v) {
    std::vector<PathOfPaths> acc;
    detail::for_each_chain<PathOfPaths>(v, bound, bound, pps_from, pp_len, pp_end, acc,
                                        [&](const std::vector<PathOfPaths>& ppp) {
                                          // mu . FC(mu): flatten each inner list first
                                          PathOfPaths inner{v, {}};
                                          for (const auto& pp : ppp) inner.items.push_back(flatten(g, pp));
                                          // mu . mu_FC: concatenate the middle level first
                                          PathOfPaths outer{v, {}};
                                          for (const auto& pp : ppp)
                                            outer.items.insert(outer.items.end(), pp.items.begin(), pp.items.end());
                                          as.expect(flatten(g, inner) == flatten(g, outer), [&] {
                                            std::vector<Atom> w;
                                            for (const auto& pp : ppp) w.push_back(nested_atom(g, pp));
                                            return Witness{g.vertices[v], tup(w)};
                                          });
                                        });
  }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// FC-multicategories
// ---------------------------------------------------------------------------

// C1 holds the arrows whose source path has length at most `bound`.
struct FCMulticategory {
  std::string name;
  std::size_t bound = kDefaultBound;
  FGraph c0, c1;
  FiniteMap dom0, cod0;    // C1 vertices -> C0 vertices
  std::vector<Path> dom1;  // C1 edge -> path of C0
  FiniteMap cod1;          // C1 edges -> C0 edges
  FiniteMap idv;           // C0 vertices -> C1 vertices
  FiniteMap ide;           // C0 edges -> C1 edges
  // Composite of f with a path of C1 over dom1(f); nullopt past the bound.
  std::function<std::optional<Index>(Index, const Path&)> mcomp;
  std::map<std::string, Index> overrides;  // by config atom
  MonoidalPtr v;                           // set for M_V
  std::optional<FiniteSet> ind;            // set for Ind^X

  Atom config_atom(Index f, const Path& gs) const { return tup({c1.edges[f], path_atom(c1, gs)}); }

  // The image of a C1 path under cod.
  Path cod_path(const Path& gs) const {
    Path r{cod0[gs.start], {}};
    for (Index g : gs.edges) r.edges.push_back(cod1[g]);
    return r;
  }

  // The source of the composite: the paths dom1(g_i) laid end to end.
  Path dom_path(const Path& gs) const {
    Path r{dom0[gs.start], {}};
    for (Index g : gs.edges) r.edges.insert(r.edges.end(), dom1[g].edges.begin(), dom1[g].edges.end());
    return r;
  }

  std::optional<Index> comp(Index f, const Path& gs) const {
    if (!is_path(c1, gs) || !(cod_path(gs) == dom1[f])) throw DomainMismatch("configuration is not composable");
    if (!overrides.empty()) {
      auto it = overrides.find(config_atom(f, gs).str());
      if (it != overrides.end()) return it->second;
    }
    return mcomp(f, gs);
  }
};

using MulticatPtr = std::shared_ptr<const FCMulticategory>;

// Replaces one composite; the configuration and result are given as atoms.
inline MulticatPtr with_comp_override(const MulticatPtr& m, const Atom& config, const Atom& result) {
  if (config.arity() != 2) throw MalformedData("configuration atom must be a pair");
  Index f = m->c1.edges.at(config[0]);
  const Atom& p = config[1];
  if (p.arity() != 2) throw MalformedData("configuration path must be a pair");
  Path gs{m->c1.vertices.at(p[0]), {}};
  for (const Atom& e : p[1].parts()) gs.edges.push_back(m->c1.edges.at(e));
  if (!is_path(m->c1, gs) || !(m->cod_path(gs) == m->dom1[f])) throw MalformedData("configuration " + config.str() + " is not composable");
  if (m->dom_path(gs).length() > m->bound) throw BoundExceeded("configuration " + config.str() + " exceeds the bound");
  auto out = std::make_shared<FCMulticategory>(*m);
  out->overrides[config.str()] = m->c1.edges.at(result);
  return out;
}

// Replaces the identity on one C0 edge.
inline MulticatPtr with_id_override(const MulticatPtr& m, const Atom& edge, const Atom& result) {
  auto out = std::make_shared<FCMulticategory>(*m);
  std::vector<Index> t = m->ide.table();
  t[m->c0.edges.at(edge)] = m->c1.edges.at(result);
  out->ide = FiniteMap(m->ide.dom(), m->ide.cod(), t);
  return out;
}

namespace detail {

// C1 edges by (source vertex, cod edge).
class LiftIndex {
 public:
  explicit LiftIndex(const FCMulticategory& m) : m_(m), by_(m.c1.vertices.size() * m.c0.edges.size()) {
    for (Index a = 0; a < m.c1.edges.size(); ++a) by_[m.c1.src[a] * m.c0.edges.size() + m.cod1[a]].push_back(a);
  }

  // Calls fn on every path of C1 over q under cod whose composite source has
  // length at most budget.
  template <class Fn>
  void for_each_lift(const Path& q, std::size_t budget, Fn&& fn) const {
    std::vector<Index> acc;
    for (Index w = 0; w < m_.c1.vertices.size(); ++w) {
      if (m_.cod0[w] == q.start) go(w, w, q, 0, budget, acc, fn);
    }
  }

 private:
  template <class Fn>
  void go(Index start, Index at, const Path& q, std::size_t k, std::size_t left, std::vector<Index>& acc, Fn& fn) const {
    if (k == q.edges.size()) {
      fn(Path{start, acc});
      return;
    }
    for (Index a : by_[at * m_.c0.edges.size() + q.edges[k]]) {
      std::size_t len = m_.dom1[a].length();
      if (len > left) continue;
      acc.push_back(a);
      go(start, m_.c1.tgt[a], q, k + 1, left - len, acc, fn);
      acc.pop_back();
    }
  }

  const FCMulticategory& m_;
  std::vector<std::vector<Index>> by_;
};

}  // namespace detail

inline CheckReport check_fc_multicat(const FCMulticategory& m, const CheckOptions& opt = {},
                                     const std::string& subject = "multicat") {
  CheckReport r(subject.empty() ? m.name : subject, "multicat");
  const FGraph& c0 = m.c0;
  const FGraph& c1 = m.c1;
  detail::LiftIndex lifts(m);

  auto& ty = r.axiom("multicat.typing");
  bool typed = true;
  for (Index a = 0; a < c1.edges.size(); ++a) {
    const Path& d = m.dom1[a];
    Index c = m.cod1[a];
    typed &= ty.expect(is_path(c0, d) && d.start == m.dom0[c1.src[a]] && d.end(c0) == m.dom0[c1.tgt[a]] &&
                           c0.src[c] == m.cod0[c1.src[a]] && c0.tgt[c] == m.cod0[c1.tgt[a]],
                       [&] { return Witness{c1.edges[a]}; });
  }
  for (Index x = 0; x < c0.vertices.size(); ++x)
    typed &= ty.expect(m.dom0[m.idv[x]] == x && m.cod0[m.idv[x]] == x, [&] { return Witness{c0.vertices[x]}; });
  for (Index e = 0; e < c0.edges.size(); ++e) {
    Index i = m.ide[e];
    typed &= ty.expect(m.dom1[i] == Path{c0.src[e], {e}} && m.cod1[i] == e && c1.src[i] == m.idv[c0.src[e]] &&
                           c1.tgt[i] == m.idv[c0.tgt[e]],
                       [&] { return Witness{c0.edges[e]}; });
  }

  // Every composable configuration within the bound.
  struct Config {
    Index f;
    Path gs;
    Index k;
  };
  std::vector<Config> configs;
  for (Index f = 0; f < c1.edges.size(); ++f) {
    lifts.for_each_lift(m.dom1[f], m.bound, [&](const Path& gs) {
      auto k = m.comp(f, gs);
      bool ok = k && m.dom1[*k] == m.dom_path(gs) && m.cod1[*k] == m.cod1[f] && c1.src[*k] == gs.start &&
                c1.tgt[*k] == gs.end(c1);
      if (ty.expect(ok, [&] { return Witness{m.config_atom(f, gs)}; })) configs.push_back(Config{f, gs, *k});
    });
  }
  typed &= ty.passed();

  auto& lu = r.axiom("multicat.left_unit");
  auto& ru = r.axiom("multicat.right_unit");
  auto& as = r.axiom("multicat.associativity");
  if (!typed) {
    ty.note = "unit and associativity checks need well-typed data";
    return r.finish(opt);
  }
  for (Index f = 0; f < c1.edges.size(); ++f) {
    auto l = m.comp(m.ide[m.cod1[f]], Path{c1.src[f], {f}});
    lu.expect(l && *l == f, [&] { return Witness{c1.edges[f]}; });
    const Path& d = m.dom1[f];
    Path ids{m.idv[d.start], {}};
    for (Index e : d.edges) ids.edges.push_back(m.ide[e]);
    auto rr = m.comp(f, ids);
    ru.expect(rr && *rr == f, [&] { return Witness{c1.edges[f]}; });
  }
  for (const Config& c : configs) {
    lifts.for_each_lift(m.dom1[c.k], m.bound, [&](const Path& hs) {
      auto lhs = m.comp(c.k, hs);
      // Split hs along the sources of the g_i.
      Path outer{hs.start, {}};
      std::size_t at = 0;
      Index vertex = hs.start;
      bool ok = true;
      for (Index g : c.gs.edges) {
        std::size_t n = m.dom1[g].length();
        Path part{vertex, std::vector<Index>(hs.edges.begin() + at, hs.edges.begin() + at + n)};
        at += n;
        vertex = part.end(c1);
        auto inner = m.comp(g, part);
        if (!inner) {
          ok = false;
          break;
        }
        outer.edges.push_back(*inner);
      }
      std::optional<Index> rhs = ok ? m.comp(c.f, outer) : std::nullopt;
      as.expect(lhs && rhs && *lhs == *rhs,
                [&] { return Witness{c1.edges[c.f], path_atom(c1, c.gs), path_atom(c1, hs)}; });
    });
  }
  return r.finish(opt);
}

// Ind^X: arrows are the lists (x0, ..., xn), composition flattens.
inline MulticatPtr ind_multicat(const FiniteSet& x, std::size_t bound = kDefaultBound) {
  static detail::OnDemandCache<FiniteSet, FCMulticategory> cache;
  return cache.get(nullptr, x.encoding() + "/" + std::to_string(bound), x, [&] {
    auto m = std::make_shared<FCMulticategory>();
    const std::size_t n = x.size();
    m->name = "Ind(" + x.describe() + ")";
    m->bound = bound;
    m->ind = x;
    LimitCone xx = product(x, x);
    std::vector<Index> pair(n * n);
    for (Index t = 0; t < xx.apex.size(); ++t) pair[xx.legs[0][t] * n + xx.legs[1][t]] = t;
    m->c0 = FGraph(x, xx.apex, xx.legs[0], xx.legs[1]);

    std::vector<std::vector<Index>> lists;
    std::vector<Atom> atoms;
    for (std::size_t len = 1; len <= bound + 1 && n > 0; ++len) {
      for_each_tuple(std::vector<std::size_t>(len, n), [&](const std::vector<Index>& l) {
        std::vector<Atom> parts;
        for (Index i : l) parts.push_back(x[i]);
        atoms.push_back(tup(parts));
        lists.push_back(l);
      });
    }
    FiniteSet arrows("FC(Ind(" + x.describe() + "))", atoms);
    std::vector<std::vector<Index>> sorted(lists.size());
    for (std::size_t i = 0; i < lists.size(); ++i) sorted[arrows.at(atoms[i])] = lists[i];
    std::vector<Index> src(sorted.size()), tgt(sorted.size()), cod(sorted.size());
    m->dom1.resize(sorted.size());
    for (Index a = 0; a < sorted.size(); ++a) {
      const auto& l = sorted[a];
      src[a] = l.front();
      tgt[a] = l.back();
      cod[a] = pair[l.front() * n + l.back()];
      Path d{l.front(), {}};
      for (std::size_t i = 1; i < l.size(); ++i) d.edges.push_back(pair[l[i - 1] * n + l[i]]);
      m->dom1[a] = std::move(d);
    }
    m->c1 = FGraph(x, arrows, FiniteMap(arrows, x, src), FiniteMap(arrows, x, tgt));
    m->dom0 = identity_map(x);
    m->cod0 = identity_map(x);
    m->cod1 = FiniteMap(arrows, xx.apex, cod);
    m->idv = identity_map(x);
    m->ide = FiniteMap::tabulate(xx.apex, arrows, [&](std::size_t t) {
      return arrows.at(tup({x[xx.legs[0][t]], x[xx.legs[1][t]]}));
    });
    m->mcomp = [x, arrows, sorted, bound](Index, const Path& gs) -> std::optional<Index> {
      std::vector<Atom> parts{x[gs.start]};
      for (Index g : gs.edges) {
        const auto& l = sorted[g];
        for (std::size_t i = 1; i < l.size(); ++i) parts.push_back(x[l[i]]);
      }
      if (parts.size() > bound + 1) return std::nullopt;
      return arrows.at(tup(parts));
    };
    return MulticatPtr(std::move(m));
  });
}

namespace detail {

inline Atom mv_atom(const MonoidalStructure& v, const std::vector<Index>& list, Index f) {
  std::vector<Atom> objs;
  for (Index o : list) objs.push_back(v.base().obj_atom(o));
  return tup({tup(objs), v.base().arr_atom(f)});
}

}  // namespace detail

// M_V: one object; arrows are pairs ((v_1, ..., v_n), f) with f out of the
// tensor of the list. The composite is f . (tensor of the f_i) . kappa, kappa
// the coherence isomorphism from the flat tensor to the nested one.
inline MulticatPtr build_MV(const MonoidalPtr& v, std::size_t bound = kDefaultBound) {
  static detail::OnDemandCache<MonoidalPtr, FCMulticategory> cache;
  return cache.get(v.get(), std::to_string(bound), v, [&] {
    auto m = std::make_shared<FCMulticategory>();
    const MonoidalStructure& V = *v;
    const InternalCategory& c = V.base();
    m->name = "M_V";
    m->bound = bound;
    m->v = v;
    FiniteSet one = terminal();
    m->c0 = FGraph(one, c.objects(), bang(c.objects()), bang(c.objects()));

    std::vector<std::pair<std::vector<Index>, Index>> raw;
    std::vector<Atom> atoms;
    for (std::size_t len = 0; len <= bound; ++len) {
      for_each_tuple(std::vector<std::size_t>(len, c.objects().size()), [&](const std::vector<Index>& l) {
        for (Index f : c.arrows_from(tensor_list(V, l))) {
          atoms.push_back(detail::mv_atom(V, l, f));
          raw.emplace_back(l, f);
        }
      });
    }
    FiniteSet arrows("M_V1", atoms);
    auto data = std::make_shared<std::vector<std::pair<std::vector<Index>, Index>>>(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) (*data)[arrows.at(atoms[i])] = raw[i];
    std::vector<Index> cod(arrows.size());
    m->dom1.resize(arrows.size());
    for (Index a = 0; a < arrows.size(); ++a) {
      m->dom1[a] = Path{0, (*data)[a].first};
      cod[a] = c.tgt((*data)[a].second);
    }
    m->c1 = FGraph(one, arrows, bang(arrows), bang(arrows));
    m->dom0 = identity_map(one);
    m->cod0 = identity_map(one);
    m->cod1 = FiniteMap(arrows, c.objects(), cod);
    m->idv = identity_map(one);
    m->ide = FiniteMap::tabulate(c.objects(), arrows, [&](std::size_t o) {
      return arrows.at(detail::mv_atom(V, {static_cast<Index>(o)}, c.id(static_cast<Index>(o))));
    });
    m->mcomp = [v, arrows, data, bound](Index f, const Path& gs) -> std::optional<Index> {
      const MonoidalStructure& V = *v;
      const InternalCategory& c = V.base();
      std::vector<Index> flat, fs;
      std::vector<Bracketing> nested;
      for (Index g : gs.edges) {
        const auto& [l, h] = (*data)[g];
        flat.insert(flat.end(), l.begin(), l.end());
        nested.push_back(list_bracketing(l));
        fs.push_back(h);
      }
      if (flat.size() > bound) return std::nullopt;
      Index kappa = coherence_iso(V, list_bracketing(flat), list_bracketing(nested));
      auto t = c.try_comp(tensor_list_arrows(V, fs), kappa);
      auto r = t ? c.try_comp((*data)[f].second, *t) : std::nullopt;
      if (!r) throw MalformedData("composite in M_V is not typed");
      return arrows.at(detail::mv_atom(V, flat, *r));
    };
    return MulticatPtr(std::move(m));
  });
}

// ---------------------------------------------------------------------------
// Maps of FC-multicategories and the enriched translations
// ---------------------------------------------------------------------------

struct MulticatMap {
  MulticatPtr source, target;
  FiniteMap v0, e0;       // C0 graph map
  FiniteMap v1;           // C1 vertices
  std::vector<Index> e1;  // C1 edges of the source -> C1 edges of the target
};

inline CheckReport check_multicat_map(const MulticatMap& m, const CheckOptions& opt = {},
                                      const std::string& subject = "multicat_map") {
  CheckReport r(subject, "multicat_map");
  const FCMulticategory& s = *m.source;
  const FCMulticategory& t = *m.target;
  auto& pr = r.axiom("multicat_map.prism");
  for (Index e = 0; e < s.c0.edges.size(); ++e) {
    Index f = m.e0[e];
    pr.expect(t.c0.src[f] == m.v0[s.c0.src[e]] && t.c0.tgt[f] == m.v0[s.c0.tgt[e]], [&] { return Witness{s.c0.edges[e]}; });
  }
  for (Index w = 0; w < s.c1.vertices.size(); ++w) {
    Index u = m.v1[w];
    pr.expect(t.dom0[u] == m.v0[s.dom0[w]] && t.cod0[u] == m.v0[s.cod0[w]], [&] { return Witness{s.c1.vertices[w]}; });
  }
  for (Index a = 0; a < s.c1.edges.size(); ++a) {
    Index b = m.e1[a];
    Path image{m.v0[s.dom1[a].start], {}};
    for (Index e : s.dom1[a].edges) image.edges.push_back(m.e0[e]);
    pr.expect(t.dom1[b] == image && t.cod1[b] == m.e0[s.cod1[a]] && t.c1.src[b] == m.v1[s.c1.src[a]] &&
                  t.c1.tgt[b] == m.v1[s.c1.tgt[a]],
              [&] { return Witness{s.c1.edges[a]}; });
  }
  if (!pr.passed()) return r.finish(opt);

  auto& id = r.axiom("multicat_map.identities");
  for (Index x = 0; x < s.c0.vertices.size(); ++x)
    id.expect(m.v1[s.idv[x]] == t.idv[m.v0[x]], [&] { return Witness{s.c0.vertices[x]}; });
  for (Index e = 0; e < s.c0.edges.size(); ++e)
    id.expect(m.e1[s.ide[e]] == t.ide[m.e0[e]], [&] { return Witness{s.c0.edges[e]}; });

  auto& cp = r.axiom("multicat_map.composition");
  detail::LiftIndex lifts(s);
  for (Index f = 0; f < s.c1.edges.size(); ++f) {
    lifts.for_each_lift(s.dom1[f], s.bound, [&](const Path& gs) {
      auto k = s.comp(f, gs);
      Path image{m.v1[gs.start], {}};
      for (Index g : gs.edges) image.edges.push_back(m.e1[g]);
      std::optional<Index> rhs;
      if (t.dom_path(image).length() <= t.bound) rhs = t.comp(m.e1[f], image);
      cp.expect(k && rhs && m.e1[*k] == *rhs, [&] { return Witness{s.config_atom(f, gs)}; });
    });
  }
  return r.finish(opt);
}

namespace detail {

// comp(x0, ..., xn) : tensor_list(hom(x0, x1), ..., hom(x_{n-1}, xn)) -> hom(x0, xn),
// nested as comp(x0, x1, xn) . (comp(x1, ..., xn) (x) id).
inline Index iterated_comp(const EnrichedCategory& x, const std::vector<Index>& l) {
  const MonoidalStructure& V = x.base();
  const InternalCategory& c = V.base();
  if (l.size() == 1) return x.ident(l[0]);
  if (l.size() == 2) return c.id(x.hom(l[0], l[1]));
  std::vector<Index> rest(l.begin() + 1, l.end());
  Index inner = iterated_comp(x, rest);
  Index h = c.id(x.hom(l[0], l[1]));
  auto r = c.try_comp(x.comp(l[0], l[1], l.back()), V.tensor_arr(inner, h));
  if (!r) throw MalformedData("iterated composite is not typed");
  return *r;
}

inline std::vector<Index> hom_list(const EnrichedCategory& x, const std::vector<Index>& l) {
  std::vector<Index> h;
  for (std::size_t i = 1; i < l.size(); ++i) h.push_back(x.hom(l[i - 1], l[i]));
  return h;
}

inline std::vector<Index> decode_list(const FiniteSet& x, const Atom& a) {
  std::vector<Index> l;
  for (const Atom& p : a.parts()) l.push_back(x.at(p));
  return l;
}

}  // namespace detail

// The enrichment Ind^X -> M_V of an enriched category.
inline MulticatMap to_multicat(const EnrichedCategory& x, std::size_t bound = kDefaultBound) {
  MulticatMap m;
  m.source = ind_multicat(x.carrier(), bound);
  m.target = build_MV(x.v(), bound);
  const FCMulticategory& s = *m.source;
  const FCMulticategory& t = *m.target;
  const MonoidalStructure& V = x.base();
  m.v0 = bang(x.carrier());
  m.e0 = FiniteMap::tabulate(s.c0.edges, t.c0.edges, [&](std::size_t e) {
    return x.hom(s.c0.src[e], s.c0.tgt[e]);
  });
  m.v1 = bang(x.carrier());
  m.e1.resize(s.c1.edges.size());
  for (Index a = 0; a < s.c1.edges.size(); ++a) {
    std::vector<Index> l = detail::decode_list(x.carrier(), s.c1.edges[a]);
    m.e1[a] = t.c1.edges.at(detail::mv_atom(V, detail::hom_list(x, l), detail::iterated_comp(x, l)));
  }
  return m;
}

// Reads hom, comp and ident back off an enrichment Ind^X -> M_V.
inline EnrichedCategory from_multicat(const MulticatMap& m) {
  if (!m.source->ind || !m.target->v) throw InvalidMulticatData("expected a map from Ind^X to M_V");
  if (m.source->bound < 2) throw InvalidMulticatData("bound must be at least 2 to read off composition");
  CheckReport pr = check_multicat_map(m, CheckOptions{1});
  if (const AxiomResult* a = pr.find("multicat_map.prism"); a && !a->passed()) {
    throw InvalidMulticatData("prism does not commute at " + join_atoms(a->witnesses.front()));
  }
  const FiniteSet& x = *m.source->ind;
  const MonoidalPtr& v = m.target->v;
  const InternalCategory& c = v->base();
  const FCMulticategory& s = *m.source;
  const FCMulticategory& t = *m.target;
  auto arrow_of = [&](std::vector<Atom> parts) {
    Index b = m.e1[s.c1.edges.at(tup(std::move(parts)))];
    return c.arr_index(t.c1.edges[b][1]);
  };
  LimitCone xx = product(x, x);
  std::vector<Index> hom(x.size() * x.size());
  for (Index e = 0; e < xx.apex.size(); ++e) hom[xx.legs[0][e] * x.size() + xx.legs[1][e]] = m.e0[s.c0.edges.at(xx.apex[e])];
  return EnrichedCategory::build(
      v, x, [&](Index i, Index j) { return hom[i * x.size() + j]; },
      [&](Index i, Index j, Index k) { return arrow_of({x[i], x[j], x[k]}); }, [&](Index i) { return arrow_of({x[i]}); });
}

// from_multicat . to_multicat == id, and to_multicat . from_multicat agrees
// with the given map on every arrow within the bound.
inline CheckReport multicat_roundtrip(const EnrichedCategory& x, std::size_t bound = kDefaultBound,
                                      const CheckOptions& opt = {}, const std::string& subject = "roundtrip") {
  CheckReport r(subject, "roundtrip");
  MulticatMap m = to_multicat(x, bound);
  EnrichedCategory back = from_multicat(m);
  auto& en = r.axiom("roundtrip.enriched");
  const Index n = x.n();
  const FiniteSet& X = x.carrier();
  for (Index i = 0; i < n; ++i) {
    en.expect(back.ident(i) == x.ident(i), [&] { return Witness{X[i]}; });
    for (Index j = 0; j < n; ++j) {
      en.expect(back.hom(i, j) == x.hom(i, j), [&] { return Witness{X[i], X[j]}; });
      for (Index k = 0; k < n; ++k)
        en.expect(back.comp(i, j, k) == x.comp(i, j, k), [&] { return Witness{X[i], X[j], X[k]}; });
    }
  }
  en.expect(back == x, [&] { return Witness{}; });
  auto& mc = r.axiom("roundtrip.multicat");
  MulticatMap again = to_multicat(back, bound);
  const FCMulticategory& s = *m.source;
  for (Index a = 0; a < s.c1.edges.size(); ++a)
    mc.expect(again.e1[a] == m.e1[a], [&] { return Witness{s.c1.edges[a]}; });
  for (Index e = 0; e < s.c0.edges.size(); ++e)
    mc.expect(again.e0[e] == m.e0[e], [&] { return Witness{s.c0.edges[e]}; });
  return r.finish(opt);
}

// A functor of enriched multicategories MX -> MY: the map Ind^X -> Ind^Y
// induced by f0 and the 2-cells f1(x0, x1) : hom_X(x0, x1) -> hom_Y(f0 x0, f0 x1).
struct MulticatFunctor {
  MulticatMap source, target;
  FiniteMap f0;
  std::vector<Index> f1;  // by C0 edge of Ind^X
};

inline MulticatFunctor to_multicat_functor(const EnrichedFunctor& f, std::size_t bound = kDefaultBound) {
  MulticatFunctor mf{to_multicat(f.dom(), bound), to_multicat(f.cod(), bound), f.f0_map(), {}};
  const FCMulticategory& s = *mf.source.source;
  mf.f1.resize(s.c0.edges.size());
  for (Index e = 0; e < s.c0.edges.size(); ++e) mf.f1[e] = f.hom(s.c0.src[e], s.c0.tgt[e]);
  return mf;
}

inline EnrichedFunctor from_multicat_functor(const MulticatFunctor& mf) {
  EnrichedCategory x = from_multicat(mf.source);
  EnrichedCategory y = from_multicat(mf.target);
  const FCMulticategory& s = *mf.source.source;
  std::vector<Index> f1(x.n() * x.n());
  for (Index e = 0; e < s.c0.edges.size(); ++e) f1[s.c0.src[e] * x.n() + s.c0.tgt[e]] = mf.f1[e];
  return EnrichedFunctor::build(
      x, y, [&](Index i) { return mf.f0[i]; }, [&](Index i, Index j) { return f1[i * x.n() + j]; });
}

// f1(x0, xn) . comp_X(x0, ..., xn) == comp_Y(f x0, ..., f xn) . (f1 (x) ... (x) f1)
// for every path within the bound.
inline CheckReport check_multicat_functor(const MulticatFunctor& mf, const CheckOptions& opt = {},
                                          const std::string& subject = "multicat_functor") {
  CheckReport r(subject, "multicat_functor");
  const FCMulticategory& s = *mf.source.source;
  const FCMulticategory& sy = *mf.target.source;
  const FCMulticategory& tv = *mf.source.target;
  const MonoidalStructure& V = *tv.v;
  const InternalCategory& c = V.base();
  const FiniteSet& X = *s.ind;
  const FiniteSet& Y = *sy.ind;
  auto pair_y = [&](Index a, Index b) { return sy.c0.edges.at(tup({Y[a], Y[b]})); };

  auto& ty = r.axiom("multicat_functor.typing");
  for (Index e = 0; e < s.c0.edges.size(); ++e) {
    Index h = mf.f1[e];
    ty.expect(c.src(h) == mf.source.e0[e] && c.tgt(h) == mf.target.e0[pair_y(mf.f0[s.c0.src[e]], mf.f0[s.c0.tgt[e]])],
              [&] { return Witness{s.c0.edges[e]}; });
  }
  if (!ty.passed()) return r.finish(opt);

  auto& ax = r.axiom("multicat_functor.axiom");
  for (Index a = 0; a < s.c1.edges.size(); ++a) {
    std::vector<Index> l = detail::decode_list(X, s.c1.edges[a]);
    std::vector<Atom> fl;
    std::vector<Index> cells;
    for (Index i : l) fl.push_back(Y[mf.f0[i]]);
    for (std::size_t i = 1; i < l.size(); ++i) cells.push_back(mf.f1[s.c0.edges.at(tup({X[l[i - 1]], X[l[i]]}))]);
    Index cx = c.arr_index(tv.c1.edges[mf.source.e1[a]][1]);
    Index b = mf.target.e1[sy.c1.edges.at(tup(fl))];
    Index cy = c.arr_index(mf.target.target->c1.edges[b][1]);
    Index outer = mf.f1[s.cod1[a]];
    auto lhs = c.try_comp(outer, cx);
    auto rhs = c.try_comp(cy, tensor_list_arrows(V, cells));
    ax.expect(lhs && rhs && *lhs == *rhs, [&] { return Witness{s.c1.edges[a]}; });
  }
  return r.finish(opt);
}

inline CheckReport multicat_functor_roundtrip(const EnrichedFunctor& f, std::size_t bound = kDefaultBound,
                                              const CheckOptions& opt = {},
                                              const std::string& subject = "multicat_functor") {
  CheckReport r(subject, "multicat_functor");
  MulticatFunctor mf = to_multicat_functor(f, bound);
  auto& rt = r.axiom("multicat_functor.roundtrip");
  EnrichedFunctor back = from_multicat_functor(mf);
  const FiniteSet& X = f.dom().carrier();
  for (Index i = 0; i < f.dom().n(); ++i) {
    rt.expect(back.obj(i) == f.obj(i), [&] { return Witness{X[i]}; });
    for (Index j = 0; j < f.dom().n(); ++j) rt.expect(back.hom(i, j) == f.hom(i, j), [&] { return Witness{X[i], X[j]}; });
  }
  r.absorb(check_multicat_functor(mf, opt));
  return r.finish(opt);
}

}  // namespace icat
