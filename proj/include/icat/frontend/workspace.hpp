#pragma once

// Resolution of a parsed document into library objects. Every table is
// checked for totality here; axioms are left to the checkers.

#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "icat/enriched.hpp"
#include "icat/externalization.hpp"
#include "icat/frontend/document.hpp"
#include "icat/multicat.hpp"

namespace icat::frontend {

struct FamilySpec {
  std::vector<FiniteSet> members;
  std::vector<FiniteMap> connecting;
};

using Value = std::variant<FiniteSet, FiniteMap, InternalCategory, MonoidalPtr, MonoidalFunctorData, MonoidalNatData,
                           InternalFunctor, InternalNat, EnrichedCategory, EnrichedFunctor, EnrichedNat, FamilySpec,
                           MulticatPtr>;

struct Entry {
  std::string kind;
  std::string name;
  Location at;
  Value value;
};

// ICAT_BOUND, when set to a positive integer, else the library default.
inline std::size_t default_bound() {
  if (const char* s = std::getenv("ICAT_BOUND")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultBound;
}

class Workspace {
 public:
  SpecDocument doc;
  std::size_t bound = kDefaultBound;

  bool has(const std::string& name) const { return index_.count(name) != 0; }

  const Entry& at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw TargetNotFound("no declaration named '" + name + "'");
    return entries_[it->second];
  }

  template <class T>
  const T& get(const std::string& name, const std::string& kind) const {
    const Entry& e = at(name);
    if (e.kind != kind) throw KindMismatch("'" + name + "' is a " + e.kind + ", expected a " + kind);
    return std::get<T>(e.value);
  }

  const std::vector<Entry>& entries() const { return entries_; }

  void add(Entry e) {
    index_.emplace(e.name, entries_.size());
    entries_.push_back(std::move(e));
  }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

namespace detail {

// A table keyed by tuples over `dims`, filled from rows `key a b ... -> v`.
class Table {
 public:
  Table(std::string key, std::vector<FiniteSet> dims, FiniteSet values)
      : key_(std::move(key)), dims_(std::move(dims)), values_(std::move(values)) {
    std::size_t n = 1;
    for (const auto& d : dims_) n *= d.size();
    cells_.resize(n);
  }

  void add(const Row& r) {
    if (r.items.size() != dims_.size() + 1 || !r.value) {
      std::string shape = key_;
      for (std::size_t i = 0; i < dims_.size(); ++i) shape += " x" + std::to_string(i);
      throw located<SchemaViolation>(r.at, "expected '" + shape + " -> value'");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      auto k = dims_[i].index_of(r.items[i + 1]);
      if (!k) throw located<SchemaViolation>(r.at, r.items[i + 1].str() + " is not in " + dims_[i].describe());
      flat = flat * dims_[i].size() + *k;
    }
    auto v = values_.index_of(*r.value);
    if (!v) throw located<SchemaViolation>(r.at, r.value->str() + " is not in " + values_.describe());
    if (cells_[flat]) throw located<SchemaViolation>(r.at, "duplicate '" + key_ + "' row");
    cells_[flat] = *v;
  }

  std::optional<Index> find(std::initializer_list<Index> key) const { return cells_[flat(key)]; }

  Index get(std::initializer_list<Index> key) const { return *cells_[flat(key)]; }

  void set_default(const std::function<std::optional<Index>(const std::vector<Index>&)>& f, const Location& at) {
    std::vector<std::size_t> radices;
    for (const auto& d : dims_) radices.push_back(d.size());
    std::size_t i = 0;
    for_each_tuple(radices, [&](const std::vector<Index>& t) {
      if (!cells_[i]) {
        auto v = f(t);
        if (!v) throw located<SchemaViolation>(at, "'" + key_ + " auto' has no unique value at " + describe(t));
        cells_[i] = *v;
      }
      ++i;
    });
  }

  // Every key accepted by `wanted` has a row and no other key does.
  void require_total(const Location& at, const std::function<bool(const std::vector<Index>&)>& wanted = nullptr) const {
    std::vector<std::size_t> radices;
    for (const auto& d : dims_) radices.push_back(d.size());
    std::size_t i = 0;
    for_each_tuple(radices, [&](const std::vector<Index>& t) {
      bool want = !wanted || wanted(t);
      if (want && !cells_[i]) throw located<SchemaViolation>(at, "table '" + key_ + "' has no row for " + describe(t));
      if (!want && cells_[i]) throw located<SchemaViolation>(at, "table '" + key_ + "' has a row for " + describe(t) + " outside its domain");
      ++i;
    });
  }

 private:
  std::size_t flat(std::initializer_list<Index> key) const {
    std::size_t f = 0, i = 0;
    for (Index k : key) f = f * dims_[i++].size() + k;
    return f;
  }
  std::string describe(const std::vector<Index>& t) const {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + dims_[i][t[i]].str();
    return s;
  }

  std::string key_;
  std::vector<FiniteSet> dims_;
  FiniteSet values_;
  std::vector<std::optional<Index>> cells_;
};

class Resolver {
 public:
  Resolver(Workspace& ws, const Decl& d) : ws_(ws), d_(d) {}

  [[noreturn]] void fail(const Location& at, const std::string& msg) const { throw located<SchemaViolation>(at, msg); }

  const Entry& ref(const Atom& name, const Location& at) const {
    if (name.is_tuple() || !ws_.has(name.str())) {
      throw located<UnresolvedReference>(at, "'" + name.str() + "' is not declared before use");
    }
    return ws_.at(name.str());
  }

  template <class T>
  const T& ref(const Atom& name, const Location& at, const std::string& kind) const {
    const Entry& e = ref(name, at);
    if (e.kind != kind) fail(at, "'" + name.str() + "' is a " + e.kind + ", expected a " + kind);
    return std::get<T>(e.value);
  }

  // The head `: A -> B`, or `: A` when `arrow` is false.
  std::pair<Atom, std::optional<Atom>> head(bool arrow) const {
    const char* shape = arrow ? "': A -> B'" : "': A'";
    if (!d_.head || d_.head->items.size() != 1 || d_.head->value.has_value() != arrow) {
      fail(d_.head ? d_.head->at : d_.at, std::string("a ") + d_.kind + " declaration needs a head " + shape);
    }
    return {d_.head->items[0], d_.head->value};
  }

  // The single-argument row `key x`, required once.
  const Row& unique(const std::string& key) const {
    const Row* found = nullptr;
    for (const Row& r : d_.rows) {
      if (r.key() != key) continue;
      if (found) fail(r.at, "duplicate '" + key + "' row");
      found = &r;
    }
    if (!found) fail(d_.at, d_.kind + " '" + d_.name + "' needs a '" + key + "' row");
    if (found->items.size() != 2 || found->value) fail(found->at, "expected '" + key + " NAME'");
    return *found;
  }

  bool flag(const std::string& key) const {
    bool seen = false;
    for (const Row& r : d_.rows) {
      if (r.key() != key) continue;
      if (seen) fail(r.at, "duplicate '" + key + "' row");
      if (r.items.size() != 1 || r.value) fail(r.at, "'" + key + "' takes no arguments");
      seen = true;
    }
    return seen;
  }

  static bool is_auto(const Row& r) { return r.items.size() == 2 && !r.value && r.items[1].str() == "auto"; }

  // Fills tables from rows; `auto` rows are reported through autos.
  void fill(std::map<std::string, Table*> tables, std::vector<std::string> singles, std::vector<std::string> flags,
            std::map<std::string, bool>* autos = nullptr) const {
    for (const Row& r : d_.rows) {
      const std::string& k = r.key();
      if (std::find(singles.begin(), singles.end(), k) != singles.end()) continue;
      if (std::find(flags.begin(), flags.end(), k) != flags.end()) continue;
      auto it = tables.find(k);
      if (it == tables.end()) fail(r.at, "unknown row '" + k + "' in " + d_.kind + " '" + d_.name + "'");
      if (autos && autos->count(k) && is_auto(r)) {
        if ((*autos)[k]) fail(r.at, "duplicate '" + k + " auto' row");
        (*autos)[k] = true;
        continue;
      }
      it->second->add(r);
    }
  }

  const Decl& decl() const { return d_; }

 private:
  Workspace& ws_;
  const Decl& d_;
};

inline std::optional<Index> unique_arrow(const InternalCategory& c, Index a, Index b) {
  auto h = c.hom(a, b);
  if (h.size() != 1) return std::nullopt;
  return h[0];
}

inline Value load_map(const Resolver& r) {
  auto [a, b] = r.head(true);
  const Decl& d = r.decl();
  const auto& dom = r.ref<FiniteSet>(a, d.head->at, "set");
  const auto& cod = r.ref<FiniteSet>(*b, d.head->at, "set");
  std::vector<std::optional<Index>> t(dom.size());
  for (const Row& row : d.rows) {
    if (row.items.size() != 1 || !row.value) r.fail(row.at, "expected 'x -> y'");
    auto k = dom.index_of(row.items[0]);
    if (!k) r.fail(row.at, row.items[0].str() + " is not in " + dom.describe());
    auto v = cod.index_of(*row.value);
    if (!v) r.fail(row.at, row.value->str() + " is not in " + cod.describe());
    if (t[*k]) r.fail(row.at, "duplicate row for " + row.items[0].str());
    t[*k] = *v;
  }
  std::vector<Index> table(dom.size());
  for (Index i = 0; i < dom.size(); ++i) {
    if (!t[i]) r.fail(d.at, "map '" + d.name + "' has no row for " + dom[i].str());
    table[i] = *t[i];
  }
  return FiniteMap(dom, cod, table);
}

inline Value load_category(const Resolver& r) {
  const Decl& d = r.decl();
  if (d.head) r.fail(d.head->at, "a category takes no head");
  const Row& orow = r.unique("objects");
  const Row& arow = r.unique("arrows");
  FiniteSet obj = r.ref<FiniteSet>(orow.items[1], orow.at, "set");
  FiniteSet arr = r.ref<FiniteSet>(arow.items[1], arow.at, "set");
  Table src("src", {arr}, obj), tgt("tgt", {arr}, obj), id("id", {obj}, arr), comp("comp", {arr, arr}, arr);
  std::map<std::string, bool> autos{{"comp", false}};
  r.fill({{"src", &src}, {"tgt", &tgt}, {"id", &id}, {"comp", &comp}}, {"objects", "arrows"}, {}, &autos);
  src.require_total(d.at);
  tgt.require_total(d.at);
  id.require_total(d.at);
  auto composable = [&](const std::vector<Index>& t) { return src.get({t[0]}) == tgt.get({t[1]}); };
  if (autos["comp"]) {
    comp.set_default([&](const std::vector<Index>& t) -> std::optional<Index> {
      if (!composable(t)) return Index{0};
      Index found = kNoIndex;
      for (Index h = 0; h < arr.size(); ++h) {
        if (src.get({h}) != src.get({t[1]}) || tgt.get({h}) != tgt.get({t[0]})) continue;
        if (found != kNoIndex) return std::nullopt;
        found = h;
      }
      return found == kNoIndex ? std::nullopt : std::optional<Index>(found);
    }, d.at);
  } else {
    comp.require_total(d.at, composable);
  }
  auto table = [&](const Table& t) {
    return FiniteMap::tabulate(arr, obj, [&](std::size_t f) { return t.get({static_cast<Index>(f)}); });
  };
  return InternalCategory::build(obj, arr, table(src), table(tgt),
                                 FiniteMap::tabulate(obj, arr, [&](std::size_t o) { return id.get({static_cast<Index>(o)}); }),
                                 [&](Index g, Index f) { return comp.get({g, f}); });
}

inline Value load_monoidal(const Resolver& r) {
  const Decl& d = r.decl();
  auto [cname, none] = r.head(false);
  const InternalCategory& c = r.ref<InternalCategory>(cname, d.head->at, "category");
  const FiniteSet& v0 = c.objects();
  const FiniteSet& v1 = c.arrows();
  const Row& urow = r.unique("unit");
  auto unit = v0.index_of(urow.items[1]);
  if (!unit) r.fail(urow.at, urow.items[1].str() + " is not an object of '" + cname.str() + "'");
  bool strict = r.flag("strict");
  Table t0("tensor", {v0, v0}, v0), t1("tensor_arr", {v1, v1}, v1), as("assoc", {v0, v0, v0}, v1),
      lu("lunit", {v0}, v1), ru("runit", {v0}, v1);
  std::map<std::string, bool> autos{{"tensor_arr", false}};
  r.fill({{"tensor", &t0}, {"tensor_arr", &t1}, {"assoc", &as}, {"lunit", &lu}, {"runit", &ru}}, {"unit"}, {"strict"},
         &autos);
  t0.require_total(d.at);
  if (autos["tensor_arr"]) {
    t1.set_default([&](const std::vector<Index>& t) {
      return unique_arrow(c, t0.get({c.src(t[0]), c.src(t[1])}), t0.get({c.tgt(t[0]), c.tgt(t[1])}));
    }, d.at);
  } else {
    t1.require_total(d.at);
  }
  if (strict) {
    as.set_default([&](const std::vector<Index>& t) -> std::optional<Index> {
      return c.id(t0.get({t0.get({t[0], t[1]}), t[2]}));
    }, d.at);
    lu.set_default([&](const std::vector<Index>& t) -> std::optional<Index> { return c.id(t[0]); }, d.at);
    ru.set_default([&](const std::vector<Index>& t) -> std::optional<Index> { return c.id(t[0]); }, d.at);
  } else {
    as.require_total(d.at);
    lu.require_total(d.at);
    ru.require_total(d.at);
  }
  return MonoidalPtr(MonoidalStructure::build(
      c, [&](Index a, Index b) { return t0.get({a, b}); }, [&](Index f, Index g) { return t1.get({f, g}); }, *unit,
      [&](Index a, Index b, Index e) { return as.get({a, b, e}); }, [&](Index a) { return lu.get({a}); },
      [&](Index a) { return ru.get({a}); }));
}

inline Value load_functor(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& dom = r.ref<InternalCategory>(a, d.head->at, "category");
  const auto& cod = r.ref<InternalCategory>(*b, d.head->at, "category");
  Table f0("obj", {dom.objects()}, cod.objects()), f1("arr", {dom.arrows()}, cod.arrows());
  r.fill({{"obj", &f0}, {"arr", &f1}}, {}, {});
  f0.require_total(d.at);
  f1.require_total(d.at);
  return InternalFunctor(
      dom, cod, FiniteMap::tabulate(dom.objects(), cod.objects(), [&](std::size_t o) { return f0.get({static_cast<Index>(o)}); }),
      FiniteMap::tabulate(dom.arrows(), cod.arrows(), [&](std::size_t f) { return f1.get({static_cast<Index>(f)}); }));
}

inline Value load_nat(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& f = r.ref<InternalFunctor>(a, d.head->at, "functor");
  const auto& g = r.ref<InternalFunctor>(*b, d.head->at, "functor");
  Table at("at", {f.dom().objects()}, f.cod().arrows());
  r.fill({{"at", &at}}, {}, {});
  at.require_total(d.at);
  return InternalNat(f, g, FiniteMap::tabulate(f.dom().objects(), f.cod().arrows(),
                                               [&](std::size_t o) { return at.get({static_cast<Index>(o)}); }));
}

inline Value load_monoidal_functor(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& v = r.ref<MonoidalPtr>(a, d.head->at, "monoidal");
  const auto& w = r.ref<MonoidalPtr>(*b, d.head->at, "monoidal");
  const Row& frow = r.unique("functor");
  const auto& f = r.ref<InternalFunctor>(frow.items[1], frow.at, "functor");
  const Row& erow = r.unique("eps");
  auto eps = w->base().arrows().index_of(erow.items[1]);
  if (!eps) r.fail(erow.at, erow.items[1].str() + " is not an arrow of the codomain");
  const FiniteSet& v0 = v->base().objects();
  Table mu("mu", {v0, v0}, w->base().arrows());
  r.fill({{"mu", &mu}}, {"functor", "eps"}, {});
  mu.require_total(d.at);
  return MonoidalFunctorData::build(v, w, f, *eps, [&](Index x, Index y) { return mu.get({x, y}); });
}

inline Value load_monoidal_nat(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& f = r.ref<MonoidalFunctorData>(a, d.head->at, "monoidal_functor");
  const auto& g = r.ref<MonoidalFunctorData>(*b, d.head->at, "monoidal_functor");
  const Row& nrow = r.unique("nat");
  const auto& n = r.ref<InternalNat>(nrow.items[1], nrow.at, "nat");
  r.fill({}, {"nat"}, {});
  return MonoidalNatData(f, g, n);
}

inline Value load_enriched(const Resolver& r) {
  const Decl& d = r.decl();
  auto [vname, none] = r.head(false);
  const MonoidalPtr& v = r.ref<MonoidalPtr>(vname, d.head->at, "monoidal");
  const Row& crow = r.unique("carrier");
  const FiniteSet& x = r.ref<FiniteSet>(crow.items[1], crow.at, "set");
  const InternalCategory& c = v->base();
  Table hom("hom", {x, x}, c.objects()), comp("comp", {x, x, x}, c.arrows()), ident("ident", {x}, c.arrows());
  std::map<std::string, bool> autos{{"comp", false}, {"ident", false}};
  r.fill({{"hom", &hom}, {"comp", &comp}, {"ident", &ident}}, {"carrier"}, {}, &autos);
  hom.require_total(d.at);
  if (autos["comp"]) {
    comp.set_default([&](const std::vector<Index>& t) {
      return unique_arrow(c, v->tensor(hom.get({t[1], t[2]}), hom.get({t[0], t[1]})), hom.get({t[0], t[2]}));
    }, d.at);
  } else {
    comp.require_total(d.at);
  }
  if (autos["ident"]) {
    ident.set_default([&](const std::vector<Index>& t) { return unique_arrow(c, v->unit(), hom.get({t[0], t[0]})); }, d.at);
  } else {
    ident.require_total(d.at);
  }
  return EnrichedCategory::build(
      v, x, [&](Index i, Index j) { return hom.get({i, j}); }, [&](Index i, Index j, Index k) { return comp.get({i, j, k}); },
      [&](Index i) { return ident.get({i}); });
}

inline Value load_enriched_functor(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& x = r.ref<EnrichedCategory>(a, d.head->at, "enriched");
  const auto& y = r.ref<EnrichedCategory>(*b, d.head->at, "enriched");
  if (!same_monoidal(x.v(), y.v())) r.fail(d.head->at, "'" + a.str() + "' and '" + b->str() + "' have different bases");
  Table f0("obj", {x.carrier()}, y.carrier()), f1("hom", {x.carrier(), x.carrier()}, x.base().base().arrows());
  r.fill({{"obj", &f0}, {"hom", &f1}}, {}, {});
  f0.require_total(d.at);
  f1.require_total(d.at);
  return EnrichedFunctor::build(
      x, y, [&](Index i) { return f0.get({i}); }, [&](Index i, Index j) { return f1.get({i, j}); });
}

inline Value load_enriched_nat(const Resolver& r) {
  const Decl& d = r.decl();
  auto [a, b] = r.head(true);
  const auto& f = r.ref<EnrichedFunctor>(a, d.head->at, "enriched_functor");
  const auto& g = r.ref<EnrichedFunctor>(*b, d.head->at, "enriched_functor");
  const FiniteSet& x = f.dom().carrier();
  Table at("at", {x}, f.dom().base().base().arrows());
  r.fill({{"at", &at}}, {}, {});
  at.require_total(d.at);
  return EnrichedNat(f, g, FiniteMap::tabulate(x, f.dom().base().base().arrows(),
                                               [&](std::size_t i) { return at.get({static_cast<Index>(i)}); }));
}

inline Value load_family(const Resolver& r) {
  const Decl& d = r.decl();
  if (d.head) r.fail(d.head->at, "a family takes no head");
  FamilySpec f;
  struct Member {
    std::vector<FiniteSet> factors;
    LimitCone cone;
  };
  std::vector<Member> members;
  bool projections = r.flag("projections");
  bool diagonals = r.flag("diagonals");
  for (const Row& row : d.rows) {
    const std::string& k = row.key();
    if (k == "projections" || k == "diagonals") continue;
    if (row.value) r.fail(row.at, "unexpected '->' in a family row");
    if (k == "member") {
      if (row.items.size() < 2) r.fail(row.at, "expected 'member SET [SET ...]'");
      Member m;
      for (std::size_t i = 1; i < row.items.size(); ++i) m.factors.push_back(r.ref<FiniteSet>(row.items[i], row.at, "set"));
      if (m.factors.size() == 1) {
        f.members.push_back(m.factors[0]);
      } else {
        m.cone = product(m.factors);
        f.members.push_back(m.cone.apex);
      }
      members.push_back(std::move(m));
    } else if (k == "connect") {
      if (row.items.size() != 2) r.fail(row.at, "expected 'connect MAP'");
      f.connecting.push_back(r.ref<FiniteMap>(row.items[1], row.at, "map"));
    } else {
      r.fail(row.at, "unknown row '" + k + "' in family '" + d.name + "'");
    }
  }
  auto is_member = [&](const FiniteSet& s) { return std::find(f.members.begin(), f.members.end(), s) != f.members.end(); };
  for (const Member& m : members) {
    if (m.factors.size() < 2) continue;
    if (projections)
      for (std::size_t i = 0; i < m.factors.size(); ++i)
        if (is_member(m.factors[i])) f.connecting.push_back(m.cone.legs[i]);
    if (diagonals && is_member(m.factors[0]) &&
        std::all_of(m.factors.begin(), m.factors.end(), [&](const FiniteSet& s) { return s == m.factors[0]; })) {
      std::vector<FiniteMap> ids(m.factors.size(), identity_map(m.factors[0]));
      f.connecting.push_back(m.cone.pair(ids));
    }
  }
  IndexFamily probe(f.members, f.connecting, false);
  return f;
}

inline Value load_multicat(const Resolver& r, std::size_t default_bound) {
  const Decl& d = r.decl();
  if (d.head) r.fail(d.head->at, "a multicat takes no head");
  std::size_t bound = default_bound;
  const Row* base = nullptr;
  for (const Row& row : d.rows) {
    const std::string& k = row.key();
    if (k == "ind" || k == "mv") {
      if (base) r.fail(row.at, "duplicate base row");
      if (row.items.size() != 2 || row.value) r.fail(row.at, "expected '" + k + " NAME'");
      base = &row;
    } else if (k == "bound") {
      if (row.items.size() != 2 || row.value || row.items[1].is_tuple()) r.fail(row.at, "expected 'bound N'");
      const std::string& s = row.items[1].str();
      if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        r.fail(row.at, "bound must be a small non-negative integer");
      bound = std::stoul(s);
    } else if (k != "comp" && k != "id") {
      r.fail(row.at, "unknown row '" + k + "' in multicat '" + d.name + "'");
    }
  }
  if (!base) r.fail(d.at, "multicat '" + d.name + "' needs an 'ind SET' or 'mv MONOIDAL' row");
  MulticatPtr m = base->key() == "ind" ? ind_multicat(r.ref<FiniteSet>(base->items[1], base->at, "set"), bound)
                                       : build_MV(r.ref<MonoidalPtr>(base->items[1], base->at, "monoidal"), bound);
  for (const Row& row : d.rows) {
    const std::string& k = row.key();
    if (k != "comp" && k != "id") continue;
    if (row.items.size() != 2 || !row.value) r.fail(row.at, "expected '" + k + " ATOM -> ARROW'");
    try {
      m = k == "comp" ? with_comp_override(m, row.items[1], *row.value) : with_id_override(m, row.items[1], *row.value);
    } catch (const Error& e) {
      r.fail(row.at, e.what());
    }
  }
  return m;
}

}  // namespace detail

// Resolves every declaration in order; references must point backwards.
inline Workspace load(SpecDocument doc, std::size_t bound = default_bound()) {
  Workspace ws;
  ws.doc = std::move(doc);
  ws.bound = bound;
  for (const Decl& d : ws.doc.decls) {
    if (ws.has(d.name)) throw located<SchemaViolation>(d.at, "'" + d.name + "' is declared twice");
    detail::Resolver r(ws, d);
    Value v;
    try {
      if (d.kind == "set") {
        v = FiniteSet(d.name, d.elements);
      } else if (d.kind == "map") {
        v = detail::load_map(r);
      } else if (d.kind == "category") {
        v = detail::load_category(r);
      } else if (d.kind == "monoidal") {
        v = detail::load_monoidal(r);
      } else if (d.kind == "functor") {
        v = detail::load_functor(r);
      } else if (d.kind == "nat") {
        v = detail::load_nat(r);
      } else if (d.kind == "monoidal_functor") {
        v = detail::load_monoidal_functor(r);
      } else if (d.kind == "monoidal_nat") {
        v = detail::load_monoidal_nat(r);
      } else if (d.kind == "enriched") {
        v = detail::load_enriched(r);
      } else if (d.kind == "enriched_functor") {
        v = detail::load_enriched_functor(r);
      } else if (d.kind == "enriched_nat") {
        v = detail::load_enriched_nat(r);
      } else if (d.kind == "family") {
        v = detail::load_family(r);
      } else if (d.kind == "multicat") {
        v = detail::load_multicat(r, bound);
      } else {
        throw located<SchemaViolation>(d.at, "unknown declaration kind '" + d.kind + "'");
      }
    } catch (const InputError&) {
      throw;
    } catch (const Error& e) {
      throw located<SchemaViolation>(d.at, d.kind + " '" + d.name + "': " + e.what());
    }
    ws.add(Entry{d.kind, d.name, d.at, std::move(v)});
  }
  return ws;
}

inline Workspace parse_spec(std::string_view text, std::size_t bound = default_bound()) {
  return load(parse_document(text), bound);
}

}  // namespace icat::frontend
