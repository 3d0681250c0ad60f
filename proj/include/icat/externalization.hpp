#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icat/cache.hpp"
#include "icat/enriched.hpp"

namespace icat {

// A family indexed by a finite set, stored as indices into its value set.
using Family = std::vector<Index>;

inline constexpr std::size_t kMaxFamilies = 4'000'000;

inline Atom family_atom(const FiniteSet& values, const Family& f) {
  std::vector<Atom> parts;
  parts.reserve(f.size());
  for (Index i : f) parts.push_back(values[i]);
  return tup(std::move(parts));
}

// f . u
inline Family precompose(const Family& f, const FiniteMap& u) {
  Family r(u.dom().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[u[i]];
  return r;
}

// All families index -> values, with a radix table for lookups.
class FamilySet {
 public:
  FamilySet() = default;
  FamilySet(const FiniteSet& values, const FiniteSet& index, const std::string& name)
      : base_(values.size()), width_(index.size()) {
    std::size_t total = count_maps(width_, base_);
    if (total > kMaxFamilies) {
      throw BoundExceeded("too many families " + index.describe() + " -> " + values.describe());
    }
    std::vector<Family> fams;
    std::vector<Atom> atoms;
    fams.reserve(total);
    atoms.reserve(total);
    for_each_tuple(std::vector<std::size_t>(width_, base_), [&](const Family& f) {
      fams.push_back(f);
      atoms.push_back(family_atom(values, f));
    });
    set_ = FiniteSet(name, atoms);
    fams_.resize(fams.size());
    by_radix_.resize(fams.size());
    for (std::size_t r = 0; r < fams.size(); ++r) {
      Index at = set_.at(atoms[r]);
      by_radix_[r] = at;
      fams_[at] = std::move(fams[r]);
    }
  }

  const FiniteSet& set() const { return set_; }
  std::size_t size() const { return fams_.size(); }
  const Family& at(Index i) const { return fams_[i]; }
  Index find(const Family& f) const {
    if (f.size() != width_) throw DomainMismatch("family has the wrong length");
    std::size_t r = 0;
    for (Index v : f) {
      if (v >= base_) throw DomainMismatch("family value out of range");
      r = r * base_ + v;
    }
    return by_radix_[r];
  }

 private:
  std::size_t base_ = 0, width_ = 0;
  FiniteSet set_;
  std::vector<Family> fams_;
  std::vector<Index> by_radix_;
};

// ---------------------------------------------------------------------------
// Fibers
// ---------------------------------------------------------------------------

// The category of X-indexed families of objects and arrows of A.
class Fiber {
 public:
  Fiber(const InternalCategory& a, const FiniteSet& x)
      : base_(a), index_(x),
        objs_(a.objects(), x, a.objects().describe() + "[" + x.describe() + "]"),
        arrs_(a.arrows(), x, a.arrows().describe() + "[" + x.describe() + "]") {
    const std::size_t n = x.size();
    auto src = FiniteMap::tabulate(arrs_.set(), objs_.set(), [&](std::size_t s) {
      Family f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = a.src(arrs_.at(static_cast<Index>(s))[i]);
      return objs_.find(f);
    });
    auto tgt = FiniteMap::tabulate(arrs_.set(), objs_.set(), [&](std::size_t s) {
      Family f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = a.tgt(arrs_.at(static_cast<Index>(s))[i]);
      return objs_.find(f);
    });
    auto ids = FiniteMap::tabulate(objs_.set(), arrs_.set(), [&](std::size_t o) {
      Family f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = a.id(objs_.at(static_cast<Index>(o))[i]);
      return arrs_.find(f);
    });
    cat_ = InternalCategory::build(objs_.set(), arrs_.set(), src, tgt, ids, [&](Index g, Index f) {
      const Family& gs = arrs_.at(g);
      const Family& fs = arrs_.at(f);
      Family r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = a.comp(gs[i], fs[i]);
      return arrs_.find(r);
    });
  }

  const InternalCategory& base() const { return base_; }
  const FiniteSet& index() const { return index_; }
  const InternalCategory& category() const { return cat_; }

  Index obj(const Family& f) const { return objs_.find(f); }
  Index arr(const Family& s) const { return arrs_.find(s); }
  const Family& obj_family(Index o) const { return objs_.at(o); }
  const Family& arr_family(Index s) const { return arrs_.at(s); }

 private:
  InternalCategory base_;
  FiniteSet index_;
  FamilySet objs_, arrs_;
  InternalCategory cat_;
};

using FiberPtr = std::shared_ptr<const Fiber>;

inline FiberPtr fiber(const InternalCategory& a, const FiniteSet& x) {
  static detail::OnDemandCache<InternalCategory, Fiber> cache;
  return cache.get(a.key(), x.encoding(), a, [&] { return std::make_shared<const Fiber>(a, x); });
}

// (x0, x1)^* A1 as the pullback of (src, tgt) along (x0, x1); elements <x, f>.
// Leg 0 is the projection p onto X, leg 1 the inclusion into A1.
inline LimitCone family_pullback(const InternalCategory& a, const FiniteMap& x0, const FiniteMap& x1) {
  return pullback(pair_map(x0, x1), pair_map(a.source(), a.target()));
}

// The section of p determined by a family of arrows.
inline FiniteMap section_of(const LimitCone& pb, const FiniteSet& x, const FiniteSet& arrows, const Family& s) {
  return pb.pair(identity_map(x), FiniteMap(x, arrows, s));
}

inline Family family_of(const LimitCone& pb, const FiniteMap& section) {
  return compose_map(section, pb.legs[1]).table();
}

// u^*((x0, x1)^* A1) ~= (x0 u, x1 u)^* A1 by pullback pasting.
struct PastingIso {
  LimitCone original;   // (x0, x1)^* A1 over X
  LimitCone pulled;     // u^* of it, elements <x', <x, f>>
  LimitCone reindexed;  // (x0 u, x1 u)^* A1 over X'
  FiniteMap iso;        // pulled.apex -> reindexed.apex
};

inline PastingIso pasting_iso(const FiniteMap& u, const InternalCategory& a, const FiniteMap& x0, const FiniteMap& x1) {
  PastingIso p;
  p.original = family_pullback(a, x0, x1);
  p.pulled = pullback(u, p.original.legs[0]);
  p.reindexed = family_pullback(a, compose_map(u, x0), compose_map(u, x1));
  p.iso = p.reindexed.pair(p.pulled.legs[0], compose_map(p.pulled.legs[1], p.original.legs[1]));
  return p;
}

// u^* s, computed by pulling the section back along u and pasting.
inline FiniteMap reindex_section(const FiniteMap& u, const PastingIso& p, const FiniteMap& s) {
  FiniteMap m = p.pulled.pair(identity_map(u.dom()), compose_map(u, s));
  return compose_map(m, p.iso);
}

// u^* : A[X] -> A[X'] for u: X' -> X.
inline InternalFunctor reindex(const FiniteMap& u, const Fiber& fib) {
  if (!(u.cod() == fib.index())) {
    throw DomainMismatch("reindexing along a map into " + u.cod().describe() + ", not " + fib.index().describe());
  }
  const InternalCategory& a = fib.base();
  FiberPtr to = fiber(a, u.dom());
  const InternalCategory& src = fib.category();
  auto f0 = FiniteMap::tabulate(src.objects(), to->category().objects(), [&](std::size_t o) {
    return to->obj(precompose(fib.obj_family(static_cast<Index>(o)), u));
  });
  std::map<std::pair<Index, Index>, PastingIso> pastes;
  auto f1 = FiniteMap::tabulate(src.arrows(), to->category().arrows(), [&](std::size_t t) {
    Index s = static_cast<Index>(t);
    Index o0 = src.src(s), o1 = src.tgt(s);
    auto it = pastes.find({o0, o1});
    if (it == pastes.end()) {
      FiniteMap x0(fib.index(), a.objects(), fib.obj_family(o0));
      FiniteMap x1(fib.index(), a.objects(), fib.obj_family(o1));
      it = pastes.emplace(std::make_pair(o0, o1), pasting_iso(u, a, x0, x1)).first;
    }
    const PastingIso& p = it->second;
    FiniteMap sec = section_of(p.original, fib.index(), a.arrows(), fib.arr_family(s));
    return to->arr(family_of(p.reindexed, reindex_section(u, p, sec)));
  });
  return InternalFunctor(src, to->category(), f0, f1);
}

inline InternalFunctor reindex(const FiniteMap& u, const InternalCategory& a) { return reindex(u, *fiber(a, u.cod())); }

// F[X] : A[X] -> B[X], pointwise.
inline InternalFunctor fiber_functor(const InternalFunctor& f, const FiniteSet& x) {
  FiberPtr a = fiber(f.dom(), x);
  FiberPtr b = fiber(f.cod(), x);
  auto f0 = FiniteMap::tabulate(a->category().objects(), b->category().objects(), [&](std::size_t o) {
    Family r = a->obj_family(static_cast<Index>(o));
    for (auto& v : r) v = f.obj(v);
    return b->obj(r);
  });
  auto f1 = FiniteMap::tabulate(a->category().arrows(), b->category().arrows(), [&](std::size_t s) {
    Family r = a->arr_family(static_cast<Index>(s));
    for (auto& v : r) v = f.arr(v);
    return b->arr(r);
  });
  return InternalFunctor(a->category(), b->category(), f0, f1);
}

inline InternalNat fiber_nat(const InternalNat& n, const FiniteSet& x) {
  InternalFunctor s = fiber_functor(n.src(), x);
  InternalFunctor t = fiber_functor(n.tgt(), x);
  FiberPtr a = fiber(n.src().dom(), x);
  FiberPtr b = fiber(n.src().cod(), x);
  auto comp = FiniteMap::tabulate(a->category().objects(), b->category().arrows(), [&](std::size_t o) {
    Family r = a->obj_family(static_cast<Index>(o));
    for (auto& v : r) v = n.at(v);
    return b->arr(r);
  });
  return InternalNat(s, t, comp);
}

// ---------------------------------------------------------------------------
// Monoidal fibers
// ---------------------------------------------------------------------------

// Tensor, unit and coherence isomorphisms defined pointwise.
inline MonoidalPtr fiber_monoidal(const MonoidalPtr& v, const FiniteSet& x) {
  static detail::OnDemandCache<MonoidalPtr, MonoidalStructure> cache;
  const std::size_t n1 = count_maps(x.size(), v->n1());
  if (n1 > 0 && n1 > kMaxFamilies / n1) {
    throw BoundExceeded("monoidal fiber over " + x.describe() + " has " + std::to_string(n1) + " arrows");
  }
  return cache.get(v.get(), x.encoding(), v, [&]() -> MonoidalPtr {
    FiberPtr fib = fiber(v->base(), x);
    const std::size_t n = x.size();
    auto pw_obj = [&](auto&& op, std::initializer_list<Index> objs) {
      std::vector<const Family*> fs;
      for (Index o : objs) fs.push_back(&fib->obj_family(o));
      Family r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = op(fs, i);
      return r;
    };
    auto t0 = [&](Index a, Index b) {
      return fib->obj(pw_obj([&](auto& fs, std::size_t i) { return v->tensor((*fs[0])[i], (*fs[1])[i]); }, {a, b}));
    };
    auto t1 = [&](Index f, Index g) {
      const Family& ff = fib->arr_family(f);
      const Family& gg = fib->arr_family(g);
      Family r(n);
      for (std::size_t i = 0; i < n; ++i) r[i] = v->tensor_arr(ff[i], gg[i]);
      return fib->arr(r);
    };
    auto assoc = [&](Index a, Index b, Index c) {
      return fib->arr(pw_obj(
          [&](auto& fs, std::size_t i) { return v->assoc((*fs[0])[i], (*fs[1])[i], (*fs[2])[i]); }, {a, b, c}));
    };
    auto lu = [&](Index a) {
      return fib->arr(pw_obj([&](auto& fs, std::size_t i) { return v->lunit((*fs[0])[i]); }, {a}));
    };
    auto ru = [&](Index a) {
      return fib->arr(pw_obj([&](auto& fs, std::size_t i) { return v->runit((*fs[0])[i]); }, {a}));
    };
    Index unit = fib->obj(Family(n, v->unit()));
    return MonoidalStructure::build(fib->category(), t0, t1, unit, assoc, lu, ru);
  });
}

// u^* as a strict monoidal functor between monoidal fibers.
inline MonoidalFunctorData reindex_monoidal(const MonoidalPtr& v, const FiniteMap& u) {
  MonoidalPtr from = fiber_monoidal(v, u.cod());
  MonoidalPtr to = fiber_monoidal(v, u.dom());
  InternalFunctor f = reindex(u, v->base());
  const InternalCategory& c = to->base();
  return MonoidalFunctorData::build(from, to, f, c.id(to->unit()), [&](Index a, Index b) {
    return c.id(to->tensor(f.obj(a), f.obj(b)));
  });
}

// Reindexing preserves the monoidal structure on the nose.
inline CheckReport check_reindex_strict(const MonoidalPtr& v, const FiniteMap& u, const CheckOptions& opt = {}) {
  CheckReport r("reindex", "reindex");
  MonoidalPtr from = fiber_monoidal(v, u.cod());
  MonoidalPtr to = fiber_monoidal(v, u.dom());
  InternalFunctor f = reindex(u, v->base());
  const InternalCategory& a = from->base();
  auto& un = r.axiom("reindex.unit");
  un.expect(f.obj(from->unit()) == to->unit(), [&] { return Witness{a.obj_atom(from->unit())}; });
  auto& to0 = r.axiom("reindex.tensor_objects");
  auto& co = r.axiom("reindex.coherence");
  for (Index x = 0; x < from->n0(); ++x) {
    co.expect(f.arr(from->lunit(x)) == to->lunit(f.obj(x)) && f.arr(from->runit(x)) == to->runit(f.obj(x)),
              [&] { return Witness{a.obj_atom(x)}; });
    for (Index y = 0; y < from->n0(); ++y) {
      to0.expect(f.obj(from->tensor(x, y)) == to->tensor(f.obj(x), f.obj(y)),
                 [&] { return Witness{a.obj_atom(x), a.obj_atom(y)}; });
      for (Index z = 0; z < from->n0(); ++z) {
        co.expect(f.arr(from->assoc(x, y, z)) == to->assoc(f.obj(x), f.obj(y), f.obj(z)),
                  [&] { return Witness{a.obj_atom(x), a.obj_atom(y), a.obj_atom(z)}; });
      }
    }
  }
  auto& to1 = r.axiom("reindex.tensor_arrows");
  for (Index g = 0; g < from->n1(); ++g)
    for (Index h = 0; h < from->n1(); ++h) {
      to1.expect(f.arr(from->tensor_arr(g, h)) == to->tensor_arr(f.arr(g), f.arr(h)),
                 [&] { return Witness{a.arr_atom(g), a.arr_atom(h)}; });
    }
  return r.finish(opt);
}

// (w . u)^* == u^* . w^* and id^* == id, as encodings.
inline CheckReport check_reindex_functoriality(const InternalCategory& a, const FiniteMap& u, const FiniteMap& w,
                                               const CheckOptions& opt = {}) {
  CheckReport r("reindex", "reindex");
  InternalFunctor lhs = reindex(compose_map(u, w), a);
  InternalFunctor rhs = compose_functors(reindex(w, a), reindex(u, a));
  auto& c = r.axiom("reindex.composition");
  const InternalCategory& src = lhs.dom();
  for (Index o = 0; o < src.objects().size(); ++o)
    c.expect(lhs.obj(o) == rhs.obj(o), [&] { return Witness{src.obj_atom(o)}; });
  for (Index s = 0; s < src.arrows().size(); ++s)
    c.expect(lhs.arr(s) == rhs.arr(s), [&] { return Witness{src.arr_atom(s)}; });
  auto& id = r.axiom("reindex.identity");
  for (const FiniteSet& x : {u.dom(), u.cod(), w.cod()}) {
    InternalFunctor i = reindex(identity_map(x), a);
    id.expect(i == identity_functor(i.dom()), [&] { return Witness{leaf(std::to_string(x.size()))}; });
  }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Grothendieck constructions over a finite index family
// ---------------------------------------------------------------------------

// The full subcategory spanned by a finite family of sets, with arrows the
// closure of the connecting maps (and, when requested, of their products)
// under composition.
class IndexFamily {
 public:
  static constexpr std::size_t kMaxArrows = 20000;

  IndexFamily() = default;
  IndexFamily(std::vector<FiniteSet> members, const std::vector<FiniteMap>& connecting, bool with_products)
      : members_(std::move(members)) {
    if (members_.empty()) throw MalformedFamily("index family is empty");
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (members_[i] == members_[j]) throw MalformedFamily("index family lists " + members_[i].encoding() + " twice");
    const std::size_t k = members_.size();
    prod_.assign(k * k, kNoIndex);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        if (auto m = member_of(product(members_[a], members_[b]).apex)) prod_[a * k + b] = *m;

    struct Raw {
      Index dom, cod;
      FiniteMap map;
    };
    std::vector<Raw> raw;
    std::unordered_map<std::string, std::size_t> seen;
    auto key = [](Index d, Index c, const FiniteMap& m) {
      std::string s = std::to_string(d) + ":" + std::to_string(c);
      for (Index v : m.table()) s += "," + std::to_string(v);
      return s;
    };
    auto add = [&](Index d, Index c, const FiniteMap& m) {
      if (seen.emplace(key(d, c, m), raw.size()).second) {
        if (raw.size() >= kMaxArrows) throw MalformedFamily("index category exceeds " + std::to_string(kMaxArrows) + " arrows");
        raw.push_back(Raw{d, c, FiniteMap(members_[d], members_[c], m.table())});
      }
    };
    for (Index m = 0; m < k; ++m) add(m, m, identity_map(members_[m]));
    for (const auto& u : connecting) {
      auto d = member_of(u.dom());
      auto c = member_of(u.cod());
      if (!d || !c) throw MalformedFamily("connecting map " + u.dom().describe() + " -> " + u.cod().describe() + " leaves the family");
      add(*d, *c, u);
    }
    for (std::size_t done = 0; done < raw.size(); ++done) {
      for (std::size_t j = 0; j <= done; ++j) {
        // copies: add() may reallocate
        Raw f = raw[done], g = raw[j];
        if (f.cod == g.dom) add(f.dom, g.cod, compose_map(f.map, g.map));
        if (g.cod == f.dom) add(g.dom, f.cod, compose_map(g.map, f.map));
        if (with_products) {
          for (int side = 0; side < 2; ++side) {
            const Raw& l = side ? g : f;
            const Raw& r = side ? f : g;
            Index d = prod_[l.dom * k + r.dom], c = prod_[l.cod * k + r.cod];
            if (d != kNoIndex && c != kNoIndex) add(d, c, product_map(l.map, r.map));
          }
        }
      }
    }

    const std::size_t width = std::to_string(k).size();
    std::vector<Atom> objs;
    for (Index m = 0; m < k; ++m) objs.push_back(member_atom(m, width));
    FiniteSet obj("family", objs);
    std::vector<Atom> arr_atoms;
    for (const auto& r : raw) arr_atoms.push_back(arrow_atom(r.dom, r.cod, r.map, width));
    FiniteSet arr("family1", arr_atoms);
    std::vector<Index> order(raw.size());
    maps_.resize(raw.size());
    dom_.resize(raw.size());
    cod_.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      Index at = arr.at(arr_atoms[i]);
      order[i] = at;
      maps_[at] = raw[i].map;
      dom_[at] = raw[i].dom;
      cod_[at] = raw[i].cod;
      lookup_.emplace(key(raw[i].dom, raw[i].cod, raw[i].map), at);
    }
    auto src = FiniteMap(arr, obj, dom_);
    auto tgt = FiniteMap(arr, obj, cod_);
    auto ids = FiniteMap::tabulate(obj, arr, [&](std::size_t m) { return order[m]; });
    cat_ = InternalCategory::build(obj, arr, src, tgt, ids, [&](Index g, Index f) {
      return lookup_.at(key(dom_[f], cod_[g], compose_map(maps_[f], maps_[g])));
    });
    key_ = key;
  }

  const std::vector<FiniteSet>& members() const { return members_; }
  const FiniteSet& member(Index m) const { return members_[m]; }
  const InternalCategory& category() const { return cat_; }
  std::size_t arrow_count() const { return maps_.size(); }
  const FiniteMap& map(Index u) const { return maps_[u]; }
  Index dom(Index u) const { return dom_[u]; }
  Index cod(Index u) const { return cod_[u]; }

  std::optional<Index> member_of(const FiniteSet& s) const {
    for (Index m = 0; m < members_.size(); ++m)
      if (members_[m] == s) return m;
    return std::nullopt;
  }
  std::optional<Index> arrow_of(const FiniteMap& u) const {
    auto d = member_of(u.dom());
    auto c = member_of(u.cod());
    if (!d || !c) return std::nullopt;
    auto it = lookup_.find(key_(*d, *c, u));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Index> product_member(Index a, Index b) const {
    Index m = prod_[a * members_.size() + b];
    return m == kNoIndex ? std::nullopt : std::optional<Index>(m);
  }
  std::optional<Index> terminal_member() const { return member_of(terminal()); }

 private:
  static Atom member_atom(Index m, std::size_t width) {
    std::string s = std::to_string(m);
    return leaf("m" + std::string(width - s.size(), '0') + s);
  }
  Atom arrow_atom(Index d, Index c, const FiniteMap& m, std::size_t width) const {
    std::vector<Atom> vals;
    for (Index v : m.table()) vals.push_back(members_[c][v]);
    return tup({member_atom(d, width), member_atom(c, width), tup(vals)});
  }

  std::vector<FiniteSet> members_;
  std::vector<Index> prod_;
  std::vector<FiniteMap> maps_;
  std::vector<Index> dom_, cod_;
  std::unordered_map<std::string, Index> lookup_;
  std::function<std::string(Index, Index, const FiniteMap&)> key_;
  InternalCategory cat_;
};

// Objects are pairs (X, x: X -> A0); arrows (x over X) -> (y over Y) are an
// index arrow u: X -> Y and a family of arrows x -> y u.
class TotalCategory {
 public:
  TotalCategory() = default;
  TotalCategory(InternalCategory base, IndexFamily idx) : base_(std::move(base)), idx_(std::move(idx)) {
    const auto& a = base_;
    const std::size_t k = idx_.members().size();
    fams_.reserve(k);
    for (Index m = 0; m < k; ++m) fams_.emplace_back(a.objects(), idx_.member(m), "");
    std::vector<Atom> obj_atoms;
    std::vector<std::pair<Index, Index>> obj_raw;  // (member, family)
    for (Index m = 0; m < k; ++m)
      for (Index f = 0; f < fams_[m].size(); ++f) {
        obj_atoms.push_back(tup({idx_.category().obj_atom(m), fams_[m].set()[f]}));
        obj_raw.emplace_back(m, f);
      }
    FiniteSet obj("total", obj_atoms);
    obj_member_.resize(obj.size());
    obj_family_.resize(obj.size());
    by_member_.assign(k, {});
    for (Index m = 0; m < k; ++m) by_member_[m].resize(fams_[m].size());
    for (std::size_t i = 0; i < obj_raw.size(); ++i) {
      Index at = obj.at(obj_atoms[i]);
      obj_member_[at] = obj_raw[i].first;
      obj_family_[at] = obj_raw[i].second;
      by_member_[obj_raw[i].first][obj_raw[i].second] = at;
    }

    struct Raw {
      Index u, x, y;
      Family s;
    };
    std::vector<Raw> raw;
    std::vector<Atom> arr_atoms;
    const InternalCategory& ic = idx_.category();
    for (Index u = 0; u < idx_.arrow_count(); ++u) {
      const FiniteMap& um = idx_.map(u);
      Index dm = idx_.dom(u), cm = idx_.cod(u);
      const std::size_t n = um.dom().size();
      for (Index xf = 0; xf < fams_[dm].size(); ++xf)
        for (Index yf = 0; yf < fams_[cm].size(); ++yf) {
          const Family& xs = fams_[dm].at(xf);
          const Family& ys = fams_[cm].at(yf);
          std::vector<std::vector<Index>> homs(n);
          std::vector<std::size_t> radices(n);
          for (std::size_t i = 0; i < n; ++i) {
            homs[i] = a.hom(xs[i], ys[um[i]]);
            radices[i] = homs[i].size();
          }
          Index xo = by_member_[dm][xf], yo = by_member_[cm][yf];
          for_each_tuple(radices, [&](const std::vector<Index>& pick) {
            Family s(n);
            for (std::size_t i = 0; i < n; ++i) s[i] = homs[i][pick[i]];
            arr_atoms.push_back(tup({obj[xo], obj[yo], ic.arr_atom(u), family_atom(a.arrows(), s)}));
            raw.push_back(Raw{u, xo, yo, std::move(s)});
          });
        }
    }
    FiniteSet arr("total1", arr_atoms);
    arr_index_.resize(arr.size());
    arr_section_.resize(arr.size());
    std::vector<Index> src(arr.size()), tgt(arr.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      Index at = arr.at(arr_atoms[i]);
      arr_index_[at] = raw[i].u;
      arr_section_[at] = std::move(raw[i].s);
      src[at] = raw[i].x;
      tgt[at] = raw[i].y;
    }
    auto ids = FiniteMap::tabulate(obj, arr, [&](std::size_t o) {
      Index m = obj_member_[o];
      Family s = fams_[m].at(obj_family_[o]);
      for (auto& v : s) v = a.id(v);
      return arr.at(tup({obj[o], obj[o], ic.arr_atom(ic.id(m)), family_atom(a.arrows(), s)}));
    });
    total_ = InternalCategory::build(obj, arr, FiniteMap(arr, obj, src), FiniteMap(arr, obj, tgt), ids,
                                     [&](Index g, Index f) {
                                       Index u = arr_index_[f], v = arr_index_[g];
                                       const FiniteMap& um = idx_.map(u);
                                       const Family& fs = arr_section_[f];
                                       const Family& gs = arr_section_[g];
                                       Family h(fs.size());
                                       for (std::size_t i = 0; i < h.size(); ++i) h[i] = a.comp(gs[um[i]], fs[i]);
                                       return arr.at(tup({obj[src[f]], obj[tgt[g]], ic.arr_atom(ic.comp(v, u)),
                                                          family_atom(a.arrows(), h)}));
                                     });
    proj_ = InternalFunctor(total_, ic, FiniteMap(obj, ic.objects(), obj_member_), FiniteMap(arr, ic.arrows(), arr_index_));
  }

  const InternalCategory& base() const { return base_; }
  const IndexFamily& index() const { return idx_; }
  const InternalCategory& category() const { return total_; }
  const InternalFunctor& projection() const { return proj_; }

  Index member(Index o) const { return obj_member_[o]; }
  const Family& family(Index o) const { return fams_[obj_member_[o]].at(obj_family_[o]); }
  Index index_arrow(Index f) const { return arr_index_[f]; }
  const Family& section(Index f) const { return arr_section_[f]; }

  Index object(Index m, const Family& x) const { return by_member_[m][fams_[m].find(x)]; }
  std::optional<Index> arrow(Index u, Index x, Index y, const Family& s) const {
    const InternalCategory& ic = idx_.category();
    return total_.arrows().index_of(tup({total_.obj_atom(x), total_.obj_atom(y), ic.arr_atom(u), family_atom(base_.arrows(), s)}));
  }

  // The chosen lift of u at y: (u, identities) from y u to y.
  std::optional<Index> lift(Index u, Index y) const {
    if (obj_member_[y] != idx_.cod(u)) throw EndpointMismatch("object does not lie over the codomain of the index arrow");
    Family yu = precompose(family(y), idx_.map(u));
    Index x = object(idx_.dom(u), yu);
    Family s = yu;
    for (auto& v : s) v = base_.id(v);
    return arrow(u, x, y, s);
  }

 private:
  InternalCategory base_;
  IndexFamily idx_;
  std::vector<FamilySet> fams_;
  std::vector<Index> obj_member_, obj_family_;
  std::vector<std::vector<Index>> by_member_;
  std::vector<Index> arr_index_;
  std::vector<Family> arr_section_;
  InternalCategory total_;
  InternalFunctor proj_;
};

inline TotalCategory grothendieck(const InternalCategory& a, std::vector<FiniteSet> family,
                                  const std::vector<FiniteMap>& connecting) {
  return TotalCategory(a, IndexFamily(std::move(family), connecting, false));
}

inline CheckReport check_grothendieck(const TotalCategory& t, const CheckOptions& opt = {},
                                      const std::string& subject = "grothendieck") {
  CheckReport r(subject, "grothendieck");
  r.absorb(check_category(t.category(), opt), "grothendieck.");
  r.absorb(check_functor(t.projection(), opt), "grothendieck.projection.");
  const InternalCategory& c = t.category();
  const InternalCategory& ic = t.index().category();
  auto& lifts = r.axiom("grothendieck.lifts");
  auto& cart = r.axiom("grothendieck.cartesian");
  std::vector<std::vector<Index>> into(c.objects().size());
  for (Index g = 0; g < c.arrows().size(); ++g) into[c.tgt(g)].push_back(g);
  for (Index u = 0; u < ic.arrows().size(); ++u) {
    for (Index y = 0; y < c.objects().size(); ++y) {
      if (t.member(y) != ic.tgt(u)) continue;
      auto l = t.lift(u, y);
      if (!lifts.expect(l.has_value(), [&] { return Witness{ic.arr_atom(u), c.obj_atom(y)}; })) continue;
      Index x = c.src(*l);
      for (Index g : into[y]) {
        Index z = c.src(g);
        std::map<Index, std::size_t> count;
        for (Index h : c.arrows_from(z)) {
          if (c.tgt(h) == x && c.comp(*l, h) == g) ++count[t.index_arrow(h)];
        }
        for (Index w : ic.arrows_from(t.member(z))) {
          if (ic.tgt(w) != ic.src(u) || ic.comp(u, w) != t.index_arrow(g)) continue;
          auto it = count.find(w);
          cart.expect(it != count.end() && it->second == 1,
                      [&] { return Witness{c.arr_atom(*l), c.arr_atom(g), ic.arr_atom(w)}; });
        }
      }
    }
  }
  return r.finish(opt);
}

// The total category of the externalization of V with the tensor
// (X, x) (x) (Y, y) = (X x Y, tensor . (x x y)). The tensor is defined on the
// pairs whose product is a member of the family.
class MonoidalTotal {
 public:
  MonoidalTotal(MonoidalPtr v, std::vector<FiniteSet> family, const std::vector<FiniteMap>& connecting)
      : v_(std::move(v)) {
    IndexFamily idx(std::move(family), connecting, true);
    if (!idx.terminal_member()) throw FamilyNotProductClosed("index family does not contain the terminal set");
    total_ = TotalCategory(v_->base(), std::move(idx));
    const IndexFamily& ix = total_.index();
    const std::size_t k = ix.members().size();
    cones_.resize(k * k);
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b)
        if (ix.product_member(a, b)) cones_[a * k + b] = product(ix.member(a), ix.member(b));
    unit_ = total_.object(*ix.terminal_member(), Family{v_->unit()});
  }

  const MonoidalPtr& v() const { return v_; }
  const TotalCategory& total() const { return total_; }
  Index unit() const { return unit_; }

  std::optional<Index> tensor(Index a, Index b) const {
    const IndexFamily& ix = total_.index();
    Index ma = total_.member(a), mb = total_.member(b);
    auto m = ix.product_member(ma, mb);
    if (!m) return std::nullopt;
    const LimitCone& p = *cones_[ma * ix.members().size() + mb];
    const Family& xa = total_.family(a);
    const Family& xb = total_.family(b);
    Family r(p.apex.size());
    for (std::size_t t = 0; t < r.size(); ++t) r[t] = v_->tensor(xa[p.legs[0][t]], xb[p.legs[1][t]]);
    return total_.object(*m, r);
  }

  std::optional<Index> tensor_arr(Index f, Index g) const {
    const IndexFamily& ix = total_.index();
    const InternalCategory& c = total_.category();
    auto s = tensor(c.src(f), c.src(g));
    auto t = tensor(c.tgt(f), c.tgt(g));
    if (!s || !t) return std::nullopt;
    auto uv = ix.arrow_of(product_map(ix.map(total_.index_arrow(f)), ix.map(total_.index_arrow(g))));
    if (!uv) return std::nullopt;
    Index ma = total_.member(c.src(f)), mb = total_.member(c.src(g));
    const LimitCone& p = *cones_[ma * ix.members().size() + mb];
    const Family& sf = total_.section(f);
    const Family& sg = total_.section(g);
    Family r(p.apex.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v_->tensor_arr(sf[p.legs[0][i]], sg[p.legs[1][i]]);
    return total_.arrow(*uv, *s, *t, r);
  }

 private:
  MonoidalPtr v_;
  TotalCategory total_;
  std::vector<std::optional<LimitCone>> cones_;
  Index unit_ = 0;
};

inline MonoidalTotal monoidal_grothendieck(const MonoidalPtr& v, std::vector<FiniteSet> family,
                                           const std::vector<FiniteMap>& connecting) {
  return MonoidalTotal(v, std::move(family), connecting);
}

inline CheckReport check_monoidal_grothendieck(const MonoidalTotal& mt, const CheckOptions& opt = {},
                                               const std::string& subject = "grothendieck") {
  CheckReport r = check_grothendieck(mt.total(), opt, subject);
  const TotalCategory& t = mt.total();
  const IndexFamily& ix = t.index();
  const InternalCategory& c = t.category();
  const InternalCategory& ic = ix.category();
  const MonoidalStructure& v = *mt.v();
  const Index n0 = static_cast<Index>(c.objects().size());
  const Index n1 = static_cast<Index>(c.arrows().size());

  auto& un = r.axiom("grothendieck.tensor.unit");
  un.expect(t.member(mt.unit()) == *ix.terminal_member() && t.family(mt.unit()) == Family{v.unit()},
            [&] { return Witness{c.obj_atom(mt.unit())}; });

  auto& pr = r.axiom("grothendieck.tensor.projection");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b) {
      auto ab = mt.tensor(a, b);
      if (!ab) continue;
      pr.expect(t.member(*ab) == *ix.product_member(t.member(a), t.member(b)),
                [&] { return Witness{c.obj_atom(a), c.obj_atom(b)}; });
    }

  auto& fn = r.axiom("grothendieck.tensor.functorial");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b) {
      auto ab = mt.tensor(a, b);
      if (!ab) continue;
      auto ii = mt.tensor_arr(c.id(a), c.id(b));
      fn.expect(ii && *ii == c.id(*ab), [&] { return Witness{c.obj_atom(a), c.obj_atom(b)}; });
    }
  for (Index f = 0; f < n1; ++f) {
    for (Index g : c.arrows_from(c.tgt(f))) {
      Index gf = c.comp(g, f);
      for (Index b = 0; b < n0; ++b) {
        for (int side = 0; side < 2; ++side) {
          auto ten = [&](Index h) { return side ? mt.tensor_arr(c.id(b), h) : mt.tensor_arr(h, c.id(b)); };
          auto whole = ten(gf), l = ten(g), rr = ten(f);
          if (!whole || !l || !rr) continue;
          auto pr2 = c.try_comp(*l, *rr);
          fn.expect(pr2 && *pr2 == *whole, [&] { return Witness{c.arr_atom(g), c.arr_atom(f), c.obj_atom(b)}; });
          auto pp = ix.arrow_of(side ? product_map(identity_map(ix.member(t.member(b))), ix.map(t.index_arrow(gf)))
                                     : product_map(ix.map(t.index_arrow(gf)), identity_map(ix.member(t.member(b)))));
          pr.expect(pp && t.index_arrow(*whole) == *pp, [&] { return Witness{c.arr_atom(gf), c.obj_atom(b)}; });
        }
      }
    }
  }

  auto& lf = r.axiom("grothendieck.tensor.lifts");
  for (Index u = 0; u < ic.arrows().size(); ++u)
    for (Index w = 0; w < ic.arrows().size(); ++w) {
      auto uw = ix.arrow_of(product_map(ix.map(u), ix.map(w)));
      if (!uw || !ix.product_member(ic.tgt(u), ic.tgt(w))) continue;
      for (Index y = 0; y < n0; ++y) {
        if (t.member(y) != ic.tgt(u)) continue;
        for (Index z = 0; z < n0; ++z) {
          if (t.member(z) != ic.tgt(w)) continue;
          auto ly = t.lift(u, y), lz = t.lift(w, z);
          auto yz = mt.tensor(y, z);
          if (!ly || !lz || !yz) continue;
          auto lhs = mt.tensor_arr(*ly, *lz);
          auto rhs = t.lift(*uw, *yz);
          lf.expect(lhs && rhs && *lhs == *rhs,
                    [&] { return Witness{ic.arr_atom(u), ic.arr_atom(w), c.obj_atom(y), c.obj_atom(z)}; });
        }
      }
    }

  // The fiberwise tensor is the restriction of the total tensor along the diagonal.
  auto& dg = r.axiom("grothendieck.tensor.diagonal");
  for (Index m = 0; m < ix.members().size(); ++m) {
    auto mm = ix.product_member(m, m);
    if (!mm) continue;
    const FiniteSet& x = ix.member(m);
    LimitCone sq = product(x, x);
    FiniteMap delta = sq.pair(identity_map(x), identity_map(x));
    MonoidalPtr fm = fiber_monoidal(mt.v(), x);
    FiberPtr fb = fiber(v.base(), x);
    const InternalCategory& fc = fm->base();
    for (Index a = 0; a < fc.objects().size(); ++a)
      for (Index b = 0; b < fc.objects().size(); ++b) {
        Index ta = t.object(m, fb->obj_family(a)), tb = t.object(m, fb->obj_family(b));
        auto ab = mt.tensor(ta, tb);
        dg.expect(ab && precompose(t.family(*ab), delta) == fb->obj_family(fm->tensor(a, b)),
                  [&] { return Witness{fc.obj_atom(a), fc.obj_atom(b)}; });
      }
    auto idm = ic.id(m);
    for (Index f = 0; f < fc.arrows().size(); ++f)
      for (Index g = 0; g < fc.arrows().size(); ++g) {
        auto tf = t.arrow(idm, t.object(m, fb->obj_family(fc.src(f))), t.object(m, fb->obj_family(fc.tgt(f))), fb->arr_family(f));
        auto tg = t.arrow(idm, t.object(m, fb->obj_family(fc.src(g))), t.object(m, fb->obj_family(fc.tgt(g))), fb->arr_family(g));
        if (!tf || !tg) continue;
        auto fg = mt.tensor_arr(*tf, *tg);
        dg.expect(fg && precompose(t.section(*fg), delta) == fb->arr_family(fm->tensor_arr(f, g)),
                  [&] { return Witness{fc.arr_atom(f), fc.arr_atom(g)}; });
      }
  }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Small coincidence: the enriched data re-read as families over X^n
// ---------------------------------------------------------------------------

namespace detail {

// Pointwise operations on families of V; kNoIndex marks an undefined entry.
struct FamilyOps {
  const MonoidalStructure& v;
  const InternalCategory& c = v.base();

  Family comp(const Family& g, const Family& f) const {
    Family r(f.size(), kNoIndex);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (g[i] == kNoIndex || f[i] == kNoIndex) continue;
      if (auto h = c.try_comp(g[i], f[i])) r[i] = *h;
    }
    return r;
  }
  Family tensor_arr(const Family& f, const Family& g) const {
    Family r(f.size(), kNoIndex);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (f[i] != kNoIndex && g[i] != kNoIndex) r[i] = v.tensor_arr(f[i], g[i]);
    return r;
  }
  Family tensor(const Family& a, const Family& b) const {
    Family r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v.tensor(a[i], b[i]);
    return r;
  }
  Family ids(const Family& a) const {
    Family r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = c.id(a[i]);
    return r;
  }
  template <class Fn>
  Family map(const Family& a, Fn&& fn) const {
    Family r(a.size(), kNoIndex);
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::optional<Index> o = fn(a[i]);
      if (o) r[i] = *o;
    }
    return r;
  }
  template <class Fn>
  Family map3(const Family& a, const Family& b, const Family& d, Fn&& fn) const {
    Family r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = fn(a[i], b[i], d[i]);
    return r;
  }
  // A section typed from family s to family t, entrywise.
  template <class W>
  void typing(AxiomResult& ax, const Family& sec, const Family& s, const Family& t, W&& witness) const {
    for (std::size_t i = 0; i < sec.size(); ++i)
      ax.expect(c.src(sec[i]) == s[i] && c.tgt(sec[i]) == t[i], [&] { return witness(i); });
  }
  template <class W>
  void equal(AxiomResult& ax, const Family& a, const Family& b, W&& witness) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == kNoIndex || b[i] == kNoIndex) continue;
      ax.expect(a[i] == b[i], [&] { return witness(i); });
    }
  }
};

// The map X^n -> X^k picking the listed coordinates.
inline FiniteMap coords(const LimitCone& from, const LimitCone& to, std::initializer_list<std::size_t> which) {
  std::vector<FiniteMap> legs;
  for (std::size_t w : which) legs.push_back(from.legs[w]);
  return to.pair(legs);
}

inline LimitCone power(const FiniteSet& x, std::size_t n) { return product(std::vector<FiniteSet>(n, x)); }

inline Family constant(std::size_t n, Index v) { return Family(n, v); }

}  // namespace detail

inline CheckReport small_coincidence_check(const EnrichedCategory& x, const CheckOptions& opt = {},
                                           const std::string& subject = "small") {
  CheckReport r(subject, "small");
  const MonoidalStructure& V = x.base();
  detail::FamilyOps ops{V};
  const FiniteSet& X = x.carrier();
  LimitCone x2 = detail::power(X, 2), x3 = detail::power(X, 3), x4 = detail::power(X, 4);
  // The three pieces of data: an object of V[X x X], and arrows of the externalization.
  const Family hom = x.hom_map().table();
  const Family comp = x.comp_map().table();
  const Family ident = x.ident_map().table();
  auto w2 = [&](std::size_t i) { return x2.apex[i].parts(); };
  auto w3 = [&](std::size_t i) { return x3.apex[i].parts(); };
  auto w4 = [&](std::size_t i) { return x4.apex[i].parts(); };
  auto w1 = [&](std::size_t i) { return Witness{X[i]}; };

  using detail::coords;
  FiniteMap diag = x2.pair(identity_map(X), identity_map(X));
  Family h12 = precompose(hom, coords(x3, x2, {0, 1})), h23 = precompose(hom, coords(x3, x2, {1, 2})),
         h13 = precompose(hom, coords(x3, x2, {0, 2}));
  ops.typing(r.axiom("small.typing.comp"), comp, ops.tensor(h23, h12), h13, w3);
  ops.typing(r.axiom("small.typing.ident"), ident, detail::constant(X.size(), V.unit()), precompose(hom, diag), w1);

  {
    FiniteMap p12 = coords(x4, x2, {0, 1}), p23 = coords(x4, x2, {1, 2}), p34 = coords(x4, x2, {2, 3});
    Family H12 = precompose(hom, p12), H23 = precompose(hom, p23), H34 = precompose(hom, p34);
    Family c124 = precompose(comp, coords(x4, x3, {0, 1, 3}));
    Family c234 = precompose(comp, coords(x4, x3, {1, 2, 3}));
    Family c134 = precompose(comp, coords(x4, x3, {0, 2, 3}));
    Family c123 = precompose(comp, coords(x4, x3, {0, 1, 2}));
    Family lhs = ops.comp(c124, ops.tensor_arr(c234, ops.ids(H12)));
    Family alpha = ops.map3(H34, H23, H12, [&](Index a, Index b, Index d) { return V.assoc(a, b, d); });
    Family rhs = ops.comp(c134, ops.comp(ops.tensor_arr(ops.ids(H34), c123), alpha));
    ops.equal(r.axiom("small.associativity"), lhs, rhs, w4);
  }
  {
    Family c122 = precompose(comp, coords(x2, x3, {0, 1, 1}));
    Family c112 = precompose(comp, coords(x2, x3, {0, 0, 1}));
    Family id1 = precompose(ident, x2.legs[0]), id2 = precompose(ident, x2.legs[1]);
    Family lhs_l = ops.comp(c122, ops.tensor_arr(id2, ops.ids(hom)));
    Family lhs_r = ops.comp(c112, ops.tensor_arr(ops.ids(hom), id1));
    Family lam = ops.map(hom, [&](Index a) { return std::optional<Index>(V.lunit(a)); });
    Family rho = ops.map(hom, [&](Index a) { return std::optional<Index>(V.runit(a)); });
    ops.equal(r.axiom("small.left_unit"), lhs_l, lam, w2);
    ops.equal(r.axiom("small.right_unit"), lhs_r, rho, w2);
  }
  return r.finish(opt);
}

inline CheckReport small_coincidence_check(const EnrichedFunctor& f, const CheckOptions& opt = {},
                                           const std::string& subject = "small_functor") {
  CheckReport r(subject, "small_functor");
  const MonoidalStructure& V = f.dom().base();
  detail::FamilyOps ops{V};
  const FiniteSet& X = f.dom().carrier();
  const FiniteSet& Y = f.cod().carrier();
  LimitCone x2 = detail::power(X, 2), x3 = detail::power(X, 3);
  LimitCone y2 = detail::power(Y, 2), y3 = detail::power(Y, 3);
  FiniteMap f0 = f.f0_map();
  const Family f1 = f.f1_map().table();
  const Family hx = f.dom().hom_map().table(), hy = f.cod().hom_map().table();
  const Family cx = f.dom().comp_map().table(), cy = f.cod().comp_map().table();
  const Family ix = f.dom().ident_map().table(), iy = f.cod().ident_map().table();
  using detail::coords;
  auto w1 = [&](std::size_t i) { return Witness{X[i]}; };
  auto w2 = [&](std::size_t i) { return x2.apex[i].parts(); };
  auto w3 = [&](std::size_t i) { return x3.apex[i].parts(); };

  FiniteMap f00 = y2.pair(compose_map(x2.legs[0], f0), compose_map(x2.legs[1], f0));
  ops.typing(r.axiom("small_functor.typing"), f1, hx, precompose(hy, f00), w2);

  FiniteMap f000 = y3.pair(std::vector<FiniteMap>{compose_map(x3.legs[0], f0), compose_map(x3.legs[1], f0),
                                                  compose_map(x3.legs[2], f0)});
  Family lhs = ops.comp(precompose(f1, coords(x3, x2, {0, 2})), cx);
  Family rhs = ops.comp(precompose(cy, f000), ops.tensor_arr(precompose(f1, coords(x3, x2, {1, 2})),
                                                              precompose(f1, coords(x3, x2, {0, 1}))));
  ops.equal(r.axiom("small_functor.composition"), lhs, rhs, w3);

  FiniteMap diag = x2.pair(identity_map(X), identity_map(X));
  ops.equal(r.axiom("small_functor.identity"), ops.comp(precompose(f1, diag), ix), precompose(iy, f0), w1);
  return r.finish(opt);
}

inline CheckReport small_coincidence_check(const EnrichedNat& n, const CheckOptions& opt = {},
                                           const std::string& subject = "small_nat") {
  CheckReport r(subject, "small_nat");
  const EnrichedFunctor& F = n.src();
  const EnrichedFunctor& G = n.tgt();
  const MonoidalStructure& V = F.dom().base();
  detail::FamilyOps ops{V};
  const FiniteSet& X = F.dom().carrier();
  const FiniteSet& Y = F.cod().carrier();
  LimitCone x2 = detail::power(X, 2);
  LimitCone y2 = detail::power(Y, 2), y3 = detail::power(Y, 3);
  FiniteMap f0 = F.f0_map(), g0 = G.f0_map();
  const Family alpha = n.component().table();
  const Family hx = F.dom().hom_map().table(), hy = F.cod().hom_map().table();
  const Family cy = F.cod().comp_map().table();
  auto w1 = [&](std::size_t i) { return Witness{X[i]}; };
  auto w2 = [&](std::size_t i) { return x2.apex[i].parts(); };

  ops.typing(r.axiom("small_nat.typing"), alpha, detail::constant(X.size(), V.unit()),
             precompose(hy, y2.pair(f0, g0)), w1);

  auto at = [&](std::size_t leg, const FiniteMap& h) { return compose_map(x2.legs[leg], h); };
  FiniteMap fa_fb_gb = y3.pair(std::vector<FiniteMap>{at(0, f0), at(1, f0), at(1, g0)});
  FiniteMap fa_ga_gb = y3.pair(std::vector<FiniteMap>{at(0, f0), at(0, g0), at(1, g0)});
  Family li = ops.map(hx, [&](Index a) { return V.lunit_inv(a); });
  Family ri = ops.map(hx, [&](Index a) { return V.runit_inv(a); });
  Family lhs = ops.comp(precompose(cy, fa_fb_gb),
                        ops.comp(ops.tensor_arr(precompose(alpha, x2.legs[1]), F.f1_map().table()), li));
  Family rhs = ops.comp(precompose(cy, fa_ga_gb),
                        ops.comp(ops.tensor_arr(G.f1_map().table(), precompose(alpha, x2.legs[0])), ri));
  ops.equal(r.axiom("small_nat.naturality"), lhs, rhs, w2);
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Enriched fibers
// ---------------------------------------------------------------------------

// X[I]: objects are the families I -> X, enriched in the monoidal fiber V[I].
inline EnrichedCategory enriched_fiber(const EnrichedCategory& x, const FiniteSet& i) {
  MonoidalPtr w = fiber_monoidal(x.v(), i);
  FiberPtr fv = fiber(x.base().base(), i);
  FamilySet fams(x.carrier(), i, x.carrier().describe() + "[" + i.describe() + "]");
  const std::size_t n = i.size();
  const std::size_t k = fams.size();
  if (k > 0 && k * k > kMaxFamilies / k) {
    throw BoundExceeded("enriched fiber over " + i.describe() + " has " + std::to_string(k) + " objects");
  }
  return EnrichedCategory::build(
      w, fams.set(),
      [&](Index a, Index b) {
        Family r(n);
        for (std::size_t t = 0; t < n; ++t) r[t] = x.hom(fams.at(a)[t], fams.at(b)[t]);
        return fv->obj(r);
      },
      [&](Index a, Index b, Index c) {
        Family r(n);
        for (std::size_t t = 0; t < n; ++t) r[t] = x.comp(fams.at(a)[t], fams.at(b)[t], fams.at(c)[t]);
        return fv->arr(r);
      },
      [&](Index a) {
        Family r(n);
        for (std::size_t t = 0; t < n; ++t) r[t] = x.ident(fams.at(a)[t]);
        return fv->arr(r);
      });
}

namespace detail {

inline Family decode_family(const FiniteSet& values, const Atom& a) {
  Family f;
  for (const Atom& p : a.parts()) f.push_back(values.at(p));
  return f;
}

}  // namespace detail

// F[I]: pointwise on families.
inline EnrichedFunctor enriched_fiber_functor(const EnrichedFunctor& f, const FiniteSet& i) {
  EnrichedCategory a = enriched_fiber(f.dom(), i);
  EnrichedCategory b = enriched_fiber(f.cod(), i);
  FiberPtr fv = fiber(f.dom().base().base(), i);
  return EnrichedFunctor::build(
      a, b,
      [&](Index o) {
        Family r = detail::decode_family(f.dom().carrier(), a.atom(o));
        for (auto& v : r) v = f.obj(v);
        return b.carrier().at(family_atom(f.cod().carrier(), r));
      },
      [&](Index o0, Index o1) {
        Family x0 = detail::decode_family(f.dom().carrier(), a.atom(o0));
        Family x1 = detail::decode_family(f.dom().carrier(), a.atom(o1));
        Family r(x0.size());
        for (std::size_t t = 0; t < r.size(); ++t) r[t] = f.hom(x0[t], x1[t]);
        return fv->arr(r);
      });
}

inline EnrichedNat enriched_fiber_nat(const EnrichedNat& n, const FiniteSet& i) {
  EnrichedFunctor s = enriched_fiber_functor(n.src(), i);
  EnrichedFunctor t = enriched_fiber_functor(n.tgt(), i);
  FiberPtr fv = fiber(n.src().dom().base().base(), i);
  return make_enriched_nat(s, t, [&](Index o) {
    Family r = detail::decode_family(n.src().dom().carrier(), s.dom().atom(o));
    for (auto& v : r) v = n.at(v);
    return fv->arr(r);
  });
}

// f^* : (f^*)_.(X[J]) -> X[I] for f: I -> J, with identity hom components.
inline EnrichedFunctor enriched_reindex(const EnrichedCategory& x, const FiniteMap& f) {
  MonoidalFunctorData fstar = reindex_monoidal(x.v(), f);
  EnrichedCategory dom = change_enriching_base(fstar, enriched_fiber(x, f.cod()));
  EnrichedCategory cod = enriched_fiber(x, f.dom());
  const InternalCategory& w = cod.base().base();
  std::vector<Index> obj(dom.n());
  for (Index o = 0; o < dom.n(); ++o) {
    Family fam = detail::decode_family(x.carrier(), dom.atom(o));
    obj[o] = cod.carrier().at(family_atom(x.carrier(), precompose(fam, f)));
  }
  return EnrichedFunctor::build(
      dom, cod, [&](Index o) { return obj[o]; }, [&](Index a, Index b) { return w.id(cod.hom(obj[a], obj[b])); });
}

// ---------------------------------------------------------------------------
// Reading an enriched functor back from fiber data
// ---------------------------------------------------------------------------

// The fibers of an indexed functor at X and X x X, with the comparison
// isomorphisms phi_i : F^{XxX}(pi_i) ~= F^X(id) pi_i as points of V over X x X.
struct FiberFunctorData {
  EnrichedFunctor at_x;
  EnrichedFunctor at_xx;
  FiniteMap phi1, phi2;
};

// The fiber data of an enriched functor, with identity comparisons.
inline FiberFunctorData externalize_functor(const EnrichedFunctor& f) {
  const FiniteSet& X = f.dom().carrier();
  LimitCone xx = product(X, X);
  FiberFunctorData d{enriched_fiber_functor(f, X), enriched_fiber_functor(f, xx.apex), {}, {}};
  const EnrichedCategory& y = f.cod();
  d.phi1 = FiniteMap::tabulate(xx.apex, y.base().base().arrows(), [&](std::size_t t) { return y.ident(f.obj(xx.legs[0][t])); });
  d.phi2 = FiniteMap::tabulate(xx.apex, y.base().base().arrows(), [&](std::size_t t) { return y.ident(f.obj(xx.legs[1][t])); });
  return d;
}

namespace detail {

// A point m: I -> hom(b, a) inverse to p: I -> hom(a, b) under enriched composition.
inline std::optional<Index> point_inverse(const EnrichedCategory& y, Index a, Index b, Index p) {
  const MonoidalStructure& V = y.base();
  const InternalCategory& v = V.base();
  auto li = V.lunit_inv(V.unit());
  if (!li) return std::nullopt;
  for (Index m : v.hom(V.unit(), y.hom(b, a))) {
    auto s1 = v.try_comp(V.tensor_arr(m, p), *li);
    auto s2 = v.try_comp(V.tensor_arr(p, m), *li);
    if (!s1 || !s2) continue;
    auto l = v.try_comp(y.comp(a, b, a), *s1);
    auto r = v.try_comp(y.comp(b, a, b), *s2);
    if (l && r && *l == y.ident(a) && *r == y.ident(b)) return m;
  }
  return std::nullopt;
}

}  // namespace detail

// F0 = F^X(id_X); F1 = phi2 . F^{XxX}(pi1, pi2) . phi1^{-1}.
inline EnrichedFunctor bar_functor(const EnrichedCategory& x, const EnrichedCategory& y, const FiberFunctorData& d) {
  const FiniteSet& X = x.carrier();
  const FiniteSet& Y = y.carrier();
  LimitCone xx = product(X, X);
  if (!(d.at_x.dom() == enriched_fiber(x, X)) || !(d.at_x.cod() == enriched_fiber(y, X))) {
    throw IncoherentFiberData("fiber data at X does not run between the fibers of the given categories");
  }
  if (!(d.at_xx.dom() == enriched_fiber(x, xx.apex)) || !(d.at_xx.cod() == enriched_fiber(y, xx.apex))) {
    throw IncoherentFiberData("fiber data at X x X does not run between the fibers of the given categories");
  }
  const FiniteSet& v1 = y.base().base().arrows();
  for (const FiniteMap* phi : {&d.phi1, &d.phi2}) {
    if (!(phi->dom() == xx.apex) || !(phi->cod() == v1)) throw IncoherentFiberData("comparison has the wrong shape");
  }
  const MonoidalStructure& V = y.base();
  const InternalCategory& v = V.base();

  Index idx = d.at_x.dom().carrier().at(family_atom(X, identity_map(X).table()));
  Family f0 = detail::decode_family(Y, d.at_x.cod().atom(d.at_x.obj(idx)));

  const EnrichedCategory& dxx = d.at_xx.dom();
  Index p1 = dxx.carrier().at(family_atom(X, xx.legs[0].table()));
  Index p2 = dxx.carrier().at(family_atom(X, xx.legs[1].table()));
  Family a = detail::decode_family(Y, d.at_xx.cod().atom(d.at_xx.obj(p1)));
  Family b = detail::decode_family(Y, d.at_xx.cod().atom(d.at_xx.obj(p2)));
  FiberPtr fv = fiber(v, xx.apex);
  const Family& g1 = fv->arr_family(d.at_xx.hom(p1, p2));

  std::vector<Index> f1(X.size() * X.size());
  for (std::size_t t = 0; t < xx.apex.size(); ++t) {
    Index x0 = xx.legs[0][t], x1 = xx.legs[1][t];
    Index fx0 = f0[x0], fx1 = f0[x1];
    Index ph1 = d.phi1[t], ph2 = d.phi2[t];
    auto where = [&] { return " at " + xx.apex[t].str(); };
    if (v.src(ph1) != V.unit() || v.tgt(ph1) != y.hom(a[t], fx0) || v.src(ph2) != V.unit() ||
        v.tgt(ph2) != y.hom(b[t], fx1)) {
      throw IncoherentFiberData("comparison is not typed" + where());
    }
    auto inv1 = detail::point_inverse(y, a[t], fx0, ph1);
    if (!inv1 || !detail::point_inverse(y, b[t], fx1, ph2)) throw IncoherentFiberData("comparison is not invertible" + where());
    Index h = x.hom(x0, x1);
    auto li = V.lunit_inv(h);
    auto ri = V.runit_inv(h);
    if (!li || !ri) throw IncoherentFiberData("unitor is not invertible" + where());
    auto k1 = v.try_comp(V.tensor_arr(ph2, g1[t]), *li);
    auto k = k1 ? v.try_comp(y.comp(a[t], b[t], fx1), *k1) : std::nullopt;
    auto m1 = k ? v.try_comp(V.tensor_arr(*k, *inv1), *ri) : std::nullopt;
    auto m = m1 ? v.try_comp(y.comp(fx0, a[t], fx1), *m1) : std::nullopt;
    if (!m) throw IncoherentFiberData("conjugated hom component is not defined" + where());
    f1[x0 * X.size() + x1] = *m;
  }
  return EnrichedFunctor::build(
      x, y, [&](Index i) { return f0[i]; }, [&](Index i, Index j) { return f1[i * X.size() + j]; });
}

// alpha-bar = alpha^X(id_X).
inline EnrichedNat bar_nat(const EnrichedFunctor& fbar, const EnrichedFunctor& gbar, const EnrichedNat& at_x) {
  const FiniteSet& X = fbar.dom().carrier();
  Index idx = at_x.src().dom().carrier().at(family_atom(X, identity_map(X).table()));
  FiberPtr fv = fiber(fbar.dom().base().base(), X);
  const Family& comp = fv->arr_family(at_x.at(idx));
  return make_enriched_nat(fbar, gbar, [&](Index i) { return comp[i]; });
}

// ---------------------------------------------------------------------------
// U(X[I]) ~= U(X)[I]
// ---------------------------------------------------------------------------

inline CheckReport underlying_commute_check(const EnrichedCategory& x, const FiniteSet& i, const CheckOptions& opt = {},
                                            const std::string& subject = "underlying") {
  CheckReport r(subject, "underlying");
  EnrichedCategory xi = enriched_fiber(x, i);
  InternalCategory lhs = underlying_category(xi);
  InternalCategory ux = underlying_category(x);
  FiberPtr rf = fiber(ux, i);
  const InternalCategory& rhs = rf->category();

  // Both sides have the I-families of X as objects; an arrow <x0, x1, f> on the
  // left is the family of arrows <x0(t), x1(t), f(t)> on the right.
  auto obj_image = [&](Index o) { return rhs.objects().index_of(lhs.obj_atom(o)); };
  auto arr_image = [&](Index s) -> std::optional<Index> {
    const Atom& e = lhs.arr_atom(s);
    std::vector<Atom> parts;
    for (std::size_t t = 0; t < i.size(); ++t) parts.push_back(tup({e[0][t], e[1][t], e[2][t]}));
    return rhs.arrows().index_of(tup(parts));
  };
  auto& ob = r.axiom("underlying.objects");
  std::vector<Index> f0(lhs.objects().size()), f1(lhs.arrows().size());
  std::vector<bool> hit0(rhs.objects().size()), hit1(rhs.arrows().size());
  bool total = true;
  for (Index o = 0; o < f0.size(); ++o) {
    auto m = obj_image(o);
    if (ob.expect(m.has_value() && !hit0[*m], [&] { return Witness{lhs.obj_atom(o)}; })) {
      f0[o] = *m;
      hit0[*m] = true;
    } else {
      total = false;
    }
  }
  ob.expect(f0.size() == hit0.size(), [&] { return Witness{leaf(std::to_string(f0.size())), leaf(std::to_string(hit0.size()))}; });
  auto& ar = r.axiom("underlying.arrows");
  for (Index s = 0; s < f1.size(); ++s) {
    auto m = arr_image(s);
    if (ar.expect(m.has_value() && !hit1[*m], [&] { return Witness{lhs.arr_atom(s)}; })) {
      f1[s] = *m;
      hit1[*m] = true;
    } else {
      total = false;
    }
  }
  ar.expect(f1.size() == hit1.size(), [&] { return Witness{leaf(std::to_string(f1.size())), leaf(std::to_string(hit1.size()))}; });
  if (!total || f0.size() != hit0.size() || f1.size() != hit1.size()) return r.finish(opt);

  InternalFunctor iso(lhs, rhs, FiniteMap(lhs.objects(), rhs.objects(), f0), FiniteMap(lhs.arrows(), rhs.arrows(), f1));
  r.absorb(check_functor(iso, opt), "underlying.");

  // The square with reindexing along every endomap of I.
  auto& sq = r.axiom("underlying.reindex");
  for_each_map(i, i, [&](const FiniteMap& u) {
    InternalFunctor ru = reindex(u, *rf);
    for (Index s = 0; s < lhs.arrows().size(); ++s) {
      const Atom& e = lhs.arr_atom(s);
      auto pre = [&](const Atom& fam) {
        std::vector<Atom> p;
        for (std::size_t t = 0; t < i.size(); ++t) p.push_back(fam[u[t]]);
        return tup(p);
      };
      auto moved = lhs.arrows().index_of(tup({pre(e[0]), pre(e[1]), pre(e[2])}));
      sq.expect(moved && f1[*moved] == ru.arr(f1[s]), [&] {
        std::vector<Atom> image;
        for (Index v : u.table()) image.push_back(i[v]);
        return Witness{lhs.arr_atom(s), tup(image)};
      });
    }
  });
  return r.finish(opt);
}

}  // namespace icat
