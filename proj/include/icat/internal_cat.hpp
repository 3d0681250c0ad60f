#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icat/ambient.hpp"
#include "icat/report.hpp"

namespace icat {

// A category object in finite sets. comp(g, f) is "g after f" and is defined on
// pairs with src g == tgt f. Composition is stored densely: for each arrow f the
// composites g.f are laid out in the order of the arrows leaving tgt f.
class InternalCategory {
 public:
  using CompFn = std::function<Index(Index g, Index f)>;

  InternalCategory() : InternalCategory(build_empty()) {}

  static InternalCategory build(const FiniteSet& obj, const FiniteSet& arr, const FiniteMap& src,
                                const FiniteMap& tgt, const FiniteMap& ids, const CompFn& comp) {
    InternalCategory c(obj, arr, src, tgt, ids);
    auto& d = *c.d_;
    d.table.resize(d.offset.back());
    for (Index f = 0; f < arr.size(); ++f) {
      const auto& gs = d.out[tgt[f]];
      for (std::size_t k = 0; k < gs.size(); ++k) {
        Index r = comp(gs[k], f);
        if (r >= arr.size()) throw MalformedData("composite out of range");
        d.table[d.offset[f] + k] = r;
      }
    }
    return c;
  }

  // comp must be a map on the chosen pullback of (src, tgt), i.e. on pairs <g, f>.
  InternalCategory(const FiniteSet& obj, const FiniteSet& arr, const FiniteMap& src,
                   const FiniteMap& tgt, const FiniteMap& ids, const FiniteMap& comp)
      : InternalCategory(obj, arr, src, tgt, ids) {
    FiniteSet pairs = composable_pairs();
    if (!(comp.dom() == pairs)) {
      throw MalformedData("composition is not defined on the composable pairs " + pairs.encoding());
    }
    if (!(comp.cod() == arr)) throw MalformedData("composition does not land in the arrows");
    auto& d = *d_;
    d.table.resize(d.offset.back());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      Index g = arr.at(pairs[i][0]);
      Index f = arr.at(pairs[i][1]);
      d.table[d.offset[f] + d.rank[g]] = comp[i];
    }
  }

  // Stable identity of the shared storage; copies share it.
  const void* key() const { return d_.get(); }

  const FiniteSet& objects() const { return d_->obj; }
  const FiniteSet& arrows() const { return d_->arr; }
  const FiniteMap& source() const { return d_->src; }
  const FiniteMap& target() const { return d_->tgt; }
  const FiniteMap& identity() const { return d_->ids; }

  Index src(Index f) const { return d_->src[f]; }
  Index tgt(Index f) const { return d_->tgt[f]; }
  Index id(Index o) const { return d_->ids[o]; }
  const Atom& obj_atom(Index o) const { return d_->obj[o]; }
  const Atom& arr_atom(Index f) const { return d_->arr[f]; }
  Index obj_index(const Atom& a) const { return d_->obj.at(a); }
  Index arr_index(const Atom& a) const { return d_->arr.at(a); }

  // Arrows with the given source, in canonical order.
  const std::vector<Index>& arrows_from(Index o) const { return d_->out[o]; }

  std::vector<Index> hom(Index a, Index b) const {
    std::vector<Index> out;
    for (Index f : d_->out[a]) {
      if (tgt(f) == b) out.push_back(f);
    }
    return out;
  }

  std::optional<Index> try_comp(Index g, Index f) const {
    if (src(g) != tgt(f)) return std::nullopt;
    return d_->table[d_->offset[f] + d_->rank[g]];
  }

  Index comp(Index g, Index f) const {
    auto r = try_comp(g, f);
    if (!r) {
      throw DomainMismatch("arrows " + arr_atom(g).str() + " and " + arr_atom(f).str() +
                           " are not composable");
    }
    return *r;
  }

  std::size_t composable_pair_count() const { return d_->table.size(); }

  FiniteSet composable_pairs() const { return pullback(d_->src, d_->tgt).apex; }

  // The composition as a map on the chosen pullback.
  FiniteMap composition() const {
    FiniteSet pairs = composable_pairs();
    return FiniteMap::tabulate(pairs, d_->arr, [&](std::size_t i) {
      return comp(d_->arr.at(pairs[i][0]), d_->arr.at(pairs[i][1]));
    });
  }

  std::optional<Index> inverse(Index f) const {
    for (Index g : hom(tgt(f), src(f))) {
      if (comp(g, f) == id(src(f)) && comp(f, g) == id(tgt(f))) return g;
    }
    return std::nullopt;
  }

  friend bool operator==(const InternalCategory& a, const InternalCategory& b) {
    if (a.d_ == b.d_) return true;
    return a.d_->obj == b.d_->obj && a.d_->arr == b.d_->arr && a.d_->src == b.d_->src &&
           a.d_->tgt == b.d_->tgt && a.d_->ids == b.d_->ids && a.d_->table == b.d_->table;
  }

 private:
  struct Data {
    FiniteSet obj, arr;
    FiniteMap src, tgt, ids;
    std::vector<std::vector<Index>> out;
    std::vector<Index> rank;
    std::vector<std::size_t> offset;
    std::vector<Index> table;
  };

  InternalCategory(const FiniteSet& obj, const FiniteSet& arr, const FiniteMap& src,
                   const FiniteMap& tgt, const FiniteMap& ids) {
    if (!(src.dom() == arr) || !(src.cod() == obj)) throw MalformedData("source map has the wrong shape");
    if (!(tgt.dom() == arr) || !(tgt.cod() == obj)) throw MalformedData("target map has the wrong shape");
    if (!(ids.dom() == obj) || !(ids.cod() == arr)) throw MalformedData("identity map has the wrong shape");
    auto d = std::make_shared<Data>();
    d->obj = obj;
    d->arr = arr;
    d->src = src;
    d->tgt = tgt;
    d->ids = ids;
    d->out.resize(obj.size());
    d->rank.resize(arr.size());
    for (Index f = 0; f < arr.size(); ++f) {
      d->rank[f] = static_cast<Index>(d->out[src[f]].size());
      d->out[src[f]].push_back(f);
    }
    d->offset.resize(arr.size() + 1, 0);
    for (Index f = 0; f < arr.size(); ++f) d->offset[f + 1] = d->offset[f] + d->out[tgt[f]].size();
    d_ = std::move(d);
  }

  static InternalCategory build_empty() {
    FiniteSet e("0", {});
    FiniteMap m(e, e, {});
    return build(e, e, m, m, m, [](Index, Index) -> Index { return 0; });
  }

  std::shared_ptr<Data> d_;
};

class InternalFunctor {
 public:
  InternalFunctor() = default;
  InternalFunctor(InternalCategory dom, InternalCategory cod, FiniteMap f0, FiniteMap f1)
      : dom_(std::move(dom)), cod_(std::move(cod)), f0_(std::move(f0)), f1_(std::move(f1)) {
    if (!(f0_.dom() == dom_.objects()) || !(f0_.cod() == cod_.objects())) {
      throw MalformedData("object part of functor has the wrong shape");
    }
    if (!(f1_.dom() == dom_.arrows()) || !(f1_.cod() == cod_.arrows())) {
      throw MalformedData("arrow part of functor has the wrong shape");
    }
  }

  const InternalCategory& dom() const { return dom_; }
  const InternalCategory& cod() const { return cod_; }
  const FiniteMap& f0() const { return f0_; }
  const FiniteMap& f1() const { return f1_; }
  Index obj(Index o) const { return f0_[o]; }
  Index arr(Index f) const { return f1_[f]; }

  friend bool operator==(const InternalFunctor& a, const InternalFunctor& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.f0_ == b.f0_ && a.f1_ == b.f1_;
  }

 private:
  InternalCategory dom_, cod_;
  FiniteMap f0_, f1_;
};

class InternalNat {
 public:
  InternalNat() = default;
  InternalNat(InternalFunctor src, InternalFunctor tgt, FiniteMap component)
      : src_(std::move(src)), tgt_(std::move(tgt)), comp_(std::move(component)) {
    if (!(src_.dom() == tgt_.dom()) || !(src_.cod() == tgt_.cod())) {
      throw EndpointMismatch("natural transformation between functors that are not parallel");
    }
    if (!(comp_.dom() == src_.dom().objects()) || !(comp_.cod() == src_.cod().arrows())) {
      throw MalformedData("components of natural transformation have the wrong shape");
    }
  }

  const InternalFunctor& src() const { return src_; }
  const InternalFunctor& tgt() const { return tgt_; }
  const FiniteMap& component() const { return comp_; }
  Index at(Index o) const { return comp_[o]; }

  friend bool operator==(const InternalNat& a, const InternalNat& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.comp_ == b.comp_;
  }

 private:
  InternalFunctor src_, tgt_;
  FiniteMap comp_;
};

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

inline CheckReport check_category(const InternalCategory& c, const CheckOptions& opt = {},
                                  const std::string& subject = "category") {
  CheckReport r(subject, "category");
  auto& idt = r.axiom("category.identity_typing");
  auto& ct = r.axiom("category.composition_typing");
  auto& lu = r.axiom("category.left_unit");
  auto& ru = r.axiom("category.right_unit");
  auto& as = r.axiom("category.associativity");
  const Index no = static_cast<Index>(c.objects().size());
  const Index na = static_cast<Index>(c.arrows().size());
  for (Index o = 0; o < no; ++o) {
    Index i = c.id(o);
    idt.expect(c.src(i) == o && c.tgt(i) == o, [&] { return Witness{c.obj_atom(o)}; });
  }
  for (Index f = 0; f < na; ++f) {
    for (Index g : c.arrows_from(c.tgt(f))) {
      Index gf = c.comp(g, f);
      ct.expect(c.src(gf) == c.src(f) && c.tgt(gf) == c.tgt(g), [&] { return Witness{c.arr_atom(g), c.arr_atom(f)}; });
    }
  }
  for (Index f = 0; f < na; ++f) {
    if (auto l = c.try_comp(c.id(c.tgt(f)), f)) lu.expect(*l == f, [&] { return Witness{c.arr_atom(f)}; });
    if (auto rr = c.try_comp(f, c.id(c.src(f)))) ru.expect(*rr == f, [&] { return Witness{c.arr_atom(f)}; });
  }
  for (Index f = 0; f < na; ++f) {
    for (Index g : c.arrows_from(c.tgt(f))) {
      Index gf = c.comp(g, f);
      for (Index h : c.arrows_from(c.tgt(g))) {
        Index hg = c.comp(h, g);
        auto lhs = c.try_comp(h, gf);
        auto rhs = c.try_comp(hg, f);
        if (!lhs || !rhs) continue;
        as.expect(*lhs == *rhs, [&] { return Witness{c.arr_atom(h), c.arr_atom(g), c.arr_atom(f)}; });
      }
    }
  }
  return r.finish(opt);
}

inline CheckReport check_functor(const InternalFunctor& F, const CheckOptions& opt = {},
                                 const std::string& subject = "functor") {
  CheckReport r(subject, "functor");
  auto& ty = r.axiom("functor.typing");
  auto& ids = r.axiom("functor.identities");
  auto& cmp = r.axiom("functor.composition");
  const auto& a = F.dom();
  const auto& b = F.cod();
  for (Index f = 0; f < a.arrows().size(); ++f) {
    Index ff = F.arr(f);
    ty.expect(b.src(ff) == F.obj(a.src(f)) && b.tgt(ff) == F.obj(a.tgt(f)), [&] { return Witness{a.arr_atom(f)}; });
  }
  for (Index o = 0; o < a.objects().size(); ++o) {
    ids.expect(F.arr(a.id(o)) == b.id(F.obj(o)), [&] { return Witness{a.obj_atom(o)}; });
  }
  for (Index f = 0; f < a.arrows().size(); ++f) {
    for (Index g : a.arrows_from(a.tgt(f))) {
      auto rhs = b.try_comp(F.arr(g), F.arr(f));
      if (!rhs) continue;
      cmp.expect(F.arr(a.comp(g, f)) == *rhs, [&] { return Witness{a.arr_atom(g), a.arr_atom(f)}; });
    }
  }
  return r.finish(opt);
}

inline CheckReport check_nat(const InternalNat& n, const CheckOptions& opt = {},
                             const std::string& subject = "nat") {
  CheckReport r(subject, "nat");
  auto& ty = r.axiom("nat.typing");
  auto& nat = r.axiom("nat.naturality");
  const auto& F = n.src();
  const auto& G = n.tgt();
  const auto& a = F.dom();
  const auto& b = F.cod();
  for (Index o = 0; o < a.objects().size(); ++o) {
    Index c = n.at(o);
    ty.expect(b.src(c) == F.obj(o) && b.tgt(c) == G.obj(o), [&] { return Witness{a.obj_atom(o)}; });
  }
  for (Index f = 0; f < a.arrows().size(); ++f) {
    auto lhs = b.try_comp(G.arr(f), n.at(a.src(f)));
    auto rhs = b.try_comp(n.at(a.tgt(f)), F.arr(f));
    if (!lhs || !rhs) continue;
    nat.expect(*lhs == *rhs, [&] { return Witness{a.arr_atom(f)}; });
  }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// g after f.
inline InternalFunctor compose_functors(const InternalFunctor& f, const InternalFunctor& g) {
  if (!(f.cod() == g.dom())) throw EndpointMismatch("functors are not composable");
  return InternalFunctor(f.dom(), g.cod(), compose_map(f.f0(), g.f0()), compose_map(f.f1(), g.f1()));
}

inline InternalFunctor identity_functor(const InternalCategory& c) {
  return InternalFunctor(c, c, identity_map(c.objects()), identity_map(c.arrows()));
}

inline InternalNat identity_nat(const InternalFunctor& f) {
  return InternalNat(f, f, compose_map(f.f0(), f.cod().identity()));
}

// b after a, for a: F => G and b: G => H.
inline InternalNat vcompose_nats(const InternalNat& a, const InternalNat& b) {
  if (!(a.tgt() == b.src())) throw EndpointMismatch("natural transformations are not composable");
  const auto& c = a.src().cod();
  return InternalNat(a.src(), b.tgt(), FiniteMap::tabulate(a.src().dom().objects(), c.arrows(), [&](std::size_t o) {
                       return c.comp(b.at(static_cast<Index>(o)), a.at(static_cast<Index>(o)));
                     }));
}

// n . F for n: G => H between functors out of F's codomain.
inline InternalNat whisker_pre(const InternalNat& n, const InternalFunctor& f) {
  if (!(f.cod() == n.src().dom())) throw EndpointMismatch("whiskering along a functor with the wrong codomain");
  return InternalNat(compose_functors(f, n.src()), compose_functors(f, n.tgt()), compose_map(f.f0(), n.component()));
}

// F . n for n: G => H between functors into F's domain.
inline InternalNat whisker_post(const InternalFunctor& f, const InternalNat& n) {
  if (!(n.src().cod() == f.dom())) throw EndpointMismatch("whiskering along a functor with the wrong domain");
  return InternalNat(compose_functors(n.src(), f), compose_functors(n.tgt(), f), compose_map(n.component(), f.f1()));
}

enum class Side { Pre, Post };

inline InternalNat hwhisker(const InternalNat& n, const InternalFunctor& f, Side side) {
  return side == Side::Pre ? whisker_pre(n, f) : whisker_post(f, n);
}

// Horizontal composite b * a : F'F => G'G for a: F => G and b: F' => G'.
inline InternalNat hcompose_nats(const InternalNat& a, const InternalNat& b) {
  return vcompose_nats(whisker_pre(b, a.src()), whisker_post(b.tgt(), a));
}

inline InternalCategory terminal_cat() {
  FiniteSet one = terminal();
  FiniteMap id = identity_map(one);
  return InternalCategory::build(one, one, id, id, id, [](Index, Index) -> Index { return 0; });
}

inline InternalCategory discrete(const FiniteSet& s) {
  FiniteMap id = identity_map(s);
  return InternalCategory::build(s, s, id, id, id, [](Index g, Index) { return g; });
}

// Arrows are pairs <x, y> from x to y.
inline InternalCategory indiscrete(const FiniteSet& s) {
  LimitCone p = product(s, s);
  const FiniteSet& arr = p.apex;
  FiniteMap ids = p.pair(identity_map(s), identity_map(s));
  return InternalCategory::build(s, arr, p.legs[0], p.legs[1], ids, [&](Index g, Index f) {
    return arr.at(tup({s[p.legs[0][f]], s[p.legs[1][g]]}));
  });
}

inline InternalCategory opposite(const InternalCategory& c) {
  return InternalCategory::build(c.objects(), c.arrows(), c.target(), c.source(), c.identity(),
                                 [&](Index g, Index f) { return c.comp(f, g); });
}

inline InternalCategory product_cat(const InternalCategory& a, const InternalCategory& b) {
  LimitCone objs = product(a.objects(), b.objects());
  LimitCone arrs = product(a.arrows(), b.arrows());
  const std::size_t nb = b.arrows().size();
  std::vector<Index> pos(a.arrows().size() * nb);
  std::vector<Index> fst(arrs.apex.size()), snd(arrs.apex.size());
  for (Index i = 0; i < a.arrows().size(); ++i) {
    for (Index j = 0; j < nb; ++j) {
      Index k = arrs.apex.at(tup({a.arr_atom(i), b.arr_atom(j)}));
      pos[i * nb + j] = k;
      fst[k] = i;
      snd[k] = j;
    }
  }
  FiniteMap src = product_map(a.source(), b.source());
  FiniteMap tgt = product_map(a.target(), b.target());
  FiniteMap ids = product_map(a.identity(), b.identity());
  return InternalCategory::build(objs.apex, arrs.apex, src, tgt, ids, [&](Index g, Index f) {
    return pos[a.comp(fst[g], fst[f]) * nb + b.comp(snd[g], snd[f])];
  });
}

// The one-object category of a monoid; comp(g, f) = mult(g, f).
inline InternalCategory delooping(const FiniteSet& elems, const std::function<Index(Index, Index)>& mult,
                                  const Atom& unit) {
  FiniteSet one = terminal();
  return InternalCategory::build(one, elems, bang(elems), bang(elems),
                                 constant_map(one, elems, elems.at(unit)), mult);
}

}  // namespace icat
