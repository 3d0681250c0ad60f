#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "icat/monoidal.hpp"

namespace icat {

// A category enriched in a monoidal structure V:
//   hom:   X x X -> V0
//   comp:  X x X x X -> V1, comp(x0,x1,x2): hom(x1,x2) (x) hom(x0,x1) -> hom(x0,x2)
//   ident: X -> V1,         ident(x): I -> hom(x,x)
class EnrichedCategory {
 public:
  using Fn1 = std::function<Index(Index)>;
  using Fn2 = std::function<Index(Index, Index)>;
  using Fn3 = std::function<Index(Index, Index, Index)>;

  EnrichedCategory() : EnrichedCategory(nullptr, FiniteSet("0", {}), {}, {}, {}, 0) {}

  EnrichedCategory(MonoidalPtr v, const FiniteSet& carrier, const FiniteMap& hom, const FiniteMap& comp,
                   const FiniteMap& ident) {
    if (!v) throw MalformedData("enriched category without a base");
    const FiniteSet& v0 = v->base().objects();
    const FiniteSet& v1 = v->base().arrows();
    FiniteSet pairs = product(carrier, carrier).apex;
    FiniteSet triples = product(carrier, carrier, carrier).apex;
    if (!(hom.dom() == pairs) || !(hom.cod() == v0)) throw MalformedData("hom has the wrong shape");
    if (!(comp.dom() == triples) || !(comp.cod() == v1)) throw MalformedData("composition has the wrong shape");
    if (!(ident.dom() == carrier) || !(ident.cod() == v1)) throw MalformedData("identity has the wrong shape");
    const std::size_t n = carrier.size();
    std::vector<Index> h(n * n), c(n * n * n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) {
        h[i * n + j] = hom[pairs.at(tup({carrier[i], carrier[j]}))];
        for (Index k = 0; k < n; ++k) c[(i * n + j) * n + k] = comp[triples.at(tup({carrier[i], carrier[j], carrier[k]}))];
      }
    *this = EnrichedCategory(std::move(v), carrier, std::move(h), std::move(c), ident.table(), 0);
  }

  static EnrichedCategory build(MonoidalPtr v, const FiniteSet& carrier, const Fn2& hom, const Fn3& comp,
                                const Fn1& ident) {
    const std::size_t n = carrier.size();
    const std::size_t n0 = v->n0(), n1 = v->n1();
    std::vector<Index> h(n * n), c(n * n * n), id(n);
    for (Index i = 0; i < n; ++i) {
      id[i] = ident(i);
      if (id[i] >= n1) throw MalformedData("identity out of range");
      for (Index j = 0; j < n; ++j) {
        h[i * n + j] = hom(i, j);
        if (h[i * n + j] >= n0) throw MalformedData("hom out of range");
        for (Index k = 0; k < n; ++k) {
          Index a = comp(i, j, k);
          if (a >= n1) throw MalformedData("composite out of range");
          c[(i * n + j) * n + k] = a;
        }
      }
    }
    return EnrichedCategory(std::move(v), carrier, std::move(h), std::move(c), std::move(id), 0);
  }

  const MonoidalPtr& v() const { return d_->v; }
  const MonoidalStructure& base() const { return *d_->v; }
  const FiniteSet& carrier() const { return d_->carrier; }
  Index n() const { return static_cast<Index>(d_->carrier.size()); }
  const Atom& atom(Index x) const { return d_->carrier[x]; }

  Index hom(Index i, Index j) const { return d_->hom[i * n() + j]; }
  Index comp(Index i, Index j, Index k) const { return d_->comp[(i * n() + j) * n() + k]; }
  Index ident(Index i) const { return d_->ident[i]; }

  FiniteMap hom_map() const {
    LimitCone p = product(carrier(), carrier());
    return FiniteMap::tabulate(p.apex, base().base().objects(), [&](std::size_t t) { return hom(p.legs[0][t], p.legs[1][t]); });
  }
  FiniteMap comp_map() const {
    LimitCone p = product(carrier(), carrier(), carrier());
    return FiniteMap::tabulate(p.apex, base().base().arrows(), [&](std::size_t t) {
      return comp(p.legs[0][t], p.legs[1][t], p.legs[2][t]);
    });
  }
  FiniteMap ident_map() const { return FiniteMap(carrier(), base().base().arrows(), d_->ident); }

  friend bool operator==(const EnrichedCategory& a, const EnrichedCategory& b) {
    if (a.d_ == b.d_) return true;
    return same_monoidal(a.d_->v, b.d_->v) && a.d_->carrier == b.d_->carrier && a.d_->hom == b.d_->hom &&
           a.d_->comp == b.d_->comp && a.d_->ident == b.d_->ident;
  }

 private:
  struct Data {
    MonoidalPtr v;
    FiniteSet carrier;
    std::vector<Index> hom, comp, ident;
  };

  EnrichedCategory(MonoidalPtr v, FiniteSet carrier, std::vector<Index> hom, std::vector<Index> comp,
                   std::vector<Index> ident, int) {
    auto d = std::make_shared<Data>();
    d->v = std::move(v);
    d->carrier = std::move(carrier);
    d->hom = std::move(hom);
    d->comp = std::move(comp);
    d->ident = std::move(ident);
    d_ = std::move(d);
  }

  std::shared_ptr<const Data> d_;
};

class EnrichedFunctor {
 public:
  EnrichedFunctor() = default;
  EnrichedFunctor(EnrichedCategory dom, EnrichedCategory cod, const FiniteMap& f0, const FiniteMap& f1)
      : dom_(std::move(dom)), cod_(std::move(cod)) {
    if (!same_monoidal(dom_.v(), cod_.v())) throw EndpointMismatch("enriched functor between different bases");
    if (!(f0.dom() == dom_.carrier()) || !(f0.cod() == cod_.carrier())) {
      throw MalformedData("object part of enriched functor has the wrong shape");
    }
    FiniteSet pairs = product(dom_.carrier(), dom_.carrier()).apex;
    if (!(f1.dom() == pairs) || !(f1.cod() == dom_.base().base().arrows())) {
      throw MalformedData("hom part of enriched functor has the wrong shape");
    }
    f0_ = f0.table();
    const std::size_t n = dom_.n();
    f1_.resize(n * n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) f1_[i * n + j] = f1[pairs.at(tup({dom_.atom(i), dom_.atom(j)}))];
  }

  static EnrichedFunctor build(const EnrichedCategory& dom, const EnrichedCategory& cod,
                               const std::function<Index(Index)>& f0,
                               const std::function<Index(Index, Index)>& f1) {
    EnrichedFunctor f;
    if (!same_monoidal(dom.v(), cod.v())) throw EndpointMismatch("enriched functor between different bases");
    f.dom_ = dom;
    f.cod_ = cod;
    const std::size_t n = dom.n();
    f.f0_.resize(n);
    f.f1_.resize(n * n);
    for (Index i = 0; i < n; ++i) {
      f.f0_[i] = f0(i);
      if (f.f0_[i] >= cod.n()) throw MalformedData("object image out of range");
      for (Index j = 0; j < n; ++j) {
        f.f1_[i * n + j] = f1(i, j);
        if (f.f1_[i * n + j] >= dom.base().n1()) throw MalformedData("hom image out of range");
      }
    }
    return f;
  }

  const EnrichedCategory& dom() const { return dom_; }
  const EnrichedCategory& cod() const { return cod_; }
  Index obj(Index x) const { return f0_[x]; }
  Index hom(Index i, Index j) const { return f1_[i * dom_.n() + j]; }

  FiniteMap f0_map() const { return FiniteMap(dom_.carrier(), cod_.carrier(), f0_); }
  FiniteMap f1_map() const {
    LimitCone p = product(dom_.carrier(), dom_.carrier());
    return FiniteMap::tabulate(p.apex, dom_.base().base().arrows(), [&](std::size_t t) { return hom(p.legs[0][t], p.legs[1][t]); });
  }

  friend bool operator==(const EnrichedFunctor& a, const EnrichedFunctor& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.f0_ == b.f0_ && a.f1_ == b.f1_;
  }

 private:
  EnrichedCategory dom_, cod_;
  std::vector<Index> f0_, f1_;
};

// alpha(x): I -> hom_Y(F x, G x).
class EnrichedNat {
 public:
  EnrichedNat() = default;
  EnrichedNat(EnrichedFunctor src, EnrichedFunctor tgt, const FiniteMap& component)
      : src_(std::move(src)), tgt_(std::move(tgt)) {
    if (!(src_.dom() == tgt_.dom()) || !(src_.cod() == tgt_.cod())) {
      throw EndpointMismatch("enriched transformation between functors that are not parallel");
    }
    if (!(component.dom() == src_.dom().carrier()) || !(component.cod() == src_.dom().base().base().arrows())) {
      throw MalformedData("components have the wrong shape");
    }
    comp_ = component.table();
  }

  const EnrichedFunctor& src() const { return src_; }
  const EnrichedFunctor& tgt() const { return tgt_; }
  Index at(Index x) const { return comp_[x]; }
  FiniteMap component() const {
    return FiniteMap(src_.dom().carrier(), src_.dom().base().base().arrows(), comp_);
  }

  friend bool operator==(const EnrichedNat& a, const EnrichedNat& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.comp_ == b.comp_;
  }

 private:
  EnrichedFunctor src_, tgt_;
  std::vector<Index> comp_;
};

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

inline CheckReport check_enriched_category(const EnrichedCategory& x, const CheckOptions& opt = {},
                                           const std::string& subject = "enriched") {
  CheckReport r(subject, "enriched");
  const MonoidalStructure& V = x.base();
  const InternalCategory& v = V.base();
  const Index n = x.n();
  const Index I = V.unit();
  auto X = [&](Index i) { return x.atom(i); };

  auto& tc = r.axiom("enriched.typing.comp");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) {
        Index m = x.comp(a, b, c);
        tc.expect(v.src(m) == V.tensor(x.hom(b, c), x.hom(a, b)) && v.tgt(m) == x.hom(a, c),
                  [&] { return Witness{X(a), X(b), X(c)}; });
      }
  auto& ti = r.axiom("enriched.typing.ident");
  for (Index a = 0; a < n; ++a) {
    Index m = x.ident(a);
    ti.expect(v.src(m) == I && v.tgt(m) == x.hom(a, a), [&] { return Witness{X(a)}; });
  }

  auto& as = r.axiom("enriched.associativity");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c)
        for (Index d = 0; d < n; ++d) {
          Index h01 = x.hom(a, b), h12 = x.hom(b, c), h23 = x.hom(c, d);
          auto lhs = v.try_comp(x.comp(a, b, d), V.tensor_arr(x.comp(b, c, d), v.id(h01)));
          auto r1 = v.try_comp(V.tensor_arr(v.id(h23), x.comp(a, b, c)), V.assoc(h23, h12, h01));
          if (!lhs || !r1) continue;
          auto rhs = v.try_comp(x.comp(a, c, d), *r1);
          if (!rhs) continue;
          as.expect(*lhs == *rhs, [&] { return Witness{X(a), X(b), X(c), X(d)}; });
        }

  auto& lu = r.axiom("enriched.left_unit");
  auto& ru = r.axiom("enriched.right_unit");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Index h = x.hom(a, b);
      if (auto l = v.try_comp(x.comp(a, b, b), V.tensor_arr(x.ident(b), v.id(h)))) {
        lu.expect(*l == V.lunit(h), [&] { return Witness{X(a), X(b)}; });
      }
      if (auto rr = v.try_comp(x.comp(a, a, b), V.tensor_arr(v.id(h), x.ident(a)))) {
        ru.expect(*rr == V.runit(h), [&] { return Witness{X(a), X(b)}; });
      }
    }
  return r.finish(opt);
}

inline CheckReport check_enriched_functor(const EnrichedFunctor& f, const CheckOptions& opt = {},
                                          const std::string& subject = "enriched_functor") {
  CheckReport r(subject, "enriched_functor");
  const auto& X = f.dom();
  const auto& Y = f.cod();
  const MonoidalStructure& V = X.base();
  const InternalCategory& v = V.base();
  const Index n = X.n();
  auto A = [&](Index i) { return X.atom(i); };
  auto& ty = r.axiom("enriched_functor.typing");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Index m = f.hom(a, b);
      ty.expect(v.src(m) == X.hom(a, b) && v.tgt(m) == Y.hom(f.obj(a), f.obj(b)), [&] { return Witness{A(a), A(b)}; });
    }
  auto& cm = r.axiom("enriched_functor.composition");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = 0; c < n; ++c) {
        auto lhs = v.try_comp(f.hom(a, c), X.comp(a, b, c));
        auto rhs = v.try_comp(Y.comp(f.obj(a), f.obj(b), f.obj(c)), V.tensor_arr(f.hom(b, c), f.hom(a, b)));
        if (!lhs || !rhs) continue;
        cm.expect(*lhs == *rhs, [&] { return Witness{A(a), A(b), A(c)}; });
      }
  auto& id = r.axiom("enriched_functor.identity");
  for (Index a = 0; a < n; ++a) {
    if (auto lhs = v.try_comp(f.hom(a, a), X.ident(a))) {
      id.expect(*lhs == Y.ident(f.obj(a)), [&] { return Witness{A(a)}; });
    }
  }
  return r.finish(opt);
}

inline CheckReport check_enriched_nat(const EnrichedNat& t, const CheckOptions& opt = {},
                                      const std::string& subject = "enriched_nat") {
  CheckReport r(subject, "enriched_nat");
  const auto& F = t.src();
  const auto& G = t.tgt();
  const auto& X = F.dom();
  const auto& Y = F.cod();
  const MonoidalStructure& V = X.base();
  const InternalCategory& v = V.base();
  const Index n = X.n();
  auto A = [&](Index i) { return X.atom(i); };
  auto& ty = r.axiom("enriched_nat.typing");
  for (Index a = 0; a < n; ++a) {
    Index m = t.at(a);
    ty.expect(v.src(m) == V.unit() && v.tgt(m) == Y.hom(F.obj(a), G.obj(a)), [&] { return Witness{A(a)}; });
  }
  auto& nat = r.axiom("enriched_nat.naturality");
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      Index h = X.hom(a, b);
      auto li = V.lunit_inv(h);
      auto ri = V.runit_inv(h);
      if (!li || !ri) continue;
      auto l1 = v.try_comp(V.tensor_arr(t.at(b), F.hom(a, b)), *li);
      auto l2 = l1 ? v.try_comp(Y.comp(F.obj(a), F.obj(b), G.obj(b)), *l1) : std::nullopt;
      auto r1 = v.try_comp(V.tensor_arr(G.hom(a, b), t.at(a)), *ri);
      auto r2 = r1 ? v.try_comp(Y.comp(F.obj(a), G.obj(a), G.obj(b)), *r1) : std::nullopt;
      if (!l2 || !r2) continue;
      nat.expect(*l2 == *r2, [&] { return Witness{A(a), A(b)}; });
    }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// g after f.
inline EnrichedFunctor compose_enriched_functors(const EnrichedFunctor& f, const EnrichedFunctor& g) {
  if (!(f.cod() == g.dom())) throw EndpointMismatch("enriched functors are not composable");
  const InternalCategory& v = f.dom().base().base();
  return EnrichedFunctor::build(
      f.dom(), g.cod(), [&](Index x) { return g.obj(f.obj(x)); },
      [&](Index a, Index b) { return v.comp(g.hom(f.obj(a), f.obj(b)), f.hom(a, b)); });
}

inline EnrichedFunctor identity_enriched_functor(const EnrichedCategory& x) {
  const InternalCategory& v = x.base().base();
  return EnrichedFunctor::build(
      x, x, [](Index i) { return i; }, [&](Index a, Index b) { return v.id(x.hom(a, b)); });
}

inline EnrichedNat make_enriched_nat(const EnrichedFunctor& src, const EnrichedFunctor& tgt,
                                     const std::function<Index(Index)>& component) {
  auto m = FiniteMap::tabulate(src.dom().carrier(), src.dom().base().base().arrows(),
                               [&](std::size_t x) { return component(static_cast<Index>(x)); });
  return EnrichedNat(src, tgt, m);
}

inline EnrichedNat identity_enriched_nat(const EnrichedFunctor& f) {
  return make_enriched_nat(f, f, [&](Index x) { return f.cod().ident(f.obj(x)); });
}

// b after a, for a: F => G and b: G => H.
inline EnrichedNat vcompose_enriched_nats(const EnrichedNat& a, const EnrichedNat& b) {
  if (!(a.tgt() == b.src())) throw EndpointMismatch("enriched transformations are not composable");
  const auto& Y = a.src().cod();
  const MonoidalStructure& V = Y.base();
  const InternalCategory& v = V.base();
  Index li = V.require(V.lunit_inv(V.unit()), "left unitor");
  return make_enriched_nat(a.src(), b.tgt(), [&](Index x) {
    Index fx = a.src().obj(x), gx = a.tgt().obj(x), hx = b.tgt().obj(x);
    return v.comp(Y.comp(fx, gx, hx), v.comp(V.tensor_arr(b.at(x), a.at(x)), li));
  });
}

// n . L for n: F => G between functors out of L's codomain.
inline EnrichedNat whisker_pre(const EnrichedNat& n, const EnrichedFunctor& l) {
  return make_enriched_nat(compose_enriched_functors(l, n.src()), compose_enriched_functors(l, n.tgt()),
                           [&](Index w) { return n.at(l.obj(w)); });
}

// R . n for n: G => H between functors into R's domain.
inline EnrichedNat whisker_post(const EnrichedFunctor& rf, const EnrichedNat& n) {
  const InternalCategory& v = rf.dom().base().base();
  return make_enriched_nat(compose_enriched_functors(n.src(), rf), compose_enriched_functors(n.tgt(), rf), [&](Index x) {
    return v.comp(rf.hom(n.src().obj(x), n.tgt().obj(x)), n.at(x));
  });
}

// b * a : F'F => G'G for a: F => G and b: F' => G'.
inline EnrichedNat hcompose_enriched_nats(const EnrichedNat& a, const EnrichedNat& b) {
  return vcompose_enriched_nats(whisker_pre(b, a.src()), whisker_post(b.tgt(), a));
}

// Every hom is the unit; composition is the left unitor at I.
inline EnrichedCategory indiscrete_enriched(const FiniteSet& x, const MonoidalPtr& v) {
  const Index I = v->unit();
  const Index l = v->lunit(I);
  const Index id = v->base().id(I);
  return EnrichedCategory::build(
      v, x, [&](Index, Index) { return I; }, [&](Index, Index, Index) { return l; }, [&](Index) { return id; });
}

inline EnrichedFunctor indiscrete_enriched_functor(const FiniteMap& f, const MonoidalPtr& v) {
  EnrichedCategory a = indiscrete_enriched(f.dom(), v);
  EnrichedCategory b = indiscrete_enriched(f.cod(), v);
  const Index id = v->base().id(v->unit());
  return EnrichedFunctor::build(
      a, b, [&](Index x) { return f[x]; }, [&](Index, Index) { return id; });
}

// For a thin V: fills composition and identities with the unique arrow of the
// right type when it exists, and with an identity on the target otherwise (so
// the typing check reports the gap).
inline EnrichedCategory enriched_from_hom_thin(const MonoidalPtr& v, const FiniteSet& x,
                                               const std::function<Index(Index, Index)>& hom) {
  const InternalCategory& c = v->base();
  auto pick = [&](Index s, Index t) {
    auto h = c.hom(s, t);
    return h.empty() ? c.id(t) : h[0];
  };
  return EnrichedCategory::build(
      v, x, hom, [&](Index a, Index b, Index d) { return pick(v->tensor(hom(b, d), hom(a, b)), hom(a, d)); },
      [&](Index a) { return pick(v->unit(), hom(a, a)); });
}

// Change of base along a monoidal functor F: V -> W. The comparison mu and
// unit eps are inserted so that composites are typed in W.
inline EnrichedCategory change_enriching_base(const MonoidalFunctorData& F, const EnrichedCategory& x) {
  if (!same_monoidal(F.dom(), x.v())) throw EndpointMismatch("change of base along a functor from a different base");
  const InternalCategory& w = F.cod()->base();
  const InternalFunctor& f = F.functor();
  return EnrichedCategory::build(
      F.cod(), x.carrier(), [&](Index a, Index b) { return f.obj(x.hom(a, b)); },
      [&](Index a, Index b, Index c) { return w.comp(f.arr(x.comp(a, b, c)), F.mu(x.hom(b, c), x.hom(a, b))); },
      [&](Index a) { return w.comp(f.arr(x.ident(a)), F.eps()); });
}

inline EnrichedFunctor change_enriching_base(const MonoidalFunctorData& F, const EnrichedFunctor& g) {
  EnrichedCategory a = change_enriching_base(F, g.dom());
  EnrichedCategory b = change_enriching_base(F, g.cod());
  const InternalFunctor& f = F.functor();
  return EnrichedFunctor::build(
      a, b, [&](Index x) { return g.obj(x); }, [&](Index x0, Index x1) { return f.arr(g.hom(x0, x1)); });
}

inline EnrichedNat change_enriching_base(const MonoidalFunctorData& F, const EnrichedNat& t) {
  EnrichedFunctor s = change_enriching_base(F, t.src());
  EnrichedFunctor g = change_enriching_base(F, t.tgt());
  const InternalCategory& w = F.cod()->base();
  return make_enriched_nat(s, g, [&](Index x) { return w.comp(F.functor().arr(t.at(x)), F.eps()); });
}

// ---------------------------------------------------------------------------
// Underlying category
// ---------------------------------------------------------------------------

// Arrows are triples <x0, x1, f> with f: I -> hom(x0, x1), carved out of
// X x X x V1 by an equalizer. Composition precomposes the inverse left unitor
// at I so that g (x) f is typed out of I.
inline InternalCategory underlying_category(const EnrichedCategory& x) {
  const MonoidalStructure& V = x.base();
  const InternalCategory& v = V.base();
  const FiniteSet& X = x.carrier();
  const FiniteSet v0 = v.objects();
  const FiniteSet v1 = v.arrows();
  LimitCone p = product(X, X, v1);
  LimitCone vv = product(v0, v0);
  FiniteMap ends = FiniteMap::tabulate(p.apex, vv.apex, [&](std::size_t t) {
    Index f = p.legs[2][t];
    return vv.apex.at(tup({v0[v.src(f)], v0[v.tgt(f)]}));
  });
  FiniteMap wanted = FiniteMap::tabulate(p.apex, vv.apex, [&](std::size_t t) {
    return vv.apex.at(tup({v0[V.unit()], v0[x.hom(p.legs[0][t], p.legs[1][t])]}));
  });
  LimitCone eq = equalizer(ends, wanted);
  const FiniteSet& arr = eq.apex;
  FiniteMap inc = eq.legs[0];
  FiniteMap src = compose_map(inc, p.legs[0]);
  FiniteMap tgt = compose_map(inc, p.legs[1]);
  auto arrow = [&](Index a, Index b, Index f) {
    auto i = arr.index_of(tup({X[a], X[b], v1[f]}));
    if (!i) throw MalformedData("composite " + v1[f].str() + " is not a point of hom(" + X[a].str() + "," + X[b].str() + ")");
    return *i;
  };
  FiniteMap ids = FiniteMap::tabulate(X, arr, [&](std::size_t a) {
    return arrow(static_cast<Index>(a), static_cast<Index>(a), x.ident(static_cast<Index>(a)));
  });
  Index li = V.require(V.lunit_inv(V.unit()), "left unitor");
  FiniteMap point = compose_map(inc, p.legs[2]);
  return InternalCategory::build(X, arr, src, tgt, ids, [&](Index g, Index f) {
    Index a = src[f], b = tgt[f], c = tgt[g];
    Index m = v.comp(x.comp(a, b, c), v.comp(V.tensor_arr(point[g], point[f]), li));
    return arrow(a, c, m);
  });
}

inline InternalFunctor underlying_functor(const EnrichedFunctor& f) {
  InternalCategory a = underlying_category(f.dom());
  InternalCategory b = underlying_category(f.cod());
  const InternalCategory& v = f.dom().base().base();
  const FiniteSet& Y = f.cod().carrier();
  auto f1 = FiniteMap::tabulate(a.arrows(), b.arrows(), [&](std::size_t t) {
    const Atom& e = a.arr_atom(static_cast<Index>(t));
    Index x0 = a.src(static_cast<Index>(t)), x1 = a.tgt(static_cast<Index>(t));
    Index pt = v.arr_index(e[2]);
    return b.arr_index(tup({Y[f.obj(x0)], Y[f.obj(x1)], v.arr_atom(v.comp(f.hom(x0, x1), pt))}));
  });
  return InternalFunctor(a, b, f.f0_map(), f1);
}

inline InternalNat underlying_nat(const EnrichedNat& t) {
  InternalFunctor F = underlying_functor(t.src());
  InternalFunctor G = underlying_functor(t.tgt());
  const auto& Y = t.src().cod();
  const InternalCategory& v = Y.base().base();
  const InternalCategory& b = F.cod();
  auto comp = FiniteMap::tabulate(F.dom().objects(), b.arrows(), [&](std::size_t x) {
    Index i = static_cast<Index>(x);
    return b.arr_index(tup({Y.atom(t.src().obj(i)), Y.atom(t.tgt().obj(i)), v.arr_atom(t.at(i))}));
  });
  return InternalNat(F, G, comp);
}

}  // namespace icat
