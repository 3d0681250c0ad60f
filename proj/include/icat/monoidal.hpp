#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "icat/internal_cat.hpp"

namespace icat {

inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

// A monoidal structure on an internal category V. The associator and unitors
// are stored as full component tables; inverses are found by search.
class MonoidalStructure {
 public:
  using ObjFn2 = std::function<Index(Index, Index)>;
  using ObjFn3 = std::function<Index(Index, Index, Index)>;
  using ObjFn1 = std::function<Index(Index)>;

  MonoidalStructure(InternalCategory base, const FiniteMap& tensor0, const FiniteMap& tensor1,
                    const Atom& unit, const FiniteMap& assoc, const FiniteMap& lunit,
                    const FiniteMap& runit)
      : base_(std::move(base)) {
    const FiniteSet& v0 = base_.objects();
    const FiniteSet& v1 = base_.arrows();
    FiniteSet pairs0 = product(v0, v0).apex;
    FiniteSet pairs1 = product(v1, v1).apex;
    FiniteSet triples0 = product(v0, v0, v0).apex;
    if (!(tensor0.dom() == pairs0) || !(tensor0.cod() == v0)) throw MalformedData("tensor on objects has the wrong shape");
    if (!(tensor1.dom() == pairs1) || !(tensor1.cod() == v1)) throw MalformedData("tensor on arrows has the wrong shape");
    if (!(assoc.dom() == triples0) || !(assoc.cod() == v1)) throw MalformedData("associator has the wrong shape");
    if (!(lunit.dom() == v0) || !(lunit.cod() == v1)) throw MalformedData("left unitor has the wrong shape");
    if (!(runit.dom() == v0) || !(runit.cod() == v1)) throw MalformedData("right unitor has the wrong shape");
    auto u = v0.index_of(unit);
    if (!u) throw MalformedData("unit " + unit.str() + " is not an object");
    unit_ = *u;
    const std::size_t n0 = v0.size(), n1 = v1.size();
    t0_.resize(n0 * n0);
    for (Index a = 0; a < n0; ++a)
      for (Index b = 0; b < n0; ++b) t0_[a * n0 + b] = tensor0[pairs0.at(tup({v0[a], v0[b]}))];
    t1_.resize(n1 * n1);
    for (Index f = 0; f < n1; ++f)
      for (Index g = 0; g < n1; ++g) t1_[f * n1 + g] = tensor1[pairs1.at(tup({v1[f], v1[g]}))];
    as_.resize(n0 * n0 * n0);
    for (Index a = 0; a < n0; ++a)
      for (Index b = 0; b < n0; ++b)
        for (Index c = 0; c < n0; ++c) as_[(a * n0 + b) * n0 + c] = assoc[triples0.at(tup({v0[a], v0[b], v0[c]}))];
    lu_ = lunit.table();
    ru_ = runit.table();
    compute_inverses();
  }

  // Builds the tables from index-level functions.
  static std::shared_ptr<MonoidalStructure> build(const InternalCategory& base, const ObjFn2& t0,
                                                  const ObjFn2& t1, Index unit, const ObjFn3& assoc,
                                                  const ObjFn1& lunit, const ObjFn1& runit) {
    const FiniteSet& v0 = base.objects();
    const FiniteSet& v1 = base.arrows();
    LimitCone p0 = product(v0, v0), p1 = product(v1, v1), p3 = product(v0, v0, v0);
    auto tensor0 = FiniteMap::tabulate(p0.apex, v0, [&](std::size_t i) { return t0(p0.legs[0][i], p0.legs[1][i]); });
    auto tensor1 = FiniteMap::tabulate(p1.apex, v1, [&](std::size_t i) { return t1(p1.legs[0][i], p1.legs[1][i]); });
    auto as = FiniteMap::tabulate(p3.apex, v1, [&](std::size_t i) {
      return assoc(p3.legs[0][i], p3.legs[1][i], p3.legs[2][i]);
    });
    auto lu = FiniteMap::tabulate(v0, v1, [&](std::size_t a) { return lunit(static_cast<Index>(a)); });
    auto ru = FiniteMap::tabulate(v0, v1, [&](std::size_t a) { return runit(static_cast<Index>(a)); });
    return std::make_shared<MonoidalStructure>(base, tensor0, tensor1, v0[unit], as, lu, ru);
  }

  // Coherence components are identities.
  static std::shared_ptr<MonoidalStructure> strict(const InternalCategory& base, const ObjFn2& t0,
                                                   const ObjFn2& t1, Index unit) {
    return build(
        base, t0, t1, unit, [&](Index a, Index b, Index c) { return base.id(t0(t0(a, b), c)); },
        [&](Index a) { return base.id(a); }, [&](Index a) { return base.id(a); });
  }

  const InternalCategory& base() const { return base_; }
  std::size_t n0() const { return base_.objects().size(); }
  std::size_t n1() const { return base_.arrows().size(); }

  Index unit() const { return unit_; }
  Index tensor(Index a, Index b) const { return t0_[a * n0() + b]; }
  Index tensor_arr(Index f, Index g) const { return t1_[f * n1() + g]; }
  Index assoc(Index a, Index b, Index c) const { return as_[(a * n0() + b) * n0() + c]; }
  Index lunit(Index a) const { return lu_[a]; }
  Index runit(Index a) const { return ru_[a]; }

  std::optional<Index> assoc_inv(Index a, Index b, Index c) const {
    return opt(as_inv_[(a * n0() + b) * n0() + c]);
  }
  std::optional<Index> lunit_inv(Index a) const { return opt(lu_inv_[a]); }
  std::optional<Index> runit_inv(Index a) const { return opt(ru_inv_[a]); }

  Index require(std::optional<Index> i, const char* what) const {
    if (!i) throw NotInvertible(std::string(what) + " component is not invertible");
    return *i;
  }

  FiniteMap tensor0_map() const {
    LimitCone p = product(base_.objects(), base_.objects());
    return FiniteMap::tabulate(p.apex, base_.objects(), [&](std::size_t i) { return tensor(p.legs[0][i], p.legs[1][i]); });
  }
  FiniteMap tensor1_map() const {
    LimitCone p = product(base_.arrows(), base_.arrows());
    return FiniteMap::tabulate(p.apex, base_.arrows(), [&](std::size_t i) { return tensor_arr(p.legs[0][i], p.legs[1][i]); });
  }
  FiniteMap assoc_map() const {
    LimitCone p = product(base_.objects(), base_.objects(), base_.objects());
    return FiniteMap::tabulate(p.apex, base_.arrows(), [&](std::size_t i) {
      return assoc(p.legs[0][i], p.legs[1][i], p.legs[2][i]);
    });
  }
  FiniteMap lunit_map() const { return FiniteMap(base_.objects(), base_.arrows(), lu_); }
  FiniteMap runit_map() const { return FiniteMap(base_.objects(), base_.arrows(), ru_); }

  InternalFunctor tensor_functor() const {
    return InternalFunctor(product_cat(base_, base_), base_, tensor0_map(), tensor1_map());
  }
  InternalFunctor unit_functor() const {
    InternalCategory one = terminal_cat();
    return InternalFunctor(one, base_, constant_map(one.objects(), base_.objects(), unit_),
                           constant_map(one.arrows(), base_.arrows(), base_.id(unit_)));
  }

  bool is_strict() const {
    for (Index a = 0; a < n0(); ++a) {
      if (lu_[a] != base_.id(a) || ru_[a] != base_.id(a)) return false;
    }
    for (Index a = 0; a < n0(); ++a)
      for (Index b = 0; b < n0(); ++b)
        for (Index c = 0; c < n0(); ++c) {
          if (assoc(a, b, c) != base_.id(tensor(tensor(a, b), c))) return false;
        }
    return true;
  }

  friend bool operator==(const MonoidalStructure& a, const MonoidalStructure& b) {
    return a.base_ == b.base_ && a.unit_ == b.unit_ && a.t0_ == b.t0_ && a.t1_ == b.t1_ &&
           a.as_ == b.as_ && a.lu_ == b.lu_ && a.ru_ == b.ru_;
  }

 private:
  static std::optional<Index> opt(Index i) { return i == kNoIndex ? std::nullopt : std::optional<Index>(i); }

  void compute_inverses() {
    auto inv = [&](Index f) -> Index {
      if (f >= n1()) return kNoIndex;
      auto g = base_.inverse(f);
      return g ? *g : kNoIndex;
    };
    as_inv_.resize(as_.size());
    for (std::size_t i = 0; i < as_.size(); ++i) as_inv_[i] = inv(as_[i]);
    lu_inv_.resize(lu_.size());
    for (std::size_t i = 0; i < lu_.size(); ++i) lu_inv_[i] = inv(lu_[i]);
    ru_inv_.resize(ru_.size());
    for (std::size_t i = 0; i < ru_.size(); ++i) ru_inv_[i] = inv(ru_[i]);
  }

  InternalCategory base_;
  Index unit_ = 0;
  std::vector<Index> t0_, t1_, as_, lu_, ru_;
  std::vector<Index> as_inv_, lu_inv_, ru_inv_;
};

using MonoidalPtr = std::shared_ptr<const MonoidalStructure>;

inline bool same_monoidal(const MonoidalPtr& a, const MonoidalPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Bracketings and coherence isomorphisms
// ---------------------------------------------------------------------------

// A bracketing of objects: a leaf, the unit, or a binary tensor.
struct Bracketing {
  enum class Kind { Leaf, Unit, Node };
  Kind kind = Kind::Unit;
  Index obj = 0;
  std::shared_ptr<const Bracketing> left, right;

  static Bracketing leaf(Index o) { return Bracketing{Kind::Leaf, o, nullptr, nullptr}; }
  static Bracketing unit() { return Bracketing{}; }
  static Bracketing node(Bracketing l, Bracketing r) {
    return Bracketing{Kind::Node, 0, std::make_shared<const Bracketing>(std::move(l)),
                      std::make_shared<const Bracketing>(std::move(r))};
  }
};

// Lists are in path order (v_0, ..., v_n); their tensor is the left-nested
// product in reverse order, ((v_n (x) v_{n-1}) (x) ...) (x) v_0, and the unit
// for the empty list.
inline Bracketing list_bracketing(const std::vector<Bracketing>& parts) {
  if (parts.empty()) return Bracketing::unit();
  Bracketing acc = parts.back();
  for (std::size_t k = parts.size() - 1; k-- > 0;) acc = Bracketing::node(acc, parts[k]);
  return acc;
}

inline Bracketing list_bracketing(const std::vector<Index>& objs) {
  std::vector<Bracketing> parts;
  parts.reserve(objs.size());
  for (Index o : objs) parts.push_back(Bracketing::leaf(o));
  return list_bracketing(parts);
}

inline Index bracketing_obj(const MonoidalStructure& v, const Bracketing& b) {
  switch (b.kind) {
    case Bracketing::Kind::Leaf:
      return b.obj;
    case Bracketing::Kind::Unit:
      return v.unit();
    case Bracketing::Kind::Node:
      return v.tensor(bracketing_obj(v, *b.left), bracketing_obj(v, *b.right));
  }
  return 0;
}

inline Index tensor_list(const MonoidalStructure& v, const std::vector<Index>& objs) {
  return bracketing_obj(v, list_bracketing(objs));
}

// Tensor of arrows in path order, bracketed like tensor_list.
inline Index tensor_list_arrows(const MonoidalStructure& v, const std::vector<Index>& arrs) {
  if (arrs.empty()) return v.base().id(v.unit());
  Index acc = arrs.back();
  for (std::size_t k = arrs.size() - 1; k-- > 0;) acc = v.tensor_arr(acc, arrs[k]);
  return acc;
}

namespace detail {

struct Normalized {
  std::vector<Index> leaves;
  Index to;    // obj(tree) -> N(leaves)
  Index from;  // inverse
};

// N(L) is the left-nested tensor of L in the order given, or the unit.
inline Index normal_obj(const MonoidalStructure& v, const std::vector<Index>& l) {
  if (l.empty()) return v.unit();
  Index acc = l[0];
  for (std::size_t k = 1; k < l.size(); ++k) acc = v.tensor(acc, l[k]);
  return acc;
}

// N(L) (x) N(R) -> N(L ++ R) and its inverse.
inline std::pair<Index, Index> merge(const MonoidalStructure& v, const std::vector<Index>& l,
                                     const std::vector<Index>& r) {
  const auto& c = v.base();
  Index nl = normal_obj(v, l);
  if (r.empty()) return {v.runit(nl), v.require(v.runit_inv(nl), "right unitor")};
  if (l.empty()) {
    Index nr = normal_obj(v, r);
    return {v.lunit(nr), v.require(v.lunit_inv(nr), "left unitor")};
  }
  if (r.size() == 1) {
    Index i = c.id(v.tensor(nl, r[0]));
    return {i, i};
  }
  std::vector<Index> rp(r.begin(), r.end() - 1);
  Index last = r.back();
  Index nrp = normal_obj(v, rp);
  Index a = v.assoc(nl, nrp, last);
  Index ainv = v.require(v.assoc_inv(nl, nrp, last), "associator");
  auto [m, minv] = merge(v, l, rp);
  Index idl = c.id(last);
  Index fwd = c.comp(v.tensor_arr(m, idl), ainv);
  Index bwd = c.comp(a, v.tensor_arr(minv, idl));
  return {fwd, bwd};
}

inline Normalized normalize(const MonoidalStructure& v, const Bracketing& b) {
  const auto& c = v.base();
  switch (b.kind) {
    case Bracketing::Kind::Leaf:
      return {{b.obj}, c.id(b.obj), c.id(b.obj)};
    case Bracketing::Kind::Unit:
      return {{}, c.id(v.unit()), c.id(v.unit())};
    case Bracketing::Kind::Node: {
      Normalized l = normalize(v, *b.left);
      Normalized r = normalize(v, *b.right);
      auto [m, minv] = merge(v, l.leaves, r.leaves);
      Normalized out;
      out.leaves = l.leaves;
      out.leaves.insert(out.leaves.end(), r.leaves.begin(), r.leaves.end());
      out.to = c.comp(m, v.tensor_arr(l.to, r.to));
      out.from = c.comp(v.tensor_arr(l.from, r.from), minv);
      return out;
    }
  }
  return {};
}

}  // namespace detail

// The canonical isomorphism between two bracketings with the same leaves.
inline Index coherence_iso(const MonoidalStructure& v, const Bracketing& from, const Bracketing& to) {
  detail::Normalized a = detail::normalize(v, from);
  detail::Normalized b = detail::normalize(v, to);
  if (a.leaves != b.leaves) throw DomainMismatch("bracketings have different leaves");
  return v.base().comp(b.from, a.to);
}

// ---------------------------------------------------------------------------
// Checker
// ---------------------------------------------------------------------------

inline CheckReport check_monoidal(const MonoidalStructure& v, const CheckOptions& opt = {},
                                  const std::string& subject = "monoidal") {
  CheckReport r(subject, "monoidal");
  const auto& c = v.base();
  const Index n0 = static_cast<Index>(v.n0()), n1 = static_cast<Index>(v.n1());
  auto O = [&](Index o) { return c.obj_atom(o); };
  auto A = [&](Index f) { return c.arr_atom(f); };

  auto& tf = r.axiom("monoidal.tensor_functor");
  for (Index f = 0; f < n1; ++f)
    for (Index g = 0; g < n1; ++g) {
      Index fg = v.tensor_arr(f, g);
      tf.expect(c.src(fg) == v.tensor(c.src(f), c.src(g)) && c.tgt(fg) == v.tensor(c.tgt(f), c.tgt(g)),
                [&] { return Witness{A(f), A(g)}; });
    }
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b)
      tf.expect(v.tensor_arr(c.id(a), c.id(b)) == c.id(v.tensor(a, b)), [&] { return Witness{O(a), O(b)}; });
  for (Index f = 0; f < n1; ++f)
    for (Index f2 : c.arrows_from(c.tgt(f)))
      for (Index g = 0; g < n1; ++g)
        for (Index g2 : c.arrows_from(c.tgt(g))) {
          auto rhs = c.try_comp(v.tensor_arr(f2, g2), v.tensor_arr(f, g));
          if (!rhs) continue;
          tf.expect(v.tensor_arr(c.comp(f2, f), c.comp(g2, g)) == *rhs,
                    [&] { return Witness{A(f2), A(f), A(g2), A(g)}; });
        }

  auto& aty = r.axiom("monoidal.assoc.typing");
  auto& ainv = r.axiom("monoidal.assoc.invertible");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b)
      for (Index d = 0; d < n0; ++d) {
        Index al = v.assoc(a, b, d);
        bool typed = c.src(al) == v.tensor(v.tensor(a, b), d) && c.tgt(al) == v.tensor(a, v.tensor(b, d));
        aty.expect(typed, [&] { return Witness{O(a), O(b), O(d)}; });
        // An isomorphism of the required type.
        ainv.expect(typed && v.assoc_inv(a, b, d).has_value(), [&] { return Witness{O(a), O(b), O(d)}; });
      }
  auto& anat = r.axiom("monoidal.assoc.naturality");
  for (Index f = 0; f < n1; ++f)
    for (Index g = 0; g < n1; ++g)
      for (Index h = 0; h < n1; ++h) {
        Index lhs_t = v.tensor_arr(v.tensor_arr(f, g), h);
        Index rhs_t = v.tensor_arr(f, v.tensor_arr(g, h));
        auto lhs = c.try_comp(v.assoc(c.tgt(f), c.tgt(g), c.tgt(h)), lhs_t);
        auto rhs = c.try_comp(rhs_t, v.assoc(c.src(f), c.src(g), c.src(h)));
        if (!lhs || !rhs) continue;
        anat.expect(*lhs == *rhs, [&] { return Witness{A(f), A(g), A(h)}; });
      }

  const Index I = v.unit();
  auto unitor = [&](const std::string& name, bool left) {
    auto& ty = r.axiom("monoidal." + name + ".typing");
    auto& inv = r.axiom("monoidal." + name + ".invertible");
    auto& nat = r.axiom("monoidal." + name + ".naturality");
    for (Index a = 0; a < n0; ++a) {
      Index u = left ? v.lunit(a) : v.runit(a);
      Index s = left ? v.tensor(I, a) : v.tensor(a, I);
      bool typed = c.src(u) == s && c.tgt(u) == a;
      ty.expect(typed, [&] { return Witness{O(a)}; });
      inv.expect(typed && (left ? v.lunit_inv(a) : v.runit_inv(a)).has_value(), [&] { return Witness{O(a)}; });
    }
    for (Index f = 0; f < n1; ++f) {
      Index ua = left ? v.lunit(c.src(f)) : v.runit(c.src(f));
      Index ub = left ? v.lunit(c.tgt(f)) : v.runit(c.tgt(f));
      Index tf2 = left ? v.tensor_arr(c.id(I), f) : v.tensor_arr(f, c.id(I));
      auto lhs = c.try_comp(f, ua);
      auto rhs = c.try_comp(ub, tf2);
      if (!lhs || !rhs) continue;
      nat.expect(*lhs == *rhs, [&] { return Witness{A(f)}; });
    }
  };
  unitor("lunit", true);
  unitor("runit", false);

  auto& tri = r.axiom("monoidal.triangle");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b) {
      auto lhs = c.try_comp(v.tensor_arr(c.id(a), v.lunit(b)), v.assoc(a, I, b));
      Index rhs = v.tensor_arr(v.runit(a), c.id(b));
      if (!lhs) continue;
      tri.expect(*lhs == rhs, [&] { return Witness{O(a), O(b)}; });
    }

  auto& pent = r.axiom("monoidal.pentagon");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b)
      for (Index d = 0; d < n0; ++d)
        for (Index e = 0; e < n0; ++e) {
          auto lhs = c.try_comp(v.assoc(a, b, v.tensor(d, e)), v.assoc(v.tensor(a, b), d, e));
          auto r1 = c.try_comp(v.assoc(a, v.tensor(b, d), e), v.tensor_arr(v.assoc(a, b, d), c.id(e)));
          if (!lhs || !r1) continue;
          auto rhs = c.try_comp(v.tensor_arr(c.id(a), v.assoc(b, d, e)), *r1);
          if (!rhs) continue;
          pent.expect(*lhs == *rhs, [&] { return Witness{O(a), O(b), O(d), O(e)}; });
        }
  return r.finish(opt);
}

// ---------------------------------------------------------------------------
// Monoidal functors and transformations
// ---------------------------------------------------------------------------

// (F, eps: I_W -> F I_V, mu(a, b): Fa (x) Fb -> F(a (x) b)).
class MonoidalFunctorData {
 public:
  MonoidalFunctorData() = default;
  MonoidalFunctorData(MonoidalPtr dom, MonoidalPtr cod, InternalFunctor f, const Atom& eps, const FiniteMap& mu)
      : dom_(std::move(dom)), cod_(std::move(cod)), f_(std::move(f)) {
    if (!(f_.dom() == dom_->base()) || !(f_.cod() == cod_->base())) {
      throw EndpointMismatch("underlying functor does not run between the monoidal bases");
    }
    eps_ = cod_->base().arrows().at(eps);
    FiniteSet pairs = product(dom_->base().objects(), dom_->base().objects()).apex;
    if (!(mu.dom() == pairs) || !(mu.cod() == cod_->base().arrows())) {
      throw MalformedData("tensor comparison has the wrong shape");
    }
    const auto& v0 = dom_->base().objects();
    mu_.resize(v0.size() * v0.size());
    for (Index a = 0; a < v0.size(); ++a)
      for (Index b = 0; b < v0.size(); ++b) mu_[a * v0.size() + b] = mu[pairs.at(tup({v0[a], v0[b]}))];
  }

  static MonoidalFunctorData build(MonoidalPtr dom, MonoidalPtr cod, InternalFunctor f, Index eps,
                                   const std::function<Index(Index, Index)>& mu) {
    LimitCone p = product(dom->base().objects(), dom->base().objects());
    auto m = FiniteMap::tabulate(p.apex, cod->base().arrows(), [&](std::size_t i) { return mu(p.legs[0][i], p.legs[1][i]); });
    Atom e = cod->base().arr_atom(eps);
    return MonoidalFunctorData(std::move(dom), std::move(cod), std::move(f), e, m);
  }

  const MonoidalPtr& dom() const { return dom_; }
  const MonoidalPtr& cod() const { return cod_; }
  const InternalFunctor& functor() const { return f_; }
  Index eps() const { return eps_; }
  Index mu(Index a, Index b) const { return mu_[a * dom_->n0() + b]; }
  FiniteMap mu_map() const {
    LimitCone p = product(dom_->base().objects(), dom_->base().objects());
    return FiniteMap::tabulate(p.apex, cod_->base().arrows(), [&](std::size_t i) { return mu(p.legs[0][i], p.legs[1][i]); });
  }

  friend bool operator==(const MonoidalFunctorData& a, const MonoidalFunctorData& b) {
    return same_monoidal(a.dom_, b.dom_) && same_monoidal(a.cod_, b.cod_) && a.f_ == b.f_ &&
           a.eps_ == b.eps_ && a.mu_ == b.mu_;
  }

 private:
  MonoidalPtr dom_, cod_;
  InternalFunctor f_;
  Index eps_ = 0;
  std::vector<Index> mu_;
};

inline MonoidalFunctorData identity_monoidal_functor(const MonoidalPtr& v) {
  const auto& c = v->base();
  return MonoidalFunctorData::build(v, v, identity_functor(c), c.id(v->unit()),
                                    [&](Index a, Index b) { return c.id(v->tensor(a, b)); });
}

// g after f.
inline MonoidalFunctorData compose_monoidal_functors(const MonoidalFunctorData& f, const MonoidalFunctorData& g) {
  if (!same_monoidal(f.cod(), g.dom())) throw EndpointMismatch("monoidal functors are not composable");
  const auto& w = g.cod()->base();
  const auto& G = g.functor();
  const auto& F = f.functor();
  Index eps = w.comp(G.arr(f.eps()), g.eps());
  return MonoidalFunctorData::build(f.dom(), g.cod(), compose_functors(F, G), eps, [&](Index a, Index b) {
    return w.comp(G.arr(f.mu(a, b)), g.mu(F.obj(a), F.obj(b)));
  });
}

inline CheckReport check_monoidal_functor(const MonoidalFunctorData& d, const CheckOptions& opt = {},
                                          const std::string& subject = "monoidal_functor") {
  CheckReport r(subject, "monoidal_functor");
  r.absorb(check_functor(d.functor(), opt), "monoidal_functor.");
  const auto& V = *d.dom();
  const auto& W = *d.cod();
  const auto& v = V.base();
  const auto& w = W.base();
  const auto& F = d.functor();
  const Index n0 = static_cast<Index>(V.n0());
  auto O = [&](Index o) { return v.obj_atom(o); };

  auto& ety = r.axiom("monoidal_functor.unit.typing");
  ety.expect(w.src(d.eps()) == W.unit() && w.tgt(d.eps()) == F.obj(V.unit()),
             [&] { return Witness{w.arr_atom(d.eps())}; });
  auto& muty = r.axiom("monoidal_functor.mu.typing");
  auto& inv = r.axiom("monoidal_functor.invertible");
  inv.expect(w.inverse(d.eps()).has_value(), [&] { return Witness{w.arr_atom(d.eps())}; });
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b) {
      Index m = d.mu(a, b);
      muty.expect(w.src(m) == W.tensor(F.obj(a), F.obj(b)) && w.tgt(m) == F.obj(V.tensor(a, b)),
                  [&] { return Witness{O(a), O(b)}; });
      inv.expect(w.inverse(m).has_value(), [&] { return Witness{O(a), O(b)}; });
    }
  auto& munat = r.axiom("monoidal_functor.mu.naturality");
  for (Index f = 0; f < V.n1(); ++f)
    for (Index g = 0; g < V.n1(); ++g) {
      auto lhs = w.try_comp(F.arr(V.tensor_arr(f, g)), d.mu(v.src(f), v.src(g)));
      auto rhs = w.try_comp(d.mu(v.tgt(f), v.tgt(g)), W.tensor_arr(F.arr(f), F.arr(g)));
      if (!lhs || !rhs) continue;
      munat.expect(*lhs == *rhs, [&] { return Witness{v.arr_atom(f), v.arr_atom(g)}; });
    }

  auto& as = r.axiom("monoidal_functor.associativity");
  for (Index a = 0; a < n0; ++a)
    for (Index b = 0; b < n0; ++b)
      for (Index c = 0; c < n0; ++c) {
        Index Fa = F.obj(a), Fb = F.obj(b), Fc = F.obj(c);
        auto l1 = w.try_comp(d.mu(V.tensor(a, b), c), W.tensor_arr(d.mu(a, b), w.id(Fc)));
        if (!l1) continue;
        auto lhs = w.try_comp(F.arr(V.assoc(a, b, c)), *l1);
        auto r1 = w.try_comp(W.tensor_arr(w.id(Fa), d.mu(b, c)), W.assoc(Fa, Fb, Fc));
        if (!lhs || !r1) continue;
        auto rhs = w.try_comp(d.mu(a, V.tensor(b, c)), *r1);
        if (!rhs) continue;
        as.expect(*lhs == *rhs, [&] { return Witness{O(a), O(b), O(c)}; });
      }
  auto& lu = r.axiom("monoidal_functor.left_unit");
  auto& ru = r.axiom("monoidal_functor.right_unit");
  for (Index a = 0; a < n0; ++a) {
    Index Fa = F.obj(a);
    auto l1 = w.try_comp(d.mu(V.unit(), a), W.tensor_arr(d.eps(), w.id(Fa)));
    auto l2 = l1 ? w.try_comp(F.arr(V.lunit(a)), *l1) : std::nullopt;
    if (l2) lu.expect(*l2 == W.lunit(Fa), [&] { return Witness{O(a)}; });
    auto r1 = w.try_comp(d.mu(a, V.unit()), W.tensor_arr(w.id(Fa), d.eps()));
    auto r2 = r1 ? w.try_comp(F.arr(V.runit(a)), *r1) : std::nullopt;
    if (r2) ru.expect(*r2 == W.runit(Fa), [&] { return Witness{O(a)}; });
  }
  return r.finish(opt);
}

class MonoidalNatData {
 public:
  MonoidalNatData(MonoidalFunctorData src, MonoidalFunctorData tgt, InternalNat n)
      : src_(std::move(src)), tgt_(std::move(tgt)), n_(std::move(n)) {
    if (!same_monoidal(src_.dom(), tgt_.dom()) || !same_monoidal(src_.cod(), tgt_.cod())) {
      throw EndpointMismatch("monoidal functors are not parallel");
    }
    if (!(n_.src() == src_.functor()) || !(n_.tgt() == tgt_.functor())) {
      throw EndpointMismatch("transformation does not run between the given functors");
    }
  }
  const MonoidalFunctorData& src() const { return src_; }
  const MonoidalFunctorData& tgt() const { return tgt_; }
  const InternalNat& nat() const { return n_; }

 private:
  MonoidalFunctorData src_, tgt_;
  InternalNat n_;
};

inline CheckReport check_monoidal_nat(const MonoidalNatData& d, const CheckOptions& opt = {},
                                      const std::string& subject = "monoidal_nat") {
  CheckReport r(subject, "monoidal_nat");
  r.absorb(check_nat(d.nat(), opt), "monoidal_nat.");
  const auto& V = *d.src().dom();
  const auto& W = *d.src().cod();
  const auto& w = W.base();
  const auto& F = d.src();
  const auto& G = d.tgt();
  const auto& n = d.nat();
  auto& ten = r.axiom("monoidal_nat.tensor");
  for (Index a = 0; a < V.n0(); ++a)
    for (Index b = 0; b < V.n0(); ++b) {
      auto lhs = w.try_comp(G.mu(a, b), W.tensor_arr(n.at(a), n.at(b)));
      auto rhs = w.try_comp(n.at(V.tensor(a, b)), F.mu(a, b));
      if (!lhs || !rhs) continue;
      ten.expect(*lhs == *rhs, [&] { return Witness{V.base().obj_atom(a), V.base().obj_atom(b)}; });
    }
  auto& un = r.axiom("monoidal_nat.unit");
  if (auto lhs = w.try_comp(n.at(V.unit()), F.eps())) {
    un.expect(*lhs == G.eps(), [&] { return Witness{V.base().obj_atom(V.unit())}; });
  }
  return r.finish(opt);
}

}  // namespace icat
