#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "icat/atom.hpp"
#include "icat/error.hpp"

namespace icat {

using Index = std::uint32_t;

// A finite set of atoms held in canonical order. Copies share storage.
class FiniteSet {
 public:
  FiniteSet() : FiniteSet("", {}) {}

  FiniteSet(std::string name, std::vector<Atom> elems) {
    auto d = std::make_shared<Data>();
    d->name = std::move(name);
    std::sort(elems.begin(), elems.end());
    for (std::size_t i = 1; i < elems.size(); ++i) {
      if (elems[i] == elems[i - 1]) {
        throw MalformedData("duplicate element " + elems[i].str() + " in set " + d->name);
      }
    }
    d->elems = std::move(elems);
    d->index.reserve(d->elems.size());
    for (std::size_t i = 0; i < d->elems.size(); ++i) {
      d->index.emplace(d->elems[i].str(), static_cast<Index>(i));
    }
    d_ = std::move(d);
  }

  const std::string& name() const { return d_->name; }
  std::size_t size() const { return d_->elems.size(); }
  bool empty() const { return d_->elems.empty(); }
  const Atom& operator[](std::size_t i) const { return d_->elems[i]; }
  const std::vector<Atom>& elements() const { return d_->elems; }
  auto begin() const { return d_->elems.begin(); }
  auto end() const { return d_->elems.end(); }

  std::optional<Index> index_of(const Atom& a) const {
    auto it = d_->index.find(a.str());
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Atom& a) const { return index_of(a).has_value(); }
  Index at(const Atom& a) const {
    auto i = index_of(a);
    if (!i) throw DomainMismatch(a.str() + " is not an element of " + describe());
    return *i;
  }

  std::string encoding() const { return "{" + join_atoms(d_->elems, ",") + "}"; }
  std::string describe() const { return d_->name.empty() ? encoding() : d_->name; }

  FiniteSet renamed(std::string name) const {
    FiniteSet s = *this;
    auto d = std::make_shared<Data>(*d_);
    d->name = std::move(name);
    s.d_ = std::move(d);
    return s;
  }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) {
    return a.d_ == b.d_ || a.d_->elems == b.d_->elems;
  }

 private:
  struct Data {
    std::string name;
    std::vector<Atom> elems;
    std::unordered_map<std::string, Index> index;
  };
  std::shared_ptr<const Data> d_;
};

// A total function between finite sets, stored as element indices.
class FiniteMap {
 public:
  FiniteMap() = default;

  FiniteMap(FiniteSet dom, FiniteSet cod, std::vector<Index> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_.size()) {
      throw MalformedData("table for map " + dom_.describe() + " -> " + cod_.describe() +
                          " has " + std::to_string(table_.size()) + " entries");
    }
    for (Index v : table_) {
      if (v >= cod_.size()) throw MalformedData("map value out of range for " + cod_.describe());
    }
  }

  template <class F>
  static FiniteMap tabulate(const FiniteSet& dom, const FiniteSet& cod, F&& f) {
    std::vector<Index> t(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) t[i] = static_cast<Index>(f(i));
    return FiniteMap(dom, cod, std::move(t));
  }

  // Builds a map from explicit rows; every element of dom must appear exactly once.
  static FiniteMap from_rows(const FiniteSet& dom, const FiniteSet& cod,
                             const std::vector<std::pair<Atom, Atom>>& rows) {
    std::vector<std::optional<Index>> t(dom.size());
    for (const auto& [k, v] : rows) {
      auto ki = dom.index_of(k);
      if (!ki) throw DomainMismatch(k.str() + " is not in the domain " + dom.describe());
      auto vi = cod.index_of(v);
      if (!vi) throw DomainMismatch(v.str() + " is not in the codomain " + cod.describe());
      if (t[*ki]) throw MalformedData("duplicate row for " + k.str());
      t[*ki] = *vi;
    }
    std::vector<Index> out(dom.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i]) throw MalformedData("missing row for " + dom[i].str());
      out[i] = *t[i];
    }
    return FiniteMap(dom, cod, std::move(out));
  }

  template <class F>
  static FiniteMap from_function(const FiniteSet& dom, const FiniteSet& cod, F&& f) {
    return tabulate(dom, cod, [&](std::size_t i) { return cod.at(f(dom[i])); });
  }

  const FiniteSet& dom() const { return dom_; }
  const FiniteSet& cod() const { return cod_; }
  const std::vector<Index>& table() const { return table_; }
  Index operator[](std::size_t i) const { return table_[i]; }
  const Atom& operator()(const Atom& a) const { return cod_[table_[dom_.at(a)]]; }

  std::vector<std::pair<Atom, Atom>> rows() const {
    std::vector<std::pair<Atom, Atom>> out;
    out.reserve(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) out.emplace_back(dom_[i], cod_[table_[i]]);
    return out;
  }

  friend bool operator==(const FiniteMap& a, const FiniteMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.table_ == b.table_;
  }

 private:
  FiniteSet dom_;
  FiniteSet cod_;
  std::vector<Index> table_;
};

inline FiniteMap identity_map(const FiniteSet& s) {
  return FiniteMap::tabulate(s, s, [](std::size_t i) { return i; });
}

// g after f.
inline FiniteMap compose_map(const FiniteMap& f, const FiniteMap& g) {
  if (!(f.cod() == g.dom())) {
    throw DomainMismatch("cannot compose " + f.dom().describe() + " -> " + f.cod().describe() +
                         " with " + g.dom().describe() + " -> " + g.cod().describe());
  }
  return FiniteMap::tabulate(f.dom(), g.cod(), [&](std::size_t i) { return g[f[i]]; });
}

// The universal cone of a chosen limit. pairing(cone) returns the mediating map.
struct LimitCone {
  FiniteSet apex;
  std::vector<FiniteMap> legs;
  std::function<FiniteMap(std::span<const FiniteMap>)> pairing;

  FiniteMap pair(std::span<const FiniteMap> cone) const { return pairing(cone); }
  FiniteMap pair(const FiniteMap& a, const FiniteMap& b) const {
    const FiniteMap c[2] = {a, b};
    return pairing(c);
  }
  FiniteMap pair(const FiniteMap& a) const { return pairing(std::span<const FiniteMap>(&a, 1)); }
};

// Calls fn(t) for every index tuple with t[k] < radices[k], in odometer order
// (last position fastest).
template <class Fn>
void for_each_tuple(const std::vector<std::size_t>& radices, Fn&& fn) {
  for (std::size_t r : radices) {
    if (r == 0) return;
  }
  std::vector<Index> t(radices.size(), 0);
  while (true) {
    fn(static_cast<const std::vector<Index>&>(t));
    std::size_t k = radices.size();
    while (true) {
      if (k == 0) return;
      --k;
      if (++t[k] < radices[k]) break;
      t[k] = 0;
    }
  }
}

// Calls fn(table) for every map dom -> cod in odometer order.
template <class Fn>
void for_each_table(std::size_t dom, std::size_t cod, Fn&& fn) {
  for_each_tuple(std::vector<std::size_t>(dom, cod), std::forward<Fn>(fn));
}

namespace detail {

inline std::string product_name(std::span<const FiniteSet> sets) {
  std::string n;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) n += "\xC3\x97";  // ×
    n += sets[i].describe();
  }
  return n;
}

// Builds a subset-of-product apex from index tuples; legs are projections.
inline LimitCone tuple_cone(std::span<const FiniteSet> factors,
                            const std::vector<std::vector<Index>>& tuples, std::string name) {
  std::vector<std::pair<Atom, std::size_t>> keyed;
  keyed.reserve(tuples.size());
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    std::vector<Atom> parts;
    parts.reserve(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) parts.push_back(factors[k][tuples[t][k]]);
    keyed.emplace_back(Atom::tuple(std::move(parts)), t);
  }
  std::vector<Atom> elems;
  elems.reserve(keyed.size());
  for (auto& kv : keyed) elems.push_back(kv.first);
  FiniteSet apex(std::move(name), std::move(elems));
  std::vector<FiniteMap> legs;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Index> t(apex.size());
    for (auto& [atom, src] : keyed) t[apex.at(atom)] = tuples[src][k];
    legs.emplace_back(apex, factors[k], std::move(t));
  }
  LimitCone cone;
  cone.apex = apex;
  cone.legs = legs;
  return cone;
}

inline void require_common_domain(std::span<const FiniteMap> cone, std::size_t n) {
  if (cone.size() != n) throw DomainMismatch("cone has the wrong number of legs");
  for (std::size_t k = 1; k < cone.size(); ++k) {
    if (!(cone[k].dom() == cone[0].dom())) throw DomainMismatch("cone legs have different domains");
  }
}

}  // namespace detail

// Chosen n-ary product; the apex holds flat n-tuples.
inline LimitCone product(std::span<const FiniteSet> sets) {
  std::vector<std::size_t> radices;
  for (const auto& s : sets) radices.push_back(s.size());
  std::vector<std::vector<Index>> tuples;
  for_each_tuple(radices, [&](const std::vector<Index>& t) { tuples.push_back(t); });
  std::vector<FiniteSet> factors(sets.begin(), sets.end());
  LimitCone cone = detail::tuple_cone(factors, tuples, detail::product_name(sets));
  FiniteSet apex = cone.apex;
  std::size_t n = sets.size();
  cone.pairing = [apex, factors, n](std::span<const FiniteMap> legs) {
    detail::require_common_domain(legs, n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(legs[k].cod() == factors[k])) throw DomainMismatch("cone leg has the wrong codomain");
    }
    const FiniteSet& z = n ? legs[0].dom() : apex;
    return FiniteMap::tabulate(z, apex, [&](std::size_t i) {
      std::vector<Atom> parts;
      for (std::size_t k = 0; k < n; ++k) parts.push_back(factors[k][legs[k][i]]);
      return apex.at(Atom::tuple(std::move(parts)));
    });
  };
  return cone;
}

inline LimitCone product(const FiniteSet& a, const FiniteSet& b) {
  const FiniteSet s[2] = {a, b};
  return product(s);
}

inline LimitCone product(const FiniteSet& a, const FiniteSet& b, const FiniteSet& c) {
  const FiniteSet s[3] = {a, b, c};
  return product(s);
}

// Chosen pullback of f: A -> C and g: B -> C; apex is {<a,b> : f a = g b}.
inline LimitCone pullback(const FiniteMap& f, const FiniteMap& g) {
  if (!(f.cod() == g.cod())) throw DomainMismatch("pullback of maps with different codomains");
  std::vector<std::vector<Index>> tuples;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    for (std::size_t b = 0; b < g.dom().size(); ++b) {
      if (f[a] == g[b]) tuples.push_back({static_cast<Index>(a), static_cast<Index>(b)});
    }
  }
  std::vector<FiniteSet> factors{f.dom(), g.dom()};
  std::string name = f.dom().describe() + "\xC3\x97_" + f.cod().describe() + g.dom().describe();
  LimitCone cone = detail::tuple_cone(factors, tuples, std::move(name));
  FiniteSet apex = cone.apex;
  cone.pairing = [apex, f, g](std::span<const FiniteMap> legs) {
    detail::require_common_domain(legs, 2);
    if (!(legs[0].cod() == f.dom()) || !(legs[1].cod() == g.dom())) {
      throw DomainMismatch("cone leg has the wrong codomain");
    }
    return FiniteMap::tabulate(legs[0].dom(), apex, [&](std::size_t i) {
      Index a = legs[0][i], b = legs[1][i];
      if (f[a] != g[b]) throw DomainMismatch("cone does not commute at " + legs[0].dom()[i].str());
      return apex.at(Atom::tuple({f.dom()[a], g.dom()[b]}));
    });
  };
  return cone;
}

// Chosen equalizer of f, g: A -> B; the apex is a subset of A with the same atoms.
inline LimitCone equalizer(const FiniteMap& f, const FiniteMap& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw DomainMismatch("equalizer of maps that are not parallel");
  }
  std::vector<Atom> elems;
  for (std::size_t a = 0; a < f.dom().size(); ++a) {
    if (f[a] == g[a]) elems.push_back(f.dom()[a]);
  }
  FiniteSet apex("Eq(" + f.dom().describe() + ")", std::move(elems));
  FiniteSet a = f.dom();
  LimitCone cone;
  cone.apex = apex;
  cone.legs.push_back(FiniteMap::tabulate(apex, a, [&](std::size_t i) { return a.at(apex[i]); }));
  cone.pairing = [apex, a, f, g](std::span<const FiniteMap> legs) {
    detail::require_common_domain(legs, 1);
    if (!(legs[0].cod() == a)) throw DomainMismatch("cone leg has the wrong codomain");
    return FiniteMap::tabulate(legs[0].dom(), apex, [&](std::size_t i) {
      Index x = legs[0][i];
      if (f[x] != g[x]) throw DomainMismatch("map does not equalize at " + legs[0].dom()[i].str());
      return apex.at(a[x]);
    });
  };
  return cone;
}

inline FiniteSet terminal() {
  static const FiniteSet one("1", {Atom(std::string(kStar))});
  return one;
}

inline FiniteMap bang(const FiniteSet& s) {
  return FiniteMap::tabulate(s, terminal(), [](std::size_t) { return 0; });
}

// The constant map s -> target picking out element `value` of target.
inline FiniteMap constant_map(const FiniteSet& s, const FiniteSet& target, Index value) {
  return FiniteMap::tabulate(s, target, [&](std::size_t) { return value; });
}

// <f, g> : Z -> A x B into the chosen product.
inline FiniteMap pair_map(const FiniteMap& f, const FiniteMap& g) {
  return product(f.cod(), g.cod()).pair(f, g);
}

// f x g : A x C -> B x D between chosen products.
inline FiniteMap product_map(const FiniteMap& f, const FiniteMap& g) {
  LimitCone src = product(f.dom(), g.dom());
  return pair_map(compose_map(src.legs[0], f), compose_map(src.legs[1], g));
}

// Number of maps dom -> cod, saturating at SIZE_MAX.
inline std::size_t count_maps(std::size_t dom, std::size_t cod) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dom; ++i) {
    if (cod != 0 && n > SIZE_MAX / cod) return SIZE_MAX;
    n *= cod;
  }
  return n;
}

template <class Fn>
void for_each_map(const FiniteSet& dom, const FiniteSet& cod, Fn&& fn) {
  for_each_table(dom.size(), cod.size(),
                 [&](const std::vector<Index>& t) { fn(FiniteMap(dom, cod, t)); });
}

}  // namespace icat
