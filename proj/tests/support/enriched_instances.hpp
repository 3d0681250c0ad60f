#pragma once

// Enriched categories and functors shared by the multicategory and acceptance tests.

#include <functional>
#include <vector>

#include "icat/enriched.hpp"
#include "support/instances.hpp"

namespace inst {

using namespace icat;

// Over V_bool a hom value of 1 means "x <= y".
inline EnrichedCategory bool_enriched(const std::vector<bool>& rel, std::size_t n) {
  return enriched_from_hom_thin(v_bool(), numbered("X", n),
                                [&](Index i, Index j) -> Index { return rel[i * n + j] ? 1 : 0; });
}

inline EnrichedCategory chain(std::size_t n) {
  std::vector<bool> rel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i * n + j] = i <= j;
  return bool_enriched(rel, n);
}

// t(a) = g, t(b) = e.
inline Index coboundary_t(Index x) { return x == 0 ? 1 : 0; }

// Over Z/2 on {a, b}: comp(x0, x1, x2) = t(x1), ident = t.
inline EnrichedCategory z2_coboundary() {
  return EnrichedCategory::build(
      v_z2(), set_of("X", {"a", "b"}), [](Index, Index) { return 0; },
      [](Index, Index b, Index) { return coboundary_t(b); }, [](Index a) { return coboundary_t(a); });
}

// Over the graded V: every hom is the grade-0 object, comp(x0, x1, x2) = g
// exactly when x1 = b, ident(b) = g.
inline EnrichedCategory graded_pair() {
  return EnrichedCategory::build(
      v_graded(), set_of("X", {"a", "b"}), [](Index, Index) { return 0; },
      [](Index, Index b, Index) -> Index { return b == 1 ? 2 : 0; }, [](Index x) -> Index { return x == 1 ? 2 : 0; });
}

// Over the graded V with hom(x, y) of grade p(x) + p(y), p(a) = 0, p(b) = 1.
// Associativity holds only through the associator at (1, 1, 1): comp(b, a, b) = g.
inline EnrichedCategory graded_alternating() {
  auto p = [](Index x) -> Index { return x; };
  return EnrichedCategory::build(
      v_graded(), set_of("X", {"a", "b"}), [=](Index i, Index j) { return p(i) ^ p(j); },
      [=](Index i, Index j, Index k) -> Index { return ((i == 1 && j == 0 && k == 1) ? 2 : 0) | (p(i) ^ p(k)); },
      [](Index) -> Index { return 0; });
}

// Swaps a and b; every hom component is g.
inline EnrichedFunctor z2_swap(const EnrichedCategory& x) {
  return EnrichedFunctor::build(
      x, x, [](Index i) { return 1 - i; }, [](Index, Index) -> Index { return 1; });
}

}  // namespace inst
