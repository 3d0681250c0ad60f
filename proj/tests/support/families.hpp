#pragma once

// The index family {0, 1, 2, 1x1, 1x2, 2x2} with its product projections and diagonals.

#include <vector>

#include "icat/ambient.hpp"

namespace inst {

struct ProductFamily {
  std::vector<icat::FiniteSet> members;
  std::vector<icat::FiniteMap> connecting;
};

inline ProductFamily product_family() {
  using namespace icat;
  FiniteSet empty("0", {});
  FiniteSet one = terminal();
  FiniteSet two("2", {leaf("p"), leaf("q")});
  LimitCone oo = product(one, one), ot = product(one, two), tt = product(two, two);
  ProductFamily f;
  f.members = {empty, one, two, oo.apex, ot.apex, tt.apex};
  for (const LimitCone* c : {&oo, &ot, &tt})
    for (const auto& leg : c->legs) f.connecting.push_back(leg);
  f.connecting.push_back(oo.pair(identity_map(one), identity_map(one)));
  f.connecting.push_back(tt.pair(identity_map(two), identity_map(two)));
  return f;
}

}  // namespace inst
