#include <gtest/gtest.h>

#include "icat/ambient.hpp"
#include "support/oracles.hpp"

using namespace icat;

namespace {

FiniteSet numbered(const std::string& name, std::size_t n, const std::string& prefix) {
  std::vector<Atom> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(leaf(prefix + std::to_string(i)));
  return FiniteSet(name, e);
}

// Counts maps m: Z -> apex with leg_k . m == cone_k for every k.
std::size_t count_mediators(const LimitCone& lim, const std::vector<FiniteMap>& cone) {
  std::size_t n = 0;
  for_each_map(cone[0].dom(), lim.apex, [&](const FiniteMap& m) {
    for (std::size_t k = 0; k < cone.size(); ++k) {
      if (!(compose_map(m, lim.legs[k]) == cone[k])) return;
    }
    ++n;
  });
  return n;
}

}  // namespace

TEST(Atom, TupleEncoding) {
  Atom p = tup({leaf("a"), tup({leaf("b"), leaf("c")})});
  EXPECT_EQ(p.str(), "⟨a,⟨b,c⟩⟩");
  EXPECT_EQ(p.arity(), 2u);
  EXPECT_EQ(p[1][0], leaf("b"));
  EXPECT_EQ(tup({}).str(), "⟨⟩");
  EXPECT_THROW(leaf("a,b"), MalformedData);
  EXPECT_THROW(leaf(""), MalformedData);
  EXPECT_THROW(leaf("⟨x"), MalformedData);
}

TEST(FiniteSet, CanonicalOrderAndDuplicates) {
  FiniteSet s("S", {leaf("c"), leaf("a"), leaf("b")});
  EXPECT_EQ(s.encoding(), "{a,b,c}");
  EXPECT_EQ(s.index_of(leaf("b")), 1u);
  EXPECT_FALSE(s.contains(leaf("d")));
  EXPECT_THROW(FiniteSet("T", {leaf("a"), leaf("a")}), MalformedData);
  EXPECT_EQ(s, FiniteSet("other", {leaf("a"), leaf("b"), leaf("c")}));
}

TEST(FiniteMap, CompositionAndMismatch) {
  FiniteSet a("A", {leaf("x"), leaf("y")});
  FiniteSet b("B", {leaf("0"), leaf("1"), leaf("2")});
  FiniteMap f = FiniteMap::from_rows(a, b, {{leaf("x"), leaf("2")}, {leaf("y"), leaf("0")}});
  FiniteMap g = FiniteMap::from_rows(b, a, {{leaf("0"), leaf("x")}, {leaf("1"), leaf("x")}, {leaf("2"), leaf("y")}});
  FiniteMap gf = compose_map(f, g);
  EXPECT_EQ(gf(leaf("x")), leaf("y"));
  EXPECT_EQ(gf(leaf("y")), leaf("x"));
  EXPECT_THROW(compose_map(f, f), DomainMismatch);
  EXPECT_THROW(FiniteMap::from_rows(a, b, {{leaf("x"), leaf("2")}}), MalformedData);
  EXPECT_EQ(compose_map(identity_map(a), f), f);
  EXPECT_EQ(compose_map(f, identity_map(b)), f);
}

TEST(Ambient, ProductOfTwoByThree) {
  FiniteSet a("A", {leaf("a0"), leaf("a1")});
  FiniteSet b = numbered("B", 3, "b");
  LimitCone p = product(a, b);
  EXPECT_EQ(p.apex.size(), 6u);
  EXPECT_EQ(p.apex[0].str(), "⟨a0,b0⟩");
  EXPECT_EQ(p.legs[1](tup({leaf("a1"), leaf("b2")})), leaf("b2"));
  EXPECT_EQ(p.legs[0](tup({leaf("a1"), leaf("b2")})), leaf("a1"));
}

TEST(Ambient, ProductWithEmptyIsEmpty) {
  FiniteSet e("E", {});
  FiniteSet a = numbered("A", 3, "a");
  LimitCone p = product(e, a);
  EXPECT_EQ(p.apex.size(), 0u);
  EXPECT_EQ(p.apex, e);
}

TEST(Ambient, TerminalAndBang) {
  EXPECT_EQ(terminal().size(), 1u);
  EXPECT_EQ(terminal()[0].str(), "⋆");
  FiniteSet a = numbered("A", 3, "a");
  EXPECT_EQ(bang(a).table(), (std::vector<Index>{0, 0, 0}));
  // Uniqueness: there is exactly one map into 1.
  std::size_t n = 0;
  for_each_map(a, terminal(), [&](const FiniteMap&) { ++n; });
  EXPECT_EQ(n, 1u);
}

TEST(Ambient, PullbackOfTwoMapsIntoBool) {
  FiniteSet a = numbered("A", 3, "a");
  FiniteSet b = numbered("B", 2, "b");
  FiniteSet two("2", {leaf("0"), leaf("1")});
  FiniteMap f = FiniteMap::tabulate(a, two, [](std::size_t i) { return i == 2 ? 1 : 0; });
  FiniteMap g = FiniteMap::tabulate(b, two, [](std::size_t i) { return i; });
  LimitCone pb = pullback(f, g);
  EXPECT_EQ(oracle::pullback_size(f, g), pb.apex.size());
  EXPECT_EQ(pb.apex.size(), 3u);
}

TEST(Ambient, IncompatibleConeIsRejected) {
  FiniteSet a = numbered("A", 2, "a");
  FiniteSet two("2", {leaf("0"), leaf("1")});
  FiniteMap f = identity_map(two);
  LimitCone eq = equalizer(f, FiniteMap::tabulate(two, two, [](std::size_t i) { return 1 - i; }));
  EXPECT_EQ(eq.apex.size(), 0u);
  EXPECT_THROW(eq.pair(FiniteMap::tabulate(a, two, [](std::size_t) { return 0; })), DomainMismatch);
}

// ===========================================================================
// Exhaustive universal properties for all sets of size <= 3 and cones from
// sets of size <= 2.
// ===========================================================================

TEST(AmbientUniversal, ProductMediatorExistsAndIsUnique) {
  for (std::size_t na = 0; na <= 3; ++na) {
    for (std::size_t nb = 0; nb <= 3; ++nb) {
      FiniteSet a = numbered("A", na, "a"), b = numbered("B", nb, "b");
      LimitCone p = product(a, b);
      ASSERT_EQ(p.apex.size(), na * nb);
      for (std::size_t nz = 0; nz <= 2; ++nz) {
        FiniteSet z = numbered("Z", nz, "z");
        for_each_map(z, a, [&](const FiniteMap& f) {
          for_each_map(z, b, [&](const FiniteMap& g) {
            FiniteMap m = p.pair(f, g);
            EXPECT_EQ(compose_map(m, p.legs[0]), f);
            EXPECT_EQ(compose_map(m, p.legs[1]), g);
            EXPECT_EQ(count_mediators(p, {f, g}), 1u) << "Failed for |A|=" << na << " |B|=" << nb;
          });
        });
      }
    }
  }
}

TEST(AmbientUniversal, PullbackMediatorExistsAndIsUnique) {
  for (std::size_t na = 0; na <= 3; ++na) {
    for (std::size_t nb = 0; nb <= 2; ++nb) {
      for (std::size_t nc = 1; nc <= 2; ++nc) {
        FiniteSet a = numbered("A", na, "a"), b = numbered("B", nb, "b"), c = numbered("C", nc, "c");
        for_each_map(a, c, [&](const FiniteMap& f) {
          for_each_map(b, c, [&](const FiniteMap& g) {
            LimitCone pb = pullback(f, g);
            ASSERT_EQ(pb.apex.size(), oracle::pullback_size(f, g));
            ASSERT_EQ(compose_map(pb.legs[0], f), compose_map(pb.legs[1], g));
            FiniteSet z = numbered("Z", 2, "z");
            for_each_map(z, a, [&](const FiniteMap& p) {
              for_each_map(z, b, [&](const FiniteMap& q) {
                bool commutes = compose_map(p, f) == compose_map(q, g);
                if (!commutes) {
                  EXPECT_THROW(pb.pair(p, q), DomainMismatch);
                  return;
                }
                FiniteMap m = pb.pair(p, q);
                EXPECT_EQ(compose_map(m, pb.legs[0]), p);
                EXPECT_EQ(compose_map(m, pb.legs[1]), q);
                EXPECT_EQ(count_mediators(pb, {p, q}), 1u);
              });
            });
          });
        });
      }
    }
  }
}

TEST(AmbientUniversal, EqualizerMediatorExistsAndIsUnique) {
  for (std::size_t na = 0; na <= 3; ++na) {
    for (std::size_t nb = 1; nb <= 2; ++nb) {
      FiniteSet a = numbered("A", na, "a"), b = numbered("B", nb, "b");
      for_each_map(a, b, [&](const FiniteMap& f) {
        for_each_map(a, b, [&](const FiniteMap& g) {
          LimitCone eq = equalizer(f, g);
          FiniteMap inc = eq.legs[0];
          ASSERT_EQ(compose_map(inc, f), compose_map(inc, g));
          FiniteSet z = numbered("Z", 2, "z");
          for_each_map(z, a, [&](const FiniteMap& h) {
            if (!(compose_map(h, f) == compose_map(h, g))) return;
            FiniteMap m = eq.pair(h);
            EXPECT_EQ(compose_map(m, inc), h);
            EXPECT_EQ(count_mediators(eq, {h}), 1u);
          });
        });
      });
    }
  }
}

TEST(AmbientUniversal, TernaryProductIsFlat) {
  FiniteSet a = numbered("A", 2, "a");
  LimitCone p = product(a, a, a);
  EXPECT_EQ(p.apex.size(), 8u);
  EXPECT_EQ(p.apex[0].arity(), 3u);
  FiniteSet z = numbered("Z", 2, "z");
  for_each_map(z, a, [&](const FiniteMap& f) {
    for_each_map(z, a, [&](const FiniteMap& g) {
      std::vector<FiniteMap> cone{f, g, f};
      FiniteMap m = p.pair(cone);
      for (int k = 0; k < 3; ++k) EXPECT_EQ(compose_map(m, p.legs[k]), cone[k]);
      EXPECT_EQ(count_mediators(p, cone), 1u);
    });
  });
}
