#include <gtest/gtest.h>

#include "icat/multicat.hpp"
#include "support/enriched_instances.hpp"
#include "support/graphs.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace icat;

namespace {

using inst::make_graph;
using inst::small_graphs;

Index find_edge(const FCMulticategory& m, const Atom& a) { return m.c1.edges.at(a); }

// The M_V arrow ((o, ..., o), f) over a one-object V.
Atom mv_arrow(const MonoidalStructure& v, std::size_t arity, const char* f) {
  std::vector<Atom> objs(arity, v.base().obj_atom(0));
  return tup({tup(objs), leaf(f)});
}

}  // namespace

TEST(FreeCategory, SmallCounts) {
  EXPECT_EQ(free_category(make_graph(1, {{0, 0}}), 3).arrows().size(), 4u);
  EXPECT_EQ(free_category(make_graph(2, {}), 3).arrows().size(), 2u);
  LazyCategory ab = free_category(make_graph(2, {{0, 1}}), 5);
  EXPECT_EQ(ab.arrows().size(), 3u);
  EXPECT_EQ(ab.compose(ab.id(1), ab.index_of(Path{0, {0}})), ab.index_of(Path{0, {0}}));
}

TEST(FreeCategory, PathCountsMatchWalkOracle) {
  for (const auto& [n, es] : small_graphs()) {
    FGraph g = make_graph(n, es);
    LazyCategory fc = free_category(g, 3);
    for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(fc.count(k), oracle::walk_count(n, es, k)) << n << " " << k;
  }
}

TEST(FreeCategory, MonadLawsOnAllSmallGraphs) {
  for (const auto& [n, es] : small_graphs()) {
    CheckReport r = fc_monad_laws(make_graph(n, es), 3);
    EXPECT_TRUE(r.passed()) << n << " vertices, " << es.size() << " edges";
    for (const char* id : {"fc.enumeration", "fc.unit_left", "fc.unit_right", "fc.associativity"})
      EXPECT_NE(r.find(id), nullptr) << id;
  }
}

TEST(Ind, ArrowsAreBoundedListsAndLawsHold) {
  for (std::size_t n = 0; n <= 3; ++n) {
    MulticatPtr m = ind_multicat(inst::numbered("X", n), 3);
    std::size_t expected = 0, p = n;
    for (std::size_t k = 0; k <= 3; ++k, p *= n) expected += p;
    EXPECT_EQ(m->c1.edges.size(), expected);
    EXPECT_TRUE(check_fc_multicat(*m).passed()) << n;
  }
  EXPECT_EQ(ind_multicat(inst::numbered("X", 2), 3).get(), ind_multicat(inst::numbered("X", 2), 3).get());
}

TEST(Ind, CompositionFlattens) {
  FiniteSet x = inst::numbered("X", 2);
  MulticatPtr m = ind_multicat(x, 3);
  Index f = find_edge(*m, tup({leaf("x0"), leaf("x1"), leaf("x0")}));
  Index g1 = find_edge(*m, tup({leaf("x0"), leaf("x0"), leaf("x1")}));
  Index g2 = find_edge(*m, tup({leaf("x1"), leaf("x0")}));
  auto k = m->comp(f, Path{0, {g1, g2}});
  ASSERT_TRUE(k);
  EXPECT_EQ(m->c1.edges[*k], tup({leaf("x0"), leaf("x0"), leaf("x1"), leaf("x0")}));
}

TEST(MV, LawsHoldOverEachV) {
  for (const MonoidalPtr& v : {inst::v_bool(), inst::v_z2(), inst::v_twisted(), inst::v_meet(), inst::v_graded()}) {
    MulticatPtr m = build_MV(v, 3);
    CheckReport r = check_fc_multicat(*m);
    EXPECT_TRUE(r.passed()) << r.failing().size();
    EXPECT_GT(r.find("multicat.associativity")->checked, 0u);
  }
}

TEST(MV, ArrowCountOverZ2) {
  // One object: lists of length 0..3, two arrows out of each tensor.
  EXPECT_EQ(build_MV(inst::v_z2(), 3)->c1.edges.size(), 8u);
}

TEST(MV, TwistedUnitorsEnterComposites) {
  MonoidalPtr v = inst::v_twisted();
  MulticatPtr m = build_MV(v, 3);
  // ((), e) composed into a unary e: the coherence from I to I is the identity.
  Index f = find_edge(*m, mv_arrow(*v, 1, "e"));
  Index nullary = find_edge(*m, mv_arrow(*v, 0, "e"));
  auto k = m->comp(f, Path{0, {nullary}});
  ASSERT_TRUE(k);
  EXPECT_EQ(m->c1.edges[*k], mv_arrow(*v, 0, "e"));
  // A binary arrow fed one unary and one nullary: kappa is a unitor, so g appears.
  Index bin = find_edge(*m, mv_arrow(*v, 2, "e"));
  Index unary = find_edge(*m, mv_arrow(*v, 1, "e"));
  auto k2 = m->comp(bin, Path{0, {unary, nullary}});
  ASSERT_TRUE(k2);
  EXPECT_EQ(m->c1.edges[*k2], mv_arrow(*v, 1, "g"));
}

TEST(MV, AssociativityMutationIsCaught) {
  MonoidalPtr v = inst::v_z2();
  MulticatPtr m = build_MV(v, 3);
  Atom cfg = tup({mv_arrow(*v, 2, "e"),
                  tup({m->c1.vertices[0], tup({mv_arrow(*v, 1, "g"), mv_arrow(*v, 1, "e")})})});
  MulticatPtr bad = with_comp_override(m, cfg, mv_arrow(*v, 2, "e"));
  CheckReport r = check_fc_multicat(*bad, CheckOptions{0});
  EXPECT_TRUE(r.find("multicat.typing")->passed());
  EXPECT_TRUE(r.find("multicat.left_unit")->passed());
  EXPECT_TRUE(r.find("multicat.right_unit")->passed());
  EXPECT_FALSE(r.find("multicat.associativity")->passed());
  EXPECT_TRUE(check_fc_multicat(*m).passed());
}

TEST(MV, UnitMutationIsCaught) {
  MonoidalPtr v = inst::v_z2();
  MulticatPtr m = build_MV(v, 3);
  MulticatPtr bad = with_id_override(m, v->base().obj_atom(0), mv_arrow(*v, 1, "g"));
  CheckReport r = check_fc_multicat(*bad);
  EXPECT_TRUE(r.find("multicat.typing")->passed());
  EXPECT_FALSE(r.find("multicat.left_unit")->passed());
  EXPECT_FALSE(r.find("multicat.right_unit")->passed());
}

TEST(MV, OverridesAreValidated) {
  MonoidalPtr v = inst::v_z2();
  MulticatPtr m = build_MV(v, 3);
  Atom wrong = tup({mv_arrow(*v, 2, "e"), tup({m->c1.vertices[0], tup({mv_arrow(*v, 1, "g")})})});
  EXPECT_THROW(with_comp_override(m, wrong, mv_arrow(*v, 1, "e")), MalformedData);
  Atom too_long = tup({mv_arrow(*v, 2, "e"),
                       tup({m->c1.vertices[0], tup({mv_arrow(*v, 2, "g"), mv_arrow(*v, 2, "e")})})});
  EXPECT_THROW(with_comp_override(m, too_long, mv_arrow(*v, 1, "e")), BoundExceeded);
}

TEST(ToMulticat, CompositesMatchHandComputation) {
  // Oracle over the Z/2 coboundary: the n-ary composite is the sum of t over
  // the interior of the list, and t(x0) for a singleton.
  EnrichedCategory x = inst::z2_coboundary();
  MulticatMap m = to_multicat(x, 3);
  EXPECT_TRUE(check_multicat_map(m).passed());
  const FCMulticategory& s = *m.source;
  const FCMulticategory& t = *m.target;
  for (Index a = 0; a < s.c1.edges.size(); ++a) {
    const auto& parts = s.c1.edges[a].parts();
    Index expect = 0;
    if (parts.size() == 1) {
      expect = inst::coboundary_t(x.carrier().at(parts[0]));
    } else {
      for (std::size_t i = 1; i + 1 < parts.size(); ++i) expect ^= inst::coboundary_t(x.carrier().at(parts[i]));
    }
    const Atom& image = t.c1.edges[m.e1[a]];
    EXPECT_EQ(image[0].arity(), parts.size() - 1);
    EXPECT_EQ(x.base().base().arr_index(image[1]), expect) << s.c1.edges[a].str();
  }
}

TEST(ToMulticat, ChainIsThinAndWellFormed) {
  MulticatMap m = to_multicat(inst::chain(3), 3);
  CheckReport r = check_multicat_map(m);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.find("multicat_map.composition")->checked, 0u);
}

TEST(RoundTrip, EnrichedCategories) {
  for (const EnrichedCategory& x :
       {inst::chain(2), inst::chain(3), inst::z2_coboundary(), inst::graded_pair(), inst::graded_alternating(),
        indiscrete_enriched(inst::numbered("X", 2), inst::v_twisted())}) {
    ASSERT_TRUE(check_enriched_category(x).passed());
    EXPECT_TRUE(check_multicat_map(to_multicat(x, 3)).passed());
    CheckReport r = multicat_roundtrip(x, 3);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.find("roundtrip.enriched")->checked > 0);
    EXPECT_TRUE(r.find("roundtrip.multicat")->checked > 0);
  }
}

TEST(RoundTrip, FromMulticatRejectsBadInput) {
  EnrichedCategory x = inst::chain(2);
  EXPECT_THROW(from_multicat(to_multicat(x, 1)), InvalidMulticatData);
  MulticatMap m = to_multicat(x, 2);
  std::swap(m.e1.front(), m.e1.back());
  EXPECT_THROW(from_multicat(m), InvalidMulticatData);
  MulticatMap wrong{m.target ? build_MV(inst::v_bool(), 2) : nullptr, m.target, m.v0, m.e0, m.v1, m.e1};
  EXPECT_THROW(from_multicat(wrong), InvalidMulticatData);
}

TEST(RoundTrip, Functors) {
  EnrichedCategory x = inst::z2_coboundary();
  for (const EnrichedFunctor& f : {inst::z2_swap(x), identity_enriched_functor(x),
                                  identity_enriched_functor(inst::chain(3))}) {
    ASSERT_TRUE(check_enriched_functor(f).passed());
    CheckReport r = multicat_functor_roundtrip(f, 3);
    EXPECT_TRUE(r.passed());
    EXPECT_NE(r.find("multicat_functor.axiom"), nullptr);
  }
}

TEST(MulticatFunctor, MutationFailsTheAxiom) {
  EnrichedCategory x = inst::z2_coboundary();
  MulticatFunctor mf = to_multicat_functor(inst::z2_swap(x), 3);
  mf.f1[0] ^= 1;
  CheckReport r = check_multicat_functor(mf);
  EXPECT_TRUE(r.find("multicat_functor.typing")->passed());
  EXPECT_FALSE(r.find("multicat_functor.axiom")->passed());
  EXPECT_FALSE(check_enriched_functor(from_multicat_functor(mf)).passed());
}
