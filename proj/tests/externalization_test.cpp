#include <gtest/gtest.h>

#include <map>
#include <set>

#include "icat/externalization.hpp"
#include "support/families.hpp"
#include "support/instances.hpp"

using namespace icat;

namespace {

EnrichedCategory chain3() {
  std::vector<bool> rel{true, true, true, false, true, true, false, false, true};
  return enriched_from_hom_thin(inst::v_bool(), inst::numbered("X", 3),
                                [&](Index i, Index j) -> Index { return rel[i * 3 + j] ? 1 : 0; });
}

Index theta(Index x) { return x == 0 ? 1 : 0; }

EnrichedCategory z2_coboundary(const std::function<Index(Index, Index, Index)>& patch = nullptr,
                               const std::function<Index(Index)>& ident_patch = nullptr) {
  return EnrichedCategory::build(
      inst::v_z2(), inst::set_of("X", {"a", "b"}), [](Index, Index) { return 0; },
      [&](Index a, Index b, Index c) { return patch ? patch(a, b, c) : theta(b); },
      [&](Index a) { return ident_patch ? ident_patch(a) : theta(a); });
}

// Failing families with the checker prefix stripped, plus their witnesses.
std::map<std::string, std::vector<Witness>> failures(const CheckReport& r, const std::string& prefix) {
  std::map<std::string, std::vector<Witness>> out;
  for (const auto& a : r.axioms)
    if (!a.passed()) out[a.id.substr(prefix.size())] = a.witnesses;
  return out;
}

}  // namespace

TEST(Fiber, SizesAndEdgeIndexes) {
  InternalCategory b = inst::bool_category();
  FiberPtr f2 = fiber(b, inst::numbered("I", 2));
  EXPECT_EQ(f2->category().objects().size(), 4u);
  EXPECT_EQ(f2->category().arrows().size(), 9u);
  EXPECT_TRUE(check_category(f2->category()).passed());
  FiberPtr f0 = fiber(b, FiniteSet("0", {}));
  EXPECT_EQ(f0->category().objects().size(), 1u);
  EXPECT_EQ(f0->category().arrows().size(), 1u);
  FiberPtr f1 = fiber(b, terminal());
  EXPECT_EQ(f1->category().arrows().size(), 3u);
  EXPECT_EQ(fiber(b, inst::numbered("I", 2)).get(), f2.get());
  Family fam{1, 0};
  EXPECT_EQ(f2->obj_family(f2->obj(fam)), fam);
}

TEST(Fiber, ReindexingIsStrictlyFunctorial) {
  InternalCategory b = inst::bool_category();
  FiniteSet two = inst::numbered("I", 2), three = inst::numbered("J", 3);
  std::size_t runs = 0;
  for_each_map(two, three, [&](const FiniteMap& u) {
    for_each_map(three, two, [&](const FiniteMap& w) {
      EXPECT_TRUE(check_reindex_functoriality(b, u, w).passed());
      ++runs;
    });
  });
  EXPECT_EQ(runs, 72u);
}

TEST(Fiber, PastingAgreesWithPrecomposition) {
  InternalCategory b = inst::bool_category();
  FiniteSet two = inst::numbered("I", 2), three = inst::numbered("J", 3);
  FiberPtr f3 = fiber(b, three);
  for_each_map(two, three, [&](const FiniteMap& u) {
    InternalFunctor r = reindex(u, *f3);
    FiberPtr f2 = fiber(b, two);
    for (Index s = 0; s < f3->category().arrows().size(); ++s)
      EXPECT_EQ(f2->arr_family(r.arr(s)), precompose(f3->arr_family(s), u));
    FiniteMap x0(three, b.objects(), {0, 0, 1}), x1(three, b.objects(), {1, 0, 1});
    PastingIso p = pasting_iso(u, b, x0, x1);
    ASSERT_EQ(p.pulled.apex.size(), p.reindexed.apex.size());
    std::set<Index> image(p.iso.table().begin(), p.iso.table().end());
    EXPECT_EQ(image.size(), p.iso.dom().size());
  });
}

TEST(FiberMonoidal, PointwiseStructureAndStrictReindexing) {
  for (const MonoidalPtr& v : {inst::v_bool(), inst::v_twisted(), inst::v_graded()}) {
    FiniteSet two = inst::numbered("I", 2);
    MonoidalPtr w = fiber_monoidal(v, two);
    EXPECT_EQ(w.get(), fiber_monoidal(v, two).get());
    EXPECT_TRUE(check_monoidal(*w).passed());
    for (const FiniteSet& d : {FiniteSet("0", {}), terminal(), two}) {
      for_each_map(d, two, [&](const FiniteMap& u) {
        EXPECT_TRUE(check_reindex_strict(v, u).passed());
        EXPECT_TRUE(check_monoidal_functor(reindex_monoidal(v, u)).passed());
      });
    }
  }
}

TEST(FiberMonoidal, TwistedUnitorsArePointwise) {
  MonoidalPtr w = fiber_monoidal(inst::v_twisted(), inst::numbered("I", 2));
  FiberPtr f = fiber(inst::z2_category(), inst::numbered("I", 2));
  EXPECT_EQ(f->arr_family(w->lunit(w->unit())), (Family{1, 1}));
}

TEST(FiberFunctor, PreservesComposition) {
  InternalCategory b = inst::bool_category();
  InternalFunctor flip(b, b, FiniteMap(b.objects(), b.objects(), {1, 1}), FiniteMap(b.arrows(), b.arrows(), {1, 1, 1}));
  ASSERT_TRUE(check_functor(flip).passed());
  FiniteSet two = inst::numbered("I", 2);
  EXPECT_EQ(fiber_functor(compose_functors(flip, flip), two),
            compose_functors(fiber_functor(flip, two), fiber_functor(flip, two)));
  EXPECT_TRUE(check_functor(fiber_functor(flip, two)).passed());
  EXPECT_TRUE(check_nat(fiber_nat(identity_nat(flip), two)).passed());
}

// Independent count of the total category over all maps between {1, 2}.
TEST(Grothendieck, TotalCountsMatchOracle) {
  InternalCategory b = inst::bool_category();
  FiniteSet one = terminal(), two = inst::numbered("T", 2);
  std::vector<FiniteMap> conn;
  for (const FiniteSet* s : {&one, &two})
    for (const FiniteSet* t : {&one, &two}) for_each_map(*s, *t, [&](const FiniteMap& u) { conn.push_back(u); });
  TotalCategory t = grothendieck(b, {one, two}, conn);

  std::size_t objs = 0, arrs = 0;
  for (std::size_t n : {1u, 2u}) objs += std::size_t(1) << n;
  for (std::size_t m : {1u, 2u})
    for (std::size_t n : {1u, 2u})
      for_each_table(m, n, [&](const std::vector<Index>& u) {
        for_each_table(m, 2, [&](const std::vector<Index>& x) {
          for_each_table(n, 2, [&](const std::vector<Index>& y) {
            bool ok = true;
            for (std::size_t i = 0; i < m; ++i) ok = ok && x[i] <= y[u[i]];
            arrs += ok;
          });
        });
      });
  EXPECT_EQ(t.category().objects().size(), objs);
  EXPECT_EQ(t.category().arrows().size(), arrs);
  EXPECT_TRUE(check_grothendieck(t).passed());
}

TEST(Grothendieck, MalformedFamilies) {
  InternalCategory b = inst::bool_category();
  FiniteSet two = inst::numbered("T", 2);
  EXPECT_THROW(grothendieck(b, {}, {}), MalformedFamily);
  EXPECT_THROW(grothendieck(b, {two, two.renamed("U")}, {}), MalformedFamily);
  EXPECT_THROW(grothendieck(b, {two}, {bang(two)}), MalformedFamily);
  EXPECT_THROW(monoidal_grothendieck(inst::v_bool(), {two}, {}), FamilyNotProductClosed);
}

TEST(Grothendieck, ProductFamilyOverBool) {
  auto fam = inst::product_family();
  MonoidalTotal mt = monoidal_grothendieck(inst::v_bool(), fam.members, fam.connecting);
  CheckReport r = check_monoidal_grothendieck(mt);
  EXPECT_TRUE(r.passed()) << ::testing::PrintToString(r.failing());
  for (const char* id : {"grothendieck.cartesian", "grothendieck.tensor.lifts", "grothendieck.tensor.diagonal"})
    EXPECT_GT(r.find(id)->checked, 0u) << id;
}

TEST(SmallCoincidence, AgreesWithEnrichedChecker) {
  std::vector<EnrichedCategory> cases{
      chain3(), z2_coboundary(), indiscrete_enriched(inst::numbered("X", 2), inst::v_twisted()),
      z2_coboundary([](Index a, Index b, Index c) -> Index { return (a == 0 && b == 1 && c == 0) ? 1 : theta(b); }),
      z2_coboundary(nullptr, [](Index) -> Index { return 0; }),
      enriched_from_hom_thin(inst::v_bool(), inst::numbered("X", 3),
                             [](Index i, Index j) -> Index { return (j == i || j == i + 1) ? 1 : 0; })};
  for (const auto& x : cases) {
    auto small = failures(small_coincidence_check(x), "small.");
    auto enriched = failures(check_enriched_category(x), "enriched.");
    EXPECT_EQ(small, enriched);
  }
  EXPECT_FALSE(small_coincidence_check(cases[3]).passed());
  EXPECT_FALSE(small_coincidence_check(cases[5]).passed());
}

TEST(SmallCoincidence, FunctorsAndNats) {
  EnrichedCategory x = z2_coboundary();
  EnrichedFunctor good = EnrichedFunctor::build(x, x, [](Index i) { return 1 - i; }, [](Index, Index) -> Index { return 1; });
  EnrichedFunctor bad = EnrichedFunctor::build(
      x, x, [](Index i) { return i; }, [](Index a, Index b) -> Index { return (a == 0 && b == 1) ? 1 : 0; });
  for (const auto& f : {good, bad})
    EXPECT_EQ(failures(small_coincidence_check(f), "small_functor."), failures(check_enriched_functor(f), "enriched_functor."));
  EnrichedFunctor id = identity_enriched_functor(x);
  EnrichedNat one = identity_enriched_nat(id);
  EnrichedNat off = make_enriched_nat(id, id, [&](Index a) { return a == 0 ? x.ident(0) ^ 1 : x.ident(1); });
  for (const auto& n : {one, off})
    EXPECT_EQ(failures(small_coincidence_check(n), "small_nat."), failures(check_enriched_nat(n), "enriched_nat."));
}

TEST(EnrichedFiber, FibersAndReindexing) {
  for (const EnrichedCategory& x : {chain3(), z2_coboundary()}) {
    for (std::size_t n = 0; n <= 2; ++n) {
      FiniteSet i = inst::numbered("I", n);
      EnrichedCategory xi = enriched_fiber(x, i);
      EXPECT_EQ(xi.n(), static_cast<Index>(count_maps(n, x.n())));
      EXPECT_TRUE(check_enriched_category(xi).passed());
      for_each_map(i, inst::numbered("J", 2), [&](const FiniteMap& f) {
        EXPECT_TRUE(check_enriched_functor(enriched_reindex(x, f)).passed());
      });
    }
  }
  EnrichedFunctor id = identity_enriched_functor(z2_coboundary());
  EXPECT_EQ(enriched_fiber_functor(id, inst::numbered("I", 2)),
            identity_enriched_functor(enriched_fiber(z2_coboundary(), inst::numbered("I", 2))));
  EXPECT_TRUE(check_enriched_nat(enriched_fiber_nat(identity_enriched_nat(id), inst::numbered("I", 2))).passed());
}

TEST(Bar, RoundTripsExternalizedFunctors) {
  EnrichedCategory x = z2_coboundary();
  EnrichedFunctor swap = EnrichedFunctor::build(x, x, [](Index i) { return 1 - i; }, [](Index, Index) -> Index { return 1; });
  for (const auto& f : {swap, identity_enriched_functor(x)}) {
    EnrichedFunctor back = bar_functor(f.dom(), f.cod(), externalize_functor(f));
    EXPECT_EQ(back, f);
  }
  FiberFunctorData d = externalize_functor(swap);
  EnrichedFunctor sb = bar_functor(x, x, d);
  EnrichedNat one = bar_nat(sb, sb, enriched_fiber_nat(identity_enriched_nat(swap), x.carrier()));
  EXPECT_EQ(one, identity_enriched_nat(swap));
  EXPECT_THROW(externalize_functor(identity_enriched_functor(chain3())), BoundExceeded);
}

// Ind{a, b} over Z/2 with the fiber functor at X x X twisted by a coboundary;
// the comparisons absorb the twist so the read-back functor is trivial.
TEST(Bar, ComparisonsConjugateTheHomComponent) {
  auto v = inst::v_z2();
  EnrichedCategory x = indiscrete_enriched(inst::set_of("X", {"a", "b"}), v);
  LimitCone xx = product(x.carrier(), x.carrier());
  EnrichedCategory fxx = enriched_fiber(x, xx.apex);
  FiberPtr vxx = fiber(v->base(), xx.apex);
  auto decode = [&](Index o) {
    Family f;
    for (const Atom& p : fxx.atom(o).parts()) f.push_back(x.carrier().at(p));
    return f;
  };
  EnrichedFunctor g = EnrichedFunctor::build(
      fxx, fxx, [](Index o) { return o; },
      [&](Index p, Index q) {
        Family fp = decode(p), fq = decode(q), r(fp.size());
        for (std::size_t t = 0; t < r.size(); ++t) r[t] = theta(fq[t]) ^ theta(fp[t]);
        return vxx->arr(r);
      });
  ASSERT_TRUE(check_enriched_functor(g).passed());
  FiberFunctorData d{identity_enriched_functor(enriched_fiber(x, x.carrier())), g,
                     FiniteMap::tabulate(xx.apex, v->base().arrows(), [&](std::size_t t) { return theta(xx.legs[0][t]); }),
                     FiniteMap::tabulate(xx.apex, v->base().arrows(), [&](std::size_t t) { return theta(xx.legs[1][t]); })};
  EnrichedFunctor f = bar_functor(x, x, d);
  EXPECT_EQ(f, identity_enriched_functor(x));
  Index ab = fxx.carrier().at(family_atom(x.carrier(), xx.legs[0].table()));
  Index ba = fxx.carrier().at(family_atom(x.carrier(), xx.legs[1].table()));
  Family naive = vxx->arr_family(g.hom(ab, ba));
  std::size_t differing = 0;
  for (std::size_t t = 0; t < naive.size(); ++t) differing += naive[t] != 0;
  EXPECT_EQ(differing, 2u);

  FiberFunctorData bad = d;
  bad.phi1 = FiniteMap(xx.apex, inst::numbered("W", 1), Family(4, 0));
  EXPECT_THROW(bar_functor(x, x, bad), IncoherentFiberData);
  FiberFunctorData wrong = d;
  wrong.at_x = identity_enriched_functor(enriched_fiber(x, terminal()));
  EXPECT_THROW(bar_functor(x, x, wrong), IncoherentFiberData);
}

TEST(UnderlyingCommute, SmallIndexSets) {
  for (const EnrichedCategory& x :
       {chain3(), z2_coboundary(), indiscrete_enriched(inst::numbered("X", 2), inst::v_twisted())}) {
    for (std::size_t n = 0; n <= 2; ++n) {
      CheckReport r = underlying_commute_check(x, inst::numbered("I", n));
      EXPECT_TRUE(r.passed()) << n << ::testing::PrintToString(r.failing());
      EXPECT_GT(r.find("underlying.arrows")->checked, 0u);
    }
  }
}
