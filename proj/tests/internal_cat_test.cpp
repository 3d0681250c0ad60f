#include <gtest/gtest.h>

#include <random>

#include "icat/internal_cat.hpp"
#include "support/instances.hpp"

using namespace icat;
using inst::set_of;

namespace {

constexpr std::size_t kIterations = 60;

// The thin category of a preorder on {x0..x(n-1)} given by a relation table.
InternalCategory preorder_category(std::size_t n, const std::vector<bool>& rel) {
  FiniteSet obj = inst::numbered("P", n);
  std::vector<Atom> arrs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j]) arrs.push_back(tup({obj[i], obj[j]}));
  FiniteSet arr("P1", arrs);
  auto src = FiniteMap::tabulate(arr, obj, [&](std::size_t f) { return obj.at(arr[f][0]); });
  auto tgt = FiniteMap::tabulate(arr, obj, [&](std::size_t f) { return obj.at(arr[f][1]); });
  auto ids = FiniteMap::tabulate(obj, arr, [&](std::size_t o) { return arr.at(tup({obj[o], obj[o]})); });
  return InternalCategory::build(obj, arr, src, tgt, ids, [&](Index g, Index f) {
    return arr.at(tup({arr[f][0], arr[g][1]}));
  });
}

// Random preorder: random relation closed reflexively and transitively.
std::vector<bool> random_preorder(std::mt19937& rng, std::size_t n) {
  std::vector<bool> r(n * n);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t i = 0; i < n * n; ++i) r[i] = coin(rng);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i * n + k] && r[k * n + j]) r[i * n + j] = true;
  return r;
}

// Functor between thin categories induced by an object map; throws if not monotone.
InternalFunctor thin_functor(const InternalCategory& a, const InternalCategory& b, const std::vector<Index>& f0) {
  FiniteMap m0(a.objects(), b.objects(), f0);
  auto m1 = FiniteMap::tabulate(a.arrows(), b.arrows(), [&](std::size_t f) {
    auto h = b.hom(f0[a.src(f)], f0[a.tgt(f)]);
    if (h.empty()) throw DomainMismatch("not monotone");
    return h[0];
  });
  return InternalFunctor(a, b, m0, m1);
}

}  // namespace

TEST(InternalCategory, BoolCategoryPasses) {
  InternalCategory c = inst::bool_category();
  CheckReport r = check_category(c);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(c.composable_pair_count(), 4u);
  EXPECT_EQ(c.composition().dom().size(), 4u);
}

TEST(InternalCategory, ExplicitCompositionRoundTrip) {
  InternalCategory c = inst::bool_category();
  InternalCategory d(c.objects(), c.arrows(), c.source(), c.target(), c.identity(), c.composition());
  EXPECT_EQ(c, d);
  FiniteSet wrong = product(c.arrows(), c.arrows()).apex;
  EXPECT_THROW(InternalCategory(c.objects(), c.arrows(), c.source(), c.target(), c.identity(),
                                FiniteMap::tabulate(wrong, c.arrows(), [](std::size_t) { return 0; })),
               MalformedData);
}

TEST(InternalCategory, DeloopedMeetMonoidPasses) {
  EXPECT_TRUE(check_category(inst::meet_category()).passed());
  EXPECT_TRUE(check_category(inst::z2_category()).passed());
}

TEST(InternalCategory, MutatedUnitFailsLeftUnitOnly) {
  FiniteSet m = set_of("M", {"e", "s"});
  // e . s should be s; send it to e instead.
  InternalCategory c = delooping(m, [](Index g, Index f) -> Index { return (g == 0 && f == 1) ? 0 : (g | f); }, leaf("e"));
  CheckReport r = check_category(c);
  EXPECT_EQ(r.failing(), std::vector<std::string>{"category.left_unit"});
  ASSERT_EQ(r.find("category.left_unit")->witnesses.size(), 1u);
  EXPECT_EQ(r.find("category.left_unit")->witnesses[0], Witness{leaf("s")});
}

TEST(InternalCategory, NonAssociativeCompositionIsReported) {
  // Z/3 elements with a "composition" that is subtraction: unit laws hold on one
  // side only and associativity breaks.
  FiniteSet m = set_of("Z3", {"0", "1", "2"});
  InternalCategory c = delooping(m, [](Index g, Index f) -> Index { return (g + 3 - f) % 3; }, leaf("0"));
  CheckReport r = check_category(c);
  EXPECT_FALSE(r.find("category.associativity")->passed());
  EXPECT_FALSE(r.find("category.right_unit")->passed() && r.find("category.left_unit")->passed());
}

TEST(InternalCategory, OppositeIsAnInvolution) {
  for (auto c : {inst::bool_category(), inst::meet_category(), indiscrete(set_of("S", {"a", "b", "c"}))}) {
    EXPECT_TRUE(check_category(opposite(c)).passed());
    EXPECT_EQ(opposite(opposite(c)), c);
  }
}

TEST(InternalCategory, DiscreteIndiscreteAndTerminal) {
  FiniteSet s = set_of("S", {"a", "b", "c"});
  EXPECT_TRUE(check_category(discrete(s)).passed());
  InternalCategory ind = indiscrete(s);
  EXPECT_TRUE(check_category(ind).passed());
  EXPECT_EQ(ind.arrows().size(), 9u);
  EXPECT_EQ(ind.hom(0, 2).size(), 1u);
  EXPECT_TRUE(check_category(terminal_cat()).passed());
  EXPECT_TRUE(check_category(discrete(FiniteSet("E", {}))).passed());
}

TEST(InternalCategory, ProductWithTerminalIsIsomorphic) {
  InternalCategory c = inst::bool_category();
  InternalCategory p = product_cat(c, terminal_cat());
  EXPECT_TRUE(check_category(p).passed());
  EXPECT_EQ(p.objects().size(), c.objects().size());
  EXPECT_EQ(p.arrows().size(), c.arrows().size());
  // The projection is a functor with an inverse.
  LimitCone o = product(c.objects(), terminal());
  LimitCone a = product(c.arrows(), terminal());
  InternalFunctor pi(p, c, o.legs[0], a.legs[0]);
  InternalFunctor back(c, p, o.pair(identity_map(c.objects()), bang(c.objects())),
                       a.pair(identity_map(c.arrows()), bang(c.arrows())));
  EXPECT_TRUE(check_functor(pi).passed());
  EXPECT_TRUE(check_functor(back).passed());
  EXPECT_EQ(compose_functors(back, pi), identity_functor(c));
  EXPECT_EQ(compose_functors(pi, back), identity_functor(p));
}

TEST(InternalFunctor, RedirectedArrowFailsTypingWithWitness) {
  InternalCategory c = inst::bool_category();
  // identity functor except u |-> id1
  InternalFunctor f(c, c, identity_map(c.objects()), FiniteMap(c.arrows(), c.arrows(), {0, 1, 1}));
  CheckReport r = check_functor(f);
  EXPECT_EQ(r.failing(), std::vector<std::string>{"functor.typing"});
  EXPECT_EQ(r.find("functor.typing")->witnesses[0], Witness{leaf("u")});
}

TEST(InternalFunctor, EndpointMismatchOnComposition) {
  InternalFunctor f = identity_functor(inst::bool_category());
  InternalFunctor g = identity_functor(inst::meet_category());
  EXPECT_THROW(compose_functors(f, g), EndpointMismatch);
}

TEST(InternalNat, VerticalCompositionOnDeloopedMonoidIsProduct) {
  InternalCategory c = inst::z2_category();
  InternalFunctor id = identity_functor(c);
  FiniteSet one = c.objects();
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y) {
      InternalNat a(id, id, FiniteMap(one, c.arrows(), {x}));
      InternalNat b(id, id, FiniteMap(one, c.arrows(), {y}));
      EXPECT_TRUE(check_nat(a).passed());
      EXPECT_EQ(vcompose_nats(a, b).at(0), x ^ y);
    }
}

TEST(InternalNat, NonNaturalComponentFailsWithWitness) {
  InternalCategory c = inst::bool_category();
  InternalFunctor id = identity_functor(c);
  // F = constant at 0 (all arrows to id0) ; component F -> Id given by 0 -> 0 (id0), 0 -> 1 (u)
  InternalFunctor k0(c, c, FiniteMap(c.objects(), c.objects(), {0, 0}), FiniteMap(c.arrows(), c.arrows(), {0, 0, 0}));
  InternalNat good(k0, id, FiniteMap(c.objects(), c.arrows(), {0, 2}));
  EXPECT_TRUE(check_nat(good).passed());
  InternalFunctor k1(c, c, FiniteMap(c.objects(), c.objects(), {1, 1}), FiniteMap(c.arrows(), c.arrows(), {1, 1, 1}));
  // Id => K1 needs u at 0; id0 there is mistyped.
  InternalNat bad(id, k1, FiniteMap(c.objects(), c.arrows(), {0, 1}));
  CheckReport r = check_nat(bad);
  EXPECT_EQ(r.failing(), std::vector<std::string>{"nat.typing"});
  EXPECT_EQ(r.find("nat.typing")->witnesses[0], Witness{leaf("0")});
}

// ===========================================================================
// Property tests over random preorders
// ===========================================================================

TEST(InternalProperty, PreorderCategoriesPassAndFunctorLawsHold) {
  std::mt19937 rng(7);
  for (std::size_t it = 0; it < kIterations; ++it) {
    std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    InternalCategory a = preorder_category(n, random_preorder(rng, n));
    InternalCategory b = preorder_category(m, random_preorder(rng, m));
    ASSERT_TRUE(check_category(a).passed()) << "Failed for iteration " << it;
    EXPECT_EQ(opposite(opposite(a)), a);
    std::vector<Index> f0(n);
    for (auto& x : f0) x = rng() % m;
    try {
      InternalFunctor f = thin_functor(a, b, f0);
      EXPECT_TRUE(check_functor(f).passed());
      EXPECT_EQ(compose_functors(identity_functor(a), f), f);
      EXPECT_EQ(compose_functors(f, identity_functor(b)), f);
      EXPECT_TRUE(check_nat(identity_nat(f)).passed());
    } catch (const DomainMismatch&) {
      // not monotone
    }
  }
}

TEST(InternalProperty, InterchangeLaw) {
  // a, a2 : F => G => H : A -> B and b, b2 : F' => G' => H' : B -> C, all on
  // delooped Z/2 where every endo-assignment is natural.
  InternalCategory z = inst::z2_category();
  InternalFunctor id = identity_functor(z);
  FiniteSet one = z.objects();
  for (Index x = 0; x < 2; ++x)
    for (Index y = 0; y < 2; ++y)
      for (Index u = 0; u < 2; ++u)
        for (Index w = 0; w < 2; ++w) {
          InternalNat a(id, id, FiniteMap(one, z.arrows(), {x}));
          InternalNat a2(id, id, FiniteMap(one, z.arrows(), {y}));
          InternalNat b(id, id, FiniteMap(one, z.arrows(), {u}));
          InternalNat b2(id, id, FiniteMap(one, z.arrows(), {w}));
          InternalNat lhs = hcompose_nats(vcompose_nats(a, a2), vcompose_nats(b, b2));
          InternalNat rhs = vcompose_nats(hcompose_nats(a, b), hcompose_nats(a2, b2));
          EXPECT_EQ(lhs, rhs);
        }
  // and on preorders with non-identity functors
  std::mt19937 rng(11);
  for (std::size_t it = 0; it < kIterations; ++it) {
    std::size_t n = 2 + rng() % 2;
    InternalCategory a = preorder_category(n, random_preorder(rng, n));
    std::vector<bool> full(9, true);
    InternalCategory b = preorder_category(3, full);
    auto random_f = [&] {
      std::vector<Index> f0(n);
      for (auto& v : f0) v = rng() % 3;
      return thin_functor(a, b, f0);
    };
    auto connect = [&](const InternalFunctor& f, const InternalFunctor& g) {
      return InternalNat(f, g, FiniteMap::tabulate(a.objects(), b.arrows(), [&](std::size_t o) {
                           return b.hom(f.obj(o), g.obj(o))[0];
                         }));
    };
    InternalFunctor F = random_f(), G = random_f(), H = random_f();
    InternalFunctor K = identity_functor(b);
    InternalNat a1 = connect(F, G), a2 = connect(G, H);
    InternalNat k = identity_nat(K);
    EXPECT_EQ(hcompose_nats(vcompose_nats(a1, a2), vcompose_nats(k, k)),
              vcompose_nats(hcompose_nats(a1, k), hcompose_nats(a2, k)));
    EXPECT_TRUE(check_nat(hwhisker(a1, identity_functor(a), Side::Pre)).passed());
  }
}

TEST(InternalProperty, DiscreteUnderlyingIndiscreteTriangleIdentities) {
  for (std::size_t n = 0; n <= 3; ++n) {
    FiniteSet s = inst::numbered("S", n);
    InternalCategory dis = discrete(s);
    // counit Dis U C -> C for C = indiscrete(s): identity on objects, o |-> id o.
    InternalCategory c = indiscrete(s);
    InternalFunctor eps(discrete(c.objects()), c, identity_map(c.objects()), c.identity());
    EXPECT_TRUE(check_functor(eps).passed());
    // eps_{Dis S} . Dis(eta_S) = id with eta_S = id
    InternalFunctor eps_dis(discrete(dis.objects()), dis, identity_map(dis.objects()), dis.identity());
    EXPECT_EQ(eps_dis, identity_functor(dis));
    // unit of U -| Ind: C -> Ind(U C), f |-> <src f, tgt f>
    InternalCategory ind = indiscrete(c.objects());
    InternalFunctor eta(c, ind, identity_map(c.objects()), pair_map(c.source(), c.target()));
    EXPECT_TRUE(check_functor(eta).passed());
    // Ind(counit) . eta_{Ind S} = id on Ind S
    InternalCategory ind_s = indiscrete(s);
    InternalFunctor eta_ind(ind_s, indiscrete(ind_s.objects()), identity_map(s), pair_map(ind_s.source(), ind_s.target()));
    EXPECT_EQ(eta_ind.f1(), identity_map(ind_s.arrows()));
  }
}
