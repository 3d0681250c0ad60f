// Acceptance run: one line per criterion, exit status 0 when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "icat/frontend/commands.hpp"
#include "support/corpus.hpp"
#include "support/families.hpp"
#include "support/graphs.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

using namespace icat;
using namespace icat::frontend;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

struct Loaded {
  std::string file;
  Workspace ws;
};

std::vector<Loaded> load_corpus() {
  std::vector<Loaded> out;
  for (const auto& p : corpus::instances()) out.push_back({p.filename().string(), corpus::load(p, 3)});
  return out;
}

template <class T>
std::vector<std::pair<std::string, const T*>> all_of(const std::vector<Loaded>& corpus, const std::string& kind) {
  std::vector<std::pair<std::string, const T*>> out;
  for (const auto& l : corpus)
    for (const Entry& e : l.ws.entries())
      if (e.kind == kind) out.push_back({l.file + ":" + e.name, &std::get<T>(e.value)});
  return out;
}

// Failing axioms with the checker prefix stripped, keyed to their witnesses.
std::map<std::string, std::vector<Witness>> failures(const CheckReport& r, const std::string& prefix) {
  std::map<std::string, std::vector<Witness>> out;
  for (const auto& a : r.axioms)
    if (!a.passed()) out[a.id.substr(prefix.size())] = a.witnesses;
  return out;
}

std::vector<FiniteSet> index_sets() { return {inst::numbered("I", 0, "i"), inst::numbered("I", 1, "i"), inst::numbered("I", 2, "i")}; }

// ---------------------------------------------------------------------------

Outcome preorders() {
  Outcome o;
  std::size_t tables = 0;
  double n3 = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    FiniteSet x = inst::numbered("X", n);
    for_each_table(n * n, 2, [&](const std::vector<Index>& t) {
      std::vector<bool> rel(t.begin(), t.end());
      EnrichedCategory e = enriched_from_hom_thin(inst::v_bool(), x, [&](Index i, Index j) -> Index { return t[i * n + j]; });
      bool got = check_enriched_category(e).passed();
      o.require(got == oracle::is_preorder(rel, n), "discrepancy at n = " + std::to_string(n));
      ++tables;
    });
    if (n == 3) n3 = seconds_since(t0);
  }
  o.require(n3 < 10.0, "n = 3 took " + fmt_seconds(n3));
  if (o.ok) o.detail = std::to_string(tables) + " tables, n = 3 in " + fmt_seconds(n3);
  return o;
}

Outcome roundtrips(const std::vector<Loaded>& corpus) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto cats = all_of<EnrichedCategory>(corpus, "enriched");
  auto funs = all_of<EnrichedFunctor>(corpus, "enriched_functor");
  std::set<std::string> bases;
  auto monoidals = all_of<MonoidalPtr>(corpus, "monoidal");
  for (const auto& [name, x] : cats) {
    for (const auto& [vname, v] : monoidals)
      if (*v == x->v()) bases.insert(vname.substr(vname.find(':') + 1));
    o.require(from_multicat(to_multicat(*x, 3)) == *x, name + " does not round-trip");
    o.require(multicat_roundtrip(*x, 3).passed(), name + " round-trip check fails");
  }
  for (const auto& [name, f] : funs) {
    o.require(from_multicat_functor(to_multicat_functor(*f, 3)) == *f, name + " does not round-trip");
    o.require(multicat_functor_roundtrip(*f, 3).passed(), name + " functor round-trip check fails");
  }
  double s = seconds_since(t0);
  o.require(cats.size() >= 8, "only " + std::to_string(cats.size()) + " enriched instances");
  o.require(bases.size() >= 3, "only " + std::to_string(bases.size()) + " distinct bases");
  o.require(s < 30.0, "took " + fmt_seconds(s));
  if (o.ok)
    o.detail = std::to_string(cats.size()) + " categories over " + std::to_string(bases.size()) + " bases, " +
               std::to_string(funs.size()) + " functors, " + fmt_seconds(s);
  return o;
}

Outcome small_coincidence(const std::vector<Loaded>& corpus) {
  Outcome o;
  std::size_t passed = 0, caught = 0;
  for (const auto& [name, x] : all_of<EnrichedCategory>(corpus, "enriched")) {
    o.require(small_coincidence_check(*x).passed(), name + " fails");
    ++passed;
  }
  for (const auto& [name, f] : all_of<EnrichedFunctor>(corpus, "enriched_functor")) {
    o.require(small_coincidence_check(*f).passed(), name + " fails");
    ++passed;
  }
  for (const auto& [name, n] : all_of<EnrichedNat>(corpus, "enriched_nat")) {
    o.require(small_coincidence_check(*n).passed(), name + " fails");
    ++passed;
  }
  for (const auto& p : corpus::mutations()) {
    corpus::Expectation ex = corpus::expectation(corpus::read(p));
    Workspace ws = corpus::load(p);
    const Entry& e = ws.at(ex.target);
    std::map<std::string, std::vector<Witness>> small, enriched;
    if (e.kind == "enriched") {
      small = failures(small_coincidence_check(std::get<EnrichedCategory>(e.value)), "small.");
      enriched = failures(check_enriched_category(std::get<EnrichedCategory>(e.value)), "enriched.");
    } else if (e.kind == "enriched_functor") {
      small = failures(small_coincidence_check(std::get<EnrichedFunctor>(e.value)), "small_functor.");
      enriched = failures(check_enriched_functor(std::get<EnrichedFunctor>(e.value)), "enriched_functor.");
    } else if (e.kind == "enriched_nat") {
      small = failures(small_coincidence_check(std::get<EnrichedNat>(e.value)), "small_nat.");
      enriched = failures(check_enriched_nat(std::get<EnrichedNat>(e.value)), "enriched_nat.");
    } else {
      continue;
    }
    o.require(!small.empty(), p.filename().string() + " passes the small check");
    o.require(small == enriched, p.filename().string() + " witnesses differ");
    ++caught;
  }
  o.require(caught > 0, "no enriched mutation fixtures");
  if (o.ok) o.detail = std::to_string(passed) + " instances pass, " + std::to_string(caught) + " mutations fail with equal witnesses";
  return o;
}

Outcome underlying(const std::vector<Loaded>& corpus) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& [name, x] : all_of<EnrichedCategory>(corpus, "enriched"))
    for (const FiniteSet& i : index_sets()) {
      o.require(underlying_commute_check(*x, i).passed(), name + " at |I| = " + std::to_string(i.size()));
      ++runs;
    }
  if (o.ok) o.detail = std::to_string(runs) + " squares";
  return o;
}

Outcome monad_laws() {
  Outcome o;
  std::size_t graphs = 0;
  for (const auto& [n, es] : inst::small_graphs()) {
    FGraph g = inst::make_graph(n, es);
    o.require(fc_monad_laws(g, 3).passed(), "laws fail on a graph with " + std::to_string(n) + " vertices");
    LazyCategory fc = free_category(g, 3);
    for (std::size_t k = 0; k <= 3; ++k)
      o.require(fc.count(k) == oracle::walk_count(n, es, k), "path count differs at length " + std::to_string(k));
    ++graphs;
  }
  if (o.ok) o.detail = std::to_string(graphs) + " graphs";
  return o;
}

void require_grothendieck(Outcome& o, const CheckReport& r, const std::string& name) {
  o.require(r.passed(), name + " fails " + (r.failing().empty() ? std::string() : r.failing().front()));
  for (const char* id : {"grothendieck.lifts", "grothendieck.cartesian", "grothendieck.tensor.lifts", "grothendieck.tensor.diagonal"}) {
    const AxiomResult* a = r.find(id);
    o.require(a && a->checked > 0, name + " did not exercise " + id);
  }
}

Outcome fibration(const std::vector<Loaded>& corpus) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& l : corpus) {
    if (!l.ws.has("Products")) continue;
    const auto& fam = l.ws.get<FamilySpec>("Products", "family");
    o.require(fam.members.size() == 6, "the corpus product family has " + std::to_string(fam.members.size()) + " members");
    CommandResult res = cmd_grothendieck(l.ws, "VBool", {"Products"});
    for (const auto& r : res.reports) require_grothendieck(o, r, l.file + ":VBool");
    ++runs;
  }
  auto fam = inst::product_family();
  for (const auto& [name, v] : all_of<MonoidalPtr>(corpus, "monoidal")) {
    require_grothendieck(o, check_monoidal_grothendieck(monoidal_grothendieck(*v, fam.members, fam.connecting)), name);
    ++runs;
  }
  o.require(runs > 1, "no product family in the corpus");
  if (o.ok) o.detail = std::to_string(runs) + " totals over the product family";
  return o;
}

Outcome mutations() {
  Outcome o;
  const std::set<std::string> wanted{"category",      "monoidal pentagon/triangle", "enriched associativity",
                                     "enriched units", "functoriality",              "naturality",
                                     "multicat associativity", "multicat units"};
  std::set<std::string> covered;
  for (const auto& p : corpus::mutations()) {
    std::string text = corpus::read(p), name = p.filename().string();
    corpus::Expectation ex = corpus::expectation(text);
    CommandResult a = cmd_check(parse_spec(text), ex.target);
    CommandResult b = cmd_check(parse_spec(text), ex.target);
    std::set<std::string> got;
    bool witnessed = true;
    for (const auto& r : a.reports)
      for (const auto& ax : r.axioms)
        if (!ax.passed()) {
          got.insert(ax.id);
          witnessed = witnessed && !ax.witnesses.empty();
        }
    o.require(got == ex.failing, name + " fails a different set of axioms");
    o.require(witnessed, name + " has a failure without a witness");
    o.require(format_machine(a) == format_machine(b), name + " is not reproducible");
    if (got == ex.failing) covered.insert(ex.family);
  }
  for (const auto& f : wanted) o.require(covered.count(f) != 0, "no fixture for " + f);
  if (o.ok) o.detail = std::to_string(corpus::mutations().size()) + " fixtures cover " + std::to_string(wanted.size()) + " families";
  return o;
}

Outcome strictness(const std::vector<Loaded>& corpus) {
  Outcome o;
  std::vector<std::pair<std::string, const InternalCategory*>> bases;
  for (const auto& c : all_of<InternalCategory>(corpus, "category")) bases.push_back(c);
  auto monoidals = all_of<MonoidalPtr>(corpus, "monoidal");
  for (const auto& [name, v] : monoidals) bases.push_back({name, &(*v)->base()});
  std::size_t runs = 0;
  auto sets = index_sets();
  for (const FiniteSet& i : sets)
    for (const FiniteSet& j : sets) {
      FiniteSet jj = j.renamed("J");
      for_each_map(i, jj, [&](const FiniteMap& u) {
        for (const auto& [name, v] : monoidals) {
          o.require(check_reindex_strict(*v, u).passed(), name + " reindexing is not strict");
          ++runs;
        }
        for (const auto& [name, x] : all_of<EnrichedCategory>(corpus, "enriched")) {
          EnrichedFunctor r = enriched_reindex(*x, u);
          o.require(check_enriched_functor(r).passed(), name + " reindexing is not a functor");
          ++runs;
        }
        for (const FiniteSet& k : sets) {
          FiniteSet kk = k.renamed("K");
          for_each_map(jj, kk, [&](const FiniteMap& w) {
            for (const auto& [name, a] : bases) {
              o.require(check_reindex_functoriality(*a, u, w).passed(), name + " reindexing is not functorial");
              ++runs;
            }
            for (const auto& [name, x] : all_of<EnrichedCategory>(corpus, "enriched")) {
              EnrichedFunctor whole = enriched_reindex(*x, compose_map(u, w));
              EnrichedFunctor first = enriched_reindex(*x, w), second = enriched_reindex(*x, u);
              bool same = true;
              for (Index ob = 0; ob < whole.dom().n(); ++ob) same = same && whole.obj(ob) == second.obj(first.obj(ob));
              o.require(same, name + " enriched reindexing is not functorial");
              ++runs;
            }
          });
        }
      });
    }
  if (o.ok) o.detail = std::to_string(runs) + " reindexings";
  return o;
}

}  // namespace

int main() {
  std::vector<Loaded> corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    std::printf("FAIL corpus: %s\n", e.what());
    return 1;
  }
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 preorder correspondence", preorders},
      {"2 round-trip equivalence", [&] { return roundtrips(corpus); }},
      {"3 small coincidence", [&] { return small_coincidence(corpus); }},
      {"4 fiber/underlying square", [&] { return underlying(corpus); }},
      {"5 free-category monad laws", monad_laws},
      {"6 Grothendieck fibration", [&] { return fibration(corpus); }},
      {"7 mutations caught", mutations},
      {"8 strict reindexing", [&] { return strictness(corpus); }},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
