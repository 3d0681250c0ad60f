#pragma once

// Command implementations behind the CLI, report formatting and DOT export.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icat/frontend/workspace.hpp"

namespace icat::frontend {

inline constexpr const char* kReportHeader = "icat-report 1";

struct CommandResult {
  std::vector<CheckReport> reports;
  std::vector<std::string> info;

  bool passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
  }
};

namespace detail {

inline CheckReport named(CheckReport r, const std::string& subject) {
  r.subject = subject;
  return r;
}

// A -> A[1], a |-> <a>, as a report plus the object table.
inline CheckReport terminal_iso(const InternalCategory& a, const Fiber& f, std::vector<std::string>& info,
                                const CheckOptions& opt, const std::string& subject) {
  CheckReport r(subject, "externalize");
  const InternalCategory& fc = f.category();
  auto& ob = r.axiom("externalize.iso.objects");
  auto& ar = r.axiom("externalize.iso.arrows");
  auto& st = r.axiom("externalize.iso.structure");
  ob.expect(fc.objects().size() == a.objects().size(), [&] { return Witness{}; });
  ar.expect(fc.arrows().size() == a.arrows().size(), [&] { return Witness{}; });
  if (!ob.passed() || !ar.passed()) return r.finish(opt);
  std::vector<Index> on(a.objects().size()), an(a.arrows().size());
  std::vector<bool> hit_o(on.size()), hit_a(an.size());
  for (Index o = 0; o < on.size(); ++o) {
    on[o] = f.obj(Family{o});
    ob.expect(!hit_o[on[o]], [&] { return Witness{a.obj_atom(o)}; });
    hit_o[on[o]] = true;
    info.push_back("iso " + a.obj_atom(o).str() + " -> " + fc.obj_atom(on[o]).str());
  }
  for (Index g = 0; g < an.size(); ++g) {
    an[g] = f.arr(Family{g});
    ar.expect(!hit_a[an[g]], [&] { return Witness{a.arr_atom(g)}; });
    hit_a[an[g]] = true;
    info.push_back("iso " + a.arr_atom(g).str() + " -> " + fc.arr_atom(an[g]).str());
  }
  for (Index g = 0; g < an.size(); ++g) {
    st.expect(fc.src(an[g]) == on[a.src(g)] && fc.tgt(an[g]) == on[a.tgt(g)], [&] { return Witness{a.arr_atom(g)}; });
    for (Index h : a.arrows_from(a.tgt(g)))
      st.expect(fc.comp(an[h], an[g]) == an[a.comp(h, g)], [&] { return Witness{a.arr_atom(h), a.arr_atom(g)}; });
  }
  for (Index o = 0; o < on.size(); ++o)
    st.expect(fc.id(on[o]) == an[a.id(o)], [&] { return Witness{a.obj_atom(o)}; });
  return r.finish(opt);
}

inline FamilySpec family_from_names(const Workspace& ws, const std::vector<std::string>& names) {
  if (names.size() == 1 && ws.has(names[0]) && ws.at(names[0]).kind == "family") {
    return std::get<FamilySpec>(ws.at(names[0]).value);
  }
  FamilySpec f;
  std::vector<std::pair<std::vector<FiniteSet>, LimitCone>> products;
  for (const std::string& n : names) {
    std::vector<FiniteSet> factors;
    std::size_t start = 0;
    while (true) {
      std::size_t star = n.find('*', start);
      factors.push_back(ws.get<FiniteSet>(n.substr(start, star - start), "set"));
      if (star == std::string::npos) break;
      start = star + 1;
    }
    if (factors.size() == 1) {
      f.members.push_back(factors[0]);
    } else {
      LimitCone c = product(factors);
      f.members.push_back(c.apex);
      products.emplace_back(std::move(factors), std::move(c));
    }
  }
  auto is_member = [&](const FiniteSet& s) { return std::find(f.members.begin(), f.members.end(), s) != f.members.end(); };
  for (const auto& [factors, cone] : products) {
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (is_member(factors[i])) f.connecting.push_back(cone.legs[i]);
    if (is_member(factors[0]) &&
        std::all_of(factors.begin(), factors.end(), [&](const FiniteSet& s) { return s == factors[0]; })) {
      f.connecting.push_back(cone.pair(std::vector<FiniteMap>(factors.size(), identity_map(factors[0]))));
    }
  }
  for (const Entry& e : ws.entries()) {
    if (e.kind != "map") continue;
    const auto& m = std::get<FiniteMap>(e.value);
    if (is_member(m.dom()) && is_member(m.cod())) f.connecting.push_back(m);
  }
  return f;
}

}  // namespace detail

inline CommandResult cmd_check(const Workspace& ws, const std::optional<std::string>& target,
                               const CheckOptions& opt = {}) {
  CommandResult out;
  auto one = [&](const Entry& e, bool explicit_target) {
    const std::string& n = e.name;
    if (e.kind == "set" || e.kind == "map") {
      if (!explicit_target) return;
      CheckReport r(n, e.kind);
      r.notes.push_back("tables are validated for totality when the file is loaded");
      out.reports.push_back(r);
    } else if (e.kind == "category") {
      out.reports.push_back(check_category(std::get<InternalCategory>(e.value), opt, n));
    } else if (e.kind == "monoidal") {
      out.reports.push_back(check_monoidal(*std::get<MonoidalPtr>(e.value), opt, n));
    } else if (e.kind == "functor") {
      out.reports.push_back(check_functor(std::get<InternalFunctor>(e.value), opt, n));
    } else if (e.kind == "nat") {
      out.reports.push_back(check_nat(std::get<InternalNat>(e.value), opt, n));
    } else if (e.kind == "monoidal_functor") {
      out.reports.push_back(check_monoidal_functor(std::get<MonoidalFunctorData>(e.value), opt, n));
    } else if (e.kind == "monoidal_nat") {
      out.reports.push_back(check_monoidal_nat(std::get<MonoidalNatData>(e.value), opt, n));
    } else if (e.kind == "enriched") {
      const auto& x = std::get<EnrichedCategory>(e.value);
      out.reports.push_back(check_enriched_category(x, opt, n));
      out.reports.push_back(small_coincidence_check(x, opt, n));
    } else if (e.kind == "enriched_functor") {
      const auto& f = std::get<EnrichedFunctor>(e.value);
      out.reports.push_back(check_enriched_functor(f, opt, n));
      out.reports.push_back(small_coincidence_check(f, opt, n));
    } else if (e.kind == "enriched_nat") {
      const auto& t = std::get<EnrichedNat>(e.value);
      out.reports.push_back(check_enriched_nat(t, opt, n));
      out.reports.push_back(small_coincidence_check(t, opt, n));
    } else if (e.kind == "family") {
      const auto& f = std::get<FamilySpec>(e.value);
      IndexFamily ix(f.members, f.connecting, false);
      CheckReport r = detail::named(check_category(ix.category(), opt, n), n);
      r.notes.push_back("index category has " + std::to_string(ix.arrow_count()) + " arrows");
      out.reports.push_back(r);
    } else if (e.kind == "multicat") {
      out.reports.push_back(check_fc_multicat(*std::get<MulticatPtr>(e.value), opt, n));
    }
  };
  if (target) {
    one(ws.at(*target), true);
  } else {
    for (const Entry& e : ws.entries()) one(e, false);
  }
  return out;
}

inline CommandResult cmd_externalize(const Workspace& ws, const std::string& target, const std::string& index,
                                     const CheckOptions& opt = {}) {
  CommandResult out;
  const Entry& e = ws.at(target);
  const FiniteSet& x = ws.get<FiniteSet>(index, "set");
  const std::string subject = target + "[" + index + "]";
  if (e.kind == "category") {
    const auto& a = std::get<InternalCategory>(e.value);
    FiberPtr f = fiber(a, x);
    out.info.push_back("fiber " + subject + " has " + std::to_string(f->category().objects().size()) + " objects and " +
                       std::to_string(f->category().arrows().size()) + " arrows");
    out.reports.push_back(check_category(f->category(), opt, subject));
    if (x.size() == 1) out.reports.push_back(detail::terminal_iso(a, *f, out.info, opt, subject));
  } else if (e.kind == "monoidal") {
    const auto& v = std::get<MonoidalPtr>(e.value);
    MonoidalPtr w = fiber_monoidal(v, x);
    out.info.push_back("fiber " + subject + " has " + std::to_string(w->n0()) + " objects and " +
                       std::to_string(w->n1()) + " arrows");
    out.reports.push_back(check_monoidal(*w, opt, subject));
    if (x.size() == 1) out.reports.push_back(detail::terminal_iso(v->base(), *fiber(v->base(), x), out.info, opt, subject));
    for (const Entry& m : ws.entries()) {
      if (m.kind != "map" || !(std::get<FiniteMap>(m.value).cod() == x)) continue;
      out.reports.push_back(check_reindex_strict(v, std::get<FiniteMap>(m.value), opt));
      out.reports.back().subject = m.name + "*";
    }
  } else if (e.kind == "enriched") {
    const auto& xe = std::get<EnrichedCategory>(e.value);
    EnrichedCategory xi = enriched_fiber(xe, x);
    out.info.push_back("fiber " + subject + " has " + std::to_string(xi.n()) + " objects");
    out.reports.push_back(check_enriched_category(xi, opt, subject));
  } else if (e.kind == "functor") {
    out.reports.push_back(check_functor(fiber_functor(std::get<InternalFunctor>(e.value), x), opt, subject));
  } else if (e.kind == "nat") {
    out.reports.push_back(check_nat(fiber_nat(std::get<InternalNat>(e.value), x), opt, subject));
  } else if (e.kind == "enriched_functor") {
    out.reports.push_back(check_enriched_functor(enriched_fiber_functor(std::get<EnrichedFunctor>(e.value), x), opt, subject));
  } else if (e.kind == "enriched_nat") {
    out.reports.push_back(check_enriched_nat(enriched_fiber_nat(std::get<EnrichedNat>(e.value), x), opt, subject));
  } else {
    throw KindMismatch("cannot externalize a " + e.kind);
  }
  return out;
}

inline CommandResult cmd_grothendieck(const Workspace& ws, const std::string& target,
                                      const std::vector<std::string>& family, const CheckOptions& opt = {}) {
  CommandResult out;
  const Entry& e = ws.at(target);
  FamilySpec f = detail::family_from_names(ws, family);
  if (e.kind == "category") {
    TotalCategory t = grothendieck(std::get<InternalCategory>(e.value), f.members, f.connecting);
    out.info.push_back("total category has " + std::to_string(t.category().objects().size()) + " objects and " +
                       std::to_string(t.category().arrows().size()) + " arrows");
    out.reports.push_back(check_grothendieck(t, opt, target));
  } else if (e.kind == "monoidal") {
    MonoidalTotal mt = monoidal_grothendieck(std::get<MonoidalPtr>(e.value), f.members, f.connecting);
    out.info.push_back("total category has " + std::to_string(mt.total().category().objects().size()) + " objects and " +
                       std::to_string(mt.total().category().arrows().size()) + " arrows");
    out.reports.push_back(check_monoidal_grothendieck(mt, opt, target));
  } else {
    throw KindMismatch("the Grothendieck construction needs a category or a monoidal structure, not a " + e.kind);
  }
  return out;
}

inline CommandResult cmd_to_multicat(const Workspace& ws, const std::string& target, std::size_t bound,
                                     const CheckOptions& opt = {}) {
  CommandResult out;
  const Entry& e = ws.at(target);
  if (e.kind == "enriched") {
    MulticatMap m = to_multicat(std::get<EnrichedCategory>(e.value), bound);
    out.info.push_back("Ind has " + std::to_string(m.source->c1.edges.size()) + " arrows, M_V has " +
                       std::to_string(m.target->c1.edges.size()) + " arrows at bound " + std::to_string(bound));
    out.reports.push_back(check_fc_multicat(*m.source, opt, "Ind(" + target + ")"));
    out.reports.push_back(check_fc_multicat(*m.target, opt, "M_V(" + target + ")"));
    out.reports.push_back(check_multicat_map(m, opt, target));
  } else if (e.kind == "enriched_functor") {
    MulticatFunctor mf = to_multicat_functor(std::get<EnrichedFunctor>(e.value), bound);
    out.reports.push_back(check_multicat_functor(mf, opt, target));
  } else if (e.kind == "multicat") {
    out.reports.push_back(check_fc_multicat(*std::get<MulticatPtr>(e.value), opt, target));
  } else {
    throw KindMismatch("cannot build a multicategory from a " + e.kind);
  }
  return out;
}

inline CommandResult cmd_roundtrip(const Workspace& ws, const std::string& target, std::size_t bound,
                                   const CheckOptions& opt = {}) {
  CommandResult out;
  const Entry& e = ws.at(target);
  if (e.kind == "enriched") {
    out.reports.push_back(multicat_roundtrip(std::get<EnrichedCategory>(e.value), bound, opt, target));
  } else if (e.kind == "enriched_functor") {
    out.reports.push_back(multicat_functor_roundtrip(std::get<EnrichedFunctor>(e.value), bound, opt, target));
  } else {
    throw KindMismatch("round trips need an enriched category or functor, not a " + e.kind);
  }
  return out;
}

inline CommandResult cmd_underlying(const Workspace& ws, const std::string& target, const CheckOptions& opt = {}) {
  CommandResult out;
  const Entry& e = ws.at(target);
  if (e.kind == "enriched") {
    const auto& x = std::get<EnrichedCategory>(e.value);
    InternalCategory u = underlying_category(x);
    out.info.push_back("underlying category has " + std::to_string(u.objects().size()) + " objects and " +
                       std::to_string(u.arrows().size()) + " arrows");
    out.reports.push_back(check_category(u, opt, "U(" + target + ")"));
    for (std::size_t k = 0; k <= 2; ++k) {
      std::vector<Atom> elems;
      for (std::size_t i = 0; i < k; ++i) elems.push_back(leaf("i" + std::to_string(i)));
      FiniteSet idx("I" + std::to_string(k), elems);
      out.reports.push_back(underlying_commute_check(x, idx, opt, target + "[I" + std::to_string(k) + "]"));
    }
  } else if (e.kind == "enriched_functor") {
    out.reports.push_back(check_functor(underlying_functor(std::get<EnrichedFunctor>(e.value)), opt, "U(" + target + ")"));
  } else if (e.kind == "enriched_nat") {
    out.reports.push_back(check_nat(underlying_nat(std::get<EnrichedNat>(e.value)), opt, "U(" + target + ")"));
  } else {
    throw KindMismatch("underlying needs an enriched category, functor or transformation, not a " + e.kind);
  }
  return out;
}

namespace detail {

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string dot_graph(const std::string& name, const std::vector<Atom>& nodes,
                             const std::vector<std::tuple<Atom, Atom, std::string>>& edges) {
  std::string s = "digraph " + quote(name) + " {\n";
  for (const Atom& n : nodes) s += "  " + quote(n.str()) + ";\n";
  for (const auto& [a, b, label] : edges) s += "  " + quote(a.str()) + " -> " + quote(b.str()) + " [label=" + quote(label) + "];\n";
  s += "}\n";
  return s;
}

inline std::string dot_category(const std::string& name, const InternalCategory& c) {
  std::vector<std::tuple<Atom, Atom, std::string>> edges;
  for (Index f = 0; f < c.arrows().size(); ++f) {
    if (c.id(c.src(f)) == f) continue;
    edges.emplace_back(c.obj_atom(c.src(f)), c.obj_atom(c.tgt(f)), c.arr_atom(f).str());
  }
  return dot_graph(name, c.objects().elements(), edges);
}

}  // namespace detail

// Identity arrows are omitted; output order follows the canonical element order.
inline std::string cmd_export_dot(const Workspace& ws, const std::string& target) {
  const Entry& e = ws.at(target);
  if (e.kind == "category") return detail::dot_category(target, std::get<InternalCategory>(e.value));
  if (e.kind == "monoidal") return detail::dot_category(target, std::get<MonoidalPtr>(e.value)->base());
  if (e.kind == "family") {
    const auto& f = std::get<FamilySpec>(e.value);
    return detail::dot_category(target, IndexFamily(f.members, f.connecting, false).category());
  }
  if (e.kind == "enriched") {
    const auto& x = std::get<EnrichedCategory>(e.value);
    std::vector<std::tuple<Atom, Atom, std::string>> edges;
    for (Index i = 0; i < x.n(); ++i)
      for (Index j = 0; j < x.n(); ++j) edges.emplace_back(x.atom(i), x.atom(j), x.base().base().obj_atom(x.hom(i, j)).str());
    return detail::dot_graph(target, x.carrier().elements(), edges);
  }
  if (e.kind == "multicat") {
    const FGraph& g = std::get<MulticatPtr>(e.value)->c0;
    std::vector<std::tuple<Atom, Atom, std::string>> edges;
    for (Index k = 0; k < g.edges.size(); ++k) edges.emplace_back(g.vertices[g.src[k]], g.vertices[g.tgt[k]], g.edges[k].str());
    return detail::dot_graph(target, g.vertices.elements(), edges);
  }
  throw KindMismatch("cannot export a " + e.kind + " as a graph");
}

// ---------------------------------------------------------------------------
// Report formats
// ---------------------------------------------------------------------------

inline std::string witness_text(const Witness& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i].str();
  return s;
}

inline std::string format_human(const CommandResult& res) {
  std::ostringstream o;
  for (const auto& line : res.info) o << line << '\n';
  for (const CheckReport& r : res.reports) {
    o << "== " << r.subject << " (" << r.kind << ")\n";
    for (const AxiomResult& a : r.axioms) {
      o << (a.passed() ? "  PASS " : "  FAIL ") << a.id << "  [" << a.failures << "/" << a.checked << " failed]\n";
      for (const Witness& w : a.witnesses) o << "      witness " << witness_text(w) << '\n';
      if (!a.note.empty()) o << "      note " << a.note << '\n';
    }
    for (const auto& n : r.notes) o << "  note " << n << '\n';
    o << "  " << (r.passed() ? "ok" : "FAILED") << '\n';
  }
  o << "result: " << (res.passed() ? "PASS" : "FAIL") << '\n';
  return o.str();
}

inline std::string format_machine(const CommandResult& res) {
  std::ostringstream o;
  o << kReportHeader << '\n';
  for (const auto& line : res.info) o << "info " << line << '\n';
  for (const CheckReport& r : res.reports) {
    o << "report " << r.subject << ' ' << r.kind << '\n';
    for (const AxiomResult& a : r.axioms) {
      o << "axiom " << a.id << ' ' << (a.passed() ? "pass" : "fail") << ' ' << a.checked << ' ' << a.failures << '\n';
      for (const Witness& w : a.witnesses) o << "witness " << a.id << ' ' << witness_text(w) << '\n';
      if (!a.note.empty()) o << "note " << a.id << ' ' << a.note << '\n';
    }
    for (const auto& n : r.notes) o << "note " << r.subject << ' ' << n << '\n';
    o << "end " << (r.passed() ? "pass" : "fail") << '\n';
  }
  o << "result " << (res.passed() ? "pass" : "fail") << '\n';
  return o.str();
}

}  // namespace icat::frontend
