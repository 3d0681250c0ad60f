#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "icat/atom.hpp"

namespace icat {

inline constexpr std::size_t kDefaultWitnessLimit = 10;

struct CheckOptions {
  // 0 keeps every witness.
  std::size_t witness_limit = kDefaultWitnessLimit;
};

using Witness = std::vector<Atom>;

struct AxiomResult {
  std::string id;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;
  std::string note;

  bool passed() const { return failures == 0; }
  void pass() { ++checked; }
  void fail(Witness w) {
    ++checked;
    ++failures;
    witnesses.push_back(std::move(w));
  }
  void record(bool ok, Witness w) { ok ? pass() : fail(std::move(w)); }
  // Builds the witness only on failure.
  template <class F>
  bool expect(bool ok, F&& make_witness) {
    ok ? pass() : fail(make_witness());
    return ok;
  }
};

struct CheckReport {
  std::string subject;
  std::string kind;
  std::deque<AxiomResult> axioms;
  std::vector<std::string> notes;

  CheckReport() = default;
  CheckReport(std::string subj, std::string k) : subject(std::move(subj)), kind(std::move(k)) {}

  AxiomResult& axiom(const std::string& id) {
    for (auto& a : axioms) {
      if (a.id == id) return a;
    }
    axioms.push_back(AxiomResult{id});
    return axioms.back();
  }
  const AxiomResult* find(const std::string& id) const {
    for (const auto& a : axioms) {
      if (a.id == id) return &a;
    }
    return nullptr;
  }

  bool passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed(); });
  }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    for (const auto& a : axioms) {
      if (!a.passed()) out.push_back(a.id);
    }
    return out;
  }

  // Appends another report's axioms, prefixing their ids.
  void absorb(const CheckReport& other, const std::string& prefix = "") {
    for (const auto& a : other.axioms) {
      AxiomResult copy = a;
      copy.id = prefix + a.id;
      axioms.push_back(std::move(copy));
    }
    for (const auto& n : other.notes) notes.push_back(n);
  }

  // Sorts witnesses canonically and keeps at most `limit` per axiom.
  CheckReport& finish(const CheckOptions& opt) {
    for (auto& a : axioms) {
      std::sort(a.witnesses.begin(), a.witnesses.end());
      a.witnesses.erase(std::unique(a.witnesses.begin(), a.witnesses.end()), a.witnesses.end());
      if (opt.witness_limit != 0 && a.witnesses.size() > opt.witness_limit) {
        a.witnesses.resize(opt.witness_limit);
      }
    }
    return *this;
  }
};

}  // namespace icat
