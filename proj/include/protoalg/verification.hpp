#pragma once

// The acceptance criteria as runnable checks, one result line per criterion.

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/check.hpp"
#include "protoalg/constructions.hpp"
#include "protoalg/group_bridge.hpp"
#include "protoalg/search.hpp"
#include "protoalg/sections.hpp"
#include "protoalg/structures.hpp"
#include "protoalg/suites.hpp"

namespace protoalg {

struct CriterionResult {
  int number = 0;
  std::string slug;
  std::string title;
  bool checks_passed = false;
  double seconds = 0;
  double limit_seconds = 0;
  std::string detail;

  bool passed() const { return checks_passed && seconds < limit_seconds; }
};

struct VerifyOptions {
  /// Replaces the two-element Boolean algebra wherever it is used.
  std::optional<FiniteAlgebra> bool2;
  /// Criterion numbers or slugs; empty runs everything.
  std::vector<std::string> only;
  std::uint64_t random_seed = 20240607;
};

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << "CRITERION " << r.number << ' ' << r.slug << ' ' << (r.passed() ? "PASS" : "FAIL") << " time=" << r.seconds
      << "s limit=" << r.limit_seconds << "s";
  if (!r.detail.empty()) out << " # " << r.detail;
  return out.str();
}

namespace detail {

/// Collects failed sub-checks for one criterion.
class Ledger {
public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  void note(std::string s) { notes_.push_back(std::move(s)); }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string s;
    if (!failures_.empty()) {
      s = "failed: ";
      for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) s += (i ? "; " : "") + failures_[i];
      if (failures_.size() > 5) s += "; ...";
    } else {
      s = std::to_string(total_) + " checks";
    }
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

inline bool passes_all(const FiniteAlgebra& alg, const std::vector<Identity>& ids, Ledger& ledger,
                       const std::string& label) {
  bool ok = true;
  for (const auto& id : ids) {
    CheckReport r = check_identity(alg, id);
    if (!r.passed()) {
      ledger.expect(false, label + " " + format_report(r));
      ok = false;
    }
  }
  if (ok) ledger.expect(true, label);
  return ok;
}

inline FiniteAlgebra bool2(const VerifyOptions& opt) {
  return opt.bool2 ? *opt.bool2 : build_boolean_protomodular(1);
}

inline void criterion_boolean(const VerifyOptions& opt, Ledger& l) {
  for (std::size_t k = 1; k <= 2; ++k) {
    FiniteAlgebra alg = k == 1 ? bool2(opt) : build_boolean_protomodular(2);
    const std::string tag = "k=" + std::to_string(k);
    passes_all(alg, suite_protomodular(2).identities, l, tag + " protomodular");
    CheckReport units = check_identity(alg, suite_semiabelian(2).identities.back());
    l.expect(!units.passed(), tag + " units_equal_1 should fail");
    passes_all(alg, {identity_left_unit(2)}, l, tag + " left_unit");
  }
}

inline void criterion_lattices(const VerifyOptions&, Ledger& l) {
  const std::vector<std::pair<std::string, LatticeSpec>> lattices = {
      {"chain2", chain_lattice(2)}, {"chain3", chain_lattice(3)}, {"square", boolean_lattice(2)}};
  for (const auto& [name, lat] : lattices)
    for (auto variant : {LatticeTheta::JoinFirstMeetLast, LatticeTheta::JoinOuterMeetMiddle}) {
      FiniteAlgebra alg = build_lattice_theta(lat, variant);
      passes_all(alg, {identity_2assoc(2)}, l, alg.name() + " 2assoc");
      bool some_fail = false;
      for (const auto& id : identities_1assoc(2)) {
        CheckReport r = check_identity(alg, id);
        if (!r.passed() && r.counterexample) some_fail = true;
      }
      l.expect(some_fail, alg.name() + " 1assoc should fail with a counterexample");
    }
}

inline FiniteAlgebra random_theta_algebra(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  FiniteAlgebra alg("random", theta_signature(n), m);
  std::vector<Element> t(*checked_pow(m, n + 1));
  for (auto& v : t) v = static_cast<Element>(rng() % m);
  alg.set_table(kTheta, std::move(t));
  return alg;
}

inline void criterion_sections(const VerifyOptions& opt, Ledger& l) {
  std::mt19937_64 rng(opt.random_seed);
  std::size_t passing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 2;
    FiniteAlgebra alg = random_theta_algebra(rng, m, n);
    CheckReport direct = check_identity(alg, identity_2assoc(n));
    CheckReport via = check_2assoc_via_sections(alg);
    l.expect(direct.verdict == via.verdict && direct.counterexample == via.counterexample,
             "trial " + std::to_string(trial) + " disagrees");
    if (direct.passed()) ++passing;
  }
  l.note(std::to_string(passing) + "/200 2-associative");
}

inline void criterion_alphas(const VerifyOptions&, Ledger& l) {
  FiniteAlgebra source("Z3_a1_plus_b", theta_signature(2), 3);
  source.set_table(kTheta, OpTable::tabulate(3, 3, [](std::span<const Element> a) { return (a[0] + a[2]) % 3; }));
  FiniteAlgebra alg = build_alphas_from_sections(source, {0, 0});
  passes_all(alg, suite_semiabelian(2).identities, l, "semiabelian:2");
}

inline void criterion_strictness(const VerifyOptions& opt, Ledger& l) {
  for (std::size_t m = 1; m <= 5; ++m)
    for (auto shape : {SemiloopShape::Cyclic, SemiloopShape::Twisted}) {
      FiniteAlgebra alg = build_strict_semiloop(m, shape);
      StrictnessReport r = check_strict_equivalence(alg);
      l.expect(r.agree() && r.strict(), alg.name() + " should be strict in all four senses");
    }
  StrictnessReport b = check_strict_equivalence(bool2(opt));
  l.expect(b.agree() && !b.sections_bijective, "Bool2 should fail all four strictness conditions");
}

/// Independent of the search engine: every ternary table on two elements.
inline std::uint64_t count_malcev_2assoc_tables_m2() {
  Signature sig;
  sig.add_op("mu", 3);
  auto ids = identities_malcev("mu");
  ids.push_back(identity_2assoc(2, "mu"));
  std::uint64_t found = 0;
  std::vector<Element> t(8);
  for (std::uint32_t code = 0; code < 256; ++code) {
    unflatten(code, 2, t);
    FiniteAlgebra alg("mu_table", sig, 2);
    alg.set_table("mu", t);
    if (all_passed(check_all(alg, ids))) ++found;
  }
  return found;
}

inline void criterion_malcev_none(const VerifyOptions&, Ledger& l) {
  SearchResult r = prove_no_2assoc_malcev(2);
  l.expect(r.outcome == SearchResult::Outcome::NoneExists, "search should certify none-exists");
  l.expect(count_malcev_2assoc_tables_m2() == 0, "table enumeration should find nothing");
  l.note("nodes=" + std::to_string(r.stats.nodes));
}

inline void criterion_strict_none(const VerifyOptions&, Ledger& l) {
  for (std::size_t m : {2, 3}) {
    SearchResult r = prove_no_strict_2assoc(m, 2);
    l.expect(r.outcome == SearchResult::Outcome::NoneExists, "m=" + std::to_string(m) + " should be none-exists");
    l.note("m=" + std::to_string(m) + " nodes=" + std::to_string(r.stats.nodes));
  }
}

inline void criterion_derived_group(const VerifyOptions&, Ledger& l) {
  for (const auto& alg : semiabelian_catalog()) {
    DerivedGroup g = derive_group(alg);
    l.expect(!group_axiom_violation(g.group.carrier, g.group.product, g.group.unit), alg.name() + " group axioms");
    bool inverses = true;
    for (Element b = 0; b < g.group.carrier; ++b)
      inverses = inverses && g.group.mul(b, g.group.inverse[b]) == g.group.unit &&
                 g.group.mul(g.group.inverse[b], b) == g.group.unit;
    l.expect(inverses, alg.name() + " inverse formula");
  }
}

inline void criterion_solvability(const VerifyOptions&, Ledger& l) {
  for (const auto& alg : semiabelian_catalog())
    for (const auto& r : check_unique_solvability(alg)) l.expect(r.passed(), alg.name() + " " + format_report(r));
}

inline void criterion_malcev_term(const VerifyOptions& opt, Ledger& l) {
  const FiniteAlgebra z4 = build_semigroup_algebra(cyclic_group(4).monoid, 1, 1);
  for (const FiniteAlgebra& alg : {bool2(opt), z4}) {
    MalcevResult mr = malcev_term(alg);
    l.expect(mr.laws_pass(), alg.name() + " Mal'cev laws");
    ExpandedMalcevReport er = check_expanded_malcev_assoc(alg);
    l.expect(er.agree(), alg.name() + " expanded and materialized associativity agree");
    l.note(alg.name() + " mu associative: " + (er.materialized.passed() ? "yes" : "no"));
  }
  ExpandedMalcevReport group = check_expanded_malcev_assoc(z4);
  l.expect(group.expanded.passed() && group.materialized.passed(), "Z4 associativity passes");
}

inline void criterion_enriched(const VerifyOptions&, Ledger& l) {
  for (const auto& alg : semiabelian_catalog()) {
    EnrichedGroup eg = to_enriched(alg);
    l.expect(!validate_enriched(eg), alg.name() + " enriched laws");
    FiniteAlgebra back = from_enriched(eg, alg.name());
    l.expect(back == alg, alg.name() + " round trip");
    l.expect(to_enriched(back) == eg, alg.name() + " reverse round trip");
  }
  const std::uint64_t searched = count_2assoc_semiabelian(2, 1).count;
  const std::uint64_t enriched = count_enriched_groups(2, 1);
  l.expect(searched == enriched, "census " + std::to_string(searched) + " vs " + std::to_string(enriched));
  l.note("census m=2 n=1: " + std::to_string(searched));
}

inline void criterion_non_group(const VerifyOptions& opt, Ledger& l) {
  FiniteAlgebra alg = bool2(opt);
  auto v = group_axiom_violation(alg.carrier_size(), product_from_theta(alg));
  l.expect(v.has_value() && !v->witness.empty(), "derived product of Bool2 should fail a group axiom");
  if (v) l.note(to_string(*v));
}

inline void criterion_constructions(const VerifyOptions&, Ledger& l) {
  for (std::size_t i = 1; i <= 3; ++i)
    passes_all(build_projection_algebra(2, 2, i), {identity_2assoc(2)}, l, "projection i=" + std::to_string(i));
  for (std::size_t i = 1; i <= 2; ++i)
    passes_all(build_semigroup_algebra(cyclic_group(3).monoid, 2, i), {identity_2assoc(2)}, l,
               "semigroup Z3 i=" + std::to_string(i));
  passes_all(build_matrix_row_algebra(2, 1), {identity_2assoc(1)}, l, "matrix q=2 n=1");
  {
    FiniteAlgebra big = build_matrix_row_algebra(2, 2);
    CheckReport r = check_identity(big, identity_2assoc(2), Sampled{100'000, 0x5eed, {}});
    l.expect(r.verdict == Verdict::SampledPass && r.tuples_checked == 100'000, "matrix q=2 n=2 sampled");
  }
  FiniteAlgebra bounded = build_bounded_monoid_algebra(cyclic_group(2).monoid, 3);
  passes_all(bounded, {identity_2assoc(3)}, l, "bounded monoid 2assoc");
  passes_all(bounded, identities_1assoc(3), l, "bounded monoid 1assoc");
  for (std::size_t n = 1; n <= 2; ++n)
    passes_all(build_map_composition_algebra(2, n), {identity_2assoc(n)}, l, "maps n=" + std::to_string(n));
}

struct CriterionDef {
  int number;
  const char* slug;
  const char* title;
  double limit_seconds;
  void (*run)(const VerifyOptions&, Ledger&);
};

inline const std::vector<CriterionDef>& criteria() {
  static const std::vector<CriterionDef> defs = {
      {1, "boolean-protomodular", "Boolean algebra is protomodular, not semi-abelian", 1, criterion_boolean},
      {2, "lattice-2assoc", "lattice thetas are 2-associative, not 1-associative", 1, criterion_lattices},
      {3, "section-equivalence", "section route agrees with the identity on random algebras", 10, criterion_sections},
      {4, "alphas-from-sections", "alphas built from sections give a semi-abelian algebra", 1, criterion_alphas},
      {5, "strictness-agreement", "the four strictness conditions agree", 1, criterion_strictness},
      {6, "malcev-2assoc-none", "no 2-associative Mal'cev operation on two elements", 1, criterion_malcev_none},
      {7, "strict-2assoc-none", "no strict 2-associative protomodular theta for n=2", 30, criterion_strict_none},
      {8, "derived-group", "derived groups and the inverse formula", 5, criterion_derived_group},
      {9, "unique-solvability", "unit and unique solvability of theta(a..a,b)=c", 5, criterion_solvability},
      {10, "malcev-term", "Mal'cev term laws and associativity agreement", 5, criterion_malcev_term},
      {11, "enriched-round-trip", "enriched groups round trip and census", 10, criterion_enriched},
      {12, "non-group-witness", "Boolean derived product is not a group", 1, criterion_non_group},
      {13, "example-constructions", "example constructions are 2-associative", 60, criterion_constructions},
  };
  return defs;
}

inline bool selected(const CriterionDef& def, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  for (const auto& s : only)
    if (s == def.slug || s == std::to_string(def.number)) return true;
  return false;
}

}  // namespace detail

/// Throws InvalidArgument for an `only` entry that names no criterion.
inline std::vector<CriterionResult> run_verification(const VerifyOptions& opt = {}) {
  for (const auto& s : opt.only) {
    bool known = false;
    for (const auto& def : detail::criteria()) known = known || detail::selected(def, {s});
    if (!known) throw InvalidArgument("unknown criterion '" + s + "'");
  }
  std::vector<CriterionResult> out;
  for (const auto& def : detail::criteria()) {
    if (!detail::selected(def, opt.only)) continue;
    CriterionResult r{def.number, def.slug, def.title, false, 0, def.limit_seconds, {}};
    detail::Ledger ledger;
    const auto start = std::chrono::steady_clock::now();
    try {
      def.run(opt, ledger);
      r.checks_passed = ledger.ok();
      r.detail = ledger.summary();
    } catch (const std::exception& e) {
      r.checks_passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace protoalg
