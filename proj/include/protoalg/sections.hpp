#pragma once

// Conditions decided through the sections theta_b = theta(-, ..., -, b) rather
// than through identity evaluation.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/check.hpp"
#include "protoalg/error.hpp"
#include "protoalg/suites.hpp"
#include "protoalg/term.hpp"

namespace protoalg {

/// Default cap on the work of a section-based scan (cells visited).
inline constexpr std::uint64_t kDefaultSectionBudget = kDefaultExhaustiveBudget;

/// theta_b as a flat table over A^n, one per b.
class Sections {
public:
  Sections(const FiniteAlgebra& alg, std::uint64_t budget = kDefaultSectionBudget)
      : n_(theta_parameter(alg)), m_(alg.carrier_size()) {
    auto cells = checked_pow(m_, n_, budget);
    if (!cells) throw BudgetExceeded("sections of size " + std::to_string(m_) + "^" + std::to_string(n_) + " exceed the budget");
    cells_ = *cells;
    const OpTable& theta = alg.table(kTheta);
    tables_.assign(m_, std::vector<Element>(cells_));
    std::vector<Element> args(n_ + 1);
    for (Element b = 0; b < m_; ++b) {
      args[n_] = b;
      for (std::uint64_t x = 0; x < cells_; ++x) {
        unflatten(x, m_, std::span<Element>(args.data(), n_));
        tables_[b][x] = theta(args);
      }
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t carrier() const noexcept { return m_; }
  std::uint64_t cells() const noexcept { return cells_; }
  const std::vector<Element>& section(Element b) const { return tables_[b]; }

private:
  std::size_t n_;
  std::size_t m_;
  std::uint64_t cells_ = 0;
  std::vector<std::vector<Element>> tables_;
};

/// 2-associativity decided as "b -> theta_b preserves theta" in Map(A^n, A):
/// for every (b1..bn, c), the composite theta_c o (theta_b1, ..., theta_bn)
/// must equal theta_{theta(b1..bn,c)} pointwise.
///
/// Independent of check_identity; the reported counterexample is still the
/// lexicographically first (a1..an, b1..bn, c) so both routes can be compared.
inline CheckReport check_2assoc_via_sections(const FiniteAlgebra& alg, std::uint64_t budget = kDefaultSectionBudget) {
  Sections sec(alg, budget);
  const std::size_t n = sec.n(), m = sec.carrier();
  const std::uint64_t cells = sec.cells();
  const OpTable& theta = alg.table(kTheta);
  auto outer = checked_pow(m, n + 1, budget);
  if (!outer || !checked_pow(m, 2 * n + 1, budget)) throw BudgetExceeded("section composition exceeds the budget");

  CheckReport report;
  report.identity = "2assoc";
  std::optional<std::vector<Element>> best;
  std::vector<Element> bc(n + 1), x(n), inner(n);
  for (std::uint64_t idx = 0; idx < *outer; ++idx) {
    unflatten(idx, m, bc);
    const Element target = theta(bc);
    const auto& lhs_map = sec.section(target);
    const auto& outer_map = sec.section(bc[n]);
    for (std::uint64_t xi = 0; xi < cells; ++xi) {
      ++report.tuples_checked;
      for (std::size_t i = 0; i < n; ++i) inner[i] = sec.section(bc[i])[xi];
      const Element composite = outer_map[flat_index(m, inner)];
      if (composite != lhs_map[xi]) {
        unflatten(xi, m, x);
        std::vector<Element> cand(x);
        cand.insert(cand.end(), bc.begin(), bc.end());
        if (!best || cand < *best) best = std::move(cand);
        break;
      }
    }
  }
  const Identity id = identity_2assoc(n);
  if (best) {
    report.verdict = Verdict::Fail;
    report.counterexample = Assignment{id.variables, *best};
  } else {
    report.verdict = Verdict::Pass;
  }
  return report;
}

/// The four strictness conditions, each decided by its own scan.
struct StrictnessReport {
  bool sections_bijective = false;      // every theta_b : A^n -> A is a bijection
  bool unique_preimages = false;        // theta(x1..xn, b) = a has exactly one solution for all a, b
  bool alpha_system_solvable = false;   // alpha_i(x, b) = a_i has exactly one solution x for all b, a_1..a_n
  bool strictness_identity = false;     // alpha_i(theta(a1..an, b), b) = a_i holds
  CheckReport identity_report;

  bool agree() const noexcept {
    return sections_bijective == unique_preimages && unique_preimages == alpha_system_solvable &&
           alpha_system_solvable == strictness_identity;
  }
  bool strict() const noexcept { return agree() && sections_bijective; }
};

inline StrictnessReport check_strict_equivalence(const FiniteAlgebra& alg, std::uint64_t budget = kDefaultSectionBudget) {
  const std::size_t n = theta_parameter(alg);
  if (!has_standard_signature(alg, n))
    throw PreconditionFailed("strictness needs the signature theta/" + std::to_string(n + 1) + ", alpha_i, e_i");
  const std::size_t m = alg.carrier_size();
  StrictnessReport out;

  {
    // Bijectivity: a map A^n -> A can only be bijective when |A^n| = |A|.
    Sections sec(alg, budget);
    bool ok = sec.cells() == m;
    for (Element b = 0; ok && b < m; ++b) {
      std::vector<bool> hit(m, false);
      for (Element v : sec.section(b)) {
        if (hit[v]) {
          ok = false;
          break;
        }
        hit[v] = true;
      }
    }
    out.sections_bijective = ok;
  }

  {
    // Count solutions of theta(x, b) = a directly from theta.
    const OpTable& theta = alg.table(kTheta);
    auto cells = checked_pow(m, n, budget);
    if (!cells) throw BudgetExceeded("strictness scan exceeds the budget");
    std::vector<Element> args(n + 1);
    bool ok = true;
    for (Element b = 0; ok && b < m; ++b) {
      std::vector<std::uint64_t> count(m, 0);
      args[n] = b;
      for (std::uint64_t x = 0; x < *cells; ++x) {
        unflatten(x, m, std::span<Element>(args.data(), n));
        ++count[theta(args)];
      }
      for (auto c : count)
        if (c != 1) ok = false;
    }
    out.unique_preimages = ok;
  }

  {
    // For each b, x -> (alpha_1(x,b), ..., alpha_n(x,b)) must hit every tuple of A^n exactly once.
    auto targets = checked_pow(m, n, budget);
    if (!targets) throw BudgetExceeded("strictness scan exceeds the budget");
    std::vector<const OpTable*> alphas;
    for (std::size_t i = 1; i <= n; ++i) alphas.push_back(&alg.table(alpha_name(i)));
    bool ok = true;
    std::vector<Element> image(n);
    for (Element b = 0; ok && b < m; ++b) {
      std::vector<std::uint64_t> count(*targets, 0);
      for (Element x = 0; x < m; ++x) {
        for (std::size_t i = 0; i < n; ++i) {
          const Element xb[2] = {x, b};
          image[i] = (*alphas[i])(xb);
        }
        ++count[flat_index(m, image)];
      }
      for (auto c : count)
        if (c != 1) ok = false;
    }
    out.alpha_system_solvable = ok;
  }

  {
    out.strictness_identity = true;
    for (const auto& id : identity_strictness(n)) {
      CheckReport r = check_identity(alg, id);
      out.identity_report = r;
      if (!r.passed()) {
        out.strictness_identity = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace protoalg
