#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"
#include "protoalg/term.hpp"

namespace protoalg {

enum class Verdict { Pass, Fail, SampledPass };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::SampledPass: return "sampled-pass";
  }
  return "?";
}

/// Outcome of checking one identity (or one named condition) on one algebra.
///
/// A failing report always carries a counterexample when the check is an
/// identity; `detail` holds free-form context for table-scan conditions.
struct CheckReport {
  Verdict verdict = Verdict::Pass;
  std::string identity;
  std::optional<Assignment> counterexample;
  std::uint64_t tuples_checked = 0;
  std::optional<std::uint64_t> seed;
  std::string detail;

  bool passed() const noexcept { return verdict != Verdict::Fail; }
};

/// Default cap on m^k assignment tuples for exhaustive checking.
inline constexpr std::uint64_t kDefaultExhaustiveBudget = 100'000'000;

struct Exhaustive {
  std::uint64_t budget = kDefaultExhaustiveBudget;
  /// Worker count; the verdict and counterexample do not depend on it.
  unsigned threads = 1;
};

/// Uniform random assignments from std::mt19937_64 seeded with `seed`.
/// Element i of a tuple is (draw * m) >> 64, so streams are identical across platforms.
struct Sampled {
  std::uint64_t count = 100'000;
  std::uint64_t seed = 0x5eed;
  /// Tuples checked before the random ones, in the identity's variable order.
  std::vector<std::vector<Element>> include;
};

using CheckMode = std::variant<Exhaustive, Sampled>;

namespace detail {

struct ScanResult {
  std::optional<std::uint64_t> first_failure;  // flat tuple index
};

inline ScanResult scan_range(const CompiledIdentity& ci, std::size_t m, std::uint64_t begin, std::uint64_t end) {
  std::vector<Element> values(ci.variable_count());
  std::vector<Element> stack(ci.stack_size() + 1);
  unflatten(begin, m, values);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    auto [l, r] = ci.evaluate(values, stack);
    if (l != r) return {idx};
    for (std::size_t i = values.size(); i-- > 0;) {
      if (++values[i] < m) break;
      values[i] = 0;
    }
  }
  return {};
}

inline Element draw(std::mt19937_64& rng, std::size_t m) {
  return static_cast<Element>((static_cast<unsigned __int128>(rng()) * m) >> 64);
}

}  // namespace detail

/// Checks `id` on `alg`.
///
/// Exhaustive mode visits assignments in lexicographic order of the declared
/// variables and reports the first failing one. It throws BudgetExceeded when
/// m^k exceeds the budget. Sampled mode is reproducible from its seed.
inline CheckReport check_identity(const FiniteAlgebra& alg, const Identity& id, const CheckMode& mode = Exhaustive{}) {
  CompiledIdentity ci(alg, id);
  const std::size_t m = alg.carrier_size();
  const std::size_t k = id.variables.size();
  CheckReport report;
  report.identity = id.name;

  auto fail_at = [&](std::vector<Element> values) {
    report.verdict = Verdict::Fail;
    report.counterexample = Assignment{id.variables, std::move(values)};
  };

  if (const auto* ex = std::get_if<Exhaustive>(&mode)) {
    auto total = checked_pow(m, k, ex->budget);
    if (!total)
      throw BudgetExceeded("identity '" + id.name + "' needs " + std::to_string(m) + "^" + std::to_string(k) +
                           " tuples, above the exhaustive budget of " + std::to_string(ex->budget));
    std::optional<std::uint64_t> failure;
    const unsigned workers = std::max(1u, ex->threads);
    if (workers == 1 || *total < 4096) {
      failure = detail::scan_range(ci, m, 0, *total).first_failure;
    } else {
      std::vector<std::optional<std::uint64_t>> results(workers);
      std::vector<std::thread> pool;
      const std::uint64_t chunk = (*total + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t begin = std::min<std::uint64_t>(*total, w * chunk);
        std::uint64_t end = std::min<std::uint64_t>(*total, begin + chunk);
        pool.emplace_back([&, w, begin, end] { results[w] = detail::scan_range(ci, m, begin, end).first_failure; });
      }
      for (auto& t : pool) t.join();
      for (const auto& r : results)
        if (r && (!failure || *r < *failure)) failure = r;
    }
    if (failure) {
      std::vector<Element> values(k);
      unflatten(*failure, m, values);
      fail_at(std::move(values));
      report.tuples_checked = *failure + 1;
    } else {
      report.verdict = Verdict::Pass;
      report.tuples_checked = *total;
    }
    return report;
  }

  const auto& sm = std::get<Sampled>(mode);
  report.seed = sm.seed;
  std::vector<Element> stack(ci.stack_size() + 1);
  for (const auto& tuple : sm.include) {
    if (tuple.size() != k) throw InvalidArgument("included tuple has the wrong number of values");
    for (Element v : tuple)
      if (v >= m) throw InvalidArgument("included tuple has a value outside the carrier");
    ++report.tuples_checked;
    auto [l, r] = ci.evaluate(tuple, stack);
    if (l != r) {
      fail_at(tuple);
      return report;
    }
  }
  std::mt19937_64 rng(sm.seed);
  std::vector<Element> values(k);
  for (std::uint64_t s = 0; s < sm.count; ++s) {
    for (auto& v : values) v = detail::draw(rng, m);
    ++report.tuples_checked;
    auto [l, r] = ci.evaluate(values, stack);
    if (l != r) {
      fail_at(values);
      return report;
    }
  }
  report.verdict = Verdict::SampledPass;
  return report;
}

/// Checks every identity; stops at nothing, one report per identity.
inline std::vector<CheckReport> check_all(const FiniteAlgebra& alg, const std::vector<Identity>& ids,
                                          const CheckMode& mode = Exhaustive{}) {
  std::vector<CheckReport> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(check_identity(alg, id, mode));
  return out;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
}

/// Confirms the structural invariants of `alg` and reports the first violation.
inline CheckReport validate_algebra(const FiniteAlgebra& alg) {
  CheckReport report;
  report.identity = "validate:" + alg.name();
  auto fail = [&](std::string why) {
    report.verdict = Verdict::Fail;
    report.detail = std::move(why);
    return report;
  };
  const std::size_t m = alg.carrier_size();
  if (m == 0) return fail("carrier size must be positive");
  for (const auto& [name, table] : alg.tables())
    if (!alg.signature().has_op(name)) return fail("table for unknown symbol '" + name + "'");
  for (const auto& [name, value] : alg.constants())
    if (!alg.signature().has_constant(name)) return fail("value for unknown constant '" + name + "'");
  for (const auto& op : alg.signature().ops()) {
    const OpTable* t = alg.find_table(op.name);
    if (!t) return fail("symbol '" + op.name + "' uninterpreted");
    if (t->arity() != op.arity) return fail("symbol '" + op.name + "' table has the wrong arity");
    if (t->carrier() != m) return fail("symbol '" + op.name + "' table built for a different carrier");
    if (!t->materialized()) continue;
    auto cells = checked_pow(m, op.arity);
    const auto& values = t->values();
    if (!cells || values.size() != *cells)
      return fail("symbol '" + op.name + "' table has " + std::to_string(values.size()) + " entries, expected " +
                  (cells ? std::to_string(*cells) : std::string("too many")));
    for (std::size_t i = 0; i < values.size(); ++i) {
      report.tuples_checked++;
      if (values[i] >= m)
        return fail("symbol '" + op.name + "' entry " + std::to_string(i) + " = " + std::to_string(values[i]) +
                    " is outside the carrier");
    }
  }
  for (const auto& c : alg.signature().constants()) {
    auto v = alg.find_constant(c);
    if (!v) return fail("symbol '" + c + "' uninterpreted");
    if (*v >= m) return fail("constant '" + c + "' = " + std::to_string(*v) + " is outside the carrier");
  }
  report.verdict = Verdict::Pass;
  return report;
}

/// `IDENTITY <name> PASS|FAIL [counterexample: v1=..,v2=..] tuples=<k> [seed=<s>]`; a failing
/// identity without variables shows `counterexample: (closed)`.
inline std::string format_report(const CheckReport& r) {
  std::ostringstream out;
  out << "IDENTITY " << r.identity << ' ' << (r.passed() ? "PASS" : "FAIL");
  if (r.counterexample)
    out << " counterexample: " << (r.counterexample->names.empty() ? "(closed)" : to_string(*r.counterexample));
  out << " tuples=" << r.tuples_checked;
  if (r.seed) out << " seed=" << *r.seed;
  if (!r.detail.empty()) out << " # " << r.detail;
  return out.str();
}

}  // namespace protoalg
