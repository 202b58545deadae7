#pragma once

// Groups carried by 2-associative semi-abelian algebras, the Mal'cev term of a
// protomodular theta, and the correspondence with n-enriched groups.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/check.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/error.hpp"
#include "protoalg/structures.hpp"
#include "protoalg/suites.hpp"

namespace protoalg {

/// Cayley table of a group on {0..m-1}.
struct GroupTable {
  std::size_t carrier = 0;
  std::vector<Element> product;
  Element unit = 0;
  std::vector<Element> inverse;

  Element mul(Element a, Element b) const { return product[a * carrier + b]; }
  bool operator==(const GroupTable&) const = default;
};

struct DerivedGroup {
  GroupTable group;
  /// FNV-1a over the carrier, tables and constants of the source algebra.
  std::uint64_t source_hash = 0;
};

struct EnrichedGroup {
  std::size_t n = 1;
  GroupTable group;
  std::vector<Element> gamma;               // m^n entries, row-major
  std::vector<std::vector<Element>> alphas;  // n tables of m*m entries

  bool operator==(const EnrichedGroup&) const = default;
};

/// A failed law together with the assignment that breaks it.
struct LawViolation {
  std::string law;
  std::string witness;
};

inline std::string to_string(const LawViolation& v) { return v.law + " fails at " + v.witness; }

inline std::uint64_t structure_hash(const FiniteAlgebra& alg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  auto mix_text = [&](const std::string& s) {
    for (char c : s) mix(static_cast<unsigned char>(c));
  };
  mix(alg.carrier_size());
  for (const auto& op : alg.signature().ops()) {
    mix_text(op.name);
    mix(op.arity);
    const OpTable& t = alg.table(op.name);
    auto cells = checked_pow(alg.carrier_size(), op.arity);
    for (std::uint64_t i = 0; i < *cells; ++i) mix(t.at_flat(i));
  }
  for (const auto& c : alg.signature().constants()) {
    mix_text(c);
    mix(alg.constant(c));
  }
  return h;
}

namespace detail {

inline std::string tuple_text(std::initializer_list<Element> xs) {
  std::string s = "(";
  bool first = true;
  for (Element x : xs) {
    s += (first ? "" : ",") + std::to_string(x);
    first = false;
  }
  return s + ")";
}

inline std::string tuple_text(const std::vector<Element>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + ")";
}

inline void require_passes(const FiniteAlgebra& alg, const std::vector<Identity>& ids, const std::string& what) {
  for (const auto& id : ids) {
    CheckReport r = check_identity(alg, id);
    if (!r.passed()) throw PreconditionFailed("not " + what + ": " + format_report(r));
  }
}

inline std::size_t require_semiabelian_2assoc(const FiniteAlgebra& alg) {
  const std::size_t n = theta_parameter(alg);
  if (!has_standard_signature(alg, n))
    throw PreconditionFailed("needs the signature theta/" + std::to_string(n + 1) + ", alpha_i/2, e_i");
  require_passes(alg, suite_semiabelian(n).identities, "semi-abelian");
  require_passes(alg, {identity_2assoc(n)}, "2-associative");
  return n;
}

inline std::size_t require_protomodular(const FiniteAlgebra& alg) {
  const std::size_t n = theta_parameter(alg);
  if (!has_standard_signature(alg, n))
    throw PreconditionFailed("needs the signature theta/" + std::to_string(n + 1) + ", alpha_i/2, e_i");
  require_passes(alg, suite_protomodular(n).identities, "protomodular");
  return n;
}

/// theta(a, ..., a, b) with n copies of a.
inline Element diagonal_theta(const OpTable& theta, std::size_t n, Element a, Element b) {
  std::vector<Element> args(n, a);
  args.push_back(b);
  return theta(args);
}

inline Element alpha_at(const OpTable& alpha, Element a, Element b) {
  const Element ab[2] = {a, b};
  return alpha(ab);
}

}  // namespace detail

/// a * b = theta(a, ..., a, b).
inline std::vector<Element> product_from_theta(const FiniteAlgebra& alg) {
  const std::size_t n = theta_parameter(alg);
  const std::size_t m = alg.carrier_size();
  const OpTable& theta = alg.table(kTheta);
  std::vector<Element> product(m * m);
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) product[a * m + b] = detail::diagonal_theta(theta, n, a, b);
  return product;
}

/// First failing group axiom of a binary table. When `unit` is given it must be
/// the two-sided unit; otherwise one is searched for.
inline std::optional<LawViolation> group_axiom_violation(std::size_t m, const std::vector<Element>& product,
                                                         std::optional<Element> unit = std::nullopt) {
  detail::check_binary_table(m, product, "product");
  if (auto w = associativity_violation(m, product))
    return LawViolation{"associativity", detail::tuple_text({(*w)[0], (*w)[1], (*w)[2]})};
  auto mul = [&](Element a, Element b) { return product[a * m + b]; };
  if (unit) {
    for (Element x = 0; x < m; ++x)
      if (mul(*unit, x) != x || mul(x, *unit) != x)
        return LawViolation{"unit " + std::to_string(*unit), "x=" + std::to_string(x)};
  } else {
    unit = find_two_sided_unit(m, product);
    if (!unit) {
      std::string witness;
      for (Element u = 0; u < m; ++u)
        for (Element x = 0; x < m; ++x)
          if (mul(u, x) != x || mul(x, u) != x) {
            witness += (u ? "; u=" : "u=") + std::to_string(u) + " x=" + std::to_string(x);
            break;
          }
      return LawViolation{"two-sided unit", witness};
    }
  }
  for (Element a = 0; a < m; ++a) {
    bool found = false;
    for (Element b = 0; b < m && !found; ++b) found = mul(a, b) == *unit && mul(b, a) == *unit;
    if (!found) return LawViolation{"inverse", "a=" + std::to_string(a)};
  }
  return std::nullopt;
}

/// Group carried by a 2-associative semi-abelian algebra: a*b = theta(a..a, b), unit e,
/// b^-1 = theta(alpha_1(e, d), ..., alpha_n(e, d), b) with d = theta(b, ..., b).
///
/// Preconditions are re-verified. Group axioms and each inverse (against the
/// unique group-theoretic one) are checked; a mismatch throws VerificationFailure.
inline DerivedGroup derive_group(const FiniteAlgebra& alg) {
  const std::size_t n = detail::require_semiabelian_2assoc(alg);
  const std::size_t m = alg.carrier_size();
  const OpTable& theta = alg.table(kTheta);
  DerivedGroup out;
  out.source_hash = structure_hash(alg);
  GroupTable& g = out.group;
  g.carrier = m;
  g.unit = alg.constant(unit_name(1));
  g.product = product_from_theta(alg);
  if (auto v = group_axiom_violation(m, g.product, g.unit))
    throw VerificationFailure("derived product is not a group: " + to_string(*v));
  g.inverse.resize(m);
  std::vector<Element> args(n + 1);
  for (Element b = 0; b < m; ++b) {
    const Element d = detail::diagonal_theta(theta, n, b, b);
    for (std::size_t i = 1; i <= n; ++i) args[i - 1] = detail::alpha_at(alg.table(alpha_name(i)), g.unit, d);
    args[n] = b;
    g.inverse[b] = theta(args);
  }
  for (Element b = 0; b < m; ++b) {
    std::optional<Element> expected;
    for (Element x = 0; x < m; ++x)
      if (g.mul(x, b) == g.unit && g.mul(b, x) == g.unit) {
        expected = x;
        break;
      }
    if (!expected || *expected != g.inverse[b])
      throw VerificationFailure("inverse formula gives " + std::to_string(g.inverse[b]) + " for b=" +
                                std::to_string(b) + " but the group inverse is " +
                                (expected ? std::to_string(*expected) : std::string("missing")));
  }
  return out;
}

/// Unique-solvability facts of a 2-associative semi-abelian algebra, one report each:
/// `power_fixes_unit` theta(a..a, e) = a; `unique_left_solution` exactly one a with
/// theta(a..a, b) = c per (b, c); `unique_right_solution` exactly one b per (a, c).
inline std::vector<CheckReport> check_unique_solvability(const FiniteAlgebra& alg) {
  const std::size_t n = detail::require_semiabelian_2assoc(alg);
  const std::size_t m = alg.carrier_size();
  const OpTable& theta = alg.table(kTheta);
  std::vector<CheckReport> out;

  std::vector<Term> diag(n, var("a"));
  diag.push_back(cst(unit_name(1)));
  out.push_back(check_identity(alg, {"power_fixes_unit", {"a"}, app(std::string(kTheta), diag), var("a")}));

  auto scan = [&](const std::string& name, bool solve_first, const std::string& fixed, const std::string& free) {
    CheckReport r;
    r.identity = name;
    r.verdict = Verdict::Pass;
    for (Element p = 0; p < m && r.passed(); ++p)
      for (Element c = 0; c < m && r.passed(); ++c) {
        std::uint64_t count = 0;
        for (Element x = 0; x < m; ++x) {
          ++r.tuples_checked;
          Element v = solve_first ? detail::diagonal_theta(theta, n, x, p) : detail::diagonal_theta(theta, n, p, x);
          if (v == c) ++count;
        }
        if (count != 1) {
          r.verdict = Verdict::Fail;
          r.counterexample = Assignment{{fixed, "c"}, {p, c}};
          r.detail = std::to_string(count) + " solutions for " + free;
        }
      }
    out.push_back(std::move(r));
  };
  scan("unique_left_solution", true, "b", "a");
  scan("unique_right_solution", false, "a", "b");
  return out;
}

struct MalcevResult {
  /// Signature {mu/3}; mu(a,b,c) = theta(alpha_1(a,b), ..., alpha_n(a,b), c).
  FiniteAlgebra mu;
  std::vector<CheckReport> laws;
  CheckReport associativity;

  bool laws_pass() const { return all_passed(laws); }
};

inline MalcevResult malcev_term(const FiniteAlgebra& alg) {
  const std::size_t n = detail::require_protomodular(alg);
  const std::size_t m = alg.carrier_size();
  if (!checked_pow(m, 3, kMaterializeLimit)) throw BudgetExceeded("mu table too large");
  const OpTable& theta = alg.table(kTheta);
  std::vector<const OpTable*> alphas;
  for (std::size_t i = 1; i <= n; ++i) alphas.push_back(&alg.table(alpha_name(i)));
  std::vector<Element> table(m * m * m), args(n + 1);
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < n; ++i) args[i] = detail::alpha_at(*alphas[i], a, b);
      for (Element c = 0; c < m; ++c) {
        args[n] = c;
        table[(a * m + b) * m + c] = theta(args);
      }
    }
  Signature sig;
  sig.add_op("mu", 3);
  FiniteAlgebra mu(alg.name() + "_mu", sig, m);
  mu.set_table("mu", std::move(table));
  auto laws = check_all(mu, identities_malcev());
  auto assoc = check_identity(mu, identity_malcev_assoc());
  return {std::move(mu), std::move(laws), std::move(assoc)};
}

struct ExpandedMalcevReport {
  CheckReport expanded;      // on theta and the alphas
  CheckReport materialized;  // associativity of the materialized mu
  bool agree() const { return expanded.passed() == materialized.passed(); }
};

inline ExpandedMalcevReport check_expanded_malcev_assoc(const FiniteAlgebra& alg) {
  const std::size_t n = detail::require_protomodular(alg);
  ExpandedMalcevReport out{check_identity(alg, identity_expanded_malcev_assoc(n)), malcev_term(alg).associativity};
  return out;
}

/// The a with theta(a, ..., a, b) = c given by a = theta(alpha_1(c, d), ..., alpha_n(c, d), b),
/// d = theta(b, ..., b). Verified directly and against a scan of the carrier.
inline Element solve_power_equation(const FiniteAlgebra& alg, Element b, Element c) {
  const std::size_t n = detail::require_protomodular(alg);
  detail::require_passes(alg, {identity_2assoc(n)}, "2-associative");
  const std::size_t m = alg.carrier_size();
  if (b >= m || c >= m) throw InvalidArgument("element outside the carrier");
  const OpTable& theta = alg.table(kTheta);
  const Element d = detail::diagonal_theta(theta, n, b, b);
  std::vector<Element> args(n + 1);
  for (std::size_t i = 1; i <= n; ++i) args[i - 1] = detail::alpha_at(alg.table(alpha_name(i)), c, d);
  args[n] = b;
  const Element a = theta(args);
  if (detail::diagonal_theta(theta, n, a, b) != c)
    throw VerificationFailure("formula gives a=" + std::to_string(a) + " but theta(a..a," + std::to_string(b) +
                              ") != " + std::to_string(c));
  bool seen = false;
  for (Element x = 0; x < m && !seen; ++x) seen = x == a && detail::diagonal_theta(theta, n, x, b) == c;
  if (!seen) throw VerificationFailure("brute-force scan disagrees with the formula");
  return a;
}

/// First violated enriched-group law, with the breaking assignment.
inline std::optional<LawViolation> validate_enriched(const EnrichedGroup& eg) {
  const std::size_t m = eg.group.carrier;
  const std::size_t n = eg.n;
  if (n == 0) return LawViolation{"shape", "n must be >= 1"};
  if (m == 0) return LawViolation{"shape", "carrier must be positive"};
  auto cells = checked_pow(m, n, kMaterializeLimit);
  if (!cells || eg.gamma.size() != *cells) return LawViolation{"shape", "gamma must have m^n entries"};
  if (eg.alphas.size() != n) return LawViolation{"shape", "expected n alpha tables"};
  for (const auto& t : eg.alphas)
    if (t.size() != m * m) return LawViolation{"shape", "alpha tables must have m*m entries"};
  if (eg.group.product.size() != m * m || eg.group.inverse.size() != m || eg.group.unit >= m)
    return LawViolation{"shape", "group table sizes"};
  for (Element v : eg.gamma)
    if (v >= m) return LawViolation{"shape", "gamma entry outside the carrier"};
  for (const auto& t : eg.alphas)
    for (Element v : t)
      if (v >= m) return LawViolation{"shape", "alpha entry outside the carrier"};
  for (Element v : eg.group.inverse)
    if (v >= m) return LawViolation{"shape", "inverse entry outside the carrier"};
  try {
    if (auto v = group_axiom_violation(m, eg.group.product, eg.group.unit)) return v;
  } catch (const InvalidArgument& e) {
    return LawViolation{"shape", e.what()};
  }
  const GroupTable& g = eg.group;
  for (Element a = 0; a < m; ++a)
    if (g.mul(a, g.inverse[a]) != g.unit || g.mul(g.inverse[a], a) != g.unit)
      return LawViolation{"inverse table", "a=" + std::to_string(a)};

  std::vector<Element> x(n);
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < n; ++i) x[i] = eg.alphas[i][a * m + b];
      if (g.mul(eg.gamma[flat_index(m, x)], b) != a)
        return LawViolation{"gamma(alpha(a,b))*b = a", detail::tuple_text({a, b})};
    }
  for (std::size_t i = 0; i < n; ++i)
    for (Element a = 0; a < m; ++a)
      if (eg.alphas[i][a * m + a] != g.unit)
        return LawViolation{alpha_name(i + 1) + "(a,a) = e", "a=" + std::to_string(a)};

  std::vector<Element> y(n), mixed(n);
  for (std::uint64_t ai = 0; ai < *cells; ++ai) {
    unflatten(ai, m, x);
    const Element ga = eg.gamma[ai];
    for (std::uint64_t bi = 0; bi < *cells; ++bi) {
      unflatten(bi, m, y);
      for (std::size_t i = 0; i < n; ++i) mixed[i] = g.mul(ga, y[i]);
      if (g.mul(ga, eg.gamma[bi]) != eg.gamma[flat_index(m, mixed)]) {
        std::vector<Element> both(x);
        both.insert(both.end(), y.begin(), y.end());
        return LawViolation{"distributivity", detail::tuple_text(both)};
      }
    }
  }
  return std::nullopt;
}

/// gamma(a) = theta(a, e); alphas copied; group from derive_group.
inline EnrichedGroup to_enriched(const FiniteAlgebra& alg) {
  DerivedGroup dg = derive_group(alg);
  const std::size_t n = theta_parameter(alg);
  const std::size_t m = alg.carrier_size();
  EnrichedGroup eg;
  eg.n = n;
  eg.group = std::move(dg.group);
  auto cells = checked_pow(m, n, kMaterializeLimit);
  if (!cells) throw BudgetExceeded("gamma table too large");
  eg.gamma.resize(*cells);
  const OpTable& theta = alg.table(kTheta);
  std::vector<Element> args(n + 1);
  for (std::uint64_t i = 0; i < *cells; ++i) {
    unflatten(i, m, std::span<Element>(args.data(), n));
    args[n] = eg.group.unit;
    eg.gamma[i] = theta(args);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<Element> t(m * m);
    for (Element a = 0; a < m; ++a)
      for (Element b = 0; b < m; ++b) t[a * m + b] = detail::alpha_at(alg.table(alpha_name(i)), a, b);
    eg.alphas.push_back(std::move(t));
  }
  if (auto v = validate_enriched(eg)) throw VerificationFailure("enriched group law broken: " + to_string(*v));
  return eg;
}

/// theta(a, b) = gamma(a) * b, alphas copied, every e_i the unit.
inline FiniteAlgebra from_enriched(const EnrichedGroup& eg, std::string name = "enriched") {
  if (auto v = validate_enriched(eg)) throw PreconditionFailed("not an enriched group: " + to_string(*v));
  const std::size_t n = eg.n, m = eg.group.carrier;
  FiniteAlgebra alg(std::move(name), standard_signature(n), m);
  std::vector<Element> theta(eg.gamma.size() * m);
  for (std::size_t ai = 0; ai < eg.gamma.size(); ++ai)
    for (Element b = 0; b < m; ++b) theta[ai * m + b] = eg.group.mul(eg.gamma[ai], b);
  alg.set_table(kTheta, std::move(theta));
  for (std::size_t i = 1; i <= n; ++i) {
    alg.set_table(alpha_name(i), eg.alphas[i - 1]);
    alg.set_constant(unit_name(i), eg.group.unit);
  }
  return alg;
}

/// Number of n-enriched groups on {0..m-1}, enumerated directly from the
/// enriched-group laws: group tables, then gamma tables, then the alphas counted
/// per (a, b) as the tuples x with gamma(x) = a * b^-1 (x = e..e forced when a = b).
inline std::uint64_t count_enriched_groups(std::size_t m, std::size_t n, std::uint64_t budget = kDefaultExhaustiveBudget) {
  if (m == 0) throw InvalidArgument("carrier size must be positive");
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  auto group_tables = checked_pow(m, m * m, budget);
  auto cells = checked_pow(m, n, budget);
  if (!group_tables || !cells) throw BudgetExceeded("enriched-group enumeration exceeds the budget");
  auto gammas = checked_pow(m, *cells, budget);
  if (!gammas || *group_tables > budget / *gammas)
    throw BudgetExceeded("enriched-group enumeration exceeds the budget");

  std::uint64_t total = 0;
  std::vector<Element> product(m * m), gamma(*cells), x(n), y(n), mixed(n);
  for (std::uint64_t pt = 0; pt < *group_tables; ++pt) {
    unflatten(pt, m, product);
    if (associativity_violation(m, product)) continue;
    auto unit = find_two_sided_unit(m, product);
    if (!unit) continue;
    std::vector<Element> inverse(m);
    bool group = true;
    for (Element a = 0; a < m && group; ++a) {
      group = false;
      for (Element b = 0; b < m && !group; ++b)
        if (product[a * m + b] == *unit && product[b * m + a] == *unit) {
          inverse[a] = b;
          group = true;
        }
    }
    if (!group) continue;
    auto mul = [&](Element a, Element b) { return product[a * m + b]; };
    std::vector<Element> units(n, *unit);
    const std::uint64_t unit_index = flat_index(m, units);
    for (std::uint64_t gt = 0; gt < *gammas; ++gt) {
      unflatten(gt, m, gamma);
      if (gamma[unit_index] != *unit) continue;
      bool distributive = true;
      for (std::uint64_t ai = 0; ai < *cells && distributive; ++ai) {
        unflatten(ai, m, x);
        for (std::uint64_t bi = 0; bi < *cells && distributive; ++bi) {
          unflatten(bi, m, y);
          for (std::size_t i = 0; i < n; ++i) mixed[i] = mul(gamma[ai], y[i]);
          distributive = mul(gamma[ai], gamma[bi]) == gamma[flat_index(m, mixed)];
        }
      }
      if (!distributive) continue;
      std::vector<std::uint64_t> fibre(m, 0);
      for (Element v : gamma) ++fibre[v];
      std::uint64_t ways = 1;
      for (Element a = 0; a < m && ways; ++a)
        for (Element b = 0; b < m && ways; ++b)
          if (a != b) ways *= fibre[mul(a, inverse[b])];
      total += ways;
    }
  }
  return total;
}

/// Group as an algebra with mul/2, inv/1 and e.
inline FiniteAlgebra group_algebra(const GroupTable& g, std::string name = "group") {
  Signature sig;
  sig.add_op("mul", 2).add_op("inv", 1).add_constant("e");
  FiniteAlgebra alg(std::move(name), sig, g.carrier);
  alg.set_table("mul", g.product);
  alg.set_table("inv", g.inverse);
  alg.set_constant("e", g.unit);
  return alg;
}

/// Enriched group as an algebra with mul/2, inv/1, e, gamma/n and alpha_i/2.
inline FiniteAlgebra enriched_algebra(const EnrichedGroup& eg, std::string name = "enriched_group") {
  Signature sig;
  sig.add_op("mul", 2).add_op("inv", 1).add_op("gamma", eg.n);
  for (std::size_t i = 1; i <= eg.n; ++i) sig.add_op(alpha_name(i), 2);
  sig.add_constant("e");
  FiniteAlgebra alg(std::move(name), sig, eg.group.carrier);
  alg.set_table("mul", eg.group.product);
  alg.set_table("inv", eg.group.inverse);
  alg.set_table("gamma", eg.gamma);
  for (std::size_t i = 1; i <= eg.n; ++i) alg.set_table(alpha_name(i), eg.alphas[i - 1]);
  alg.set_constant("e", eg.group.unit);
  return alg;
}

/// Inverse of enriched_algebra; the laws are not checked here.
inline EnrichedGroup enriched_from_algebra(const FiniteAlgebra& alg) {
  const auto gamma_arity = alg.signature().arity_of("gamma");
  if (!gamma_arity || alg.signature().arity_of("mul") != 2 || alg.signature().arity_of("inv") != 1 ||
      !alg.signature().has_constant("e"))
    throw InvalidArgument("enriched group needs mul/2, inv/1, gamma/n and constant e");
  EnrichedGroup eg;
  eg.n = *gamma_arity;
  eg.group.carrier = alg.carrier_size();
  eg.group.product = alg.table("mul").values();
  eg.group.inverse = alg.table("inv").values();
  eg.group.unit = alg.constant("e");
  eg.gamma = alg.table("gamma").values();
  for (std::size_t i = 1; i <= eg.n; ++i) {
    if (alg.signature().arity_of(alpha_name(i)) != 2) throw InvalidArgument("missing " + alpha_name(i) + "/2");
    eg.alphas.push_back(alg.table(alpha_name(i)).values());
  }
  return eg;
}

}  // namespace protoalg
