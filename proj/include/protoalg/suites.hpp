#pragma once

// Identity suites for the conditions on an (n+1)-ary theta with binary
// alpha_i and constants e_i. Every suite is plain data: Identity values that
// can be printed, diffed and checked like any identity read from a file.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"
#include "protoalg/term.hpp"

namespace protoalg {

struct IdentitySuite {
  std::string name;
  std::size_t n = 1;
  std::vector<Identity> identities;
};

namespace detail {

inline void require_n(std::size_t n) {
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
}

inline std::vector<std::string> numbered(std::string_view stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::string(stem) + std::to_string(i));
  return out;
}

inline std::vector<Term> vars_of(const std::vector<std::string>& names) {
  std::vector<Term> out;
  for (const auto& v : names) out.push_back(var(v));
  return out;
}

inline Term apply_with_last(std::string_view op, std::vector<Term> front, Term last) {
  front.push_back(std::move(last));
  return app(std::string(op), std::move(front));
}

/// theta(alpha1(x,y), ..., alphan(x,y), z): the Mal'cev term of a protomodular theta.
inline Term malcev_expansion(std::size_t n, const Term& x, const Term& y, const Term& z) {
  std::vector<Term> args;
  for (std::size_t i = 1; i <= n; ++i) args.push_back(app(alpha_name(i), {x, y}));
  return apply_with_last(kTheta, std::move(args), z);
}

inline std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// alpha_i(a,a) = e_i for each i, and theta(alpha1(a,b),...,alphan(a,b),b) = a.
inline IdentitySuite suite_protomodular(std::size_t n) {
  detail::require_n(n);
  IdentitySuite suite{"protomodular", n, {}};
  for (std::size_t i = 1; i <= n; ++i)
    suite.identities.push_back(
        {alpha_name(i) + "_diagonal", {"a"}, app(alpha_name(i), {var("a"), var("a")}), cst(unit_name(i))});
  suite.identities.push_back({"theta_recovers", {"a", "b"}, detail::malcev_expansion(n, var("a"), var("b"), var("b")), var("a")});
  return suite;
}

/// The protomodular suite plus the nullary identities e1 = e2, ..., e_{n-1} = e_n.
inline IdentitySuite suite_semiabelian(std::size_t n) {
  IdentitySuite suite = suite_protomodular(n);
  suite.name = "semiabelian";
  for (std::size_t i = 1; i < n; ++i)
    suite.identities.push_back(
        {"units_equal_" + std::to_string(i), {}, cst(unit_name(i)), cst(unit_name(i + 1))});
  return suite;
}

/// theta(a1..an, theta(b1..bn, c)) = theta(theta(a1..an,b1), ..., theta(a1..an,bn), c).
inline Identity identity_2assoc(std::size_t n, std::string_view op = kTheta) {
  detail::require_n(n);
  auto a = detail::numbered("a", n);
  auto b = detail::numbered("b", n);
  auto av = detail::vars_of(a);
  Term inner = detail::apply_with_last(op, detail::vars_of(b), var("c"));
  Term lhs = detail::apply_with_last(op, av, inner);
  std::vector<Term> sections;
  for (const auto& bi : b) sections.push_back(detail::apply_with_last(op, av, var(bi)));
  Term rhs = detail::apply_with_last(op, std::move(sections), var("c"));
  auto vars = detail::concat(detail::concat(a, b), {"c"});
  return {"2assoc", std::move(vars), std::move(lhs), std::move(rhs)};
}

/// Parenthesis-moving associativity. With x = (a1..an, b1..bn, c), the expression
/// E_p wraps x_p..x_{p+n} in the inner theta. The identities equate the original
/// E_{n+1} = theta(a1..an, theta(b1..bn, c)) with E_p for p = 1..n.
inline std::vector<Identity> identities_1assoc(std::size_t n, std::string_view op = kTheta) {
  detail::require_n(n);
  auto vars = detail::concat(detail::concat(detail::numbered("a", n), detail::numbered("b", n)), {"c"});
  auto xs = detail::vars_of(vars);
  auto expression = [&](std::size_t p) {  // p is 1-based
    std::vector<Term> outer(xs.begin(), xs.begin() + (p - 1));
    std::vector<Term> inner(xs.begin() + (p - 1), xs.begin() + (p - 1 + n + 1));
    outer.push_back(app(std::string(op), std::move(inner)));
    outer.insert(outer.end(), xs.begin() + (p - 1 + n + 1), xs.end());
    return app(std::string(op), std::move(outer));
  };
  std::vector<Identity> out;
  const Term original = expression(n + 1);
  for (std::size_t p = 1; p <= n; ++p)
    out.push_back({"1assoc_pos" + std::to_string(p), vars, original, expression(p)});
  return out;
}

/// alpha_i(theta(a1..an, b), b) = a_i for each i.
inline std::vector<Identity> identity_strictness(std::size_t n) {
  detail::require_n(n);
  auto a = detail::numbered("a", n);
  Term th = detail::apply_with_last(kTheta, detail::vars_of(a), var("b"));
  std::vector<Identity> out;
  for (std::size_t i = 1; i <= n; ++i)
    out.push_back({"strict_" + alpha_name(i), detail::concat(a, {"b"}), app(alpha_name(i), {th, var("b")}), var(a[i - 1])});
  return out;
}

/// theta(e1..en, a) = a.
inline Identity identity_left_unit(std::size_t n) {
  detail::require_n(n);
  std::vector<Term> units;
  for (std::size_t i = 1; i <= n; ++i) units.push_back(cst(unit_name(i)));
  return {"left_unit", {"a"}, detail::apply_with_last(kTheta, std::move(units), var("a")), var("a")};
}

/// theta(a, a, ..., a, b) = a.
inline Identity identity_diagonal_absorbs(std::size_t n) {
  detail::require_n(n);
  std::vector<Term> diag(n, var("a"));
  return {"diagonal_absorbs", {"a", "b"}, detail::apply_with_last(kTheta, std::move(diag), var("b")), var("a")};
}

/// theta(a1..an, b) = theta(theta(a1..an,e1), ..., theta(a1..an,en), b).
inline Identity identity_unit_decomposition(std::size_t n) {
  detail::require_n(n);
  auto a = detail::numbered("a", n);
  auto av = detail::vars_of(a);
  std::vector<Term> parts;
  for (std::size_t i = 1; i <= n; ++i) parts.push_back(detail::apply_with_last(kTheta, av, cst(unit_name(i))));
  return {"unit_decomposition", detail::concat(a, {"b"}), detail::apply_with_last(kTheta, av, var("b")),
          detail::apply_with_last(kTheta, std::move(parts), var("b"))};
}

/// Associativity of the Mal'cev term written out through theta and the alphas:
/// mu(a1,a2,mu(b1,b2,c)) = mu(mu(a1,a2,b1),b2,c) with mu(x,y,z) = theta(alpha(x,y)..., z).
inline Identity identity_expanded_malcev_assoc(std::size_t n) {
  detail::require_n(n);
  auto mu = [n](const Term& x, const Term& y, const Term& z) { return detail::malcev_expansion(n, x, y, z); };
  Term lhs = mu(var("a1"), var("a2"), mu(var("b1"), var("b2"), var("c")));
  Term rhs = mu(mu(var("a1"), var("a2"), var("b1")), var("b2"), var("c"));
  return {"expanded_malcev_assoc", {"a1", "a2", "b1", "b2", "c"}, std::move(lhs), std::move(rhs)};
}

/// mu(a,b,mu(c,d,x)) = mu(mu(a,b,c),d,x).
inline Identity identity_malcev_assoc(std::string_view op = "mu") {
  std::string m(op);
  return {"malcev_assoc",
          {"a", "b", "c", "d", "x"},
          app(m, {var("a"), var("b"), app(m, {var("c"), var("d"), var("x")})}),
          app(m, {app(m, {var("a"), var("b"), var("c")}), var("d"), var("x")})};
}

/// mu(a,b,b) = a and mu(a,a,b) = b.
inline std::vector<Identity> identities_malcev(std::string_view op = "mu") {
  std::string m(op);
  return {{"malcev_right", {"a", "b"}, app(m, {var("a"), var("b"), var("b")}), var("a")},
          {"malcev_left", {"a", "b"}, app(m, {var("a"), var("a"), var("b")}), var("b")}};
}

/// Resolves a reference such as `semiabelian:2`, `2assoc:3`, `2assoc:2@mu` or `malcev@theta`.
///
/// Known names: protomodular, semiabelian, 2assoc, 1assoc (alias oneassoc),
/// strict, left-unit, diagonal, unit-decomposition, expanded-malcev-assoc
/// (all taking :n), and malcev, malcev-assoc (taking an optional @op).
inline std::vector<Identity> resolve_suite(std::string_view ref) {
  std::string_view name = ref;
  std::string op;
  if (auto at = name.find('@'); at != std::string_view::npos) {
    op = std::string(name.substr(at + 1));
    name = name.substr(0, at);
  }
  std::size_t n = 0;
  bool has_n = false;
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    std::string digits(name.substr(colon + 1));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6)
      throw InvalidArgument("bad suite parameter in '" + std::string(ref) + "'");
    n = std::stoul(digits);
    has_n = true;
    name = name.substr(0, colon);
  }
  auto need_n = [&] {
    if (!has_n) throw InvalidArgument("suite '" + std::string(name) + "' needs a parameter, e.g. " + std::string(name) + ":2");
    detail::require_n(n);
  };
  auto theta_only = [&] {
    if (!op.empty()) throw InvalidArgument("suite '" + std::string(name) + "' does not take @op");
  };
  const std::string_view theta_op = op.empty() ? kTheta : std::string_view(op);
  if (name == "protomodular") { need_n(); theta_only(); return suite_protomodular(n).identities; }
  if (name == "semiabelian") { need_n(); theta_only(); return suite_semiabelian(n).identities; }
  if (name == "2assoc") { need_n(); return {identity_2assoc(n, theta_op)}; }
  if (name == "1assoc" || name == "oneassoc") { need_n(); return identities_1assoc(n, theta_op); }
  if (name == "strict") { need_n(); theta_only(); return identity_strictness(n); }
  if (name == "left-unit") { need_n(); theta_only(); return {identity_left_unit(n)}; }
  if (name == "diagonal") { need_n(); theta_only(); return {identity_diagonal_absorbs(n)}; }
  if (name == "unit-decomposition") { need_n(); theta_only(); return {identity_unit_decomposition(n)}; }
  if (name == "expanded-malcev-assoc") { need_n(); theta_only(); return {identity_expanded_malcev_assoc(n)}; }
  if (name == "malcev") return identities_malcev(op.empty() ? "mu" : op);
  if (name == "malcev-assoc") return {identity_malcev_assoc(op.empty() ? "mu" : op)};
  throw InvalidArgument("unknown suite '" + std::string(ref) + "'");
}

}  // namespace protoalg
