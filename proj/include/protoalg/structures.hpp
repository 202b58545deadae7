#pragma once

// Ambient binary structures used by the constructions: semigroups, monoids,
// groups and bounded lattices, all as Cayley tables checked at construction.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"

namespace protoalg {

/// Associative binary table; `unit` is filled in when a two-sided unit exists.
struct MonoidSpec {
  std::size_t carrier = 0;
  std::vector<Element> product;
  std::optional<Element> unit;

  Element mul(Element a, Element b) const { return product[a * carrier + b]; }
};

struct GroupSpec {
  MonoidSpec monoid;
  std::vector<Element> inverse;

  std::size_t carrier() const noexcept { return monoid.carrier; }
  Element unit() const { return *monoid.unit; }
  Element mul(Element a, Element b) const { return monoid.mul(a, b); }
};

namespace detail {

inline void check_binary_table(std::size_t m, const std::vector<Element>& t, const char* what) {
  if (m == 0) throw InvalidArgument(std::string(what) + ": carrier must be positive");
  if (t.size() != m * m) throw InvalidArgument(std::string(what) + ": table must have m*m entries");
  for (Element v : t)
    if (v >= m) throw InvalidArgument(std::string(what) + ": entry outside the carrier");
}

}  // namespace detail

/// Witness (a,b,c) of non-associativity, if any.
inline std::optional<std::array<Element, 3>> associativity_violation(std::size_t m, const std::vector<Element>& t) {
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      for (Element c = 0; c < m; ++c)
        if (t[t[a * m + b] * m + c] != t[a * m + t[b * m + c]]) return std::array<Element, 3>{a, b, c};
  return std::nullopt;
}

inline std::optional<Element> find_two_sided_unit(std::size_t m, const std::vector<Element>& t) {
  for (Element u = 0; u < m; ++u) {
    bool ok = true;
    for (Element x = 0; ok && x < m; ++x) ok = t[u * m + x] == x && t[x * m + u] == x;
    if (ok) return u;
  }
  return std::nullopt;
}

/// Semigroup from a table; throws InvalidArgument on a non-associative table.
inline MonoidSpec make_semigroup(std::size_t m, std::vector<Element> table) {
  detail::check_binary_table(m, table, "semigroup");
  if (auto w = associativity_violation(m, table))
    throw InvalidArgument("table is not associative at (" + std::to_string((*w)[0]) + "," + std::to_string((*w)[1]) +
                          "," + std::to_string((*w)[2]) + ")");
  MonoidSpec s{m, std::move(table), std::nullopt};
  s.unit = find_two_sided_unit(m, s.product);
  return s;
}

inline std::optional<GroupSpec> as_group(const MonoidSpec& s) {
  if (!s.unit) return std::nullopt;
  GroupSpec g{s, std::vector<Element>(s.carrier)};
  for (Element a = 0; a < s.carrier; ++a) {
    std::optional<Element> inv;
    for (Element b = 0; b < s.carrier && !inv; ++b)
      if (s.mul(a, b) == *s.unit && s.mul(b, a) == *s.unit) inv = b;
    if (!inv) return std::nullopt;
    g.inverse[a] = *inv;
  }
  return g;
}

/// Z/k under addition.
inline GroupSpec cyclic_group(std::size_t k) {
  if (k == 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<Element> t(k * k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t[a * k + b] = static_cast<Element>((a + b) % k);
  return *as_group(make_semigroup(k, std::move(t)));
}

/// Lattice as join and meet tables with optional bounds.
struct LatticeSpec {
  std::size_t carrier = 0;
  std::vector<Element> join;
  std::vector<Element> meet;
  std::optional<Element> bottom;
  std::optional<Element> top;

  Element j(Element a, Element b) const { return join[a * carrier + b]; }
  Element mt(Element a, Element b) const { return meet[a * carrier + b]; }
};

/// First violated lattice law, or empty. Distributivity is included when requested.
inline std::optional<std::string> lattice_violation(const LatticeSpec& l, bool require_distributive) {
  const std::size_t m = l.carrier;
  if (m == 0 || l.join.size() != m * m || l.meet.size() != m * m) return "tables must have m*m entries";
  for (Element v : l.join)
    if (v >= m) return "join entry outside the carrier";
  for (Element v : l.meet)
    if (v >= m) return "meet entry outside the carrier";
  auto at = [](Element a, Element b, Element c) {
    return " at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  };
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      if (l.j(a, b) != l.j(b, a)) return "join not commutative" + at(a, b, 0);
      if (l.mt(a, b) != l.mt(b, a)) return "meet not commutative" + at(a, b, 0);
      if (l.j(a, l.mt(a, b)) != a || l.mt(a, l.j(a, b)) != a) return "absorption fails" + at(a, b, 0);
      for (Element c = 0; c < m; ++c) {
        if (l.j(l.j(a, b), c) != l.j(a, l.j(b, c))) return "join not associative" + at(a, b, c);
        if (l.mt(l.mt(a, b), c) != l.mt(a, l.mt(b, c))) return "meet not associative" + at(a, b, c);
        if (require_distributive && l.mt(a, l.j(b, c)) != l.j(l.mt(a, b), l.mt(a, c)))
          return "not distributive" + at(a, b, c);
      }
    }
  for (Element a = 0; a < m; ++a) {
    if (l.bottom && (*l.bottom >= m || l.j(*l.bottom, a) != a)) return "bottom is not neutral for join";
    if (l.top && (*l.top >= m || l.mt(*l.top, a) != a)) return "top is not neutral for meet";
  }
  return std::nullopt;
}

/// The chain 0 < 1 < ... < k-1.
inline LatticeSpec chain_lattice(std::size_t k) {
  if (k == 0) throw InvalidArgument("chain length must be positive");
  LatticeSpec l{k, std::vector<Element>(k * k), std::vector<Element>(k * k), 0, static_cast<Element>(k - 1)};
  for (Element a = 0; a < k; ++a)
    for (Element b = 0; b < k; ++b) {
      l.join[a * k + b] = std::max(a, b);
      l.meet[a * k + b] = std::min(a, b);
    }
  return l;
}

/// Subsets of a k-element set, encoded as bitmasks.
inline LatticeSpec boolean_lattice(std::size_t k) {
  if (k > 16) throw InvalidArgument("boolean lattice too large");
  const std::size_t m = std::size_t{1} << k;
  LatticeSpec l{m, std::vector<Element>(m * m), std::vector<Element>(m * m), 0, static_cast<Element>(m - 1)};
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      l.join[a * m + b] = a | b;
      l.meet[a * m + b] = a & b;
    }
  return l;
}

/// Componentwise product; element (x, y) is x * |B| + y.
inline LatticeSpec product_lattice(const LatticeSpec& a, const LatticeSpec& b) {
  const std::size_t m = a.carrier * b.carrier;
  LatticeSpec l{m, std::vector<Element>(m * m), std::vector<Element>(m * m), std::nullopt, std::nullopt};
  auto enc = [&](Element x, Element y) { return static_cast<Element>(x * b.carrier + y); };
  for (Element p = 0; p < m; ++p)
    for (Element q = 0; q < m; ++q) {
      Element px = p / b.carrier, py = p % b.carrier, qx = q / b.carrier, qy = q % b.carrier;
      l.join[p * m + q] = enc(a.j(px, qx), b.j(py, qy));
      l.meet[p * m + q] = enc(a.mt(px, qx), b.mt(py, qy));
    }
  if (a.bottom && b.bottom) l.bottom = enc(*a.bottom, *b.bottom);
  if (a.top && b.top) l.top = enc(*a.top, *b.top);
  return l;
}

/// The five-element diamond M3 (0 bottom, 4 top, atoms 1..3); modular but not distributive.
inline LatticeSpec diamond_lattice() {
  const std::size_t m = 5;
  LatticeSpec l{m, std::vector<Element>(m * m), std::vector<Element>(m * m), 0, 4};
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) {
      Element j, mt;
      if (a == b) {
        j = mt = a;
      } else if (a == 0 || b == 0) {
        j = std::max(a, b);
        mt = 0;
      } else if (a == 4 || b == 4) {
        j = 4;
        mt = std::min(a, b);
      } else {
        j = 4;
        mt = 0;
      }
      l.join[a * m + b] = j;
      l.meet[a * m + b] = mt;
    }
  return l;
}

}  // namespace protoalg
