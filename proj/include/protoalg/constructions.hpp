#pragma once

// Concrete algebras with 2-associative and protomodular operations, built as
// FiniteAlgebra values ready for checking.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"
#include "protoalg/structures.hpp"

namespace protoalg {

/// Default cap on the carrier size of generated algebras.
inline constexpr std::uint64_t kDefaultCarrierBudget = std::uint64_t{1} << 16;

namespace detail {

inline void require_carrier(std::size_t m) {
  if (m == 0) throw InvalidArgument("carrier size must be positive");
}

inline std::string suffix(std::size_t n) { return std::to_string(n); }

}  // namespace detail

/// theta(a1, ..., a_{n+1}) = a_i. Signature theta only.
inline FiniteAlgebra build_projection_algebra(std::size_t m, std::size_t n, std::size_t i) {
  detail::require_carrier(m);
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  if (i < 1 || i > n + 1) throw InvalidArgument("projection index must lie in 1..n+1");
  FiniteAlgebra alg("projection_m" + std::to_string(m) + "_n" + std::to_string(n) + "_i" + std::to_string(i),
                    theta_signature(n), m);
  alg.set_table(kTheta, OpTable::tabulate(m, n + 1, [i](std::span<const Element> a) { return a[i - 1]; }));
  return alg;
}

/// Adds alpha_1..alpha_n and e_1..e_n to an algebra with a surjective-section theta.
///
/// alpha_i(a, b) is the i-th component of a chosen preimage of a under theta_b:
/// (e_1, ..., e_n) when a = theta_b(e_1, ..., e_n), otherwise the
/// lexicographically smallest preimage. Throws PreconditionFailed naming the
/// witness when some theta_b is not surjective or theta(e_1..e_n, b) != b.
inline FiniteAlgebra build_alphas_from_sections(const FiniteAlgebra& source, const std::vector<Element>& units) {
  const std::size_t n = theta_parameter(source);
  const std::size_t m = source.carrier_size();
  if (units.size() != n) throw InvalidArgument("expected " + std::to_string(n) + " unit elements");
  for (Element e : units)
    if (e >= m) throw InvalidArgument("unit element outside the carrier");
  const OpTable& theta = source.table(kTheta);
  auto cells = checked_pow(m, n, kMaterializeLimit);
  if (!cells) throw BudgetExceeded("sections too large to invert");

  std::vector<Element> args(n + 1);
  for (Element b = 0; b < m; ++b) {
    std::copy(units.begin(), units.end(), args.begin());
    args[n] = b;
    if (theta(args) != b)
      throw PreconditionFailed("theta(e1..en, b) != b for b = " + std::to_string(b));
  }

  std::vector<std::vector<Element>> alphas(n, std::vector<Element>(m * m));
  std::vector<std::optional<std::uint64_t>> preimage(m);
  std::vector<Element> chosen(n);
  for (Element b = 0; b < m; ++b) {
    std::fill(preimage.begin(), preimage.end(), std::nullopt);
    args[n] = b;
    for (std::uint64_t x = 0; x < *cells; ++x) {
      unflatten(x, m, std::span<Element>(args.data(), n));
      Element v = theta(args);
      if (!preimage[v]) preimage[v] = x;
    }
    for (Element a = 0; a < m; ++a) {
      if (a == b) {
        chosen = units;
      } else if (preimage[a]) {
        unflatten(*preimage[a], m, chosen);
      } else {
        throw PreconditionFailed("theta_b is not surjective for b = " + std::to_string(b) + ": " + std::to_string(a) +
                                 " has no preimage");
      }
      for (std::size_t i = 0; i < n; ++i) alphas[i][a * m + b] = chosen[i];
    }
  }

  FiniteAlgebra out(source.name(), standard_signature(n), m);
  out.set_table(kTheta, theta);
  for (std::size_t i = 1; i <= n; ++i) {
    out.set_table(alpha_name(i), std::move(alphas[i - 1]));
    out.set_constant(unit_name(i), units[i - 1]);
  }
  return out;
}

/// theta(a1..an, b) = a_i * b over a semigroup. For a group, alpha_i and e_i are
/// attached through build_alphas_from_sections with every e_i equal to the unit.
inline FiniteAlgebra build_semigroup_algebra(const MonoidSpec& sg, std::size_t n, std::size_t i) {
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  if (i < 1 || i > n) throw InvalidArgument("semigroup index must lie in 1..n");
  detail::check_binary_table(sg.carrier, sg.product, "semigroup");
  if (auto w = associativity_violation(sg.carrier, sg.product))
    throw InvalidArgument("semigroup table is not associative");
  const std::size_t m = sg.carrier;
  FiniteAlgebra alg("semigroup_m" + std::to_string(m) + "_n" + std::to_string(n) + "_i" + std::to_string(i),
                    theta_signature(n), m);
  alg.set_table(kTheta, OpTable::tabulate(m, n + 1, [sg, i, n](std::span<const Element> a) {
                  return sg.mul(a[i - 1], a[n]);
                }));
  if (as_group(sg)) return build_alphas_from_sections(alg, std::vector<Element>(n, *sg.unit));
  return alg;
}

struct ProductFactor {
  MonoidSpec semigroup;
  std::size_t index = 1;  // 1..n
};

/// Componentwise product of semigroup algebras A_{1,i1} x ... x A_{k,ik}. Element
/// (x_1, ..., x_k) is numbered row-major with x_1 most significant. When every
/// factor is a group, alphas are attached with e = (unit_1, ..., unit_k).
inline FiniteAlgebra build_product_semigroup_algebra(const std::vector<ProductFactor>& factors, std::size_t n) {
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  if (factors.empty()) throw InvalidArgument("at least one factor is required");
  std::size_t m = 1;
  for (const auto& f : factors) {
    if (f.index < 1 || f.index > n) throw InvalidArgument("factor index must lie in 1..n");
    if (associativity_violation(f.semigroup.carrier, f.semigroup.product))
      throw InvalidArgument("factor table is not associative");
    m *= f.semigroup.carrier;
    if (m > kDefaultCarrierBudget) throw BudgetExceeded("product carrier too large");
  }
  auto component = [factors](Element x, std::size_t j) {
    for (std::size_t t = factors.size(); t-- > j + 1;) x /= static_cast<Element>(factors[t].semigroup.carrier);
    return static_cast<Element>(x % factors[j].semigroup.carrier);
  };
  std::string name = "product";
  for (const auto& f : factors) name += "_m" + std::to_string(f.semigroup.carrier) + "i" + std::to_string(f.index);
  FiniteAlgebra alg(name + "_n" + std::to_string(n), theta_signature(n), m);
  alg.set_table(kTheta, OpTable::tabulate(m, n + 1, [factors, component, n](std::span<const Element> a) {
                  Element out = 0;
                  for (std::size_t j = 0; j < factors.size(); ++j) {
                    const auto& f = factors[j];
                    out = static_cast<Element>(out * f.semigroup.carrier +
                                               f.semigroup.mul(component(a[f.index - 1], j), component(a[n], j)));
                  }
                  return out;
                }));
  bool all_groups = true;
  Element unit = 0;
  for (const auto& f : factors) {
    if (!as_group(f.semigroup)) {
      all_groups = false;
      break;
    }
    unit = static_cast<Element>(unit * f.semigroup.carrier + *f.semigroup.unit);
  }
  if (all_groups) return build_alphas_from_sections(alg, std::vector<Element>(n, unit));
  return alg;
}

/// Carrier: all (n+1)x(n+1) matrices over {0..q-1}, numbered by row-major entry
/// reading (first entry most significant). theta(M_1..M_{n+1}) takes row r from M_r.
inline FiniteAlgebra build_matrix_row_algebra(std::size_t q, std::size_t n,
                                              std::uint64_t budget = kDefaultCarrierBudget) {
  if (q == 0) throw InvalidArgument("entry count must be positive");
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  const std::size_t dim = n + 1;
  auto m = checked_pow(q, dim * dim, budget);
  if (!m) throw BudgetExceeded("matrix carrier q^((n+1)^2) exceeds the budget of " + std::to_string(budget));
  // Row r occupies digits [r*dim, (r+1)*dim) counted from the most significant end.
  auto row_block = checked_pow(q, dim);
  std::vector<std::uint64_t> row_weight(dim);
  for (std::size_t r = 0; r < dim; ++r) row_weight[r] = *checked_pow(*row_block, dim - 1 - r);
  const std::uint64_t block = *row_block;
  FiniteAlgebra alg("matrix_rows_q" + std::to_string(q) + "_n" + std::to_string(n), theta_signature(n),
                    static_cast<std::size_t>(*m));
  alg.set_table(kTheta, OpTable::tabulate(*m, dim, [row_weight, block, dim](std::span<const Element> a) {
                  std::uint64_t out = 0;
                  for (std::size_t r = 0; r < dim; ++r) out += (a[r] / row_weight[r] % block) * row_weight[r];
                  return static_cast<Element>(out);
                }));
  return alg;
}

/// theta(a1..an, b) = a1 + ... + an + b on a commutative monoid in which every
/// element satisfies (n-1)a = 0.
inline FiniteAlgebra build_bounded_monoid_algebra(const MonoidSpec& mo, std::size_t n) {
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  const std::size_t m = mo.carrier;
  if (associativity_violation(m, mo.product)) throw InvalidArgument("monoid table is not associative");
  if (!mo.unit) throw InvalidArgument("monoid has no unit");
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      if (mo.mul(a, b) != mo.mul(b, a)) throw InvalidArgument("monoid is not commutative");
  for (Element a = 0; a < m; ++a) {
    Element power = *mo.unit;
    for (std::size_t k = 0; k + 1 < n; ++k) power = mo.mul(power, a);
    if (power != *mo.unit)
      throw PreconditionFailed("element " + std::to_string(a) + " has order not dividing n-1 = " + std::to_string(n - 1));
  }
  FiniteAlgebra alg("bounded_monoid_m" + std::to_string(m) + "_n" + std::to_string(n), theta_signature(n), m);
  alg.set_table(kTheta, OpTable::tabulate(m, n + 1, [mo](std::span<const Element> a) {
                  Element acc = *mo.unit;
                  for (Element x : a) acc = mo.mul(acc, x);
                  return acc;
                }));
  return alg;
}

enum class LatticeTheta {
  JoinFirstMeetLast,   // (a v b) ^ c
  JoinOuterMeetMiddle  // (a v c) ^ b
};

/// Ternary theta on a distributive lattice. With `attach_alphas`, the bounds
/// serve as (e1, e2) = (bottom, top) and alphas come from build_alphas_from_sections.
inline FiniteAlgebra build_lattice_theta(const LatticeSpec& lat, LatticeTheta variant, bool attach_alphas = false) {
  if (auto why = lattice_violation(lat, true)) throw InvalidArgument("lattice rejected: " + *why);
  const std::size_t m = lat.carrier;
  std::vector<Element> t(m * m * m);
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b)
      for (Element c = 0; c < m; ++c)
        t[(a * m + b) * m + c] =
            variant == LatticeTheta::JoinFirstMeetLast ? lat.mt(lat.j(a, b), c) : lat.mt(lat.j(a, c), b);
  FiniteAlgebra alg(std::string(variant == LatticeTheta::JoinFirstMeetLast ? "lattice_ab_c" : "lattice_ac_b") + "_m" +
                        std::to_string(m),
                    theta_signature(2), m);
  alg.set_table(kTheta, std::move(t));
  if (!attach_alphas) return alg;
  if (!lat.bottom || !lat.top) throw InvalidArgument("attaching alphas needs bottom and top");
  return build_alphas_from_sections(alg, {*lat.bottom, *lat.top});
}

/// The Boolean algebra of subsets of a k-set (bitmasks) with
/// theta(x,y,z) = (x v z) ^ y, alpha1(x,y) = x ^ ~y, alpha2(x,y) = x v ~y, e1 = 0, e2 = 1.
inline FiniteAlgebra build_boolean_protomodular(std::size_t k) {
  if (k > 3) throw BudgetExceeded("boolean carrier limited to k <= 3");
  const LatticeSpec lat = boolean_lattice(k);
  const std::size_t m = lat.carrier;
  const Element full = static_cast<Element>(m - 1);
  FiniteAlgebra alg("boolean_k" + std::to_string(k), standard_signature(2), m);
  std::vector<Element> theta(m * m * m), a1(m * m), a2(m * m);
  for (Element x = 0; x < m; ++x)
    for (Element y = 0; y < m; ++y) {
      a1[x * m + y] = x & (~y & full);
      a2[x * m + y] = x | (~y & full);
      for (Element z = 0; z < m; ++z) theta[(x * m + y) * m + z] = (x | z) & y;
    }
  alg.set_table(kTheta, std::move(theta));
  alg.set_table(alpha_name(1), std::move(a1));
  alg.set_table(alpha_name(2), std::move(a2));
  alg.set_constant(unit_name(1), 0);
  alg.set_constant(unit_name(2), full);
  return alg;
}

/// Map(A^n, A) for |A| = m under theta(f1..fn, g) = g o (f1, ..., fn).
///
/// A function is numbered by its value table read as a base-m number (row-major,
/// first entry most significant). With `retractions_only`, the carrier is the set
/// of f with f(x,...,x) = x in increasing number order, e_i is the i-th projection,
/// and alphas are attached through build_alphas_from_sections.
inline FiniteAlgebra build_map_composition_algebra(std::size_t m, std::size_t n, bool retractions_only = false,
                                                   std::uint64_t budget = kDefaultCarrierBudget) {
  detail::require_carrier(m);
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  auto points = checked_pow(m, n, 64);
  if (!points) throw BudgetExceeded("domain A^n too large");
  auto all = checked_pow(m, *points, budget);
  if (!all) throw BudgetExceeded("Map(A^n, A) carrier exceeds the budget of " + std::to_string(budget));
  const std::size_t domain = static_cast<std::size_t>(*points);

  std::vector<std::uint64_t> diagonal(m);
  {
    std::vector<Element> x(n);
    for (Element v = 0; v < m; ++v) {
      std::fill(x.begin(), x.end(), v);
      diagonal[v] = flat_index(m, x);
    }
  }
  auto digit = [&](std::uint64_t code, std::size_t point) {
    for (std::size_t t = domain; t-- > point + 1;) code /= m;
    return static_cast<Element>(code % m);
  };

  std::vector<std::uint64_t> codes;
  for (std::uint64_t code = 0; code < *all; ++code) {
    bool keep = true;
    if (retractions_only)
      for (Element v = 0; keep && v < m; ++v) keep = digit(code, diagonal[v]) == v;
    if (keep) codes.push_back(code);
  }
  std::vector<std::vector<Element>> values(codes.size(), std::vector<Element>(domain));
  for (std::size_t f = 0; f < codes.size(); ++f)
    for (std::size_t p = 0; p < domain; ++p) values[f][p] = digit(codes[f], p);
  auto number_of = [&](const std::vector<Element>& table) -> Element {
    std::uint64_t code = 0;
    for (Element v : table) code = code * m + v;
    auto it = std::lower_bound(codes.begin(), codes.end(), code);
    if (it == codes.end() || *it != code) throw VerificationFailure("composition left the carrier");
    return static_cast<Element>(it - codes.begin());
  };

  const std::size_t size = codes.size();
  FiniteAlgebra alg(std::string(retractions_only ? "retractions" : "maps") + "_m" + std::to_string(m) + "_n" +
                        std::to_string(n),
                    theta_signature(n), size);
  alg.set_table(kTheta, OpTable::tabulate(size, n + 1, [&](std::span<const Element> a) {
                  std::vector<Element> composite(domain), x(n), inner(n);
                  const auto& g = values[a[n]];
                  for (std::size_t p = 0; p < domain; ++p) {
                    for (std::size_t i = 0; i < n; ++i) inner[i] = values[a[i]][p];
                    composite[p] = g[flat_index(m, inner)];
                  }
                  return number_of(composite);
                }));
  if (!alg.table(kTheta).materialized()) throw BudgetExceeded("Map(A^n, A) theta table too large");
  if (!retractions_only) return alg;

  std::vector<Element> units(n);
  std::vector<Element> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Element> proj(domain);
    for (std::size_t p = 0; p < domain; ++p) {
      unflatten(p, m, x);
      proj[p] = x[i];
    }
    units[i] = number_of(proj);
  }
  return build_alphas_from_sections(alg, units);
}

enum class SemiloopShape {
  Cyclic,   // theta_b(a) = a + b mod m
  Twisted   // odd b: theta_b(a) = b - a mod m; even b as Cyclic
};

/// A strict n = 1 algebra: theta_b is a permutation with theta_b(0) = b,
/// alpha1(a, b) = theta_b^{-1}(a), e1 = 0.
inline FiniteAlgebra build_strict_semiloop(std::size_t m, SemiloopShape shape = SemiloopShape::Cyclic) {
  detail::require_carrier(m);
  std::vector<Element> theta(m * m), alpha(m * m);
  for (Element b = 0; b < m; ++b)
    for (Element a = 0; a < m; ++a) {
      Element v = (shape == SemiloopShape::Twisted && b % 2 == 1) ? static_cast<Element>((b + m - a) % m)
                                                                  : static_cast<Element>((a + b) % m);
      theta[a * m + b] = v;
      alpha[v * m + b] = a;
    }
  FiniteAlgebra alg(std::string(shape == SemiloopShape::Cyclic ? "semiloop_cyclic" : "semiloop_twisted") + "_m" +
                        std::to_string(m),
                    standard_signature(1), m);
  alg.set_table(kTheta, std::move(theta));
  alg.set_table(alpha_name(1), std::move(alpha));
  alg.set_constant(unit_name(1), 0);
  return alg;
}

/// 2-associative algebras with all e_i equal, in the standard signature:
/// Z/k with n = 1 (k = 2..5), Z/k with n = 2 and i = 1, 2 (k = 2, 3),
/// Z/2 x Z/3 with (i1, i2) = (1, 2) and n = 2, and Z/2 with theta = a1+a2+a3+b.
inline std::vector<FiniteAlgebra> semiabelian_catalog() {
  std::vector<FiniteAlgebra> out;
  for (std::size_t k = 2; k <= 5; ++k)
    out.push_back(build_semigroup_algebra(cyclic_group(k).monoid, 1, 1).rename("Z" + std::to_string(k) + "_n1"));
  for (std::size_t k = 2; k <= 3; ++k)
    for (std::size_t i = 1; i <= 2; ++i)
      out.push_back(build_semigroup_algebra(cyclic_group(k).monoid, 2, i)
                        .rename("Z" + std::to_string(k) + "_n2_i" + std::to_string(i)));
  out.push_back(build_product_semigroup_algebra({{cyclic_group(2).monoid, 1}, {cyclic_group(3).monoid, 2}}, 2)
                    .rename("Z2xZ3_n2_i12"));
  out.push_back(build_alphas_from_sections(build_bounded_monoid_algebra(cyclic_group(2).monoid, 3), {0, 0, 0})
                    .rename("Z2_sum_n3"));
  return out;
}

}  // namespace protoalg
