#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "protoalg/error.hpp"

namespace protoalg {

/// Carrier elements are the integers 0..m-1.
using Element = std::uint32_t;

/// Tables with more cells than this are represented by a function instead of a vector.
inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 24;

/// base^exp, or nullopt when the result exceeds `cap`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t cap = std::numeric_limits<std::uint64_t>::max()) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > cap / base) return std::nullopt;
    result *= base;
  }
  if (result > cap) return std::nullopt;
  return result;
}

struct OpSymbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const OpSymbol&) const = default;
};

/// Operation symbols with arities plus named constants. Names are unique across both lists.
class Signature {
public:
  Signature& add_op(std::string name, std::size_t arity) {
    if (arity == 0) throw InvalidArgument("operation '" + name + "' must have arity >= 1; use a constant");
    claim(name);
    ops_.push_back({std::move(name), arity});
    return *this;
  }

  Signature& add_constant(std::string name) {
    claim(name);
    constants_.push_back(std::move(name));
    return *this;
  }

  const std::vector<OpSymbol>& ops() const noexcept { return ops_; }
  const std::vector<std::string>& constants() const noexcept { return constants_; }

  std::optional<std::size_t> arity_of(std::string_view name) const {
    for (const auto& op : ops_)
      if (op.name == name) return op.arity;
    return std::nullopt;
  }

  bool has_op(std::string_view name) const { return arity_of(name).has_value(); }

  bool has_constant(std::string_view name) const {
    return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
  }

  bool contains(std::string_view name) const { return has_op(name) || has_constant(name); }

  bool operator==(const Signature&) const = default;

private:
  void claim(const std::string& name) {
    if (name.empty()) throw InvalidArgument("symbol names must be non-empty");
    if (contains(name)) throw InvalidArgument("duplicate symbol '" + name + "'");
  }

  std::vector<OpSymbol> ops_;
  std::vector<std::string> constants_;
};

inline constexpr std::string_view kTheta = "theta";

inline std::string alpha_name(std::size_t i) { return "alpha" + std::to_string(i); }
inline std::string unit_name(std::size_t i) { return "e" + std::to_string(i); }

/// theta/(n+1) only.
inline Signature theta_signature(std::size_t n) {
  Signature sig;
  sig.add_op(std::string(kTheta), n + 1);
  return sig;
}

/// theta/(n+1), alpha1..alphan/2, constants e1..en.
inline Signature standard_signature(std::size_t n) {
  if (n == 0) throw InvalidArgument("parameter n must be >= 1");
  Signature sig = theta_signature(n);
  for (std::size_t i = 1; i <= n; ++i) sig.add_op(alpha_name(i), 2);
  for (std::size_t i = 1; i <= n; ++i) sig.add_constant(unit_name(i));
  return sig;
}

/// Flat row-major index of an argument tuple: sum of args[i] * m^(k-1-i).
inline std::uint64_t flat_index(std::size_t carrier, std::span<const Element> args) {
  std::uint64_t idx = 0;
  for (Element a : args) idx = idx * carrier + a;
  return idx;
}

/// Inverse of flat_index.
inline void unflatten(std::uint64_t idx, std::size_t carrier, std::span<Element> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Element>(idx % carrier);
    idx /= carrier;
  }
}

/// Interpretation of one operation symbol: a total function A^arity -> A.
///
/// Usually a flat row-major vector of m^arity entries. Tables that would exceed
/// kMaterializeLimit cells are kept as a function and evaluated on demand.
class OpTable {
public:
  using Function = std::function<Element(std::span<const Element>)>;

  OpTable() = default;

  OpTable(std::size_t carrier, std::size_t arity, std::vector<Element> values)
      : carrier_(carrier), arity_(arity), values_(std::move(values)) {}

  static OpTable computed(std::size_t carrier, std::size_t arity, Function fn) {
    OpTable t;
    t.carrier_ = carrier;
    t.arity_ = arity;
    t.fn_ = std::make_shared<const Function>(std::move(fn));
    return t;
  }

  /// Materializes `fn` when the table fits kMaterializeLimit, otherwise wraps it.
  static OpTable tabulate(std::size_t carrier, std::size_t arity, const Function& fn) {
    auto cells = checked_pow(carrier, arity, kMaterializeLimit);
    if (!cells) return computed(carrier, arity, fn);
    std::vector<Element> values(*cells);
    std::vector<Element> args(arity);
    for (std::uint64_t i = 0; i < *cells; ++i) {
      unflatten(i, carrier, args);
      values[i] = fn(args);
    }
    return OpTable(carrier, arity, std::move(values));
  }

  std::size_t carrier() const noexcept { return carrier_; }
  std::size_t arity() const noexcept { return arity_; }
  bool materialized() const noexcept { return fn_ == nullptr; }

  /// Raw table entries; only valid for materialized tables.
  const std::vector<Element>& values() const {
    if (!materialized()) throw InvalidArgument("table is computed on demand and has no materialized values");
    return values_;
  }

  Element operator()(std::span<const Element> args) const {
    if (fn_) {
      Element v = (*fn_)(args);
      if (v >= carrier_) throw VerificationFailure("computed operation returned an element outside the carrier");
      return v;
    }
    return values_[flat_index(carrier_, args)];
  }

  Element at_flat(std::uint64_t idx) const {
    if (fn_) {
      std::vector<Element> args(arity_);
      unflatten(idx, carrier_, args);
      return (*this)(args);
    }
    return values_[idx];
  }

  /// Computed tables compare equal only to copies of themselves.
  bool operator==(const OpTable& other) const {
    if (carrier_ != other.carrier_ || arity_ != other.arity_) return false;
    if (fn_ || other.fn_) return fn_ == other.fn_;
    return values_ == other.values_;
  }

private:
  std::size_t carrier_ = 0;
  std::size_t arity_ = 0;
  std::vector<Element> values_;
  std::shared_ptr<const Function> fn_;
};

/// A carrier {0..m-1} with one table per operation symbol and one value per constant.
///
/// Tables may be missing or out of range until validate_algebra() has been run.
class FiniteAlgebra {
public:
  FiniteAlgebra() = default;

  FiniteAlgebra(std::string name, Signature signature, std::size_t carrier)
      : name_(std::move(name)), signature_(std::move(signature)), carrier_(carrier) {}

  const std::string& name() const noexcept { return name_; }
  const Signature& signature() const noexcept { return signature_; }
  std::size_t carrier_size() const noexcept { return carrier_; }

  FiniteAlgebra& set_table(std::string_view op, OpTable table) {
    if (!signature_.has_op(op)) throw InvalidArgument("'" + std::string(op) + "' is not an operation of the signature");
    tables_.insert_or_assign(std::string(op), std::move(table));
    return *this;
  }

  FiniteAlgebra& set_table(std::string_view op, std::vector<Element> values) {
    auto arity = signature_.arity_of(op);
    if (!arity) throw InvalidArgument("'" + std::string(op) + "' is not an operation of the signature");
    return set_table(op, OpTable(carrier_, *arity, std::move(values)));
  }

  FiniteAlgebra& set_constant(std::string_view name, Element value) {
    if (!signature_.has_constant(name)) throw InvalidArgument("'" + std::string(name) + "' is not a constant of the signature");
    constants_.insert_or_assign(std::string(name), value);
    return *this;
  }

  FiniteAlgebra& rename(std::string name) {
    name_ = std::move(name);
    return *this;
  }

  const OpTable* find_table(std::string_view op) const {
    auto it = tables_.find(op);
    return it == tables_.end() ? nullptr : &it->second;
  }

  const OpTable& table(std::string_view op) const {
    if (const auto* t = find_table(op)) return *t;
    throw InvalidArgument("symbol '" + std::string(op) + "' is uninterpreted");
  }

  std::optional<Element> find_constant(std::string_view name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) return std::nullopt;
    return it->second;
  }

  Element constant(std::string_view name) const {
    if (auto v = find_constant(name)) return *v;
    throw InvalidArgument("constant '" + std::string(name) + "' is uninterpreted");
  }

  const std::map<std::string, OpTable, std::less<>>& tables() const noexcept { return tables_; }
  const std::map<std::string, Element, std::less<>>& constants() const noexcept { return constants_; }

  /// Equality of everything except the name.
  bool same_structure(const FiniteAlgebra& other) const {
    return carrier_ == other.carrier_ && signature_ == other.signature_ && tables_ == other.tables_ &&
           constants_ == other.constants_;
  }

  bool operator==(const FiniteAlgebra& other) const { return name_ == other.name_ && same_structure(other); }

private:
  std::string name_;
  Signature signature_;
  std::size_t carrier_ = 0;
  std::map<std::string, OpTable, std::less<>> tables_;
  std::map<std::string, Element, std::less<>> constants_;
};

/// Theta parameter n of an algebra whose signature contains theta.
inline std::size_t theta_parameter(const FiniteAlgebra& alg) {
  auto arity = alg.signature().arity_of(kTheta);
  if (!arity || *arity < 2) throw PreconditionFailed("algebra '" + alg.name() + "' has no theta of arity >= 2");
  return *arity - 1;
}

/// True when the signature is exactly theta/(n+1), alpha1..alphan/2, e1..en.
/// Declaration order is irrelevant.
inline bool has_standard_signature(const FiniteAlgebra& alg, std::size_t n) {
  const Signature& sig = alg.signature();
  const Signature expected = standard_signature(n);
  if (sig.ops().size() != expected.ops().size() || sig.constants().size() != expected.constants().size()) return false;
  for (const auto& op : expected.ops())
    if (sig.arity_of(op.name) != op.arity) return false;
  for (const auto& c : expected.constants())
    if (!sig.has_constant(c)) return false;
  return true;
}

}  // namespace protoalg
