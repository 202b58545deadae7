#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/error.hpp"

namespace protoalg {

/// Abstract syntax of terms: a variable, a constant, or an operation applied to subterms.
class Term {
public:
  enum class Kind { Variable, Constant, Apply };

  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name), {}); }
  static Term constant(std::string name) { return Term(Kind::Constant, std::move(name), {}); }
  static Term apply(std::string op, std::vector<Term> args) { return Term(Kind::Apply, std::move(op), std::move(args)); }

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& args() const noexcept { return args_; }

  bool operator==(const Term& other) const {
    return kind_ == other.kind_ && name_ == other.name_ && args_ == other.args_;
  }

private:
  Term(Kind kind, std::string name, std::vector<Term> args)
      : kind_(kind), name_(std::move(name)), args_(std::move(args)) {}

  Kind kind_ = Kind::Variable;
  std::string name_;
  std::vector<Term> args_;
};

/// Shorthands for building terms in code.
inline Term var(std::string name) { return Term::variable(std::move(name)); }
inline Term cst(std::string name) { return Term::constant(std::move(name)); }
inline Term app(std::string op, std::vector<Term> args) { return Term::apply(std::move(op), std::move(args)); }

/// lhs = rhs, universally quantified over the declared variables.
struct Identity {
  std::string name;
  std::vector<std::string> variables;
  Term lhs;
  Term rhs;

  bool operator==(const Identity&) const = default;
};

/// Values for an ordered list of variables.
struct Assignment {
  std::vector<std::string> names;
  std::vector<Element> values;

  std::optional<Element> get(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return values[i];
    return std::nullopt;
  }

  bool operator==(const Assignment&) const = default;
};

inline void write_term(std::ostream& out, const Term& t) {
  out << t.name();
  if (t.kind() != Term::Kind::Apply) return;
  out << '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out << ',';
    write_term(out, t.args()[i]);
  }
  out << ')';
}

inline std::string to_string(const Term& t) {
  std::ostringstream out;
  write_term(out, t);
  return out.str();
}

/// DSL form: `identity name(v1,...,vk): lhs = rhs`.
inline std::string to_string(const Identity& id) {
  std::ostringstream out;
  out << "identity " << id.name << '(';
  for (std::size_t i = 0; i < id.variables.size(); ++i) out << (i ? "," : "") << id.variables[i];
  out << "): ";
  write_term(out, id.lhs);
  out << " = ";
  write_term(out, id.rhs);
  return out.str();
}

inline std::string to_string(const Assignment& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.names.size(); ++i) out << (i ? "," : "") << a.names[i] << '=' << a.values[i];
  return out.str();
}

/// Value of `t` in `alg` under `env`. Throws MalformedTerm for unknown symbols,
/// arity mismatches and unbound variables.
inline Element eval_term(const FiniteAlgebra& alg, const Term& t, const Assignment& env) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto v = env.get(t.name());
      if (!v) throw MalformedTerm("unbound variable '" + t.name() + "'");
      if (*v >= alg.carrier_size()) throw MalformedTerm("variable '" + t.name() + "' bound outside the carrier");
      return *v;
    }
    case Term::Kind::Constant: {
      if (!alg.signature().has_constant(t.name())) throw MalformedTerm("unknown constant '" + t.name() + "'");
      auto v = alg.find_constant(t.name());
      if (!v) throw MalformedTerm("constant '" + t.name() + "' is uninterpreted");
      return *v;
    }
    case Term::Kind::Apply: {
      auto arity = alg.signature().arity_of(t.name());
      if (!arity) throw MalformedTerm("unknown operation '" + t.name() + "'");
      if (*arity != t.args().size())
        throw MalformedTerm("operation '" + t.name() + "' expects arity " + std::to_string(*arity) + ", got " +
                            std::to_string(t.args().size()));
      const OpTable* table = alg.find_table(t.name());
      if (!table) throw MalformedTerm("operation '" + t.name() + "' is uninterpreted");
      std::vector<Element> args;
      args.reserve(t.args().size());
      for (const auto& sub : t.args()) args.push_back(eval_term(alg, sub, env));
      return (*table)(args);
    }
  }
  return 0;
}

/// One postfix instruction. `index` is a variable slot, a constant slot or an op slot
/// of the signature the program was compiled against.
struct Instr {
  enum class Kind : std::uint8_t { Variable, Constant, Apply };
  Kind kind;
  std::uint32_t index;
  std::uint32_t arity;
};

struct Program {
  std::vector<Instr> code;
  std::size_t max_depth = 0;
};

namespace detail {

inline void compile_into(const Signature& sig, const Term& t, const std::vector<std::string>& vars, Program& prog,
                         std::size_t depth) {
  prog.max_depth = std::max(prog.max_depth, depth + 1);
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto it = std::find(vars.begin(), vars.end(), t.name());
      if (it == vars.end()) throw MalformedTerm("undeclared variable '" + t.name() + "'");
      prog.code.push_back({Instr::Kind::Variable, static_cast<std::uint32_t>(it - vars.begin()), 0});
      return;
    }
    case Term::Kind::Constant: {
      const auto& cs = sig.constants();
      auto it = std::find(cs.begin(), cs.end(), t.name());
      if (it == cs.end()) throw MalformedTerm("unknown constant '" + t.name() + "'");
      prog.code.push_back({Instr::Kind::Constant, static_cast<std::uint32_t>(it - cs.begin()), 0});
      return;
    }
    case Term::Kind::Apply: {
      const auto& ops = sig.ops();
      auto it = std::find_if(ops.begin(), ops.end(), [&](const OpSymbol& op) { return op.name == t.name(); });
      if (it == ops.end()) throw MalformedTerm("unknown operation '" + t.name() + "'");
      if (it->arity != t.args().size())
        throw MalformedTerm("operation '" + t.name() + "' expects arity " + std::to_string(it->arity) + ", got " +
                            std::to_string(t.args().size()));
      for (std::size_t i = 0; i < t.args().size(); ++i) compile_into(sig, t.args()[i], vars, prog, depth + i);
      prog.code.push_back({Instr::Kind::Apply, static_cast<std::uint32_t>(it - ops.begin()),
                           static_cast<std::uint32_t>(it->arity)});
      return;
    }
  }
}

}  // namespace detail

/// Postfix program for `t`; doubles as the well-formedness check.
inline Program compile_term(const Signature& sig, const Term& t, const std::vector<std::string>& vars) {
  Program prog;
  detail::compile_into(sig, t, vars, prog, 0);
  return prog;
}

/// Throws MalformedTerm unless `id` is well formed over `sig`.
inline void check_well_formed(const Signature& sig, const Identity& id) {
  for (std::size_t i = 0; i < id.variables.size(); ++i)
    for (std::size_t j = i + 1; j < id.variables.size(); ++j)
      if (id.variables[i] == id.variables[j])
        throw MalformedTerm("identity '" + id.name + "' declares variable '" + id.variables[i] + "' twice");
  compile_term(sig, id.lhs, id.variables);
  compile_term(sig, id.rhs, id.variables);
}

/// An identity bound to the tables of one algebra, for tight evaluation loops.
class CompiledIdentity {
public:
  CompiledIdentity(const FiniteAlgebra& alg, const Identity& id) : carrier_(alg.carrier_size()) {
    check_well_formed(alg.signature(), id);
    const auto& sig = alg.signature();
    for (const auto& op : sig.ops()) {
      const OpTable* t = alg.find_table(op.name);
      tables_.push_back(t);
    }
    for (const auto& c : sig.constants()) constant_values_.push_back(alg.find_constant(c));
    lhs_ = compile_term(sig, id.lhs, id.variables);
    rhs_ = compile_term(sig, id.rhs, id.variables);
    bind(lhs_, sig);
    bind(rhs_, sig);
    stack_size_ = std::max(lhs_.max_depth, rhs_.max_depth);
    variable_count_ = id.variables.size();
  }

  std::size_t variable_count() const noexcept { return variable_count_; }
  std::size_t stack_size() const noexcept { return stack_size_; }

  /// Evaluates both sides; `stack` must hold at least stack_size() elements.
  std::pair<Element, Element> evaluate(std::span<const Element> values, std::span<Element> stack) const {
    return {run(lhs_, values, stack), run(rhs_, values, stack)};
  }

  std::pair<Element, Element> evaluate(std::span<const Element> values) const {
    std::vector<Element> stack(stack_size_ + 1);
    return evaluate(values, stack);
  }

private:
  void bind(const Program& prog, const Signature& sig) {
    for (const auto& ins : prog.code) {
      if (ins.kind == Instr::Kind::Apply) {
        const OpTable* t = tables_[ins.index];
        const auto& name = sig.ops()[ins.index].name;
        if (!t) throw MalformedTerm("operation '" + name + "' is uninterpreted");
        if (t->arity() != ins.arity || t->carrier() != carrier_)
          throw InvalidArgument("table for '" + name + "' does not match the signature and carrier");
        if (t->materialized()) {
          auto cells = checked_pow(carrier_, ins.arity);
          if (!cells || t->values().size() != *cells)
            throw InvalidArgument("table for '" + name + "' has the wrong length");
          for (Element v : t->values())
            if (v >= carrier_) throw InvalidArgument("table for '" + name + "' has an entry outside the carrier");
        }
      } else if (ins.kind == Instr::Kind::Constant) {
        const auto& v = constant_values_[ins.index];
        const auto& name = sig.constants()[ins.index];
        if (!v) throw MalformedTerm("constant '" + name + "' is uninterpreted");
        if (*v >= carrier_) throw InvalidArgument("constant '" + name + "' lies outside the carrier");
      }
    }
  }

  Element run(const Program& prog, std::span<const Element> values, std::span<Element> stack) const {
    std::size_t sp = 0;
    for (const auto& ins : prog.code) {
      switch (ins.kind) {
        case Instr::Kind::Variable:
          stack[sp++] = values[ins.index];
          break;
        case Instr::Kind::Constant:
          stack[sp++] = *constant_values_[ins.index];
          break;
        case Instr::Kind::Apply: {
          const OpTable& t = *tables_[ins.index];
          sp -= ins.arity;
          std::span<const Element> args(stack.data() + sp, ins.arity);
          if (t.materialized()) {
            stack[sp] = t.values()[flat_index(carrier_, args)];
          } else {
            stack[sp] = t(args);
          }
          ++sp;
          break;
        }
      }
    }
    return stack[0];
  }

  std::size_t carrier_;
  std::vector<const OpTable*> tables_;
  std::vector<std::optional<Element>> constant_values_;
  Program lhs_;
  Program rhs_;
  std::size_t stack_size_ = 0;
  std::size_t variable_count_ = 0;
};

}  // namespace protoalg
