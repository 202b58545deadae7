#pragma once

// Finite model search: backtracking over free table cells with propagation on
// ground identity instances, in the style of small-carrier model finders.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "protoalg/algebra.hpp"
#include "protoalg/check.hpp"
#include "protoalg/dsl.hpp"
#include "protoalg/error.hpp"
#include "protoalg/suites.hpp"
#include "protoalg/term.hpp"

namespace protoalg {

enum class SearchGoal { FindFirst, CountAll, ProveNone };

inline const char* to_string(SearchGoal g) {
  switch (g) {
    case SearchGoal::FindFirst: return "find-first";
    case SearchGoal::CountAll: return "count-all";
    case SearchGoal::ProveNone: return "prove-none";
  }
  return "?";
}

inline SearchGoal parse_goal(std::string_view s) {
  if (s == "find-first") return SearchGoal::FindFirst;
  if (s == "count-all") return SearchGoal::CountAll;
  if (s == "prove-none") return SearchGoal::ProveNone;
  throw InvalidArgument("unknown goal '" + std::string(s) + "'");
}

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;
inline constexpr std::uint64_t kDefaultInstanceBudget = 20'000'000;

struct SearchSpec {
  std::string name = "model";
  Signature signature;
  std::size_t carrier = 1;
  /// Pinned cells; symbols absent from the maps are entirely free.
  std::map<std::string, std::vector<Cell>, std::less<>> tables;
  std::map<std::string, Cell, std::less<>> constants;
  std::vector<Identity> identities;
  SearchGoal goal = SearchGoal::FindFirst;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::uint64_t instance_budget = kDefaultInstanceBudget;
};

struct SearchStats {
  std::uint64_t free_cells = 0;
  /// log10 of m^free_cells, the unpruned candidate count.
  double space_log10 = 0;
  std::uint64_t instances = 0;
  std::uint64_t nodes = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t forced = 0;
};

struct SearchResult {
  enum class Outcome { Witness, NoneExists, Count };
  Outcome outcome = Outcome::NoneExists;
  SearchGoal goal = SearchGoal::FindFirst;
  std::optional<FiniteAlgebra> witness;
  std::uint64_t count = 0;
  SearchStats stats;

  /// Whether the goal was met: a witness for find-first, none for prove-none.
  bool goal_met() const {
    switch (goal) {
      case SearchGoal::FindFirst: return outcome == Outcome::Witness;
      case SearchGoal::ProveNone: return outcome == Outcome::NoneExists;
      case SearchGoal::CountAll: return true;
    }
    return false;
  }
};

inline const char* to_string(SearchResult::Outcome o) {
  switch (o) {
    case SearchResult::Outcome::Witness: return "witness";
    case SearchResult::Outcome::NoneExists: return "none-exists";
    case SearchResult::Outcome::Count: return "count";
  }
  return "?";
}

namespace detail {

class SearchEngine {
public:
  explicit SearchEngine(const SearchSpec& spec) : spec_(spec), m_(spec.carrier) {
    if (m_ == 0) throw InvalidArgument("carrier size must be positive");
    layout();
    compile();
    pin();
  }

  SearchResult run() {
    SearchResult result;
    result.goal = spec_.goal;
    stats_.instances = instances_.size();
    for (std::size_t c = 0; c < value_.size(); ++c)
      if (value_[c] < 0) ++stats_.free_cells;
    stats_.space_log10 = static_cast<double>(stats_.free_cells) * std::log10(static_cast<double>(m_));

    bool consistent = true;
    for (std::uint32_t i = 0; i < instances_.size() && consistent; ++i) consistent = process(i);
    consistent = consistent && propagate();
    if (consistent) descend(0, result);

    result.stats = stats_;
    if (spec_.goal == SearchGoal::CountAll) {
      result.outcome = SearchResult::Outcome::Count;
      result.count = count_;
    } else if (result.witness) {
      result.outcome = SearchResult::Outcome::Witness;
    } else {
      result.outcome = SearchResult::Outcome::NoneExists;
    }
    return result;
  }

private:
  struct Instance {
    std::uint32_t identity;
    std::uint64_t tuple;
  };

  struct SideValue {
    std::int64_t value = -1;          // -1 when blocked
    std::int64_t blocked_cell = -1;   // some undecided cell the side depends on
    std::int64_t root_cell = -1;      // set when only the outermost cell is undecided
  };

  struct CompiledSide {
    Program lhs, rhs;
    std::size_t vars = 0;
  };

  void layout() {
    const auto& ops = spec_.signature.ops();
    std::uint64_t next = 0;
    for (const auto& op : ops) {
      auto cells = checked_pow(m_, op.arity, kMaterializeLimit);
      if (!cells) throw BudgetExceeded("table for '" + op.name + "' is too large to search");
      op_base_.push_back(next);
      next += *cells;
    }
    const_base_ = next;
    next += spec_.signature.constants().size();
    if (next > kMaterializeLimit) throw BudgetExceeded("too many table cells to search");
    value_.assign(next, -1);
    watchers_.assign(next, {});
  }

  void compile() {
    std::uint64_t total = 0;
    for (const auto& id : spec_.identities) {
      check_well_formed(spec_.signature, id);
      CompiledSide cs{compile_term(spec_.signature, id.lhs, id.variables),
                      compile_term(spec_.signature, id.rhs, id.variables), id.variables.size()};
      auto count = checked_pow(m_, cs.vars, spec_.instance_budget);
      if (!count || total + *count > spec_.instance_budget)
        throw BudgetExceeded("identity instances exceed the budget of " + std::to_string(spec_.instance_budget));
      for (std::uint64_t t = 0; t < *count; ++t)
        instances_.push_back({static_cast<std::uint32_t>(programs_.size()), t});
      total += *count;
      stack_size_ = std::max({stack_size_, cs.lhs.max_depth, cs.rhs.max_depth});
      max_vars_ = std::max(max_vars_, cs.vars);
      programs_.push_back(std::move(cs));
    }
    stack_.resize(stack_size_ + 1);
    vars_.resize(max_vars_);
  }

  void pin() {
    const auto& ops = spec_.signature.ops();
    for (const auto& [name, cells] : spec_.tables) {
      auto it = std::find_if(ops.begin(), ops.end(), [&](const OpSymbol& op) { return op.name == name; });
      if (it == ops.end()) throw InvalidArgument("pinned table for unknown operation '" + name + "'");
      const std::uint64_t base = op_base_[it - ops.begin()];
      if (cells.size() != *checked_pow(m_, it->arity))
        throw InvalidArgument("pinned table for '" + name + "' has the wrong length");
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i]) {
          if (*cells[i] >= m_) throw InvalidArgument("pinned value outside the carrier");
          assign(base + i, *cells[i]);
        }
    }
    const auto& cs = spec_.signature.constants();
    for (const auto& [name, cell] : spec_.constants) {
      auto it = std::find(cs.begin(), cs.end(), name);
      if (it == cs.end()) throw InvalidArgument("pinned value for unknown constant '" + name + "'");
      if (cell) {
        if (*cell >= m_) throw InvalidArgument("pinned value outside the carrier");
        assign(const_base_ + (it - cs.begin()), *cell);
      }
    }
  }

  void assign(std::uint64_t cell, Element v) {
    value_[cell] = static_cast<std::int32_t>(v);
    trail_.push_back(static_cast<std::uint32_t>(cell));
  }

  SideValue evaluate(const Program& prog) {
    SideValue out;
    std::size_t sp = 0;
    const std::size_t last = prog.code.size() - 1;
    for (std::size_t pc = 0; pc <= last; ++pc) {
      const Instr& ins = prog.code[pc];
      switch (ins.kind) {
        case Instr::Kind::Variable:
          stack_[sp++] = vars_[ins.index];
          break;
        case Instr::Kind::Constant: {
          const std::int64_t cell = static_cast<std::int64_t>(const_base_ + ins.index);
          const std::int32_t v = value_[cell];
          if (v < 0) {
            if (out.blocked_cell < 0) out.blocked_cell = cell;
            if (pc == last) out.root_cell = cell;
          }
          stack_[sp++] = v;
          break;
        }
        case Instr::Kind::Apply: {
          sp -= ins.arity;
          bool known = true;
          std::uint64_t idx = 0;
          for (std::uint32_t a = 0; a < ins.arity; ++a) {
            const std::int64_t x = stack_[sp + a];
            if (x < 0) {
              known = false;
              break;
            }
            idx = idx * m_ + static_cast<std::uint64_t>(x);
          }
          std::int32_t v = -1;
          if (known) {
            const std::int64_t cell = static_cast<std::int64_t>(op_base_[ins.index] + idx);
            v = value_[cell];
            if (v < 0) {
              if (out.blocked_cell < 0) out.blocked_cell = cell;
              if (pc == last) out.root_cell = cell;
            }
          }
          stack_[sp++] = v;
          break;
        }
      }
    }
    out.value = stack_[0];
    return out;
  }

  /// Re-examines an instance; returns false on a violated ground identity. A
  /// blocked instance is registered on a cell it is waiting for; the registration
  /// is dropped again when the search backtracks past it.
  bool process(std::uint32_t i) {
    const Instance& inst = instances_[i];
    const CompiledSide& cs = programs_[inst.identity];
    unflatten(inst.tuple, m_, std::span<Element>(vars_.data(), cs.vars));
    SideValue l = evaluate(cs.lhs);
    SideValue r = evaluate(cs.rhs);
    if (l.value >= 0 && r.value >= 0) return l.value == r.value;
    if (l.value >= 0 && r.root_cell >= 0) return force(r.root_cell, l.value);
    if (r.value >= 0 && l.root_cell >= 0) return force(l.root_cell, r.value);
    std::int64_t wait;
    if (l.value >= 0) wait = r.blocked_cell;
    else if (r.value >= 0 || l.root_cell < 0) wait = l.blocked_cell;
    else wait = r.blocked_cell;
    watchers_[wait].push_back(i);
    watch_trail_.push_back(static_cast<std::uint32_t>(wait));
    return true;
  }

  bool force(std::int64_t cell, std::int64_t v) {
    ++stats_.forced;
    assign(static_cast<std::uint64_t>(cell), static_cast<Element>(v));
    return true;
  }

  /// Processes watchers of every cell assigned since the last call.
  bool propagate() {
    while (queue_head_ < trail_.size()) {
      const std::uint32_t cell = trail_[queue_head_++];
      for (std::size_t k = 0; k < watchers_[cell].size(); ++k)
        if (!process(watchers_[cell][k])) return false;
    }
    return true;
  }

  void undo(std::size_t mark, std::size_t watch_mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
    while (watch_trail_.size() > watch_mark) {
      watchers_[watch_trail_.back()].pop_back();
      watch_trail_.pop_back();
    }
    queue_head_ = trail_.size();
  }

  /// Returns true when the search should stop.
  bool descend(std::uint64_t from, SearchResult& result) {
    std::uint64_t cell = from;
    while (cell < value_.size() && value_[cell] >= 0) ++cell;
    if (cell == value_.size()) return leaf(result);
    for (Element v = 0; v < m_; ++v) {
      if (++stats_.nodes > spec_.node_budget)
        throw BudgetExceeded("search exceeded the node budget of " + std::to_string(spec_.node_budget));
      const std::size_t mark = trail_.size();
      const std::size_t watch_mark = watch_trail_.size();
      assign(cell, v);
      if (propagate()) {
        if (descend(cell + 1, result)) return true;
      } else {
        ++stats_.conflicts;
      }
      undo(mark, watch_mark);
    }
    return false;
  }

  FiniteAlgebra materialize() const {
    FiniteAlgebra alg(spec_.name, spec_.signature, m_);
    const auto& ops = spec_.signature.ops();
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const std::uint64_t cells = *checked_pow(m_, ops[k].arity);
      std::vector<Element> t(cells);
      for (std::uint64_t i = 0; i < cells; ++i) t[i] = static_cast<Element>(value_[op_base_[k] + i]);
      alg.set_table(ops[k].name, std::move(t));
    }
    const auto& cs = spec_.signature.constants();
    for (std::size_t j = 0; j < cs.size(); ++j) alg.set_constant(cs[j], static_cast<Element>(value_[const_base_ + j]));
    return alg;
  }

  bool leaf(SearchResult& result) {
    FiniteAlgebra alg = materialize();
    for (const auto& id : spec_.identities) {
      CheckReport r = check_identity(alg, id);
      if (!r.passed()) throw VerificationFailure("search produced a model violating " + format_report(r));
    }
    ++count_;
    if (spec_.goal == SearchGoal::CountAll) return false;
    result.witness = std::move(alg);
    return true;
  }

  const SearchSpec& spec_;
  const std::size_t m_;
  std::vector<std::uint64_t> op_base_;
  std::uint64_t const_base_ = 0;
  std::vector<std::int32_t> value_;
  std::vector<std::uint32_t> trail_;
  std::size_t queue_head_ = 0;
  std::vector<std::vector<std::uint32_t>> watchers_;
  std::vector<std::uint32_t> watch_trail_;
  std::vector<CompiledSide> programs_;
  std::vector<Instance> instances_;
  std::size_t stack_size_ = 0;
  std::size_t max_vars_ = 0;
  std::vector<std::int64_t> stack_;
  std::vector<Element> vars_;
  std::uint64_t count_ = 0;
  SearchStats stats_;
};

}  // namespace detail

/// Complete backtracking search. Cells are decided in signature order (row-major
/// within each table, constants last) with values tried in increasing order, so a
/// find-first witness is the lexicographically smallest. Every model found is
/// re-checked exhaustively before it is reported.
inline SearchResult search(const SearchSpec& spec) { return detail::SearchEngine(spec).run(); }

/// Search spec from a DSL block: `free` and `?` cells are searched, `require`
/// entries name suites (see resolve_suite) or identities from the same document.
inline SearchSpec search_spec_from(const PartialAlgebra& block, const std::vector<Identity>& document_identities = {}) {
  SearchSpec spec;
  spec.name = block.name;
  spec.signature = block.signature;
  spec.carrier = block.carrier;
  spec.tables = block.tables;
  spec.constants = block.constants;
  if (block.goal) spec.goal = parse_goal(*block.goal);
  for (const auto& req : block.requirements) {
    auto it = std::find_if(document_identities.begin(), document_identities.end(),
                           [&](const Identity& id) { return id.name == req; });
    if (it != document_identities.end()) {
      spec.identities.push_back(*it);
      continue;
    }
    auto ids = resolve_suite(req);
    spec.identities.insert(spec.identities.end(), ids.begin(), ids.end());
  }
  return spec;
}

/// Protomodular theta with strict alphas and 2-associativity. Proves non-existence
/// for m >= 2; for m = 1 finds the trivial model.
inline SearchResult prove_no_strict_2assoc(std::size_t m, std::size_t n, std::uint64_t node_budget = kDefaultNodeBudget) {
  if (n < 2) throw InvalidArgument("parameter n must be >= 2");
  SearchSpec spec;
  spec.name = "strict_2assoc_m" + std::to_string(m) + "_n" + std::to_string(n);
  spec.signature = standard_signature(n);
  spec.carrier = m;
  spec.identities = suite_protomodular(n).identities;
  for (auto& id : identity_strictness(n)) spec.identities.push_back(std::move(id));
  spec.identities.push_back(identity_2assoc(n));
  spec.goal = m >= 2 ? SearchGoal::ProveNone : SearchGoal::FindFirst;
  spec.node_budget = node_budget;
  return search(spec);
}

/// Raw count of standard-signature tables passing the semi-abelian suite and 2-associativity.
inline SearchResult count_2assoc_semiabelian(std::size_t m, std::size_t n, std::uint64_t node_budget = kDefaultNodeBudget) {
  SearchSpec spec;
  spec.name = "semiabelian_2assoc_m" + std::to_string(m) + "_n" + std::to_string(n);
  spec.signature = standard_signature(n);
  spec.carrier = m;
  spec.identities = suite_semiabelian(n).identities;
  spec.identities.push_back(identity_2assoc(n));
  spec.goal = SearchGoal::CountAll;
  spec.node_budget = node_budget;
  return search(spec);
}

/// Ternary mu satisfying the Mal'cev laws and 2-associativity (n = 2).
inline SearchResult prove_no_2assoc_malcev(std::size_t m, std::uint64_t node_budget = kDefaultNodeBudget) {
  SearchSpec spec;
  spec.name = "malcev_2assoc_m" + std::to_string(m);
  spec.signature.add_op("mu", 3);
  spec.carrier = m;
  spec.identities = identities_malcev("mu");
  spec.identities.push_back(identity_2assoc(2, "mu"));
  spec.goal = m >= 2 ? SearchGoal::ProveNone : SearchGoal::FindFirst;
  spec.node_budget = node_budget;
  return search(spec);
}

}  // namespace protoalg
