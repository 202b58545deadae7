// protoalg: command-line front end.
//
// Exit codes: 0 pass, 1 semantic failure, 2 input error, 3 budget refusal.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "protoalg/protoalg.hpp"
#include "protoalg/report_json.hpp"

namespace pa = protoalg;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct Common {
  std::string mode = "exhaustive";
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0x5eed;
  std::uint64_t budget = 0;
  std::string format = "text";
  std::string out;
  unsigned threads = 1;

  bool structured() const { return format == "structured"; }
};

class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const pa::PartialAlgebra& pick_block(const pa::Document& doc, const std::string& name) {
  if (doc.algebras.empty()) throw InputError("no algebra block in the input");
  if (!name.empty()) {
    for (const auto& a : doc.algebras)
      if (a.name == name) return a;
    throw InputError("no algebra named '" + name + "'");
  }
  if (doc.algebras.size() > 1) throw InputError("several algebra blocks; choose one with --algebra");
  return doc.algebras.front();
}

pa::FiniteAlgebra load_algebra(const std::string& path, const std::string& name = {}) {
  pa::Document doc = pa::parse_document(read_file(path));
  const auto& block = pick_block(doc, name);
  if (!block.complete()) throw InputError("algebra '" + block.name + "' has free cells");
  return block.to_algebra();
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << text;
}

pa::CheckMode check_mode(const Common& c) {
  if (c.mode == "exhaustive") {
    pa::Exhaustive ex;
    if (c.budget) ex.budget = c.budget;
    ex.threads = c.threads;
    return ex;
  }
  if (c.mode == "sampled") return pa::Sampled{c.samples, c.seed, {}};
  throw InputError("unknown mode '" + c.mode + "'");
}

int cmd_check(const Common& c, const std::string& file, const std::string& algebra,
              const std::vector<std::string>& suites, const std::vector<std::string>& names) {
  pa::Document doc = pa::parse_document(read_file(file));
  const auto& block = pick_block(doc, algebra);
  if (!block.complete()) throw InputError("algebra '" + block.name + "' has free cells");
  pa::FiniteAlgebra alg = block.to_algebra();
  pa::CheckReport valid = pa::validate_algebra(alg);
  if (!valid.passed()) throw InputError(pa::format_report(valid));

  std::vector<pa::Identity> ids;
  for (const auto& s : suites) {
    auto found = pa::resolve_suite(s);
    ids.insert(ids.end(), found.begin(), found.end());
  }
  for (const auto& n : names) {
    auto it = std::find_if(doc.identities.begin(), doc.identities.end(), [&](const pa::Identity& id) { return id.name == n; });
    if (it != doc.identities.end()) {
      ids.push_back(*it);
    } else {
      auto found = pa::resolve_suite(n);
      ids.insert(ids.end(), found.begin(), found.end());
    }
  }
  if (suites.empty() && names.empty()) ids = doc.identities;
  if (ids.empty()) throw InputError("nothing to check: give --suite or --identity, or put identities in the file");

  auto reports = pa::check_all(alg, ids, check_mode(c));
  if (c.structured()) {
    emit(c, json{{"algebra", alg.name()}, {"passed", pa::all_passed(reports)}, {"reports", pa::to_json(reports)}}.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& r : reports) text += pa::format_report(r) + "\n";
    emit(c, text);
  }
  return pa::all_passed(reports) ? kPass : kFail;
}

struct ConstructArgs {
  std::string name;
  std::size_t m = 2, n = 1, i = 1, k = 1, q = 2;
  std::string variant = "ab-c";
  std::string lattice = "chain:2";
  std::string shape = "cyclic";
  std::string factors;
  bool alphas = false;
  bool retractions = false;
};

pa::LatticeSpec parse_lattice(const std::string& s) {
  if (s == "diamond") return pa::diamond_lattice();
  auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("lattice must be chain:k, boolean:k or diamond");
  const std::string kind = s.substr(0, colon);
  const std::size_t k = std::stoul(s.substr(colon + 1));
  if (kind == "chain") return pa::chain_lattice(k);
  if (kind == "boolean") return pa::boolean_lattice(k);
  throw InputError("unknown lattice '" + s + "'");
}

pa::FiniteAlgebra construct(const ConstructArgs& a) {
  if (a.name == "projection") return pa::build_projection_algebra(a.m, a.n, a.i);
  if (a.name == "semigroup") return pa::build_semigroup_algebra(pa::cyclic_group(a.m).monoid, a.n, a.i);
  if (a.name == "product") {
    std::vector<pa::ProductFactor> factors;
    std::stringstream ss(a.factors);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw InputError("factors are order:index pairs, e.g. 2:1,3:2");
      factors.push_back({pa::cyclic_group(std::stoul(item.substr(0, colon))).monoid, std::stoul(item.substr(colon + 1))});
    }
    return pa::build_product_semigroup_algebra(factors, a.n);
  }
  if (a.name == "matrix-rows") return pa::build_matrix_row_algebra(a.q, a.n);
  if (a.name == "bounded-monoid") return pa::build_bounded_monoid_algebra(pa::cyclic_group(a.m).monoid, a.n);
  if (a.name == "lattice") {
    pa::LatticeTheta v;
    if (a.variant == "ab-c") v = pa::LatticeTheta::JoinFirstMeetLast;
    else if (a.variant == "ac-b") v = pa::LatticeTheta::JoinOuterMeetMiddle;
    else throw InputError("variant must be ab-c or ac-b");
    return pa::build_lattice_theta(parse_lattice(a.lattice), v, a.alphas);
  }
  if (a.name == "boolean") return pa::build_boolean_protomodular(a.k);
  if (a.name == "maps") return pa::build_map_composition_algebra(a.m, a.n, a.retractions);
  if (a.name == "semiloop") {
    if (a.shape != "cyclic" && a.shape != "twisted") throw InputError("shape must be cyclic or twisted");
    return pa::build_strict_semiloop(a.m, a.shape == "cyclic" ? pa::SemiloopShape::Cyclic : pa::SemiloopShape::Twisted);
  }
  throw InputError("unknown construction '" + a.name + "'");
}

int cmd_derive_group(const Common& c, const std::string& file, const std::string& algebra) {
  pa::FiniteAlgebra alg = load_algebra(file, algebra);
  pa::DerivedGroup g = pa::derive_group(alg);
  const std::string dsl = pa::serialize(pa::group_algebra(g.group, alg.name() + "_group"));
  std::ostringstream hash;
  hash << std::hex << g.source_hash;
  if (c.structured()) {
    emit(c, json{{"group", pa::to_json(g.group)}, {"source_hash", hash.str()}, {"dsl", dsl},
                 {"verified", {"semiabelian", "2assoc", "associativity", "unit", "inverse", "inverse_formula"}}}
                .dump(2) + "\n");
  } else {
    emit(c, "# GROUP " + alg.name() + " source_hash=" + hash.str() +
                "\n# CHECK preconditions PASS\n# CHECK associativity PASS\n# CHECK unit PASS\n# CHECK inverses PASS\n"
                "# CHECK inverse_formula PASS\n" + dsl);
  }
  return kPass;
}

int cmd_to_enriched(const Common& c, const std::string& file, const std::string& algebra) {
  pa::FiniteAlgebra alg = load_algebra(file, algebra);
  pa::EnrichedGroup eg = pa::to_enriched(alg);
  emit(c, pa::serialize(pa::enriched_algebra(eg, alg.name() + "_enriched")));
  return kPass;
}

int cmd_from_enriched(const Common& c, const std::string& file, const std::string& algebra) {
  pa::FiniteAlgebra alg = load_algebra(file, algebra);
  pa::FiniteAlgebra out = pa::from_enriched(pa::enriched_from_algebra(alg), alg.name() + "_theta");
  emit(c, pa::serialize(out));
  return kPass;
}

int cmd_malcev(const Common& c, const std::string& file, const std::string& algebra) {
  pa::FiniteAlgebra alg = load_algebra(file, algebra);
  pa::MalcevResult mr = pa::malcev_term(alg);
  pa::ExpandedMalcevReport er = pa::check_expanded_malcev_assoc(alg);
  if (c.structured()) {
    emit(c, json{{"dsl", pa::serialize(mr.mu)},
                 {"laws", pa::to_json(mr.laws)},
                 {"associativity", pa::to_json(mr.associativity)},
                 {"expanded_associativity", pa::to_json(er.expanded)},
                 {"agree", er.agree()}}
                .dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& r : mr.laws) text += "# " + pa::format_report(r) + '\n';
    text += "# " + pa::format_report(mr.associativity) + '\n' + "# " + pa::format_report(er.expanded) + '\n';
    emit(c, text + pa::serialize(mr.mu));
  }
  return mr.laws_pass() && er.agree() ? kPass : kFail;
}

int cmd_search(const Common& c, const std::string& file, const std::string& algebra, const std::string& goal) {
  pa::Document doc = pa::parse_document(read_file(file));
  pa::SearchSpec spec = pa::search_spec_from(pick_block(doc, algebra), doc.identities);
  if (!goal.empty()) spec.goal = pa::parse_goal(goal);
  if (c.budget) spec.node_budget = c.budget;
  if (spec.identities.empty()) throw InputError("search needs at least one `require` entry");
  pa::SearchResult r = pa::search(spec);
  if (c.structured()) {
    emit(c, pa::to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream text;
    text << "# goal " << pa::to_string(r.goal) << " outcome " << pa::to_string(r.outcome);
    if (r.outcome == pa::SearchResult::Outcome::Count) text << " count=" << r.count;
    text << " free_cells=" << r.stats.free_cells << " space=10^" << r.stats.space_log10 << " nodes=" << r.stats.nodes
         << " conflicts=" << r.stats.conflicts << " forced=" << r.stats.forced << '\n';
    if (r.witness) text << pa::serialize(*r.witness);
    emit(c, text.str());
  }
  return r.goal_met() ? kPass : kFail;
}

int cmd_verify(const Common& c, const std::vector<std::string>& only, const std::string& bool2) {
  pa::VerifyOptions opt;
  opt.only = only;
  if (!bool2.empty()) opt.bool2 = load_algebra(bool2);
  auto results = pa::run_verification(opt);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && r.passed();
    if (c.structured())
      arr.push_back({{"criterion", r.number}, {"slug", r.slug}, {"title", r.title}, {"passed", r.passed()},
                     {"seconds", r.seconds}, {"limit_seconds", r.limit_seconds}, {"detail", r.detail}});
    else
      std::cout << pa::format_result(r) << '\n';
  }
  if (c.structured()) emit(c, json{{"passed", ok}, {"criteria", arr}}.dump(2) + "\n");
  else std::cout << (ok ? "ALL PASS" : "SOME FAILED") << '\n';
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite algebra workbench for protomodular and 2-associative operations"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", common.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    sub->add_option("--samples", common.samples, "sampled tuples per identity")->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "seed for sampled mode");
    sub->add_option("--budget", common.budget, "tuple budget (check) or node budget (search)")->check(CLI::PositiveNumber);
    sub->add_option("--format", common.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", common.out, "write DSL or report output to a file");
    sub->add_option("--threads", common.threads, "worker threads for exhaustive checks")->check(CLI::PositiveNumber);
  };

  std::string file, algebra, goal, bool2;
  std::vector<std::string> suites, names, only;
  ConstructArgs cargs;

  auto* check = app.add_subcommand("check", "check identities on an algebra");
  check->add_option("file", file)->required();
  check->add_option("--algebra", algebra, "algebra block to use");
  check->add_option("--suite", suites, "suite reference such as protomodular:2");
  check->add_option("--identity", names, "identity from the file, or a suite reference");
  add_common(check);

  auto* cons = app.add_subcommand("construct", "emit a catalog algebra");
  cons->add_option("name", cargs.name,
                   "projection | semigroup | product | matrix-rows | bounded-monoid | lattice | boolean | maps | semiloop")
      ->required();
  cons->add_option("--m", cargs.m, "carrier or group order");
  cons->add_option("--n", cargs.n, "theta takes n+1 arguments");
  cons->add_option("--i", cargs.i, "argument index");
  cons->add_option("--k", cargs.k, "Boolean algebra rank");
  cons->add_option("--q", cargs.q, "matrix entry count");
  cons->add_option("--variant", cargs.variant, "lattice theta: ab-c or ac-b");
  cons->add_option("--lattice", cargs.lattice, "chain:k, boolean:k or diamond");
  cons->add_option("--shape", cargs.shape, "semiloop shape: cyclic or twisted");
  cons->add_option("--factors", cargs.factors, "product factors as order:index, e.g. 2:1,3:2");
  cons->add_flag("--alphas", cargs.alphas, "attach alphas and units to a lattice theta");
  cons->add_flag("--retractions", cargs.retractions, "maps: keep only idempotent maps");
  add_common(cons);

  auto* derive = app.add_subcommand("derive-group", "derive the group of a 2-associative semi-abelian algebra");
  auto* to_e = app.add_subcommand("to-enriched", "convert to an enriched group");
  auto* from_e = app.add_subcommand("from-enriched", "convert an enriched group back to theta form");
  auto* malcev = app.add_subcommand("malcev", "materialize and check the Mal'cev term");
  for (auto* sub : {derive, to_e, from_e, malcev}) {
    sub->add_option("file", file)->required();
    sub->add_option("--algebra", algebra, "algebra block to use");
    add_common(sub);
  }

  auto* srch = app.add_subcommand("search", "search for tables satisfying identities");
  srch->add_option("file", file)->required();
  srch->add_option("--algebra", algebra, "algebra block to use");
  srch->add_option("--goal", goal, "find-first, count-all or prove-none (overrides the file)");
  add_common(srch);

  auto* verify = app.add_subcommand("verify-paper", "run every acceptance criterion");
  verify->add_option("--only", only, "criterion numbers or slugs, comma separated")->delimiter(',');
  verify->add_option("--bool2", bool2, "replacement for the two-element Boolean algebra");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    if (*check) return cmd_check(common, file, algebra, suites, names);
    if (*cons) {
      emit(common, pa::serialize(construct(cargs)));
      return kPass;
    }
    if (*derive) return cmd_derive_group(common, file, algebra);
    if (*to_e) return cmd_to_enriched(common, file, algebra);
    if (*from_e) return cmd_from_enriched(common, file, algebra);
    if (*malcev) return cmd_malcev(common, file, algebra);
    if (*srch) return cmd_search(common, file, algebra, goal);
    if (*verify) return cmd_verify(common, only, bool2);
  } catch (const pa::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return kBudget;
  } catch (const pa::PreconditionFailed& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kFail;
  } catch (const pa::VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kFail;
  } catch (const pa::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const pa::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
