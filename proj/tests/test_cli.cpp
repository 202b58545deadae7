#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(PROTOALG_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const std::string& name) { return std::string(PROTOALG_SAMPLES) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "protoalg_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, CheckPassesAndFails) {
  CliRun ok = run("check " + sample("bool2.alg") + " --suite protomodular:2");
  EXPECT_EQ(ok.code, 0) << ok.output;
  EXPECT_TRUE(contains(ok.output, "IDENTITY theta_recovers PASS"));

  CliRun semi = run("check " + sample("bool2.alg") + " --suite semiabelian:2");
  EXPECT_EQ(semi.code, 1) << semi.output;

  CliRun chain = run("check " + sample("chain2.alg"));
  EXPECT_EQ(chain.code, 1) << chain.output;
  EXPECT_TRUE(contains(chain.output, "counterexample: a1=0,a2=0,b1=0,b2=1,c=1")) << chain.output;

  CliRun suite_ref = run("check " + sample("chain2.alg") + " --identity 1assoc:2");
  EXPECT_EQ(suite_ref.code, 1) << suite_ref.output;
  CliRun two = run("check " + sample("chain2.alg") + " --identity 2assoc:2");
  EXPECT_EQ(two.code, 0) << two.output;
}

TEST(Cli, SampledModeReportsTheSeed) {
  CliRun r = run("check " + sample("z3_n2.alg") + " --suite 2assoc:2 --mode sampled --samples 50 --seed 9");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "seed=9")) << r.output;
}

TEST(Cli, StructuredOutput) {
  CliRun r = run("check " + sample("chain2.alg") + " --format structured");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.output, "\"counterexample_order\"")) << r.output;
  EXPECT_TRUE(contains(r.output, "\"verdict\": \"fail\"")) << r.output;
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run("check /nonexistent/file.alg --suite protomodular:2").code, 2);
  EXPECT_EQ(run("check " + sample("bool2.alg") + " --suite nonsense:2").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);

  auto bad = scratch("bad.alg");
  std::ofstream(bad) << "algebra A {\n  carrier 2\n  op f/2 = [0, 1, 2, 0]\n}\n";
  CliRun r = run("check " + bad.string() + " --suite 2assoc:1@f");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.output, "line 3, column 19")) << r.output;
}

TEST(Cli, BudgetRefusals) {
  EXPECT_EQ(run("check " + sample("z3_n2.alg") + " --suite 2assoc:2 --budget 10").code, 3);
  EXPECT_EQ(run("search " + sample("strict_2assoc_m3.alg") + " --budget 5").code, 3);
}

TEST(Cli, ConstructRoundTrips) {
  auto out = scratch("maps.alg");
  CliRun c = run("construct maps --m 2 --n 2 --out " + out.string());
  ASSERT_EQ(c.code, 0) << c.output;
  CliRun r = run("check " + out.string() + " --suite 2assoc:2");
  EXPECT_EQ(r.code, 0) << r.output;

  CliRun lattice = run("construct lattice --lattice chain:3 --variant ac-b");
  EXPECT_EQ(lattice.code, 0);
  EXPECT_TRUE(contains(lattice.output, "carrier 3"));
  EXPECT_EQ(run("construct lattice --lattice diamond").code, 2);
  EXPECT_EQ(run("construct bounded-monoid --m 2 --n 2").code, 1);
  EXPECT_EQ(run("construct matrix-rows --q 4 --n 3").code, 3);
}

TEST(Cli, DeriveGroup) {
  CliRun ok = run("derive-group " + sample("z3_n2.alg"));
  EXPECT_EQ(ok.code, 0) << ok.output;
  EXPECT_TRUE(contains(ok.output, "op mul/2 = [0, 1, 2, 1, 2, 0, 2, 0, 1]")) << ok.output;
  EXPECT_TRUE(contains(ok.output, "op inv/1 = [0, 2, 1]")) << ok.output;

  CliRun refused = run("derive-group " + sample("bool2.alg"));
  EXPECT_EQ(refused.code, 1);
  EXPECT_TRUE(contains(refused.output, "not semi-abelian")) << refused.output;
}

TEST(Cli, EnrichedRoundTrip) {
  auto eg = scratch("z3_enriched.alg");
  ASSERT_EQ(run("to-enriched " + sample("z3_n2.alg") + " --out " + eg.string()).code, 0);
  CliRun back = run("from-enriched " + eg.string());
  EXPECT_EQ(back.code, 0) << back.output;
  EXPECT_TRUE(contains(back.output, "op alpha1/2 = [0, 2, 1, 1, 0, 2, 2, 1, 0]")) << back.output;
}

TEST(Cli, Malcev) {
  CliRun r = run("malcev " + sample("bool2.alg"));
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(contains(r.output, "op mu/3")) << r.output;
  EXPECT_TRUE(contains(r.output, "malcev_assoc FAIL")) << r.output;
}

TEST(Cli, Search) {
  CliRun none = run("search " + sample("malcev_2assoc_m2.alg"));
  EXPECT_EQ(none.code, 0) << none.output;
  EXPECT_TRUE(contains(none.output, "none-exists"));

  CliRun first = run("search " + sample("semiabelian_2assoc_m2_n2.alg"));
  EXPECT_EQ(first.code, 0) << first.output;
  EXPECT_TRUE(contains(first.output, "op theta/3 = [0, 1, 0, 1, 1, 0, 1, 0]")) << first.output;

  CliRun count = run("search " + sample("semiabelian_2assoc_m2_n2.alg") + " --goal count-all");
  EXPECT_EQ(count.code, 0) << count.output;
  EXPECT_TRUE(contains(count.output, "count=16")) << count.output;

  CliRun missed = run("search " + sample("malcev_2assoc_m2.alg") + " --goal find-first");
  EXPECT_EQ(missed.code, 1) << missed.output;
}

TEST(Cli, AcceptanceCommand) {
  CliRun all = run("verify-paper");
  EXPECT_EQ(all.code, 0) << all.output;
  EXPECT_TRUE(contains(all.output, "CRITERION 13 example-constructions PASS")) << all.output;

  CliRun some = run("verify-paper --only 1,lattice-2assoc");
  EXPECT_EQ(some.code, 0) << some.output;
  EXPECT_TRUE(contains(some.output, "CRITERION 2 ")) << some.output;
  EXPECT_FALSE(contains(some.output, "CRITERION 3 ")) << some.output;

  CliRun corrupted = run("verify-paper --only 1 --bool2 " + sample("bool2_corrupted.alg"));
  EXPECT_EQ(corrupted.code, 1) << corrupted.output;
  EXPECT_TRUE(contains(corrupted.output, "CRITERION 1 boolean-protomodular FAIL")) << corrupted.output;

  EXPECT_EQ(run("verify-paper --only 99").code, 2);
}
