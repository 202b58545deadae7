#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "protoalg/verification.hpp"

namespace {

constexpr double kEndToEndLimitSeconds = 180;

struct EndToEnd {
  int code = -1;
  int pass_lines = 0;
  double seconds = 0;
};

EndToEnd run_cli() {
  EndToEnd r;
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = popen((std::string(PROTOALG_CLI) + " verify-paper 2>&1").c_str(), "r");
  if (!pipe) return r;
  char line[4096];
  while (std::fgets(line, sizeof line, pipe)) {
    const std::string s(line);
    if (s.rfind("CRITERION ", 0) == 0 && s.find(" PASS ") != std::string::npos) ++r.pass_lines;
  }
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

int main() {
  bool all = true;
  for (const auto& r : protoalg::run_verification()) {
    std::cout << protoalg::format_result(r) << '\n';
    all = all && r.passed();
  }

  const EndToEnd e = run_cli();
  const bool ok = e.code == 0 && e.pass_lines == 13 && e.seconds < kEndToEndLimitSeconds;
  std::printf("CRITERION 14 cli-end-to-end %s time=%.3fs limit=%.3fs # exit=%d pass_lines=%d\n",
              ok ? "PASS" : "FAIL", e.seconds, kEndToEndLimitSeconds, e.code, e.pass_lines);
  all = all && ok;
  return all ? 0 : 1;
}
