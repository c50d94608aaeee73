#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "surreal/expr.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact surreal-number calculator"};
  surreal::Budget budget;
  bool json = false;
  std::vector<std::string> batch;
  app.add_option("--terms", budget.max_terms, "Terms forced per stream")->check(CLI::PositiveNumber);
  app.add_option("--prec", budget.prec, "Coefficient precision in bits")->check(CLI::PositiveNumber);
  app.add_option("--depth", budget.depth, "Exponent nesting depth")->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--batch", batch, "Evaluate command files and exit")->check(CLI::ExistingFile);
  CLI11_PARSE(app, argc, argv);

  if (!batch.empty()) return surreal::run_batch(batch, budget, json, std::cout);

  surreal::Session s;
  s.budget = budget;
  s.json = json;
  const bool tty = isatty(STDIN_FILENO) != 0;
  bool failed = false;
  std::string line;
  for (std::size_t n = 1;; ++n) {
    if (tty) std::cout << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (surreal::run_line(line, n, s, std::cout) == surreal::LineStatus::Error) failed = true;
  }
  if (tty) std::cout << '\n';
  return failed && !tty ? 1 : 0;
}
