// gvar: conditions | construct | variation | verify | oracle-check

#include <iostream>

#include "CLI11.hpp"
#include "gvar/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generalized variation toolkit"};
  app.require_subcommand(1);

  gvar::CommandOptions opts;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", opts.seed, "random seed");
    sub->add_option("--budget-depth", opts.budget_depth, "dyadic search depth")->check(CLI::Range(1, 12));
    sub->add_option("--k", opts.k, "number of construction terms")->check(CLI::Range(0, 64));
    sub->add_option("--nmax", opts.n_max, "largest n for condition tables");
  };

  using Cmd = int (*)(const gvar::CommandOptions&, std::ostream&);
  Cmd chosen = nullptr;
  const std::pair<const char*, Cmd> table[] = {
      {"conditions", gvar::cmd_conditions},
      {"construct", gvar::cmd_construct},
      {"variation", gvar::cmd_variation},
      {"verify", gvar::cmd_verify},
      {"oracle-check", gvar::cmd_oracle_check},
  };
  for (const auto& [name, fn] : table) {
    CLI::App* sub = app.add_subcommand(name);
    common(sub);
    sub->callback([&chosen, f = fn] { chosen = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gvar::kExitConfig;
  }
  return chosen(opts, std::cerr);
}
