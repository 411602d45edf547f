// Command-line front end: bound | simulate | exact | compare.
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "cutbound/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds and Monte Carlo estimates for the minimum cut capacity "
               "of weighted random graphs"};
  app.require_subcommand(1);
  cutbound::CliOptions opts;

  auto add_ensemble = [&](CLI::App* cmd) {
    cmd->add_option("--k", opts.k, "number of labeled vertices")->required();
    cmd->add_option("--n", opts.n, "number of edges")->required();
    cmd->add_option("--mu", opts.mu,
                    "edge weight pmf over weights 1..q, comma separated "
                    "(exact decimals or rationals, e.g. 0.1,0.2,0.4,0.2,0.1)")
        ->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out-dir", opts.out_dir, "output directory (default .)");
    cmd->add_option("--format", opts.format, "csv | json | both (default both)");
  };

  CLI::App* bound = app.add_subcommand("bound", "compute the tail lower-bound curve");
  add_ensemble(bound);
  add_output(bound);
  bound->add_option("--delta-max", opts.delta_max,
                    "largest delta (default: twice the zero-crossing delta)");
  bound->add_option("--representation", opts.representation,
                    "exact | log | both (default exact)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo empirical curve");
  add_ensemble(simulate);
  add_output(simulate);
  simulate->add_option("--delta-max", opts.delta_max, "cap on the reported delta range");
  simulate->add_option("--instances", opts.instances, "number of sampled graphs (default 10000)");
  simulate->add_option("--seed", opts.seed, "master seed (default 1)");
  simulate->add_option("--workers", opts.workers, "worker threads (default 1; no effect on output)");

  CLI::App* exact = app.add_subcommand("exact", "full-enumeration oracle (small ensembles)");
  add_ensemble(exact);
  add_output(exact);
  exact->add_option("--delta-max", opts.delta_max, "largest delta (default: max lambda + 1)");

  CLI::App* compare = app.add_subcommand("compare", "gap table: bound vs empirical");
  compare->add_option("bound_file", opts.bound_file, "bound.json produced by `bound`")->required();
  compare->add_option("empirical_file", opts.empirical_file,
                      "empirical.json produced by `simulate` (or a bound.json for self-checks)")
      ->required();
  compare->add_option("--window", opts.window, "LO..HI window for the max-gap summary");
  add_output(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage errors map to exit code 1 regardless of CLI11's own codes
  }

  CLI::App* active = app.get_subcommands().front();
  opts.has_delta_max = active != compare && active->count("--delta-max") > 0;

  std::function<int()> body;
  if (active == bound) body = [&] { return cutbound::run_bound(opts); };
  else if (active == simulate) body = [&] { return cutbound::run_simulate(opts); };
  else if (active == exact) body = [&] { return cutbound::run_exact(opts); };
  else body = [&] { return cutbound::run_compare(opts); };
  return cutbound::run_cli(body);
}
