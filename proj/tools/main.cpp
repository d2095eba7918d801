#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "cli.hpp"

namespace cli = vortexlab::cli;

int main(int argc, char** argv) {
  CLI::App app{"vortexlab: vortices on singular surfaces"};
  app.require_subcommand(1);

  std::string config, outDir = "out", dir = "out";
  auto* solve = app.add_subcommand("solve", "solve a problem config and dump fields");
  solve->add_option("config", config, "problem config (JSON)")->required();
  solve->add_option("-o,--out", outDir, "output directory");

  cli::HyperbolicArgs h;
  std::string wx = "-0.8,-0.8,-0.8", wy = "-0.8,-0.8,-0.8";
  auto* hyp = app.add_subcommand("hyperbolic", "pulled-back vortex on the thrice-punctured sphere");
  hyp->add_option("--wx", wx, "weights b0,b1,binf of X");
  hyp->add_option("--wy", wy, "weights b0,b1,binf of Y");
  hyp->add_option("--map", h.map, "rational map f: Y -> X");
  hyp->add_option("--tau", h.tau, "tau (e^2 = 1/tau)");
  hyp->add_option("--samples", h.samples, "number of sample points");
  hyp->add_option("--seed", h.seed, "sampling seed");
  hyp->add_option("-o,--out", h.outDir, "output directory");

  cli::ModuliArgs m;
  auto* mod = app.add_subcommand("moduli", "closed-form moduli space quantities");
  mod->add_option("--g", m.g, "genus");
  mod->add_option("--d", m.d, "degree");
  mod->add_option("--n", m.n, "number of sections");
  mod->add_option("--V", m.V, "surface volume (VolY with --zb)");
  mod->add_option("--eSq", m.eSq, "e^2");
  mod->add_option("--tau", m.tau, "tau");
  mod->add_option("--alphaSum", m.alphaSum, "sum of parabolic weights");
  mod->add_flag("--table", m.table, "sweep g in [0, gMax], d in [0, dMax]");
  mod->add_option("--gMax", m.gMax, "table genus range");
  mod->add_option("--dMax", m.dMax, "table degree range");
  mod->add_option("--zb", m.zb, "Z_b example m,lN,lS,b");
  mod->add_option("--regularity", m.regularity, "regularity exponent for alpha,beta");

  auto* ver = app.add_subcommand("verify", "recompute checks on dumped fields");
  ver->add_option("config", config, "problem config (JSON)")->required();
  ver->add_option("-d,--dir", dir, "directory holding u.csv and report.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kParse;
  }

  if (*solve) return cli::cmd_solve(config, outDir, std::cout, std::cerr);
  if (*hyp) {
    try {
      h.wX = cli::parse_weights(wx);
      h.wY = cli::parse_weights(wy);
    } catch (const vortexlab::Error& e) {
      std::cerr << cli::error_json(e) << "\n";
      return cli::exit_code_for(e.code());
    }
    return cli::cmd_hyperbolic(h, std::cout, std::cerr);
  }
  if (*mod) return cli::cmd_moduli(m, std::cout, std::cerr);
  return cli::cmd_verify(config, dir, std::cout, std::cerr);
}
