// Command-line surface for the GOE-Airy Pfaffian laboratory.
#include <CLI11.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "goepf/report.hpp"

namespace {

bool parse_window(const std::string& s, double& lo, double& hi) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) return false;
  try {
    lo = std::stod(s.substr(0, pos));
    hi = std::stod(s.substr(pos + 1));
  } catch (...) {
    return false;
  }
  return true;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "goepf: GOE-Airy Pfaffian point-process numerics (Airy kernel entries, "
      "Fredholm Pfaffians, Tracy-Widom GOE, fractional moments, tail "
      "exponents)"};
  app.set_config("--config", "", "INI config file (flags override)");
  app.require_subcommand(1);

  goepf::RunConfig cfg;
  std::string window;
  std::vector<std::string> point_strs;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--window", window, "integration window lo:hi");
    sub->add_option("--m", cfg.m, "quadrature nodes on the window");
    sub->add_option("--lmax", cfg.L_max, "series truncation order (1..3)");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv|json");
  };

  CLI::App* airy = app.add_subcommand(
      "airy", "Airy function Ai, Ai', upper tail and square tail");
  airy->add_option("--x", cfg.x_list, "evaluation points")->delimiter(',');
  add_shared(airy);

  CLI::App* kernel = app.add_subcommand(
      "kernel", "matrix-kernel entries K11/K12/K21/K22 of the GOE-Airy "
                "point process");
  kernel->add_option("--x", cfg.x_list, "first arguments")->delimiter(',');
  kernel->add_option("--y", cfg.s0_list, "second arguments (default --x)")
      ->delimiter(',');
  add_shared(kernel);

  CLI::App* corr = app.add_subcommand(
      "correlation", "correlation function rho_L = Pf[K(x_i, x_j)]");
  corr->add_option("--points", point_strs,
                   "comma-separated point set; repeatable");
  add_shared(corr);

  CLI::App* lap = app.add_subcommand(
      "laplace", "Laplace transform E[exp(-s Z e^{t/12})] via the Fredholm "
                 "Pfaffian with the Fermi factor");
  lap->add_option("--s", cfg.s_list, "Laplace variables")->delimiter(',');
  lap->add_option("--t", cfg.t_list, "times")->delimiter(',');
  add_shared(lap);

  CLI::App* goe = app.add_subcommand(
      "goe-cdf", "Tracy-Widom GOE distribution function");
  goe->add_option("--s0", cfg.s0_list, "evaluation points")->delimiter(',');
  add_shared(goe);

  CLI::App* mom = app.add_subcommand(
      "moments", "fractional moment decomposition: leading term, higher "
                 "terms, remainder bound");
  mom->add_option("--p", cfg.p_list, "moment orders")->delimiter(',');
  mom->add_option("--t", cfg.t_list, "times")->delimiter(',');
  add_shared(mom);

  CLI::App* lya = app.add_subcommand(
      "lyapunov", "leading-term growth fit log A = a t + b log t + c");
  lya->add_option("--p", cfg.p_list, "moment order")->delimiter(',');
  lya->add_option("--t", cfg.t_list, "times (>= 4)")->delimiter(',');
  add_shared(lya);

  CLI::App* tail = app.add_subcommand(
      "tail", "Chernoff upper-tail exponent versus the closed-form rate "
              "(2/3) s^{3/2}");
  tail->add_option("--s", cfg.s_list, "deviations")->delimiter(',');
  tail->add_option("--t", cfg.t_list, "time")->delimiter(',');
  tail->add_option("--p-grid", cfg.p_grid, "moment orders")->delimiter(',');
  add_shared(tail);

  CLI::App* audit = app.add_subcommand(
      "audit", "fit-and-verify the kernel/Pfaffian/profile inequality "
               "envelopes");
  audit->add_option("--suite", cfg.suite,
                    "k12|kernel|pf|phi|laplace_profiles|integration|bpl");
  audit->add_option("--density", cfg.density, "base grid density multiplier");
  add_shared(audit);

  CLI11_PARSE(app, argc, argv);

  if (!window.empty() &&
      !parse_window(window, cfg.window_lo, cfg.window_hi)) {
    std::fprintf(stderr, "error (validation): bad --window, expected lo:hi\n");
    return 1;
  }
  for (const std::string& s : point_strs)
    cfg.point_sets.push_back(parse_list(s));

  for (CLI::App* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    return goepf::run(cfg);
  }
  return 1;
}
