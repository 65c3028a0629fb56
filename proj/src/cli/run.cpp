#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "minkqm/cli.hpp"
#include "minkqm/errors.hpp"

namespace minkqm::cli {

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitResource = 4;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments of the Minkowski question mark function", "minkqm"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string output = "human";
  std::optional<std::string> cache;
  app.add_option("--precision", cfg.precision, "target decimal digits (6..60)");
  app.add_option("--output", output, "human, json or csv")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--cache", cache, "moment cache file (MINKQM_CACHE overrides)");
  app.add_option("--threads", cfg.threads, "OpenMP threads");
  app.add_option("--lmax", cfg.lmax);
  app.add_option("--Q", cfg.Q);
  app.add_option("--B", cfg.B);
  app.add_option("--n", cfg.n);
  app.add_option("--N", cfg.N);
  app.add_option("--K", cfg.K, "prefix length for cf convert");
  app.add_option("--nodes", cfg.nodes, "quadrature nodes per axis");
  app.add_option("--T", cfg.T);
  app.add_option("--X", cfg.X);
  app.add_option("--rule", cfg.rule, "tanh-sinh or gauss-legendre-composite");
  int L = 1, Lmax = 6;
  std::string method = "series";
  app.add_option("--L", L);
  app.add_option("--method", method)->check(CLI::IsMember({"series", "farey", "bessel"}));
  app.add_option("--Lmax", Lmax);

  std::function<Report()> action;
  std::string x;
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* g, const std::string& name, std::function<Report()> body) {
    CLI::App* s = g->add_subcommand(name);
    s->fallthrough();
    s->callback([&action, body] { action = body; });
    return s;
  };

  CLI::App* qm = group("qm", "question mark evaluation");
  leaf(qm, "eval", [&] { return qm_eval(x, cfg); })->add_option("x", x, "p/q, [0;..] or [[..]]")->required();
  CLI::App* cf = group("cf", "continued fractions");
  leaf(cf, "expand", [&] { return cf_expand(x, cfg); })->add_option("x", x)->required();
  leaf(cf, "convert", [&] { return cf_convert(x, cfg); })->add_option("x", x)->required();
  CLI::App* mom = group("moments", "moment computation");
  leaf(mom, "compute", [&] { return moments_compute(L, method, cfg); });
  leaf(mom, "table", [&] { return moments_table(Lmax, method, cfg); });
  CLI::App* conj = group("conjecture", "Q_n recurrence");
  leaf(conj, "qseq", [&] { return conjecture_qseq(cfg.n.value_or(8), cfg); });
  leaf(conj, "m2", [&] { return conjecture_m2(cfg); });
  CLI::App* ver = group("verify", "invariant suite");
  leaf(ver, "all", [&] { return verify_all(cfg, &err); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!action) {
    err << app.help();
    return kExitUsage;
  }

  try {
    cfg.output = output == "json" ? OutputFormat::json : output == "csv" ? OutputFormat::csv : OutputFormat::human;
    cfg.cache_path = cache;
    cfg.validate();
    if (cfg.threads) omp_set_num_threads(*cfg.threads);
    const Report report = action();
    render(report, cfg.output, out);
    return report.all_pass() ? 0 : kExitChecksFailed;
  } catch (const PrecisionUnreachable& e) {
    err << "precision unreachable: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace minkqm::cli
