// Command line front end: solve a domain and export boundary kernels,
// run the identity verification suite, or sample named fields on a grid.
// Exit codes: 0 success, 1 identity failure, 2 bad configuration or
// usage, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kernmap/kernmap.hpp"

namespace {

using namespace kernmap;

cplx parse_point(const std::string& s) {
  double re = 0.0, im = 0.0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2)
    throw ConfigError("point must be given as re,im (got \"" + s + "\")");
  return cplx(re, im);
}

std::string config_label(const std::string& path) {
  std::string base = std::filesystem::path(path).stem().string();
  return base.empty() ? std::string("domain") : base;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int m_override = 0;
  std::vector<std::string> w_args;
};

JobConfig load_job(const CommonArgs& args) {
  JobConfig cfg = load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
  if (args.m_override > 0) cfg.nodes_per_curve = args.m_override;
  if (!args.w_args.empty()) {
    cfg.sources.clear();
    for (const std::string& s : args.w_args) cfg.sources.push_back(parse_point(s));
  }
  return cfg;
}

DomainContext build_context(const JobConfig& cfg) {
  return DomainContext::build(cfg.domain, cfg.nodes_per_curve, cfg.base_point, cfg.sources);
}

std::string out_path(const JobConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output_dir);
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

int cmd_solve(const CommonArgs& args) {
  const JobConfig cfg = load_job(args);
  const DomainContext ctx = build_context(cfg);
  write_kernels_csv(out_path(cfg, "kernels.csv"), ctx);
  write_map_csv(out_path(cfg, "map.csv"), ctx);
  write_frame_json(out_path(cfg, "frame.json"), ctx);
  std::cout << "solved " << ctx.grid().n << " curves with " << ctx.grid().m
            << " nodes per curve\n"
            << "wrote kernels.csv, map.csv, frame.json to " << cfg.output_dir << "\n";
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  const JobConfig cfg = load_job(args);
  const DomainContext ctx = build_context(cfg);
  VerifySuite suite(ctx, config_label(args.config_path), cfg.tolerances);
  const std::vector<CheckRecord> records = suite.run();
  std::cout << format_report_table(records);
  write_report_json(out_path(cfg, "report.json"), records);
  bool all = true;
  for (const CheckRecord& r : records) all = all && r.pass;
  std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? 0 : 1;
}

int cmd_export(const CommonArgs& args, const std::string& quantity) {
  const JobConfig cfg = load_job(args);
  const DomainContext ctx = build_context(cfg);
  const BoundaryGrid& g = ctx.grid();

  auto safe_field = [&](const std::function<double(cplx)>& f) {
    return [f](cplx z) {
      try {
        return f(z);
      } catch (const NumericalError&) {
        return std::nan("");
      }
    };
  };

  auto indexed = [&](const std::string& prefix) -> std::optional<int> {
    if (quantity.rfind(prefix + "_", 0) != 0) return std::nullopt;
    const std::string tail = quantity.substr(prefix.size() + 1);
    try {
      const int k = std::stoi(tail);
      if (k < 1 || k > ctx.frame().holes())
        throw ConfigError("quantity index out of range: " + quantity);
      return k - 1;
    } catch (const std::invalid_argument&) {
      throw ConfigError("bad quantity index in: " + quantity);
    }
  };

  if (quantity == "green") {
    for (std::size_t s = 0; s < ctx.sources().size(); ++s) {
      const GreenAssembly asmw = ctx.assembly(ctx.sources()[s]);
      write_field_csv(out_path(cfg, "green_" + std::to_string(s) + ".csv"), g, cfg.probe_nx,
                      cfg.probe_ny, safe_field([&](cplx z) { return asmw.green_direct(z); }));
    }
    std::cout << "wrote green field for " << ctx.sources().size() << " source(s)\n";
    return 0;
  }
  if (quantity == "poisson") {
    for (std::size_t s = 0; s < ctx.sources().size(); ++s) {
      const GreenAssembly asmw = ctx.assembly(ctx.sources()[s]);
      std::vector<double> vals(g.total());
      for (int i = 0; i < g.total(); ++i) vals[i] = asmw.poisson(i);
      write_boundary_csv(out_path(cfg, "poisson_" + std::to_string(s) + ".csv"), g, vals);
    }
    std::cout << "wrote poisson density for " << ctx.sources().size() << " source(s)\n";
    return 0;
  }
  if (quantity == "ahlfors_abs") {
    const KernelSet ks = ctx.szego().solve(ctx.base_point());
    const AhlforsEvaluator f(g, ks);
    write_field_csv(out_path(cfg, "ahlfors_abs.csv"), g, cfg.probe_nx, cfg.probe_ny,
                    safe_field([&](cplx z) { return std::abs(f.value(z)); }));
    std::cout << "wrote ahlfors_abs.csv\n";
    return 0;
  }
  if (auto k = indexed("omega")) {
    write_field_csv(out_path(cfg, quantity + ".csv"), g, cfg.probe_nx, cfg.probe_ny,
                    safe_field([&](cplx z) { return ctx.frame().omega(*k, z); }));
    std::cout << "wrote " << quantity << ".csv\n";
    return 0;
  }
  if (auto k = indexed("mu")) {
    write_field_csv(out_path(cfg, quantity + ".csv"), g, cfg.probe_nx, cfg.probe_ny,
                    safe_field([&](cplx z) { return ctx.frame().mu_field(*k, z); }));
    std::cout << "wrote " << quantity << ".csv\n";
    return 0;
  }
  if (auto k = indexed("lambda")) {
    write_field_csv(out_path(cfg, quantity + ".csv"), g, cfg.probe_nx, cfg.probe_ny,
                    safe_field([&](cplx z) { return lambda_values(g, ctx.szego().solve(z))[*k]; }));
    std::cout << "wrote " << quantity << ".csv\n";
    return 0;
  }
  throw ConfigError("unknown quantity: " + quantity +
                    " (expected green, poisson, ahlfors_abs, omega_<k>, mu_<k>, lambda_<k>)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary kernel solver for multiply connected planar domains"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string quantity;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON job description")->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--m", args.m_override, "nodes per curve (overrides config)");
    sub->add_option("--w", args.w_args, "source point re,im (repeatable, overrides config)");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the domain and export boundary data");
  add_common(solve);
  CLI::App* verify = app.add_subcommand("verify", "run the identity verification suite");
  add_common(verify);
  CLI::App* exp = app.add_subcommand("export-field", "sample a named field on a grid");
  add_common(exp);
  exp->add_option("--quantity", quantity, "green, poisson, ahlfors_abs, omega_<k>, mu_<k>, lambda_<k>")
      ->required();

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(args);
    if (verify->parsed()) return cmd_verify(args);
    return cmd_export(args, quantity);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const kernmap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const kernmap::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
