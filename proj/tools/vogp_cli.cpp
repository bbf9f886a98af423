#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>

#include "vogp/cone.hpp"
#include "vogp/config.hpp"
#include "vogp/error.hpp"
#include "vogp/experiment.hpp"

namespace {

void print_summary(const vogp::ExperimentSummary& s) {
  auto line = [](const char* label, const vogp::Aggregate& a) {
    if (a.runs == 0) return;
    std::cout << "  " << label << ": " << a.mean << " +- " << a.stddev << " (" << a.runs << " runs)\n";
  };
  std::cout << (s.problem.empty() ? "records" : s.problem) << " / " << vogp::to_string(s.algorithm) << "\n";
  line("sample complexity", s.sample_complexity);
  line("eps-F1", s.eps_f1);
  line("PAC success rate", s.pac_success);
  line("log10 d_HV", s.log10_hv_discrepancy);
  line("coverage violations", s.coverage_violations);
  line("wall seconds", s.wall_seconds);
}

void list_cones() {
  for (int m : {2, 3}) {
    for (const char* name : {"acute", "right", "obtuse"}) {
      const vogp::ConeOrder c = vogp::builtin_cone(name, m);
      std::cout << name << " (M=" << m << ")  d_C=" << c.hardness() << "\n";
      const Eigen::IOFormat fmt(6, 0, " ", "\n", "    ", "");
      std::cout << c.W().format(fmt) << "\n";
    }
  }
  std::cout << "theta:<deg>  2D cone with opening angle deg in (0, 180)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector optimization with Gaussian process confidence regions"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed_offset = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->add_option("--config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--seed-offset", seed_offset, "added to every configured seed");
  run->add_flag("--quiet", quiet, "silence warnings");

  std::string records;
  auto* metrics = app.add_subcommand("metrics", "Recompute aggregate metrics from per-seed records");
  metrics->add_option("--records", records, "output directory or seed_<k>.jsonl file")->required()->check(CLI::ExistingPath);

  auto* cones = app.add_subcommand("cones", "Inspect builtin ordering cones");
  cones->add_subcommand("list", "Print the builtin cone matrices")->final_callback(list_cones);
  cones->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      vogp::set_warnings_enabled(!quiet);
      const vogp::RunConfig config = vogp::load_config(config_path);
      print_summary(vogp::run_experiment(config, seed_offset));
      if (!config.outdir.empty()) std::cout << "records written to " << config.outdir << "\n";
    } else if (*metrics) {
      const vogp::ExperimentSummary s = vogp::load_records(records);
      print_summary(s);
    }
  } catch (const vogp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
