// Command-line front end. Talks to the library exclusively through the C
// interface so it exercises the same surface as external embedders.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mprox.h"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("MPROX_OUT_DIR");
  return env && *env ? env : "out";
}

int report_error(int rc) {
  std::fprintf(stderr, "error: %s\n", mprox_last_error());
  return rc;
}

struct CommonOpts {
  std::string out_dir = default_out_dir();
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int budget = -1;
};

int apply_overrides(mprox_experiment* e, const CommonOpts& o) {
  if (o.seed_set) {
    const int rc = mprox_experiment_set_seed(e, o.seed);
    if (rc != MPROX_OK) return rc;
  }
  if (o.budget >= 0) {
    const int rc = mprox_experiment_set_budget(e, o.budget);
    if (rc != MPROX_OK) return rc;
  }
  return MPROX_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal-point solver benchmark harness"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string config_path;
  std::vector<std::string> config_paths;
  std::string suite_id;

  auto add_common = [&](CLI::App* cmd, bool with_format) {
    cmd->add_option("--out-dir", opts.out_dir, "Output directory");
    cmd->add_option("--seed", opts.seed, "Override config seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--budget", opts.budget, "Override iteration budget");
    if (with_format)
      cmd->add_option("--format", opts.format, "Trace format")
          ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* run_cmd = app.add_subcommand("run", "Execute one experiment");
  run_cmd->add_option("config", config_path, "Experiment config (JSON)")
      ->required();
  add_common(run_cmd, true);

  CLI::App* cmp_cmd =
      app.add_subcommand("compare", "Run experiments on a shared problem");
  cmp_cmd->add_option("configs", config_paths, "Experiment configs (JSON)")
      ->required()
      ->expected(-1);
  add_common(cmp_cmd, false);

  CLI::App* chk_cmd = app.add_subcommand("check", "Run an invariant suite");
  chk_cmd
      ->add_option("suite", suite_id,
                   "Suite id: operator-invariants, step-defects, potentials, "
                   "rates, equivalences")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : MPROX_ERR_CONFIG;
  }

  if (run_cmd->parsed()) {
    mprox_experiment* e = nullptr;
    int rc = mprox_experiment_load_file(config_path.c_str(), &e);
    if (rc != MPROX_OK) return report_error(rc);
    rc = apply_overrides(e, opts);
    if (rc != MPROX_OK) {
      mprox_experiment_free(e);
      return report_error(rc);
    }
    mprox_report* r = nullptr;
    rc = mprox_run(e, opts.out_dir.c_str(), opts.format.c_str(), &r);
    if (rc != MPROX_OK) {
      mprox_experiment_free(e);
      return report_error(rc);
    }
    std::printf("%s\n", mprox_report_summary_json(r));
    std::printf("trace: %s\n", mprox_report_trace_path(r));
    const bool ok = mprox_report_all_pass(r) && mprox_report_complete(r);
    mprox_report_free(r);
    mprox_experiment_free(e);
    if (!ok) {
      std::fprintf(stderr, "error: run did not complete cleanly\n");
      return MPROX_ERR_NUMERIC;
    }
    return 0;
  }

  if (cmp_cmd->parsed()) {
    std::vector<mprox_experiment*> es;
    auto cleanup = [&] {
      for (auto* e : es) mprox_experiment_free(e);
    };
    for (const auto& path : config_paths) {
      mprox_experiment* e = nullptr;
      int rc = mprox_experiment_load_file(path.c_str(), &e);
      if (rc == MPROX_OK) rc = apply_overrides(e, opts);
      if (rc != MPROX_OK) {
        if (e) mprox_experiment_free(e);
        cleanup();
        return report_error(rc);
      }
      es.push_back(e);
    }
    char* text = nullptr;
    const int rc = mprox_compare(es.data(), static_cast<int>(es.size()),
                                 opts.out_dir.c_str(), &text);
    cleanup();
    if (rc != MPROX_OK) return report_error(rc);
    std::printf("%s", text);
    mprox_string_free(text);
    return 0;
  }

  // check
  char* text = nullptr;
  const int rc = mprox_check(suite_id.c_str(), &text);
  if (text) {
    std::printf("%s", text);
    mprox_string_free(text);
  }
  if (rc != MPROX_OK) return report_error(rc);
  return 0;
}
