#include "mprox.h"

#include <cstring>
#include <sstream>
#include <string>

#include "mprox/harness.hpp"

// Opaque handle definitions. Serialized strings are cached on the handle so
// the returned pointers stay valid until the handle is freed.

struct mprox_experiment {
  mprox::ExperimentConfig cfg;
  std::string json_cache;
};

struct mprox_report {
  mprox::RunReport report;
  std::string summary_cache;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MPROX_OK;
  } catch (const mprox::ConfigError& e) {
    return fail(MPROX_ERR_CONFIG, e.what());
  } catch (const mprox::NumericError& e) {
    return fail(MPROX_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(MPROX_ERR_NUMERIC, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* mprox_version(void) { return "1.0.0"; }

const char* mprox_last_error(void) { return g_last_error.c_str(); }

int mprox_experiment_load_file(const char* path, mprox_experiment** out) {
  if (!path || !out) return fail(MPROX_ERR_CONFIG, "null argument");
  return guarded([&] {
    auto* e = new mprox_experiment{mprox::ExperimentConfig::from_file(path), {}};
    *out = e;
  });
}

int mprox_experiment_load_json(const char* json_text, mprox_experiment** out) {
  if (!json_text || !out) return fail(MPROX_ERR_CONFIG, "null argument");
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw mprox::ConfigError(std::string("config parse error: ") + e.what());
    }
    auto* e = new mprox_experiment{mprox::ExperimentConfig::from_json(j), {}};
    *out = e;
  });
}

void mprox_experiment_free(mprox_experiment* e) { delete e; }

int mprox_experiment_set_seed(mprox_experiment* e, uint64_t seed) {
  if (!e) return fail(MPROX_ERR_CONFIG, "null experiment");
  e->cfg.seed = seed;
  return MPROX_OK;
}

int mprox_experiment_set_budget(mprox_experiment* e, int budget) {
  if (!e) return fail(MPROX_ERR_CONFIG, "null experiment");
  if (budget < 0) return fail(MPROX_ERR_CONFIG, "budget must be nonnegative");
  e->cfg.budget = budget;
  return MPROX_OK;
}

const char* mprox_experiment_json(mprox_experiment* e) {
  if (!e) return "";
  e->json_cache = e->cfg.to_json().dump(2);
  return e->json_cache.c_str();
}

uint64_t mprox_experiment_hash(mprox_experiment* e) {
  return e ? e->cfg.hash() : 0;
}

int mprox_run(mprox_experiment* e, const char* out_dir, const char* format,
              mprox_report** out) {
  if (!e || !out_dir || !out) return fail(MPROX_ERR_CONFIG, "null argument");
  return guarded([&] {
    auto* r = new mprox_report{
        mprox::cmd_run(e->cfg, out_dir, format ? format : "csv"), {}};
    *out = r;
  });
}

int mprox_compare(mprox_experiment* const* es, int count, const char* out_dir,
                  char** text_out) {
  if (!es || count <= 0 || !out_dir)
    return fail(MPROX_ERR_CONFIG, "null argument");
  return guarded([&] {
    std::vector<mprox::ExperimentConfig> cfgs;
    cfgs.reserve(count);
    for (int i = 0; i < count; ++i) {
      if (!es[i]) throw mprox::ConfigError("null experiment in compare set");
      cfgs.push_back(es[i]->cfg);
    }
    mprox::CompareResult res = mprox::cmd_compare(cfgs, out_dir);
    if (text_out) *text_out = dup_string(res.text);
  });
}

void mprox_string_free(char* s) { delete[] s; }

int mprox_check(const char* suite_id, char** report_out) {
  if (!suite_id) return fail(MPROX_ERR_CONFIG, "null suite id");
  bool all_pass = true;
  std::string text;
  const int rc = guarded([&] {
    std::ostringstream os;
    for (const auto& c : mprox::cmd_check(suite_id)) {
      all_pass = all_pass && c.pass;
      os << (c.pass ? "PASS" : "FAIL") << ' ' << c.name;
      if (!c.detail.empty()) os << " [" << c.detail << ']';
      os << '\n';
    }
    text = os.str();
  });
  if (rc != MPROX_OK) return rc;
  if (report_out) *report_out = dup_string(text);
  if (!all_pass) return fail(MPROX_ERR_NUMERIC, "check suite reported failures");
  return MPROX_OK;
}

void mprox_report_free(mprox_report* r) { delete r; }

const char* mprox_report_summary_json(mprox_report* r) {
  if (!r) return "";
  r->summary_cache = r->report.summary.dump(2);
  return r->summary_cache.c_str();
}

const char* mprox_report_trace_path(mprox_report* r) {
  return r ? r->report.trace_path.c_str() : "";
}

int mprox_report_all_pass(mprox_report* r) {
  return r && r->report.all_pass ? 1 : 0;
}

int mprox_report_complete(mprox_report* r) {
  return r && r->report.complete ? 1 : 0;
}

}  // extern "C"
