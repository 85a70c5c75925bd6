#include "mprox/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mprox/rng.hpp"

namespace mprox {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

const char* kAlgorithms[] = {"novel-ppa",   "contracting-ppa", "sublinear-cppa",
                             "linear-cppa", "classical-ppa",   "halpern",
                             "accelerated-ppa", "ripa", "prina", "cripa"};

bool known_algorithm(const std::string& id) {
  for (const char* a : kAlgorithms)
    if (id == a) return true;
  return false;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.schema_version = j.value("schema_version", 1);
  if (c.schema_version != 1) throw ConfigError("unsupported schema_version");
  if (!j.contains("problem")) throw ConfigError("config: missing problem");
  c.problem = j.at("problem");

  const json alg = j.value("algorithm", json::object());
  c.algorithm = alg.value("id", std::string{});
  if (!known_algorithm(c.algorithm))
    throw ConfigError("config: unknown algorithm id '" + c.algorithm + "'");
  c.lambda = alg.value("lambda", 1.0);
  if (!(c.lambda > 0.0)) throw ConfigError("config: lambda must be positive");
  if (alg.contains("steps")) c.steps = alg.at("steps");
  if (alg.contains("sublinear")) {
    const json& s = alg.at("sublinear");
    c.sublinear.a = s.value("a", c.sublinear.a);
    c.sublinear.mu = s.value("mu", c.sublinear.mu);
    c.sublinear.p = s.value("p", c.sublinear.p);
    c.sublinear.beta = s.value("beta", c.sublinear.beta);
    c.sublinear.tau_init = s.value("tau_init", c.sublinear.tau_init);
  }
  if (alg.contains("linear")) {
    const json& s = alg.at("linear");
    c.linear.tau = s.value("tau", c.linear.tau);
    c.linear.eta = s.value("eta", c.linear.eta);
    c.linear.beta = s.value("beta", c.linear.beta);
  }
  if (alg.contains("baseline")) {
    const json& b = alg.at("baseline");
    if (b.contains("ripa")) {
      c.baseline.ripa.s = b["ripa"].value("s", c.baseline.ripa.s);
      c.baseline.ripa.epsilon = b["ripa"].value("epsilon", c.baseline.ripa.epsilon);
      c.baseline.ripa.alpha = b["ripa"].value("alpha", c.baseline.ripa.alpha);
    }
    if (b.contains("prina")) {
      c.baseline.prina.r = b["prina"].value("r", c.baseline.prina.r);
      c.baseline.prina.q = b["prina"].value("q", c.baseline.prina.q);
      c.baseline.prina.lambda = b["prina"].value("lambda", c.baseline.prina.lambda);
      c.baseline.prina.beta = b["prina"].value("beta", c.baseline.prina.beta);
      c.baseline.prina.s = b["prina"].value("s", c.baseline.prina.s);
    }
    if (b.contains("cripa")) {
      c.baseline.cripa.a = b["cripa"].value("a", c.baseline.cripa.a);
      c.baseline.cripa.b = b["cripa"].value("b", c.baseline.cripa.b);
      c.baseline.cripa.c = b["cripa"].value("c", c.baseline.cripa.c);
      c.baseline.cripa.a1 = b["cripa"].value("a1", c.baseline.cripa.a1);
      c.baseline.cripa.a2 = b["cripa"].value("a2", c.baseline.cripa.a2);
      c.baseline.cripa.lambda = b["cripa"].value("lambda", c.baseline.cripa.lambda);
    }
    c.baseline.halpern_record_composed =
        b.value("halpern_record_composed", false);
  }

  if (j.contains("schedule")) c.schedule = j.at("schedule");
  c.seed = j.value("seed", 0ULL);
  c.budget = j.value("budget", 100);
  if (c.budget < 0) throw ConfigError("config: budget must be nonnegative");
  if (j.contains("x0")) c.x0 = j.at("x0");

  const json m = j.value("metrics", json::object());
  c.gap = m.value("gap", std::string("none"));
  if (c.gap != "none") gap_strategy_from_string(c.gap);  // validates
  c.gap_D = m.value("D", 0.0);
  c.gap_multistarts = m.value("multistarts", 8);
  c.residual_stop = j.value("residual_stop", 0.0);

  // Validate everything buildable up front so cmd_run fails fast with a
  // config error rather than mid-run.
  c.build_run_config();
  problem_from_json(c.problem);
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json alg{{"id", algorithm}, {"lambda", lambda}, {"steps", steps}};
  alg["sublinear"] = {{"a", sublinear.a},
                      {"mu", sublinear.mu},
                      {"p", sublinear.p},
                      {"beta", sublinear.beta},
                      {"tau_init", sublinear.tau_init}};
  alg["linear"] = {{"tau", linear.tau}, {"eta", linear.eta}, {"beta", linear.beta}};
  alg["baseline"] = {
      {"ripa",
       {{"s", baseline.ripa.s},
        {"epsilon", baseline.ripa.epsilon},
        {"alpha", baseline.ripa.alpha}}},
      {"prina",
       {{"r", baseline.prina.r},
        {"q", baseline.prina.q},
        {"lambda", baseline.prina.lambda},
        {"beta", baseline.prina.beta},
        {"s", baseline.prina.s}}},
      {"cripa",
       {{"a", baseline.cripa.a},
        {"b", baseline.cripa.b},
        {"c", baseline.cripa.c},
        {"a1", baseline.cripa.a1},
        {"a2", baseline.cripa.a2},
        {"lambda", baseline.cripa.lambda}}},
      {"halpern_record_composed", baseline.halpern_record_composed}};
  return json{{"schema_version", schema_version},
              {"problem", problem},
              {"algorithm", alg},
              {"schedule", schedule},
              {"seed", seed},
              {"budget", budget},
              {"x0", x0},
              {"metrics",
               {{"gap", gap}, {"D", gap_D}, {"multistarts", gap_multistarts}}},
              {"residual_stop", residual_stop}};
}

std::uint64_t ExperimentConfig::hash() const {
  const std::string s = to_json().dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

OperatorPtr ExperimentConfig::build_operator() const {
  return problem_from_json(problem);
}

Vec ExperimentConfig::build_x0(const MonotoneOperator& op) const {
  const int n = op.dim();
  if (x0.is_array()) {
    Vec v(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) v[i] = x0[i].get<double>();
    if (v.size() != n) throw ConfigError("x0: dimension mismatch");
    return v;
  }
  const std::string type = x0.value("type", "zeros");
  const double scale = x0.value("scale", 1.0);
  if (type == "zeros") return Vec::Zero(n);
  if (type == "ones") return scale * Vec::Ones(n);
  if (type == "random") return scale * Rng(seed, /*stream=*/5).gaussian_vec(0, n);
  throw ConfigError("unknown x0 type: " + type);
}

SolverRunConfig ExperimentConfig::build_run_config() const {
  SolverRunConfig rc;
  rc.algorithm = algorithm;
  rc.lambda = lambda;
  rc.budget = budget;
  rc.steps = StepSizes::from_json(steps);
  rc.schedule = ErrorSchedule::from_json(schedule, seed);
  rc.sublinear = sublinear;
  rc.linear = linear;
  rc.baseline = baseline;
  rc.residual_stop = residual_stop;
  if (algorithm == "sublinear-cppa") sublinear.validate();
  if (algorithm == "linear-cppa") linear.validate();
  if (algorithm == "ripa") baseline.ripa.validate();
  if (algorithm == "prina") baseline.prina.validate();
  if (algorithm == "cripa") baseline.cripa.validate();
  return rc;
}

// ---------------------------------------------------------------------------
// Rate normalizers
// ---------------------------------------------------------------------------

std::vector<double> rate_log_normalizers(const IterateTrace& trace,
                                         const ExperimentConfig& cfg) {
  std::vector<double> out;
  out.reserve(trace.rows.size());
  double sum_a_sq = 0.0;
  for (const auto& r : trace.rows) {
    if (cfg.algorithm == "novel-ppa") {
      if (r.k > 0) sum_a_sq += r.a * r.a;
      out.push_back(0.5 * std::log(std::max(sum_a_sq, 1e-300)));
    } else if (cfg.algorithm == "contracting-ppa") {
      out.push_back(std::log(std::max(r.A, 1e-300)));
    } else if (cfg.algorithm == "sublinear-cppa") {
      out.push_back(cfg.sublinear.p * std::log(std::max(1.0 / r.tau, 1e-300)));
    } else if (cfg.algorithm == "linear-cppa") {
      out.push_back(std::isnan(r.log_growth) ? 0.0 : r.log_growth);
    } else {
      out.push_back(std::log(static_cast<double>(r.k + 1)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// cmd_run
// ---------------------------------------------------------------------------

namespace {

json summarize(const IterateTrace& trace, const ExperimentConfig& cfg) {
  json ledger = json::object();
  double max_defect = 0.0;
  bool finite = true;
  for (const auto& r : trace.rows) {
    max_defect = std::max(max_defect, r.step_defect);
    if (!std::isfinite(r.residual)) finite = false;
  }
  const double defect_tol = (cfg.algorithm == "novel-ppa") ? 1e-9 : 1e-8;
  const bool is_solver =
      cfg.algorithm == "novel-ppa" || cfg.algorithm == "contracting-ppa" ||
      cfg.algorithm == "sublinear-cppa" || cfg.algorithm == "linear-cppa";
  ledger["complete"] = trace.complete;
  ledger["residuals_finite"] = finite;
  ledger["max_step_defect"] = max_defect;
  ledger["step_defects_ok"] = !is_solver || max_defect <= defect_tol;

  json summary;
  summary["algorithm"] = cfg.algorithm;
  summary["iterations"] = trace.rows.empty() ? 0 : trace.rows.back().k;
  summary["final_residual"] = trace.rows.empty() ? 0.0 : trace.rows.back().residual;
  if (!trace.rows.empty() && !std::isnan(trace.rows.back().gap_lb))
    summary["final_gap_lb"] = trace.rows.back().gap_lb;

  if (trace.rows.size() >= 31) {
    const auto res = trace.residuals();
    const auto logs = rate_log_normalizers(trace, cfg);
    const RateFit fit = rate_fit(res, logs, 10);
    summary["rate"] = {{"slope", fit.slope},
                       {"sup_normalized_residual", fit.sup_normalized}};
  }
  summary["ledger"] = ledger;
  return summary;
}

void write_trace_json(const IterateTrace& trace, const std::string& path) {
  json rows = json::array();
  for (const auto& r : trace.rows) {
    json row{{"k", r.k}, {"residual", r.residual}, {"step_defect", r.step_defect}};
    auto put = [&](const char* key, double v) {
      if (!std::isnan(v)) row[key] = v;
    };
    put("gap_lb", r.gap_lb);
    put("dist_to_zero", r.dist_to_zero);
    put("a", r.a);
    put("A", r.A);
    put("tau", r.tau);
    put("sigma", r.sigma);
    put("log_growth", r.log_growth);
    rows.push_back(std::move(row));
  }
  json doc{{"schema", 1}, {"complete", trace.complete}, {"rows", rows}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open trace output: " + path);
  out << doc.dump(2) << '\n';
}

}  // namespace

RunReport cmd_run(const ExperimentConfig& cfg, const std::string& out_dir,
                  const std::string& format) {
  if (format != "csv" && format != "json")
    throw ConfigError("unknown output format: " + format);
  std::filesystem::create_directories(out_dir);

  OperatorPtr op = cfg.build_operator();
  const Vec x0 = cfg.build_x0(*op);
  IterateTrace trace = run(op, x0, cfg.build_run_config());

  json gap_meta;
  if (cfg.gap != "none" && !trace.rows.empty()) {
    YosidaView view(op, cfg.lambda);
    GapQuery q;
    q.anchor = x0;
    q.strategy = gap_strategy_from_string(cfg.gap);
    q.multistarts = cfg.gap_multistarts;
    q.seed = cfg.seed;
    if (cfg.gap_D > 0.0) {
      q.D = cfg.gap_D;
    } else {
      // Default convention: D = 2 ||x0 - x_*||, keeping the solution strictly
      // inside the ball. Needs a known zero.
      if (op->known_zeros().empty())
        throw ConfigError("gap metric: D not given and no known zero to derive it");
      double d = std::numeric_limits<double>::infinity();
      for (const Vec& z : op->known_zeros()) d = std::min(d, (x0 - z).norm());
      q.D = std::max(2.0 * d, 1e-6);
    }
    gap_meta = {{"strategy", cfg.gap},
                {"anchor", "x0"},
                {"D", q.D}};
    if (q.strategy == GapStrategy::ExactAffine) {
      AffineGapSolver solver(view, q.anchor, q.D);
      for (auto& r : trace.rows) r.gap_lb = solver.gap(r.x);
    } else {
      for (auto& r : trace.rows) r.gap_lb = gap(view, q, r.x);
    }
  }

  const std::string trace_path =
      out_dir + (format == "csv" ? "/trace.csv" : "/trace.json");
  if (format == "csv")
    write_trace_csv(trace, trace_path);
  else
    write_trace_json(trace, trace_path);

  RunReport report;
  report.trace_path = trace_path;
  report.config_hash = cfg.hash();
  report.complete = trace.complete;
  report.summary = summarize(trace, cfg);
  if (!gap_meta.is_null()) report.summary["gap_query"] = gap_meta;
  report.summary["config_hash"] = report.config_hash;
  if (!trace.complete) report.summary["abort_message"] = trace.abort_message;
  const json& ledger = report.summary["ledger"];
  report.all_pass = trace.complete && ledger["residuals_finite"].get<bool>() &&
                    ledger["step_defects_ok"].get<bool>();

  json doc{{"config", cfg.to_json()}, {"summary", report.summary}};
  std::ofstream out(out_dir + "/report.json", std::ios::binary | std::ios::trunc);
  out << doc.dump(2) << '\n';
  return report;
}

// ---------------------------------------------------------------------------
// cmd_compare
// ---------------------------------------------------------------------------

CompareResult cmd_compare(const std::vector<ExperimentConfig>& cfgs,
                          const std::string& out_dir) {
  if (cfgs.empty()) throw ConfigError("compare: need at least one config");
  for (const auto& c : cfgs) {
    if (c.problem != cfgs.front().problem)
      throw ConfigError("compare: configs must share a problem");
    if (c.budget != cfgs.front().budget)
      throw ConfigError("compare: configs must share a budget");
  }
  std::filesystem::create_directories(out_dir);

  CompareResult out;
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    const auto& cfg = cfgs[i];
    std::string col = cfg.algorithm;
    for (const auto& existing : out.columns)
      if (existing == col) col += "#" + std::to_string(i);
    OperatorPtr op = cfg.build_operator();
    IterateTrace trace = run(op, cfg.build_x0(*op), cfg.build_run_config());
    out.columns.push_back(col);
    out.residuals.push_back(trace.residuals());
  }

  std::size_t max_len = 0;
  for (const auto& col : out.residuals) max_len = std::max(max_len, col.size());

  out.csv_path = out_dir + "/compare.csv";
  std::ofstream csv(out.csv_path, std::ios::binary | std::ios::trunc);
  csv << "k";
  for (const auto& c : out.columns) csv << ',' << c;
  csv << '\n';
  for (std::size_t k = 0; k < max_len; ++k) {
    csv << k;
    for (const auto& col : out.residuals)
      csv << ',' << (k < col.size() ? format_double(col[k]) : "");
    csv << '\n';
  }

  std::ostringstream text;
  text << "residual ||T_lambda(x_k)|| vs k\n";
  text << "k";
  for (const auto& c : out.columns) text << '\t' << c;
  text << '\n';
  const std::size_t stride = std::max<std::size_t>(1, max_len / 10);
  for (std::size_t k = 0; k < max_len; k += stride) {
    text << k;
    for (const auto& col : out.residuals)
      text << '\t' << (k < col.size() ? format_double(col[k]) : "-");
    text << '\n';
  }
  if (max_len > 0 && (max_len - 1) % stride != 0) {
    text << (max_len - 1);
    for (const auto& col : out.residuals)
      text << '\t'
           << (max_len - 1 < col.size() ? format_double(col[max_len - 1]) : "-");
    text << '\n';
  }
  out.text = text.str();
  std::ofstream txt(out_dir + "/compare.txt", std::ios::binary | std::ios::trunc);
  txt << out.text;
  return out;
}

std::vector<CheckResult> cmd_check(const std::string& suite_id) {
  auto ops = corpus();
  if (suite_id == "operator-invariants") return checks::operator_invariants(ops);
  if (suite_id == "step-defects") return checks::step_defects(ops);
  if (suite_id == "potentials") return checks::potentials(ops);
  if (suite_id == "rates") return checks::rates(ops);
  if (suite_id == "equivalences") return checks::equivalences(ops);
  throw ConfigError("unknown check suite: " + suite_id);
}

}  // namespace mprox
