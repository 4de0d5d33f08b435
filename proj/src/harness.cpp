#include "qtlens/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "qtlens/circuit_io.hpp"
#include "qtlens/errors.hpp"
#include "qtlens/rng.hpp"
#include "qtlens/transpiler.hpp"

namespace qtlens {

using nlohmann::json;

void SweepConfig::validate() const {
  if (families.empty() || n_values.empty() || l_values.empty() ||
      opt_levels.empty()) {
    throw DomainError("sweep grid lists must be nonempty");
  }
  if (runs < 1) throw DomainError("runs must be >= 1");
  for (int n : n_values) {
    if (n < 2) throw DomainError("n values must be >= 2");
  }
  for (int l : l_values) {
    if (l < 1) throw DomainError("L values must be >= 1");
  }
  for (int o : opt_levels) {
    if (o < 0 || o > 3) throw DomainError("opt levels must be in 0..3");
  }
  if (jobs < 0) throw DomainError("jobs must be >= 0");
  expressibility.validate();
  trainability.validate();
}

json sweep_config_to_json(const SweepConfig& cfg) {
  json families = json::array();
  for (auto f : cfg.families) families.push_back(family_name(f));
  json expr = {{"n_pairs", cfg.expressibility.n_pairs},
               {"bins", cfg.expressibility.bins},
               {"epsilon", cfg.expressibility.epsilon}};
  json train = {{"n_grad", cfg.trainability.n_grad}};
  return {{"families", std::move(families)},
          {"n_values", cfg.n_values},
          {"l_values", cfg.l_values},
          {"opt_levels", cfg.opt_levels},
          {"runs", cfg.runs},
          {"base_seed", cfg.base_seed},
          {"expressibility", std::move(expr)},
          {"trainability", std::move(train)},
          {"target_path", cfg.target_path.string()},
          {"wire_mode", wire_mode_name(cfg.trainability.observable_wire_mode)},
          {"vary_transpile_seed", cfg.vary_transpile_seed},
          {"haar_logical_width", cfg.haar_logical_width},
          {"output_dir", cfg.output_dir.string()},
          {"jobs", cfg.jobs}};
}

SweepConfig sweep_config_from_json(const json& doc) {
  SweepConfig cfg;
  try {
    if (doc.contains("families")) {
      cfg.families.clear();
      for (const auto& f : doc.at("families")) {
        cfg.families.push_back(parse_family(f.get<std::string>()));
      }
    }
    if (doc.contains("n_values")) cfg.n_values = doc.at("n_values").get<std::vector<int>>();
    if (doc.contains("l_values")) cfg.l_values = doc.at("l_values").get<std::vector<int>>();
    if (doc.contains("opt_levels")) cfg.opt_levels = doc.at("opt_levels").get<std::vector<int>>();
    cfg.runs = doc.value("runs", cfg.runs);
    cfg.base_seed = doc.value("base_seed", cfg.base_seed);
    if (doc.contains("expressibility")) {
      const auto& e = doc.at("expressibility");
      cfg.expressibility.n_pairs = e.value("n_pairs", cfg.expressibility.n_pairs);
      cfg.expressibility.bins = e.value("bins", cfg.expressibility.bins);
      cfg.expressibility.epsilon = e.value("epsilon", cfg.expressibility.epsilon);
    }
    if (doc.contains("trainability")) {
      const auto& t = doc.at("trainability");
      cfg.trainability.n_grad = t.value("n_grad", cfg.trainability.n_grad);
    }
    if (doc.contains("wire_mode")) {
      cfg.trainability.observable_wire_mode =
          parse_wire_mode(doc.at("wire_mode").get<std::string>());
    }
    cfg.target_path = doc.value("target_path", std::string());
    cfg.vary_transpile_seed = doc.value("vary_transpile_seed", false);
    cfg.haar_logical_width = doc.value("haar_logical_width", false);
    cfg.output_dir = doc.value("output_dir", std::string("sweep_out"));
    cfg.jobs = doc.value("jobs", cfg.jobs);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError(std::string("sweep config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::uint64_t cell_seed(std::uint64_t base_seed, AnsatzFamily family, int n,
                        int reps, int opt_level, int run) {
  return StableHash(base_seed)
      .add(family_name(family))
      .add(static_cast<std::uint64_t>(n))
      .add(static_cast<std::uint64_t>(reps))
      .add(static_cast<std::uint64_t>(opt_level))
      .add(static_cast<std::uint64_t>(run))
      .value();
}

std::uint64_t transpile_seed(std::uint64_t base_seed, AnsatzFamily family,
                             int n, int reps, int opt_level, int run) {
  StableHash h(base_seed);
  h.add(std::string_view("transpile"))
      .add(family_name(family))
      .add(static_cast<std::uint64_t>(n))
      .add(static_cast<std::uint64_t>(reps))
      .add(static_cast<std::uint64_t>(opt_level));
  if (run >= 0) h.add(static_cast<std::uint64_t>(run));
  return h.value();
}

std::vector<MetricRecord> evaluate_cell(const SweepConfig& cfg,
                                        const Target& target,
                                        AnsatzFamily family, int n, int reps,
                                        int opt_level) {
  const Circuit logical = build_ansatz(family, n, reps);
  const int logical_depth = depth(logical);

  std::optional<TranspiledCircuit> shared;
  auto transpiled_for = [&](int run) -> TranspiledCircuit {
    TranspileOptions opts;
    opts.opt_level = opt_level;
    if (cfg.vary_transpile_seed) {
      opts.seed = transpile_seed(cfg.base_seed, family, n, reps, opt_level, run);
      return transpile(logical, target, opts);
    }
    if (!shared) {
      opts.seed = transpile_seed(cfg.base_seed, family, n, reps, opt_level);
      shared = transpile(logical, target, opts);
    }
    return *shared;
  };

  std::vector<MetricRecord> records;
  for (int run = 0; run < cfg.runs; ++run) {
    const TranspiledCircuit t = transpiled_for(run);
    const std::uint64_t seed = cell_seed(cfg.base_seed, family, n, reps,
                                         opt_level, run);

    MetricSample lm;
    lm.expressibility = cfg.expressibility;
    lm.expressibility.seed = seed;
    lm.expressibility.haar_dimension_qubits = n;
    lm.trainability = cfg.trainability;
    lm.trainability.seed = seed;
    MetricSample tm = lm;
    tm.expressibility.haar_dimension_qubits =
        cfg.haar_logical_width ? n : t.active_qubit_count;

    const int wire = cfg.trainability.observable_wire_mode == WireMode::Tracked
                         ? output_wire_of(t, 0)
                         : 0;
    lm.e_kl = expressibility_kl(logical, lm.expressibility);
    tm.e_kl = expressibility_kl(t.circuit, tm.expressibility);
    lm.gradvar = gradient_variance(logical, lm.trainability, 0);
    tm.gradvar = gradient_variance(t.circuit, tm.trainability, wire);
    const Overheads d = overheads(lm, tm);

    MetricRecord r;
    r.family = family;
    r.n_logical = n;
    r.reps = reps;
    r.opt_level = opt_level;
    r.run_index = run;
    r.e_kl_logical = lm.e_kl;
    r.e_kl_transpiled = tm.e_kl;
    r.delta_e_kl = d.delta_e_kl;
    r.gradvar_logical = lm.gradvar;
    r.gradvar_transpiled = tm.gradvar;
    r.delta_gradvar = d.delta_gradvar;
    r.depth_logical = logical_depth;
    r.depth_transpiled = depth(t.circuit);
    r.qubits_transpiled = t.active_qubit_count;
    records.push_back(r);
  }
  return records;
}

namespace {

using CellKey = std::tuple<AnsatzFamily, int, int, int>;

CellKey key_of(const MetricRecord& r) {
  return {r.family, r.n_logical, r.reps, r.opt_level};
}

}  // namespace

std::vector<CellMean> cell_means(const std::vector<MetricRecord>& records) {
  std::vector<CellMean> means;
  std::map<CellKey, std::size_t> index;
  for (const auto& r : records) {
    auto [it, inserted] = index.emplace(key_of(r), means.size());
    if (inserted) {
      CellMean m;
      m.family = r.family;
      m.n_logical = r.n_logical;
      m.reps = r.reps;
      m.opt_level = r.opt_level;
      means.push_back(m);
    }
    CellMean& m = means[it->second];
    ++m.runs;
    m.e_kl_logical += r.e_kl_logical;
    m.e_kl_transpiled += r.e_kl_transpiled;
    m.delta_e_kl += r.delta_e_kl;
    m.gradvar_logical += r.gradvar_logical;
    m.gradvar_transpiled += r.gradvar_transpiled;
    m.delta_gradvar += r.delta_gradvar;
    m.depth_logical += r.depth_logical;
    m.depth_transpiled += r.depth_transpiled;
    m.qubits_transpiled += r.qubits_transpiled;
  }
  for (auto& m : means) {
    const double k = m.runs;
    m.e_kl_logical /= k;
    m.e_kl_transpiled /= k;
    m.delta_e_kl /= k;
    m.gradvar_logical /= k;
    m.gradvar_transpiled /= k;
    m.delta_gradvar /= k;
    m.depth_logical /= k;
    m.depth_transpiled /= k;
    m.qubits_transpiled /= k;
  }
  return means;
}

SweepResult run_sweep(const SweepConfig& cfg, const Target& target) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  std::vector<CellKey> cells;
  {
    std::set<AnsatzFamily> fam(cfg.families.begin(), cfg.families.end());
    std::set<int> ns(cfg.n_values.begin(), cfg.n_values.end());
    std::set<int> ls(cfg.l_values.begin(), cfg.l_values.end());
    std::set<int> opts(cfg.opt_levels.begin(), cfg.opt_levels.end());
    for (auto f : fam)
      for (int n : ns)
        for (int l : ls)
          for (int o : opts) cells.emplace_back(f, n, l, o);
  }

  std::vector<std::vector<MetricRecord>> slots(cells.size());
  std::vector<std::optional<std::string>> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const auto& [f, n, l, o] = cells[i];
      try {
        slots[i] = evaluate_cell(cfg, target, f, n, l, o);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int jobs = cfg.jobs == 0
                 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                 : cfg.jobs;
  jobs = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(1, cells.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  SweepResult result;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (errors[i]) {
      const auto& [f, n, l, o] = cells[i];
      result.failures.push_back(CellFailure{f, n, l, o, *errors[i]});
      continue;
    }
    result.records.insert(result.records.end(), slots[i].begin(),
                          slots[i].end());
  }
  result.means = cell_means(result.records);

  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - started)
                             .count();
  json failures = json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"family", family_name(f.family)},
                        {"n", f.n_logical},
                        {"L", f.reps},
                        {"opt_level", f.opt_level},
                        {"reason", f.reason}});
  }
  result.metadata = {{"tool", "qtlens"},
                     {"version", kToolVersion},
                     {"config", sweep_config_to_json(cfg)},
                     {"target", {{"name", target.name},
                                 {"num_qubits", target.num_qubits()}}},
                     {"kl_log_base", "e"},
                     {"haar_reference", "analytic bin masses"},
                     {"seed_derivation",
                      "StableHash(base_seed) <- family, n, L, opt_level, run"},
                     {"records", result.records.size()},
                     {"failures", std::move(failures)},
                     {"wall_clock_seconds", seconds}};
  return result;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  const Target target = load_target(
      cfg.target_path.empty() ? default_target_path() : cfg.target_path);
  return run_sweep(cfg, target);
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw LoadError("records line " + std::to_string(line) +
                    ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_records_csv(std::ostream& out,
                       const std::vector<MetricRecord>& records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << family_name(r.family) << ',' << r.n_logical << ',' << r.reps
        << ',' << r.opt_level << ',' << r.run_index << ','
        << fmt_double(r.e_kl_logical) << ',' << fmt_double(r.e_kl_transpiled)
        << ',' << fmt_double(r.delta_e_kl) << ','
        << fmt_double(r.gradvar_logical) << ','
        << fmt_double(r.gradvar_transpiled) << ','
        << fmt_double(r.delta_gradvar) << ',' << r.depth_logical << ','
        << r.depth_transpiled << ',' << r.qubits_transpiled << '\n';
  }
}

void write_means_csv(std::ostream& out, const std::vector<CellMean>& means) {
  out << kRecordsHeader << '\n';
  for (const auto& m : means) {
    out << family_name(m.family) << ',' << m.n_logical << ',' << m.reps
        << ',' << m.opt_level << ",mean," << fmt_double(m.e_kl_logical)
        << ',' << fmt_double(m.e_kl_transpiled) << ','
        << fmt_double(m.delta_e_kl) << ',' << fmt_double(m.gradvar_logical)
        << ',' << fmt_double(m.gradvar_transpiled) << ','
        << fmt_double(m.delta_gradvar) << ',' << fmt_double(m.depth_logical)
        << ',' << fmt_double(m.depth_transpiled) << ','
        << fmt_double(m.qubits_transpiled) << '\n';
  }
}

std::vector<MetricRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw LoadError("records file does not start with the expected header");
  }
  std::vector<MetricRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 14) {
      throw LoadError("records line " + std::to_string(lineno) + ": expected "
                      "14 fields, got " + std::to_string(f.size()));
    }
    MetricRecord r;
    try {
      r.family = parse_family(f[0]);
    } catch (const DomainError& e) {
      throw LoadError("records line " + std::to_string(lineno) + ": " +
                      e.what());
    }
    r.n_logical = parse_number<int>(f[1], lineno);
    r.reps = parse_number<int>(f[2], lineno);
    r.opt_level = parse_number<int>(f[3], lineno);
    r.run_index = parse_number<int>(f[4], lineno);
    r.e_kl_logical = parse_number<double>(f[5], lineno);
    r.e_kl_transpiled = parse_number<double>(f[6], lineno);
    r.delta_e_kl = parse_number<double>(f[7], lineno);
    r.gradvar_logical = parse_number<double>(f[8], lineno);
    r.gradvar_transpiled = parse_number<double>(f[9], lineno);
    r.delta_gradvar = parse_number<double>(f[10], lineno);
    r.depth_logical = parse_number<int>(f[11], lineno);
    r.depth_transpiled = parse_number<int>(f[12], lineno);
    r.qubits_transpiled = parse_number<int>(f[13], lineno);
    records.push_back(r);
  }
  return records;
}

void write_sweep_outputs(const SweepResult& result,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "records.csv");
    write_records_csv(out, result.records);
  }
  {
    std::ofstream out(dir / "cell_means.csv");
    write_means_csv(out, result.means);
  }
  write_json_file(result.metadata, dir / "metadata.json");
}

HeatmapMetric parse_heatmap_metric(std::string_view name) {
  if (name == "delta_e_kl") return HeatmapMetric::DeltaEKl;
  if (name == "delta_gradvar") return HeatmapMetric::DeltaGradVar;
  if (name == "depth_overhead") return HeatmapMetric::DepthOverhead;
  if (name == "qubit_overhead") return HeatmapMetric::QubitOverhead;
  throw DomainError("unknown heatmap metric '" + std::string(name) + "'");
}

Heatmap export_heatmap(const SweepResult& result, AnsatzFamily family,
                       int opt_level, HeatmapMetric metric) {
  std::set<int> ns, ls;
  for (const auto& m : result.means) {
    if (m.family == family && m.opt_level == opt_level) {
      ns.insert(m.n_logical);
      ls.insert(m.reps);
    }
  }
  if (ns.empty()) {
    throw DomainError("no sweep cells for family " +
                      std::string(family_name(family)) + " at opt level " +
                      std::to_string(opt_level));
  }
  Heatmap h;
  h.n_values.assign(ns.begin(), ns.end());
  h.l_values.assign(ls.begin(), ls.end());
  h.values.assign(h.n_values.size(),
                  std::vector<double>(h.l_values.size(),
                                      std::numeric_limits<double>::quiet_NaN()));
  for (const auto& m : result.means) {
    if (m.family != family || m.opt_level != opt_level) continue;
    const auto row = static_cast<std::size_t>(
        std::lower_bound(h.n_values.begin(), h.n_values.end(), m.n_logical) -
        h.n_values.begin());
    const auto col = static_cast<std::size_t>(
        std::lower_bound(h.l_values.begin(), h.l_values.end(), m.reps) -
        h.l_values.begin());
    double v = 0.0;
    switch (metric) {
      case HeatmapMetric::DeltaEKl: v = m.delta_e_kl; break;
      case HeatmapMetric::DeltaGradVar: v = m.delta_gradvar; break;
      case HeatmapMetric::DepthOverhead:
        v = m.depth_transpiled - m.depth_logical;
        break;
      case HeatmapMetric::QubitOverhead:
        v = m.qubits_transpiled - m.n_logical;
        break;
    }
    h.values[row][col] = v;
  }
  return h;
}

void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap) {
  out << "n\\L";
  for (int l : heatmap.l_values) out << ',' << l;
  out << '\n';
  for (std::size_t r = 0; r < heatmap.n_values.size(); ++r) {
    out << heatmap.n_values[r];
    for (double v : heatmap.values[r]) out << ',' << fmt_double(v);
    out << '\n';
  }
}

}  // namespace qtlens
