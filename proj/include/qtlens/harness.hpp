#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qtlens/ansatz.hpp"
#include "qtlens/metrics.hpp"
#include "qtlens/target.hpp"

namespace qtlens {

inline constexpr std::string_view kToolVersion = "0.3.0";

struct SweepConfig {
  std::vector<AnsatzFamily> families{kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<int> n_values{2, 4, 6, 8, 10};
  std::vector<int> l_values{2, 4, 6, 8, 10};
  std::vector<int> opt_levels{0, 1, 2, 3};
  int runs = 5;
  std::uint64_t base_seed = 0;
  ExpressibilityConfig expressibility;
  TrainabilityConfig trainability;
  /// Empty means the bundled 65-qubit heavy-hex target.
  std::filesystem::path target_path;
  /// Also vary the transpiler seed across runs (default: fixed per cell).
  bool vary_transpile_seed = false;
  /// Use d = 2^n for the transpiled Haar reference instead of the active
  /// qubit count (ablation).
  bool haar_logical_width = false;
  std::filesystem::path output_dir = "sweep_out";
  /// Worker threads; 0 means hardware concurrency.
  int jobs = 1;

  /// Throws DomainError on empty grids, runs < 1 or bad sampler settings.
  void validate() const;
};

/// Field names mirror SweepConfig; families are given by CLI name.
[[nodiscard]] nlohmann::json sweep_config_to_json(const SweepConfig& cfg);
[[nodiscard]] SweepConfig sweep_config_from_json(const nlohmann::json& doc);

struct MetricRecord {
  AnsatzFamily family = AnsatzFamily::EfficientSU2Full;
  int n_logical = 0;
  int reps = 0;
  int opt_level = 0;
  int run_index = 0;
  double e_kl_logical = 0.0;
  double e_kl_transpiled = 0.0;
  double delta_e_kl = 0.0;
  double gradvar_logical = 0.0;
  double gradvar_transpiled = 0.0;
  double delta_gradvar = 0.0;
  int depth_logical = 0;
  int depth_transpiled = 0;
  int qubits_transpiled = 0;
};

/// Arithmetic mean over the runs of one (family, n, L, opt) cell.
struct CellMean {
  AnsatzFamily family = AnsatzFamily::EfficientSU2Full;
  int n_logical = 0;
  int reps = 0;
  int opt_level = 0;
  int runs = 0;
  double e_kl_logical = 0.0;
  double e_kl_transpiled = 0.0;
  double delta_e_kl = 0.0;
  double gradvar_logical = 0.0;
  double gradvar_transpiled = 0.0;
  double delta_gradvar = 0.0;
  double depth_logical = 0.0;
  double depth_transpiled = 0.0;
  double qubits_transpiled = 0.0;
};

struct CellFailure {
  AnsatzFamily family = AnsatzFamily::EfficientSU2Full;
  int n_logical = 0;
  int reps = 0;
  int opt_level = 0;
  std::string reason;
};

struct SweepResult {
  std::vector<MetricRecord> records;
  std::vector<CellMean> means;
  std::vector<CellFailure> failures;
  nlohmann::json metadata;
};

/// Sampler seed of one run of one cell: StableHash(base_seed) folded with
/// family name, n, L, opt level and run index, in that order.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t base_seed,
                                      AnsatzFamily family, int n, int reps,
                                      int opt_level, int run);

/// Transpiler seed of a cell: the same hash without the run index, or with
/// it when `run` is non-negative.
[[nodiscard]] std::uint64_t transpile_seed(std::uint64_t base_seed,
                                           AnsatzFamily family, int n,
                                           int reps, int opt_level,
                                           int run = -1);

/// Evaluates every run of one cell against `target`.
[[nodiscard]] std::vector<MetricRecord> evaluate_cell(const SweepConfig& cfg,
                                                      const Target& target,
                                                      AnsatzFamily family,
                                                      int n, int reps,
                                                      int opt_level);

/// Per-cell means of `records`, in record order of first appearance.
[[nodiscard]] std::vector<CellMean> cell_means(
    const std::vector<MetricRecord>& records);

[[nodiscard]] SweepResult run_sweep(const SweepConfig& cfg,
                                    const Target& target);
/// Loads cfg.target_path (or the bundled target) first.
[[nodiscard]] SweepResult run_sweep(const SweepConfig& cfg);

inline constexpr std::string_view kRecordsHeader =
    "family,n,L,opt_level,run,e_kl_logical,e_kl_transpiled,delta_e_kl,"
    "gradvar_logical,gradvar_transpiled,delta_gradvar,depth_logical,"
    "depth_transpiled,qubits_transpiled";

void write_records_csv(std::ostream& out,
                       const std::vector<MetricRecord>& records);
void write_means_csv(std::ostream& out, const std::vector<CellMean>& means);
/// Throws LoadError on a malformed file.
[[nodiscard]] std::vector<MetricRecord> read_records_csv(std::istream& in);

/// Writes records.csv, cell_means.csv and metadata.json into `dir`.
void write_sweep_outputs(const SweepResult& result,
                         const std::filesystem::path& dir);

enum class HeatmapMetric { DeltaEKl, DeltaGradVar, DepthOverhead, QubitOverhead };

[[nodiscard]] HeatmapMetric parse_heatmap_metric(std::string_view name);

struct Heatmap {
  std::vector<int> n_values;  // rows, ascending
  std::vector<int> l_values;  // columns, ascending
  std::vector<std::vector<double>> values;
};

/// Per-cell means for one (family, opt level) slice. Cells absent from the
/// result are NaN; throws DomainError when the slice is empty.
[[nodiscard]] Heatmap export_heatmap(const SweepResult& result,
                                     AnsatzFamily family, int opt_level,
                                     HeatmapMetric metric);

void write_heatmap_csv(std::ostream& out, const Heatmap& heatmap);

}  // namespace qtlens
