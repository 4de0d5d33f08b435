#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtlens/errors.hpp"
#include "qtlens/harness.hpp"
#include "qtlens/transpiler.hpp"

using namespace qtlens;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.families = {AnsatzFamily::HeaRing};
  cfg.n_values = {2};
  cfg.l_values = {2};
  cfg.opt_levels = {0};
  cfg.runs = 2;
  cfg.base_seed = 5;
  cfg.expressibility.n_pairs = 200;
  cfg.trainability.n_grad = 10;
  return cfg;
}

const Target& heavy_hex() {
  static const Target t = load_target(default_target_path());
  return t;
}

std::string records_text(const SweepResult& r) {
  std::ostringstream out;
  write_records_csv(out, r.records);
  return out.str();
}

}  // namespace

TEST_CASE("sweep cardinality") {
  const SweepResult r = run_sweep(small_config(), heavy_hex());
  CHECK(r.records.size() == 2);
  CHECK(r.means.size() == 1);
  CHECK(r.failures.empty());
  CHECK(r.records[0].run_index == 0);
  CHECK(r.records[1].run_index == 1);
  CHECK(r.metadata.at("records") == 2);
  CHECK(r.metadata.at("config").at("runs") == 2);

  SweepConfig wider = small_config();
  wider.families = {AnsatzFamily::MpsBrick, AnsatzFamily::TtnTree};
  wider.n_values = {3, 2};
  wider.opt_levels = {1, 0};
  wider.runs = 1;
  const SweepResult w = run_sweep(wider, heavy_hex());
  REQUIRE(w.records.size() == 2 * 2 * 1 * 2);
  // canonical order: family, n, L, opt ascending
  CHECK(w.records[0].family == AnsatzFamily::TtnTree);
  CHECK(w.records[0].n_logical == 2);
  CHECK(w.records[0].opt_level == 0);
  CHECK(w.records[1].opt_level == 1);
  CHECK(w.records.back().family == AnsatzFamily::MpsBrick);
  CHECK(w.records.back().n_logical == 3);
}

TEST_CASE("sweep is deterministic and self-consistent") {
  SweepConfig cfg = small_config();
  cfg.families = {AnsatzFamily::HeaRing, AnsatzFamily::RealAmplitudesLinear};
  cfg.opt_levels = {0, 2};
  cfg.runs = 3;
  const SweepResult a = run_sweep(cfg, heavy_hex());
  cfg.jobs = 3;
  const SweepResult b = run_sweep(cfg, heavy_hex());
  CHECK(records_text(a) == records_text(b));

  for (const auto& r : a.records) {
    CHECK(r.delta_e_kl == r.e_kl_transpiled - r.e_kl_logical);
    CHECK(r.delta_gradvar == r.gradvar_transpiled - r.gradvar_logical);
  }
  for (const auto& m : a.means) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : a.records) {
      if (r.family == m.family && r.n_logical == m.n_logical &&
          r.reps == m.reps && r.opt_level == m.opt_level) {
        sum += r.delta_e_kl;
        ++count;
      }
    }
    CHECK(count == 3);
    CHECK(std::abs(m.delta_e_kl - sum / count) < 1e-15);
  }

  cfg.base_seed = 6;
  CHECK(records_text(run_sweep(cfg, heavy_hex())) != records_text(a));
}

TEST_CASE("seed derivation") {
  const auto f = AnsatzFamily::HeaRing;
  CHECK(cell_seed(1, f, 2, 2, 0, 0) == cell_seed(1, f, 2, 2, 0, 0));
  CHECK(cell_seed(1, f, 2, 2, 0, 0) != cell_seed(1, f, 2, 2, 0, 1));
  CHECK(cell_seed(1, f, 2, 4, 0, 0) != cell_seed(1, f, 4, 2, 0, 0));
  CHECK(cell_seed(1, f, 2, 2, 0, 0) != cell_seed(2, f, 2, 2, 0, 0));
  CHECK(transpile_seed(1, f, 2, 2, 0) != transpile_seed(1, f, 2, 2, 0, 0));
  CHECK(transpile_seed(1, f, 2, 2, 0) != cell_seed(1, f, 2, 2, 0, 0));
}

TEST_CASE("records csv round trip") {
  const SweepResult r = run_sweep(small_config(), heavy_hex());
  const std::string text = records_text(r);
  CHECK(text.rfind(std::string(kRecordsHeader) + "\n", 0) == 0);
  std::istringstream in(text);
  const auto back = read_records_csv(in);
  REQUIRE(back.size() == r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].e_kl_transpiled == r.records[i].e_kl_transpiled);
    CHECK(back[i].gradvar_logical == r.records[i].gradvar_logical);
    CHECK(back[i].depth_transpiled == r.records[i].depth_transpiled);
  }
  std::istringstream bad("family,n\n");
  CHECK_THROWS_AS((void)read_records_csv(bad), LoadError);
}

TEST_CASE("sweep outputs on disk") {
  const auto dir = std::filesystem::temp_directory_path() / "qtlens_sweep_test";
  std::filesystem::remove_all(dir);
  const SweepResult r = run_sweep(small_config(), heavy_hex());
  write_sweep_outputs(r, dir);
  CHECK(std::filesystem::exists(dir / "records.csv"));
  CHECK(std::filesystem::exists(dir / "cell_means.csv"));
  const auto meta = nlohmann::json::parse(std::ifstream(dir / "metadata.json"));
  CHECK(meta.at("kl_log_base") == "e");
  std::filesystem::remove_all(dir);
}

TEST_CASE("config json round trip") {
  SweepConfig cfg = small_config();
  cfg.vary_transpile_seed = true;
  cfg.trainability.observable_wire_mode = WireMode::RawZero;
  cfg.expressibility.bins = 40;
  const SweepConfig back = sweep_config_from_json(sweep_config_to_json(cfg));
  CHECK(sweep_config_to_json(back) == sweep_config_to_json(cfg));
  CHECK(back.families == cfg.families);
  CHECK(back.vary_transpile_seed);
  CHECK(back.trainability.observable_wire_mode == WireMode::RawZero);

  CHECK_THROWS_AS((void)sweep_config_from_json(
                      nlohmann::json::parse(R"({"families":["bogus"]})")),
                  DomainError);
  CHECK_THROWS_AS((void)sweep_config_from_json(
                      nlohmann::json::parse(R"({"runs":0})")),
                  DomainError);
  CHECK_THROWS_AS((void)sweep_config_from_json(
                      nlohmann::json::parse(R"({"n_values":"four"})")),
                  LoadError);
}

TEST_CASE("defaults") {
  const SweepConfig cfg;
  CHECK(cfg.families.size() * cfg.n_values.size() * cfg.l_values.size() *
            cfg.opt_levels.size() * static_cast<std::size_t>(cfg.runs) ==
        3000);
  CHECK(cfg.expressibility.n_pairs == 2000);
  CHECK(cfg.expressibility.bins == 75);
  CHECK(cfg.trainability.n_grad == 100);
}

TEST_CASE("failed cells are reported, not fatal") {
  SweepConfig cfg = small_config();
  cfg.n_values = {2, 4};
  const Target tiny("path3", line_map(3));
  const SweepResult r = run_sweep(cfg, tiny);
  CHECK(r.records.size() == 2);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].n_logical == 4);
  CHECK(r.metadata.at("failures").size() == 1);
}

TEST_CASE("heatmap export") {
  SweepConfig cfg = small_config();
  cfg.families = {AnsatzFamily::TtnTree};
  cfg.n_values = {2, 3};
  cfg.l_values = {1, 2};
  cfg.runs = 1;
  const SweepResult r = run_sweep(cfg, heavy_hex());
  const Heatmap q =
      export_heatmap(r, AnsatzFamily::TtnTree, 0, HeatmapMetric::QubitOverhead);
  CHECK(q.n_values == std::vector<int>{2, 3});
  CHECK(q.l_values == std::vector<int>{1, 2});
  REQUIRE(q.values.size() == 2);
  for (const auto& row : q.values) {
    REQUIRE(row.size() == 2);
    for (double v : row) CHECK(v == 0.0);
  }
  const Heatmap d =
      export_heatmap(r, AnsatzFamily::TtnTree, 0, HeatmapMetric::DepthOverhead);
  CHECK(d.values[1][1] == r.means[3].depth_transpiled - r.means[3].depth_logical);

  CHECK_THROWS_AS((void)export_heatmap(r, AnsatzFamily::HeaRing, 0,
                                       HeatmapMetric::DeltaEKl),
                  DomainError);
  CHECK_THROWS_AS((void)export_heatmap(r, AnsatzFamily::TtnTree, 2,
                                       HeatmapMetric::DeltaEKl),
                  DomainError);
  CHECK_THROWS_AS((void)parse_heatmap_metric("depth"), DomainError);

  std::ostringstream csv;
  write_heatmap_csv(csv, q);
  CHECK(csv.str().find("n\\L,1,2") == 0);
}

TEST_CASE("fixed-width pipeline leaves expressibility unchanged") {
  SweepConfig cfg;
  cfg.families = {AnsatzFamily::HeaRing, AnsatzFamily::EfficientSU2Full};
  cfg.n_values = {3};
  cfg.l_values = {1, 2};
  cfg.opt_levels = {0};
  cfg.runs = 2;
  cfg.expressibility.n_pairs = 500;
  cfg.trainability.n_grad = 20;
  const SweepResult r = run_sweep(cfg, Target("k3", complete_map(3)));
  for (const auto& rec : r.records) {
    CHECK(rec.qubits_transpiled == 3);
    CHECK(std::abs(rec.delta_e_kl) < 0.02);
    CHECK(std::abs(rec.delta_gradvar) < 1e-9);
  }
}
