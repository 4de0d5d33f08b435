#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtlens/circuit.hpp"
#include "qtlens/statevector.hpp"

namespace qtlens {

struct ExpressibilityConfig {
  int n_pairs = 2000;
  int bins = 75;
  double epsilon = 1e-12;
  std::uint64_t seed = 0;
  /// Haar reference uses d = 2^haar_dimension_qubits; defaults to the width
  /// of the measured circuit.
  std::optional<int> haar_dimension_qubits;

  /// Throws DomainError unless n_pairs >= 100, bins >= 2, epsilon > 0.
  void validate() const;
};

enum class WireMode { Tracked, RawZero };

[[nodiscard]] std::string_view wire_mode_name(WireMode mode);
[[nodiscard]] WireMode parse_wire_mode(std::string_view name);

struct TrainabilityConfig {
  int n_grad = 100;
  std::uint64_t seed = 0;
  WireMode observable_wire_mode = WireMode::Tracked;

  void validate() const;
};

/// Probability mass of the Haar fidelity density (d-1)(1-F)^(d-2) on
/// [lo, hi]: (1-lo)^(d-1) - (1-hi)^(d-1). Requires 0 <= lo < hi <= 1 and
/// d >= 2; throws DomainError otherwise.
[[nodiscard]] double haar_bin_mass(double lo, double hi, std::int64_t d);

/// Haar masses of `bins` equal-width bins on [0, 1].
[[nodiscard]] std::vector<double> haar_histogram(int bins, std::int64_t d);

/// Counts of fidelities in `bins` equal-width bins on [0, 1]; F = 1 falls in
/// the last bin.
[[nodiscard]] std::vector<double> fidelity_histogram(
    std::span<const double> fidelities, int bins);

/// KL(p || q) in nats after adding epsilon to every cell of both inputs and
/// normalizing each to unit sum. Throws DomainError on mismatched sizes or
/// negative cells.
[[nodiscard]] double kl_divergence(std::span<const double> p,
                                   std::span<const double> q, double epsilon);

/// Uniform draw from [0, 2pi)^count.
[[nodiscard]] std::vector<double> sample_angles(int count, std::uint64_t seed);

/// Pairwise fidelities |<psi(t)|psi(t')>|^2 for cfg.n_pairs pairs; pair i
/// draws t then t' from the sub-seed sample_seed(cfg.seed, i).
[[nodiscard]] std::vector<double> sample_fidelities(
    const Circuit& circuit, const ExpressibilityConfig& cfg);

/// KL divergence between the circuit's fidelity histogram and the Haar
/// reference. Lower is more expressive. Throws DomainError when the circuit
/// has no parameters.
[[nodiscard]] double expressibility_kl(const Circuit& circuit,
                                       const ExpressibilityConfig& cfg);

/// Same statistic from precomputed fidelities.
[[nodiscard]] double expressibility_kl_from_fidelities(
    std::span<const double> fidelities, int bins, int haar_qubits,
    double epsilon);

/// Haar-random pure state (normalized complex Gaussian vector).
[[nodiscard]] Statevector haar_random_state(int qubits, std::uint64_t seed);

/// Fidelities of n_pairs independent Haar-random state pairs.
[[nodiscard]] std::vector<double> sample_haar_fidelities(int qubits,
                                                         int n_pairs,
                                                         std::uint64_t seed);

/// <Z_wire> of U(theta)|0>.
[[nodiscard]] double cost_z(const Circuit& circuit,
                            std::span<const double> theta, int wire);

/// dC/dtheta via the parameter-shift rule applied per gate occurrence:
/// (C(phi + pi/2) - C(phi - pi/2)) / 2 for the gate angle phi, scaled by
/// each parameter's coefficient in that angle and summed over occurrences.
[[nodiscard]] std::vector<double> parameter_shift_gradient(
    const Circuit& circuit, std::span<const double> theta, int wire);

/// Mean over parameters of the unbiased (N-1) sample variance of
/// parameter-shift gradients at cfg.n_grad uniform parameter draws.
[[nodiscard]] double gradient_variance(const Circuit& circuit,
                                       const TrainabilityConfig& cfg,
                                       int wire);

/// One metric evaluation with the sampler settings that produced it.
struct MetricSample {
  double e_kl = 0.0;
  double gradvar = 0.0;
  ExpressibilityConfig expressibility;
  TrainabilityConfig trainability;
};

struct Overheads {
  double delta_e_kl = 0.0;
  double delta_gradvar = 0.0;
};

/// Transpiled minus logical. Throws ConfigMismatchError when the sampler
/// settings differ (the Haar dimension may differ).
[[nodiscard]] Overheads overheads(const MetricSample& logical,
                                  const MetricSample& transpiled);

}  // namespace qtlens
