#include "qtlens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qtlens/errors.hpp"
#include "qtlens/rng.hpp"

namespace qtlens {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

}  // namespace

void ExpressibilityConfig::validate() const {
  if (n_pairs < 100) throw DomainError("n_pairs must be >= 100");
  if (bins < 2) throw DomainError("bins must be >= 2");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  if (haar_dimension_qubits && *haar_dimension_qubits < 1) {
    throw DomainError("haar_dimension_qubits must be >= 1");
  }
}

void TrainabilityConfig::validate() const {
  if (n_grad < 2) throw DomainError("n_grad must be >= 2");
}

std::string_view wire_mode_name(WireMode mode) {
  return mode == WireMode::Tracked ? "tracked" : "raw_zero";
}

WireMode parse_wire_mode(std::string_view name) {
  if (name == "tracked") return WireMode::Tracked;
  if (name == "raw_zero") return WireMode::RawZero;
  throw DomainError("unknown wire mode '" + std::string(name) + "'");
}

double haar_bin_mass(double lo, double hi, std::int64_t d) {
  if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
    throw DomainError("haar_bin_mass needs 0 <= lo < hi <= 1");
  }
  if (d < 2) throw DomainError("haar_bin_mass needs d >= 2");
  const auto k = static_cast<double>(d - 1);
  return std::pow(1.0 - lo, k) - std::pow(1.0 - hi, k);
}

std::vector<double> haar_histogram(int bins, std::int64_t d) {
  if (bins < 1) throw DomainError("haar_histogram needs bins >= 1");
  std::vector<double> q(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / bins;
    const double hi = b + 1 == bins ? 1.0 : static_cast<double>(b + 1) / bins;
    q[b] = haar_bin_mass(lo, hi, d);
  }
  return q;
}

std::vector<double> fidelity_histogram(std::span<const double> fidelities,
                                       int bins) {
  if (bins < 1) throw DomainError("fidelity_histogram needs bins >= 1");
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double f : fidelities) {
    auto b = static_cast<int>(std::floor(f * bins));
    b = std::clamp(b, 0, bins - 1);
    counts[b] += 1.0;
  }
  return counts;
}

double kl_divergence(std::span<const double> p, std::span<const double> q,
                     double epsilon) {
  if (p.size() != q.size()) {
    throw DomainError("kl_divergence: histograms have " +
                      std::to_string(p.size()) + " and " +
                      std::to_string(q.size()) + " bins");
  }
  double p_total = 0.0, q_total = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (p[b] < 0.0 || q[b] < 0.0) {
      throw DomainError("kl_divergence: negative histogram cell");
    }
    p_total += p[b] + epsilon;
    q_total += q[b] + epsilon;
  }
  double kl = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) {
    const double pb = (p[b] + epsilon) / p_total;
    const double qb = (q[b] + epsilon) / q_total;
    kl += pb * std::log(pb / qb);
  }
  return kl;
}

std::vector<double> sample_angles(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(static_cast<std::size_t>(count));
  for (auto& t : theta) t = kTwoPi * rng.uniform01();
  return theta;
}

std::vector<double> sample_fidelities(const Circuit& circuit,
                                      const ExpressibilityConfig& cfg) {
  cfg.validate();
  const int p = circuit.param_count();
  std::vector<double> out(static_cast<std::size_t>(cfg.n_pairs));
  std::vector<double> a(static_cast<std::size_t>(p));
  std::vector<double> b(static_cast<std::size_t>(p));
  for (int i = 0; i < cfg.n_pairs; ++i) {
    Rng rng(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    for (auto& t : a) t = kTwoPi * rng.uniform01();
    for (auto& t : b) t = kTwoPi * rng.uniform01();
    out[i] = fidelity(simulate(circuit, a), simulate(circuit, b));
  }
  return out;
}

double expressibility_kl_from_fidelities(std::span<const double> fidelities,
                                         int bins, int haar_qubits,
                                         double epsilon) {
  if (haar_qubits < 1 || haar_qubits > 62) {
    throw DomainError("Haar dimension qubits must be in [1, 62]");
  }
  const auto p = fidelity_histogram(fidelities, bins);
  const auto q = haar_histogram(bins, std::int64_t{1} << haar_qubits);
  return kl_divergence(p, q, epsilon);
}

double expressibility_kl(const Circuit& circuit,
                         const ExpressibilityConfig& cfg) {
  cfg.validate();
  if (circuit.param_count() == 0) {
    throw DomainError("expressibility of a circuit without parameters");
  }
  const int haar_qubits =
      cfg.haar_dimension_qubits.value_or(circuit.num_qubits());
  const auto fids = sample_fidelities(circuit, cfg);
  return expressibility_kl_from_fidelities(fids, cfg.bins, haar_qubits,
                                           cfg.epsilon);
}

Statevector haar_random_state(int qubits, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = {re, im};
    norm += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return Statevector(qubits, std::move(amps));
}

std::vector<double> sample_haar_fidelities(int qubits, int n_pairs,
                                           std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(n_pairs));
  for (int i = 0; i < n_pairs; ++i) {
    const std::uint64_t s = sample_seed(seed, static_cast<std::uint64_t>(i));
    out[i] = fidelity(haar_random_state(qubits, mix64(s)),
                      haar_random_state(qubits, mix64(s + 1)));
  }
  return out;
}

double cost_z(const Circuit& circuit, std::span<const double> theta,
              int wire) {
  return expectation_z(simulate(circuit, theta), wire);
}

std::vector<double> parameter_shift_gradient(const Circuit& circuit,
                                             std::span<const double> theta,
                                             int wire) {
  if (static_cast<int>(theta.size()) != circuit.param_count()) {
    throw BindingError("gradient: binding has " +
                       std::to_string(theta.size()) +
                       " values, circuit expects " +
                       std::to_string(circuit.param_count()));
  }
  if (wire < 0 || wire >= circuit.num_qubits()) {
    throw DomainError("gradient: wire " + std::to_string(wire) +
                      " out of range");
  }
  std::vector<double> grad(theta.size(), 0.0);
  const auto& insts = circuit.instructions();
  Statevector prefix(circuit.num_qubits());
  for (std::size_t i = 0; i < insts.size(); ++i) {
    const Instruction& g = insts[i];
    if (g.angle && !g.angle->is_constant()) {
      if (g.kind != GateKind::RX && g.kind != GateKind::RY &&
          g.kind != GateKind::RZ) {
        throw UnsupportedGeneratorError(
            "parameter shift needs a Pauli rotation, got '" +
            std::string(gate_name(g.kind)) + "'");
      }
      const double phi = g.angle->evaluate(theta);
      double shifted[2];
      for (int s = 0; s < 2; ++s) {
        Statevector state = prefix;
        state.apply(g.kind, g.qubits(), phi + (s == 0 ? kHalfPi : -kHalfPi));
        state.apply_range(circuit, i + 1, insts.size(), theta);
        shifted[s] = expectation_z(state, wire);
      }
      const double gate_grad = 0.5 * (shifted[0] - shifted[1]);
      for (const auto& term : g.angle->terms()) {
        grad[static_cast<std::size_t>(term.index)] += term.coeff * gate_grad;
      }
    }
    prefix.apply(g, theta);
  }
  return grad;
}

double gradient_variance(const Circuit& circuit, const TrainabilityConfig& cfg,
                         int wire) {
  cfg.validate();
  const int p = circuit.param_count();
  if (p == 0) throw DomainError("gradient variance needs P >= 1");
  // Welford per parameter
  std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
  std::vector<double> m2(static_cast<std::size_t>(p), 0.0);
  for (int s = 0; s < cfg.n_grad; ++s) {
    const auto theta =
        sample_angles(p, sample_seed(cfg.seed, static_cast<std::uint64_t>(s)));
    const auto grad = parameter_shift_gradient(circuit, theta, wire);
    for (int k = 0; k < p; ++k) {
      const double delta = grad[k] - mean[k];
      mean[k] += delta / (s + 1);
      m2[k] += delta * (grad[k] - mean[k]);
    }
  }
  double total = 0.0;
  for (double v : m2) total += v / (cfg.n_grad - 1);
  return total / p;
}

Overheads overheads(const MetricSample& logical,
                    const MetricSample& transpiled) {
  const auto& le = logical.expressibility;
  const auto& te = transpiled.expressibility;
  if (le.n_pairs != te.n_pairs || le.bins != te.bins ||
      le.epsilon != te.epsilon || le.seed != te.seed) {
    throw ConfigMismatchError(
        "expressibility sampler settings differ between logical and "
        "transpiled metrics");
  }
  const auto& lt = logical.trainability;
  const auto& tt = transpiled.trainability;
  if (lt.n_grad != tt.n_grad || lt.seed != tt.seed) {
    throw ConfigMismatchError(
        "trainability sampler settings differ between logical and "
        "transpiled metrics");
  }
  return Overheads{transpiled.e_kl - logical.e_kl,
                   transpiled.gradvar - logical.gradvar};
}

}  // namespace qtlens
