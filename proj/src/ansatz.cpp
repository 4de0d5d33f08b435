#include "qtlens/ansatz.hpp"

#include <string>
#include <vector>

#include "qtlens/errors.hpp"

namespace qtlens {

std::string_view family_name(AnsatzFamily family) {
  switch (family) {
    case AnsatzFamily::EfficientSU2Full: return "efficient_su2_full";
    case AnsatzFamily::HeaRing: return "hea_ring";
    case AnsatzFamily::TtnTree: return "ttn_tree";
    case AnsatzFamily::RealAmplitudesLinear: return "real_amplitudes_linear";
    case AnsatzFamily::MpsBrick: return "mps_brick";
    case AnsatzFamily::TwoLocalRyRzLinear: return "two_local_ryrz_linear";
  }
  return "?";
}

AnsatzFamily parse_family(std::string_view name) {
  for (AnsatzFamily f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  throw DomainError("unknown ansatz family '" + std::string(name) + "'");
}

namespace {

void check_shape(int n, int reps) {
  if (n < 2) throw DomainError("ansatz needs n >= 2, got " + std::to_string(n));
  if (reps < 1) {
    throw DomainError("ansatz needs reps >= 1, got " + std::to_string(reps));
  }
}

// Appends gates while handing out parameter indices in program order.
class Builder {
 public:
  Builder(int n, int params) : circuit_(n, params) {}

  void rot(GateKind kind, int q) {
    circuit_.append(
        Instruction::rotation(kind, q, ParamExpr::parameter(next_++)));
  }
  void layer(GateKind kind) {
    for (int q = 0; q < circuit_.num_qubits(); ++q) rot(kind, q);
  }
  void cx(int c, int t) {
    circuit_.append(Instruction::two(GateKind::CX, c, t));
  }
  Circuit finish() && {
    circuit_.validate_parameters();
    return std::move(circuit_);
  }

 private:
  Circuit circuit_;
  int next_ = 0;
};

void linear_chain(Builder& b, int n) {
  for (int i = 0; i + 1 < n; ++i) b.cx(i, i + 1);
}

void brick_block(Builder& b, int low, int high) {
  b.rot(GateKind::RY, low);
  b.rot(GateKind::RY, high);
  b.cx(low, high);
}

void tree_block(Builder& b, int n) {
  std::vector<int> survivors(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) survivors[q] = q;
  while (survivors.size() > 1) {
    std::vector<int> next;
    std::size_t i = 0;
    for (; i + 1 < survivors.size(); i += 2) {
      const int low = survivors[i];
      const int high = survivors[i + 1];
      b.rot(GateKind::RY, low);
      b.rot(GateKind::RY, high);
      b.cx(high, low);
      next.push_back(low);
    }
    if (i < survivors.size()) next.push_back(survivors[i]);
    survivors = std::move(next);
  }
}

}  // namespace

int param_count(AnsatzFamily family, int n, int reps) {
  check_shape(n, reps);
  switch (family) {
    case AnsatzFamily::EfficientSU2Full:
    case AnsatzFamily::TwoLocalRyRzLinear:
      return 2 * n * (reps + 1);
    case AnsatzFamily::RealAmplitudesLinear:
      return n * (reps + 1);
    case AnsatzFamily::HeaRing:
      return 2 * n * reps;
    case AnsatzFamily::MpsBrick:
    case AnsatzFamily::TtnTree:
      return 2 * (n - 1) * reps;
  }
  throw DomainError("unknown ansatz family");
}

Circuit build_ansatz(AnsatzFamily family, int n, int reps) {
  Builder b(n, param_count(family, n, reps));
  switch (family) {
    case AnsatzFamily::EfficientSU2Full:
      for (int r = 0; r < reps; ++r) {
        b.layer(GateKind::RY);
        b.layer(GateKind::RZ);
        for (int i = 0; i < n; ++i) {
          for (int j = i + 1; j < n; ++j) b.cx(i, j);
        }
      }
      b.layer(GateKind::RY);
      b.layer(GateKind::RZ);
      break;
    case AnsatzFamily::RealAmplitudesLinear:
      for (int r = 0; r < reps; ++r) {
        b.layer(GateKind::RY);
        linear_chain(b, n);
      }
      b.layer(GateKind::RY);
      break;
    case AnsatzFamily::TwoLocalRyRzLinear:
      for (int r = 0; r < reps; ++r) {
        b.layer(GateKind::RY);
        b.layer(GateKind::RZ);
        linear_chain(b, n);
      }
      b.layer(GateKind::RY);
      b.layer(GateKind::RZ);
      break;
    case AnsatzFamily::HeaRing:
      for (int r = 0; r < reps; ++r) {
        b.layer(GateKind::RY);
        b.layer(GateKind::RZ);
        if (n == 2) {
          b.cx(0, 1);
        } else {
          for (int i = 0; i < n; ++i) b.cx(i, (i + 1) % n);
        }
      }
      break;
    case AnsatzFamily::MpsBrick:
      for (int r = 0; r < reps; ++r) {
        for (int low = 0; low + 1 < n; low += 2) brick_block(b, low, low + 1);
        for (int low = 1; low + 1 < n; low += 2) brick_block(b, low, low + 1);
      }
      break;
    case AnsatzFamily::TtnTree:
      for (int r = 0; r < reps; ++r) tree_block(b, n);
      break;
  }
  return std::move(b).finish();
}

}  // namespace qtlens
