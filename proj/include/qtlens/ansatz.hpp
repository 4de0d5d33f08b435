#pragma once

#include <array>
#include <string_view>

#include "qtlens/circuit.hpp"

namespace qtlens {

enum class AnsatzFamily {
  EfficientSU2Full,
  HeaRing,
  TtnTree,
  RealAmplitudesLinear,
  MpsBrick,
  TwoLocalRyRzLinear,
};

inline constexpr std::array<AnsatzFamily, 6> kAllFamilies = {
    AnsatzFamily::EfficientSU2Full,     AnsatzFamily::HeaRing,
    AnsatzFamily::TtnTree,              AnsatzFamily::RealAmplitudesLinear,
    AnsatzFamily::MpsBrick,             AnsatzFamily::TwoLocalRyRzLinear};

/// CLI/file name, e.g. "efficient_su2_full".
[[nodiscard]] std::string_view family_name(AnsatzFamily family);
/// Throws DomainError on unknown names.
[[nodiscard]] AnsatzFamily parse_family(std::string_view name);

/// Closed-form parameter count. Throws DomainError unless n >= 2, reps >= 1.
[[nodiscard]] int param_count(AnsatzFamily family, int n, int reps);

/// Builds the ansatz circuit on n qubits with `reps` repetitions. Parameter
/// indices are assigned in program order starting from 0.
///
///  - EfficientSU2Full: reps x [RY layer, RZ layer, CX(i,j) for all i<j],
///    then a final RY+RZ layer.
///  - RealAmplitudesLinear: reps x [RY layer, CX(i,i+1) chain], final RY.
///  - TwoLocalRyRzLinear: reps x [RY, RZ, CX chain], final RY+RZ.
///  - HeaRing: reps x [RY, RZ, CX(i,(i+1) mod n)], no final layer; the
///    ring is a single CX(0,1) for n = 2.
///  - MpsBrick: reps x brick layer of (RY, RY, CX(low,high)) blocks on the
///    even pairs then the odd pairs.
///  - TtnTree: reps x binary merge tree; each merge is RY(low), RY(high),
///    CX(high,low), the low wire survives and an unpaired trailing wire is
///    promoted to the next stage.
[[nodiscard]] Circuit build_ansatz(AnsatzFamily family, int n, int reps);

}  // namespace qtlens
