#pragma once

// Bipartite entanglement and assisted-entanglement measures.
//
// Negativity is the un-halved ||rho^{T_A}|| - 1. CREN and CRENoA are only
// computed where they reduce to closed forms: two-qubit states (equal to C and
// C_a), pure states (equal to the pure-state negativity), and mixed states
// whose local supports are at most two-dimensional on both sides, which are
// mapped onto two qubits by local isometries.

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "monolab/qstate.hpp"

namespace monolab::measures {

using qstate::DensityMatrix;
using qstate::GenSchmidtParams;
using qstate::PureState;

/// Eigenvalues of reduced states above this count toward their support.
inline constexpr double kSupportTol = 1e-12;

enum class MeasureKind { concurrence, negativity, cren, crenoa, concurrence_assist };

std::string_view to_string(MeasureKind kind) noexcept;
std::optional<MeasureKind> parse_measure(std::string_view name) noexcept;

/// Monogamy measures carry a gamma lower bound; assisted (polygamy) measures
/// a delta interval.
enum class Mode { monogamy, polygamy };

std::string_view to_string(Mode mode) noexcept;

struct MeasureProfile {
  MeasureKind kind;
  Mode mode;
  double exponent_lo;
  double exponent_hi;  // +inf for monogamy measures

  bool admits(double base_exponent) const noexcept;
};

MeasureProfile profile_for(MeasureKind kind) noexcept;

/// Schmidt coefficients (singular values of the amplitude matrix), descending.
std::vector<double> schmidt_coefficients(const PureState& s, std::span<const std::size_t> part_a);

/// sqrt(2 (1 - Tr rho_A^2)), evaluated as 2 sqrt(sum_{i<j} p_i p_j) over the
/// Schmidt weights to avoid cancellation near product states.
double concurrence_pure(const PureState& s, std::span<const std::size_t> part_a);

/// (Tr sqrt(rho_A))^2 - 1.
double negativity_pure(const PureState& s, std::span<const std::size_t> part_a);

/// ||rho^{T_A}|| - 1 for the split part_a | rest.
double negativity(const DensityMatrix& rho, std::span<const std::size_t> part_a);

/// mu_1 >= ... >= mu_4: square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho),
/// i.e. the singular values of sqrt(rho) sqrt(rho~).
struct WoottersSpectrum {
  std::array<double, 4> mu{};
};

WoottersSpectrum wootters_spectrum(const DensityMatrix& rho);
double concurrence_mixed_2q(const DensityMatrix& rho);
double concurrence_assist_2q(const DensityMatrix& rho);
double cren_2q(const DensityMatrix& rho);
double crenoa_2q(const DensityMatrix& rho);

/// Spin-flipped state (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).
numkit::ComplexMatrix spin_flip(const numkit::ComplexMatrix& rho);

/// Measure of a pure state across part_a | rest.
double evaluate(MeasureKind kind, const PureState& s, std::span<const std::size_t> part_a);

/// Measure of a (possibly mixed) state across part_a | rest. Throws
/// Unsupported where no closed form applies.
double evaluate(MeasureKind kind, const DensityMatrix& rho, std::span<const std::size_t> part_a);

struct GsClosedForms {
  double c_a_bc = 0.0;
  double c_ab = 0.0;
  double c_ac = 0.0;
  double na_a_bc = 0.0;
  double na_ab = 0.0;
  double na_ac = 0.0;
};

/// Closed-form concurrences and CRENoA values of the generalized Schmidt state.
GsClosedForms gs_closed_forms(const GenSchmidtParams& p);

}  // namespace monolab::measures
