#pragma once

// Randomized sweeps over state ensembles that check the parameterized bounds
// at the extreme admissible (h, u) for every hypothesis-satisfying state.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "monolab/inequalities.hpp"
#include "monolab/measures.hpp"
#include "monolab/qstate.hpp"

namespace monolab::verify {

using measures::MeasureKind;

enum class System { tripartite_pure, four_qubit_pure, two_qubit_mixed };

std::string_view to_string(System s) noexcept;
std::optional<System> parse_system(std::string_view name) noexcept;

struct SweepConfig {
  std::size_t n_states = 1000;
  std::uint64_t seed = 0;
  System system = System::tripartite_pure;
  MeasureKind measure = MeasureKind::concurrence;
  std::vector<double> exponents;  // alpha (monogamy) or beta (polygamy)
  double base_exponent = 2.0;     // gamma or delta
  std::size_t rank = 2;           // two_qubit_mixed only
  std::optional<double> forced_h;
  int threads = 0;  // 0: MONOLAB_THREADS if set, otherwise the OpenMP default
};

struct SweepSummary {
  std::size_t tested = 0;  // (state, exponent) pairs
  std::size_t hypothesis_hits = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;   // NaN when nothing was judged
  double mean_margin = 0.0;  // over hypothesis hits
  double tightness_gain = 0.0;  // mean of baseline margin minus new margin over hits
};

bool operator==(const SweepSummary& a, const SweepSummary& b);

/// Throws ExponentOutOfRange, UnsupportedSystemMeasurePair or DomainError.
void validate(const SweepConfig& cfg);

/// Per-(state, exponent) outcome.
struct Outcome {
  bool hit = false;
  double margin = 0.0;
  double gain = 0.0;
};

/// Judges one state. Tripartite systems take 3-qubit states, the chain
/// system 4-qubit states whose A B1 | B2 B3 Schmidt rank is at most 2.
std::vector<Outcome> judge_pure(const qstate::PureState& s, const SweepConfig& cfg);
std::vector<Outcome> judge_mixed(const qstate::DensityMatrix& rho, const SweepConfig& cfg);

/// State i of the ensemble, drawn from its own stream of the seed.
qstate::PureState ensemble_pure(const SweepConfig& cfg, std::size_t i);
qstate::DensityMatrix ensemble_mixed(const SweepConfig& cfg, std::size_t i);

/// OpenMP-parallel sweep. Results are identical to run_sweep_serial.
SweepSummary run_sweep(const SweepConfig& cfg);
/// Single-threaded reference implementation.
SweepSummary run_sweep_serial(const SweepConfig& cfg);
/// Sweep over caller-supplied pure states instead of the random ensemble.
SweepSummary run_sweep_on(std::span<const qstate::PureState> states, const SweepConfig& cfg);

/// Thread cap from MONOLAB_THREADS, 0 when unset or invalid.
int thread_cap_from_env();

}  // namespace monolab::verify
