#include "monolab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "monolab/errors.hpp"

namespace monolab::verify {

using inequalities::BoundSpec;
using inequalities::ChainInputs;
using inequalities::ChainSpec;
using inequalities::ChainStep;
using inequalities::InequalityReport;
using inequalities::kConditionTol;
using inequalities::kZeroTol;
using inequalities::power;
using inequalities::SplitCase;
using inequalities::Triple;
using measures::Mode;
using qstate::DensityMatrix;
using qstate::PureState;

namespace {

constexpr std::size_t kA[] = {0};

// Neumaier compensated sum.
class Summer {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class Accumulator {
 public:
  void add(const Outcome& o) {
    ++out_.tested;
    if (!o.hit) return;
    ++out_.hypothesis_hits;
    if (o.margin < -kConditionTol) ++out_.violations;
    min_ = std::min(min_, o.margin);
    margins_.add(o.margin);
    gains_.add(o.gain);
  }

  SweepSummary finish() const {
    SweepSummary s = out_;
    if (s.hypothesis_hits == 0) {
      s.min_margin = std::numeric_limits<double>::quiet_NaN();
      return s;
    }
    const double n = static_cast<double>(s.hypothesis_hits);
    s.min_margin = min_;
    s.mean_margin = margins_.value() / n;
    s.tightness_gain = gains_.value() / n;
    return s;
  }

 private:
  SweepSummary out_;
  double min_ = std::numeric_limits<double>::infinity();
  Summer margins_;
  Summer gains_;
};

Mode mode_of(const SweepConfig& cfg) { return measures::profile_for(cfg.measure).mode; }

InequalityReport evaluate(Mode mode, const Triple& e, const BoundSpec& spec) {
  return mode == Mode::monogamy ? inequalities::evaluate_monogamy(e, spec)
                                : inequalities::evaluate_polygamy(e, spec);
}

std::vector<Outcome> judge_tripartite(const PureState& s, const SweepConfig& cfg) {
  const auto rho = qstate::density_from_pure(s);
  const std::size_t ab[] = {0, 1};
  const std::size_t ac[] = {0, 2};
  Triple e;
  e.whole = measures::evaluate(cfg.measure, s, kA);
  e.ab = measures::evaluate(cfg.measure, qstate::partial_trace(rho, ab), kA);
  e.ac = measures::evaluate(cfg.measure, qstate::partial_trace(rho, ac), kA);

  const Mode mode = mode_of(cfg);
  const double g = cfg.base_exponent;
  const SplitCase split = inequalities::natural_split(e);
  const auto st = inequalities::extreme_parameters(mode, split, e.whole, e.ab, e.ac, g, cfg.forced_h);

  std::vector<Outcome> out;
  for (double x : cfg.exponents) {
    const auto rep = evaluate(mode, e, BoundSpec{x, g, st.h, st.u, split});
    const auto base = evaluate(mode, e, BoundSpec{x, g, 1.0, 1.0, split});
    out.push_back(Outcome{rep.hypotheses_met, rep.margin, base.margin - rep.margin});
  }
  return out;
}

std::vector<Outcome> judge_chain(const PureState& s, const SweepConfig& cfg) {
  const auto rho = qstate::density_from_pure(s);
  ChainInputs in;
  in.global = measures::evaluate(cfg.measure, s, kA);
  for (std::size_t b = 1; b <= 3; ++b) {
    const std::size_t keep[] = {0, b};
    in.pairs.push_back(measures::evaluate(cfg.measure, qstate::partial_trace(rho, keep), kA));
  }
  const std::size_t tail_keep[] = {0, 2, 3};
  in.tails.push_back(measures::evaluate(cfg.measure, qstate::partial_trace(rho, tail_keep), kA));

  const Mode mode = mode_of(cfg);
  const double g = cfg.base_exponent;
  const auto spec = inequalities::extreme_chain(in, mode, g, cfg.forced_h).spec;

  ChainSpec baseline = spec;
  for (auto& st : baseline.steps) st = ChainStep{1.0, 1.0};

  std::vector<Outcome> out;
  for (double x : cfg.exponents) {
    const auto rep = inequalities::evaluate_chain(in, spec, x, g);
    const auto base = inequalities::evaluate_chain(in, baseline, x, g);
    out.push_back(Outcome{rep.hypotheses_met, rep.margin, base.margin - rep.margin});
  }
  return out;
}

}  // namespace

std::string_view to_string(System s) noexcept {
  switch (s) {
    case System::tripartite_pure: return "tripartite_pure";
    case System::four_qubit_pure: return "four_qubit_pure";
    case System::two_qubit_mixed: return "two_qubit_mixed";
  }
  return "unknown";
}

std::optional<System> parse_system(std::string_view name) noexcept {
  for (auto s : {System::tripartite_pure, System::four_qubit_pure, System::two_qubit_mixed})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

bool operator==(const SweepSummary& a, const SweepSummary& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.tested == b.tested && a.hypothesis_hits == b.hypothesis_hits &&
         a.violations == b.violations && same(a.min_margin, b.min_margin) &&
         same(a.mean_margin, b.mean_margin) && same(a.tightness_gain, b.tightness_gain);
}

void validate(const SweepConfig& cfg) {
  if (cfg.n_states == 0) throw Error(Errc::domain_error, "n_states must be at least 1");
  if (cfg.exponents.empty()) throw Error(Errc::domain_error, "exponent grid is empty");
  if (cfg.forced_h && !(*cfg.forced_h >= 0.0 && *cfg.forced_h <= 1.0)) {
    throw Error(Errc::domain_error, "forced h must lie in [0, 1]");
  }
  const std::string name(measures::to_string(cfg.measure));
  if (cfg.system == System::two_qubit_mixed) {
    if (cfg.measure != MeasureKind::concurrence && cfg.measure != MeasureKind::cren) {
      throw Error(Errc::unsupported_system_measure_pair,
                  "two_qubit_mixed sweeps the N <= C <= C_a ordering and takes concurrence or cren, got " +
                      name);
    }
    if (cfg.rank < 1 || cfg.rank > 4) throw Error(Errc::domain_error, "rank must lie in [1, 4]");
    for (double x : cfg.exponents)
      if (!(x > 0.0) || !std::isfinite(x)) {
        throw Error(Errc::exponent_out_of_range, "ordering exponents must be positive");
      }
    return;
  }
  const auto profile = measures::profile_for(cfg.measure);
  const double g = cfg.base_exponent;
  if (!(g > 0.0) || !profile.admits(g)) {
    throw Error(Errc::exponent_out_of_range,
                "base exponent " + inequalities::format_number(g) + " is outside the admissible set of " + name);
  }
  for (double x : cfg.exponents) {
    const bool ok = profile.mode == Mode::monogamy ? (x >= 0.0 && x <= g) : (x >= g && std::isfinite(x));
    if (!ok) {
      throw Error(Errc::exponent_out_of_range, "exponent " + inequalities::format_number(x) +
                                                   " is outside the admissible range for base " +
                                                   inequalities::format_number(g));
    }
  }
}

std::vector<Outcome> judge_pure(const PureState& s, const SweepConfig& cfg) {
  switch (cfg.system) {
    case System::tripartite_pure:
      if (s.dims != qstate::Dims{2, 2, 2}) throw Error(Errc::wrong_dimension, "expected a 3-qubit state");
      return judge_tripartite(s, cfg);
    case System::four_qubit_pure:
      if (s.dims != qstate::Dims{2, 2, 2, 2}) throw Error(Errc::wrong_dimension, "expected a 4-qubit state");
      return judge_chain(s, cfg);
    case System::two_qubit_mixed: break;
  }
  throw Error(Errc::unsupported_system_measure_pair, "two_qubit_mixed takes density matrices");
}

std::vector<Outcome> judge_mixed(const DensityMatrix& rho, const SweepConfig& cfg) {
  const double n = measures::negativity(rho, kA);
  const double c = measures::concurrence_mixed_2q(rho);
  const double ca = measures::concurrence_assist_2q(rho);
  std::vector<Outcome> out;
  for (double x : cfg.exponents) {
    const double margin = std::min(power(c, x) - power(n, x), power(ca, x) - power(c, x));
    out.push_back(Outcome{true, margin, 0.0});
  }
  return out;
}

PureState ensemble_pure(const SweepConfig& cfg, std::size_t i) {
  qstate::Rng rng(cfg.seed, i);
  if (cfg.system == System::four_qubit_pure) {
    const std::size_t cut[] = {0, 1};
    return qstate::random_bounded_schmidt_rank({2, 2, 2, 2}, cut, 2, rng);
  }
  return qstate::haar_random_pure({2, 2, 2}, rng);
}

DensityMatrix ensemble_mixed(const SweepConfig& cfg, std::size_t i) {
  qstate::Rng rng(cfg.seed, i);
  return qstate::random_mixed({2, 2}, cfg.rank, rng);
}

namespace {

std::vector<Outcome> judge_index(const SweepConfig& cfg, std::size_t i) {
  if (cfg.system == System::two_qubit_mixed) return judge_mixed(ensemble_mixed(cfg, i), cfg);
  return judge_pure(ensemble_pure(cfg, i), cfg);
}

}  // namespace

SweepSummary run_sweep_serial(const SweepConfig& cfg) {
  validate(cfg);
  Accumulator acc;
  for (std::size_t i = 0; i < cfg.n_states; ++i)
    for (const auto& o : judge_index(cfg, i)) acc.add(o);
  return acc.finish();
}

SweepSummary run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  const int cap = cfg.threads > 0 ? cfg.threads : thread_cap_from_env();
  const auto n = static_cast<std::ptrdiff_t>(cfg.n_states);
  std::vector<std::vector<Outcome>> results(cfg.n_states);
  std::exception_ptr failure;
  std::ptrdiff_t failed_at = n;

#ifdef _OPENMP
  const int threads = cap > 0 ? cap : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#else
  (void)cap;
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      results[static_cast<std::size_t>(i)] = judge_index(cfg, static_cast<std::size_t>(i));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(monolab_sweep_failure)
#endif
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);

  Accumulator acc;
  for (const auto& per_state : results)
    for (const auto& o : per_state) acc.add(o);
  return acc.finish();
}

SweepSummary run_sweep_on(std::span<const PureState> states, const SweepConfig& cfg) {
  SweepConfig c = cfg;
  c.n_states = std::max<std::size_t>(states.size(), 1);
  validate(c);
  Accumulator acc;
  for (const auto& s : states)
    for (const auto& o : judge_pure(s, c)) acc.add(o);
  return acc.finish();
}

int thread_cap_from_env() {
  const char* v = std::getenv("MONOLAB_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n <= 0 || n > 4096) return 0;
  return static_cast<int>(n);
}

}  // namespace monolab::verify
