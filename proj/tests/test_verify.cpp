#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "monolab/errors.hpp"
#include "monolab/verify.hpp"

using namespace monolab;
using namespace monolab::verify;

namespace {

template <class F>
Errc code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::parse_error;
}

SweepConfig small(System sys, MeasureKind k, std::vector<double> xs, std::size_t n = 200) {
  SweepConfig cfg;
  cfg.n_states = n;
  cfg.seed = 12345;
  cfg.system = sys;
  cfg.measure = k;
  cfg.exponents = std::move(xs);
  return cfg;
}

}  // namespace

TEST_CASE("sweep on the example-1 fixture") {
  const std::vector<qstate::PureState> states{qstate::gen_schmidt_state(qstate::example1_params())};
  auto cfg = small(System::tripartite_pure, MeasureKind::concurrence, {2.0});
  const auto s = run_sweep_on(states, cfg);
  CHECK(s.tested == 1);
  CHECK(s.hypothesis_hits == 1);
  CHECK(s.violations == 0);
  CHECK(std::abs(s.min_margin) < 1e-9);

  cfg.forced_h = 0.0;
  const auto none = run_sweep_on(states, cfg);
  CHECK(none.hypothesis_hits == 0);
  CHECK(std::isnan(none.min_margin));
}

TEST_CASE("sweeps are deterministic and serial matches parallel") {
  for (const auto& cfg : {small(System::tripartite_pure, MeasureKind::concurrence, {0.5, 1.0, 2.0}),
                          small(System::tripartite_pure, MeasureKind::crenoa, {2.0, 3.0}),
                          small(System::four_qubit_pure, MeasureKind::concurrence, {1.0, 2.0}, 100),
                          small(System::two_qubit_mixed, MeasureKind::concurrence, {1.0, 2.0})}) {
    const auto a = run_sweep(cfg);
    const auto b = run_sweep(cfg);
    const auto c = run_sweep_serial(cfg);
    CHECK(a == b);
    CHECK(a == c);
    auto threaded = cfg;
    threaded.threads = 3;
    CHECK(run_sweep(threaded) == c);
    CHECK(a.violations == 0);
  }
}

TEST_CASE("ensemble draws depend only on seed and index") {
  const auto cfg = small(System::tripartite_pure, MeasureKind::concurrence, {1.0});
  const auto x = ensemble_pure(cfg, 7);
  const auto y = ensemble_pure(cfg, 7);
  const auto z = ensemble_pure(cfg, 8);
  CHECK(x.amps == y.amps);
  CHECK(x.amps != z.amps);
  auto other = cfg;
  other.seed = 1;
  CHECK(ensemble_pure(other, 7).amps != x.amps);
}

TEST_CASE("random tripartite sweeps find no violations") {
  auto cfg = small(System::tripartite_pure, MeasureKind::concurrence, {0.5, 1.0, 1.5, 2.0}, 1000);
  const auto s = run_sweep(cfg);
  CHECK(s.tested == 4000);
  CHECK(s.hypothesis_hits > 0);
  CHECK(s.violations == 0);
  CHECK(s.min_margin >= -1e-9);
  CHECK(s.tightness_gain >= 0.0);

  auto neg = small(System::tripartite_pure, MeasureKind::negativity, {1.0, 2.0}, 300);
  CHECK(run_sweep(neg).violations == 0);
  auto crenoa = small(System::tripartite_pure, MeasureKind::crenoa, {2.0, 3.0, 4.0}, 500);
  const auto p = run_sweep(crenoa);
  CHECK(p.violations == 0);
  CHECK(p.tightness_gain >= 0.0);
}

TEST_CASE("mixed two-qubit orderings") {
  for (std::size_t rank : {1u, 2u, 3u, 4u}) {
    auto cfg = small(System::two_qubit_mixed, MeasureKind::concurrence, {0.5, 1.0, 2.0}, 200);
    cfg.rank = rank;
    const auto s = run_sweep(cfg);
    CHECK(s.violations == 0);
    CHECK(s.hypothesis_hits == s.tested);
  }
}

TEST_CASE("sweep configuration errors") {
  auto cfg = small(System::tripartite_pure, MeasureKind::concurrence, {2.5});
  CHECK(code_of([&] { run_sweep(cfg); }) == Errc::exponent_out_of_range);
  cfg.exponents = {1.0};
  cfg.base_exponent = 1.0;
  CHECK(code_of([&] { run_sweep(cfg); }) == Errc::exponent_out_of_range);
  cfg.base_exponent = 2.0;
  cfg.n_states = 0;
  CHECK(code_of([&] { run_sweep(cfg); }) == Errc::domain_error);
  cfg.n_states = 10;
  cfg.exponents.clear();
  CHECK(code_of([&] { run_sweep(cfg); }) == Errc::domain_error);
  cfg.exponents = {1.0};
  cfg.forced_h = 1.5;
  CHECK(code_of([&] { run_sweep(cfg); }) == Errc::domain_error);

  auto poly = small(System::tripartite_pure, MeasureKind::crenoa, {1.5});
  CHECK(code_of([&] { run_sweep(poly); }) == Errc::exponent_out_of_range);

  auto mixed = small(System::two_qubit_mixed, MeasureKind::negativity, {1.0});
  CHECK(code_of([&] { run_sweep(mixed); }) == Errc::unsupported_system_measure_pair);
  mixed.measure = MeasureKind::concurrence;
  mixed.rank = 5;
  CHECK(code_of([&] { run_sweep(mixed); }) == Errc::domain_error);

  const std::vector<qstate::PureState> wrong{qstate::ghz(4)};
  CHECK(code_of([&] { run_sweep_on(wrong, small(System::tripartite_pure, MeasureKind::concurrence, {1.0})); }) ==
        Errc::wrong_dimension);
}

TEST_CASE("system names and the thread cap") {
  for (auto s : {System::tripartite_pure, System::four_qubit_pure, System::two_qubit_mixed})
    CHECK(parse_system(to_string(s)) == s);
  CHECK_FALSE(parse_system("five_qubit").has_value());

  setenv("MONOLAB_THREADS", "2", 1);
  CHECK(thread_cap_from_env() == 2);
  setenv("MONOLAB_THREADS", "abc", 1);
  CHECK(thread_cap_from_env() == 0);
  setenv("MONOLAB_THREADS", "-3", 1);
  CHECK(thread_cap_from_env() == 0);
  unsetenv("MONOLAB_THREADS");
  CHECK(thread_cap_from_env() == 0);
}
