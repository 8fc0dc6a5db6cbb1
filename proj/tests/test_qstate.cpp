#include <doctest.h>

#include <cmath>
#include <numbers>

#include "monolab/errors.hpp"
#include "monolab/measures.hpp"
#include "monolab/qstate.hpp"
#include "oracles.hpp"

using namespace monolab;
using numkit::ComplexMatrix;
using numkit::cplx;
using qstate::Dims;

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

qstate::PureState bell() {
  const double s = std::numbers::sqrt2 / 2.0;
  return qstate::make_pure({s, 0.0, 0.0, s}, {2, 2});
}

}  // namespace

TEST_CASE("density_from_pure") {
  const auto zero = qstate::density_from_pure(qstate::make_pure({1.0, 0.0}, {2}));
  CHECK(numkit::max_abs_diff(zero.mat, ComplexMatrix::diagonal({1.0, 0.0})) == 0.0);

  const auto b = qstate::density_from_pure(bell());
  for (std::size_t r : {0u, 3u})
    for (std::size_t c : {0u, 3u}) CHECK(std::abs(b.mat(r, c) - 0.5) < 1e-15);
  CHECK(std::abs(b.mat(1, 1)) == 0.0);

  qstate::Rng rng(1);
  const auto h = qstate::haar_random_pure({2, 3, 2}, rng);
  CHECK(std::abs(qstate::purity(qstate::density_from_pure(h)) - 1.0) < 1e-12);
}

TEST_CASE("validation of states") {
  CHECK(code_of([] { qstate::make_pure({1.0, 1.0}, {2}); }) == Errc::not_normalized);
  CHECK(code_of([] { qstate::make_pure({1.0, 0.0, 0.0}, {2}); }) == Errc::dimension_mismatch);
  CHECK(code_of([] { qstate::make_density(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}, {2}); }) ==
        Errc::not_hermitian);
  CHECK(code_of([] { qstate::make_density(ComplexMatrix::diagonal({1.5, -0.5}), {2}); }) == Errc::not_psd);
  CHECK(code_of([] { qstate::make_density(ComplexMatrix::diagonal({0.5, 0.6}), {2}); }) == Errc::not_normalized);
}

TEST_CASE("partial_trace") {
  qstate::Rng rng(2);
  SUBCASE("product state") {
    const auto a = qstate::random_mixed({2}, 2, rng);
    const auto b = qstate::random_mixed({3}, 3, rng);
    const qstate::DensityMatrix ab{numkit::kron(a.mat, b.mat), {2, 3}};
    const std::size_t keep_a[] = {0};
    const std::size_t keep_b[] = {1};
    CHECK(numkit::max_abs_diff(qstate::partial_trace(ab, keep_a).mat, a.mat) < 1e-14);
    CHECK(numkit::max_abs_diff(qstate::partial_trace(ab, keep_b).mat, b.mat) < 1e-14);
  }
  SUBCASE("Bell state") {
    const std::size_t keep[] = {0};
    const auto r = qstate::partial_trace(qstate::density_from_pure(bell()), keep);
    CHECK(numkit::max_abs_diff(r.mat, ComplexMatrix::diagonal({0.5, 0.5})) < 1e-15);
    CHECK(r.dims == Dims{2});
  }
  SUBCASE("example-1 concurrence through the single-qubit marginal") {
    const auto rho = qstate::density_from_pure(qstate::gen_schmidt_state(qstate::example1_params()));
    const std::size_t keep[] = {0};
    const auto ra = qstate::partial_trace(rho, keep);
    const double c = std::sqrt(2.0 * (1.0 - qstate::purity(ra)));
    CHECK(std::abs(c - 2.0 / 3.0) < 1e-12);
  }
  SUBCASE("agrees with the brute-force oracle") {
    const Dims dims{2, 3, 2, 2};
    const auto rho = qstate::random_mixed(dims, 3, rng);
    const std::vector<std::vector<std::size_t>> keeps{{0}, {1}, {0, 2}, {1, 3}, {0, 1, 3}, {2, 0}};
    for (const auto& keep : keeps) {
      std::vector<bool> mask(dims.size(), false);
      for (auto k : keep) mask[k] = true;
      const auto got = qstate::partial_trace(rho, keep);
      const auto want = oracle::partial_trace(rho.mat, dims, mask);
      CHECK(numkit::max_abs_diff(got.mat, want) < 1e-14);
      CHECK(std::abs(got.mat.trace() - 1.0) < 1e-12);
      CHECK(numkit::is_hermitian(got.mat));
      CHECK(numkit::herm_eigvals(got.mat).back() > -1e-12);
    }
  }
  SUBCASE("errors") {
    const auto rho = qstate::density_from_pure(bell());
    const std::size_t bad[] = {2};
    CHECK(code_of([&] { qstate::partial_trace(rho, bad); }) == Errc::bad_subsystem_index);
    CHECK(code_of([&] { qstate::partial_trace(rho, std::span<const std::size_t>{}); }) ==
          Errc::bad_subsystem_index);
  }
}

TEST_CASE("partial_transpose") {
  qstate::Rng rng(4);
  const qstate::DensityMatrix diag{ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4}), {2, 2}};
  CHECK(qstate::partial_transpose(diag, 0) == diag.mat);

  const auto pt = qstate::partial_transpose(qstate::density_from_pure(bell()), 0);
  const auto ev = numkit::herm_eigvals(pt);
  CHECK(std::abs(ev[0] - 0.5) < 1e-14);
  CHECK(std::abs(ev[2] - 0.5) < 1e-14);
  CHECK(std::abs(ev[3] + 0.5) < 1e-14);

  const Dims dims{2, 3, 2};
  const auto rho = qstate::random_mixed(dims, 4, rng);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto once = qstate::partial_transpose(rho, k);
    CHECK(numkit::max_abs_diff(once, oracle::partial_transpose(rho.mat, dims, k)) == 0.0);
    CHECK(qstate::partial_transpose(qstate::DensityMatrix{once, dims}, k) == rho.mat);
    CHECK(std::abs(once.trace() - rho.mat.trace()) < 1e-15);
  }
  CHECK(code_of([&] { qstate::partial_transpose(rho, 3); }) == Errc::bad_subsystem_index);
}

TEST_CASE("generalized Schmidt state") {
  qstate::GenSchmidtParams only0{{1.0, 0.0, 0.0, 0.0, 0.0}, 0.0};
  const auto s0 = qstate::gen_schmidt_state(only0);
  CHECK(s0.amps[0] == cplx{1.0, 0.0});
  for (std::size_t k = 1; k < 8; ++k) CHECK(s0.amps[k] == cplx{0.0, 0.0});

  const auto s1 = qstate::gen_schmidt_state(qstate::example1_params());
  double n1 = 0.0;
  for (auto a : s1.amps) n1 += std::norm(a);
  CHECK(std::abs(n1 - 1.0) < 1e-12);
  const auto s2 = qstate::gen_schmidt_state(qstate::example2_params());
  double n2 = 0.0;
  for (auto a : s2.amps) n2 += std::norm(a);
  CHECK(std::abs(n2 - 1.0) < 1e-12);
  // Support on |000>, |100>, |101>, |110>, |111> only.
  for (std::size_t k : {1u, 2u, 3u}) CHECK(s2.amps[k] == cplx{0.0, 0.0});

  CHECK(code_of([] { qstate::gen_schmidt_state({{0.5, 0.5, 0.5, 0.5, 0.5}, 0.0}); }) == Errc::not_normalized);
  CHECK(code_of([] { qstate::gen_schmidt_state({{-1.0, 0.0, 0.0, 0.0, 0.0}, 0.0}); }) == Errc::negative_input);
}

TEST_CASE("generalized Schmidt concurrences do not depend on the phase") {
  qstate::Rng rng(99);
  const std::size_t a[] = {0};
  const std::size_t ab[] = {0, 1};
  const std::size_t ac[] = {0, 2};
  auto triple = [&](const qstate::GenSchmidtParams& p) {
    const auto psi = qstate::gen_schmidt_state(p);
    const auto rho = qstate::density_from_pure(psi);
    return std::array<double, 3>{measures::concurrence_pure(psi, a),
                                 measures::concurrence_mixed_2q(qstate::partial_trace(rho, ab)),
                                 measures::concurrence_mixed_2q(qstate::partial_trace(rho, ac))};
  };
  for (int rep = 0; rep < 100; ++rep) {
    qstate::GenSchmidtParams p;
    double norm = 0.0;
    for (auto& l : p.lambda) {
      l = rng.uniform();
      norm += l * l;
    }
    for (auto& l : p.lambda) l /= std::sqrt(norm);
    p.phi = 2.0 * std::numbers::pi * rng.uniform();
    const auto with_phase = triple(p);
    p.phi = 0.0;
    const auto without = triple(p);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(with_phase[k] - without[k]) <= 1e-9);
  }
}

TEST_CASE("GHZ and W states") {
  const auto g = qstate::ghz(3);
  CHECK(g.dims == Dims{2, 2, 2});
  CHECK(std::abs(g.amps[0] - std::numbers::sqrt2 / 2.0) < 1e-15);
  CHECK(std::abs(g.amps[7] - std::numbers::sqrt2 / 2.0) < 1e-15);
  const auto w = qstate::w_state(4);
  CHECK(std::abs(w.amps[1] - 0.5) < 1e-15);
  CHECK(std::abs(w.amps[8] - 0.5) < 1e-15);
  CHECK(code_of([] { qstate::ghz(1); }) == Errc::wrong_dimension);
  CHECK(code_of([] { qstate::ghz(6); }) == Errc::dimension_too_large);
}

TEST_CASE("random generators") {
  SUBCASE("seeded reproducibility") {
    const auto a = qstate::haar_random_pure({2, 2, 2}, 42);
    const auto b = qstate::haar_random_pure({2, 2, 2}, 42);
    const auto c = qstate::haar_random_pure({2, 2, 2}, 43);
    CHECK(a.amps == b.amps);
    CHECK(a.amps != c.amps);
    qstate::Rng s0(7, 0), s1(7, 1);
    CHECK(s0.uniform() != s1.uniform());
  }
  SUBCASE("uniforms and normals") {
    qstate::Rng rng(8);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      CHECK((u >= 0.0 && u < 1.0));
      const double z = rng.normal();
      sum += z;
      sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
  }
  SUBCASE("Haar unitary is unitary") {
    qstate::Rng rng(9);
    const auto u = qstate::haar_random_unitary(8, rng);
    CHECK(numkit::max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(8)) < 1e-12);
  }
  SUBCASE("random mixed states") {
    qstate::Rng rng(10);
    for (std::size_t rank : {1u, 2u, 3u, 4u}) {
      const auto rho = qstate::random_mixed({2, 2}, rank, rng);
      CHECK(std::abs(rho.mat.trace() - 1.0) < 1e-12);
      const auto ev = numkit::herm_eigvals(rho.mat);
      std::size_t support = 0;
      for (double x : ev) {
        CHECK(x > -1e-12);
        if (x > 1e-12) ++support;
      }
      CHECK(support == rank);
    }
  }
  SUBCASE("bounded Schmidt rank") {
    qstate::Rng rng(12);
    const std::size_t cut[] = {0, 1};
    const auto s = qstate::random_bounded_schmidt_rank({2, 2, 2, 2}, cut, 2, rng);
    const auto sv = measures::schmidt_coefficients(s, cut);
    CHECK(sv[2] < 1e-12);
    CHECK(sv[1] > 1e-6);
    double norm = 0.0;
    for (auto a : s.amps) norm += std::norm(a);
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
}

TEST_CASE("bipartite_amplitudes, regroup and apply_local") {
  qstate::Rng rng(13);
  const auto s = qstate::haar_random_pure({2, 3, 2}, rng);
  const std::size_t part[] = {2, 0};
  const auto m = qstate::bipartite_amplitudes(s, part);
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 3);
  // Row index reads subsystems (0, 2), column index subsystem 1.
  CHECK(m(1 * 2 + 1, 2) == s.amps[1 * 6 + 2 * 2 + 1]);

  const auto rho = qstate::density_from_pure(s);
  const auto g = qstate::regroup(rho, part);
  CHECK(g.dims == Dims{4, 3});
  CHECK(std::abs(g.mat.trace() - 1.0) < 1e-12);

  // A local unitary leaves the marginal spectrum unchanged.
  const auto u = qstate::haar_random_unitary(3, rng);
  const auto t = qstate::apply_local(s, 1, u);
  const std::size_t keep[] = {0};
  const auto before = numkit::herm_eigvals(qstate::partial_trace(rho, keep).mat);
  const auto after = numkit::herm_eigvals(qstate::partial_trace(qstate::density_from_pure(t), keep).mat);
  for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(before[k] - after[k]) < 1e-12);

  CHECK(code_of([&] {
          const std::size_t all[] = {0, 1, 2};
          qstate::bipartite_amplitudes(s, all);
        }) == Errc::bad_split);
}
