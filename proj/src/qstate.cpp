#include "monolab/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "monolab/errors.hpp"

namespace monolab::qstate {

namespace {

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

void validate_dims(const Dims& dims) {
  if (dims.empty()) throw Error(Errc::dimension_mismatch, "no subsystems");
  for (std::size_t d : dims)
    if (d < 2) throw Error(Errc::dimension_mismatch, "subsystem dimension below 2");
}

// Sorted, duplicate-free, in-range subsystem list.
Subsystems checked_subsystems(std::span<const std::size_t> idx, std::size_t n) {
  Subsystems out(idx.begin(), idx.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw Error(Errc::bad_subsystem_index, "duplicate subsystem index");
  }
  for (std::size_t k : out)
    if (k >= n) {
      throw Error(Errc::bad_subsystem_index,
                  "index " + std::to_string(k) + " with " + std::to_string(n) + " subsystems");
    }
  return out;
}

// full_index[a][b]: full basis index whose digits on `group_a` spell a and on
// `group_b` spell b, each group read big-endian in its own order.
std::vector<std::vector<std::size_t>> compose_table(const Dims& dims, const Subsystems& group_a,
                                                    const Subsystems& group_b) {
  const auto strides = strides_of(dims);
  auto enumerate = [&](const Subsystems& group) {
    std::size_t count = 1;
    for (auto k : group) count *= dims[k];
    std::vector<std::size_t> offsets(count, 0);
    for (std::size_t x = 0; x < count; ++x) {
      std::size_t rem = x;
      std::size_t off = 0;
      for (std::size_t g = group.size(); g-- > 0;) {
        const std::size_t k = group[g];
        off += (rem % dims[k]) * strides[k];
        rem /= dims[k];
      }
      offsets[x] = off;
    }
    return offsets;
  };
  const auto oa = enumerate(group_a);
  const auto ob = enumerate(group_b);
  std::vector<std::vector<std::size_t>> table(oa.size(), std::vector<std::size_t>(ob.size()));
  for (std::size_t a = 0; a < oa.size(); ++a)
    for (std::size_t b = 0; b < ob.size(); ++b) table[a][b] = oa[a] + ob[b];
  return table;
}

Subsystems all_except(const Subsystems& part, std::size_t n) {
  Subsystems rest;
  for (std::size_t k = 0; k < n; ++k)
    if (!std::binary_search(part.begin(), part.end(), k)) rest.push_back(k);
  return rest;
}

}  // namespace

std::size_t total_dimension(std::span<const std::size_t> dims) {
  std::size_t d = 1;
  for (auto x : dims) d *= x;
  return d;
}

PureState make_pure(std::vector<cplx> amps, Dims dims) {
  validate_dims(dims);
  if (total_dimension(dims) != amps.size()) {
    throw Error(Errc::dimension_mismatch, "amplitude count does not match dims");
  }
  double norm = 0.0;
  for (const auto& a : amps) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(Errc::not_normalized, "sum |amp|^2 = " + std::to_string(norm));
  }
  return PureState{std::move(amps), std::move(dims)};
}

DensityMatrix make_density(ComplexMatrix mat, Dims dims) {
  validate_dims(dims);
  if (!mat.is_square()) throw Error(Errc::non_square, "density matrix must be square");
  if (mat.rows() != total_dimension(dims)) {
    throw Error(Errc::dimension_mismatch, "matrix size does not match dims");
  }
  if (!numkit::is_hermitian(mat)) throw Error(Errc::not_hermitian, "density matrix");
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > kNormTol) {
    throw Error(Errc::not_normalized, "trace = " + std::to_string(tr));
  }
  numkit::herm_eigvals(mat, /*clamp_psd=*/true);
  return DensityMatrix{std::move(mat), std::move(dims)};
}

DensityMatrix density_from_pure(const PureState& s) {
  const std::size_t d = s.amps.size();
  ComplexMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = s.amps[r] * std::conj(s.amps[c]);
  return DensityMatrix{std::move(m), s.dims};
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const auto& z : rho.mat.entries()) s += std::norm(z);
  return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) throw Error(Errc::bad_subsystem_index, "nothing to keep");
  const auto kept = checked_subsystems(keep, rho.dims.size());
  const auto traced = all_except(kept, rho.dims.size());
  const auto table = compose_table(rho.dims, kept, traced);
  const std::size_t dk = table.size();
  const std::size_t dt = table.front().size();

  ComplexMatrix out(dk, dk);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dk; ++b) {
      cplx s = 0.0;
      for (std::size_t t = 0; t < dt; ++t) s += rho.mat(table[a][t], table[b][t]);
      out(a, b) = s;
    }
  Dims dims;
  for (auto k : kept) dims.push_back(rho.dims[k]);
  return DensityMatrix{std::move(out), std::move(dims)};
}

ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                std::span<const std::size_t> subsystems) {
  const auto part = checked_subsystems(subsystems, rho.dims.size());
  const auto rest = all_except(part, rho.dims.size());
  const std::size_t d = rho.mat.rows();
  if (rest.empty()) return rho.mat.transpose();
  const auto table = compose_table(rho.dims, part, rest);
  const std::size_t dp = table.size();
  const std::size_t dr = table.front().size();

  ComplexMatrix out(d, d);
  for (std::size_t a = 0; a < dp; ++a)
    for (std::size_t x = 0; x < dr; ++x)
      for (std::size_t b = 0; b < dp; ++b)
        for (std::size_t y = 0; y < dr; ++y) out(table[a][x], table[b][y]) = rho.mat(table[b][x], table[a][y]);
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  const std::size_t one[] = {subsystem};
  return partial_transpose(rho, one);
}

Subsystems complement(std::span<const std::size_t> part_a, std::size_t n_subsystems) {
  const auto part = checked_subsystems(part_a, n_subsystems);
  auto rest = all_except(part, n_subsystems);
  if (part.empty() || rest.empty()) throw Error(Errc::bad_split, "split must be nontrivial");
  return rest;
}

ComplexMatrix bipartite_amplitudes(const PureState& s, std::span<const std::size_t> part_a) {
  Subsystems part;
  Subsystems rest;
  try {
    part = checked_subsystems(part_a, s.dims.size());
    rest = complement(part, s.dims.size());
  } catch (const Error& e) {
    throw Error(Errc::bad_split, e.what());
  }
  const auto table = compose_table(s.dims, part, rest);
  ComplexMatrix m(table.size(), table.front().size());
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) m(a, b) = s.amps[table[a][b]];
  return m;
}

DensityMatrix regroup(const DensityMatrix& rho, std::span<const std::size_t> part_a) {
  Subsystems part;
  Subsystems rest;
  try {
    part = checked_subsystems(part_a, rho.dims.size());
    rest = complement(part, rho.dims.size());
  } catch (const Error& e) {
    throw Error(Errc::bad_split, e.what());
  }
  const auto table = compose_table(rho.dims, part, rest);
  const std::size_t da = table.size();
  const std::size_t db = table.front().size();
  ComplexMatrix out(da * db, da * db);
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t c = 0; c < da; ++c)
        for (std::size_t e = 0; e < db; ++e) out(a * db + b, c * db + e) = rho.mat(table[a][b], table[c][e]);
  return DensityMatrix{std::move(out), Dims{da, db}};
}

PureState apply_local(const PureState& s, std::size_t subsystem, const ComplexMatrix& u) {
  if (subsystem >= s.dims.size()) throw Error(Errc::bad_subsystem_index, "apply_local");
  const std::size_t dk = s.dims[subsystem];
  if (u.rows() != dk || u.cols() != dk) throw Error(Errc::dimension_mismatch, "apply_local");
  const Subsystems one = {subsystem};
  const auto rest = all_except(one, s.dims.size());
  PureState out = s;
  if (rest.empty()) {
    for (std::size_t x = 0; x < dk; ++x) {
      cplx acc = 0.0;
      for (std::size_t y = 0; y < dk; ++y) acc += u(x, y) * s.amps[y];
      out.amps[x] = acc;
    }
    return out;
  }
  const auto table = compose_table(s.dims, one, rest);
  for (std::size_t r = 0; r < table.front().size(); ++r)
    for (std::size_t x = 0; x < dk; ++x) {
      cplx acc = 0.0;
      for (std::size_t y = 0; y < dk; ++y) acc += u(x, y) * s.amps[table[y][r]];
      out.amps[table[x][r]] = acc;
    }
  return out;
}

void validate(const GenSchmidtParams& p) {
  double norm = 0.0;
  for (double l : p.lambda) {
    if (l < 0.0) throw Error(Errc::negative_input, "lambda must be nonnegative");
    norm += l * l;
  }
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(Errc::not_normalized, "sum lambda^2 = " + std::to_string(norm));
  }
}

PureState gen_schmidt_state(const GenSchmidtParams& p) {
  validate(p);
  std::vector<cplx> amps(8, cplx{0.0, 0.0});
  amps[0] = p.lambda[0];
  amps[4] = p.lambda[1] * std::polar(1.0, p.phi);
  amps[6] = p.lambda[2];
  amps[5] = p.lambda[3];
  amps[7] = p.lambda[4];
  return PureState{std::move(amps), Dims{2, 2, 2}};
}

GenSchmidtParams example1_params() {
  const double a = 1.0 / std::sqrt(6.0);
  return GenSchmidtParams{{a, a, a, std::sqrt(3.0) / 3.0, a}, 0.0};
}

GenSchmidtParams example2_params() {
  const double a = std::sqrt(2.0 / 9.0);
  return GenSchmidtParams{{a, 1.0 / 3.0, 1.0 / 3.0, std::sqrt(1.0 / 3.0), a}, 0.0};
}

namespace {
void check_qubit_count(std::size_t n) {
  if (n < 2) throw Error(Errc::wrong_dimension, "need at least 2 qubits");
  if (n > 5) throw Error(Errc::dimension_too_large, "at most 5 qubits");
}
}  // namespace

PureState ghz(std::size_t n) {
  check_qubit_count(n);
  const std::size_t d = std::size_t{1} << n;
  std::vector<cplx> amps(d, cplx{0.0, 0.0});
  amps.front() = std::numbers::sqrt2 / 2.0;
  amps.back() = std::numbers::sqrt2 / 2.0;
  return PureState{std::move(amps), Dims(n, 2)};
}

PureState w_state(std::size_t n) {
  check_qubit_count(n);
  const std::size_t d = std::size_t{1} << n;
  std::vector<cplx> amps(d, cplx{0.0, 0.0});
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) amps[std::size_t{1} << k] = a;
  return PureState{std::move(amps), Dims(n, 2)};
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx{re, im} / std::numbers::sqrt2;
}

PureState haar_random_pure(const Dims& dims, Rng& rng) {
  validate_dims(dims);
  const std::size_t d = total_dimension(dims);
  if (d > kMaxDimension) throw Error(Errc::dimension_too_large, "dimension " + std::to_string(d));
  std::vector<cplx> amps(d);
  double norm = 0.0;
  for (auto& a : amps) {
    a = rng.complex_normal();
    norm += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= inv;
  return PureState{std::move(amps), dims};
}

PureState haar_random_pure(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_pure(dims, rng);
}

ComplexMatrix haar_random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix q(d, d);
  for (auto& z : q.entries()) z = rng.complex_normal();
  // Modified Gram-Schmidt; the implied R has a positive real diagonal.
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * q(i, j);
      for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(q(i, j));
    const double inv = 1.0 / std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) q(i, j) *= inv;
  }
  return q;
}

DensityMatrix random_mixed(const Dims& dims, std::size_t rank, Rng& rng) {
  if (rank < 1) throw Error(Errc::wrong_dimension, "rank must be at least 1");
  if (rank == 1) return density_from_pure(haar_random_pure(dims, rng));
  validate_dims(dims);
  const std::size_t d = total_dimension(dims);
  if (d > kMaxDimension) throw Error(Errc::dimension_too_large, "dimension " + std::to_string(d));
  // Ginibre G (d x rank); G G^dagger / tr is the induced measure.
  ComplexMatrix g(d, rank);
  for (auto& z : g.entries()) z = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  for (auto& z : rho.entries()) z /= tr;
  for (std::size_t i = 0; i < d; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix{std::move(rho), dims};
}

PureState random_bounded_schmidt_rank(const Dims& dims, std::span<const std::size_t> part_a,
                                      std::size_t rank, Rng& rng) {
  validate_dims(dims);
  const std::size_t d = total_dimension(dims);
  if (d > kMaxDimension) throw Error(Errc::dimension_too_large, "dimension " + std::to_string(d));
  if (rank < 1) throw Error(Errc::wrong_dimension, "rank must be at least 1");
  const auto part = checked_subsystems(part_a, dims.size());
  const auto rest = complement(part, dims.size());
  const auto table = compose_table(dims, part, rest);
  ComplexMatrix left(table.size(), rank);
  ComplexMatrix right(rank, table.front().size());
  for (auto& z : left.entries()) z = rng.complex_normal();
  for (auto& z : right.entries()) z = rng.complex_normal();
  const ComplexMatrix m = left * right;
  const double inv = 1.0 / m.frobenius_norm();
  std::vector<cplx> amps(d);
  for (std::size_t a = 0; a < m.rows(); ++a)
    for (std::size_t b = 0; b < m.cols(); ++b) amps[table[a][b]] = m(a, b) * inv;
  return PureState{std::move(amps), dims};
}

}  // namespace monolab::qstate
