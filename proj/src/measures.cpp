#include "monolab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monolab/errors.hpp"

namespace monolab::measures {

using numkit::ComplexMatrix;
using numkit::cplx;

namespace {

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.mat.rows() != 4 || rho.mat.cols() != 4 || rho.dims != qstate::Dims{2, 2}) {
    throw Error(Errc::wrong_dimension, "expected a two-qubit state");
  }
}

const ComplexMatrix& spin_flip_kernel() {
  static const ComplexMatrix yy = numkit::kron(numkit::sigma_y(), numkit::sigma_y());
  return yy;
}

double pure_value(MeasureKind kind, const PureState& s, std::span<const std::size_t> part_a) {
  switch (kind) {
    case MeasureKind::concurrence:
    case MeasureKind::concurrence_assist:
      return concurrence_pure(s, part_a);
    case MeasureKind::negativity:
    case MeasureKind::cren:
    case MeasureKind::crenoa:
      return negativity_pure(s, part_a);
  }
  return 0.0;
}

double two_qubit_value(MeasureKind kind, const DensityMatrix& rho) {
  switch (kind) {
    case MeasureKind::concurrence: return concurrence_mixed_2q(rho);
    case MeasureKind::cren: return cren_2q(rho);
    case MeasureKind::crenoa: return crenoa_2q(rho);
    case MeasureKind::concurrence_assist: return concurrence_assist_2q(rho);
    case MeasureKind::negativity: {
      const std::size_t a[] = {0};
      return negativity(rho, a);
    }
  }
  return 0.0;
}

// Columns of the leading eigenvectors of a reduced state, plus its support size.
struct Support {
  ComplexMatrix basis;  // d x 2
  std::size_t rank = 0;
};

Support leading_support(const ComplexMatrix& reduced) {
  const auto eig = numkit::herm_eig(reduced);
  Support out;
  for (double x : eig.values)
    if (x > kSupportTol) ++out.rank;
  const std::size_t d = reduced.rows();
  out.basis = ComplexMatrix(d, 2);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < 2 && j < d; ++j) out.basis(r, j) = eig.vectors(r, j);
  return out;
}

}  // namespace

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::concurrence: return "concurrence";
    case MeasureKind::negativity: return "negativity";
    case MeasureKind::cren: return "cren";
    case MeasureKind::crenoa: return "crenoa";
    case MeasureKind::concurrence_assist: return "concurrence_assist";
  }
  return "unknown";
}

std::optional<MeasureKind> parse_measure(std::string_view name) noexcept {
  for (auto k : {MeasureKind::concurrence, MeasureKind::negativity, MeasureKind::cren,
                 MeasureKind::crenoa, MeasureKind::concurrence_assist})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::monogamy ? "monogamy" : "polygamy";
}

bool MeasureProfile::admits(double base_exponent) const noexcept {
  return base_exponent >= exponent_lo && base_exponent <= exponent_hi;
}

MeasureProfile profile_for(MeasureKind kind) noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case MeasureKind::concurrence:
    case MeasureKind::cren:
    case MeasureKind::negativity:
      return {kind, Mode::monogamy, 2.0, inf};
    case MeasureKind::crenoa:
    case MeasureKind::concurrence_assist:
      return {kind, Mode::polygamy, 0.0, 2.0};
  }
  return {kind, Mode::monogamy, 2.0, inf};
}

std::vector<double> schmidt_coefficients(const PureState& s, std::span<const std::size_t> part_a) {
  return numkit::singular_values(qstate::bipartite_amplitudes(s, part_a));
}

double concurrence_pure(const PureState& s, std::span<const std::size_t> part_a) {
  const auto sv = schmidt_coefficients(s, part_a);
  double pairs = 0.0;
  for (std::size_t i = 0; i < sv.size(); ++i)
    for (std::size_t j = i + 1; j < sv.size(); ++j) pairs += sv[i] * sv[i] * sv[j] * sv[j];
  return 2.0 * std::sqrt(pairs);
}

double negativity_pure(const PureState& s, std::span<const std::size_t> part_a) {
  const auto sv = schmidt_coefficients(s, part_a);
  // (sum s_i)^2 - 1 = 2 sum_{i<j} s_i s_j for normalized states.
  double cross = 0.0;
  for (std::size_t i = 0; i < sv.size(); ++i)
    for (std::size_t j = i + 1; j < sv.size(); ++j) cross += sv[i] * sv[j];
  return 2.0 * cross;
}

double negativity(const DensityMatrix& rho, std::span<const std::size_t> part_a) {
  qstate::complement(part_a, rho.dims.size());
  const auto pt = qstate::partial_transpose(rho, part_a);
  // ||pt||_1 - 1 = 2 * sum of |negative eigenvalues| for unit trace.
  double neg = 0.0;
  for (double l : numkit::herm_eigvals(pt))
    if (l < -numkit::kRankTol) neg -= l;
  return 2.0 * neg;
}

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  const auto& yy = spin_flip_kernel();
  return yy * rho.conjugate() * yy;
}

WoottersSpectrum wootters_spectrum(const DensityMatrix& rho) {
  require_two_qubit(rho);
  const ComplexMatrix root = numkit::psd_sqrt(rho.mat);
  // sqrt(rho~) = YY sqrt(rho)^* YY and the trailing YY is unitary, so the
  // singular values of sqrt(rho) YY sqrt(rho)^* match those of sqrt(rho) sqrt(rho~).
  const ComplexMatrix product = root * spin_flip_kernel() * root.conjugate();
  const auto sv = numkit::singular_values(product);
  WoottersSpectrum out;
  std::copy_n(sv.begin(), 4, out.mu.begin());
  return out;
}

double concurrence_mixed_2q(const DensityMatrix& rho) {
  const auto [mu] = wootters_spectrum(rho);
  return std::max(mu[0] - mu[1] - mu[2] - mu[3], 0.0);
}

double concurrence_assist_2q(const DensityMatrix& rho) {
  const auto [mu] = wootters_spectrum(rho);
  return mu[0] + mu[1] + mu[2] + mu[3];
}

double cren_2q(const DensityMatrix& rho) { return concurrence_mixed_2q(rho); }

double crenoa_2q(const DensityMatrix& rho) { return concurrence_assist_2q(rho); }

double evaluate(MeasureKind kind, const PureState& s, std::span<const std::size_t> part_a) {
  return pure_value(kind, s, part_a);
}

double evaluate(MeasureKind kind, const DensityMatrix& rho, std::span<const std::size_t> part_a) {
  const auto rest = qstate::complement(part_a, rho.dims.size());
  if (rho.dims.size() == 2 && rho.dims[0] == 2 && rho.dims[1] == 2) {
    return two_qubit_value(kind, rho);
  }
  if (kind == MeasureKind::negativity) return negativity(rho, part_a);

  const auto eig = numkit::herm_eig(rho.mat);
  if (eig.values.size() < 2 || eig.values[1] <= kSupportTol) {
    PureState top{std::vector<cplx>(rho.mat.rows()), rho.dims};
    for (std::size_t r = 0; r < rho.mat.rows(); ++r) top.amps[r] = eig.vectors(r, 0);
    return pure_value(kind, top, part_a);
  }

  // Map onto two qubits through the local supports when both are small.
  const auto grouped = qstate::regroup(rho, part_a);
  const std::size_t a_side[] = {0};
  const std::size_t b_side[] = {1};
  const auto sa = leading_support(qstate::partial_trace(grouped, a_side).mat);
  const auto sb = leading_support(qstate::partial_trace(grouped, b_side).mat);
  if (sa.rank <= 1 || sb.rank <= 1) return 0.0;
  if (sa.rank > 2 || sb.rank > 2) {
    throw Error(Errc::unsupported,
                std::string(to_string(kind)) + " of a mixed state with local supports " +
                    std::to_string(sa.rank) + "x" + std::to_string(sb.rank));
  }
  const ComplexMatrix iso = numkit::kron(sa.basis, sb.basis);
  ComplexMatrix compressed = iso.adjoint() * grouped.mat * iso;
  const double tr = compressed.trace().real();
  compressed *= cplx{1.0 / tr, 0.0};
  for (std::size_t r = 0; r < 4; ++r) {
    compressed(r, r) = compressed(r, r).real();
    for (std::size_t c = r + 1; c < 4; ++c) compressed(c, r) = std::conj(compressed(r, c));
  }
  return two_qubit_value(kind, DensityMatrix{std::move(compressed), qstate::Dims{2, 2}});
}

GsClosedForms gs_closed_forms(const GenSchmidtParams& p) {
  qstate::validate(p);
  const auto& l = p.lambda;
  GsClosedForms out;
  out.c_a_bc = 2.0 * l[0] * std::sqrt(l[2] * l[2] + l[3] * l[3] + l[4] * l[4]);
  out.c_ab = 2.0 * l[0] * l[2];
  out.c_ac = 2.0 * l[0] * l[3];
  out.na_a_bc = out.c_a_bc;
  out.na_ab = 2.0 * l[0] * std::sqrt(l[2] * l[2] + l[4] * l[4]);
  out.na_ac = 2.0 * l[0] * std::sqrt(l[3] * l[3] + l[4] * l[4]);
  return out;
}

}  // namespace monolab::measures
