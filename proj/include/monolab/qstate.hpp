#pragma once

// Multi-qubit pure states and density matrices with subsystem bookkeeping.
//
// Ordering: subsystem 0 is the leftmost tensor factor and basis indices are
// big-endian in the subsystem digits, so |abc> on dims (2,2,2) is index 4a+2b+c.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "monolab/numkit.hpp"

namespace monolab::qstate {

using numkit::ComplexMatrix;
using numkit::cplx;

using Dims = std::vector<std::size_t>;
using Subsystems = std::vector<std::size_t>;

inline constexpr double kNormTol = 1e-10;
inline constexpr std::size_t kMaxDimension = 32;

struct PureState {
  std::vector<cplx> amps;
  Dims dims;
};

struct DensityMatrix {
  ComplexMatrix mat;
  Dims dims;
};

/// Five nonnegative Schmidt-form weights and one relative phase.
struct GenSchmidtParams {
  std::array<double, 5> lambda{};
  double phi = 0.0;
};

std::size_t total_dimension(std::span<const std::size_t> dims);

/// Validates dims and normalization; throws NotNormalized or DimensionMismatch.
PureState make_pure(std::vector<cplx> amps, Dims dims);
/// Validates Hermiticity, unit trace and positivity.
DensityMatrix make_density(ComplexMatrix mat, Dims dims);

DensityMatrix density_from_pure(const PureState& s);
double purity(const DensityMatrix& rho);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> subsystems);
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem);

/// Amplitudes arranged as a d_A x d_B matrix for the split part_a | rest.
/// Both index groups keep their original subsystem order.
ComplexMatrix bipartite_amplitudes(const PureState& s, std::span<const std::size_t> part_a);

/// The same operator viewed as d_A x d_B (dims {d_A, d_B}, index a*d_B + b).
DensityMatrix regroup(const DensityMatrix& rho, std::span<const std::size_t> part_a);

/// Returns the complement of part_a; throws BadSplit unless both sides are nonempty.
Subsystems complement(std::span<const std::size_t> part_a, std::size_t n_subsystems);

/// Applies a d_k x d_k unitary to subsystem k.
PureState apply_local(const PureState& s, std::size_t subsystem, const ComplexMatrix& u);

/// lambda0|000> + lambda1 e^{i phi}|100> + lambda2|101> + lambda3|110> + lambda4|111>,
/// with the B label read from the third ket slot and C from the second, so
/// that the A-B marginal carries lambda2 and the A-C marginal carries lambda3.
/// Occupies basis indices 0, 4, 6, 5, 7 for lambda0..lambda4.
PureState gen_schmidt_state(const GenSchmidtParams& p);
void validate(const GenSchmidtParams& p);

/// lambda0 = lambda1 = lambda2 = lambda4 = 1/sqrt(6), lambda3 = sqrt(3)/3.
GenSchmidtParams example1_params();
/// lambda0 = lambda4 = sqrt(2/9), lambda1 = lambda2 = 1/3, lambda3 = sqrt(1/3).
GenSchmidtParams example2_params();

PureState ghz(std::size_t n);
PureState w_state(std::size_t n);

/// Seedable random source. Both the engine (std::mt19937_64) and the seeding
/// (std::seed_seq over the 32-bit halves of seed and stream index) are fully
/// specified by the C++ standard; normals use Box-Muller on 53-bit uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform();  // [0, 1)
  double normal();
  cplx complex_normal();  // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Normalized complex-Gaussian vector (Haar measure on the unit sphere).
PureState haar_random_pure(const Dims& dims, Rng& rng);
PureState haar_random_pure(const Dims& dims, std::uint64_t seed);

/// Haar unitary from QR of a Ginibre matrix with the phase correction.
ComplexMatrix haar_random_unitary(std::size_t d, Rng& rng);

/// Induced-measure mixed state G G^dagger / tr with G a d x rank Ginibre matrix.
DensityMatrix random_mixed(const Dims& dims, std::size_t rank, Rng& rng);

/// Random pure state whose Schmidt rank across part_a | rest is at most rank:
/// the amplitude matrix is a product of complex-Gaussian d_A x r and r x d_B
/// factors, normalized.
PureState random_bounded_schmidt_rank(const Dims& dims, std::span<const std::size_t> part_a,
                                      std::size_t rank, Rng& rng);

}  // namespace monolab::qstate
