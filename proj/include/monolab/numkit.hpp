#pragma once

// Dense complex linear algebra for the small matrices that appear in
// multi-qubit entanglement computations (at most 64x64).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace monolab::numkit {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kReconstructTol = 1e-8;
inline constexpr double kEqualTol = 1e-9;
/// Eigenvalues at or below this magnitude are exact zeros for psd_sqrt.
inline constexpr double kRankTol = 1e-14;
inline constexpr int kMaxJacobiSweeps = 60;

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return data_; }
  std::span<cplx> entries() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Largest entrywise |a - b|. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |m - m^dagger|; square input only.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j pairs with values[j]
};

/// Cyclic complex Jacobi diagonalization. Throws NotHermitian / NoConvergence.
HermitianEigen herm_eig(const ComplexMatrix& m);

/// Descending eigenvalues. With clamp_psd, values in [-kPsdTol, 0) become 0
/// and anything below -kPsdTol raises NotPSD.
std::vector<double> herm_eigvals(const ComplexMatrix& m, bool clamp_psd = false);

/// Principal square root of a Hermitian PSD matrix.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Singular values (descending, min(rows, cols) of them), read off the
/// Hermitian dilation [[0, m], [m^dagger, 0]]. Small singular values keep
/// absolute accuracy of order eps * |m|.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values. Hermitian input takes the eigenvalue path.
double trace_norm(const ComplexMatrix& m);
double trace_norm_hermitian(const ComplexMatrix& m);
double trace_norm_svd(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli sigma_y.
ComplexMatrix sigma_y();

}  // namespace monolab::numkit
