#include "monolab/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "monolab/errors.hpp"

namespace monolab::numkit {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (!m.is_square()) {
    throw Error(Errc::non_square, std::string(who) + ": matrix is " + std::to_string(m.rows()) +
                                      "x" + std::to_string(m.cols()));
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::dimension_mismatch, "matrix shapes differ");
  }
}

// One Jacobi rotation on the (p, q) plane, zeroing a(p, q).
// U = [[c, s], [-s e^{-i theta}, c e^{-i theta}]] and a <- U^dagger a U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  const cplx phase = apq / mag;  // e^{i theta}
  const cplx phase_c = std::conj(phase);
  const double zeta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - s * phase_c * akq;
    a(k, q) = s * akp + c * phase_c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - s * phase_c * vkq;
    v(k, q) = s * vkp + c * phase_c * vkq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(Errc::dimension_mismatch, "entry count does not match rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(Errc::dimension_mismatch, "ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

cplx ComplexMatrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "inner dimensions differ");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.is_square() && hermiticity_defect(m) <= tol;
}

HermitianEigen herm_eig(const ComplexMatrix& m) {
  require_square(m, "herm_eig");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol) {
    throw Error(Errc::not_hermitian, "max |M - M^dagger| = " + std::to_string(defect));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = (m + m.adjoint()) * cplx{0.5, 0.0};
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = a.frobenius_norm();
  const double tiny = std::max(std::numeric_limits<double>::epsilon() * 1e-3 * scale,
                               std::numeric_limits<double>::min());
  bool converged = n <= 1;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > tiny) {
          rotate(a, v, p, q);
          rotated = true;
        }
    converged = !rotated;
  }
  if (!converged) {
    throw Error(Errc::no_convergence,
                "Jacobi exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

std::vector<double> herm_eigvals(const ComplexMatrix& m, bool clamp_psd) {
  auto values = herm_eig(m).values;
  if (clamp_psd) {
    for (auto& x : values) {
      if (x < -kPsdTol) {
        throw Error(Errc::not_psd, "eigenvalue " + std::to_string(x) + " below tolerance");
      }
      if (x < 0.0) x = 0.0;
    }
  }
  return values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const auto eig = herm_eig(m);
  const std::size_t n = m.rows();
  std::vector<double> roots(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = eig.values[j];
    if (x < -kPsdTol) {
      throw Error(Errc::not_psd, "eigenvalue " + std::to_string(x) + " below tolerance");
    }
    roots[j] = x <= kRankTol ? 0.0 : std::sqrt(x);
  }
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (roots[j] == 0.0) continue;
        s += eig.vectors(r, j) * roots[j] * std::conj(eig.vectors(c, j));
      }
      out(r, c) = s;
      out(c, r) = std::conj(s);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  ComplexMatrix dilation(r + c, r + c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      dilation(i, r + j) = m(i, j);
      dilation(r + j, i) = std::conj(m(i, j));
    }
  auto values = herm_eig(dilation).values;
  values.resize(std::min(r, c));
  for (auto& x : values) x = std::max(x, 0.0);
  return values;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  double s = 0.0;
  for (double x : herm_eigvals(m)) s += std::abs(x);
  return s;
}

double trace_norm_svd(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  double s = 0.0;
  for (double x : singular_values(m)) s += x;
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  require_square(m, "trace_norm");
  return is_hermitian(m) ? trace_norm_hermitian(m) : trace_norm_svd(m);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix sigma_y() {
  return ComplexMatrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}};
}

}  // namespace monolab::numkit
