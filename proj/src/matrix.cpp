#include "qdyn/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qdyn/errors.hpp"
#include "qdyn/kernels.hpp"

namespace qdyn {
namespace {

void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("matrix dimension mismatch");
}

}  // namespace

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

bool CMatrix::is_diagonal() const noexcept {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (r != c && (*this)(r, c) != cplx{}) return false;
    }
  }
  return true;
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  require_same_dim(lhs, rhs);
  CMatrix out(lhs.dim());
  kernels::gemm(lhs.dim(), lhs.data(), rhs.data(), out.data());
  return out;
}

}  // namespace qdyn
