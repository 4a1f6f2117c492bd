#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qdyn {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  bool is_diagonal() const noexcept;
  double max_abs() const noexcept;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, cplx s) { return lhs *= s; }
  friend CMatrix operator*(cplx s, CMatrix rhs) { return rhs *= s; }
  /// Matrix product through the dispatched gemm kernel.
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

}  // namespace qdyn
