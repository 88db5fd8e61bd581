#include "akann/rotation.hpp"

#include <Eigen/QR>

namespace akann {

Matrix sample_haar_so(Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = rng.normal();

  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the QR gauge: force positive R diagonal so Q is Haar on O(d).
  Matrix r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(dim - 1) = -q.col(dim - 1);
  return q;
}

Rotation Rotation::sample(Index dim, std::uint64_t seed, RotationMode mode) {
  require(dim >= 1, "rotation dim must be >= 1");
  Rotation rot;
  rot.mode_ = mode;
  rot.dim_ = dim;
  rot.seed_ = seed;
  Rng rng(seed);
  if (mode == RotationMode::ExactOrthogonal) {
    rot.padded_dim_ = dim;
    rot.matrix_ = sample_haar_so(dim, rng);
  } else {
    rot.padded_dim_ = next_pow2(dim);
    rot.sign_diags_.resize(rot.padded_dim_, 3);
    for (Index r = 0; r < 3; ++r)
      for (Index i = 0; i < rot.padded_dim_; ++i)
        rot.sign_diags_(i, r) = (rng.next_u64() & 1u) ? 1.0 : -1.0;
  }
  return rot;
}

Rotation Rotation::identity(Index dim) {
  require(dim >= 1, "rotation dim must be >= 1");
  Rotation rot;
  rot.mode_ = RotationMode::ExactOrthogonal;
  rot.dim_ = dim;
  rot.padded_dim_ = dim;
  rot.matrix_ = Matrix::Identity(dim, dim);
  return rot;
}

Matrix Rotation::apply_structured(const Matrix& cols, bool transpose) const {
  const Index n = padded_dim_;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix out = Matrix::Zero(n, cols.cols());
  out.topRows(dim_) = cols;
  for (Index c = 0; c < out.cols(); ++c) {
    double* col = out.col(c).data();
    if (!transpose) {
      for (Index r = 0; r < 3; ++r) {
        for (Index i = 0; i < n; ++i) col[i] *= sign_diags_(i, r);
        fwht(col, n);
        for (Index i = 0; i < n; ++i) col[i] *= inv_sqrt_n;
      }
    } else {
      // Inverse of (H D3)(H D2)(H D1): the normalized Sylvester-Hadamard is
      // symmetric and involutory, so transpose = D1 H D2 H D3 H.
      for (Index r = 2; r >= 0; --r) {
        fwht(col, n);
        for (Index i = 0; i < n; ++i) col[i] *= inv_sqrt_n * sign_diags_(i, r);
      }
    }
  }
  return out.topRows(dim_);
}

Vector Rotation::apply(const Vector& x) const {
  require(x.size() == dim_, "apply_rotation: dimension mismatch");
  if (mode_ == RotationMode::ExactOrthogonal) return matrix_ * x;
  return apply_structured(x, false);
}

Vector Rotation::apply_transpose(const Vector& x) const {
  require(x.size() == dim_, "apply_rotation: dimension mismatch");
  if (mode_ == RotationMode::ExactOrthogonal) return matrix_.transpose() * x;
  return apply_structured(x, true);
}

Matrix Rotation::apply(const Matrix& cols) const {
  require(cols.rows() == dim_, "apply_rotation: dimension mismatch");
  if (mode_ == RotationMode::ExactOrthogonal) return matrix_ * cols;
  return apply_structured(cols, false);
}

Matrix Rotation::apply_transpose(const Matrix& cols) const {
  require(cols.rows() == dim_, "apply_rotation: dimension mismatch");
  if (mode_ == RotationMode::ExactOrthogonal) return matrix_.transpose() * cols;
  return apply_structured(cols, true);
}

}  // namespace akann
