#pragma once

#include "akann/common.hpp"
#include "akann/rng.hpp"

namespace akann {

enum class RotationMode : std::uint8_t { ExactOrthogonal = 0, StructuredFast = 1 };

// In-place unnormalized fast Walsh-Hadamard transform; n must be a power of two.
template <typename Scalar>
void fwht(Scalar* data, Index n) {
  for (Index h = 1; h < n; h <<= 1) {
    for (Index i = 0; i < n; i += h << 1) {
      for (Index j = i; j < i + h; ++j) {
        Scalar a = data[j];
        Scalar b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// An orthogonal transform of R^d. Exact mode materializes a Haar-distributed
// matrix in SO(d); structured mode composes three (sign diagonal, normalized
// Hadamard) rounds on the next power-of-two padding. For non-power-of-two
// dims the structured apply zero-pads and truncates, which leaks energy out
// of the leading d coordinates: norm preservation and invertibility then hold
// only approximately, so statistical suites use exact mode.
class Rotation {
 public:
  static Rotation sample(Index dim, std::uint64_t seed, RotationMode mode);
  static Rotation identity(Index dim);

  RotationMode mode() const { return mode_; }
  Index dim() const { return dim_; }
  Index padded_dim() const { return padded_dim_; }
  std::uint64_t seed() const { return seed_; }

  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& x) const;

  // Column-batched forms; each column is one vector.
  Matrix apply(const Matrix& cols) const;
  Matrix apply_transpose(const Matrix& cols) const;

  // Exact mode only.
  const Matrix& matrix() const {
    require(mode_ == RotationMode::ExactOrthogonal, "rotation matrix only materialized in exact mode");
    return matrix_;
  }

 private:
  Rotation() = default;
  Matrix apply_structured(const Matrix& cols, bool transpose) const;

  RotationMode mode_ = RotationMode::ExactOrthogonal;
  Index dim_ = 0;
  Index padded_dim_ = 0;
  std::uint64_t seed_ = 0;
  Matrix matrix_;        // exact mode, d x d
  Matrix sign_diags_;    // structured mode, padded_dim x 3, entries +-1
};

// Haar-distributed member of SO(d): QR of a Gaussian matrix with the
// R-diagonal sign correction, then one column flip if det = -1.
Matrix sample_haar_so(Index dim, Rng& rng);

}  // namespace akann
