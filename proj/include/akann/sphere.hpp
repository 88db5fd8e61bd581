#pragma once

#include "akann/common.hpp"
#include "akann/rng.hpp"

namespace akann {

// Partition of R^d into L equal-dimension subspaces, d = L * d'.
struct SubspaceLayout {
  Index d = 0;
  Index levels = 1;
  Index sub_dim = 0;

  SubspaceLayout() = default;
  SubspaceLayout(Index dim, Index L) : d(dim), levels(L), sub_dim(dim / L) {
    require(L >= 1 && dim >= 1, "layout: d and L must be positive");
    require(dim % L == 0, "layout: d must be divisible by L");
    if (sub_dim < 3) {
      require(sub_dim >= 2, "layout: sub-dimension must be >= 2");
      warn("sub-dimension d' = " + std::to_string(sub_dim) +
           " < 3: reference-angle bounds assume d' >= 3");
    }
  }
};

inline Vector sample_uniform_sphere(Index dim, Rng& rng) {
  require(dim >= 1, "sphere sample: dim must be >= 1");
  Vector v(dim);
  double norm2 = 0.0;
  do {
    for (Index i = 0; i < dim; ++i) v[i] = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 == 0.0);
  return v / std::sqrt(norm2);
}

// Rows of the result are n independent uniform points on S^{dim-1}.
inline Matrix sample_uniform_sphere_rows(Index n, Index dim, Rng& rng) {
  Matrix m(n, dim);
  for (Index i = 0; i < n; ++i) m.row(i) = sample_uniform_sphere(dim, rng).transpose();
  return m;
}

// The L sub-vectors of x; concatenation reproduces x.
template <typename Derived>
auto split_levels(const Eigen::MatrixBase<Derived>& x, const SubspaceLayout& layout) {
  using Sub = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;
  require(x.size() == layout.d, "split_levels: dimension mismatch");
  std::vector<Sub> parts;
  parts.reserve(static_cast<std::size_t>(layout.levels));
  for (Index i = 0; i < layout.levels; ++i)
    parts.emplace_back(x.derived().segment(i * layout.sub_dim, layout.sub_dim));
  return parts;
}

}  // namespace akann
