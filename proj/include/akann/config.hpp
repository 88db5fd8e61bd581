#pragma once

#include "akann/rotation.hpp"
#include "akann/sphere.hpp"

#include <optional>
#include <string>

namespace akann {

enum class ConfigKind : std::uint8_t { Sym = 0, Pol = 1, Ran = 2, Gaussian = 3 };

const char* to_string(ConfigKind kind);
std::optional<ConfigKind> parse_config_kind(const std::string& name);

// A projection-vector configuration: m codewords per level, each of
// sub-dimension d', scaled to norm 1/sqrt(L) so that any cross-level
// concatenation is a unit vector. The Gaussian kind keeps raw N(0, I_d)
// rows (L = 1) as the classic extreme-order-statistics baseline.
struct ProjectionConfig {
  ConfigKind kind = ConfigKind::Ran;
  SubspaceLayout layout;
  Index m = 0;
  bool antipodal = false;
  std::vector<Matrix> codewords;  // per level: sub_dim x m, columns are codewords

  const Matrix& level(Index i) const { return codewords[static_cast<std::size_t>(i)]; }
  MatrixF level_float(Index i) const { return level(i).cast<float>(); }

  // Concatenation of the per-level codewords selected by `codes`.
  Vector virtual_codeword(const std::vector<std::uint32_t>& codes) const;
};

struct ReferenceAssignment {
  std::vector<std::uint32_t> codes;  // per-level argmax indices, ties to lowest
  double a_s = 0.0;                  // cosine of the reference angle
};

ProjectionConfig build_sym(Index m, const SubspaceLayout& layout, std::uint64_t seed);

// Cross-polytope construction: m = 2*d'*a + b. R candidates are scored with
// a shared evaluation sample of selection_n points and the best one is kept.
ProjectionConfig build_pol(Index m, const SubspaceLayout& layout, std::uint64_t seed, Index rounds = 8,
                           Index selection_n = 200000, unsigned threads = 0);

ProjectionConfig build_ran(Index m, const SubspaceLayout& layout, std::uint64_t seed);

ProjectionConfig build_gaussian(Index m, Index d, std::uint64_t seed);

ReferenceAssignment assign_reference(const Vector& x, const ProjectionConfig& config);

struct JEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Monte-Carlo estimate of the expected reference cosine over uniform unit
// vectors. Identical seeds reproduce identical samples, so two configurations
// estimated with the same seed are paired.
JEstimate estimate_j(const ProjectionConfig& config, std::size_t n, std::uint64_t seed,
                     unsigned threads = 0);

struct PairedJEstimate {
  JEstimate first, second;
  double diff_mean = 0.0;       // first - second
  double diff_std_error = 0.0;
};

PairedJEstimate estimate_j_paired(const ProjectionConfig& a, const ProjectionConfig& b,
                                  std::size_t n, std::uint64_t seed, unsigned threads = 0);

// Raw reference-cosine draws (for CDF-level comparisons).
std::vector<double> sample_reference_cosines(const ProjectionConfig& config, std::size_t n,
                                             std::uint64_t seed, unsigned threads = 0);

void save_config(const ProjectionConfig& config, const std::string& path);
ProjectionConfig load_config(const std::string& path);

}  // namespace akann
