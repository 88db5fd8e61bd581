#pragma once

#include "akann/config.hpp"
#include "akann/special.hpp"

#include <optional>

namespace akann {

// Objective angle phi and reference angle psi; boundary values are excluded
// because the kernels degenerate to constants there.
struct AnglePair {
  double phi;
  double psi;
  AnglePair(double phi_, double psi_) : phi(phi_), psi(psi_) {
    require(phi > 0.0 && phi < M_PI, "AnglePair: phi outside (0,pi)");
    require(psi > 0.0 && psi < M_PI, "AnglePair: psi outside (0,pi)");
  }
};

// Binds a configuration to one rotation. For L = 1 the rotated codewords can
// be precomputed (the probing layout used by the MIPS index).
struct KernelContext {
  const ProjectionConfig& config;
  const Rotation& rotation;
  std::optional<Matrix> rotated_codewords;  // d x m

  KernelContext(const ProjectionConfig& cfg, const Rotation& rot, bool precompute_rotated = false);
};

// Comparison kernel: inner product of v with the rotated codeword closest to q.
double k1(const KernelContext& ctx, const Vector& q, const Vector& v);

// Inner-product generalization: ||v|| * k1(q, v / ||v||); zero maps to zero.
double k1_mips(const KernelContext& ctx, const Vector& q, const Vector& v);

// Thresholding kernel: <Hq, Z_S(Hv)> / A_S(Hv).
double k2(const KernelContext& ctx, const Vector& q, const Vector& v);

// Conditional CDF of k1 given reference angle psi (closed form, symmetric
// Beta law); support is [cos(phi+psi), cos(phi-psi)].
double k1_cdf(double x, const AnglePair& angles, Index d);

// Upper bound on P[k2 >= cos theta] when cos phi < cos theta. Below-range t'
// maps to 0; above-range t' is clamped to 1 with a warning.
double p2_bound(double phi, double theta, double psi, Index d);

struct MonotonicityPoint {
  double psi;
  double probability;
  double std_error;
};

struct MonotonicityReport {
  std::vector<MonotonicityPoint> points;
  bool monotone_within_2se = false;
  bool above_half_below_right_angle = false;
  bool pass() const { return monotone_within_2se && above_half_below_right_angle; }
};

// Empirical P[<u,v1> > <u,v2>] for u drawn on the cross-section at angle psi
// from q, swept over psi_grid.
MonotonicityReport verify_comparison_monotonicity(Index d, double phi1, double phi2,
                                                  const std::vector<double>& psi_grid,
                                                  std::size_t trials, std::uint64_t seed,
                                                  unsigned threads = 0);

// Uniform draw on the cross-section {u : <u,q> = cos psi}.
Vector sample_cross_section(const Vector& q, double psi, Rng& rng);

// Unit vector at angle phi from q, uniformly among such vectors.
Vector sample_at_angle(const Vector& q, double phi, Rng& rng);

}  // namespace akann
