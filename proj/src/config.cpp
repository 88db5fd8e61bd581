#include "akann/config.hpp"

#include <cstring>
#include <fstream>

namespace akann {

namespace {

constexpr char kMagic[4] = {'A', 'K', 'C', 'F'};
constexpr std::uint16_t kVersion = 1;

// Stream indices for counter-based seed splitting.
constexpr std::uint64_t kLevelStream = 1000;
constexpr std::uint64_t kCandidateStream = 2000;
constexpr std::uint64_t kSelectionStream = 1;

void check_unit(const Vector& x) {
  require(std::fabs(x.norm() - 1.0) <= 1e-6, "assign_reference: input must be unit-norm");
}

// Sum (and optional per-sample record) of reference cosines over a batch of
// unit rows, accumulated in double.
void reference_cosine_rows(const ProjectionConfig& config, const std::vector<MatrixF>& levels_f,
                           const RowMatrixF& rows, double* per_sample) {
  const Index sub = config.layout.sub_dim;
  const Index n = rows.rows();
  for (Index lvl = 0; lvl < config.layout.levels; ++lvl) {
    const MatrixF scores =
        rows.middleCols(lvl * sub, sub) * levels_f[static_cast<std::size_t>(lvl)];
    for (Index i = 0; i < n; ++i)
      per_sample[i] += static_cast<double>(scores.row(i).maxCoeff());
  }
}

struct MomentAccumulator {
  double sum = 0.0, sumsq = 0.0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  void merge(const MomentAccumulator& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    n += o.n;
  }
  JEstimate estimate() const {
    JEstimate e;
    e.n = n;
    if (n == 0) return e;
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
      const double var =
          std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1));
      e.std_error = std::sqrt(var / static_cast<double>(n));
    }
    return e;
  }
};

constexpr std::size_t kJBatch = 8192;

RowMatrixF sphere_batch_f(Index count, Index dim, Rng rng) {
  RowMatrixF rows(count, dim);
  Vector v(dim);
  for (Index i = 0; i < count; ++i) {
    double norm2 = 0.0;
    do {
      for (Index j = 0; j < dim; ++j) v[j] = rng.normal();
      norm2 = v.squaredNorm();
    } while (norm2 == 0.0);
    rows.row(i) = (v / std::sqrt(norm2)).cast<float>().transpose();
  }
  return rows;
}

// Samples are drawn per fixed-size batch from stream(b), so results do not
// depend on the worker count and two configs estimated with one seed share
// the exact same sample.
template <typename PerBatch>
std::size_t for_each_sample_batch(Index dim, std::size_t n, std::uint64_t seed, unsigned threads,
                                  const PerBatch& fn) {
  const Rng root(seed);
  parallel_batches(
      n, kJBatch,
      [&](std::size_t b, std::size_t lo, std::size_t hi) {
        const RowMatrixF rows = sphere_batch_f(static_cast<Index>(hi - lo), dim, root.stream(b));
        fn(b, lo, rows);
      },
      threads);
  return (n + kJBatch - 1) / kJBatch;
}

}  // namespace

const char* to_string(ConfigKind kind) {
  switch (kind) {
    case ConfigKind::Sym: return "sym";
    case ConfigKind::Pol: return "pol";
    case ConfigKind::Ran: return "ran";
    case ConfigKind::Gaussian: return "gaussian";
  }
  return "?";
}

std::optional<ConfigKind> parse_config_kind(const std::string& name) {
  if (name == "sym") return ConfigKind::Sym;
  if (name == "pol") return ConfigKind::Pol;
  if (name == "ran") return ConfigKind::Ran;
  if (name == "gaussian" || name == "ceos") return ConfigKind::Gaussian;
  return std::nullopt;
}

Vector ProjectionConfig::virtual_codeword(const std::vector<std::uint32_t>& codes) const {
  require(static_cast<Index>(codes.size()) == layout.levels, "virtual_codeword: wrong code count");
  Vector out(layout.d);
  for (Index i = 0; i < layout.levels; ++i) {
    require(codes[static_cast<std::size_t>(i)] < static_cast<std::uint32_t>(m),
            "virtual_codeword: code out of range");
    out.segment(i * layout.sub_dim, layout.sub_dim) =
        level(i).col(static_cast<Index>(codes[static_cast<std::size_t>(i)]));
  }
  return out;
}

ProjectionConfig build_sym(Index m, const SubspaceLayout& layout, std::uint64_t seed) {
  require(m >= 2 && m % 2 == 0, "build_sym: m must be even and >= 2");
  ProjectionConfig cfg;
  cfg.kind = ConfigKind::Sym;
  cfg.layout = layout;
  cfg.m = m;
  cfg.antipodal = true;
  const double scale = 1.0 / std::sqrt(static_cast<double>(layout.levels));
  Rng root(seed);
  for (Index lvl = 0; lvl < layout.levels; ++lvl) {
    Rng rng = root.stream(kLevelStream + static_cast<std::uint64_t>(lvl));
    Matrix level(layout.sub_dim, m);
    for (Index j = 0; j < m / 2; ++j) {
      const Vector p = sample_uniform_sphere(layout.sub_dim, rng) * scale;
      level.col(2 * j) = p;
      level.col(2 * j + 1) = -p;
    }
    cfg.codewords.push_back(std::move(level));
  }
  return cfg;
}

ProjectionConfig build_ran(Index m, const SubspaceLayout& layout, std::uint64_t seed) {
  require(m >= 1, "build_ran: m must be >= 1");
  ProjectionConfig cfg;
  cfg.kind = ConfigKind::Ran;
  cfg.layout = layout;
  cfg.m = m;
  cfg.antipodal = false;
  const double scale = 1.0 / std::sqrt(static_cast<double>(layout.levels));
  Rng root(seed);
  for (Index lvl = 0; lvl < layout.levels; ++lvl) {
    Rng rng = root.stream(kLevelStream + static_cast<std::uint64_t>(lvl));
    Matrix level(layout.sub_dim, m);
    for (Index j = 0; j < m; ++j) level.col(j) = sample_uniform_sphere(layout.sub_dim, rng) * scale;
    cfg.codewords.push_back(std::move(level));
  }
  return cfg;
}

ProjectionConfig build_gaussian(Index m, Index d, std::uint64_t seed) {
  require(m >= 2 && m % 2 == 0, "build_gaussian: m must be even and >= 2");
  ProjectionConfig cfg;
  cfg.kind = ConfigKind::Gaussian;
  cfg.layout = SubspaceLayout(d, 1);
  cfg.m = m;
  cfg.antipodal = true;  // explicit pairs so probing code is shared across kinds
  Rng rng(seed);
  Matrix level(d, m);
  for (Index j = 0; j < m / 2; ++j) {
    for (Index i = 0; i < d; ++i) level(i, 2 * j) = rng.normal();
    level.col(2 * j + 1) = -level.col(2 * j);
  }
  cfg.codewords.push_back(std::move(level));
  return cfg;
}

ProjectionConfig build_pol(Index m, const SubspaceLayout& layout, std::uint64_t seed, Index rounds,
                           Index selection_n, unsigned threads) {
  const Index sub = layout.sub_dim;
  const Index b = m % (2 * sub);
  require(m >= 2, "build_pol: m must be >= 2");
  require(b % 2 == 0, "build_pol: m = 2d'a + b requires even b");
  require(rounds >= 1 && selection_n >= 1, "build_pol: rounds and selection_n must be positive");
  const Index a = m / (2 * sub);

  Rng root(seed);
  const SubspaceLayout flat(sub, 1);

  // Candidate = m unit vectors in the sub-space assembled from rotated
  // cross-polytopes, antipodal pairs adjacent.
  const auto make_candidate = [&](Rng rng) {
    Matrix cand(sub, m);
    Index col = 0;
    for (Index t = 0; t < a; ++t) {
      const Matrix q = sample_haar_so(sub, rng);
      for (Index k = 0; k < sub; ++k) {
        cand.col(col++) = q.col(k);
        cand.col(col++) = -q.col(k);
      }
    }
    if (b > 0) {
      const Matrix q = sample_haar_so(sub, rng);
      for (Index k = 0; k < b / 2; ++k) {
        cand.col(col++) = q.col(k);
        cand.col(col++) = -q.col(k);
      }
    }
    return cand;
  };

  const std::uint64_t eval_seed = derive_seed(seed, kSelectionStream);
  Matrix best;
  double best_j = -2.0;
  for (Index r = 0; r < rounds; ++r) {
    ProjectionConfig cand;
    cand.kind = ConfigKind::Pol;
    cand.layout = flat;
    cand.m = m;
    cand.antipodal = true;
    cand.codewords.push_back(make_candidate(root.stream(kCandidateStream + static_cast<std::uint64_t>(r))));
    const double j = estimate_j(cand, static_cast<std::size_t>(selection_n), eval_seed, threads).mean;
    if (j > best_j) {
      best_j = j;
      best = std::move(cand.codewords.front());
    }
  }

  ProjectionConfig cfg;
  cfg.kind = ConfigKind::Pol;
  cfg.layout = layout;
  cfg.m = m;
  cfg.antipodal = true;
  const double scale = 1.0 / std::sqrt(static_cast<double>(layout.levels));
  for (Index lvl = 0; lvl < layout.levels; ++lvl) {
    Rng rng = root.stream(kLevelStream + static_cast<std::uint64_t>(lvl));
    const Matrix q = sample_haar_so(sub, rng);
    cfg.codewords.push_back((q * best) * scale);
  }
  return cfg;
}

ReferenceAssignment assign_reference(const Vector& x, const ProjectionConfig& config) {
  require(x.size() == config.layout.d, "assign_reference: dimension mismatch");
  check_unit(x);
  ReferenceAssignment out;
  out.codes.resize(static_cast<std::size_t>(config.layout.levels));
  const Index sub = config.layout.sub_dim;
  for (Index lvl = 0; lvl < config.layout.levels; ++lvl) {
    const Vector scores = config.level(lvl).transpose() * x.segment(lvl * sub, sub);
    Index arg = 0;
    const double mx = scores.maxCoeff(&arg);  // first maximum: ties to lowest index
    out.codes[static_cast<std::size_t>(lvl)] = static_cast<std::uint32_t>(arg);
    out.a_s += mx;
  }
  return out;
}

JEstimate estimate_j(const ProjectionConfig& config, std::size_t n, std::uint64_t seed,
                     unsigned threads) {
  require(n >= 1, "estimate_j: n must be >= 1");
  std::vector<MatrixF> levels_f;
  for (Index l = 0; l < config.layout.levels; ++l) levels_f.push_back(config.level_float(l));

  std::vector<MomentAccumulator> acc((n + kJBatch - 1) / kJBatch);
  const std::size_t nbatch = for_each_sample_batch(
      config.layout.d, n, seed, threads, [&](std::size_t b, std::size_t, const RowMatrixF& rows) {
        std::vector<double> a(static_cast<std::size_t>(rows.rows()), 0.0);
        reference_cosine_rows(config, levels_f, rows, a.data());
        for (double v : a) acc[b].add(v);
      });
  MomentAccumulator total;
  for (std::size_t b = 0; b < nbatch; ++b) total.merge(acc[b]);
  return total.estimate();
}

PairedJEstimate estimate_j_paired(const ProjectionConfig& a, const ProjectionConfig& b,
                                  std::size_t n, std::uint64_t seed, unsigned threads) {
  require(a.layout.d == b.layout.d, "estimate_j_paired: ambient dimensions differ");
  std::vector<MatrixF> levels_a, levels_b;
  for (Index l = 0; l < a.layout.levels; ++l) levels_a.push_back(a.level_float(l));
  for (Index l = 0; l < b.layout.levels; ++l) levels_b.push_back(b.level_float(l));

  struct Triple {
    MomentAccumulator fa, fb, diff;
  };
  std::vector<Triple> acc((n + kJBatch - 1) / kJBatch);
  const std::size_t nbatch = for_each_sample_batch(
      a.layout.d, n, seed, threads, [&](std::size_t bi, std::size_t, const RowMatrixF& rows) {
        const std::size_t c = static_cast<std::size_t>(rows.rows());
        std::vector<double> va(c, 0.0), vb(c, 0.0);
        reference_cosine_rows(a, levels_a, rows, va.data());
        reference_cosine_rows(b, levels_b, rows, vb.data());
        for (std::size_t i = 0; i < c; ++i) {
          acc[bi].fa.add(va[i]);
          acc[bi].fb.add(vb[i]);
          acc[bi].diff.add(va[i] - vb[i]);
        }
      });
  Triple total;
  for (std::size_t bi = 0; bi < nbatch; ++bi) {
    total.fa.merge(acc[bi].fa);
    total.fb.merge(acc[bi].fb);
    total.diff.merge(acc[bi].diff);
  }
  PairedJEstimate out;
  out.first = total.fa.estimate();
  out.second = total.fb.estimate();
  const JEstimate d = total.diff.estimate();
  out.diff_mean = d.mean;
  out.diff_std_error = d.std_error;
  return out;
}

std::vector<double> sample_reference_cosines(const ProjectionConfig& config, std::size_t n,
                                             std::uint64_t seed, unsigned threads) {
  std::vector<MatrixF> levels_f;
  for (Index l = 0; l < config.layout.levels; ++l) levels_f.push_back(config.level_float(l));
  std::vector<double> out(n, 0.0);
  for_each_sample_batch(config.layout.d, n, seed, threads,
                        [&](std::size_t, std::size_t lo, const RowMatrixF& rows) {
                          reference_cosine_rows(config, levels_f, rows, out.data() + lo);
                        });
  return out;
}

void save_config(const ProjectionConfig& config, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  require(f.good(), "save_config: cannot open " + path);
  f.write(kMagic, 4);
  const std::uint16_t version = kVersion;
  const std::uint8_t kind = static_cast<std::uint8_t>(config.kind);
  const std::uint32_t d = static_cast<std::uint32_t>(config.layout.d);
  const std::uint32_t levels = static_cast<std::uint32_t>(config.layout.levels);
  const std::uint32_t m = static_cast<std::uint32_t>(config.m);
  f.write(reinterpret_cast<const char*>(&version), sizeof version);
  f.write(reinterpret_cast<const char*>(&kind), sizeof kind);
  f.write(reinterpret_cast<const char*>(&d), sizeof d);
  f.write(reinterpret_cast<const char*>(&levels), sizeof levels);
  f.write(reinterpret_cast<const char*>(&m), sizeof m);
  for (Index lvl = 0; lvl < config.layout.levels; ++lvl) {
    const MatrixF level = config.level_float(lvl);  // column-major: codeword entries contiguous
    f.write(reinterpret_cast<const char*>(level.data()),
            static_cast<std::streamsize>(sizeof(float) * static_cast<std::size_t>(level.size())));
  }
  require(f.good(), "save_config: write failed for " + path);
}

ProjectionConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(f.good(), "load_config: cannot open " + path);
  char magic[4];
  f.read(magic, 4);
  require(f.good() && std::memcmp(magic, kMagic, 4) == 0, "load_config: bad magic");
  std::uint16_t version = 0;
  std::uint8_t kind = 0;
  std::uint32_t d = 0, levels = 0, m = 0;
  f.read(reinterpret_cast<char*>(&version), sizeof version);
  f.read(reinterpret_cast<char*>(&kind), sizeof kind);
  f.read(reinterpret_cast<char*>(&d), sizeof d);
  f.read(reinterpret_cast<char*>(&levels), sizeof levels);
  f.read(reinterpret_cast<char*>(&m), sizeof m);
  require(f.good() && version == kVersion, "load_config: unsupported version");
  require(kind <= 3 && levels >= 1 && d >= 1 && m >= 1 && d % levels == 0,
          "load_config: corrupt header");
  ProjectionConfig cfg;
  cfg.kind = static_cast<ConfigKind>(kind);
  cfg.layout = SubspaceLayout(static_cast<Index>(d), static_cast<Index>(levels));
  cfg.m = static_cast<Index>(m);
  cfg.antipodal = cfg.kind != ConfigKind::Ran;
  for (std::uint32_t lvl = 0; lvl < levels; ++lvl) {
    MatrixF level(cfg.layout.sub_dim, cfg.m);
    f.read(reinterpret_cast<char*>(level.data()),
           static_cast<std::streamsize>(sizeof(float) * static_cast<std::size_t>(level.size())));
    require(f.good(), "load_config: truncated file");
    cfg.codewords.push_back(level.cast<double>());
  }
  return cfg;
}

}  // namespace akann
