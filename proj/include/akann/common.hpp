#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace akann {

using Index = Eigen::Index;

// Statistical core runs in double; dataset storage and index payloads in float.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using VectorF = Eigen::VectorXf;
using MatrixF = Eigen::MatrixXf;
using RowMatrixF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

static_assert(std::endian::native == std::endian::little,
              "on-disk formats are little-endian; big-endian hosts unsupported");

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void warn(const std::string& msg) {
  std::fprintf(stderr, "[akann] warning: %s\n", msg.c_str());
}

inline unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Runs fn(begin, end) over fixed-size batches pulled from an atomic counter.
// Batch boundaries do not depend on the worker count, so per-batch outputs
// written to slots indexed by batch are deterministic.
inline void parallel_batches(std::size_t n, std::size_t batch,
                             const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                             unsigned threads = 0) {
  if (n == 0) return;
  if (batch == 0) batch = 1;
  const std::size_t nbatch = (n + batch - 1) / batch;
  unsigned nt = std::min<std::size_t>(resolve_threads(threads), nbatch);
  if (nt <= 1) {
    for (std::size_t b = 0; b < nbatch; ++b)
      fn(b, b * batch, std::min(n, (b + 1) * batch));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::exception_ptr err;
  std::mutex err_mu;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= nbatch) return;
        try {
          fn(b, b * batch, std::min(n, (b + 1) * batch));
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
  return fnv1a64(s.data(), s.size(), h);
}

}  // namespace akann
