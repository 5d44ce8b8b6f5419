#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "gst/common.hpp"

namespace gst {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre recurrence; n <= 64.
GaussRule gauss_legendre(int n);

/// Integrate f over [a, b] with a composite Gauss-Legendre rule
/// (panels equal-width subintervals).
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order = 16);

/// n! as a double; n <= 170.
double factorial(int n);

/// Deterministic random source. std::mt19937_64 is bit-exact across
/// platforms; the uniform/normal maps below are hand-rolled because the
/// standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller; one fresh pair per call, no cache.
  double normal() {
    double u1 = 0.0;
    do { u1 = uniform(); } while (u1 == 0.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  cdouble cnormal() {
    double re = normal();
    double im = normal();
    return {re, im};
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

int worker_count();

/// Run fn(begin, end) over fixed-size chunks of [0, n) and return the chunk
/// results in chunk order. Chunk boundaries depend only on (n, chunk), never
/// on the worker count, so floating-point reductions over the returned
/// vector are bit-stable for any thread count. Workers come from the
/// GST_THREADS environment variable (default 1).
template <typename T, typename Fn>
std::vector<T> chunked_map(std::size_t n, std::size_t chunk, Fn&& fn) {
  if (chunk == 0) throw precondition_error("chunk size must be positive");
  std::size_t nchunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
  std::vector<T> out(nchunks);
  int workers = worker_count();
  if (workers <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      out[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      out[c] = fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace gst
