#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "cascade.hpp"
#include "compensation.hpp"
#include "core_state.hpp"

namespace fsscomp {

struct McConfig {
  std::uint64_t seed = 0;
  std::uint64_t batch_size = 10000;
  double rel_tol = 1e-6;
  std::uint64_t max_samples = 100000000;

  void check() const {
    if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (max_samples < batch_size)
      throw std::invalid_argument("max_samples must be >= batch_size");
  }
};

struct McResult {
  DensityMatrix rho;
  std::uint64_t n_samples = 0;
  bool converged = false;
  double last_rel_change = 0.0;
};

/// Relative change between successive running means, floored against
/// all-zero previous iterates.
inline double convergence_metric(const DensityMatrix& prev,
                                 const DensityMatrix& curr) {
  const double scale = std::max(prev.m.max_abs(), 1e-12);
  return max_abs_diff(curr.m, prev.m) / scale;
}

namespace detail {

/// Sub-stream for one batch, derived only from (seed, batch index) so the
/// result does not depend on which worker runs it.
inline RngStream batch_stream(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch),
                    static_cast<std::uint32_t>(batch >> 32)};
  return RngStream(seq);
}

inline Mat4 batch_sum(const CascadeParams& p, const RampParams& r,
                      std::uint64_t seed, std::uint64_t batch,
                      std::uint64_t batch_size) {
  RngStream rng = batch_stream(seed, batch);
  const double rate = precession_rate(p);
  const double dk_xx = r.k_vxx - r.k_hxx;
  const double dk_x = r.k_vx - r.k_hx;
  const double const_phase = dk_xx * (r.t_prop_xx - r.t_start_xx) +
                             dk_x * (r.t_prop_x - r.t_start_x) +
                             (r.phi0_vxx - r.phi0_hxx + r.phi0_vx - r.phi0_hx);
  // Only m14 varies across samples; the averaged matrix is
  // ½[[1,0,0,c],[..],[..],[c*,0,0,1]] with c the mean of e^{iΦ}.
  cplx csum = 0.0;
  for (std::uint64_t i = 0; i < batch_size; ++i) {
    const double t1 = exp_sample(p.tau_xx, rng);
    const double t2 = exp_sample(p.tau_x, rng);
    const double phi =
        (dk_xx + dk_x) * t1 + (dk_x + rate) * t2 + const_phase;
    csum += std::polar(1.0, phi);
  }
  Mat4 m;
  const auto n = static_cast<double>(batch_size);
  m(0, 0) = 0.5 * n;
  m(3, 3) = 0.5 * n;
  // outer product of ket_from_phase(φ): entry (0,3) carries e^{−iφ}.
  m(0, 3) = 0.5 * std::conj(csum);
  m(3, 0) = 0.5 * csum;
  return m;
}

/// Order-insensitive pairwise accumulator: merging behaves like a binary
/// counter, so the running total is a fixed-shape pairwise summation tree
/// over the batch sums regardless of how many there are.
class PairwiseAccumulator {
 public:
  void add(const Mat4& term) {
    Mat4 carry = term;
    std::uint64_t bit = 1;
    while (count_ & bit) {
      carry = carry + levels_[levels_idx(bit)];
      bit <<= 1;
    }
    levels_resize(bit);
    levels_[levels_idx(bit)] = carry;
    ++count_;
  }

  Mat4 total() const {
    Mat4 t;
    std::uint64_t bit = 1;
    for (std::size_t i = 0; i < levels_.size(); ++i, bit <<= 1)
      if (count_ & bit) t = t + levels_[i];
    return t;
  }

 private:
  static std::size_t levels_idx(std::uint64_t bit) {
    std::size_t i = 0;
    while (bit > 1) { bit >>= 1; ++i; }
    return i;
  }
  void levels_resize(std::uint64_t bit) {
    const std::size_t need = levels_idx(bit) + 1;
    if (levels_.size() < need) levels_.resize(need);
  }

  std::vector<Mat4> levels_;
  std::uint64_t count_ = 0;
};

}  // namespace detail

/// Averages density matrices of compensated pair states over sampled
/// emission events until the relative change between successive per-batch
/// running means drops below cfg.rel_tol. Batches are computed by up to
/// n_workers threads but folded in ascending batch order, so the result is
/// bit-identical for any worker count.
inline McResult average_density(const CascadeParams& p, const RampParams& r,
                                const McConfig& cfg, unsigned n_workers = 0) {
  p.check();
  cfg.check();
  if (n_workers == 0)
    n_workers = std::max(1u, std::thread::hardware_concurrency());

  const std::uint64_t max_batches = cfg.max_samples / cfg.batch_size;
  detail::PairwiseAccumulator acc;
  McResult out;
  DensityMatrix prev_mean;
  bool have_prev = false;
  std::uint64_t done = 0;

  std::vector<Mat4> chunk;
  while (done < max_batches && !out.converged) {
    const std::uint64_t chunk_n =
        std::min<std::uint64_t>(std::max<unsigned>(n_workers, 1) * 4,
                                max_batches - done);
    chunk.assign(chunk_n, Mat4{});
    if (n_workers <= 1 || chunk_n == 1) {
      for (std::uint64_t i = 0; i < chunk_n; ++i)
        chunk[i] = detail::batch_sum(p, r, cfg.seed, done + i, cfg.batch_size);
    } else {
      std::atomic<std::uint64_t> next{0};
      std::vector<std::thread> workers;
      for (unsigned w = 0; w < n_workers; ++w)
        workers.emplace_back([&] {
          for (std::uint64_t i; (i = next.fetch_add(1)) < chunk_n;)
            chunk[i] = detail::batch_sum(p, r, cfg.seed, done + i, cfg.batch_size);
        });
      for (auto& t : workers) t.join();
    }
    for (std::uint64_t i = 0; i < chunk_n && !out.converged; ++i) {
      acc.add(chunk[i]);
      ++done;
      DensityMatrix mean;
      mean.m = (1.0 / static_cast<double>(done * cfg.batch_size)) * acc.total();
      if (have_prev) {
        out.last_rel_change = convergence_metric(prev_mean, mean);
        out.converged = out.last_rel_change < cfg.rel_tol;
      }
      prev_mean = mean;
      have_prev = true;
    }
  }

  out.rho = prev_mean;
  out.n_samples = done * cfg.batch_size;
  return out;
}

}  // namespace fsscomp
