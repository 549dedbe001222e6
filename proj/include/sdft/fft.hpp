#pragma once

// Complex FFT used by every transform in the library. Power-of-two sizes run
// an iterative radix-2 kernel; every other size goes through Bluestein's
// chirp-z reduction onto a power-of-two kernel. Both are deterministic for a
// fixed size and input.

#include <bit>
#include <cstdint>
#include <memory>

#include "sdft/types.hpp"

namespace sdft {

class Radix2Kernel {
 public:
  explicit Radix2Kernel(std::size_t n) : n_(n), twiddle_(n / 2), bitrev_(n) {
    const unsigned bits = n > 1 ? static_cast<unsigned>(std::countr_zero(n)) : 0;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(angle), std::sin(angle)};
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev_[i] = static_cast<std::uint32_t>(r);
    }
  }

  std::size_t size() const noexcept { return n_; }

  /// In-place forward transform, e^{-i 2 pi k n / N} kernel, unnormalized.
  void forward(std::span<cplx> a) const {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t j = bitrev_[i];
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        cplx* lo = a.data() + start;
        cplx* hi = lo + half;
        for (std::size_t j = 0; j < half; ++j) {
          const cplx w = twiddle_[j * stride];
          // explicit products; std::complex operator* does NaN recovery work
          const double tr = hi[j].real() * w.real() - hi[j].imag() * w.imag();
          const double ti = hi[j].real() * w.imag() + hi[j].imag() * w.real();
          const cplx u = lo[j];
          lo[j] = {u.real() + tr, u.imag() + ti};
          hi[j] = {u.real() - tr, u.imag() - ti};
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<cplx> twiddle_;
  std::vector<std::uint32_t> bitrev_;
};

/// Immutable FFT plan for one length. Safe to share across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorKind::unsupported_size, "FFT length must be >= 1");
    if (std::has_single_bit(n)) {
      kernel_ = std::make_shared<const Radix2Kernel>(n);
      return;
    }
    // Bluestein: x_k = w_k * sum_j (x_j w_j) conj(w_{k-j}), w_j = e^{-i pi j^2 / N}
    const std::size_t m = std::bit_ceil(2 * n - 1);
    kernel_ = std::make_shared<const Radix2Kernel>(m);
    chirp_.resize(n);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t j = 0; j < n; ++j) {
      // j^2 mod 2N keeps the phase argument small and exact
      const std::uint64_t sq = (static_cast<std::uint64_t>(j) * j) % two_n;
      const double angle = -kPi * static_cast<double>(sq) / static_cast<double>(n);
      chirp_[j] = {std::cos(angle), std::sin(angle)};
    }
    filter_.assign(m, cplx{});
    filter_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n; ++j) {
      filter_[j] = std::conj(chirp_[j]);
      filter_[m - j] = std::conj(chirp_[j]);
    }
    kernel_->forward(filter_);
  }

  std::size_t size() const noexcept { return n_; }
  bool is_power_of_two() const noexcept { return chirp_.empty(); }

  /// Unnormalized forward DFT of `in` into `out` (may alias).
  void forward(std::span<const cplx> in, std::span<cplx> out) const {
    check(in, out);
    if (is_power_of_two()) {
      if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
      kernel_->forward(out);
      return;
    }
    const std::size_t m = kernel_->size();
    std::vector<cplx> work(m, cplx{});
    for (std::size_t j = 0; j < n_; ++j) work[j] = in[j] * chirp_[j];
    kernel_->forward(work);
    for (std::size_t j = 0; j < m; ++j) work[j] *= filter_[j];
    // inverse FFT via conjugation
    for (cplx& v : work) v = std::conj(v);
    kernel_->forward(work);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(work[k]) * scale * chirp_[k];
  }

  /// Unnormalized inverse (e^{+i ...} kernel); callers apply 1/N.
  void backward(std::span<const cplx> in, std::span<cplx> out) const {
    check(in, out);
    std::vector<cplx> tmp(in.begin(), in.end());
    for (cplx& v : tmp) v = std::conj(v);
    forward(tmp, tmp);
    for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(tmp[k]);
  }

 private:
  void check(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != n_ || out.size() != n_) {
      throw Error(ErrorKind::size_mismatch, "FFT plan length does not match buffer length");
    }
  }

  std::size_t n_;
  std::shared_ptr<const Radix2Kernel> kernel_;
  std::vector<cplx> chirp_;
  std::vector<cplx> filter_;
};

}  // namespace sdft
