#pragma once

// One-dimensional steerable DFT. The DFT rows v(k) and v(N-k) span the same
// eigenspace of the cycle-graph Laplacian, so any 2x2 rotation of that pair is
// again an eigenbasis. Because coefficients are x_hat = V x, rotating the rows
// is the same as rotating the coefficient pair after an ordinary FFT.

#include <algorithm>

#include "sdft/spectral_core.hpp"

namespace sdft {

/// Pairs (k, N-k) for k = 1..N/2-1 in ascending k; indices 0 and N/2 are fixed.
struct PairTable1D {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::pair<std::size_t, std::size_t> fixed_indices{0, 0};
};

inline PairTable1D pair_table_1d(std::size_t n) {
  detail::require_sdft_size(n, "pair_table_1d");
  PairTable1D table;
  table.n = n;
  table.fixed_indices = {0, n / 2};
  table.pairs.reserve(n / 2 - 1);
  for (std::size_t k = 1; k < n / 2; ++k) table.pairs.emplace_back(k, n - k);
  return table;
}

/// Rotation angles, one per pair; angles()[k-1] belongs to pair (k, N-k).
/// Angles are stored reduced into [0, 2 pi).
class ThetaKey1D {
 public:
  ThetaKey1D() = default;
  ThetaKey1D(std::size_t n, std::vector<double> angles) : n_(n), angles_(std::move(angles)) {
    detail::require_sdft_size(n, "ThetaKey1D");
    if (angles_.size() != n / 2 - 1) {
      throw Error(ErrorKind::size_mismatch,
                  "ThetaKey1D: expected " + std::to_string(n / 2 - 1) + " angles, got " +
                      std::to_string(angles_.size()));
    }
    for (double& a : angles_) {
      if (!std::isfinite(a)) throw Error(ErrorKind::invalid_input, "ThetaKey1D: non-finite angle");
      a = reduce_angle(a);
    }
  }

  static ThetaKey1D zeros(std::size_t n) {
    detail::require_sdft_size(n, "ThetaKey1D");
    return ThetaKey1D(n, std::vector<double>(n / 2 - 1, 0.0));
  }
  static ThetaKey1D uniform(std::size_t n, double theta) {
    detail::require_sdft_size(n, "ThetaKey1D");
    return ThetaKey1D(n, std::vector<double>(n / 2 - 1, theta));
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t pair_count() const noexcept { return angles_.size(); }
  const std::vector<double>& angles() const noexcept { return angles_; }
  /// Angle for pair (k, N-k), 1 <= k <= N/2-1.
  double angle_for(std::size_t k) const { return angles_.at(k - 1); }

  friend bool operator==(const ThetaKey1D&, const ThetaKey1D&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> angles_;
};

/// proper: [[c, s], [-s, c]] (det +1); improper: [[c, s], [s, -c]] (det -1).
enum class RotationKind { proper, improper };

inline std::pair<cplx, cplx> rotate_pair(cplx a, cplx b, double c, double s, RotationKind kind) {
  if (kind == RotationKind::proper) return {c * a + s * b, -s * a + c * b};
  return {c * a + s * b, s * a - c * b};
}

inline std::pair<cplx, cplx> rotate_pair(cplx a, cplx b, double theta,
                                         RotationKind kind = RotationKind::proper) {
  return rotate_pair(a, b, std::cos(theta), std::sin(theta), kind);
}

namespace detail {

inline void require_key_matches(std::size_t n, const ThetaKey1D& key, const char* what) {
  require_sdft_size(n, what);
  if (key.n() != n) {
    throw Error(ErrorKind::size_mismatch, std::string(what) + ": key is for N=" +
                                              std::to_string(key.n()) + ", data has N=" +
                                              std::to_string(n));
  }
}

}  // namespace detail

/// Reusable 1D SDFT: FFT plan plus the key's per-pair cosines and sines.
/// Immutable after construction.
class Sdft1dPlan {
 public:
  explicit Sdft1dPlan(const ThetaKey1D& key) : fft_(key.n()), n_(key.n()) {
    detail::require_sdft_size(n_, "Sdft1dPlan");
    cs_.reserve(key.pair_count());
    for (double a : key.angles()) cs_.push_back({std::cos(a), std::sin(a)});
  }

  std::size_t n() const noexcept { return n_; }
  const FftPlan& fft() const noexcept { return fft_; }

  /// Applies R(theta) (or R(theta)^T when `transpose`) to a coefficient vector in place.
  void rotate(std::span<cplx> coeffs, bool transpose = false) const {
    const double sign = transpose ? -1.0 : 1.0;
    for (std::size_t k = 1; k < n_ / 2; ++k) {
      const auto [c, s] = cs_[k - 1];
      const auto [a, b] =
          rotate_pair(coeffs[k], coeffs[n_ - k], c, sign * s, RotationKind::proper);
      coeffs[k] = a;
      coeffs[n_ - k] = b;
    }
  }

  Spectrum1D forward(const Signal1D& x) const {
    if (x.size() != n_) throw Error(ErrorKind::size_mismatch, "sdft_forward_1d: size mismatch");
    Spectrum1D out = dft_forward_1d(x, fft_);
    rotate(out.span());
    return out;
  }

  Signal1D inverse(const Spectrum1D& s) const {
    if (s.size() != n_) throw Error(ErrorKind::size_mismatch, "sdft_inverse_1d: size mismatch");
    detail::require_finite(s.span(), "sdft_inverse_1d");
    Spectrum1D tmp = s;
    rotate(tmp.span(), true);
    return dft_inverse_1d(tmp, fft_);
  }

 private:
  struct CosSin {
    double c;
    double s;
  };
  FftPlan fft_;
  std::size_t n_;
  std::vector<CosSin> cs_;
};

/// x_hat(theta) = R(theta) V x.
inline Spectrum1D sdft_forward_1d(const Signal1D& x, const ThetaKey1D& key) {
  detail::require_key_matches(x.size(), key, "sdft_forward_1d");
  return Sdft1dPlan(key).forward(x);
}

/// x = (1/N) V^H R(theta)^T x_hat.
inline Signal1D sdft_inverse_1d(const Spectrum1D& s, const ThetaKey1D& key) {
  detail::require_key_matches(s.size(), key, "sdft_inverse_1d");
  return Sdft1dPlan(key).inverse(s);
}

/// Row k of V(theta) (or of the improper-rotation variant).
inline BasisRow sdft_basis_row_1d(const ThetaKey1D& key, std::size_t k,
                                  RotationKind kind = RotationKind::proper) {
  const std::size_t n = key.n();
  if (k >= n) throw Error(ErrorKind::index_out_of_range, "sdft_basis_row_1d: index out of range");
  if (k == 0 || k == n / 2) return basis_row_1d(n, k);
  const std::size_t lo = std::min(k, n - k);
  const double theta = key.angle_for(lo);
  const BasisRow a = basis_row_1d(n, lo);
  const BasisRow b = basis_row_1d(n, n - lo);
  BasisRow row;
  row.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [first, second] = rotate_pair(a.entries[i], b.entries[i], theta, kind);
    row.entries[i] = (k == lo) ? first : second;
  }
  return row;
}

struct TracePoint {
  double theta;
  cplx first;   // x_hat'_k
  cplx second;  // x_hat'_{N-k}
};

/// Sweeps the angle of pair (k, N-k) over `samples` uniform points of
/// [0, 2 pi) with every other angle held at zero.
inline std::vector<TracePoint> coefficient_trace(const Signal1D& x, std::size_t k,
                                                 std::size_t samples) {
  detail::require_sdft_size(x.size(), "coefficient_trace");
  const std::size_t n = x.size();
  if (k < 1 || k >= n / 2) {
    throw Error(ErrorKind::index_out_of_range,
                "coefficient_trace: pair index must be in 1..N/2-1, got " + std::to_string(k));
  }
  const Spectrum1D base = dft_forward_1d(x);
  std::vector<TracePoint> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    const auto [a, b] = rotate_pair(base[k], base[n - k], theta);
    out.push_back({theta, a, b});
  }
  return out;
}

/// Fourier cosine coefficients sum_n x_n cos(2 pi k n / N) for k = 1..N/2-1
/// (element k-1), read off the all-pi/4 SDFT as x_hat'_k / sqrt(2).
inline std::vector<double> cosine_transform(const Signal1D& x) {
  detail::require_sdft_size(x.size(), "cosine_transform");
  detail::require_real(x.span(), "cosine_transform");
  const std::size_t n = x.size();
  const Spectrum1D s = sdft_forward_1d(x, ThetaKey1D::uniform(n, kPi / 4));
  std::vector<double> out(n / 2 - 1);
  for (std::size_t k = 1; k < n / 2; ++k) out[k - 1] = s[k].real() / std::numbers::sqrt2;
  return out;
}

/// Fourier sine coefficients s_k = sum_n x_n sin(2 pi (N-k) n / N) for
/// k = 1..N/2-1 (element k-1), so that x_hat'_{N-k} = -i sqrt(2) s_k.
inline std::vector<double> sine_transform(const Signal1D& x) {
  detail::require_sdft_size(x.size(), "sine_transform");
  detail::require_real(x.span(), "sine_transform");
  const std::size_t n = x.size();
  const Spectrum1D s = sdft_forward_1d(x, ThetaKey1D::uniform(n, kPi / 4));
  std::vector<double> out(n / 2 - 1);
  // -i sqrt2 s = x_hat'  =>  s = Im(x_hat') / -sqrt2
  for (std::size_t k = 1; k < n / 2; ++k) out[k - 1] = -s[n - k].imag() / std::numbers::sqrt2;
  return out;
}

namespace detail {

// (1/N) Vtilde(pi/4)^H V(-pi/4) x. Vtilde^H = V^H Rtilde^T and the improper
// matrix is symmetric, so the middle step is one more improper rotation.
inline Signal1D hilbert_composite(const Signal1D& x) {
  require_sdft_size(x.size(), "hilbert");
  require_real(x.span(), "hilbert");
  require_finite(x.span(), "hilbert");
  const std::size_t n = x.size();
  Spectrum1D s = sdft_forward_1d(x, ThetaKey1D::uniform(n, -kPi / 4));
  const double c = std::cos(kPi / 4);
  const double sn = std::sin(kPi / 4);
  for (std::size_t k = 1; k < n / 2; ++k) {
    const auto [a, b] = rotate_pair(s[k], s[n - k], c, sn, RotationKind::improper);
    s[k] = a;
    s[n - k] = b;
  }
  return dft_inverse_1d(s);
}

}  // namespace detail

/// Discrete Hilbert transform: Im of the improper/proper pi/4 composite.
inline Signal1D hilbert(const Signal1D& x) {
  Signal1D z = detail::hilbert_composite(x);
  for (cplx& v : z) v = {v.imag(), 0.0};
  return z;
}

/// Real part of the same composite: the projection onto DC and Nyquist.
inline Signal1D hilbert_real_part(const Signal1D& x) {
  Signal1D z = detail::hilbert_composite(x);
  for (cplx& v : z) v = {v.real(), 0.0};
  return z;
}

}  // namespace sdft
