#pragma once

// Applications built on pi/4 and keyed rotations: circular even/odd parity
// filters (1D and 2D) and the half-spectrum scrambler with its key generator.

#include <cstdint>
#include <optional>

#include "sdft/sdft2d.hpp"

namespace sdft {

enum class Parity { even, odd };

/// Even (x_n + x_{-n})/2 or odd (x_n - x_{-n})/2 component via the all-pi/4
/// SDFT: the lower member of each pair holds the cosine (even) part and the
/// upper member the sine (odd) part. With `bands`, only the listed pair
/// indices are filtered; every other coefficient, DC and Nyquist included,
/// passes through unchanged.
inline Signal1D parity_filter_1d(const Signal1D& x, Parity part,
                                 const std::optional<std::vector<std::size_t>>& bands = std::nullopt) {
  detail::require_sdft_size(x.size(), "parity_filter_1d");
  detail::require_real(x.span(), "parity_filter_1d");
  const std::size_t n = x.size();
  std::vector<bool> selected(n / 2, !bands.has_value());
  if (bands) {
    for (std::size_t k : *bands) {
      if (k < 1 || k >= n / 2) {
        throw Error(ErrorKind::index_out_of_range,
                    "parity_filter_1d: band index must be in 1..N/2-1, got " + std::to_string(k));
      }
      selected[k] = true;
    }
  }
  const Sdft1dPlan plan(ThetaKey1D::uniform(n, kPi / 4));
  Spectrum1D s = plan.forward(x);
  if (!bands) {
    if (part == Parity::odd) {
      s[0] = 0.0;
      s[n / 2] = 0.0;
    }
  }
  for (std::size_t k = 1; k < n / 2; ++k) {
    if (!selected[k]) continue;
    if (part == Parity::even) {
      s[n - k] = 0.0;
    } else {
      s[k] = 0.0;
    }
  }
  Signal1D out = plan.inverse(s);
  for (cplx& v : out) v = {v.real(), 0.0};
  return out;
}

/// Centro-symmetric parity E = (X_{m,n} + X_{-m,-n})/2 or its complement,
/// from pi/4 rotations of the conjugate pairs u(p,q), u(-p,-q).
inline Signal2D parity_filter_2d(const Signal2D& x, Parity part) {
  detail::require_sdft_size(x.n(), "parity_filter_2d");
  detail::require_real(x.flat(), "parity_filter_2d");
  const std::size_t n = x.n();
  const ThetaKey2D key = ThetaKey2D::uniform(n, PairMode::conjugate, kPi / 4);
  Spectrum2D s = sdft_forward_2d(x, key);
  const PairTable2D table = pair_table_2d(n, PairMode::conjugate);
  for (const auto& [first, second] : table.pairs) {
    if (part == Parity::even) {
      s(second.p, second.q) = 0.0;
    } else {
      s(first.p, first.q) = 0.0;
    }
  }
  if (part == Parity::odd) {
    for (const Index2& f : table.fixed_points) s(f.p, f.q) = 0.0;
  }
  Signal2D out = sdft_inverse_2d(s, key);
  for (cplx& v : out.flat()) v = {v.real(), 0.0};
  return out;
}

// ---------------------------------------------------------------------------
// Keyed scrambling

/// SplitMix64 stream; `next_unit` yields 53-bit uniforms in [0, 1).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class KeyPurpose { general, scramble };

inline const char* to_string(KeyPurpose p) { return p == KeyPurpose::general ? "general" : "scramble"; }

inline constexpr double kScrambleMargin = 1e-3;    // required |cos +- sin|
inline constexpr double kKeygenAngleMargin = 0.01;  // keygen keeps angles this far from +-pi/4

/// Deterministic key from a 64-bit seed. general: theta = 2 pi u;
/// scramble: theta in (-pi/4, pi/4) with 0.01 rad clearance at both ends.
inline ThetaKey1D keygen(std::uint64_t seed, std::size_t n, KeyPurpose purpose) {
  detail::require_sdft_size(n, "keygen");
  SplitMix64 rng(seed);
  std::vector<double> angles(n / 2 - 1);
  for (double& a : angles) {
    const double u = rng.next_unit();
    if (purpose == KeyPurpose::general) {
      a = kTwoPi * u;
    } else {
      a = -kPi / 4 + kKeygenAngleMargin + u * (kPi / 2 - 2 * kKeygenAngleMargin);
    }
  }
  return ThetaKey1D(n, std::move(angles));
}

/// A ThetaKey1D whose angles all keep |cos - sin| and |cos + sin| >= 1e-3.
class ScrambleKey {
 public:
  explicit ScrambleKey(ThetaKey1D key) : key_(std::move(key)) {
    for (std::size_t i = 0; i < key_.pair_count(); ++i) {
      const double a = key_.angles()[i];
      const double c = std::cos(a);
      const double s = std::sin(a);
      if (std::abs(c - s) < kScrambleMargin || std::abs(c + s) < kScrambleMargin) {
        throw Error(ErrorKind::degenerate_key,
                    "scramble key angle for pair " + std::to_string(i + 1) +
                        " is too close to an odd multiple of pi/4");
      }
    }
  }
  const ThetaKey1D& key() const noexcept { return key_; }
  std::size_t n() const noexcept { return key_.n(); }

 private:
  ThetaKey1D key_;
};

/// SDFT coefficients 0..N/2 of a real signal; the Nyquist term is kept so the
/// payload is lossless.
struct ScramblePayload {
  std::size_t n = 0;
  std::vector<cplx> coefficients;
};

inline ScramblePayload scramble(const Signal1D& x, const ScrambleKey& key) {
  detail::require_key_matches(x.size(), key.key(), "scramble");
  detail::require_real(x.span(), "scramble");
  const Spectrum1D s = sdft_forward_1d(x, key.key());
  const std::size_t n = x.size();
  ScramblePayload out;
  out.n = n;
  out.coefficients.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n / 2 + 1));
  out.coefficients[0] = {out.coefficients[0].real(), 0.0};
  out.coefficients[n / 2] = {out.coefficients[n / 2].real(), 0.0};
  return out;
}

/// For real x, x_hat'_k = c x_hat_k + s conj(x_hat_k), so the real part scales
/// by (c + s) and the imaginary part by (c - s). Undo both, rebuild the upper
/// half by conjugate symmetry, and invert the DFT.
inline Signal1D descramble(const ScramblePayload& payload, const ScrambleKey& key) {
  const std::size_t n = payload.n;
  detail::require_key_matches(n, key.key(), "descramble");
  if (payload.coefficients.size() != n / 2 + 1) {
    throw Error(ErrorKind::size_mismatch, "descramble: payload must hold N/2+1 coefficients");
  }
  detail::require_finite(payload.coefficients, "descramble");
  Spectrum1D freq(n);
  freq[0] = payload.coefficients[0].real();
  freq[n / 2] = payload.coefficients[n / 2].real();
  for (std::size_t k = 1; k < n / 2; ++k) {
    const double theta = key.key().angle_for(k);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx rotated = payload.coefficients[k];
    const cplx original{rotated.real() / (c + s), rotated.imag() / (c - s)};
    freq[k] = original;
    freq[n - k] = std::conj(original);
  }
  Signal1D out = dft_inverse_1d(freq);
  for (cplx& v : out) v = {v.real(), 0.0};
  return out;
}

}  // namespace sdft
