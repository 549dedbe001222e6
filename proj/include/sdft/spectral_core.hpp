#pragma once

// DFT engines and DFT basis rows. Forward transforms are unnormalized
// (x_hat_k = sum_n x_n e^{-i 2 pi k n / N}); inverses carry the 1/N or 1/N^2.

#include "sdft/fft.hpp"

namespace sdft {

inline Spectrum1D dft_forward_1d(const Signal1D& x, const FftPlan& plan) {
  detail::require_finite(x.span(), "dft_forward_1d");
  Spectrum1D out(x.size());
  plan.forward(x.span(), out.span());
  return out;
}

inline Spectrum1D dft_forward_1d(const Signal1D& x) {
  if (x.size() == 0) throw Error(ErrorKind::unsupported_size, "dft_forward_1d: empty input");
  return dft_forward_1d(x, FftPlan(x.size()));
}

inline Signal1D dft_inverse_1d(const Spectrum1D& s, const FftPlan& plan) {
  detail::require_finite(s.span(), "dft_inverse_1d");
  Signal1D out(s.size());
  plan.backward(s.span(), out.span());
  const double scale = 1.0 / static_cast<double>(s.size());
  for (cplx& v : out) v *= scale;
  return out;
}

inline Signal1D dft_inverse_1d(const Spectrum1D& s) {
  if (s.size() == 0) throw Error(ErrorKind::unsupported_size, "dft_inverse_1d: empty input");
  return dft_inverse_1d(s, FftPlan(s.size()));
}

namespace detail {

// Rows along n, then columns along m. `inverse` selects the e^{+i} kernel.
inline void transform_2d(std::span<cplx> grid, std::size_t n, const FftPlan& plan, bool inverse) {
  std::vector<cplx> line(n);
  for (std::size_t m = 0; m < n; ++m) {
    auto row = grid.subspan(m * n, n);
    if (inverse) {
      plan.backward(row, row);
    } else {
      plan.forward(row, row);
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t m = 0; m < n; ++m) line[m] = grid[m * n + c];
    if (inverse) {
      plan.backward(line, line);
    } else {
      plan.forward(line, line);
    }
    for (std::size_t m = 0; m < n; ++m) grid[m * n + c] = line[m];
  }
}

}  // namespace detail

inline Spectrum2D dft_forward_2d(const Signal2D& x) {
  if (x.n() == 0 || x.size() != x.n() * x.n()) {
    throw Error(ErrorKind::invalid_input, "dft_forward_2d: input must be a non-empty square grid");
  }
  detail::require_finite(x.flat(), "dft_forward_2d");
  Spectrum2D out(x.n(), x.values());
  detail::transform_2d(out.flat(), x.n(), FftPlan(x.n()), false);
  return out;
}

inline Signal2D dft_inverse_2d(const Spectrum2D& s) {
  if (s.n() == 0 || s.size() != s.n() * s.n()) {
    throw Error(ErrorKind::invalid_input, "dft_inverse_2d: input must be a non-empty square grid");
  }
  detail::require_finite(s.flat(), "dft_inverse_2d");
  Signal2D out(s.n(), s.values());
  detail::transform_2d(out.flat(), s.n(), FftPlan(s.n()), true);
  const double scale = 1.0 / static_cast<double>(s.n() * s.n());
  for (cplx& v : out.flat()) v *= scale;
  return out;
}

/// e^{-i 2 pi k n / N} with k*n reduced mod N, so large indices stay exact.
inline cplx unit_phasor(std::size_t k, std::size_t n, std::size_t size) {
  const std::size_t r = static_cast<std::size_t>(
      (static_cast<unsigned long long>(k % size) * (n % size)) % size);
  const double angle = -kTwoPi * static_cast<double>(r) / static_cast<double>(size);
  return {std::cos(angle), std::sin(angle)};
}

/// Row k of the DFT matrix: entries[n] = rho_k^n, rho_k = e^{-i 2 pi k / N}.
inline BasisRow basis_row_1d(std::size_t n, std::size_t k) {
  if (n == 0 || k >= n) {
    throw Error(ErrorKind::index_out_of_range,
                "basis_row_1d: index " + std::to_string(k) + " out of range for N=" + std::to_string(n));
  }
  BasisRow row;
  row.entries.resize(n);
  for (std::size_t i = 0; i < n; ++i) row.entries[i] = unit_phasor(k, i, n);
  return row;
}

/// Row p*N + q of the 2D DFT matrix; entry m*N + n equals rho_p^m rho_q^n.
inline BasisRow basis_row_2d(std::size_t n, std::size_t p, std::size_t q) {
  if (n == 0 || p >= n || q >= n) {
    throw Error(ErrorKind::index_out_of_range, "basis_row_2d: index out of range");
  }
  BasisRow row;
  row.entries.resize(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    const cplx outer = unit_phasor(p, m, n);
    for (std::size_t c = 0; c < n; ++c) row.entries[m * n + c] = outer * unit_phasor(q, c, n);
  }
  return row;
}

}  // namespace sdft
