#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdft {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
  invalid_input,
  unsupported_size,
  size_mismatch,
  index_out_of_range,
  degenerate_key,
  format,
};

/// Every failure in the library is reported through this type; `kind()`
/// lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {
struct signal_tag {};
struct spectrum_tag {};
}  // namespace detail

/// One-dimensional complex array. The tag keeps vertex-domain signals and
/// transform-domain spectra from being passed for one another.
template <class Tag>
class Array1D {
 public:
  Array1D() = default;
  explicit Array1D(std::size_t n) : data_(n) {}
  explicit Array1D(std::vector<cplx> values) : data_(std::move(values)) {}

  static Array1D from_real(std::span<const double> values) {
    Array1D out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.data_[i] = values[i];
    return out;
  }

  std::size_t size() const noexcept { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }

  std::span<cplx> span() noexcept { return data_; }
  std::span<const cplx> span() const noexcept { return data_; }
  std::vector<cplx>& values() noexcept { return data_; }
  const std::vector<cplx>& values() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  friend bool operator==(const Array1D&, const Array1D&) = default;

 private:
  std::vector<cplx> data_;
};

/// Square N x N complex grid; element (m, n) lives at flat index m * N + n.
template <class Tag>
class Grid2D {
 public:
  Grid2D() = default;
  explicit Grid2D(std::size_t n) : n_(n), data_(n * n) {}
  Grid2D(std::size_t n, std::vector<cplx> flat) : n_(n), data_(std::move(flat)) {
    if (data_.size() != n_ * n_) {
      throw Error(ErrorKind::invalid_input,
                  "grid data does not hold N*N values for N=" + std::to_string(n_));
    }
  }

  /// Builds a grid from row-major rows; rejects ragged or non-square input.
  static Grid2D from_rows(const std::vector<std::vector<cplx>>& rows) {
    const std::size_t n = rows.size();
    Grid2D out(n);
    for (std::size_t m = 0; m < n; ++m) {
      if (rows[m].size() != n) {
        throw Error(ErrorKind::invalid_input, "2D input is not square");
      }
      for (std::size_t c = 0; c < n; ++c) out(m, c) = rows[m][c];
    }
    return out;
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }

  cplx& operator()(std::size_t m, std::size_t c) { return data_[m * n_ + c]; }
  const cplx& operator()(std::size_t m, std::size_t c) const { return data_[m * n_ + c]; }
  cplx& operator[](std::size_t flat) { return data_[flat]; }
  const cplx& operator[](std::size_t flat) const { return data_[flat]; }

  std::span<cplx> flat() noexcept { return data_; }
  std::span<const cplx> flat() const noexcept { return data_; }
  std::vector<cplx>& values() noexcept { return data_; }
  const std::vector<cplx>& values() const noexcept { return data_; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

using Signal1D = Array1D<detail::signal_tag>;
using Spectrum1D = Array1D<detail::spectrum_tag>;
using Signal2D = Grid2D<detail::signal_tag>;
using Spectrum2D = Grid2D<detail::spectrum_tag>;

/// Unnormalized transform basis vector (unit-modulus entries).
struct BasisRow {
  std::vector<cplx> entries;
};

namespace detail {

inline void require_finite(std::span<const cplx> values, const char* what) {
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorKind::invalid_input, std::string(what) + ": non-finite value");
    }
  }
}

inline void require_real(std::span<const cplx> values, const char* what) {
  for (const cplx& v : values) {
    if (v.imag() != 0.0) {
      throw Error(ErrorKind::invalid_input, std::string(what) + ": input must be real");
    }
  }
}

/// SDFT structure needs an even length of at least four.
inline void require_sdft_size(std::size_t n, const char* what) {
  if (n < 4 || n % 2 != 0) {
    throw Error(ErrorKind::unsupported_size,
                std::string(what) + ": N must be even and >= 4, got " + std::to_string(n));
  }
}

inline std::size_t mod_neg(std::size_t i, std::size_t n) { return (n - i % n) % n; }

}  // namespace detail

/// Reduces an angle into [0, 2*pi).
inline double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace sdft
