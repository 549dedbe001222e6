#pragma once

// Two-dimensional steerable DFT on N x N grids. Symmetric mode rotates
// u(p,q) with u(q,p) (mu_{p,q} = mu_{q,p}); conjugate mode rotates u(p,q)
// with u(-p,-q) mod N, the 2D analogue of the 1D (k, N-k) pairing.

#include <array>
#include <map>

#include "sdft/sdft1d.hpp"

namespace sdft {

struct Index2 {
  std::size_t p = 0;
  std::size_t q = 0;
  friend auto operator<=>(const Index2&, const Index2&) = default;
};

enum class PairMode { symmetric, conjugate };

inline const char* to_string(PairMode mode) {
  return mode == PairMode::symmetric ? "2d-sym" : "2d-conj";
}

struct PairTable2D {
  std::size_t n = 0;
  PairMode mode = PairMode::symmetric;
  std::vector<std::pair<Index2, Index2>> pairs;  // (first, second), lexicographic by first
  std::vector<Index2> fixed_points;              // never rotated
};

inline PairTable2D pair_table_2d(std::size_t n, PairMode mode) {
  detail::require_sdft_size(n, "pair_table_2d");
  PairTable2D table;
  table.n = n;
  table.mode = mode;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const Index2 self{p, q};
      const Index2 partner = mode == PairMode::symmetric
                                 ? Index2{q, p}
                                 : Index2{detail::mod_neg(p, n), detail::mod_neg(q, n)};
      if (partner == self) {
        table.fixed_points.push_back(self);
      } else if (self < partner) {
        table.pairs.emplace_back(self, partner);
      }
    }
  }
  return table;
}

inline std::size_t pair_count_2d(std::size_t n, PairMode mode) {
  return mode == PairMode::symmetric ? n * (n - 1) / 2 : (n * n - 4) / 2;
}

/// One angle per table pair, in the table's lexicographic order; reduced into [0, 2 pi).
class ThetaKey2D {
 public:
  ThetaKey2D() = default;
  ThetaKey2D(std::size_t n, PairMode mode, std::vector<double> angles)
      : n_(n), mode_(mode), angles_(std::move(angles)) {
    detail::require_sdft_size(n, "ThetaKey2D");
    const std::size_t expected = pair_count_2d(n, mode);
    if (angles_.size() != expected) {
      throw Error(ErrorKind::size_mismatch,
                  "ThetaKey2D: expected " + std::to_string(expected) + " angles, got " +
                      std::to_string(angles_.size()));
    }
    for (double& a : angles_) {
      if (!std::isfinite(a)) throw Error(ErrorKind::invalid_input, "ThetaKey2D: non-finite angle");
      a = reduce_angle(a);
    }
  }

  static ThetaKey2D uniform(std::size_t n, PairMode mode, double theta) {
    detail::require_sdft_size(n, "ThetaKey2D");
    return ThetaKey2D(n, mode, std::vector<double>(pair_count_2d(n, mode), theta));
  }
  static ThetaKey2D zeros(std::size_t n, PairMode mode) { return uniform(n, mode, 0.0); }

  std::size_t n() const noexcept { return n_; }
  PairMode mode() const noexcept { return mode_; }
  const std::vector<double>& angles() const noexcept { return angles_; }

  friend bool operator==(const ThetaKey2D&, const ThetaKey2D&) = default;

 private:
  std::size_t n_ = 0;
  PairMode mode_ = PairMode::symmetric;
  std::vector<double> angles_;
};

namespace detail {

inline void require_key_matches(std::size_t n, const ThetaKey2D& key, const char* what) {
  require_sdft_size(n, what);
  if (key.n() != n) {
    throw Error(ErrorKind::size_mismatch, std::string(what) + ": key is for N=" +
                                              std::to_string(key.n()) + ", grid has N=" +
                                              std::to_string(n));
  }
}

inline void rotate_2d(std::span<cplx> coeffs, const ThetaKey2D& key, bool transpose) {
  const PairTable2D table = pair_table_2d(key.n(), key.mode());
  const std::size_t n = key.n();
  const double sign = transpose ? -1.0 : 1.0;
  for (std::size_t i = 0; i < table.pairs.size(); ++i) {
    const auto& [first, second] = table.pairs[i];
    const double theta = key.angles()[i];
    cplx& a = coeffs[first.p * n + first.q];
    cplx& b = coeffs[second.p * n + second.q];
    const auto [ra, rb] =
        rotate_pair(a, b, std::cos(theta), sign * std::sin(theta), RotationKind::proper);
    a = ra;
    b = rb;
  }
}

}  // namespace detail

inline Spectrum2D sdft_forward_2d(const Signal2D& x, const ThetaKey2D& key) {
  detail::require_key_matches(x.n(), key, "sdft_forward_2d");
  Spectrum2D s = dft_forward_2d(x);
  detail::rotate_2d(s.flat(), key, false);
  return s;
}

inline Signal2D sdft_inverse_2d(const Spectrum2D& s, const ThetaKey2D& key) {
  detail::require_key_matches(s.n(), key, "sdft_inverse_2d");
  detail::require_finite(s.flat(), "sdft_inverse_2d");
  Spectrum2D tmp = s;
  detail::rotate_2d(tmp.flat(), key, true);
  return dft_inverse_2d(tmp);
}

/// Symmetric pass followed by conjugate pass. The two passes do not commute,
/// so the order is fixed.
inline Spectrum2D sdft_forward_2d(const Signal2D& x, const ThetaKey2D& symmetric,
                                  const ThetaKey2D& conjugate) {
  if (symmetric.mode() != PairMode::symmetric || conjugate.mode() != PairMode::conjugate) {
    throw Error(ErrorKind::size_mismatch, "sdft_forward_2d: expected a 2d-sym key then a 2d-conj key");
  }
  detail::require_key_matches(x.n(), conjugate, "sdft_forward_2d");
  Spectrum2D s = sdft_forward_2d(x, symmetric);
  detail::rotate_2d(s.flat(), conjugate, false);
  return s;
}

inline Signal2D sdft_inverse_2d(const Spectrum2D& s, const ThetaKey2D& symmetric,
                                const ThetaKey2D& conjugate) {
  if (symmetric.mode() != PairMode::symmetric || conjugate.mode() != PairMode::conjugate) {
    throw Error(ErrorKind::size_mismatch, "sdft_inverse_2d: expected a 2d-sym key then a 2d-conj key");
  }
  detail::require_key_matches(s.n(), conjugate, "sdft_inverse_2d");
  detail::require_finite(s.flat(), "sdft_inverse_2d");
  Spectrum2D tmp = s;
  detail::rotate_2d(tmp.flat(), conjugate, true);
  return sdft_inverse_2d(tmp, symmetric);
}

/// Row (p, q) of V(theta) for the key's pairing.
inline BasisRow sdft_basis_row_2d(const ThetaKey2D& key, std::size_t p, std::size_t q) {
  const std::size_t n = key.n();
  if (p >= n || q >= n) throw Error(ErrorKind::index_out_of_range, "sdft_basis_row_2d: index out of range");
  const PairTable2D table = pair_table_2d(n, key.mode());
  const Index2 target{p, q};
  for (std::size_t i = 0; i < table.pairs.size(); ++i) {
    const auto& [first, second] = table.pairs[i];
    if (first != target && second != target) continue;
    const BasisRow a = basis_row_2d(n, first.p, first.q);
    const BasisRow b = basis_row_2d(n, second.p, second.q);
    const double theta = key.angles()[i];
    BasisRow row;
    row.entries.resize(n * n);
    for (std::size_t j = 0; j < n * n; ++j) {
      const auto [ra, rb] = rotate_pair(a.entries[j], b.entries[j], theta);
      row.entries[j] = (first == target) ? ra : rb;
    }
    return row;
  }
  return basis_row_2d(n, p, q);
}

struct RealImagReport {
  double max_real_deviation = 0.0;
  double max_imag_deviation = 0.0;
  double max_deviation() const { return std::max(max_real_deviation, max_imag_deviation); }
};

/// For a real grid, checks that each pair rotation acts on the real parts and
/// on the imaginary parts as two independent planar rotations.
inline RealImagReport real_imag_rotation_check(const Signal2D& x, const ThetaKey2D& key) {
  detail::require_real(x.flat(), "real_imag_rotation_check");
  const Spectrum2D base = dft_forward_2d(x);
  const Spectrum2D rotated = sdft_forward_2d(x, key);
  const PairTable2D table = pair_table_2d(key.n(), key.mode());
  const std::size_t n = key.n();
  RealImagReport report;
  for (std::size_t i = 0; i < table.pairs.size(); ++i) {
    const auto& [first, second] = table.pairs[i];
    const cplx a = base(first.p, first.q);
    const cplx b = base(second.p, second.q);
    const double c = std::cos(key.angles()[i]);
    const double s = std::sin(key.angles()[i]);
    const double re_a = c * a.real() + s * b.real();
    const double re_b = -s * a.real() + c * b.real();
    const double im_a = c * a.imag() + s * b.imag();
    const double im_b = -s * a.imag() + c * b.imag();
    const cplx ra = rotated[first.p * n + first.q];
    const cplx rb = rotated[second.p * n + second.q];
    report.max_real_deviation = std::max(
        {report.max_real_deviation, std::abs(ra.real() - re_a), std::abs(rb.real() - re_b)});
    report.max_imag_deviation = std::max(
        {report.max_imag_deviation, std::abs(ra.imag() - im_a), std::abs(rb.imag() - im_b)});
  }
  return report;
}

/// Angle that moves all real-part energy of (a, b) into the first slot:
/// atan2(Re b, Re a), which leaves Re a' >= 0 and Re b' = 0. Zero when both
/// real parts vanish.
inline double compaction_angle(cplx a, cplx b) {
  if (a.real() == 0.0 && b.real() == 0.0) return 0.0;
  return std::atan2(b.real(), a.real());
}

struct CompactionResult {
  Spectrum2D spectrum;
  ThetaKey2D key;
};

inline CompactionResult compact_spectrum_2d(const Signal2D& x) {
  detail::require_sdft_size(x.n(), "compact_spectrum_2d");
  const Spectrum2D base = dft_forward_2d(x);
  const PairTable2D table = pair_table_2d(x.n(), PairMode::symmetric);
  std::vector<double> angles;
  angles.reserve(table.pairs.size());
  for (const auto& [first, second] : table.pairs) {
    angles.push_back(compaction_angle(base(first.p, first.q), base(second.p, second.q)));
  }
  ThetaKey2D key(x.n(), PairMode::symmetric, std::move(angles));
  Spectrum2D s = base;
  detail::rotate_2d(s.flat(), key, false);
  return {std::move(s), std::move(key)};
}

// ---------------------------------------------------------------------------
// Index classes of the torus spectrum

enum class ClassTag { M8, M4_diag, M4_axis, M2_cross, M1 };

inline const char* to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::M8: return "M8";
    case ClassTag::M4_diag: return "M4-diag";
    case ClassTag::M4_axis: return "M4-axis";
    case ClassTag::M2_cross: return "M2-cross";
    case ClassTag::M1: return "M1";
  }
  return "?";
}

inline std::size_t class_size(ClassTag tag) {
  switch (tag) {
    case ClassTag::M8: return 8;
    case ClassTag::M4_diag:
    case ClassTag::M4_axis: return 4;
    case ClassTag::M2_cross: return 2;
    case ClassTag::M1: return 1;
  }
  return 0;
}

/// Indices that share mu_{p,q} through the symmetries p <-> q, p <-> N-p, q <-> N-q.
struct EigenClass2D {
  ClassTag tag = ClassTag::M1;
  Index2 representative;
  std::vector<Index2> members;
};

/// Partitions {0..N-1}^2 into index classes, ordered by representative.
/// The representative is (min, max) of the folded indices min(i, N-i).
inline std::vector<EigenClass2D> eigen_classes_2d(std::size_t n) {
  detail::require_sdft_size(n, "eigen_classes_2d");
  const std::size_t half = n / 2;
  auto fold = [n](std::size_t i) { return std::min(i, n - i); };
  std::map<Index2, std::vector<Index2>> groups;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t a = fold(p);
      const std::size_t b = fold(q);
      groups[Index2{std::min(a, b), std::max(a, b)}].push_back({p, q});
    }
  }
  auto is_edge = [half](std::size_t i) { return i == 0 || i == half; };
  std::vector<EigenClass2D> out;
  out.reserve(groups.size());
  for (auto& [rep, members] : groups) {
    EigenClass2D cls;
    cls.representative = rep;
    cls.members = std::move(members);
    if (is_edge(rep.p) && is_edge(rep.q)) {
      cls.tag = rep.p == rep.q ? ClassTag::M1 : ClassTag::M2_cross;
    } else if (is_edge(rep.p) || is_edge(rep.q)) {
      cls.tag = ClassTag::M4_axis;
    } else {
      cls.tag = rep.p == rep.q ? ClassTag::M4_diag : ClassTag::M8;
    }
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace sdft
