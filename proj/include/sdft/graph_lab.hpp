#pragma once

// Cycle and torus Laplacians, their analytic and numerical spectra, the
// multiplicity census, and the eigenbasis check that certifies DFT and SDFT
// rows as graph Fourier bases.

#include <Eigen/Dense>

#include "sdft/sdft2d.hpp"

namespace sdft {

inline constexpr double kEigenGroupingTolerance = 1e-8;

enum class GraphKind { cycle, torus };

inline const char* to_string(GraphKind kind) { return kind == GraphKind::cycle ? "cycle" : "torus"; }

/// L = D - A for the cycle C_N or the torus C_N x C_N. Dense storage plus
/// adjacency lists for O(degree) matrix-vector products.
class GraphLaplacian {
 public:
  GraphLaplacian(GraphKind kind, std::size_t n, std::vector<double> dense)
      : kind_(kind), n_(n), vertices_(kind == GraphKind::cycle ? n : n * n), dense_(std::move(dense)) {
    if (dense_.size() != vertices_ * vertices_) {
      throw Error(ErrorKind::size_mismatch, "GraphLaplacian: matrix has wrong size");
    }
    neighbors_.resize(vertices_);
    for (std::size_t i = 0; i < vertices_; ++i) {
      for (std::size_t j = 0; j < vertices_; ++j) {
        const double v = dense_[i * vertices_ + j];
        if (v != 0.0) neighbors_[i].push_back({j, v});
      }
    }
  }

  GraphKind kind() const noexcept { return kind_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t vertices() const noexcept { return vertices_; }
  double operator()(std::size_t i, std::size_t j) const { return dense_[i * vertices_ + j]; }
  const std::vector<double>& dense() const noexcept { return dense_; }

  std::vector<cplx> apply(std::span<const cplx> v) const {
    if (v.size() != vertices_) throw Error(ErrorKind::size_mismatch, "GraphLaplacian::apply: size mismatch");
    std::vector<cplx> out(vertices_);
    for (std::size_t i = 0; i < vertices_; ++i) {
      cplx acc{};
      for (const auto& [j, w] : neighbors_[i]) acc += w * v[j];
      out[i] = acc;
    }
    return out;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(vertices_, vertices_);
    for (std::size_t i = 0; i < vertices_; ++i) {
      for (std::size_t j = 0; j < vertices_; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dense_[i * vertices_ + j];
      }
    }
    return m;
  }

 private:
  struct Entry {
    std::size_t col;
    double value;
  };
  GraphKind kind_;
  std::size_t n_;
  std::size_t vertices_;
  std::vector<double> dense_;
  std::vector<std::vector<Entry>> neighbors_;
};

inline GraphLaplacian cycle_laplacian(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::unsupported_size, "cycle_laplacian: N must be >= 3");
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = 2.0;
    m[i * n + (i + 1) % n] = -1.0;
    m[i * n + (i + n - 1) % n] = -1.0;
  }
  return GraphLaplacian(GraphKind::cycle, n, std::move(m));
}

/// L(C_N) (x) I + I (x) L(C_N), vertex (m, n) at index m * N + n.
inline GraphLaplacian torus_laplacian(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::unsupported_size, "torus_laplacian: N must be >= 3");
  const GraphLaplacian c = cycle_laplacian(n);
  const std::size_t v = n * n;
  std::vector<double> m(v * v, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        // L (x) I: rows/cols (a, i), (b, i)
        m[(a * n + i) * v + (b * n + i)] += c(a, b);
        // I (x) L: rows/cols (i, a), (i, b)
        m[(i * n + a) * v + (i * n + b)] += c(a, b);
      }
    }
  }
  return GraphLaplacian(GraphKind::torus, n, std::move(m));
}

/// lambda_k = 2 - 2 cos(2 pi k / N), k = 0..N-1.
inline std::vector<double> cycle_eigenvalues(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::unsupported_size, "cycle_eigenvalues: N must be >= 3");
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // fold k onto 0..N/2 so lambda_k and lambda_{N-k} are bitwise equal
    const std::size_t f = std::min(k, n - k);
    out[k] = 2.0 - 2.0 * std::cos(kTwoPi * static_cast<double>(f) / static_cast<double>(n));
  }
  return out;
}

/// mu_{p,q} = lambda_p + lambda_q, flat index p * N + q.
inline std::vector<double> torus_eigenvalues(std::size_t n) {
  const std::vector<double> lambda = cycle_eigenvalues(n);
  std::vector<double> out(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) out[p * n + q] = lambda[p] + lambda[q];
  }
  return out;
}

/// Ascending eigenvalues from a dense symmetric eigensolver.
inline std::vector<double> numerical_eigenvalues(const GraphLaplacian& lap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap.to_eigen(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::invalid_input, "numerical_eigenvalues: eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

struct EigenGroup {
  double value = 0.0;  // mean of the group
  std::size_t multiplicity = 0;
};

/// Groups sorted values whose consecutive gaps are within `tol`.
inline std::vector<EigenGroup> group_eigenvalues(std::vector<double> values,
                                                 double tol = kEigenGroupingTolerance) {
  std::sort(values.begin(), values.end());
  std::vector<EigenGroup> groups;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i] - values[i - 1] > tol) {
      if (!groups.empty()) groups.back().value = sum / static_cast<double>(groups.back().multiplicity);
      groups.push_back({0.0, 0});
      sum = 0.0;
    }
    ++groups.back().multiplicity;
    sum += values[i];
  }
  if (!groups.empty()) groups.back().value = sum / static_cast<double>(groups.back().multiplicity);
  return groups;
}

struct CensusClass {
  std::string tag;
  std::vector<std::size_t> representative;
  std::vector<std::vector<std::size_t>> members;
  double mu = 0.0;
};

struct CensusMerge {
  double mu = 0.0;
  std::vector<std::vector<std::size_t>> representatives;  // classes sharing mu
  std::size_t analytic_multiplicity = 0;                  // sum of their sizes
  std::size_t observed_multiplicity = 0;                  // from the eigensolver
};

struct GraphSpectrumReport {
  GraphKind kind = GraphKind::cycle;
  std::size_t n = 0;
  std::vector<double> analytic_eigenvalues;
  std::vector<CensusClass> classes;
  std::vector<CensusMerge> merges;
  std::vector<EigenGroup> observed_groups;
  bool partition_ok = false;       // class members cover every index exactly once
  bool spectrum_ok = false;        // analytic and numerical multisets agree
  bool multiplicities_ok = false;  // each observed group is a union of classes
  double max_residual = 0.0;

  bool census_ok() const { return partition_ok && spectrum_ok && multiplicities_ok; }
};

namespace detail {

// Fills merges / observed groups / consistency flags once classes are set.
inline void finish_census(GraphSpectrumReport& report, const GraphLaplacian& lap,
                          std::size_t index_count) {
  std::vector<std::size_t> seen(index_count, 0);
  const std::size_t width = report.kind == GraphKind::cycle ? 1 : 2;
  for (const CensusClass& cls : report.classes) {
    for (const auto& member : cls.members) {
      const std::size_t flat = width == 1 ? member[0] : member[0] * report.n + member[1];
      if (flat < index_count) ++seen[flat];
    }
  }
  report.partition_ok = std::all_of(seen.begin(), seen.end(), [](std::size_t c) { return c == 1; });

  // analytic groups of classes by mu
  std::vector<std::size_t> order(report.classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return report.classes[a].mu < report.classes[b].mu;
  });
  std::vector<std::vector<std::size_t>> analytic_groups;
  for (std::size_t idx : order) {
    if (analytic_groups.empty() ||
        report.classes[idx].mu - report.classes[analytic_groups.back().back()].mu >
            kEigenGroupingTolerance) {
      analytic_groups.emplace_back();
    }
    analytic_groups.back().push_back(idx);
  }

  report.observed_groups = group_eigenvalues(numerical_eigenvalues(lap));

  report.spectrum_ok = true;
  report.multiplicities_ok = analytic_groups.size() == report.observed_groups.size();
  const std::vector<EigenGroup> analytic_multiset = group_eigenvalues(report.analytic_eigenvalues);
  if (analytic_multiset.size() != report.observed_groups.size()) {
    report.spectrum_ok = false;
  } else {
    for (std::size_t g = 0; g < analytic_multiset.size(); ++g) {
      if (analytic_multiset[g].multiplicity != report.observed_groups[g].multiplicity ||
          std::abs(analytic_multiset[g].value - report.observed_groups[g].value) > kEigenGroupingTolerance) {
        report.spectrum_ok = false;
      }
    }
  }

  for (const auto& group : analytic_groups) {
    const double mu = report.classes[group.front()].mu;
    std::size_t analytic = 0;
    for (std::size_t idx : group) analytic += report.classes[idx].members.size();
    std::size_t observed = 0;
    for (const EigenGroup& g : report.observed_groups) {
      if (std::abs(g.value - mu) <= kEigenGroupingTolerance) observed = g.multiplicity;
    }
    if (observed != analytic) report.multiplicities_ok = false;
    if (group.size() > 1) {
      CensusMerge merge;
      merge.mu = mu;
      for (std::size_t idx : group) merge.representatives.push_back(report.classes[idx].representative);
      merge.analytic_multiplicity = analytic;
      merge.observed_multiplicity = observed;
      report.merges.push_back(std::move(merge));
    }
  }
}

}  // namespace detail

/// Cycle census: singletons {0} and {N/2}, doubletons {k, N-k}.
inline GraphSpectrumReport multiplicity_census_1d(std::size_t n) {
  detail::require_sdft_size(n, "multiplicity_census_1d");
  GraphSpectrumReport report;
  report.kind = GraphKind::cycle;
  report.n = n;
  report.analytic_eigenvalues = cycle_eigenvalues(n);
  const auto& lambda = report.analytic_eigenvalues;
  report.classes.push_back({"M1", {0}, {{0}}, lambda[0]});
  for (std::size_t k = 1; k < n / 2; ++k) {
    report.classes.push_back({"M2", {k}, {{k}, {n - k}}, lambda[k]});
  }
  report.classes.push_back({"M1", {n / 2}, {{n / 2}}, lambda[n / 2]});
  detail::finish_census(report, cycle_laplacian(n), n);
  return report;
}

/// Torus census: the five index-symmetry classes plus the numerically
/// observed merges of distinct classes at equal mu.
inline GraphSpectrumReport multiplicity_census_2d(std::size_t n) {
  detail::require_sdft_size(n, "multiplicity_census_2d");
  GraphSpectrumReport report;
  report.kind = GraphKind::torus;
  report.n = n;
  report.analytic_eigenvalues = torus_eigenvalues(n);
  for (const EigenClass2D& cls : eigen_classes_2d(n)) {
    CensusClass entry;
    entry.tag = to_string(cls.tag);
    entry.representative = {cls.representative.p, cls.representative.q};
    for (const Index2& m : cls.members) entry.members.push_back({m.p, m.q});
    entry.mu = report.analytic_eigenvalues[cls.representative.p * n + cls.representative.q];
    report.classes.push_back(std::move(entry));
  }
  detail::finish_census(report, torus_laplacian(n), n * n);
  return report;
}

/// max_k ||L conj(row_k) - eigvals[k] conj(row_k)||_inf / max(1, ||row_k||_inf).
inline double verify_eigenbasis(const GraphLaplacian& lap, std::span<const BasisRow> rows,
                                std::span<const double> eigvals) {
  if (rows.size() != eigvals.size()) {
    throw Error(ErrorKind::size_mismatch, "verify_eigenbasis: row and eigenvalue counts differ");
  }
  double worst = 0.0;
  std::vector<cplx> v(lap.vertices());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& entries = rows[k].entries;
    if (entries.size() != lap.vertices()) {
      throw Error(ErrorKind::size_mismatch, "verify_eigenbasis: row length does not match the graph");
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = std::conj(entries[i]);
      norm = std::max(norm, std::abs(entries[i]));
    }
    const std::vector<cplx> lv = lap.apply(v);
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) res = std::max(res, std::abs(lv[i] - eigvals[k] * v[i]));
    worst = std::max(worst, res / std::max(1.0, norm));
  }
  return worst;
}

inline std::vector<BasisRow> sdft_rows_1d(const ThetaKey1D& key) {
  std::vector<BasisRow> rows;
  rows.reserve(key.n());
  for (std::size_t k = 0; k < key.n(); ++k) rows.push_back(sdft_basis_row_1d(key, k));
  return rows;
}

inline std::vector<BasisRow> sdft_rows_2d(const ThetaKey2D& key) {
  const std::size_t n = key.n();
  std::vector<BasisRow> rows;
  rows.reserve(n * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) rows.push_back(sdft_basis_row_2d(key, p, q));
  }
  return rows;
}

}  // namespace sdft
