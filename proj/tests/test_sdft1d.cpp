#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sdft/graph_lab.hpp"
#include "sdft/sdft1d.hpp"

namespace sdft {
namespace {

using oracle::rel_err;
const double kSqrt2 = std::sqrt(2.0);

/// Dense V(theta) = R(theta) V.
oracle::Matrix dense_sdft(std::size_t n, const std::vector<double>& angles, bool improper = false) {
  return oracle::multiply(oracle::rotation_matrix(n, oracle::pairs_1d(n), angles, improper),
                          oracle::dft_matrix(n));
}

TEST(PairTable1d, SmallSizes) {
  const auto t4 = pair_table_1d(4);
  EXPECT_EQ(t4.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}}));
  EXPECT_EQ(t4.fixed_indices, (std::pair<std::size_t, std::size_t>{0, 2}));
  const auto t8 = pair_table_1d(8);
  EXPECT_EQ(t8.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 7}, {2, 6}, {3, 5}}));
  EXPECT_EQ(t8.fixed_indices, (std::pair<std::size_t, std::size_t>{0, 4}));
  const auto t6 = pair_table_1d(6);
  EXPECT_EQ(t6.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 5}, {2, 4}}));
  EXPECT_EQ(t6.fixed_indices, (std::pair<std::size_t, std::size_t>{0, 3}));
}

TEST(PairTable1d, CoversEveryIndexOnce) {
  for (std::size_t n = 4; n <= 64; n += 2) {
    const auto t = pair_table_1d(n);
    EXPECT_EQ(t.pairs.size(), n / 2 - 1);
    std::vector<int> seen(n, 0);
    for (auto [a, b] : t.pairs) {
      ++seen[a];
      ++seen[b];
    }
    ++seen[t.fixed_indices.first];
    ++seen[t.fixed_indices.second];
    for (int c : seen) EXPECT_EQ(c, 1);
  }
}

TEST(PairTable1d, RejectsOddOrSmall) {
  for (std::size_t n : {0u, 2u, 3u, 7u}) {
    try {
      pair_table_1d(n);
      FAIL() << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::unsupported_size);
    }
  }
}

TEST(ThetaKey1d, ValidatesAndReduces) {
  EXPECT_THROW(ThetaKey1D(8, {0.1, 0.2}), Error);
  EXPECT_THROW(ThetaKey1D(8, {0.1, 0.2, std::nan("")}), Error);
  EXPECT_THROW(ThetaKey1D(7, {0.1, 0.2, 0.3}), Error);
  const ThetaKey1D k(8, {-0.5, 7.0, 2 * kPi});
  EXPECT_NEAR(k.angles()[0], kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(k.angles()[1], 7.0 - kTwoPi, 1e-15);
  EXPECT_EQ(k.angles()[2], 0.0);
  for (double a : k.angles()) {
    EXPECT_GE(a, 0.0);
    EXPECT_LT(a, kTwoPi);
  }
}

TEST(RotatePair, Examples) {
  const cplx a{3, 4};
  const cplx b{1, -2};
  const auto [a0, b0] = rotate_pair(a, b, 0.0);
  EXPECT_EQ(a0, a);
  EXPECT_EQ(b0, b);
  const auto [q1, q2] = rotate_pair(1.0, 0.0, kPi / 2);
  EXPECT_LT(std::abs(q1), 1e-16);
  EXPECT_LT(std::abs(q2 - cplx(-1, 0)), 1e-16);
  const auto [r1, r2] = rotate_pair(a, b, 0.7);
  EXPECT_NEAR(std::norm(r1) + std::norm(r2), 30.0, 1e-12);
  const auto [i1, i2] = rotate_pair(a, b, 0.7, RotationKind::improper);
  EXPECT_NEAR(std::norm(i1) + std::norm(i2), 30.0, 1e-12);
}

TEST(RotatePair, Determinants) {
  for (double t : {0.0, 0.3, 2.0, 5.5}) {
    const auto [e1a, e1b] = rotate_pair(1.0, 0.0, t);
    const auto [e2a, e2b] = rotate_pair(0.0, 1.0, t);
    EXPECT_NEAR((e1a * e2b - e1b * e2a).real(), 1.0, 1e-15);
    const auto [f1a, f1b] = rotate_pair(1.0, 0.0, t, RotationKind::improper);
    const auto [f2a, f2b] = rotate_pair(0.0, 1.0, t, RotationKind::improper);
    EXPECT_NEAR((f1a * f2b - f1b * f2a).real(), -1.0, 1e-15);
  }
}

TEST(SdftForward1d, ZeroKeyIsDft) {
  const Signal1D x(oracle::random_real(16, 1));
  EXPECT_EQ(sdft_forward_1d(x, ThetaKey1D::zeros(16)), dft_forward_1d(x));
}

TEST(SdftForward1d, QuarterPiOnLength4) {
  const Signal1D x(std::vector<cplx>{1, 2, 3, 4});
  const Spectrum1D s = sdft_forward_1d(x, ThetaKey1D::uniform(4, kPi / 4));
  const std::vector<cplx> expected{10, -2 * kSqrt2, -2, {0, -2 * kSqrt2}};
  EXPECT_LE(oracle::max_abs_diff(s.values(), expected), 1e-14);
  // dense oracle agrees
  EXPECT_LE(oracle::max_abs_diff(oracle::apply(dense_sdft(4, {kPi / 4}), x.values()), expected), 1e-14);
}

TEST(SdftForward1d, MatchesDenseOracle) {
  for (std::size_t n = 4; n <= 32; n += 2) {
    const auto x = oracle::random_complex(n, 7 * n);
    const auto angles = oracle::random_angles(n / 2 - 1, 3 * n);
    const Spectrum1D fast = sdft_forward_1d(Signal1D(x), ThetaKey1D(n, angles));
    EXPECT_LE(rel_err(fast.values(), oracle::apply(dense_sdft(n, angles), x)), 1e-11) << "N=" << n;
  }
}

TEST(SdftForward1d, Errors) {
  const Signal1D x(oracle::random_real(8, 2));
  try {
    sdft_forward_1d(x, ThetaKey1D::zeros(10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_mismatch);
  }
  try {
    sdft_forward_1d(Signal1D(oracle::random_real(7, 2)), ThetaKey1D::zeros(8));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_size);
  }
}

TEST(SdftInverse1d, ZeroKeyIsInverseDft) {
  const Spectrum1D s(oracle::random_complex(8, 4));
  EXPECT_EQ(sdft_inverse_1d(s, ThetaKey1D::zeros(8)), dft_inverse_1d(s));
}

TEST(SdftInverse1d, RoundTrip) {
  const auto x = oracle::random_complex(8, 12);
  const ThetaKey1D key(8, oracle::random_angles(3, 13));
  EXPECT_LE(rel_err(sdft_inverse_1d(sdft_forward_1d(Signal1D(x), key), key).values(), x), 1e-11);
}

TEST(SdftInverse1d, UnitImpulseMatchesDenseAdjoint) {
  const std::size_t n = 8;
  const std::vector<double> angles{kPi / 3, 0.0, 0.0};
  Spectrum1D e1(n);
  e1[1] = 1.0;
  const Signal1D x = sdft_inverse_1d(e1, ThetaKey1D(n, angles));
  // (1/N) V(theta)^H e_1 = (1/N) conj(row 1 of V(theta))
  auto adj = oracle::adjoint(dense_sdft(n, angles));
  std::vector<cplx> unit(n);
  unit[1] = 1.0;
  auto expected = oracle::apply(adj, unit);
  for (cplx& v : expected) v /= static_cast<double>(n);
  EXPECT_LE(oracle::max_abs_diff(x.values(), expected), 1e-15);
  // same thing written out with the 1D basis rows
  const auto v1 = basis_row_1d(n, 1).entries;
  const auto v7 = basis_row_1d(n, 7).entries;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx row = std::cos(kPi / 3) * v1[i] + std::sin(kPi / 3) * v7[i];
    EXPECT_LT(std::abs(x[i] - std::conj(row) / 8.0), 1e-15);
  }
}

TEST(SdftProperties, DenseUnitarityUpToN) {
  for (std::size_t n = 4; n <= 32; n += 4) {
    const auto v = dense_sdft(n, oracle::random_angles(n / 2 - 1, n));
    const auto g = oracle::multiply(v, oracle::adjoint(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(g[i][j] - (i == j ? static_cast<double>(n) : 0.0)));
    EXPECT_LE(worst, 1e-10) << "N=" << n;
  }
}

TEST(SdftProperties, PairwiseEnergyAndPeriodicity) {
  const std::size_t n = 16;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const Signal1D x(oracle::random_complex(n, 500 + trial));
    const auto angles = oracle::random_angles(n / 2 - 1, 600 + trial);
    const Spectrum1D base = dft_forward_1d(x);
    const Spectrum1D rot = sdft_forward_1d(x, ThetaKey1D(n, angles));
    for (std::size_t k = 1; k < n / 2; ++k) {
      const double before = std::norm(base[k]) + std::norm(base[n - k]);
      const double after = std::norm(rot[k]) + std::norm(rot[n - k]);
      EXPECT_NEAR(after, before, 1e-10 * std::max(before, 1e-14));
    }
    EXPECT_EQ(rot[0], base[0]);
    EXPECT_EQ(rot[n / 2], base[n / 2]);
    std::vector<double> shifted = angles;
    for (double& a : shifted) a += kTwoPi;
    EXPECT_LE(rel_err(sdft_forward_1d(x, ThetaKey1D(n, shifted)).values(), rot.values()), 1e-12);
  }
}

TEST(SdftProperties, AngleAdditivity) {
  const std::size_t n = 12;
  const auto a1 = oracle::random_angles(n / 2 - 1, 1);
  const auto a2 = oracle::random_angles(n / 2 - 1, 2);
  std::vector<double> sum(a1.size());
  for (std::size_t i = 0; i < a1.size(); ++i) sum[i] = a1[i] + a2[i];
  const Signal1D x(oracle::random_complex(n, 3));
  Spectrum1D twice = sdft_forward_1d(x, ThetaKey1D(n, a1));
  Sdft1dPlan(ThetaKey1D(n, a2)).rotate(twice.span());
  EXPECT_LE(rel_err(twice.values(), sdft_forward_1d(x, ThetaKey1D(n, sum)).values()), 1e-12);
}

TEST(SdftProperties, RotatedRowsStayCycleEigenvectors) {
  for (std::size_t n = 4; n <= 32; n += 2) {
    const ThetaKey1D key(n, oracle::random_angles(n / 2 - 1, 90 + n));
    const auto rows = sdft_rows_1d(key);
    const double res = verify_eigenbasis(cycle_laplacian(n), rows, cycle_eigenvalues(n));
    EXPECT_LE(res, 1e-9 * static_cast<double>(n));
  }
}

TEST(SdftBasisRow1d, MatchesDenseRows) {
  const std::size_t n = 10;
  const auto angles = oracle::random_angles(4, 5);
  const ThetaKey1D key(n, angles);
  const auto dense = dense_sdft(n, angles);
  const auto dense_improper = dense_sdft(n, angles, true);
  for (std::size_t k = 0; k < n; ++k) {
    EXPECT_LE(oracle::max_abs_diff(sdft_basis_row_1d(key, k).entries, dense[k]), 1e-14);
    EXPECT_LE(oracle::max_abs_diff(sdft_basis_row_1d(key, k, RotationKind::improper).entries,
                                   dense_improper[k]),
              1e-14);
  }
}

TEST(CoefficientTrace, Properties) {
  const std::size_t n = 16;
  const Signal1D x(oracle::random_real(n, 21));
  const Spectrum1D base = dft_forward_1d(x);
  const std::size_t k = 3;
  const auto trace = coefficient_trace(x, k, 8);
  ASSERT_EQ(trace.size(), 8u);
  EXPECT_EQ(trace[0].theta, 0.0);
  EXPECT_EQ(trace[0].first, base[k]);
  EXPECT_EQ(trace[0].second, base[n - k]);
  const double e0 = std::norm(base[k]) + std::norm(base[n - k]);
  for (const auto& p : trace) {
    EXPECT_NEAR(std::norm(p.first) + std::norm(p.second), e0, 1e-10 * e0);
  }
  // theta = pi/4 is sample 1 of 8: first real, second pure imaginary
  const auto& q = trace[1];
  EXPECT_NEAR(q.theta, kPi / 4, 1e-15);
  EXPECT_LE(std::abs(q.first.imag()), 1e-12 * std::abs(q.first));
  EXPECT_LE(std::abs(q.second.real()), 1e-12 * std::abs(q.second));
  // and at every odd multiple of pi/4 one of them is real, the other imaginary
  for (std::size_t i : {3u, 5u, 7u}) {
    const auto& p = trace[i];
    const double scale = std::sqrt(e0);
    const bool first_real = std::abs(p.first.imag()) <= 1e-12 * scale && std::abs(p.second.real()) <= 1e-12 * scale;
    const bool second_real = std::abs(p.second.imag()) <= 1e-12 * scale && std::abs(p.first.real()) <= 1e-12 * scale;
    EXPECT_TRUE(first_real || second_real) << i;
  }
  // sample equals the full SDFT with a single nonzero angle
  std::vector<double> angles(n / 2 - 1, 0.0);
  angles[k - 1] = trace[5].theta;
  const Spectrum1D full = sdft_forward_1d(x, ThetaKey1D(n, angles));
  EXPECT_LT(std::abs(full[k] - trace[5].first), 1e-12);
  EXPECT_LT(std::abs(full[n - k] - trace[5].second), 1e-12);
  EXPECT_THROW(coefficient_trace(x, 0, 4), Error);
  EXPECT_THROW(coefficient_trace(x, 8, 4), Error);
}

double direct_cos(const std::vector<cplx>& x, std::size_t k) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += x[j].real() * std::cos(2 * kPi * k * j / x.size());
  return acc;
}

double direct_sin(const std::vector<cplx>& x, std::size_t k) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += x[j].real() * std::sin(2 * kPi * k * j / x.size());
  return acc;
}

TEST(CosineTransform, Examples) {
  const std::size_t n = 8;
  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::cos(2 * kPi * j / n);
  const auto c = cosine_transform(Signal1D(x));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_NEAR(c[0], 4.0, 1e-13);
  EXPECT_NEAR(c[1], 0.0, 1e-13);
  EXPECT_NEAR(c[2], 0.0, 1e-13);
  for (double v : cosine_transform(Signal1D(std::vector<cplx>(n, 2.5)))) EXPECT_NEAR(v, 0.0, 1e-13);
  EXPECT_THROW(cosine_transform(Signal1D(oracle::random_complex(8, 1))), Error);
}

TEST(CosineTransform, MatchesDirectSum) {
  const auto x = oracle::random_real(16, 33);
  const auto c = cosine_transform(Signal1D(x));
  for (std::size_t k = 1; k < 8; ++k) EXPECT_NEAR(c[k - 1], direct_cos(x, k), 1e-11);
}

TEST(SineTransform, Examples) {
  const std::size_t n = 8;
  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::sin(2 * kPi * j / n);
  const auto s = sine_transform(Signal1D(x));
  // sum sin(2 pi n/8) sin(2 pi 7 n/8) = -4
  EXPECT_NEAR(s[0], direct_sin(x, 7), 1e-13);
  EXPECT_NEAR(std::abs(s[0]), 4.0, 1e-13);
  const Spectrum1D rot = sdft_forward_1d(Signal1D(x), ThetaKey1D::uniform(n, kPi / 4));
  EXPECT_LT(std::abs(rot[7].real()), 1e-13);
  EXPECT_NEAR(std::abs(rot[7]), 4 * kSqrt2, 1e-13);
  for (double v : sine_transform(Signal1D(std::vector<cplx>(n, -1.0)))) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(SineTransform, UpperHalfIsMinusISqrt2TimesDirectSum) {
  const std::size_t n = 16;
  const auto x = oracle::random_real(n, 34);
  const Spectrum1D rot = sdft_forward_1d(Signal1D(x), ThetaKey1D::uniform(n, kPi / 4));
  const auto s = sine_transform(Signal1D(x));
  for (std::size_t k = n / 2 + 1; k < n; ++k) {
    const cplx expected = cplx(0, -kSqrt2) * direct_sin(x, k);
    EXPECT_LT(std::abs(rot[k] - expected), 1e-11);
    EXPECT_NEAR(s[n - k - 1], direct_sin(x, k), 1e-11);
  }
}

/// -i sgn(k) multiplier in the DFT domain.
std::vector<cplx> hilbert_oracle(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  auto freq = oracle::naive_dft(x);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || k == n / 2) {
      freq[k] = 0.0;
    } else if (k < n / 2) {
      freq[k] *= cplx(0, -1);
    } else {
      freq[k] *= cplx(0, 1);
    }
  }
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) acc += freq[k] * std::conj(oracle::phasor(static_cast<long double>((k * j) % n) / n));
    out[j] = acc.real() / static_cast<double>(n);
  }
  return out;
}

TEST(Hilbert, CosineToSine) {
  std::vector<cplx> x(8);
  std::vector<cplx> expected(8);
  for (std::size_t j = 0; j < 8; ++j) {
    x[j] = std::cos(2 * kPi * j / 8);
    expected[j] = std::sin(2 * kPi * j / 8);
  }
  EXPECT_LE(oracle::max_abs_diff(hilbert(Signal1D(x)).values(), expected), 1e-12);
  EXPECT_LE(oracle::max_abs_diff(hilbert(Signal1D(x)).values(), hilbert_oracle(x)), 1e-12);
}

TEST(Hilbert, ConstantAnnihilated) {
  for (const cplx& v : hilbert(Signal1D(std::vector<cplx>(8, 3.0)))) EXPECT_LT(std::abs(v), 1e-14);
}

TEST(Hilbert, MatchesFrequencyDomainOracle) {
  for (std::size_t n : {8u, 10u, 32u}) {
    const auto x = oracle::random_real(n, 300 + n);
    EXPECT_LE(oracle::max_abs_diff(hilbert(Signal1D(x)).values(), hilbert_oracle(x)), 1e-10) << n;
  }
}

TEST(Hilbert, RejectsComplexAndOdd) {
  try {
    hilbert(Signal1D(oracle::random_complex(8, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
  try {
    hilbert(Signal1D(oracle::random_real(9, 1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_size);
  }
}

TEST(HilbertRealPart, Examples) {
  const auto c = hilbert_real_part(Signal1D(std::vector<cplx>(8, 1.5)));
  for (const cplx& v : c) EXPECT_NEAR(v.real(), 1.5, 1e-14);
  std::vector<cplx> x(8);
  for (std::size_t j = 0; j < 8; ++j) x[j] = std::cos(2 * kPi * j / 8);
  for (const cplx& v : hilbert_real_part(Signal1D(x))) EXPECT_LT(std::abs(v), 1e-14);
}

TEST(HilbertRealPart, DcNyquistProjection) {
  const std::size_t n = 8;
  const auto x = oracle::random_real(n, 44);
  double sum = 0.0;
  double alt = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sum += x[j].real();
    alt += (j % 2 ? -1.0 : 1.0) * x[j].real();
  }
  const auto r = hilbert_real_part(Signal1D(x));
  for (std::size_t j = 0; j < n; ++j) {
    const double expected = (sum + alt * (j % 2 ? -1.0 : 1.0)) / n;
    EXPECT_NEAR(r[j].real(), expected, 1e-11);
  }
}

TEST(Hilbert, CompositeMatchesDenseImproperAdjoint) {
  // (1/N) Vtilde(pi/4)^H V(-pi/4) x built from dense matrices
  const std::size_t n = 12;
  const auto x = oracle::random_real(n, 55);
  const auto fwd = dense_sdft(n, std::vector<double>(n / 2 - 1, -kPi / 4));
  const auto tilde = dense_sdft(n, std::vector<double>(n / 2 - 1, kPi / 4), true);
  auto z = oracle::apply(oracle::multiply(oracle::adjoint(tilde), fwd), x);
  const auto h = hilbert(Signal1D(x));
  const auto r = hilbert_real_part(Signal1D(x));
  for (std::size_t j = 0; j < n; ++j) {
    z[j] /= static_cast<double>(n);
    EXPECT_NEAR(h[j].real(), z[j].imag(), 1e-12);
    EXPECT_NEAR(r[j].real(), z[j].real(), 1e-12);
  }
}

TEST(Hilbert, InvolutionIdentity) {
  for (std::size_t n : {8u, 16u, 30u}) {
    const auto x = oracle::random_real(n, 700 + n);
    const Signal1D hh = hilbert(hilbert(Signal1D(x)));
    const Signal1D proj = hilbert_real_part(Signal1D(x));
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_NEAR(hh[j].real(), -(x[j].real() - proj[j].real()), 1e-9);
    }
  }
}

}  // namespace
}  // namespace sdft
