// Prints the index classes of the 8x8 torus spectrum and checks a random 2D key
// against the Laplacian.

#include <cstdio>
#include <random>

#include "sdft/sdft.hpp"

int main() {
  using namespace sdft;
  const std::size_t n = 8;
  const GraphSpectrumReport r = multiplicity_census_2d(n);
  for (const auto& c : r.classes) {
    std::printf("%-9s mu=%.6f  size %zu\n", c.tag.c_str(), c.mu, c.members.size());
  }
  for (const auto& m : r.merges) {
    std::printf("merge at mu=%.6f: %zu classes, multiplicity %zu\n", m.mu, m.representatives.size(),
                m.observed_multiplicity);
  }

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::vector<double> angles(pair_count_2d(n, PairMode::symmetric));
  for (double& a : angles) a = angle(rng);
  const ThetaKey2D key(n, PairMode::symmetric, angles);
  const double residual = verify_eigenbasis(torus_laplacian(n), sdft_rows_2d(key), torus_eigenvalues(n));
  std::printf("steered basis residual %.2e\n", residual);
}
