// Steers one pair of a short signal through a few angles and inverts it back.

#include <cstdio>

#include "sdft/sdft.hpp"

int main() {
  using namespace sdft;
  const Signal1D x = Signal1D::from_real(std::vector<double>{1, 3, -2, 0, 4, 1, -1, 2});

  for (double theta : {0.0, kPi / 8, kPi / 4, kPi / 2}) {
    const ThetaKey1D key = ThetaKey1D::uniform(8, theta);
    const Spectrum1D s = sdft_forward_1d(x, key);
    const Signal1D back = sdft_inverse_1d(s, key);
    double err = 0.0;
    for (std::size_t i = 0; i < 8; ++i) err = std::max(err, std::abs(back[i] - x[i]));
    std::printf("theta=%.4f  X'1=(%+.4f,%+.4f)  X'7=(%+.4f,%+.4f)  roundtrip err %.1e\n", theta, s[1].real(),
                s[1].imag(), s[7].real(), s[7].imag(), err);
  }

  const auto hx = hilbert(x);
  std::printf("hilbert:");
  for (const cplx& v : hx) std::printf(" %+.4f", v.real());
  std::printf("\n");
}
