#include <cstdio>

#include "sdft/sdft.hpp"

namespace {

void print(const char* label, const sdft::Signal1D& v) {
  std::printf("%-10s", label);
  for (const auto& z : v) std::printf(" %+.4f", z.real());
  std::printf("\n");
}

}  // namespace

int main() {
  using namespace sdft;
  const Signal1D x = Signal1D::from_real(std::vector<double>{0.5, 2, -1, 3, 0, -2, 1, 4});
  print("input", x);
  print("even", parity_filter_1d(x, Parity::even));
  print("odd", parity_filter_1d(x, Parity::odd));
  print("even k=2", parity_filter_1d(x, Parity::even, std::vector<std::size_t>{2}));

  const ScrambleKey key(keygen(0xC0FFEE, x.size(), KeyPurpose::scramble));
  const ScramblePayload p = scramble(x, key);
  std::printf("payload   ");
  for (const cplx& c : p.coefficients) std::printf(" (%+.3f,%+.3f)", c.real(), c.imag());
  std::printf("\n");
  print("recovered", descramble(p, key));

  // the wrong key gives a different signal
  print("wrong key", descramble(p, ScrambleKey(keygen(0xC0FFEF, x.size(), KeyPurpose::scramble))));
}
