// Orbital integrals of a radial bump and the small-angle behaviour of the elliptic one.

#include <cmath>
#include <iostream>
#include <vector>

#include "sl2lab/char_orbital.hpp"

using namespace sl2lab;

int main() {
  const auto f = orbital::RadialTestFunction::bump(4.0);
  for (double a : {1.5, 2.0, 5.0}) {
    const auto o = orbital::orbital_hyperbolic(f, a);
    std::cout << "a = " << a << ": O = " << o.conjugation.value << " (two charts differ by " << o.discrepancy << ")\n";
  }
  std::cout << "transfer at a = 1: " << orbital::transfer_hyperbolic(f, 1.0).value << "\n";

  for (double theta : {0.2, 0.8, 1.5707963267948966}) {
    const auto so = orbital::stable_orbital_elliptic(f, theta);
    std::cout << "theta = " << theta << ": O+ = " << so.plus.value << ", O- = " << so.minus.value << "\n";
  }

  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(0.2 * std::pow(0.05, i / 15.0));
  const auto fit = orbital::singular_expansion(f, grid);
  std::cout << "1/lambda coefficient " << fit.a_fit << " vs " << fit.a_reference << "\n";
  std::cout << "log column improves the residual by " << fit.log_improvement << "x\n";
}
