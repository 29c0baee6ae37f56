// First coefficients of E4, E6 and Delta, then Delta on a few points and its lift.

#include <iostream>

#include "sl2lab/modular_lift.hpp"
#include "sl2lab/text_format.hpp"

using namespace sl2lab;

int main() {
  const auto delta = modular::delta_q(30);
  std::cout << "tau(n), n = 1..10:";
  for (std::size_t n = 1; n <= 10; ++n) std::cout << ' ' << delta[n];
  std::cout << "\n";

  for (const Complex z : {Complex(0.0, 1.0), Complex(0.3, 1.2), Complex(-0.5, 0.8660254037844386)}) {
    const auto v = modular::eval_modular(delta, z);
    std::cout << "Delta(" << text::fmt(z) << ") = " << text::fmt(v.value) << "  tail <= " << v.tail_bound << "\n";
  }

  const auto g = iwasawa_compose({0.3, 1.2, 0.7, 1});
  const auto phi = modular::lift_automorphic(delta, g);
  const auto phi_t = modular::lift_automorphic(delta, ModularElement::T().to_real() * g);
  std::cout << "phi(g) = " << text::fmt(phi.value) << ", phi(Tg) = " << text::fmt(phi_t.value) << "\n";

  for (int k : {12, 24, 26, 36}) std::cout << "dim S_" << k << " = " << modular::dim_cusp_forms(k) << "\n";
}
