// Brackets of the free-boson Virasoro modes on a truncated Fock space.

#include <iostream>

#include "sl2lab/fock_virasoro.hpp"

using namespace sl2lab;

int main() {
  fock::FockSpace space(16);
  std::cout << "states: " << space.basis().size() << "\n";
  for (int m = 1; m <= 4; ++m)
    std::cout << "m = " << m << ": central term " << fock::vacuum_central_term(space, m) << ", expected "
              << (m * m * m - m) / 12.0 << "\n";
  const auto b = fock::virasoro_bracket_check(space, 2, -3);
  std::cout << "[L_2, L_-3]: standard residual " << b.standard_residual << ", printed residual " << b.printed_residual
            << "\n";
}
