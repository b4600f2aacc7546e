// Computes the functional square root g of f(x) = x + x^2 (so g(g(x)) = f(x))
// three independent ways and prints the ordinary coefficients.

#include <iostream>

#include "iterfrac/iterfrac.hpp"

int main() {
  using namespace iterfrac;
  const int order = 10;
  Series f = preset_series("quad", Mode::exact, order);
  Exponent half = Exponent::of_rat(Rational(1, 2));

  Series via_schroder = series_from_triangle_row(iterate_schroder(f, half, order));
  Series via_jabotinsky = series_from_triangle_row(iterate_jabotinsky(f, half, order));
  Series via_solver = oracle_functional_root(f, 2, order);

  std::cout << "n   schroder      jabotinsky    order-by-order solver\n";
  for (int n = 1; n <= order; ++n)
    std::cout << n << "   " << via_schroder.coeff(n).str() << "   "
              << via_jabotinsky.coeff(n).str() << "   " << via_solver.coeff(n).str()
              << "\n";

  bool consistent = via_schroder == via_jabotinsky && via_schroder == via_solver &&
                    compose(via_schroder, via_schroder, order) == f;
  std::cout << (consistent ? "g o g = f, all routes agree\n" : "MISMATCH\n");
  return consistent ? 0 : 1;
}
