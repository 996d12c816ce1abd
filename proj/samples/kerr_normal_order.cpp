// Normal ordering of powers of the Kerr Hamiltonian H = (a^dagger a)^2 - a^dagger a,
// and the two routes to its Bell-type polynomials.

#include <iostream>

#include "dobinski/dobinski_series.hpp"
#include "dobinski/exact_core.hpp"
#include "dobinski/moment_comb.hpp"
#include "dobinski/text.hpp"

int main() {
  using namespace dobinski;
  const HamiltonianSpec kerr(PolynomialQ({0, -1, 1}));
  const mpq_class x(1, 2);

  for (std::size_t n = 0; n <= 4; ++n) {
    const NormalForm nf = stirling_type(kerr, n);
    std::cout << "H^" << n << " normal form:";
    for (std::size_t k = 0; k < nf.coeffs.size(); ++k)
      if (nf.coeffs[k] != 0) std::cout << ' ' << nf.coeffs[k] << "*(a+)^" << k << "a^" << k;
    std::cout << '\n';

    const auto report = cross_check(kerr, n, x, 1e-15);
    std::cout << "  B_H(" << n << ", 1/2) exact " << report.exact << ", series " << report.series.value.to_string(25)
              << " (" << report.series.terms_used << " terms, " << (report.passed ? "agree" : "DISAGREE") << ")\n";
  }

  std::cout << "support of the comb: " << to_string(classify(kerr.poly())) << '\n';
}
