#include "lsopkit/moments.hpp"

namespace lsopkit {

std::vector<mpz_class> chebyshev2_coeffs(int n) {
  if (n < 0) throw Error(ErrorKind::Dimension, "chebyshev2_coeffs: negative degree");
  std::vector<mpz_class> out(static_cast<std::size_t>(n + 1), 0);
  for (int k = 0; 2 * k <= n; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n - k),
                 static_cast<unsigned long>(k));
    mpz_class term = binom << static_cast<mp_bitcnt_t>(n - 2 * k);
    if (k % 2 == 1) term = -term;
    out[static_cast<std::size_t>(n - 2 * k)] = term;
  }
  return out;
}

}  // namespace lsopkit
