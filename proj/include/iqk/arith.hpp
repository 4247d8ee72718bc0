#ifndef IQK_ARITH_HPP
#define IQK_ARITH_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iqk {

// Exact arbitrary-precision integer. Every computation in this library is
// exact; there are no floating-point code paths.
using Int = mpz_class;

// Canonical residue of a mod m, in [0, m). Requires m > 0.
Int mod_canonical(const Int& a, const Int& m);

// base^exp mod m for exp >= 0, m >= 2.
Int mod_pow(const Int& base, const Int& exp, const Int& m);

// Inverse of a mod m; throws std::domain_error if gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

// m^e over Z, e >= 0.
Int int_pow(const Int& m, unsigned long e);

// v_p(n) for n != 0, p >= 2.
long valuation(const Int& n, const Int& p);

// Kronecker symbol (a|n) for odd n >= 1.
int kronecker(const Int& a, const Int& n);

// Smallest x in [0, p^n) with x^2 = a mod p^n and gcd(x, p) = 1, when such a
// unit root exists (Tonelli-Shanks at n = 1, Hensel lifting above). Returns
// nothing when there is no unit solution, including the case p | a.
std::optional<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned long n);

bool is_prime(const Int& n);

// Complete for |n| below ~10^18 (trial division to 10^6 plus a perfect-square
// check on the cofactor); throws beyond that range.
bool is_squarefree(const Int& n);

// Trial-division factorisation. A cofactor with no prime factor below 10^6 is
// returned whole (exponent 1); it is squarefree in the supported range, which
// is all the callers here rely on.
std::vector<std::pair<Int, unsigned long>> factorize(const Int& n);

}  // namespace iqk

#endif
