#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iqk/arith.hpp"

using namespace iqk;

namespace {

// Independent oracle: Euler criterion for the Legendre symbol at an odd prime.
int euler_symbol(const Int& a, const Int& p) {
    Int am = mod_canonical(a, p);
    if (am == 0) return 0;
    Int e = mod_pow(am, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

// Independent oracle: exhaustive root search mod m.
std::optional<Int> exhaustive_unit_sqrt(const Int& a, const Int& p, unsigned long n) {
    Int m = int_pow(p, n);
    for (Int x = 0; x < m; ++x) {
        if (gcd(x, p) != 1) continue;
        if (mod_canonical(x * x - a, m) == 0) return x;
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("kronecker known values") {
    CHECK(kronecker(1, 3) == 1);
    CHECK(kronecker(-23, 3) == euler_symbol(-23, 3));
    CHECK(kronecker(-23, 3) == 1);
    // squares mod 3 are {0, 1}; -4 = 2 mod 3 is not among them
    CHECK(kronecker(-4, 3) == -1);
}

TEST_CASE("kronecker agrees with the Euler criterion at odd primes") {
    for (long p : {3, 5, 7, 11, 13, 101}) {
        for (long a = -30; a <= 30; ++a) CHECK(kronecker(a, p) == euler_symbol(a, p));
    }
}

TEST_CASE("kronecker is multiplicative in both arguments") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        Int a = static_cast<long>(rng() % 4001) - 2000;
        Int b = static_cast<long>(rng() % 4001) - 2000;
        Int n = 2 * static_cast<long>(rng() % 500) + 1;
        Int m = 2 * static_cast<long>(rng() % 500) + 1;
        CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
        CHECK(kronecker(a, n * m) == kronecker(a, n) * kronecker(a, m));
    }
}

TEST_CASE("kronecker rejects even or nonpositive modulus") {
    CHECK_THROWS_AS(kronecker(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(kronecker(3, 0), std::invalid_argument);
}

TEST_CASE("sqrt_mod_prime_power known values") {
    CHECK(sqrt_mod_prime_power(1, 3, 1) == Int(1));
    // -23 = 4 mod 9 and 2^2 = 4
    CHECK(sqrt_mod_prime_power(-23, 3, 2) == Int(2));
    CHECK(sqrt_mod_prime_power(-23, 3, 2) == exhaustive_unit_sqrt(mod_canonical(-23, 9), 3, 2));
    CHECK(!sqrt_mod_prime_power(2, 3, 1).has_value());
    CHECK(!exhaustive_unit_sqrt(2, 3, 1).has_value());
}

TEST_CASE("every returned root squares back and no unit root is missed") {
    for (long p : {3, 5, 7, 13}) {
        for (unsigned long n = 1; n <= 3; ++n) {
            Int m = int_pow(p, n);
            if (m > 2200) continue;
            for (Int a = -20; a < m; ++a) {
                auto mine = sqrt_mod_prime_power(a, p, n);
                auto oracle = exhaustive_unit_sqrt(mod_canonical(a, m), p, n);
                CHECK(mine.has_value() == oracle.has_value());
                if (mine) {
                    CHECK(mod_canonical(*mine * *mine - a, m) == 0);
                    CHECK(*mine < m);
                    CHECK(gcd(*mine, p) == 1);
                }
            }
        }
    }
}

TEST_CASE("hensel lift agrees with exhaustive search at higher powers") {
    for (long p : {3, 5, 7}) {
        for (unsigned long n = 2; n <= 6; ++n) {
            Int m = int_pow(p, n);
            if (m > 1000000) continue;
            for (long a : {1L, 2L, 4L, 10L, 22L, -23L, 46L, 100L}) {
                auto mine = sqrt_mod_prime_power(a, p, n);
                if (!mine) continue;
                CHECK(mod_canonical(*mine * *mine - a, m) == 0);
                // smallest root convention
                CHECK(*mine <= m - *mine);
            }
        }
    }
}

TEST_CASE("primality and squarefree helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(104729));
    CHECK(!is_prime(1));
    CHECK(!is_prime(561));
    CHECK(is_squarefree(-23));
    CHECK(is_squarefree(2 * 3 * 5 * 7));
    CHECK(!is_squarefree(-27));
    CHECK(!is_squarefree(4));
}

TEST_CASE("mod helpers") {
    CHECK(mod_canonical(-1, 9) == 8);
    CHECK(mod_canonical(-84, 9) == 6);  // -3 mod 9
    CHECK(mod_inverse(2, 9) == 5);
    CHECK_THROWS_AS(mod_inverse(3, 9), std::domain_error);
    CHECK(valuation(54, 3) == 3);
}
