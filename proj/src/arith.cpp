#include "iqk/arith.hpp"

namespace iqk {

Int mod_canonical(const Int& a, const Int& m) {
    if (m <= 0) throw std::invalid_argument("mod_canonical: modulus must be positive");
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_pow(const Int& base, const Int& exp, const Int& m) {
    if (exp < 0) throw std::invalid_argument("mod_pow: negative exponent");
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: element not invertible");
    return r;
}

Int int_pow(const Int& m, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), m.get_mpz_t(), e);
    return r;
}

long valuation(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation: zero input");
    long v = 0;
    Int t = n, q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        if (r != 0) return v;
        ++v;
        t = q;
    }
}

int kronecker(const Int& a, const Int& n) {
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("kronecker: n must be odd and >= 1");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

namespace {

// Tonelli-Shanks for an odd prime modulus; a must be a unit residue.
std::optional<Int> sqrt_mod_prime(const Int& a, const Int& p) {
    Int am = mod_canonical(a, p);
    if (am == 0) return std::nullopt;
    if (kronecker(am, p) != 1) return std::nullopt;
    if (mod_canonical(p, 4) == 3) return mod_pow(am, (p + 1) / 4, p);

    // p = 1 mod 4: write p - 1 = q * 2^s with q odd.
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;

    Int m(static_cast<long>(s));
    Int c = mod_pow(z, q, p);
    Int t = mod_pow(am, q, p);
    Int r = mod_pow(am, (q + 1) / 2, p);
    while (t != 1) {
        Int i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = mod_canonical(tt * tt, p);
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = mod_canonical(b * b, p);
        m = i;
        c = mod_canonical(b * b, p);
        t = mod_canonical(t * c, p);
        r = mod_canonical(r * b, p);
    }
    return r;
}

}  // namespace

std::optional<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned long n) {
    if (n < 1) throw std::invalid_argument("sqrt_mod_prime_power: n must be >= 1");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("sqrt_mod_prime_power: p must be an odd prime");
    auto root = sqrt_mod_prime(a, p);
    if (!root) return std::nullopt;
    Int x = *root;
    // Quadratic Hensel steps: the root doubles its precision each round.
    unsigned long prec = 1;
    Int mod = p;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        mod = int_pow(p, prec);
        Int f = mod_canonical(x * x - a, mod);
        Int inv = mod_inverse(2 * x, mod);
        x = mod_canonical(x - f * inv, mod);
    }
    if (mod_canonical(x * x - a, mod) != 0)
        throw std::logic_error("sqrt_mod_prime_power: lift verification failed");
    Int other = mod - x;
    return x <= other ? x : other;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) > 0;
}

static const long kTrialBound = 1000000;

std::vector<std::pair<Int, unsigned long>> factorize(const Int& n) {
    Int m = abs(n);
    if (m == 0) throw std::invalid_argument("factorize: zero input");
    Int guard = Int(1000000000) * 1000000000;
    if (m > guard) throw std::invalid_argument("factorize: input beyond trial-division range");
    std::vector<std::pair<Int, unsigned long>> out;
    auto strip = [&](const Int& q) {
        unsigned long e = 0;
        while (mod_canonical(m, q) == 0) {
            m /= q;
            ++e;
        }
        if (e) out.emplace_back(q, e);
    };
    strip(2);
    strip(3);
    for (long d = 5; d <= kTrialBound && Int(d) * d <= m; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (m > 1) {
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            Int r = sqrt(m);
            out.emplace_back(r, 2);
        } else {
            // no factor <= 10^6 and not a square, so the cofactor is prime or
            // a product of two distinct primes; squarefree either way
            out.emplace_back(m, 1);
        }
    }
    return out;
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (const auto& [q, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

}  // namespace iqk
