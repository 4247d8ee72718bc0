#include "iqk/ideal.hpp"

#include <sstream>

namespace iqk {

AlgInt::AlgInt(Int disc, Int xx, Int yy) : d(std::move(disc)), x(std::move(xx)), y(std::move(yy)) {
    if (mod_canonical(x - y * d, 2) != 0)
        throw std::invalid_argument("AlgInt: parity constraint x = y*D (mod 2) violated");
}

AlgInt AlgInt::from_basis(const Int& d, const Int& u, const Int& v) {
    // u + v*omega with omega = (D + sqrt(D))/2 equals ((2u + vD) + v*sqrt(D))/2
    return AlgInt(d, 2 * u + v * d, v);
}

AlgInt AlgInt::mul(const AlgInt& o) const {
    if (d != o.d) throw std::invalid_argument("AlgInt::mul: field mismatch");
    // (x1 + y1 s)(x2 + y2 s)/4 with s = sqrt(D)
    Int nx = (x * o.x + d * y * o.y) / 2;
    Int ny = (x * o.y + y * o.x) / 2;
    return AlgInt(d, nx, ny);
}

std::string AlgInt::str() const {
    std::ostringstream os;
    os << "(" << x.get_str() << (y >= 0 ? "+" : "-") << Int(abs(y)).get_str() << "*sqrt(" << d.get_str()
       << "))/2";
    return os.str();
}

Ideal Ideal::conj() const {
    Ideal r{d, a, mod_canonical(-b, 2 * a), content};
    return r;
}

std::string Ideal::str() const {
    std::ostringstream os;
    if (content != 1) os << content.get_str() << "*";
    os << "[" << a.get_str() << ", (" << b.get_str() << "+sqrt(" << d.get_str() << "))/2]";
    return os.str();
}

Ideal ideal_from_generators(const Int& d, const std::vector<AlgInt>& gens) {
    // include omega-multiples so the lattice is the O_k-module they generate
    std::vector<std::pair<Int, Int>> cols;  // (u, v) with element = u + v*omega
    AlgInt omega = AlgInt::from_basis(d, 0, 1);
    for (const AlgInt& g : gens) {
        if (g.d != d) throw std::invalid_argument("ideal_from_generators: field mismatch");
        cols.push_back(g.basis_coords());
        cols.push_back(g.mul(omega).basis_coords());
    }
    // 2 x N Hermite reduction: bring to [[A, C], [0, g]]
    Int g = 0, c0 = 0;
    for (size_t idx = 0; idx < cols.size(); ++idx) {
        Int u = cols[idx].first, v = cols[idx].second;
        if (v == 0) continue;
        if (g == 0) {
            g = abs(v);
            c0 = (v > 0) ? u : -u;
            continue;
        }
        Int s, t, gg;
        mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        Int new_c0 = s * c0 + t * u;
        // the discarded combination keeps the lattice: (v/gg)*c0 - (g/gg)*u has v-part 0
        cols.emplace_back((v / gg) * c0 - (g / gg) * u, Int(0));
        g = gg;
        c0 = new_c0;
    }
    Int A = 0;
    for (const auto& [u, v] : cols) {
        if (v != 0) continue;
        A = gcd(A, u);
    }
    if (g == 0 || A == 0) throw std::invalid_argument("ideal_from_generators: rank-deficient lattice");
    A = abs(A);
    c0 = mod_canonical(c0, A);
    // an O_k-ideal in HNF has g | A and g | C; content is g
    if (mod_canonical(A, g) != 0 || mod_canonical(c0, g) != 0)
        throw std::invalid_argument("ideal_from_generators: lattice is not an O_k-module");
    Ideal out;
    out.d = d;
    out.content = g;
    out.a = A / g;
    Int b = 2 * (c0 / g) + d;
    out.b = mod_canonical(b, 2 * out.a);
    // sanity: 4a | b^2 - D
    if (mod_canonical(out.b * out.b - d, 4 * out.a) != 0)
        throw std::logic_error("ideal_from_generators: invalid ideal invariant");
    return out;
}

Ideal ideal_mul(const Ideal& i, const Ideal& j) {
    if (i.d != j.d) throw std::invalid_argument("ideal_mul: field mismatch");
    const Int& d = i.d;
    AlgInt a1(d, 2 * i.a, 0), b1(d, i.b, 1);
    AlgInt a2(d, 2 * j.a, 0), b2(d, j.b, 1);
    Ideal prod = ideal_from_generators(d, {a1.mul(a2), a1.mul(b2), b1.mul(a2), b1.mul(b2)});
    prod.content *= i.content * j.content;
    return prod;
}

Ideal ideal_pow(const Ideal& i, const Int& e) {
    if (e < 0) throw std::invalid_argument("ideal_pow: exponent must be >= 0");
    Ideal acc = Ideal::unit(i.d);
    Ideal base = i;
    Int n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = ideal_mul(acc, base);
        base = ideal_mul(base, base);
        n /= 2;
    }
    return acc;
}

Ideal principal_ideal(const AlgInt& x) {
    return ideal_from_generators(x.d, {x});
}

bool ideal_contains(const Ideal& i, const AlgInt& x) {
    auto [u, v] = x.basis_coords();
    // x in content*(Z a + Z ((b - D)/2 + omega))
    if (mod_canonical(v, i.content) != 0) return false;
    Int v2 = v / i.content;
    Int u2 = u - v2 * i.content * ((i.b - i.d) / 2);
    return mod_canonical(u2, i.content * i.a) == 0;
}

SplittingType splitting_type(const Int& d, const Int& p) {
    require_fundamental(d);
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("splitting_type: p must be an odd prime");
    int k = kronecker(d, p);
    SplittingType st;
    if (k == 1)
        st.kind = SplitKind::Split;
    else if (k == -1)
        st.kind = SplitKind::Inert;
    else
        st.kind = SplitKind::Ramified;
    if (k >= 0) st.prime = prime_above(d, p);
    return st;
}

std::optional<Ideal> prime_above(const Int& d, const Int& q) {
    if (q == 2) {
        for (long b = 0; b < 4; ++b) {
            if (mod_canonical(Int(b) - d, 2) != 0) continue;
            if (mod_canonical(Int(b) * b - d, 8) != 0) continue;
            return Ideal{d, 2, mod_canonical(Int(b), 4), 1};
        }
        return std::nullopt;
    }
    int k = kronecker(mod_canonical(d, q), q);
    if (k == -1) return std::nullopt;
    Int r;
    if (k == 0) {
        r = 0;
    } else {
        auto root = sqrt_mod_prime_power(d, q, 1);
        if (!root) throw std::logic_error("prime_above: residue has no square root");
        r = *root;
    }
    // lift to the parity of D so that (b + sqrt(D))/2 is integral
    Int b = (mod_canonical(r - d, 2) == 0) ? r : r + q;
    return Ideal{d, q, mod_canonical(b, 2 * q), 1};
}

std::optional<AlgInt> principal_generator(const Ideal& i) {
    const Int& d = i.d;
    Int c = (i.b * i.b - d) / (4 * i.a);
    ReducedWithTransform red = reduce_with_transform(QuadForm{i.a, i.b, c});
    if (red.form.a != 1) return std::nullopt;  // minimal norm exceeds N(I)
    // first reduced basis vector: alpha*a + gamma*(b + sqrt(D))/2
    const Int& alpha = red.m.at(0, 0);
    const Int& gamma = red.m.at(1, 0);
    AlgInt gen(d, 2 * i.a * alpha + gamma * i.b, gamma);
    if (abs(gen.norm()) != i.a) throw std::logic_error("principal_generator: norm mismatch");
    Ideal regen = principal_ideal(gen);
    if (!(regen.a == i.a && regen.b == i.b && regen.content == 1))
        throw std::logic_error("principal_generator: generated ideal differs");
    return gen.mul_int(i.content);
}

Ideal form_ideal(const QuadForm& f) {
    Int d = f.discriminant();
    if (f.a <= 0) throw std::invalid_argument("form_ideal: form must be positive definite");
    return Ideal{d, f.a, mod_canonical(f.b, 2 * f.a), 1};
}

QuadForm ideal_form(const Ideal& i) {
    Int b = i.b;
    // centre b so the form coefficients stay small; class is unchanged
    if (b > i.a) b -= 2 * i.a;
    return QuadForm{i.a, b, (b * b - i.d) / (4 * i.a)};
}

Ideal class_rep_coprime_to_skip(const Int& d, const QuadForm& cls, const Int& p, long skip, Int bound) {
    if (bound <= 0) bound = 6 * abs(d);
    QuadForm target = reduce(cls);
    QuadForm principal = principal_form(d);
    if (target == principal && skip <= 0) return Ideal::unit(d);
    long remaining = skip - (target == principal ? 1 : 0);
    Int q = 2;
    while (q <= bound) {
        if (q != p) {
            auto pr = prime_above(d, q);
            if (pr) {
                std::vector<Ideal> cands{*pr};
                if (pr->conj() != *pr) cands.push_back(pr->conj());
                for (const Ideal& cand : cands) {
                    if (reduce(ideal_form(cand)) == target) {
                        if (remaining <= 0) return cand;
                        --remaining;
                    }
                }
            }
        }
        mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    }
    throw std::runtime_error("class_rep_coprime_to: search bound " + bound.get_str() +
                             " exhausted for class " + target.str());
}

Ideal class_rep_coprime_to(const Int& d, const QuadForm& cls, const Int& p, Int bound) {
    return class_rep_coprime_to_skip(d, cls, p, 0, bound);
}

}  // namespace iqk
