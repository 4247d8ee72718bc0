#ifndef IQK_IDEAL_HPP
#define IQK_IDEAL_HPP

#include <optional>
#include <vector>

#include "iqk/quadform.hpp"

namespace iqk {

// Element (x + y*sqrt(D))/2 of the maximal order of Q(sqrt(D)); the parity
// constraint x = y*D mod 2 makes it an algebraic integer.
struct AlgInt {
    Int d;  // field discriminant
    Int x, y;

    AlgInt(Int disc, Int xx, Int yy);
    static AlgInt one(const Int& d) { return AlgInt(d, 2, 0); }
    static AlgInt from_basis(const Int& d, const Int& u, const Int& v);  // u + v*omega

    Int norm() const { return (x * x - d * y * y) / 4; }
    Int trace() const { return x; }
    AlgInt conj() const { return AlgInt(d, x, -y); }
    AlgInt mul(const AlgInt& o) const;
    AlgInt mul_int(const Int& k) const { return AlgInt(d, k * x, k * y); }
    // coordinates (u, v) with value = u + v*omega, omega = (D + sqrt(D))/2
    std::pair<Int, Int> basis_coords() const { return {(x - y * d) / 2, y}; }
    bool operator==(const AlgInt& o) const = default;
    std::string str() const;
};

// Integral ideal content * (Z*a + Z*(b + sqrt(D))/2) with the inner part
// primitive; b is kept canonical in [0, 2a).
struct Ideal {
    Int d;
    Int a;
    Int b;
    Int content = 1;

    static Ideal unit(const Int& d) { return {d, 1, mod_canonical(d, 2), 1}; }
    Int norm() const { return content * content * a; }
    bool is_unit_ideal() const { return a == 1 && content == 1; }
    Ideal conj() const;
    bool operator==(const Ideal& o) const = default;
    std::string str() const;
};

// Lattice spanned by the given elements, provided it is an O_k-module.
Ideal ideal_from_generators(const Int& d, const std::vector<AlgInt>& gens);
Ideal ideal_mul(const Ideal& i, const Ideal& j);
Ideal ideal_pow(const Ideal& i, const Int& e);
Ideal principal_ideal(const AlgInt& x);
bool ideal_contains(const Ideal& i, const AlgInt& x);

enum class SplitKind { Split, Inert, Ramified };

struct SplittingType {
    SplitKind kind;
    std::optional<Ideal> prime;  // a prime above p (absent when inert as an ideal of norm p)

    bool decomposed() const { return kind == SplitKind::Split; }
};

// Behaviour of the odd prime p in Q(sqrt(D)).
SplittingType splitting_type(const Int& d, const Int& p);

// A prime ideal of norm q when q splits or ramifies; nullopt when q is inert.
std::optional<Ideal> prime_above(const Int& d, const Int& q);

// Shortest-vector (Gauss-Lagrange) principality test; returns a generator of
// the full ideal (content included) when one exists, after verifying that the
// generated ideal equals the input.
std::optional<AlgInt> principal_generator(const Ideal& i);

// Transport between primitive ideals and forms of the same discriminant.
Ideal form_ideal(const QuadForm& f);
QuadForm ideal_form(const Ideal& i);

// An ideal in the class of `cls` whose norm is coprime to p, found by
// scanning primes of small norm. Throws std::runtime_error when the scan
// bound (default 6|D|, overridable) is exhausted.
Ideal class_rep_coprime_to(const Int& d, const QuadForm& cls, const Int& p, Int bound = 0);

// As above but skipping the first `skip` matches (used to cross-check
// well-definedness under a change of representative).
Ideal class_rep_coprime_to_skip(const Int& d, const QuadForm& cls, const Int& p, long skip, Int bound = 0);

}  // namespace iqk

#endif
