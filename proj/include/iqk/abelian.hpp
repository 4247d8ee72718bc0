#ifndef IQK_ABELIAN_HPP
#define IQK_ABELIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "iqk/arith.hpp"

namespace iqk {

// Dense integer matrix, row-major. Dimensions here are tiny (generator and
// relation counts), so no sparse or modular tricks are used.
struct Mat {
    long rows = 0;
    long cols = 0;
    std::vector<Int> a;

    Mat() = default;
    Mat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}
    static Mat identity(long n);

    Int& at(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

    Mat mul(const Mat& other) const;
    Mat transposed() const;
    std::vector<Int> apply(const std::vector<Int>& v) const;  // matrix * column vector
    bool operator==(const Mat& other) const = default;
};

// Smith normal form U * A * V = D with U, V unimodular. Uinv is tracked so
// canonical generators can be expressed back in terms of the original ones.
struct SnfResult {
    Mat d;
    Mat u;
    Mat uinv;
    Mat v;
    long rank = 0;  // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const Mat& a);

// Rank of (m mod p) over F_p.
long fp_rank(const Mat& m, const Int& p);

// Solve (basis mod p) * x = v over F_p; basis must be square invertible.
std::vector<Int> fp_solve(const Mat& basis, const std::vector<Int>& v, const Int& p);

// Finite abelian group in invariant-factor form: Z/q_1 x ... x Z/q_k with
// q_1 | q_2 | ... and every q_i >= 2. Elements are exponent vectors on the
// canonical generators.
struct FinAbGroup {
    std::vector<Int> factors;
    std::vector<std::string> labels;   // optional generator labels
    std::optional<Mat> sigma;          // involution on canonical generators

    long ngens() const { return static_cast<long>(factors.size()); }
    Int order() const;
    bool is_trivial() const { return factors.empty(); }
    long rank_mod_p(const Int& p) const;
    std::vector<Int> reduce(std::vector<Int> v) const;
    std::vector<Int> add(const std::vector<Int>& x, const std::vector<Int>& y) const;
    std::vector<Int> scale(const Int& k, const std::vector<Int>& x) const;
    Int element_order(const std::vector<Int>& v) const;
    bool same_structure(const FinAbGroup& other) const { return factors == other.factors; }

    void set_sigma(const Mat& s);  // validates s^2 = id modulo the relations
};

// Result of presenting a group by generators and relation rows. to_canonical
// maps an exponent vector on the original generators to canonical
// coordinates; from_canonical expresses each canonical generator as a word in
// the original generators.
struct Presentation {
    FinAbGroup group;
    long free_rank = 0;
    Mat to_canonical;    // ngens(group) x n_original
    Mat from_canonical;  // n_original x ngens(group)

    std::vector<Int> coords(const std::vector<Int>& original_exponents) const;
};

// relation_rows is (#relations x n_gens); the group is Z^n modulo the row
// span. A nonzero free_rank in the result signals an infinite cokernel.
Presentation from_presentation(long n_gens, const Mat& relation_rows);

// Structure of the subgroup generated by the given elements (columns are
// exponent vectors on g's canonical generators).
FinAbGroup subgroup_structure(const FinAbGroup& g, const std::vector<std::vector<Int>>& gens);

// Structure of g modulo the subgroup generated by the given elements.
Presentation quotient_presentation(const FinAbGroup& g, const std::vector<std::vector<Int>>& gens);

// p-Sylow subgroup together with r = dim_{F_p} g[p]. `positions` lists the
// canonical coordinates of g carrying a p-power factor and `ppows` the
// corresponding p-power; project() maps an element of g into the p-part.
struct PPart {
    FinAbGroup group;
    long r = 0;
    std::vector<long> positions;
    std::vector<Int> ppows;

    std::vector<Int> project(const std::vector<Int>& v) const;
};

PPart p_part(const FinAbGroup& g, const Int& p);

// Eigenspace decomposition of a finite p-group (p odd) under its involution.
struct SigmaSplit {
    FinAbGroup plus;
    FinAbGroup minus;
};

SigmaSplit sigma_split(const FinAbGroup& g, const Int& p);

// Homomorphism between finite abelian groups, columns = images of the domain
// canonical generators. Well-definedness is checked on construction.
struct AbMap {
    const FinAbGroup* domain;
    const FinAbGroup* codomain;
    Mat matrix;  // ngens(codomain) x ngens(domain)

    AbMap(const FinAbGroup& dom, const FinAbGroup& cod, Mat m);
    long image_dim_mod_p(const Int& p) const;
};

// True iff t embeds into a as abelian groups (used for torsion containment
// checks): |t[p^j]| <= |a[p^j]| for all prime powers.
bool embeds_into(const FinAbGroup& t, const FinAbGroup& a);

std::string factors_to_string(const std::vector<Int>& factors);

}  // namespace iqk

#endif
