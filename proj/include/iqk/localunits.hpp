#ifndef IQK_LOCALUNITS_HPP
#define IQK_LOCALUNITS_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "iqk/ideal.hpp"

namespace iqk {

struct StabilizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Residue u + v*omega of O_k mod p^n, omega = (D + sqrt(D))/2.
struct Residue {
    Int u, v;
    bool operator==(const Residue& o) const = default;
};

// (O_k / p^n)^x with discrete logarithms. Generators are assembled from the
// small quotient (O/p)^x (brute-force closure) and the principal units
// 1 + pO (exact p-adic log/exp), then combined into one presentation; no
// direct-sum assumption is made, the relation rows carry the interaction.
class UnitGroupModPn {
  public:
    UnitGroupModPn(const Int& d, const Int& p, long n);

    const FinAbGroup& group() const { return pres_.group; }
    const Presentation& presentation() const { return pres_; }
    const Int& modulus() const { return pn_; }
    long level() const { return n_; }

    Residue reduce_residue(Int u, Int v) const { return {mod_canonical(u, pn_), mod_canonical(v, pn_)}; }
    Residue mul(const Residue& a, const Residue& b) const;
    Residue pow(const Residue& a, const Int& e) const;
    Residue inverse(const Residue& a) const;
    Residue conj_residue(const Residue& a) const;  // sigma action
    Int residue_norm(const Residue& a) const;
    bool is_unit(const Residue& a) const;

    // canonical coordinates of a unit residue
    std::vector<Int> dl(const Residue& a) const;
    std::vector<Int> dl(const AlgInt& x) const;
    Residue residue_of(const AlgInt& x) const;

    // sigma as a matrix on the canonical generators (also installed on group())
    const Mat& sigma() const { return sigma_; }

  private:
    Int d_, p_, pn_;
    long n_;
    Presentation pres_;
    Mat sigma_;

    // lifted generators of (O/p)^x and principal-unit generators exp(p), exp(p*omega)
    std::vector<Residue> vgens_;
    std::unordered_map<long long, std::vector<Int>> vtable_;  // residue mod p -> exponents on vgens_
    long long vkey(const Residue& a) const;

    std::pair<Int, Int> log_principal(const Residue& x) const;  // x in 1 + pO
    Residue exp_of(const Int& zu, const Int& zv) const;         // z = zu + zv*omega in pO
};

// Root of unity generating mu(k), with its order.
struct MuGenerator {
    AlgInt zeta;
    unsigned long order;
};
MuGenerator mu_generator(const Int& d);

// The F_p-space prod_{P|p} U_P/U_P^p with sigma-eigenspace data and a tagged
// basis. Precision is raised automatically until the dimension invariants
// hold and repeat at the next level.
class LocalUnitSpace {
  public:
    LocalUnitSpace(const Int& d, const Int& p, long c = 0);

    const Int& disc() const { return d_; }
    const Int& prime() const { return p_; }
    long precision() const { return c_; }
    SplitKind splitting() const { return kind_; }
    long dim() const { return dim_; }
    long plus_dim() const { return plus_dim_; }
    long minus_dim() const { return minus_dim_; }
    const std::vector<std::string>& tags() const { return tags_; }
    const UnitGroupModPn& units() const { return *units_; }

    // F_p coordinates of the class of x on the tagged basis
    std::vector<Int> unit_image(const AlgInt& x) const;
    // class of the mu(k) generator in raw W coordinates (zero unless D=-3, p=3)
    const std::vector<Int>& mu_class() const { return mu_class_; }
    // the same class on the tagged basis
    std::vector<Int> mu_image() const;
    bool mu_class_nonzero() const;
    // dim of W modulo the image of mu(k)
    long dim_mod_mu() const;
    // raw W coordinates (canonical p-divisible positions mod p)
    std::vector<Int> w_class(const AlgInt& x) const;

  private:
    Int d_, p_;
    long c_;
    SplitKind kind_;
    std::unique_ptr<UnitGroupModPn> units_;
    long dim_ = 0, plus_dim_ = 0, minus_dim_ = 0;
    std::vector<long> w_positions_;
    std::vector<std::string> tags_;
    Mat basis_;       // dim x dim over F_p, columns = tagged basis vectors
    Mat w_sigma_;     // sigma on W
    std::vector<Int> mu_class_;

    bool try_build(long c, std::string* why);
    std::vector<Int> w_of_canonical(const std::vector<Int>& canon) const;
    std::vector<Int> w_of_residue(const Residue& r) const;
    std::vector<Int> minus_project(const std::vector<Int>& w) const;
};

// Image dimension of the connecting map A_k[p] -> prod U_P/U_P^p (the defect
// entering the generator-rank formula). rep_skip > 0 switches every class to
// an alternative coprime representative, for well-definedness checks.
struct DeltaResult {
    long delta = 0;
    long r = 0;
    std::vector<std::vector<Int>> images;  // tagged-basis coordinates per A_k[p] basis class
};

DeltaResult delta_k_detail(const Int& d, const Int& p, const ClassGroup& cl, const LocalUnitSpace& space,
                           long rep_skip = 0);
long delta_k(const Int& d, const Int& p);

}  // namespace iqk

#endif
