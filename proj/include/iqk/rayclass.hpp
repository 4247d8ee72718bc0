#ifndef IQK_RAYCLASS_HPP
#define IQK_RAYCLASS_HPP

#include "iqk/localunits.hpp"

namespace iqk {

// Ray class group of modulus p^n, presented from class-group generators
// coprime to p together with the unit classes of (O_k/p^n)^x / mu(k).
class RayClassGroup {
  public:
    RayClassGroup(const Int& d, const Int& p, long n);

    const Int& disc() const { return d_; }
    const Int& prime() const { return p_; }
    long level() const { return n_; }
    const FinAbGroup& group() const { return pres_.group; }
    const FinAbGroup& p_group() const { return ppart_.group; }
    // dim mod p of the inertia image (the unit part) inside the p-part
    long inertia_image_dim() const;

  private:
    Int d_, p_;
    long n_;
    long n_ideal_ = 0, n_unit_ = 0;
    Presentation pres_;
    PPart ppart_;
    std::vector<std::vector<Int>> unit_images_;  // canonical coords of the unit generators
};

// Finite-level approximations of G^ab across ray levels 1..n_max.
struct GabApprox {
    long free_rank = 0;
    FinAbGroup torsion;
    std::vector<std::vector<Int>> levels;  // invariant factors of the p-part per level
    bool stabilized = false;

    // 2 + dim_{F_p}(torsion tensor F_p); requires stabilized
    long gab_dim_mod_p() const;
};

GabApprox stabilized_gab(const Int& d, const Int& p, long n_max = 6);

// Degree bookkeeping for the maximal unramified subextension of the
// anticyclotomic tower, read off the ring class groups Cl(D * p^(2n)).
struct AntiDegree {
    long t = 0;
    bool confident = false;
    long levels_used = 0;
};

AntiDegree anti_unramified_degree(const Int& d, const Int& p, long n_max = 5);

// p-part of the ring class group of discriminant d * p^(2n) plus the images
// of its canonical generators in the p-part of Cl(d) under extension of
// ideals to the maximal order.
struct RingClassLevel {
    FinAbGroup p_group;
    std::vector<std::vector<Int>> images_in_clp;  // one per canonical generator
};

RingClassLevel ring_class_level(const Int& d, const Int& p, long n, const ClassGroup& cl, const PPart& clp);

}  // namespace iqk

#endif
