#include "iqk/rayclass.hpp"

namespace iqk {

RayClassGroup::RayClassGroup(const Int& d, const Int& p, long n) : d_(d), p_(p), n_(n) {
    require_fundamental(d);
    if (n < 1) throw std::invalid_argument("RayClassGroup: level must be >= 1");
    ClassGroup cl = ClassGroup::of_maximal_order(d);
    UnitGroupModPn units(d, p, n);

    n_ideal_ = cl.group().ngens();
    n_unit_ = units.group().ngens();
    long width = n_ideal_ + n_unit_;

    std::vector<std::vector<Int>> rows;
    std::vector<Int> rep_norm_dl_acc;  // reused buffer
    std::vector<Ideal> reps;
    for (long i = 0; i < n_ideal_; ++i) {
        std::vector<Int> e(n_ideal_, Int(0));
        e[static_cast<size_t>(i)] = 1;
        QuadForm f = cl.form_for(e);
        reps.push_back(class_rep_coprime_to(d, f, p));
    }
    for (long i = 0; i < n_ideal_; ++i) {
        Int di = cl.group().factors[static_cast<size_t>(i)];
        auto gen = principal_generator(ideal_pow(reps[static_cast<size_t>(i)], di));
        if (!gen) throw std::logic_error("RayClassGroup: class-order power is not principal");
        std::vector<Int> row(static_cast<size_t>(width), Int(0));
        row[static_cast<size_t>(i)] = di;
        std::vector<Int> u = units.dl(*gen);
        for (long j = 0; j < n_unit_; ++j) row[static_cast<size_t>(n_ideal_ + j)] = -u[static_cast<size_t>(j)];
        rows.push_back(std::move(row));
    }
    for (long j = 0; j < n_unit_; ++j) {
        std::vector<Int> row(static_cast<size_t>(width), Int(0));
        row[static_cast<size_t>(n_ideal_ + j)] = units.group().factors[static_cast<size_t>(j)];
        rows.push_back(std::move(row));
    }
    {
        // principal ideals generated by roots of unity are trivial classes
        MuGenerator mu = mu_generator(d);
        std::vector<Int> u = units.dl(mu.zeta);
        std::vector<Int> row(static_cast<size_t>(width), Int(0));
        for (long j = 0; j < n_unit_; ++j) row[static_cast<size_t>(n_ideal_ + j)] = u[static_cast<size_t>(j)];
        rows.push_back(std::move(row));
    }

    Mat rel(static_cast<long>(rows.size()), width);
    for (size_t i = 0; i < rows.size(); ++i)
        for (long j = 0; j < width; ++j) rel.at(static_cast<long>(i), j) = rows[i][static_cast<size_t>(j)];
    pres_ = from_presentation(width, rel);
    if (pres_.free_rank != 0) throw std::logic_error("RayClassGroup: infinite presentation");

    for (long j = 0; j < n_unit_; ++j) {
        std::vector<Int> orig(static_cast<size_t>(width), Int(0));
        orig[static_cast<size_t>(n_ideal_ + j)] = 1;
        unit_images_.push_back(pres_.coords(orig));
    }

    // sigma: conjugation inverts ideal classes up to the unit class of the
    // norm, and acts on unit classes through the ring involution
    long ncan = pres_.group.ngens();
    if (ncan > 0) {
        Mat s_orig(width, width);
        for (long i = 0; i < n_ideal_; ++i) {
            s_orig.at(i, i) = -1;
            Residue nr = units.reduce_residue(reps[static_cast<size_t>(i)].norm(), 0);
            std::vector<Int> u = units.dl(nr);
            for (long j = 0; j < n_unit_; ++j) s_orig.at(n_ideal_ + j, i) = u[static_cast<size_t>(j)];
        }
        const Mat& su = units.sigma();
        for (long j = 0; j < n_unit_; ++j)
            for (long i = 0; i < n_unit_; ++i) s_orig.at(n_ideal_ + i, n_ideal_ + j) = su.at(i, j);
        Mat s_can = pres_.to_canonical.mul(s_orig).mul(pres_.from_canonical);
        for (long i = 0; i < ncan; ++i)
            for (long j = 0; j < ncan; ++j)
                s_can.at(i, j) = mod_canonical(s_can.at(i, j), pres_.group.factors[static_cast<size_t>(i)]);
        pres_.group.set_sigma(s_can);
    }

    // class-field-theory sanity: the quotient by the unit part is Cl(d);
    // asserted on the p-parts
    Presentation quot = quotient_presentation(pres_.group, unit_images_);
    PPart qp = p_part(quot.group, p);
    PPart clp = p_part(cl.group(), p);
    if (qp.group.factors != clp.group.factors)
        throw std::logic_error("RayClassGroup: quotient by inertia disagrees with the class group");

    ppart_ = p_part(pres_.group, p);
}

long RayClassGroup::inertia_image_dim() const {
    FinAbGroup sub = subgroup_structure(pres_.group, unit_images_);
    return p_part(sub, p_).r;
}

long GabApprox::gab_dim_mod_p() const {
    if (!stabilized) throw std::logic_error("gab_dim_mod_p: levels did not stabilize");
    return 2 + static_cast<long>(torsion.factors.size());
}

GabApprox stabilized_gab(const Int& d, const Int& p, long n_max) {
    if (n_max < 3) throw std::invalid_argument("stabilized_gab: n_max must be >= 3");
    GabApprox out;
    for (long n = 1; n <= n_max; ++n) {
        RayClassGroup rc(d, p, n);
        out.levels.push_back(rc.p_group().factors);
    }
    // classify the last three levels: a stable prefix plus factors growing by
    // exactly p at each level
    const auto& l1 = out.levels[static_cast<size_t>(n_max - 3)];
    const auto& l2 = out.levels[static_cast<size_t>(n_max - 2)];
    const auto& l3 = out.levels[static_cast<size_t>(n_max - 1)];
    if (l1.size() != l2.size() || l2.size() != l3.size()) return out;
    long s = static_cast<long>(l3.size());
    long grow = 0;
    while (grow < s) {
        long i = s - 1 - grow;
        if (l3[static_cast<size_t>(i)] == p * l2[static_cast<size_t>(i)] &&
            l2[static_cast<size_t>(i)] == p * l1[static_cast<size_t>(i)])
            ++grow;
        else
            break;
    }
    for (long i = 0; i < s - grow; ++i) {
        if (!(l1[static_cast<size_t>(i)] == l2[static_cast<size_t>(i)] &&
              l2[static_cast<size_t>(i)] == l3[static_cast<size_t>(i)]))
            return out;  // neither stable nor growing: not stabilized
    }
    out.stabilized = true;
    out.free_rank = grow;
    out.torsion.factors.assign(l3.begin(), l3.begin() + (s - grow));
    return out;
}

RingClassLevel ring_class_level(const Int& d, const Int& p, long n, const ClassGroup& cl, const PPart& clp) {
    RingClassLevel out;
    if (n == 0) {
        out.p_group = clp.group;
        for (long i = 0; i < clp.group.ngens(); ++i) {
            std::vector<Int> e(static_cast<size_t>(clp.group.ngens()), Int(0));
            e[static_cast<size_t>(i)] = 1;
            out.images_in_clp.push_back(std::move(e));
        }
        return out;
    }
    Int disc = d * int_pow(p, static_cast<unsigned long>(2 * n));
    ClassGroup ring = ClassGroup::of_discriminant(disc);
    PPart rp = p_part(ring.group(), p);
    out.p_group = rp.group;

    // image of each base generator form in Cl(d)_p, via extension of the
    // corresponding order-ideal to the maximal order
    Int pn = int_pow(p, static_cast<unsigned long>(n));
    std::vector<std::vector<Int>> base_images;
    for (const QuadForm& f0 : ring.generators()) {
        QuadForm f = form_prime_to(f0, p);
        AlgInt lead(d, 2 * f.a, 0);
        AlgInt beta(d, f.b, pn);  // (b + p^n sqrt(d))/2
        Ideal ext = ideal_from_generators(d, {lead, beta});
        base_images.push_back(clp.project(cl.dl(ideal_form(ext))));
    }
    // canonical p-part generator j = word in base forms
    for (long j = 0; j < rp.group.ngens(); ++j) {
        long pos = rp.positions[static_cast<size_t>(j)];
        std::vector<Int> img(static_cast<size_t>(clp.group.ngens()), Int(0));
        for (long k = 0; k < static_cast<long>(base_images.size()); ++k) {
            Int w = ring.presentation().from_canonical.at(k, pos);
            for (size_t t = 0; t < img.size(); ++t) img[t] += w * base_images[static_cast<size_t>(k)][t];
        }
        out.images_in_clp.push_back(clp.group.reduce(img));
    }
    return out;
}

namespace {

struct Identification {
    bool ok = false;
    long t = 0;
};

Identification identify(const std::vector<Int>& prev, const std::vector<Int>& cur, const Int& p,
                        const RingClassLevel& level, const PPart& clp, bool strict) {
    Identification id;
    if (prev.size() != cur.size() || cur.empty()) return id;
    size_t s = cur.size();
    if (cur[s - 1] != p * prev[s - 1]) return id;
    for (size_t i = 0; i + 1 < s; ++i)
        if (prev[i] != cur[i]) return id;
    if (strict && s >= 2 && cur[s - 1] <= cur[s - 2]) return id;
    // torsion complement = all canonical generators except the growing last one
    std::vector<std::vector<Int>> tprime(level.images_in_clp.begin(),
                                         level.images_in_clp.end() - 1);
    FinAbGroup img = subgroup_structure(clp.group, tprime);
    Int index = clp.group.order() / img.order();
    id.t = (index == 1) ? 0 : valuation(index, p);
    id.ok = true;
    return id;
}

}  // namespace

AntiDegree anti_unramified_degree(const Int& d, const Int& p, long n_max) {
    require_fundamental(d);
    if (n_max < 3) throw std::invalid_argument("anti_unramified_degree: n_max must be >= 3");
    ClassGroup cl = ClassGroup::of_maximal_order(d);
    PPart clp = p_part(cl.group(), p);
    AntiDegree out;
    if (clp.r == 0) {
        out.confident = true;
        return out;
    }
    const Int disc_budget = Int(1) << 36;
    std::vector<std::vector<Int>> factor_history{clp.group.factors};
    std::vector<Identification> ids;
    RingClassLevel lvl;
    for (long n = 1; n <= n_max; ++n) {
        if (-d * int_pow(p, static_cast<unsigned long>(2 * n)) > disc_budget) break;
        lvl = ring_class_level(d, p, n, cl, clp);
        out.levels_used = n;
        Identification id =
            identify(factor_history.back(), lvl.p_group.factors, p, lvl, clp, /*strict=*/true);
        factor_history.push_back(lvl.p_group.factors);
        if (id.ok) {
            ids.push_back(id);
            if (ids.size() >= 2 && ids[ids.size() - 1].t == ids[ids.size() - 2].t) {
                out.t = id.t;
                out.confident = true;
                return out;
            }
        } else {
            ids.clear();
        }
    }
    // no two agreeing identifications within budget: report the best guess
    if (!ids.empty()) {
        out.t = ids.back().t;
    } else if (factor_history.size() >= 2 && !factor_history.back().empty()) {
        Identification loose = identify(factor_history[factor_history.size() - 2], factor_history.back(), p,
                                        lvl, clp, /*strict=*/false);
        out.t = loose.ok ? loose.t : 0;
    }
    out.confident = false;
    return out;
}

}  // namespace iqk
