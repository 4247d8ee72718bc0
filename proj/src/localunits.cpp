#include "iqk/localunits.hpp"

#include <algorithm>

namespace iqk {

namespace {

// omega^2 = D*omega - (D^2 - D)/4
Int omega_norm(const Int& d) { return (d * d - d) / 4; }

long long small_key(const Int& u, const Int& v, const Int& p) {
    return mpz_get_si(u.get_mpz_t()) * mpz_get_si(p.get_mpz_t()) + mpz_get_si(v.get_mpz_t());
}

// Smallest primitive root mod p^2; it generates (Z/p^c)^x for every c.
Int smallest_primitive_root(const Int& p) {
    Int p2 = p * p;
    Int grouporder = p * (p - 1);
    auto fac = factorize(grouporder);
    for (Int g = 2; g < p2; ++g) {
        if (mod_canonical(g, p) == 0) continue;
        bool primitive = true;
        for (const auto& [q, e] : fac) {
            (void)e;
            if (mod_pow(g, grouporder / q, p2) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("smallest_primitive_root: none found");
}

}  // namespace

Residue UnitGroupModPn::mul(const Residue& a, const Residue& b) const {
    Int wn = omega_norm(d_);
    Int u = a.u * b.u - a.v * b.v * wn;
    Int v = a.u * b.v + a.v * b.u + a.v * b.v * d_;
    return reduce_residue(u, v);
}

Residue UnitGroupModPn::conj_residue(const Residue& a) const {
    return reduce_residue(a.u + a.v * d_, -a.v);
}

Int UnitGroupModPn::residue_norm(const Residue& a) const {
    return mod_canonical(a.u * a.u + a.u * a.v * d_ + a.v * a.v * omega_norm(d_), pn_);
}

bool UnitGroupModPn::is_unit(const Residue& a) const { return gcd(residue_norm(a), p_) == 1; }

Residue UnitGroupModPn::inverse(const Residue& a) const {
    Int nrm = residue_norm(a);
    Int ninv = mod_inverse(nrm, pn_);
    Residue cj = conj_residue(a);
    return reduce_residue(cj.u * ninv, cj.v * ninv);
}

Residue UnitGroupModPn::pow(const Residue& a, const Int& e) const {
    Residue base = e < 0 ? inverse(a) : a;
    Int n = abs(e);
    Residue acc{1, 0};
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = mul(acc, base);
        base = mul(base, base);
        n /= 2;
    }
    return acc;
}

long long UnitGroupModPn::vkey(const Residue& a) const {
    return small_key(mod_canonical(a.u, p_), mod_canonical(a.v, p_), p_);
}

std::pair<Int, Int> UnitGroupModPn::log_principal(const Residue& x) const {
    // log(1+z) = sum (-1)^(k+1) z^k / k, exact mod p^n for z in pO
    Int zu = mod_canonical(x.u - 1, pn_), zv = mod_canonical(x.v, pn_);
    if (mod_canonical(zu, p_) != 0 || mod_canonical(zv, p_) != 0)
        throw std::invalid_argument("log_principal: element not a principal unit");
    Int wu = zu / p_, wv = zv / p_;  // z = p*w
    Int su = 0, sv = 0;
    Residue wk{1, 0};  // w^k accumulated in the same ring
    const long cap = n_ + 40;
    for (long k = 1; k <= cap; ++k) {
        {
            Int t1 = wk.u * wu - wk.v * wv * omega_norm(d_);
            Int t2 = wk.u * wv + wk.v * wu + wk.v * wv * d_;
            wk = reduce_residue(t1, t2);
        }
        long vk = (k % mpz_get_si(p_.get_mpz_t()) == 0) ? valuation(Int(k), p_) : 0;
        long shift = k - vk;
        if (shift >= n_) continue;
        Int unitpart = Int(k) / int_pow(p_, static_cast<unsigned long>(vk));
        Int coef = int_pow(p_, static_cast<unsigned long>(shift)) * mod_inverse(unitpart, pn_);
        if (k % 2 == 0) coef = -coef;
        su = mod_canonical(su + coef * wk.u, pn_);
        sv = mod_canonical(sv + coef * wk.v, pn_);
    }
    // the sum lies in pO; return coordinates of log(x)/p mod p^(n-1)
    if (mod_canonical(su, p_) != 0 || mod_canonical(sv, p_) != 0)
        throw std::logic_error("log_principal: image not in pO");
    Int pn1 = pn_ / p_;
    return {mod_canonical(su / p_, pn1), mod_canonical(sv / p_, pn1)};
}

Residue UnitGroupModPn::exp_of(const Int& zu, const Int& zv) const {
    if (mod_canonical(zu, p_) != 0 || mod_canonical(zv, p_) != 0)
        throw std::invalid_argument("exp_of: argument must lie in pO");
    Int wu = zu / p_, wv = zv / p_;
    Residue acc{1, 0};
    Residue wk{1, 0};
    Int efac = 0;       // v_p(k!)
    Int unit_fac = 1;   // k! / p^(v_p(k!)) mod p^n
    const long pl = mpz_get_si(p_.get_mpz_t());
    const long cap = (n_ * (pl - 1) - 1) / (pl - 2) + 2;
    for (long k = 1; k <= cap; ++k) {
        {
            Int t1 = wk.u * wu - wk.v * wv * omega_norm(d_);
            Int t2 = wk.u * wv + wk.v * wu + wk.v * wv * d_;
            wk = reduce_residue(t1, t2);
        }
        long vk = (k % pl == 0) ? valuation(Int(k), p_) : 0;
        efac += vk;
        unit_fac = mod_canonical(unit_fac * (Int(k) / int_pow(p_, static_cast<unsigned long>(vk))), pn_);
        Int shift = Int(k) - efac;
        if (shift >= n_) continue;
        Int coef = mod_pow(p_, shift, pn_) * mod_inverse(unit_fac, pn_);
        acc.u = mod_canonical(acc.u + coef * wk.u, pn_);
        acc.v = mod_canonical(acc.v + coef * wk.v, pn_);
    }
    return acc;
}

UnitGroupModPn::UnitGroupModPn(const Int& d, const Int& p, long n) : d_(d), p_(p), n_(n) {
    if (n < 1) throw std::invalid_argument("UnitGroupModPn: level must be >= 1");
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("UnitGroupModPn: p must be an odd prime");
    if (p > 1000) throw std::invalid_argument("UnitGroupModPn: prime beyond desk scale");
    pn_ = int_pow(p, static_cast<unsigned long>(n));

    // (O/p)^x by brute-force closure
    std::vector<Residue> vunits;
    for (Int u = 0; u < p; ++u)
        for (Int v = 0; v < p; ++v) {
            Residue r{u, v};
            Int nr = u * u + u * v * d_ + v * v * omega_norm(d_);
            if (gcd(mod_canonical(nr, p), p) == 1) vunits.push_back(r);
        }
    auto vmul = [&](const Residue& a, const Residue& b) {
        Int u = a.u * b.u - a.v * b.v * omega_norm(d_);
        Int v = a.u * b.v + a.v * b.u + a.v * b.v * d_;
        return Residue{mod_canonical(u, p), mod_canonical(v, p)};
    };
    vtable_[small_key(1, 0, p)] = {};
    std::vector<Residue> elems{{1, 0}};
    std::vector<std::vector<Int>> vrows;
    for (const Residue& cand : vunits) {
        if (vtable_.count(small_key(cand.u, cand.v, p))) continue;
        long j = static_cast<long>(vgens_.size());
        vgens_.push_back(cand);
        for (auto& [k, vec] : vtable_) vec.resize(j + 1, Int(0));
        size_t base_count = elems.size();
        Residue pw = cand;
        Int t = 1;
        for (;;) {
            auto it = vtable_.find(small_key(pw.u, pw.v, p));
            if (it != vtable_.end()) {
                std::vector<Int> row = it->second;
                for (auto& x : row) x = -x;
                row[j] += t;
                vrows.push_back(std::move(row));
                break;
            }
            for (size_t i = 0; i < base_count; ++i) {
                Residue comb = vmul(elems[i], pw);
                auto key = small_key(comb.u, comb.v, p);
                if (!vtable_.count(key)) {
                    std::vector<Int> nv = vtable_.at(small_key(elems[i].u, elems[i].v, p));
                    nv.resize(j + 1, Int(0));
                    nv[j] = t;
                    vtable_.emplace(key, std::move(nv));
                    elems.push_back(comb);
                }
            }
            pw = vmul(pw, cand);
            ++t;
        }
    }
    for (auto& [k, vec] : vtable_) vec.resize(vgens_.size(), Int(0));

    long k = static_cast<long>(vgens_.size());
    long width = (n_ >= 2) ? k + 2 : k;
    std::vector<std::vector<Int>> rows;
    for (auto& r : vrows) {
        r.resize(static_cast<size_t>(k), Int(0));
        r.resize(static_cast<size_t>(width), Int(0));
        if (n_ >= 2) {
            // evaluate the relation word mod p^n; it lands in 1 + pO
            Residue w{1, 0};
            for (long j = 0; j < k; ++j) w = mul(w, pow(vgens_[j], r[static_cast<size_t>(j)]));
            auto [lu, lv] = log_principal(w);
            r[static_cast<size_t>(k)] = -lu;
            r[static_cast<size_t>(k) + 1] = -lv;
        }
        rows.push_back(r);
    }
    if (n_ >= 2) {
        Int pn1 = pn_ / p_;
        std::vector<Int> r1(static_cast<size_t>(width), Int(0)), r2(static_cast<size_t>(width), Int(0));
        r1[static_cast<size_t>(k)] = pn1;
        r2[static_cast<size_t>(k) + 1] = pn1;
        rows.push_back(r1);
        rows.push_back(r2);
        // consistency of the principal-unit coordinates
        Residue g1 = exp_of(p_, 0), g2 = exp_of(0, p_);
        auto c1 = log_principal(g1);
        auto c2 = log_principal(g2);
        if (!(c1.first == 1 && c1.second == 0 && c2.first == 0 && c2.second == 1))
            throw std::logic_error("UnitGroupModPn: exp/log mismatch");
    }

    Mat rel(static_cast<long>(rows.size()), width);
    for (size_t i = 0; i < rows.size(); ++i)
        for (long j = 0; j < width; ++j) rel.at(static_cast<long>(i), j) = rows[i][static_cast<size_t>(j)];
    pres_ = from_presentation(width, rel);
    if (pres_.free_rank != 0) throw std::logic_error("UnitGroupModPn: infinite presentation");
    Int expected = Int(static_cast<long>(vunits.size()));
    if (n_ >= 2) expected *= int_pow(p_, static_cast<unsigned long>(2 * (n_ - 1)));
    if (pres_.group.order() != expected)
        throw std::logic_error("UnitGroupModPn: order mismatch against the unit-count formula");

    // sigma on canonical generators: conjugate each original generator,
    // express in canonical coordinates, then change basis
    long ncan = pres_.group.ngens();
    Mat a(ncan, width);
    auto put_col = [&](long col, const std::vector<Int>& coords) {
        for (long i = 0; i < ncan; ++i) a.at(i, col) = coords[static_cast<size_t>(i)];
    };
    for (long j = 0; j < k; ++j) put_col(j, dl(conj_residue(vgens_[j])));
    if (n_ >= 2) {
        put_col(k, dl(conj_residue(exp_of(p_, 0))));
        put_col(k + 1, dl(conj_residue(exp_of(0, p_))));
    }
    sigma_ = a.mul(pres_.from_canonical);
    for (long i = 0; i < ncan; ++i)
        for (long j = 0; j < ncan; ++j)
            sigma_.at(i, j) = mod_canonical(sigma_.at(i, j), pres_.group.factors[static_cast<size_t>(i)]);
    pres_.group.set_sigma(sigma_);
}

std::vector<Int> UnitGroupModPn::dl(const Residue& a0) const {
    Residue a = reduce_residue(a0.u, a0.v);
    if (!is_unit(a)) throw std::invalid_argument("dl: residue is not a unit");
    auto it = vtable_.find(vkey(a));
    if (it == vtable_.end()) throw std::logic_error("dl: missing V-table entry");
    const std::vector<Int>& t = it->second;
    std::vector<Int> orig(t.begin(), t.end());
    if (n_ >= 2) {
        Residue y = a;
        for (size_t j = 0; j < vgens_.size(); ++j)
            if (t[j] != 0) y = mul(y, pow(vgens_[j], -t[j]));
        auto [lu, lv] = log_principal(y);
        orig.push_back(lu);
        orig.push_back(lv);
    }
    return pres_.coords(orig);
}

Residue UnitGroupModPn::residue_of(const AlgInt& x) const {
    if (x.d != d_) throw std::invalid_argument("residue_of: field mismatch");
    auto [u, v] = x.basis_coords();
    return reduce_residue(u, v);
}

std::vector<Int> UnitGroupModPn::dl(const AlgInt& x) const {
    if (gcd(x.norm(), p_) != 1) throw std::invalid_argument("dl: element not coprime to p");
    return dl(residue_of(x));
}

MuGenerator mu_generator(const Int& d) {
    if (d == -3) return {AlgInt(d, 1, 1), 6};   // (1 + sqrt(-3))/2, a sixth root of unity
    if (d == -4) return {AlgInt(d, 0, 1), 4};   // sqrt(-4)/2 = i
    return {AlgInt(d, -2, 0), 2};               // -1
}

bool LocalUnitSpace::mu_class_nonzero() const {
    for (const Int& x : mu_class_)
        if (x != 0) return true;
    return false;
}

long LocalUnitSpace::dim_mod_mu() const { return dim_ - (mu_class_nonzero() ? 1 : 0); }

std::vector<Int> LocalUnitSpace::w_of_canonical(const std::vector<Int>& canon) const {
    std::vector<Int> w(w_positions_.size());
    for (size_t i = 0; i < w_positions_.size(); ++i)
        w[i] = mod_canonical(canon[static_cast<size_t>(w_positions_[i])], p_);
    return w;
}

std::vector<Int> LocalUnitSpace::w_of_residue(const Residue& r) const {
    return w_of_canonical(units_->dl(r));
}

std::vector<Int> LocalUnitSpace::w_class(const AlgInt& x) const {
    if (gcd(x.norm(), p_) != 1) throw std::invalid_argument("w_class: element not coprime to p");
    return w_of_residue(units_->residue_of(x));
}

std::vector<Int> LocalUnitSpace::minus_project(const std::vector<Int>& w) const {
    // (1 - sigma)/2 on W
    Int inv2 = (p_ + 1) / 2;
    std::vector<Int> out(w.size());
    for (size_t i = 0; i < w.size(); ++i) {
        Int acc = w[i];
        for (size_t j = 0; j < w.size(); ++j) acc -= w_sigma_.at(static_cast<long>(i), static_cast<long>(j)) * w[j];
        out[i] = mod_canonical(acc * inv2, p_);
    }
    return out;
}

bool LocalUnitSpace::try_build(long c, std::string* why) {
    units_ = std::make_unique<UnitGroupModPn>(d_, p_, c);
    c_ = c;
    const FinAbGroup& g = units_->group();
    w_positions_.clear();
    for (long i = 0; i < g.ngens(); ++i)
        if (mod_canonical(g.factors[static_cast<size_t>(i)], p_) == 0) w_positions_.push_back(i);
    dim_ = static_cast<long>(w_positions_.size());

    bool mu_case = (p_ == 3 && mod_canonical(d_, 9) == 6);  // disc = -3 mod 9
    long expected_dim = 2 + (mu_case ? 1 : 0);
    if (dim_ != expected_dim) {
        if (why) *why = "total dimension " + std::to_string(dim_) + " != " + std::to_string(expected_dim);
        return false;
    }

    // sigma restricted to W
    w_sigma_ = Mat(dim_, dim_);
    const Mat& s = units_->sigma();
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j)
            w_sigma_.at(i, j) = mod_canonical(s.at(w_positions_[static_cast<size_t>(i)],
                                                   w_positions_[static_cast<size_t>(j)]), p_);
    Mat plus(dim_, dim_), minus(dim_, dim_);
    for (long i = 0; i < dim_; ++i)
        for (long j = 0; j < dim_; ++j) {
            Int idij = (i == j) ? 1 : 0;
            plus.at(i, j) = mod_canonical(idij + w_sigma_.at(i, j), p_);
            minus.at(i, j) = mod_canonical(idij - w_sigma_.at(i, j), p_);
        }
    plus_dim_ = fp_rank(plus, p_);
    minus_dim_ = fp_rank(minus, p_);
    if (plus_dim_ != 1 || minus_dim_ != expected_dim - 1 || plus_dim_ + minus_dim_ != dim_) {
        if (why)
            *why = "eigenspace dims (" + std::to_string(plus_dim_) + "," + std::to_string(minus_dim_) + ") unexpected";
        return false;
    }
    return true;
}

LocalUnitSpace::LocalUnitSpace(const Int& d, const Int& p, long c) : d_(d), p_(p) {
    require_fundamental(d);
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("LocalUnitSpace: p must be an odd prime");
    kind_ = splitting_type(d, p).kind;
    long floor_c = (kind_ == SplitKind::Ramified) ? (p == 3 ? 5 : 3) : 2;
    if (c != 0 && c < floor_c)
        throw std::invalid_argument("LocalUnitSpace: precision below the floor for this splitting type");
    long start = (c != 0) ? c : floor_c;
    const long max_c = start + 8;
    std::string why;
    long good = -1;
    for (long cc = start; cc <= max_c; ++cc) {
        if (!try_build(cc, &why)) continue;
        // invariants must also hold at the next level before we accept
        std::string why2;
        auto snapshot_units = std::move(units_);
        long sc = c_;
        auto spos = w_positions_;
        auto sdim = dim_;
        auto spd = plus_dim_, smd = minus_dim_;
        auto ssig = w_sigma_;
        if (try_build(cc + 1, &why2)) {
            units_ = std::move(snapshot_units);
            c_ = sc;
            w_positions_ = spos;
            dim_ = sdim;
            plus_dim_ = spd;
            minus_dim_ = smd;
            w_sigma_ = ssig;
            good = cc;
            break;
        }
        why = "held at " + std::to_string(cc) + " but failed at " + std::to_string(cc + 1) + ": " + why2;
    }
    if (good < 0)
        throw StabilizationError("local unit dimensions failed to stabilize for D=" + d.get_str() +
                                 ", p=" + p.get_str() + " (" + why + ")");

    // tagged basis
    const Int pc = units_->modulus();
    auto span_rank = [&](const std::vector<std::vector<Int>>& vecs) {
        Mat m(dim_, static_cast<long>(vecs.size()));
        for (size_t j = 0; j < vecs.size(); ++j)
            for (long i = 0; i < dim_; ++i) m.at(i, static_cast<long>(j)) = vecs[j][static_cast<size_t>(i)];
        return fp_rank(m, p_);
    };
    std::vector<std::vector<Int>> basis_vecs;
    if (kind_ == SplitKind::Split) {
        // alpha_P = (a_P, 1): a generator on the P side, 1 on the conjugate side
        Int g0 = smallest_primitive_root(p_);
        auto s0 = sqrt_mod_prime_power(d_, p_, 1);
        auto s = sqrt_mod_prime_power(d_, p_, static_cast<unsigned long>(c_));
        if (!s0 || !s) throw std::logic_error("LocalUnitSpace: split prime without a square root");
        // anchor the root at its mod-p reduction so the labelling of P and
        // P^sigma does not depend on the working precision
        Int sc = (mod_canonical(*s, p_) == *s0) ? *s : pc - *s;
        // idempotent (omega - r2)/(r1 - r2) with omega -> r_i = (D +- s)/2 mod p^c
        Int inv2 = mod_inverse(2, pc);
        Int r2 = mod_canonical((d_ - sc) * inv2, pc);
        Int sinv = mod_inverse(sc, pc);
        Int e1u = mod_canonical(-r2 * sinv, pc);
        Int e1v = mod_canonical(sinv, pc);
        Residue x{mod_canonical(1 + (g0 - 1) * e1u, pc), mod_canonical((g0 - 1) * e1v, pc)};
        if (!units_->is_unit(x)) throw std::logic_error("LocalUnitSpace: CRT element is not a unit");
        basis_vecs.push_back(w_of_residue(x));
        basis_vecs.push_back(w_of_residue(units_->conj_residue(x)));
        tags_ = {"a_P", "a_P^sigma"};
    } else {
        bool mu_case = (p_ == 3 && mod_canonical(d_, 9) == 6);
        Int g0 = smallest_primitive_root(p_);
        basis_vecs.push_back(w_of_residue(Residue{mod_canonical(g0, pc), 0}));
        tags_ = {"a_P"};
        if (mu_case) {
            // canonical local cube root of unity: zeta = (-1 + sqrt(D)/t)/2
            // with t = the Hensel root of t^2 = D/(-3) that is 1 mod 3
            Int u = d_ / -3;
            auto t = sqrt_mod_prime_power(u, p_, static_cast<unsigned long>(c_));
            if (!t) throw std::logic_error("LocalUnitSpace: D/-3 is not a square mod 3^c");
            Int tt = (mod_canonical(*t, 3) == 1) ? *t : pc - *t;
            Int it = mod_inverse(tt, pc);
            Int inv2 = mod_inverse(2, pc);
            // sqrt(D) = 2*omega - D exactly
            Int s3u = mod_canonical(-d_ * it, pc), s3v = mod_canonical(2 * it, pc);
            Residue zeta{mod_canonical((s3u - 1) * inv2, pc), mod_canonical(s3v * inv2, pc)};
            Residue z3 = units_->pow(zeta, 3);
            if (!(z3 == Residue{1, 0}) || zeta == Residue{1, 0})
                throw std::logic_error("LocalUnitSpace: constructed element is not a primitive cube root");
            basis_vecs.push_back(w_of_residue(zeta));
            tags_.push_back("b_1P");
        }
        // deterministic small-element scan for the remaining minus direction(s)
        std::string last_tag = mu_case ? "b_2P" : "b_1P";
        bool found = false;
        for (Int v = 0; v < p_ && !found; ++v)
            for (Int u = 0; u < p_ && !found; ++u) {
                Residue cand{u, v};
                if (!units_->is_unit(cand)) continue;
                std::vector<Int> m = minus_project(w_of_residue(cand));
                auto trial = basis_vecs;
                trial.push_back(m);
                if (span_rank(trial) == static_cast<long>(trial.size())) {
                    basis_vecs.push_back(m);
                    tags_.push_back(last_tag);
                    found = true;
                }
            }
        if (!found) throw std::logic_error("LocalUnitSpace: no independent minus-part element found");
    }
    if (static_cast<long>(basis_vecs.size()) != dim_ || span_rank(basis_vecs) != dim_)
        throw std::logic_error("LocalUnitSpace: tagged basis does not span");
    basis_ = Mat(dim_, dim_);
    for (long j = 0; j < dim_; ++j)
        for (long i = 0; i < dim_; ++i) basis_.at(i, j) = basis_vecs[static_cast<size_t>(j)][static_cast<size_t>(i)];

    MuGenerator mu = mu_generator(d_);
    mu_class_ = w_class(mu.zeta);
}

std::vector<Int> LocalUnitSpace::unit_image(const AlgInt& x) const {
    return fp_solve(basis_, w_class(x), p_);
}

std::vector<Int> LocalUnitSpace::mu_image() const { return fp_solve(basis_, mu_class_, p_); }

DeltaResult delta_k_detail(const Int& d, const Int& p, const ClassGroup& cl, const LocalUnitSpace& space,
                           long rep_skip) {
    DeltaResult res;
    PPart ap = p_part(cl.group(), p);
    res.r = ap.r;
    if (ap.r == 0) return res;

    std::vector<std::vector<Int>> vecs;
    if (space.mu_class_nonzero()) vecs.push_back(space.mu_image());
    for (long i = 0; i < ap.r; ++i) {
        // an order-p class hitting the i-th basis line of A_k[p]
        std::vector<Int> coords(cl.group().ngens(), Int(0));
        long pos = ap.positions[static_cast<size_t>(i)];
        Int q = cl.group().factors[static_cast<size_t>(pos)];
        coords[static_cast<size_t>(pos)] = q / p;
        QuadForm f = cl.form_for(coords);
        Ideal rep = class_rep_coprime_to_skip(d, f, p, rep_skip);
        Ideal power = ideal_pow(rep, p);
        auto gen = principal_generator(power);
        if (!gen) throw std::logic_error("delta_k: p-th power of an order-p class is not principal");
        res.images.push_back(space.unit_image(*gen));
        vecs.push_back(res.images.back());
    }
    Mat with_mu(static_cast<long>(vecs[0].size()), static_cast<long>(vecs.size()));
    for (size_t j = 0; j < vecs.size(); ++j)
        for (size_t i = 0; i < vecs[0].size(); ++i)
            with_mu.at(static_cast<long>(i), static_cast<long>(j)) = vecs[j][i];
    long total = fp_rank(with_mu, p);
    long mu_rank = space.mu_class_nonzero() ? 1 : 0;
    res.delta = total - mu_rank;
    return res;
}

long delta_k(const Int& d, const Int& p) {
    ClassGroup cl = ClassGroup::of_maximal_order(d);
    if (p_part(cl.group(), p).r == 0) return 0;
    LocalUnitSpace space(d, p);
    return delta_k_detail(d, p, cl, space).delta;
}

}  // namespace iqk
