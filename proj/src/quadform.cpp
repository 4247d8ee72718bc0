#include "iqk/quadform.hpp"

#include <numeric>
#include <sstream>

namespace iqk {

bool is_valid_discriminant(const Int& d) {
    if (d >= 0) return false;
    Int m4 = mod_canonical(d, 4);
    return m4 == 0 || m4 == 1;
}

bool is_fundamental_discriminant(const Int& d) {
    if (!is_valid_discriminant(d)) return false;
    if (mod_canonical(d, 4) == 1) return is_squarefree(d);
    Int m = d / 4;
    Int m4 = mod_canonical(m, 4);
    return (m4 == 2 || m4 == 3) && is_squarefree(m);
}

void require_fundamental(const Int& d) {
    if (!is_valid_discriminant(d))
        throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
    if (!is_fundamental_discriminant(d))
        throw NonFundamentalDiscriminant("discriminant " + d.get_str() +
                                         " is not fundamental (non-maximal orders belong to ring class groups)");
}

bool QuadForm::is_reduced() const {
    Int ab = abs(b);
    if (!(ab <= a && a <= c)) return false;
    if ((ab == a || a == c) && b < 0) return false;
    return true;
}

std::string QuadForm::str() const {
    std::ostringstream os;
    os << "(" << a.get_str() << "," << b.get_str() << "," << c.get_str() << ")";
    return os.str();
}

QuadForm principal_form(const Int& d) {
    if (!is_valid_discriminant(d)) throw std::invalid_argument("principal_form: invalid discriminant");
    if (mod_canonical(d, 4) == 0) return {1, 0, -d / 4};
    return {1, 1, (1 - d) / 4};
}

namespace {

void check_form(const QuadForm& f) {
    if (f.discriminant() >= 0) throw std::invalid_argument("form must have negative discriminant");
    if (f.a <= 0) throw std::invalid_argument("form must have a > 0");
}

// f transformed by [[m00,m01],[m10,m11]] (acting on the variables).
QuadForm transform(const QuadForm& f, const Int& m00, const Int& m01, const Int& m10, const Int& m11) {
    QuadForm r;
    r.a = f.a * m00 * m00 + f.b * m00 * m10 + f.c * m10 * m10;
    r.b = 2 * f.a * m00 * m01 + f.b * (m00 * m11 + m01 * m10) + 2 * f.c * m10 * m11;
    r.c = f.a * m01 * m01 + f.b * m01 * m11 + f.c * m11 * m11;
    return r;
}

Int crt(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int g = gcd(m1, m2);
    Int diff = r2 - r1;
    if (mod_canonical(diff, g) != 0) throw std::logic_error("crt: incompatible congruences");
    Int m1g = m1 / g, m2g = m2 / g;
    Int t = mod_canonical((diff / g) * mod_inverse(m1g, m2g), m2g);
    Int l = m1 / g * m2;
    return mod_canonical(r1 + m1 * t, l);
}

}  // namespace

ReducedWithTransform reduce_with_transform(const QuadForm& input) {
    check_form(input);
    QuadForm f = input;
    Mat m = Mat::identity(2);
    auto right_mul = [&](const Int& a00, const Int& a01, const Int& a10, const Int& a11) {
        Mat s(2, 2);
        s.at(0, 0) = a00;
        s.at(0, 1) = a01;
        s.at(1, 0) = a10;
        s.at(1, 1) = a11;
        m = m.mul(s);
    };
    auto normalize = [&]() {
        // shift b into (-a, a]
        Int r = mod_canonical(f.b, 2 * f.a);
        if (r > f.a) r -= 2 * f.a;
        Int k = (r - f.b) / (2 * f.a);
        if (k != 0) {
            f = transform(f, 1, k, 0, 1);
            right_mul(1, k, 0, 1);
        }
    };
    normalize();
    while (f.a > f.c) {
        f = transform(f, 0, -1, 1, 0);
        right_mul(0, -1, 1, 0);
        normalize();
    }
    if (f.a == f.c && f.b < 0) {
        f = transform(f, 0, -1, 1, 0);
        right_mul(0, -1, 1, 0);
    }
    if (!f.is_reduced()) throw std::logic_error("reduce: did not reach a reduced form");
    return {f, m};
}

QuadForm reduce(const QuadForm& f) { return reduce_with_transform(f).form; }

QuadForm form_prime_to(const QuadForm& f, const Int& m) {
    check_form(f);
    if (m <= 0) throw std::invalid_argument("form_prime_to: modulus must be positive");
    // scan primitive vectors (x, y) by sup-norm until the represented value
    // is coprime to m; a primitive form always represents such a value
    for (long n = 1; n <= 1024; ++n) {
        for (long x = -n; x <= n; ++x) {
            for (long y = -n; y <= n; ++y) {
                if (std::max(x < 0 ? -x : x, y < 0 ? -y : y) != n) continue;
                Int gxy = gcd(Int(x), Int(y));
                if (gxy != 1) continue;
                Int val = f.a * x * x + f.b * x * y + f.c * y * y;
                if (gcd(val, m) != 1) continue;
                Int s, t, g;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), Int(x).get_mpz_t(), Int(y).get_mpz_t());
                // det [[x, -t],[y, s]] = x*s + t*y = 1
                return transform(f, Int(x), -t, Int(y), s);
            }
        }
    }
    throw std::logic_error("form_prime_to: no representation found (form not primitive?)");
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    check_form(f);
    check_form(g);
    Int d = f.discriminant();
    if (d != g.discriminant()) throw std::invalid_argument("compose: discriminant mismatch");
    QuadForm g2 = form_prime_to(g, f.a);
    // united forms: leading coefficients coprime, so the middle coefficients
    // can be aligned by CRT and the product form written down directly
    Int b = crt(f.b, 2 * f.a, g2.b, 2 * g2.a);
    Int a3 = f.a * g2.a;
    Int num = b * b - d;
    if (mod_canonical(num, 4 * a3) != 0) throw std::logic_error("compose: congruence failure");
    QuadForm out{a3, b, num / (4 * a3)};
    return reduce(out);
}

QuadForm form_pow(const QuadForm& f, const Int& e) {
    Int d = f.discriminant();
    QuadForm base = e < 0 ? f.inverse() : f;
    Int n = abs(e);
    QuadForm acc = principal_form(d);
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = compose(acc, base);
        base = compose(base, base);
        n /= 2;
    }
    return reduce(acc);
}

std::vector<QuadForm> enumerate_reduced_forms(const Int& d, bool primitive_only) {
    if (!is_valid_discriminant(d)) throw std::invalid_argument("enumerate_reduced_forms: invalid discriminant");
    Int guard = Int(1) << 52;
    if (-d > guard) throw std::invalid_argument("enumerate_reduced_forms: discriminant beyond enumeration range");
    const long long absd = mpz_get_si(Int(-d).get_mpz_t());
    const long long parity = ((absd % 4) == 3) ? 1 : 0;  // b = d = -absd mod 2
    std::vector<QuadForm> out;
    for (long long a = 1; 3 * a * a <= absd + 3; ++a) {
        for (long long b = -a + 1; b <= a; ++b) {
            if (((b % 2) + 2) % 2 != parity) continue;
            long long num = b * b + absd;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (primitive_only) {
                long long g = std::gcd(std::gcd(a, b < 0 ? -b : b), c);
                if (g != 1) continue;
            }
            out.push_back({Int(static_cast<long>(a)), Int(static_cast<long>(b)), Int(static_cast<long>(c))});
        }
    }
    return out;
}

ClassGroup::ClassGroup(const Int& d) : d_(d) {
    forms_ = enumerate_reduced_forms(d, /*primitive_only=*/true);
    exps_.reserve(forms_.size());

    // incremental closure: elems holds every class reached so far together
    // with its exponent vector on gens_
    std::vector<std::pair<QuadForm, std::vector<Int>>> elems;
    elems.emplace_back(principal_form(d), std::vector<Int>{});
    exps_[elems[0].first.str()] = {};

    std::vector<std::vector<Int>> rows;  // relation rows, padded to full width later
    for (const QuadForm& cand : forms_) {
        if (exps_.count(cand.str())) continue;
        long j = static_cast<long>(gens_.size());
        gens_.push_back(cand);
        for (auto& [k, v] : exps_) v.resize(j + 1, Int(0));
        for (auto& [f, v] : elems) v.resize(j + 1, Int(0));

        size_t base_count = elems.size();  // subgroup generated by the previous gens
        QuadForm pw = cand;
        Int t = 1;
        for (;;) {
            auto it = exps_.find(pw.str());
            if (it != exps_.end()) {
                // cand^t lies in the previous subgroup: relation t*e_j = word
                std::vector<Int> row = it->second;
                for (auto& x : row) x = -x;
                row[j] += t;
                rows.push_back(std::move(row));
                break;
            }
            for (size_t i = 0; i < base_count; ++i) {
                QuadForm comb = compose(elems[i].first, pw);
                std::vector<Int> nv = elems[i].second;
                nv[j] = t;
                auto [pos, inserted] = exps_.emplace(comb.str(), nv);
                (void)pos;
                if (inserted) elems.emplace_back(comb, std::move(nv));
            }
            pw = compose(pw, cand);
            ++t;
        }
    }

    long m = static_cast<long>(gens_.size());
    Mat rel(static_cast<long>(rows.size()), m);
    for (size_t i = 0; i < rows.size(); ++i) {
        rows[i].resize(m, Int(0));
        for (long jj = 0; jj < m; ++jj) rel.at(static_cast<long>(i), jj) = rows[i][jj];
    }
    pres_ = from_presentation(m, rel);
    if (pres_.free_rank != 0) throw std::logic_error("ClassGroup: infinite presentation");
    if (pres_.group.order() != h()) throw std::logic_error("ClassGroup: structure order disagrees with form count");
    if (!pres_.group.is_trivial()) {
        Mat s(pres_.group.ngens(), pres_.group.ngens());
        for (long i = 0; i < s.rows; ++i) s.at(i, i) = pres_.group.factors[i] - 1;  // inversion
        pres_.group.set_sigma(s);
    }
}

ClassGroup ClassGroup::of_maximal_order(const Int& d) {
    require_fundamental(d);
    return ClassGroup(d);
}

ClassGroup ClassGroup::of_discriminant(const Int& d) {
    if (!is_valid_discriminant(d)) throw std::invalid_argument("ClassGroup: invalid discriminant");
    return ClassGroup(d);
}

std::vector<Int> ClassGroup::dl(const QuadForm& f) const {
    if (f.discriminant() != d_) throw std::invalid_argument("ClassGroup::dl: discriminant mismatch");
    QuadForm r = reduce(f);
    auto it = exps_.find(r.str());
    if (it == exps_.end()) throw std::invalid_argument("ClassGroup::dl: form not primitive for this order");
    std::vector<Int> e = it->second;
    e.resize(gens_.size(), Int(0));
    return pres_.coords(e);
}

QuadForm ClassGroup::form_for(const std::vector<Int>& coords) const {
    if (coords.size() != static_cast<size_t>(pres_.group.ngens()))
        throw std::invalid_argument("ClassGroup::form_for: coordinate size mismatch");
    std::vector<Int> word = pres_.from_canonical.apply(coords);
    QuadForm acc = principal_form(d_);
    for (size_t i = 0; i < word.size(); ++i)
        acc = compose(acc, form_pow(gens_[i], word[i]));
    return reduce(acc);
}

}  // namespace iqk
