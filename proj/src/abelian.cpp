#include "iqk/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace iqk {

Mat Mat::identity(long n) {
    Mat m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::mul(const Mat& other) const {
    if (cols != other.rows) throw std::invalid_argument("Mat::mul: shape mismatch");
    Mat r(rows, other.cols);
    for (long i = 0; i < rows; ++i)
        for (long k = 0; k < cols; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (long j = 0; j < other.cols; ++j) r.at(i, j) += x * other.at(k, j);
        }
    return r;
}

Mat Mat::transposed() const {
    Mat r(cols, rows);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
}

std::vector<Int> Mat::apply(const std::vector<Int>& v) const {
    if (static_cast<long>(v.size()) != cols) throw std::invalid_argument("Mat::apply: size mismatch");
    std::vector<Int> r(rows, Int(0));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

namespace {

void swap_rows(Mat& m, long i, long j) {
    for (long k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
}
void swap_cols(Mat& m, long i, long j) {
    for (long k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
}
// row_i -= q * row_t
void row_sub(Mat& m, long i, long t, const Int& q) {
    if (q == 0) return;
    for (long k = 0; k < m.cols; ++k) m.at(i, k) -= q * m.at(t, k);
}
void col_sub(Mat& m, long j, long t, const Int& q) {
    if (q == 0) return;
    for (long k = 0; k < m.rows; ++k) m.at(k, j) -= q * m.at(k, t);
}

}  // namespace

SnfResult smith_normal_form(const Mat& input) {
    SnfResult res;
    res.d = input;
    Mat& a = res.d;
    const long r = a.rows, c = a.cols;
    res.u = Mat::identity(r);
    res.uinv = Mat::identity(r);
    res.v = Mat::identity(c);

    auto apply_row_sub = [&](long i, long t, const Int& q) {
        row_sub(a, i, t, q);
        row_sub(res.u, i, t, q);
        // inverse op on uinv as a column operation: col_t += q * col_i
        for (long k = 0; k < r; ++k) res.uinv.at(k, t) += q * res.uinv.at(k, i);
    };
    auto apply_row_swap = [&](long i, long j) {
        swap_rows(a, i, j);
        swap_rows(res.u, i, j);
        swap_cols(res.uinv, i, j);
    };
    auto apply_col_sub = [&](long j, long t, const Int& q) {
        col_sub(a, j, t, q);
        col_sub(res.v, j, t, q);
    };
    auto apply_col_swap = [&](long i, long j) {
        swap_cols(a, i, j);
        swap_cols(res.v, i, j);
    };
    auto apply_row_negate = [&](long i) {
        for (long k = 0; k < c; ++k) a.at(i, k) = -a.at(i, k);
        for (long k = 0; k < r; ++k) res.u.at(i, k) = -res.u.at(i, k);
        for (long k = 0; k < r; ++k) res.uinv.at(k, i) = -res.uinv.at(k, i);
    };

    const long n = std::min(r, c);
    for (long t = 0; t < n; ++t) {
        for (;;) {
            // pivot: smallest nonzero |entry| in the trailing block
            long pi = -1, pj = -1;
            Int best;
            for (long i = t; i < r; ++i)
                for (long j = t; j < c; ++j) {
                    if (a.at(i, j) == 0) continue;
                    Int v = abs(a.at(i, j));
                    if (pi < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) { pi = -2; break; }
            if (pi != t) apply_row_swap(t, pi);
            if (pj != t) apply_col_swap(t, pj);

            bool clean = true;
            for (long i = t + 1; i < r; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = a.at(i, t) / a.at(t, t);
                apply_row_sub(i, t, q);
                if (a.at(i, t) != 0) clean = false;
            }
            for (long j = t + 1; j < c; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = a.at(t, j) / a.at(t, t);
                apply_col_sub(j, t, q);
                if (a.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // pivot must divide every remaining entry; otherwise fold the
            // offending row in and restart the elimination at this corner
            bool divides = true;
            for (long i = t + 1; i < r && divides; ++i)
                for (long j = t + 1; j < c && divides; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        apply_row_sub(t, i, Int(-1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (a.at(t, t) == 0) break;
        if (a.at(t, t) < 0) apply_row_negate(t);
    }

    long rank = 0;
    for (long t = 0; t < n; ++t)
        if (a.at(t, t) != 0) ++rank;
    res.rank = rank;
    return res;
}

long fp_rank(const Mat& m, const Int& p) {
    Mat w(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long j = 0; j < m.cols; ++j) w.at(i, j) = mod_canonical(m.at(i, j), p);
    long rank = 0;
    long col = 0;
    for (long row = 0; row < w.rows && col < w.cols; ++col) {
        long piv = -1;
        for (long i = row; i < w.rows; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        swap_rows(w, row, piv);
        Int inv = mod_inverse(w.at(row, col), p);
        for (long j = col; j < w.cols; ++j) w.at(row, j) = mod_canonical(w.at(row, j) * inv, p);
        for (long i = 0; i < w.rows; ++i) {
            if (i == row || w.at(i, col) == 0) continue;
            Int f = w.at(i, col);
            for (long j = col; j < w.cols; ++j)
                w.at(i, j) = mod_canonical(w.at(i, j) - f * w.at(row, j), p);
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Int> fp_solve(const Mat& basis, const std::vector<Int>& v, const Int& p) {
    if (basis.rows != basis.cols || basis.rows != static_cast<long>(v.size()))
        throw std::invalid_argument("fp_solve: shape mismatch");
    long n = basis.rows;
    Mat w(n, n + 1);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) w.at(i, j) = mod_canonical(basis.at(i, j), p);
        w.at(i, n) = mod_canonical(v[i], p);
    }
    for (long col = 0; col < n; ++col) {
        long piv = -1;
        for (long i = col; i < n; ++i)
            if (w.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) throw std::domain_error("fp_solve: singular basis");
        swap_rows(w, col, piv);
        Int inv = mod_inverse(w.at(col, col), p);
        for (long j = col; j <= n; ++j) w.at(col, j) = mod_canonical(w.at(col, j) * inv, p);
        for (long i = 0; i < n; ++i) {
            if (i == col || w.at(i, col) == 0) continue;
            Int f = w.at(i, col);
            for (long j = col; j <= n; ++j)
                w.at(i, j) = mod_canonical(w.at(i, j) - f * w.at(col, j), p);
        }
    }
    std::vector<Int> out(n);
    for (long i = 0; i < n; ++i) out[i] = w.at(i, n);
    return out;
}

Int FinAbGroup::order() const {
    Int o = 1;
    for (const Int& q : factors) o *= q;
    return o;
}

long FinAbGroup::rank_mod_p(const Int& p) const {
    long r = 0;
    for (const Int& q : factors)
        if (mod_canonical(q, p) == 0) ++r;
    return r;
}

std::vector<Int> FinAbGroup::reduce(std::vector<Int> v) const {
    if (v.size() != factors.size()) throw std::invalid_argument("FinAbGroup::reduce: size mismatch");
    for (size_t i = 0; i < v.size(); ++i) v[i] = mod_canonical(v[i], factors[i]);
    return v;
}

std::vector<Int> FinAbGroup::add(const std::vector<Int>& x, const std::vector<Int>& y) const {
    std::vector<Int> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return reduce(std::move(r));
}

std::vector<Int> FinAbGroup::scale(const Int& k, const std::vector<Int>& x) const {
    std::vector<Int> r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = k * x[i];
    return reduce(std::move(r));
}

Int FinAbGroup::element_order(const std::vector<Int>& v) const {
    Int o = 1;
    for (size_t i = 0; i < factors.size(); ++i) {
        Int g = gcd(factors[i], v[i]);
        Int part = factors[i] / g;
        o = lcm(o, part);
    }
    return o;
}

void FinAbGroup::set_sigma(const Mat& s) {
    if (s.rows != ngens() || s.cols != ngens())
        throw std::invalid_argument("set_sigma: shape mismatch");
    Mat sq = s.mul(s);
    for (long i = 0; i < sq.rows; ++i)
        for (long j = 0; j < sq.cols; ++j) {
            Int want = (i == j) ? 1 : 0;
            if (mod_canonical(sq.at(i, j) - want, factors[i]) != 0)
                throw std::invalid_argument("set_sigma: involution does not square to identity");
        }
    sigma = s;
}

std::vector<Int> Presentation::coords(const std::vector<Int>& original_exponents) const {
    return group.reduce(to_canonical.apply(original_exponents));
}

Presentation from_presentation(long n_gens, const Mat& relation_rows) {
    if (relation_rows.rows > 0 && relation_rows.cols != n_gens)
        throw std::invalid_argument("from_presentation: column count must equal generator count");
    // relations as columns of an (n_gens x n_rel) matrix
    Mat a(n_gens, std::max<long>(relation_rows.rows, 0));
    for (long i = 0; i < relation_rows.rows; ++i)
        for (long j = 0; j < n_gens; ++j) a.at(j, i) = relation_rows.at(i, j);

    SnfResult snf = smith_normal_form(a);

    Presentation pres;
    std::vector<long> keep;  // canonical coordinates with factor >= 2
    long free_rank = 0;
    for (long i = 0; i < n_gens; ++i) {
        Int d = (i < std::min(a.rows, a.cols)) ? snf.d.at(i, i) : Int(0);
        if (d == 0) {
            ++free_rank;
            continue;
        }
        if (d == 1) continue;
        keep.push_back(i);
        pres.group.factors.push_back(d);
    }
    pres.free_rank = free_rank;
    pres.to_canonical = Mat(static_cast<long>(keep.size()), n_gens);
    pres.from_canonical = Mat(n_gens, static_cast<long>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
        for (long j = 0; j < n_gens; ++j) {
            pres.to_canonical.at(static_cast<long>(k), j) =
                mod_canonical(snf.u.at(keep[k], j), pres.group.factors[k]);
            pres.from_canonical.at(j, static_cast<long>(k)) = snf.uinv.at(j, keep[k]);
        }
    }
    return pres;
}

namespace {

// Lattice of e in Z^k with M*e in the column span of diag(factors).
Mat relation_lattice(const FinAbGroup& g, const std::vector<std::vector<Int>>& gens) {
    long n = g.ngens();
    long k = static_cast<long>(gens.size());
    Mat w(n, k + n);
    for (long j = 0; j < k; ++j) {
        if (static_cast<long>(gens[j].size()) != n)
            throw std::invalid_argument("relation_lattice: element size mismatch");
        for (long i = 0; i < n; ++i) w.at(i, j) = gens[j][i];
    }
    for (long i = 0; i < n; ++i) w.at(i, k + i) = g.factors[i];
    SnfResult snf = smith_normal_form(w);
    // kernel basis = columns of V past the rank; project onto the first k coords
    long total = k + n;
    std::vector<std::vector<Int>> rows;
    for (long j = snf.rank; j < total; ++j) {
        std::vector<Int> e(k);
        bool nonzero = false;
        for (long i = 0; i < k; ++i) {
            e[i] = snf.v.at(i, j);
            if (e[i] != 0) nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(e));
    }
    Mat rel(static_cast<long>(rows.size()), k);
    for (size_t i = 0; i < rows.size(); ++i)
        for (long j = 0; j < k; ++j) rel.at(static_cast<long>(i), j) = rows[i][j];
    return rel;
}

}  // namespace

FinAbGroup subgroup_structure(const FinAbGroup& g, const std::vector<std::vector<Int>>& gens) {
    if (gens.empty()) return FinAbGroup{};
    Mat rel = relation_lattice(g, gens);
    Presentation pres = from_presentation(static_cast<long>(gens.size()), rel);
    if (pres.free_rank != 0) throw std::logic_error("subgroup_structure: subgroup of finite group cannot be infinite");
    return pres.group;
}

Presentation quotient_presentation(const FinAbGroup& g, const std::vector<std::vector<Int>>& gens) {
    long n = g.ngens();
    Mat rel(n + static_cast<long>(gens.size()), n);
    for (long i = 0; i < n; ++i) rel.at(i, i) = g.factors[i];
    for (size_t j = 0; j < gens.size(); ++j)
        for (long i = 0; i < n; ++i) rel.at(n + static_cast<long>(j), i) = gens[j][i];
    return from_presentation(n, rel);
}

std::vector<Int> PPart::project(const std::vector<Int>& v) const {
    std::vector<Int> r(positions.size());
    for (size_t i = 0; i < positions.size(); ++i)
        r[i] = mod_canonical(v[positions[i]], ppows[i]);
    return r;
}

PPart p_part(const FinAbGroup& g, const Int& p) {
    PPart out;
    for (long i = 0; i < g.ngens(); ++i) {
        Int q = g.factors[i];
        if (mod_canonical(q, p) != 0) continue;
        long e = valuation(q, p);
        out.positions.push_back(i);
        out.ppows.push_back(int_pow(p, static_cast<unsigned long>(e)));
        out.group.factors.push_back(out.ppows.back());
    }
    out.r = static_cast<long>(out.positions.size());
    return out;
}

SigmaSplit sigma_split(const FinAbGroup& g, const Int& p) {
    if (p == 2) throw std::invalid_argument("sigma_split: p must be odd");
    if (!g.sigma) throw std::invalid_argument("sigma_split: group carries no involution");
    for (const Int& q : g.factors) {
        if (mpz_even_p(q.get_mpz_t())) throw std::invalid_argument("sigma_split: 2-groups rejected");
        Int qq = q;
        while (mod_canonical(qq, p) == 0) qq /= p;
        if (qq != 1) throw std::invalid_argument("sigma_split: group must be a p-group");
    }
    long n = g.ngens();
    const Mat& s = *g.sigma;
    std::vector<std::vector<Int>> plus_gens, minus_gens;
    for (long j = 0; j < n; ++j) {
        std::vector<Int> pg(n), mg(n);
        for (long i = 0; i < n; ++i) {
            Int inv2 = (g.factors[i] + 1) / 2;  // inverse of 2 mod odd factor
            Int sij = s.at(i, j);
            Int idij = (i == j) ? 1 : 0;
            pg[i] = mod_canonical((idij + sij) * inv2, g.factors[i]);
            mg[i] = mod_canonical((idij - sij) * inv2, g.factors[i]);
        }
        plus_gens.push_back(std::move(pg));
        minus_gens.push_back(std::move(mg));
    }
    SigmaSplit split;
    split.plus = subgroup_structure(g, plus_gens);
    split.minus = subgroup_structure(g, minus_gens);
    return split;
}

AbMap::AbMap(const FinAbGroup& dom, const FinAbGroup& cod, Mat m)
    : domain(&dom), codomain(&cod), matrix(std::move(m)) {
    if (matrix.rows != cod.ngens() || matrix.cols != dom.ngens())
        throw std::invalid_argument("AbMap: shape mismatch");
    for (long j = 0; j < dom.ngens(); ++j)
        for (long i = 0; i < cod.ngens(); ++i)
            if (mod_canonical(dom.factors[j] * matrix.at(i, j), cod.factors[i]) != 0)
                throw std::invalid_argument("AbMap: matrix does not respect relations");
}

long AbMap::image_dim_mod_p(const Int& p) const {
    std::vector<long> drows, dcols;
    for (long j = 0; j < domain->ngens(); ++j)
        if (mod_canonical(domain->factors[j], p) == 0) dcols.push_back(j);
    for (long i = 0; i < codomain->ngens(); ++i)
        if (mod_canonical(codomain->factors[i], p) == 0) drows.push_back(i);
    Mat sub(static_cast<long>(drows.size()), static_cast<long>(dcols.size()));
    for (size_t i = 0; i < drows.size(); ++i)
        for (size_t j = 0; j < dcols.size(); ++j)
            sub.at(static_cast<long>(i), static_cast<long>(j)) = matrix.at(drows[i], dcols[j]);
    return fp_rank(sub, p);
}

bool embeds_into(const FinAbGroup& t, const FinAbGroup& a) {
    // |T[m]| <= |A[m]| for every positive integer m, checked on the prime
    // powers dividing |T|.
    std::vector<Int> checks;
    for (const Int& q : t.factors) {
        for (const auto& [pr, e] : factorize(q)) {
            Int pw = pr;
            for (unsigned long i = 0; i < e; ++i) {
                checks.push_back(pw);
                pw *= pr;
            }
        }
    }
    auto torsion_count = [](const FinAbGroup& g, const Int& m) {
        Int c = 1;
        for (const Int& q : g.factors) c *= gcd(q, m);
        return c;
    };
    for (const Int& m : checks)
        if (torsion_count(t, m) > torsion_count(a, m)) return false;
    return true;
}

std::string factors_to_string(const std::vector<Int>& factors) {
    if (factors.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << "x";
        os << "Z/" << factors[i].get_str();
    }
    return os.str();
}

}  // namespace iqk
