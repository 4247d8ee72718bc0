#include "iqk/iwasawa.hpp"

#include <cctype>
#include <sstream>

namespace iqk {

TruncSeries::TruncSeries(const Int& p, long n_prec, long deg_cap) : p_(p), n_(n_prec), m_(deg_cap) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("TruncSeries: p must be prime");
    if (n_ < 1 || m_ < 1) throw std::invalid_argument("TruncSeries: bad precision parameters");
    pn_ = int_pow(p, static_cast<unsigned long>(n_));
    c_.assign(static_cast<size_t>(m_) * m_, Int(0));
}

const Int& TruncSeries::coeff(long i, long j) const {
    static const Int zero(0);
    if (i < 0 || j < 0 || i + j >= m_) return zero;
    return c_[static_cast<size_t>(idx(i, j))];
}

void TruncSeries::set_coeff(long i, long j, const Int& v) {
    if (i < 0 || j < 0) throw std::invalid_argument("set_coeff: negative index");
    if (i + j >= m_) return;  // beyond the degree cap
    c_[static_cast<size_t>(idx(i, j))] = mod_canonical(v, pn_);
}

bool TruncSeries::is_zero() const {
    for (const Int& x : c_)
        if (x != 0) return false;
    return true;
}

bool TruncSeries::depends_on_t() const {
    for (long i = 0; i < m_; ++i)
        for (long j = 1; i + j < m_; ++j)
            if (coeff(i, j) != 0) return true;
    return false;
}

bool TruncSeries::is_unit() const { return mod_canonical(coeff(0, 0), p_) != 0; }

void TruncSeries::check_compat(const TruncSeries& o) const {
    if (p_ != o.p_ || n_ != o.n_ || m_ != o.m_)
        throw std::invalid_argument("TruncSeries: precision mismatch between operands");
}

TruncSeries TruncSeries::add(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(p_, n_, m_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_canonical(c_[i] + o.c_[i], pn_);
    return r;
}

TruncSeries TruncSeries::sub(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(p_, n_, m_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = mod_canonical(c_[i] - o.c_[i], pn_);
    return r;
}

TruncSeries TruncSeries::mul(const TruncSeries& o) const {
    check_compat(o);
    TruncSeries r(p_, n_, m_);
    for (long i1 = 0; i1 < m_; ++i1)
        for (long j1 = 0; i1 + j1 < m_; ++j1) {
            const Int& a = coeff(i1, j1);
            if (a == 0) continue;
            for (long i2 = 0; i1 + i2 < m_; ++i2)
                for (long j2 = 0; i1 + j1 + i2 + j2 < m_; ++j2) {
                    const Int& b = o.coeff(i2, j2);
                    if (b == 0) continue;
                    long i = i1 + i2, j = j1 + j2;
                    r.c_[static_cast<size_t>(r.idx(i, j))] =
                        mod_canonical(r.c_[static_cast<size_t>(r.idx(i, j))] + a * b, pn_);
                }
        }
    return r;
}

TruncSeries TruncSeries::pow(unsigned long e) const {
    TruncSeries acc = constant(p_, 1, n_, m_);
    TruncSeries base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc.mul(base);
        base = base.mul(base);
        e >>= 1UL;
    }
    return acc;
}

TruncSeries TruncSeries::eval_t_zero() const {
    TruncSeries r(p_, n_, m_);
    for (long i = 0; i < m_; ++i) r.set_coeff(i, 0, coeff(i, 0));
    return r;
}

TruncSeries TruncSeries::with_precision(long n_prec, long deg_cap) const {
    TruncSeries r(p_, n_prec, deg_cap);
    for (long i = 0; i < m_; ++i)
        for (long j = 0; i + j < m_; ++j) r.set_coeff(i, j, coeff(i, j));
    return r;
}

std::string TruncSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (long t = 0; t < m_; ++t)
        for (long i = t; i >= 0; --i) {
            long j = t - i;
            const Int& v = coeff(i, j);
            if (v == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << v.get_str();
            if (i) os << "*S" << (i > 1 ? "^" + std::to_string(i) : "");
            if (j) os << "*T" << (j > 1 ? "^" + std::to_string(j) : "");
        }
    if (first) os << "0";
    return os.str();
}

TruncSeries TruncSeries::constant(const Int& p, const Int& c, long n_prec, long deg_cap) {
    TruncSeries r(p, n_prec, deg_cap);
    r.set_coeff(0, 0, c);
    return r;
}

TruncSeries TruncSeries::variable_s(const Int& p, long n_prec, long deg_cap) {
    TruncSeries r(p, n_prec, deg_cap);
    r.set_coeff(1, 0, 1);
    return r;
}

TruncSeries TruncSeries::variable_t(const Int& p, long n_prec, long deg_cap) {
    TruncSeries r(p, n_prec, deg_cap);
    r.set_coeff(0, 1, 1);
    return r;
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const Int& p;
    long n, m;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw SeriesParseError("series parse error at position " + std::to_string(pos) + ": " + what);
    }

    TruncSeries expr() {
        TruncSeries acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc.add(term());
            else if (eat('-'))
                acc = acc.sub(term());
            else
                return acc;
        }
    }
    TruncSeries term() {
        TruncSeries acc = factor();
        for (;;) {
            if (eat('*'))
                acc = acc.mul(factor());
            else
                return acc;
        }
    }
    TruncSeries factor() {
        skip_ws();
        bool neg = false;
        while (eat('-')) neg = !neg;
        TruncSeries base = atom();
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("expected a nonnegative integer exponent");
            base = base.pow(std::stoul(s.substr(start, pos - start)));
        }
        if (neg) base = TruncSeries::constant(p, 0, n, m).sub(base);
        return base;
    }
    TruncSeries atom() {
        skip_ws();
        if (eat('(')) {
            TruncSeries inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (pos >= s.size()) fail("unexpected end of input");
        char ch = s[pos];
        if (ch == 'S' || ch == 's') {
            ++pos;
            return TruncSeries::variable_s(p, n, m);
        }
        if (ch == 'T' || ch == 't') {
            ++pos;
            return TruncSeries::variable_t(p, n, m);
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return TruncSeries::constant(p, Int(s.substr(start, pos - start)), n, m);
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}  // namespace

TruncSeries parse_series(const std::string& text, const Int& p, long n_prec, long deg_cap) {
    Parser parser{text, 0, p, n_prec, deg_cap};
    TruncSeries out = parser.expr();
    parser.skip_ws();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return out;
}

WeierstrassData weierstrass_data(const TruncSeries& g) {
    if (g.depends_on_t()) throw std::invalid_argument("weierstrass_data: series must involve S only");
    if (g.is_zero()) throw PrecisionError("weierstrass_data: series is zero at the working precision");
    WeierstrassData out;
    long mu = -1;
    for (long i = 0; i < g.deg_cap(); ++i) {
        const Int& c = g.coeff(i, 0);
        if (c == 0) continue;  // zero mod p^N: valuation at least N, cannot be minimal
        long v = valuation(c, g.p());
        if (mu < 0 || v < mu) mu = v;
    }
    out.mu = mu;
    for (long i = 0; i < g.deg_cap(); ++i) {
        const Int& c = g.coeff(i, 0);
        if (c == 0) continue;
        if (valuation(c, g.p()) == mu) {
            out.lambda = i;
            break;
        }
    }
    // stored-zero coefficients have valuation >= N > mu, so both invariants
    // are certified whenever the series is nonzero at this precision
    out.unit_ok = (mu < g.n_prec());
    return out;
}

CertBool quotient_is_zp(const TruncSeries& f) {
    if (f.is_unit()) throw std::invalid_argument("quotient_is_zp: f must be a nonunit");
    TruncSeries slice = f.eval_t_zero();
    if (slice.is_zero()) return CertBool::Uncertain;
    WeierstrassData w = weierstrass_data(slice);
    if (!w.unit_ok) return CertBool::Uncertain;
    return (w.mu == 0 && w.lambda == 1) ? CertBool::True : CertBool::False;
}

ElemModule::ElemModule(long e, std::vector<TruncSeries> fs) : free_rank(e), divisors(std::move(fs)) {
    if (e < 0) throw std::invalid_argument("ElemModule: negative free rank");
    for (const TruncSeries& f : divisors)
        if (f.is_unit()) throw std::invalid_argument("ElemModule: divisors must be nonunits");
}

const char* to_string(CertBool b) {
    switch (b) {
        case CertBool::True: return "true";
        case CertBool::False: return "false";
        default: return "uncertain";
    }
}

}  // namespace iqk
