#ifndef IQK_IWASAWA_HPP
#define IQK_IWASAWA_HPP

#include <string>
#include <vector>

#include "iqk/arith.hpp"

namespace iqk {

struct SeriesParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Polynomial in S and T with coefficients in Z/p^N, total degree < M. Stands
// in for an element of Z_p[[S,T]] under the convention gamma_cyc -> 1+S,
// gamma_anti -> 1+T.
class TruncSeries {
  public:
    TruncSeries(const Int& p, long n_prec = 8, long deg_cap = 16);

    const Int& p() const { return p_; }
    long n_prec() const { return n_; }
    long deg_cap() const { return m_; }
    const Int& modulus() const { return pn_; }

    const Int& coeff(long i, long j) const;          // S^i T^j
    void set_coeff(long i, long j, const Int& c);

    bool is_zero() const;
    bool depends_on_t() const;
    bool is_unit() const;     // constant term a p-adic unit
    bool is_nonunit() const { return !is_unit(); }

    TruncSeries add(const TruncSeries& o) const;
    TruncSeries sub(const TruncSeries& o) const;
    TruncSeries mul(const TruncSeries& o) const;
    TruncSeries pow(unsigned long e) const;
    TruncSeries eval_t_zero() const;  // f(S, 0)

    // re-reduce into a different precision (used by stability tests)
    TruncSeries with_precision(long n_prec, long deg_cap) const;

    std::string str() const;

    static TruncSeries constant(const Int& p, const Int& c, long n_prec = 8, long deg_cap = 16);
    static TruncSeries variable_s(const Int& p, long n_prec = 8, long deg_cap = 16);
    static TruncSeries variable_t(const Int& p, long n_prec = 8, long deg_cap = 16);

  private:
    Int p_, pn_;
    long n_, m_;
    std::vector<Int> c_;  // row-major (i, j), i + j < m_
    long idx(long i, long j) const { return i * m_ + j; }
    void check_compat(const TruncSeries& o) const;
};

// `+ - * ^` with parentheses over integer literals and the variables S, T.
TruncSeries parse_series(const std::string& text, const Int& p, long n_prec = 8, long deg_cap = 16);

// mu = min p-adic valuation of the coefficients, lambda = first index of
// g/p^mu with a unit coefficient. Input must be a series in S alone.
struct WeierstrassData {
    long mu = 0;
    long lambda = 0;
    bool unit_ok = true;
};

WeierstrassData weierstrass_data(const TruncSeries& g);

enum class CertBool { False = 0, True = 1, Uncertain = 2 };

// Whether Lambda/(f, T) is the ring of p-adic integers, i.e. whether f(S,0)
// is a unit multiple of a degree-one distinguished polynomial.
CertBool quotient_is_zp(const TruncSeries& f);

// Elementary module Lambda^e + sum Lambda/(f_i).
struct ElemModule {
    long free_rank;
    std::vector<TruncSeries> divisors;

    ElemModule(long e, std::vector<TruncSeries> fs);
    long rank() const { return free_rank; }
};

const char* to_string(CertBool b);

}  // namespace iqk

#endif
