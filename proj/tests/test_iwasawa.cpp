#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iqk/iwasawa.hpp"

using namespace iqk;

TEST_CASE("series parsing and printing") {
    TruncSeries f = parse_series("(1+S)^3 - 1", 3);
    CHECK(f.coeff(0, 0) == 0);
    CHECK(f.coeff(1, 0) == 3);
    CHECK(f.coeff(2, 0) == 3);
    CHECK(f.coeff(3, 0) == 1);
    TruncSeries g = parse_series("T + S^2", 3);
    CHECK(g.coeff(0, 1) == 1);
    CHECK(g.coeff(2, 0) == 1);
    CHECK(g.depends_on_t());
    CHECK(parse_series("-S + S", 3).is_zero());
    CHECK_THROWS_AS(parse_series("S +", 3), SeriesParseError);
    CHECK_THROWS_AS(parse_series("S^-1", 3), SeriesParseError);
    CHECK_THROWS_AS(parse_series("x", 3), SeriesParseError);
}

TEST_CASE("weierstrass_data known values") {
    auto w1 = weierstrass_data(parse_series("S", 3));
    CHECK(w1.mu == 0);
    CHECK(w1.lambda == 1);
    CHECK(w1.unit_ok);

    // (1+S)^3 - 1 = S^3 + 3S^2 + 3S: first unit coefficient at degree 3
    auto w2 = weierstrass_data(parse_series("(1+S)^3 - 1", 3));
    CHECK(w2.mu == 0);
    CHECK(w2.lambda == 3);
    CHECK(w2.unit_ok);

    auto w3 = weierstrass_data(parse_series("3*(1+S)", 3));
    CHECK(w3.mu == 1);
    CHECK(w3.lambda == 0);
    CHECK(w3.unit_ok);

    CHECK_THROWS_AS(weierstrass_data(parse_series("0", 3)), PrecisionError);
    CHECK_THROWS_AS(weierstrass_data(parse_series("T", 3)), std::invalid_argument);
}

TEST_CASE("quotient_is_zp known values") {
    CHECK(quotient_is_zp(parse_series("T + S", 3)) == CertBool::True);
    CHECK(quotient_is_zp(parse_series("T + S^2", 3)) == CertBool::False);
    CHECK(quotient_is_zp(parse_series("T + 3", 3)) == CertBool::False);
    // unit input is a precondition violation
    CHECK_THROWS_AS(quotient_is_zp(parse_series("1 + T", 3)), std::invalid_argument);
    // f(S,0) = 0 at this precision: reported distinctly
    CHECK(quotient_is_zp(parse_series("T", 3)) == CertBool::Uncertain);
}

TEST_CASE("mu and lambda are additive on products") {
    std::mt19937_64 rng(5);
    std::vector<std::string> pool = {"S", "3*(1+S)", "(1+S)^3 - 1", "S^2 + 3*S", "9 + 3*S^2", "2*S + 3"};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            TruncSeries fa = parse_series(a, 3), fb = parse_series(b, 3);
            auto wa = weierstrass_data(fa), wb = weierstrass_data(fb);
            if (!wa.unit_ok || !wb.unit_ok) continue;
            if (wa.mu + wb.mu >= fa.n_prec()) continue;  // product would drown mod p^N
            if (wa.lambda + wb.lambda >= fa.deg_cap()) continue;
            auto wab = weierstrass_data(fa.mul(fb));
            CHECK(wab.mu == wa.mu + wb.mu);
            CHECK(wab.lambda == wa.lambda + wb.lambda);
        }
    (void)rng;
}

TEST_CASE("quotient_is_zp is invariant under unit multiples") {
    std::vector<std::string> units = {"1", "2", "1 + S", "1 + 3*T", "2 + S*T", "1 + S + T"};
    for (const auto& fstr : {"T + S", "T + S^2", "T + 3"}) {
        TruncSeries f = parse_series(fstr, 3);
        CertBool base = quotient_is_zp(f);
        for (const auto& ustr : units) {
            TruncSeries u = parse_series(ustr, 3);
            REQUIRE(u.is_unit());
            CHECK(quotient_is_zp(f.mul(u)) == base);
        }
    }
}

TEST_CASE("raising precision never changes a certified answer") {
    for (const auto& fstr : {"T + S", "T + S^2", "T + 3", "(1+S)^3 - 1 + T*S"}) {
        TruncSeries f8 = parse_series(fstr, 3, 8, 16);
        TruncSeries f16 = parse_series(fstr, 3, 16, 32);
        CHECK(quotient_is_zp(f8) == quotient_is_zp(f16));
    }
    auto w8 = weierstrass_data(parse_series("(1+S)^3 - 1", 3, 8, 16));
    auto w16 = weierstrass_data(parse_series("(1+S)^3 - 1", 3, 16, 32));
    CHECK(w8.mu == w16.mu);
    CHECK(w8.lambda == w16.lambda);
}

TEST_CASE("elementary modules") {
    TruncSeries f = parse_series("T + S", 3);
    ElemModule lambda_alone(1, {});
    CHECK(lambda_alone.rank() == 1);
    ElemModule with_quotient(1, {f});
    CHECK(with_quotient.rank() == 1);
    ElemModule rank2(2, {});
    CHECK(rank2.rank() == 2);
    CHECK_THROWS_AS(ElemModule(1, {parse_series("1 + S", 3)}), std::invalid_argument);
}
