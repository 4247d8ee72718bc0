#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iqk/ideal.hpp"

using namespace iqk;

TEST_CASE("algebraic integer arithmetic") {
    // (3 + sqrt(-23))/2 has norm (9+23)/4 = 8
    AlgInt x(Int(-23), 3, 1);
    CHECK(x.norm() == 8);
    CHECK(x.conj().norm() == 8);
    CHECK(x.mul(x.conj()).x == 16);  // norm embedded as (16 + 0)/2 = 8
    CHECK(x.mul(x.conj()).y == 0);
    CHECK_THROWS_AS(AlgInt(Int(-23), 2, 1), std::invalid_argument);  // parity violated
    auto [u, v] = x.basis_coords();
    CHECK(AlgInt::from_basis(Int(-23), u, v) == x);
}

TEST_CASE("splitting_type known values") {
    CHECK(splitting_type(Int(-23), 3).kind == SplitKind::Split);
    CHECK(splitting_type(Int(-84), 3).kind == SplitKind::Ramified);
    CHECK(splitting_type(Int(-4), 3).kind == SplitKind::Inert);
}

TEST_CASE("splitting agrees with factoring x^2 - D mod p") {
    for (long d = -3; d >= -120; --d) {
        if (!is_fundamental_discriminant(Int(d))) continue;
        for (long p : {3, 5, 7, 11}) {
            auto st = splitting_type(Int(d), p);
            // count roots of x^2 = D mod p
            long roots = 0;
            for (long x = 0; x < p; ++x)
                if (mod_canonical(Int(x * x - d), p) == 0) ++roots;
            if (st.kind == SplitKind::Split) CHECK(roots == 2);
            if (st.kind == SplitKind::Inert) CHECK(roots == 0);
            if (st.kind == SplitKind::Ramified) CHECK(roots == 1);
            if (st.prime) {
                CHECK(st.prime->a == p);
                CHECK(mod_canonical(st.prime->b * st.prime->b - d, 4 * p) == 0);
            }
        }
    }
}

TEST_CASE("ideal powers at d = -23") {
    Ideal p2{Int(-23), 2, 1, 1};
    CHECK(ideal_pow(p2, 0) == Ideal::unit(Int(-23)));
    Ideal sq = ideal_pow(p2, 2);
    CHECK(sq.a == 4);
    CHECK(sq.content == 1);
    // class of P^2 equals the inverse class of P (h = 3)
    CHECK(reduce(ideal_form(sq)) == reduce(ideal_form(p2).inverse()));
    Ideal p3 = *prime_above(Int(-23), 3);
    CHECK(ideal_pow(p3, 1) == p3);
}

TEST_CASE("norm is multiplicative on coprime primitive ideals") {
    Int d = -47;
    std::vector<Ideal> primes;
    for (long q : {2, 3, 7, 59, 61}) {
        auto pr = prime_above(d, Int(q));
        if (pr) primes.push_back(*pr);
    }
    REQUIRE(primes.size() >= 3);
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t j = i + 1; j < primes.size(); ++j) {
            Ideal prod = ideal_mul(primes[i], primes[j]);
            CHECK(prod.norm() == primes[i].norm() * primes[j].norm());
        }
}

TEST_CASE("principal_generator known values") {
    CHECK(principal_generator(Ideal::unit(Int(-23))).has_value());
    Ideal p2{Int(-23), 2, 1, 1};
    // order 3 class: P itself is not principal, P^3 is
    CHECK(!principal_generator(p2).has_value());
    auto gen = principal_generator(ideal_pow(p2, 3));
    REQUIRE(gen.has_value());
    CHECK(abs(gen->norm()) == 8);
    // up to units: (3 + sqrt(-23))/2 or its conjugate/negatives
    CHECK(abs(gen->x) == 3);
    CHECK(abs(gen->y) == 1);
}

TEST_CASE("two principality routes agree: shortest vector vs form reduction") {
    for (long d = -3; d >= -300; --d) {
        if (!is_fundamental_discriminant(Int(d))) continue;
        for (long q = 2; q <= 97; ++q) {
            if (!is_prime(Int(q))) continue;
            auto pr = prime_above(Int(d), Int(q));
            if (!pr) continue;
            for (long e = 1; e <= 4; ++e) {
                Ideal I = ideal_pow(*pr, e);
                if (I.norm() > 10000) break;
                bool route1 = principal_generator(I).has_value();
                bool route2 = reduce(ideal_form(I)) == principal_form(Int(d));
                CHECK(route1 == route2);
                auto g = principal_generator(I);
                if (g) {
                    CHECK(abs(g->norm()) == I.norm());
                    CHECK(ideal_contains(I, *g));
                }
            }
        }
    }
}

TEST_CASE("form/ideal transport is class-compatible") {
    for (long d : {-23, -84}) {
        auto cg = ClassGroup::of_maximal_order(Int(d));
        for (const auto& f : cg.forms()) {
            Ideal i = form_ideal(f);
            CHECK(reduce(ideal_form(i)) == f);
            CHECK(i.norm() == f.a);
        }
        // transport commutes with the group law
        for (const auto& f : cg.forms())
            for (const auto& g : cg.forms()) {
                Ideal prod = ideal_mul(form_ideal(f), form_ideal(g));
                CHECK(reduce(ideal_form(prod)) == compose(f, g));
            }
    }
    // principal form <-> unit ideal
    CHECK(form_ideal(principal_form(Int(-23))).a == 1);
    // (2,1,3) <-> the ideal [2, (1+sqrt(-23))/2] up to the canonical b window
    Ideal i = form_ideal(QuadForm{2, 1, 3});
    CHECK(i.a == 2);
    CHECK(mod_canonical(i.b, 2) == 1);
}

TEST_CASE("prime above 3 corresponds to a leading-3 form when 3 splits") {
    Ideal p3 = *prime_above(Int(-23), 3);
    QuadForm f = reduce(ideal_form(p3));
    // the class contains a form with a = 3 (the ideal's own form before reduction)
    CHECK(ideal_form(p3).a == 3);
    CHECK(f.discriminant() == -23);
}

TEST_CASE("class_rep_coprime_to finds small-norm representatives") {
    Int d = -23;
    auto cg = ClassGroup::of_maximal_order(d);
    // principal class -> unit ideal
    CHECK(class_rep_coprime_to(d, principal_form(d), 3).is_unit_ideal());
    // generator class of Cl(-23): norm-2 prime
    QuadForm gen{2, 1, 3};
    Ideal rep = class_rep_coprime_to(d, gen, 3);
    CHECK(rep.norm() == 2);
    CHECK(gcd(rep.norm(), Int(3)) == 1);
    CHECK(reduce(ideal_form(rep)) == reduce(gen));
    // a second representative exists and lies in the same class
    Ideal rep2 = class_rep_coprime_to_skip(d, gen, 3, 1);
    CHECK(rep2.norm() != rep.norm());
    CHECK(reduce(ideal_form(rep2)) == reduce(gen));
}

TEST_CASE("every class has a coprime representative below the default bound") {
    for (long d : {-23, -84, -47, -120}) {
        auto cg = ClassGroup::of_maximal_order(Int(d));
        for (const auto& f : cg.forms()) {
            for (long p : {3, 5}) {
                Ideal rep = class_rep_coprime_to(Int(d), f, Int(p));
                CHECK(gcd(rep.norm(), Int(p)) == 1);
                CHECK(reduce(ideal_form(rep)) == f);
            }
        }
    }
}
