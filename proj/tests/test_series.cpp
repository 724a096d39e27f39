#include "support.hpp"

#include <doctest.h>

using namespace rcr;
using namespace testutil;

TEST_CASE("gauss rationals") {
    const GaussRat a(mpq_class(1, 2), mpq_class(-3, 4));
    const GaussRat b(2, 1);
    CHECK(a * a.inv() == GaussRat(1));
    CHECK(a * b == GaussRat(mpq_class(7, 4), -1));
    CHECK(a * GaussRat::i() == GaussRat(mpq_class(3, 4), mpq_class(1, 2)));
    CHECK(a.conj().conj() == a);
    CHECK(a.norm() == mpq_class(1, 4) + mpq_class(9, 16));
    CHECK(GaussRat::i().pow(4) == GaussRat(1));
    CHECK(GaussRat::i().pow(-1) == -GaussRat::i());
    CHECK(b.pow(0) == GaussRat(1));
    CHECK(GaussRat::frac(6, -4) == GaussRat(mpq_class(-3, 2)));
    CHECK_THROWS_AS(GaussRat(0).inv(), PreconditionError);
}

TEST_CASE("fraction text") {
    bool reduced = true;
    CHECK(parse_frac("-6/4", &reduced) == mpq_class(-3, 2));
    CHECK_FALSE(reduced);
    parse_frac("7/3", &reduced);
    CHECK(reduced);
    CHECK(parse_frac("5") == 5);
    CHECK(frac_str(mpq_class(0)) == "0/1");
    CHECK(frac_str(mpq_class(-3, 2)) == "-3/2");
    CHECK_THROWS_AS(parse_frac("1/0"), ParseError);
    CHECK_THROWS_AS(parse_frac("x"), ParseError);
    CHECK_THROWS_AS(parse_frac(""), ParseError);
}

TEST_CASE("exact square roots") {
    CHECK(rational_sqrt(mpq_class(9, 4)) == mpq_class(3, 2));
    CHECK_FALSE(rational_sqrt(mpq_class(2)).has_value());
    CHECK_FALSE(rational_sqrt(mpq_class(-1)).has_value());
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const GaussRat x = small_gauss(rng);
        const auto r = gauss_sqrt(x * x);
        REQUIRE(r.has_value());
        CHECK(*r * *r == x * x);
    }
    const auto r = gauss_sqrt(GaussRat::i() * GaussRat(2));  // (1+i)^2
    REQUIRE(r.has_value());
    CHECK(*r * *r == GaussRat(0, 2));
    CHECK_FALSE(gauss_sqrt(GaussRat::i()).has_value());
    CHECK_FALSE(gauss_sqrt(GaussRat(3)).has_value());
}

TEST_CASE("dense index is a bijection") {
    for (int i = 0; i < dense_size(kMaxOrder); ++i) CHECK(dense_index(dense_exponent(i)) == i);
    CHECK(dense_size(0) == 1);
    CHECK(dense_size(1) == 5);
    CHECK(dense_size(2) == 15);
}

TEST_CASE("product agrees with schoolbook multiplication") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        const int order = 2 + k % 7;
        const TruncSeries a = random_poly(rng, order, order, 8), b = random_poly(rng, order, order, 8);
        CHECK(a * b == naive_mul(a, b));
    }
}

TEST_CASE("product is pointwise when nothing is truncated") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const TruncSeries a = random_poly(rng, 3, 8), b = random_poly(rng, 3, 8);
        const auto p = random_point(rng);
        CHECK(eval_at(a * b, p) == eval_at(a, p) * eval_at(b, p));
    }
}

TEST_CASE("division by a unit") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const int order = 3 + k % 5;
        const TruncSeries s = random_poly(rng, order, order);
        TruncSeries u = random_poly(rng, order, order);
        u.set(Exponent4(), GaussRat(1) + small_gauss(rng) * small_gauss(rng) + GaussRat(10));
        CHECK(divide_by_unit(s, u) * u == s);
    }
    TruncSeries z = TruncSeries::variable(Z, 3);
    CHECK_THROWS_AS(divide_by_unit(z, z), PreconditionError);
}

TEST_CASE("derivatives") {
    const TruncSeries s = TruncSeries::monomial(Exponent4(3, 1, 2, 0), GaussRat(2), 8);
    const TruncSeries dz = derive(s, Z);
    CHECK(dz.valid_order() == 7);
    CHECK(dz.coeff(Exponent4(2, 1, 2, 0)) == GaussRat(6));
    CHECK(derive(s, ZETAB).is_zero());
    CHECK(derive(derive(s, ZB), ZB).coeff(Exponent4(3, 1, 0, 0)) == GaussRat(4));
    CHECK_THROWS_AS(derive(TruncSeries(0), Z), PreconditionError);

    std::mt19937_64 rng(6);
    for (int k = 0; k < 100; ++k) {
        const TruncSeries a = random_poly(rng, 4, 6), b = random_poly(rng, 4, 6);
        const Var v = static_cast<Var>(k % 4);
        // Leibniz rule, compared to the common valid order 5.
        CHECK(derive(a * b, v) == (derive(a, v) * b + a * derive(b, v)).truncated(5));
        CHECK(derive(derive(a, Z), ZETAB) == derive(derive(a, ZETAB), Z));
    }
}

TEST_CASE("conjugation and real part") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 100; ++k) {
        const TruncSeries a = random_poly(rng, 5, 6);
        CHECK(conj_series(conj_series(a)) == a);
        const TruncSeries r = real_part(a);
        CHECK(conj_series(r) == r);
        const auto p = random_point(rng);
        // conj(a) evaluated at (z, zeta, conj z, conj zeta) is the conjugate value.
        const std::array<GaussRat, 4> q{p[0], p[1], p[0].conj(), p[1].conj()};
        CHECK(eval_at(conj_series(a), q) == eval_at(a, q).conj());
    }
}

TEST_CASE("substitution matches evaluation") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 60; ++k) {
        const TruncSeries s = random_poly(rng, 3, 9);
        std::array<TruncSeries, 4> sigma;
        for (auto& t : sigma) {
            t = random_poly(rng, 3, 9, 3);
            t.set(Exponent4(), GaussRat(0));
        }
        const auto p = random_point(rng);
        std::array<GaussRat, 4> inner;
        for (int i = 0; i < 4; ++i) inner[i] = eval_at(sigma[i], p);
        CHECK(eval_at(substitute(s, sigma), p) == eval_at(s, inner));
    }
}

TEST_CASE("inverse of a holomorphic pair") {
    std::mt19937_64 rng(9);
    int tested = 0;
    for (int k = 0; k < 60; ++k) {
        const int delta = 3 + k % 4;
        TruncSeries f = random_poly(rng, delta, delta, 6, true), g = random_poly(rng, delta, delta, 6, true);
        f.set(Exponent4(), GaussRat(0));
        g.set(Exponent4(), GaussRat(0));
        f.add_to({1, 0, 0, 0}, small_gauss(rng));
        g.add_to({0, 1, 0, 0}, small_gauss(rng));
        const GaussRat det = f.coeff({1, 0, 0, 0}) * g.coeff({0, 1, 0, 0}) - f.coeff({0, 1, 0, 0}) * g.coeff({1, 0, 0, 0});
        if (det.is_zero()) {
            CHECK_THROWS_AS(invert_pair(f, g, delta), PreconditionError);
            continue;
        }
        ++tested;
        auto [fi, gi] = invert_pair(f, g, delta);
        const TruncSeries zero(delta);
        const std::array<TruncSeries, 4> fg{f, g, zero, zero}, fgi{fi, gi, zero, zero};
        CHECK(substitute(fi, fg).truncated(delta) == TruncSeries::variable(Z, delta));
        CHECK(substitute(gi, fg).truncated(delta) == TruncSeries::variable(ZETA, delta));
        CHECK(substitute(f, fgi).truncated(delta) == TruncSeries::variable(Z, delta));
        CHECK(substitute(g, fgi).truncated(delta) == TruncSeries::variable(ZETA, delta));
    }
    CHECK(tested > 30);
}

TEST_CASE("shift and graded pieces") {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 60; ++k) {
        const TruncSeries s = random_poly(rng, 4, 4);
        const auto p = random_point(rng), x = random_point(rng);
        std::array<GaussRat, 4> xp;
        for (int i = 0; i < 4; ++i) xp[i] = x[i] + p[i];
        CHECK(eval_at(shift(s, p), x) == eval_at(s, xp));

        TruncSeries sum(4), wsum(4);
        for (int n = 0; n <= 4; ++n) sum += homogeneous_part(s, n);
        for (int nu = 0; nu <= 8; ++nu) wsum += weighted_component(s, nu);
        CHECK(sum == s);
        CHECK(wsum == s);
    }
}

TEST_CASE("truncation lowers the valid order") {
    TruncSeries s = TruncSeries::monomial(Exponent4(2, 0, 1, 0), GaussRat(1), 5);
    s.add_to(Exponent4(1, 0, 0, 0), GaussRat(3));
    CHECK(s.truncated(2).size() == 1);
    CHECK(s.truncated(2).valid_order() == 2);
    CHECK(s.truncated(9).valid_order() == 5);
    CHECK(s.min_degree() == 1);
    CHECK(TruncSeries(3).min_degree() == -1);
    CHECK_FALSE(s.is_holomorphic());
    CHECK(taylor_factor(Exponent4(3, 2, 0, 1)) == 12);
}
