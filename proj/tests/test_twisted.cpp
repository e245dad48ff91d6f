#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cfw/twisted.hpp"

using namespace cfw;

namespace {

RatFunc rf(const std::string& s, const FqFieldPtr& F) { return RatFunc(parse_poly(s, F)); }

TwistedPolyK random_twisted(std::mt19937_64& rng, const FqFieldPtr& F, int maxdeg, bool fractions = false) {
    int d = (int)(rng() % (maxdeg + 1));
    std::vector<RatFunc> c;
    for (int i = 0; i <= d; ++i) {
        Poly num(F), den = Poly::one(F);
        int nd = (int)(rng() % 3);
        num.c.assign(nd + 1, 0);
        for (int j = 0; j <= nd; ++j) num.c[j] = (uint32_t)(rng() % F->size);
        num.normalize();
        if (fractions && rng() % 4 == 0) {
            den.c = {(uint32_t)(1 + rng() % (F->size - 1 ? F->size - 1 : 1)), 1};
        }
        c.push_back(RatFunc(num, den));
    }
    return TwistedPolyK(std::move(c));
}

}  // namespace

TEST_CASE("defining relation and worked products") {
    auto F2 = FqField::make(2, 1);
    // F*T = T^2*F  (q=2)
    TwistedPolyK Fpoly({RatFunc::zero(F2), RatFunc::one(F2)});
    TwistedPolyK Tconst = TwistedPolyK::constant(rf("T", F2));
    REQUIRE((Fpoly * Tconst).to_string() == "T^2*F");

    // (T+F)(T+F) = T^2 + (T^2+T)F + F^2
    TwistedPolyK phiT({rf("T", F2), RatFunc::one(F2)});
    auto sq = phiT * phiT;
    REQUIRE(sq == parse_twisted("F^2+(T^2+T)*F+T^2", F2));

    // A*1 = A
    auto one = TwistedPolyK::constant(RatFunc::one(F2));
    REQUIRE(sq * one == sq);
    REQUIRE(one * sq == sq);
}

TEST_CASE("parse/print round trip") {
    auto F2 = FqField::make(2, 1);
    auto A = parse_twisted("F^2+(T^2+T)*F+T^2", F2);
    REQUIRE(A.to_string() == "F^2+(T^2+T)*F+T^2");
    REQUIRE(parse_twisted(A.to_string(), F2) == A);
    REQUIRE(parse_twisted("F", F2).deg() == 1);
    REQUIRE(parse_twisted("T", F2).deg() == 0);
}

TEST_CASE("mixed coefficient fields are rejected") {
    auto F2 = FqField::make(2, 1);
    auto F3 = FqField::make(3, 1);
    TwistedPolyK a({rf("T", F2)});
    TwistedPolyK b({rf("T", F3)});
    REQUIRE_THROWS_AS(a * b, std::invalid_argument);
    REQUIRE_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("ring laws on random triples") {
    // associativity, distributivity, and the commutation rule, q in {2,3,4}
    std::mt19937_64 rng(17);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        auto F = FqField::make(p, n);
        for (int iter = 0; iter < 340; ++iter) {
            auto A = random_twisted(rng, F, 3), B = random_twisted(rng, F, 3),
                 C = random_twisted(rng, F, 3);
            REQUIRE((A * B) * C == A * (B * C));
            REQUIRE(A * (B + C) == A * B + A * C);
            REQUIRE((A + B) * C == A * C + B * C);
        }
        // F.w = w^q.F on random scalars
        TwistedPolyK Fp({RatFunc::zero(F), RatFunc::one(F)});
        for (int iter = 0; iter < 50; ++iter) {
            auto w = random_twisted(rng, F, 0, true);
            if (w.is_zero()) continue;
            TwistedPolyK rhs({RatFunc::zero(F), w.c[0].frobenius_pow(1)});
            REQUIRE(Fp * w == rhs);
        }
        // degree additivity
        for (int iter = 0; iter < 50; ++iter) {
            auto A = random_twisted(rng, F, 3), B = random_twisted(rng, F, 3);
            if (A.is_zero() || B.is_zero()) continue;
            REQUIRE((A * B).deg() == A.deg() + B.deg());
        }
    }
}

TEST_CASE("left division: worked examples") {
    auto F2 = FqField::make(2, 1);
    auto A = parse_twisted("F^2+(T^2+T)*F+T^2", F2);
    auto B = parse_twisted("F+T", F2);
    auto [Q, R] = left_divmod(A, B);
    REQUIRE(R.is_zero());
    REQUIRE(Q == B);
    REQUIRE(Q * B == A);  // re-multiplication oracle

    auto [Q2, R2] = left_divmod(A, A);
    REQUIRE(Q2 == TwistedPolyK::constant(RatFunc::one(F2)));
    REQUIRE(R2.is_zero());

    auto [Q3, R3] = left_divmod(B, A);
    REQUIRE(Q3.is_zero());
    REQUIRE(R3 == B);

    REQUIRE_THROWS_AS(left_divmod(A, TwistedPolyK{}), std::domain_error);
}

TEST_CASE("left division round trip on random pairs") {
    std::mt19937_64 rng(23);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        auto F = FqField::make(p, n);
        for (int iter = 0; iter < 170; ++iter) {
            auto A = random_twisted(rng, F, 4, true), B = random_twisted(rng, F, 3, true);
            if (B.is_zero()) continue;
            auto [Q, R] = left_divmod(A, B);
            REQUIRE(Q * B + R == A);
            REQUIRE((R.is_zero() || R.deg() < B.deg()));
        }
    }
}

TEST_CASE("apply: q-polynomial evaluation") {
    auto F2 = FqField::make(2, 1);
    auto phiT = parse_twisted("F+T", F2);
    // (T+F) at x=T: T*T + T^2 = 0 -- T is a T-torsion point
    REQUIRE(phiT.apply(rf("T", F2)).is_zero());
    // any A at 0 -> 0; 1 at x -> x
    auto A = parse_twisted("F^2+(T^2+T)*F+T^2", F2);
    REQUIRE(A.apply(RatFunc::zero(F2)).is_zero());
    auto one = TwistedPolyK::constant(RatFunc::one(F2));
    REQUIRE(one.apply(rf("T^3+1", F2)) == rf("T^3+1", F2));

    // additivity and composition on random samples
    std::mt19937_64 rng(31);
    for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}}) {
        auto F = FqField::make(p, n);
        for (int iter = 0; iter < 60; ++iter) {
            auto Ar = random_twisted(rng, F, 2), Br = random_twisted(rng, F, 2);
            Poly xp(F), yp(F);
            xp.c = {(uint32_t)(rng() % F->size), (uint32_t)(rng() % F->size)};
            yp.c = {(uint32_t)(rng() % F->size), (uint32_t)(rng() % F->size)};
            xp.normalize(); yp.normalize();
            RatFunc x(xp), y(yp);
            REQUIRE(Ar.apply(x + y) == Ar.apply(x) + Ar.apply(y));
            REQUIRE((Ar * Br).apply(x) == Ar.apply(Br.apply(x)));
        }
    }
}
