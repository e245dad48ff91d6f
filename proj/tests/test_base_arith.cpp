#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cfw/fq.hpp"
#include "cfw/ideal.hpp"
#include "cfw/poly.hpp"
#include "cfw/ratfunc.hpp"
#include "cfw/residue.hpp"

using namespace cfw;

namespace {

Poly P(const std::string& s, const FqFieldPtr& F) { return parse_poly(s, F); }

Poly random_monic(std::mt19937_64& rng, const FqFieldPtr& F, int deg) {
    Poly f(F);
    f.c.assign(deg + 1, 0);
    for (int i = 0; i < deg; ++i) f.c[i] = (uint32_t)(rng() % F->size);
    f.c[deg] = 1;
    return f;
}

}  // namespace

TEST_CASE("finite field arithmetic basics") {
    for (auto [p, n] : {std::pair{2u, 1u}, {2u, 2u}, {3u, 1u}, {2u, 4u}, {3u, 2u}}) {
        auto F = FqField::make(p, n);
        REQUIRE(F->size == (uint32_t)std::pow(p, n));
        for (uint32_t a = 0; a < F->size; ++a) {
            REQUIRE(F->add(a, F->neg(a)) == 0);
            if (a) {
                REQUIRE(F->mul(a, F->inv(a)) == 1);
                REQUIRE(F->pow(a, (int64_t)F->size - 1) == 1);
            }
            for (uint32_t b = 0; b < F->size; ++b) {
                REQUIRE(F->add(a, b) == F->add(b, a));
                REQUIRE(F->mul(a, b) == F->mul(b, a));
            }
        }
        // Frobenius is additive
        for (uint32_t a = 0; a < F->size; ++a)
            for (uint32_t b = 0; b < F->size; ++b)
                REQUIRE(F->frob(F->add(a, b)) == F->add(F->frob(a), F->frob(b)));
    }
}

TEST_CASE("field interning gives pointer identity") {
    auto F1 = FqField::make(2, 2);
    auto F2 = FqField::make(2, 2);
    REQUIRE(F1.get() == F2.get());
}

TEST_CASE("polynomial parse/print round trip") {
    auto F2 = FqField::make(2, 1);
    auto F4 = FqField::make(2, 2);
    auto F3 = FqField::make(3, 1);
    REQUIRE(P("T^4+T^3+1", F2).to_string() == "T^4+T^3+1");
    REQUIRE(P("g*T+1", F4).to_string() == "g*T+1");
    REQUIRE(P("(g+1)*T^2+g*T+1", F4).to_string() == "(g+1)*T^2+g*T+1");
    REQUIRE(P("2*T^2+T+2", F3).to_string() == "2*T^2+T+2");
    REQUIRE(P("T^2-1", F3) == P("T^2+2", F3));
    REQUIRE_THROWS_AS(P("T^2+&", F2), std::invalid_argument);
    REQUIRE_THROWS_AS(P("g*T", F2), std::invalid_argument);  // no extension generator in F_2
}

TEST_CASE("factor: worked examples") {
    auto F2 = FqField::make(2, 1);
    auto F3 = FqField::make(3, 1);

    // q=2: T^2+T = T(T+1)
    auto f1 = factor_trial(P("T^2+T", F2));
    REQUIRE(f1.size() == 2);
    REQUIRE(f1[0].first == P("T", F2));
    REQUIRE(f1[0].second == 1);
    REQUIRE(f1[1].first == P("T+1", F2));
    REQUIRE(f1[1].second == 1);

    // q=2: T^2+T+1 irreducible, verified by the exhaustive-divisor oracle
    auto g = P("T^2+T+1", F2);
    for (const auto& d : irreducibles(F2, 1)) REQUIRE_FALSE((g % d).is_zero());
    auto f2 = factor_trial(g);
    REQUIRE(f2.size() == 1);
    REQUIRE(f2[0].first == g);
    REQUIRE(f2[0].second == 1);

    // q=3: T^2+1 has no root in F_3, hence irreducible
    auto h = P("T^2+1", F3);
    for (uint32_t a = 0; a < 3; ++a) REQUIRE(h.eval(a) != 0);
    auto f3 = factor_trial(h);
    REQUIRE(f3.size() == 1);
    REQUIRE(f3[0].first == h);

    REQUIRE_THROWS_AS(factor_trial(Poly::zero(F2)), std::invalid_argument);
    REQUIRE_THROWS_AS(factor_trial(P("g*T+1", FqField::make(2, 2)).scaled(2)), std::invalid_argument);
}

TEST_CASE("factor merge property on random pairs") {
    std::mt19937_64 rng(7);
    for (auto q : {2u, 3u}) {
        auto F = FqField::make(q, 1);
        for (int iter = 0; iter < 250; ++iter) {
            Poly f = random_monic(rng, F, 1 + (int)(rng() % 4));
            Poly g = random_monic(rng, F, 1 + (int)(rng() % 4));
            auto ff = factor_trial(f), fg = factor_trial(g), fp = factor_trial(f * g);
            std::map<Poly, int> merged;
            for (auto& [p, m] : ff) merged[p] += m;
            for (auto& [p, m] : fg) merged[p] += m;
            std::map<Poly, int> prod(fp.begin(), fp.end());
            REQUIRE(merged == prod);
            // product reconstructs
            Poly rec = Poly::one(F);
            for (auto& [p, m] : fp)
                for (int i = 0; i < m; ++i) rec *= p;
            REQUIRE(rec == f * g);
        }
    }
}

TEST_CASE("general factorization agrees with trial division") {
    std::mt19937_64 rng(11);
    for (auto q : {2u, 3u, 4u}) {
        auto F = FqField::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
        for (int iter = 0; iter < 60; ++iter) {
            Poly f = random_monic(rng, F, 2 + (int)(rng() % 5));
            auto a = factor_trial(f);
            auto b = factor(f);
            std::map<Poly, int> ma(a.begin(), a.end()), mb(b.begin(), b.end());
            REQUIRE(ma == mb);
        }
    }
}

TEST_CASE("unit_group: worked examples") {
    auto F2 = FqField::make(2, 1);
    auto F3 = FqField::make(3, 1);

    // q=2, m=(T^2): single generator T+1 of order 2 (group {1, T+1})
    auto G1 = unit_group(MonicIdeal(P("T^2", F2)));
    REQUIRE(G1->card() == 2);
    REQUIRE(G1->basis.size() == 1);
    REQUIRE(G1->ring.decode(G1->basis[0].first) == P("T+1", F2));
    REQUIRE(G1->basis[0].second == 2);

    // q=2, m=(T(T+1)): trivial unit group
    auto G2 = unit_group(MonicIdeal(P("T^2+T", F2)));
    REQUIRE(G2->card() == 1);
    REQUIRE(G2->basis.empty());

    // q=3, m=(T): one generator 2 of order 2
    auto G3 = unit_group(MonicIdeal(P("T", F3)));
    REQUIRE(G3->card() == 2);
    REQUIRE(G3->ring.decode(G3->basis[0].first) == P("2", F3));
    REQUIRE(G3->basis[0].second == 2);

    REQUIRE_THROWS_AS(unit_group(MonicIdeal(P("1", F2))), std::invalid_argument);
}

TEST_CASE("unit_group cardinality formula") {
    for (auto q : {2u, 3u}) {
        auto F = FqField::make(q, 1);
        for (uint32_t d = 1; d <= 3; ++d) {
            uint64_t count = 1;
            for (uint32_t i = 0; i < d; ++i) count *= F->size;
            for (uint64_t idx = 0; idx < count; ++idx) {
                Poly m(F);
                m.c.assign(d + 1, 0);
                uint64_t t = idx;
                for (uint32_t i = 0; i < d; ++i) { m.c[i] = (uint32_t)(t % F->size); t /= F->size; }
                m.c[d] = 1;
                MonicIdeal mi(m);
                auto G = unit_group(mi);
                REQUIRE(G->card() == mi.unit_count());
                uint64_t prod = 1;
                for (auto o : G->orders()) prod *= o;
                REQUIRE(prod == mi.unit_count());
            }
        }
    }
}

TEST_CASE("discrete_log: worked examples and round trip") {
    auto F2 = FqField::make(2, 1);
    auto F3 = FqField::make(3, 1);

    auto G1 = unit_group(MonicIdeal(P("T^2", F2)));
    REQUIRE(G1->discrete_log(P("T+1", F2)) == std::vector<uint64_t>{1});
    REQUIRE(G1->discrete_log(P("1", F2)) == std::vector<uint64_t>{0});
    auto G3 = unit_group(MonicIdeal(P("T", F3)));
    REQUIRE(G3->discrete_log(P("2", F3)) == std::vector<uint64_t>{1});
    REQUIRE_THROWS_AS(G1->discrete_log(P("T", F2)), std::domain_error);

    // re-exponentiation is the identity on 200 random units
    std::mt19937_64 rng(3);
    auto G = unit_group(MonicIdeal(P("T^3+T+1", F2) * P("T", F2)));
    const auto& units = G->group.elems;
    for (int i = 0; i < 200; ++i) {
        uint64_t code = units[rng() % units.size()];
        Poly u = G->ring.decode(code);
        REQUIRE(G->from_exponents(G->discrete_log(u)) == u);
    }
}

TEST_CASE("rational functions") {
    auto F3 = FqField::make(3, 1);
    RatFunc x(P("T^2+1", F3), P("T", F3));
    RatFunc y(P("T", F3));
    REQUIRE((x * y).num == P("T^2+1", F3));
    REQUIRE((x * x.inv()).is_one());
    REQUIRE(x.v_inf() == -1);
    REQUIRE(y.v_inf() == -1);
    REQUIRE(RatFunc(P("1", F3), P("T^2", F3)).v_inf() == 2);
    REQUIRE(x.valuation(P("T", F3)) == -1);
    REQUIRE(x.frobenius_pow(1) == x.pow(3));
    REQUIRE(RatFunc(P("T+2", F3)).sgn() == 1);
    REQUIRE(RatFunc(P("2*T+1", F3)).sgn() == 2);
}
