#pragma once

#include <cstdint>
#include <vector>

#include "cfw/poly.hpp"

namespace cfw {

/// Nonzero ideal of F_q[T], held as its monic generator together with a
/// factorization into monic irreducibles.
class MonicIdeal {
public:
    Poly gen;                                  // monic
    std::vector<std::pair<Poly, int>> factors; // (monic irreducible, multiplicity)

    MonicIdeal() = default;
    explicit MonicIdeal(const Poly& g0) {
        if (g0.is_zero()) throw std::invalid_argument("MonicIdeal: zero generator");
        gen = g0.monic();
        if (gen.deg() > 0) factors = factor_trial(gen);
    }
    static MonicIdeal unit(const FqFieldPtr& F) { return MonicIdeal(Poly::one(F)); }

    const FqFieldPtr& field() const { return gen.F; }
    bool is_unit() const { return gen.is_one(); }
    bool is_prime() const { return factors.size() == 1 && factors[0].second == 1; }
    int deg() const { return gen.deg(); }
    /// N(a) = #(O_k/a) = q^deg.
    uint64_t norm() const {
        uint64_t n = 1;
        for (int i = 0; i < deg(); ++i) n *= field()->size;
        return n;
    }
    /// #(O_k/a)^x = prod N(p)^m - N(p)^(m-1).
    uint64_t unit_count() const {
        uint64_t n = 1;
        for (const auto& [p, m] : factors) {
            uint64_t np = 1;
            for (int i = 0; i < p.deg(); ++i) np *= field()->size;
            uint64_t t = 1;
            for (int i = 0; i < m - 1; ++i) t *= np;
            n *= t * (np - 1);
        }
        return n;
    }

    friend bool operator==(const MonicIdeal& a, const MonicIdeal& b) { return a.gen == b.gen; }
    friend bool operator!=(const MonicIdeal& a, const MonicIdeal& b) { return !(a == b); }
    friend bool operator<(const MonicIdeal& a, const MonicIdeal& b) { return a.gen < b.gen; }

    friend MonicIdeal operator*(const MonicIdeal& a, const MonicIdeal& b) {
        MonicIdeal r;
        r.gen = a.gen * b.gen;
        r.factors = a.factors;
        for (const auto& [p, m] : b.factors) {
            bool found = false;
            for (auto& [pp, mm] : r.factors)
                if (pp == p) { mm += m; found = true; break; }
            if (!found) r.factors.emplace_back(p, m);
        }
        std::sort(r.factors.begin(), r.factors.end());
        return r;
    }

    bool divides(const MonicIdeal& b) const { return (b.gen % gen).is_zero(); }
    bool coprime(const MonicIdeal& b) const { return gcd(gen, b.gen).is_one(); }

    MonicIdeal quotient(const MonicIdeal& d) const {
        MonicIdeal r;
        r.gen = divexact(gen, d.gen);
        for (const auto& [p, m] : factors) {
            int md = 0;
            for (const auto& [pd, mm] : d.factors)
                if (pd == p) md = mm;
            if (m - md > 0) r.factors.emplace_back(p, m - md);
        }
        return r;
    }

    /// All (monic) divisor ideals, including (1) and the ideal itself.
    std::vector<MonicIdeal> divisors() const {
        std::vector<MonicIdeal> out{MonicIdeal::unit(field())};
        for (const auto& [p, m] : factors) {
            std::vector<MonicIdeal> next;
            MonicIdeal pk = MonicIdeal::unit(field());
            for (int e = 0; e <= m; ++e) {
                for (const auto& d : out) next.push_back(d * pk);
                if (e < m) pk = pk * MonicIdeal(p);
            }
            out = std::move(next);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Moebius function: 0 unless squarefree, else (-1)^(number of primes).
    int moebius() const {
        int sign = 1;
        for (const auto& [p, m] : factors) {
            if (m >= 2) return 0;
            sign = -sign;
        }
        return sign;
    }

    /// Moebius function of the quotient ideal this/d (0 unless squarefree).
    int moebius_of_quotient(const MonicIdeal& d) const {
        int sign = 1;
        for (const auto& [p, m] : factors) {
            int md = 0;
            for (const auto& [pd, mm] : d.factors)
                if (pd == p) md = mm;
            int e = m - md;
            if (e >= 2) return 0;
            if (e == 1) sign = -sign;
        }
        return sign;
    }

    std::string to_string() const { return gen.to_string(); }
};

inline MonicIdeal ideal_lcm(const MonicIdeal& a, const MonicIdeal& b) {
    MonicIdeal g;
    g.gen = gcd(a.gen, b.gen);
    MonicIdeal r;
    r.gen = divexact(a.gen * b.gen, g.gen);
    return MonicIdeal(r.gen);
}

}  // namespace cfw
