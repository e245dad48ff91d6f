#pragma once

#include <map>
#include <mutex>

#include "cfw/ideal.hpp"
#include "cfw/kpoly.hpp"
#include "cfw/twisted.hpp"

namespace cfw {

/// sgn of a nonzero element of k: the leading coefficient of its
/// 1/T-expansion.  Over the rational base k(infinity) = F_q, so sgn is just
/// the leading coefficient and the twist tau is the identity.
inline uint32_t sgn(const RatFunc& x) { return x.sgn(); }
inline uint32_t sgn(const Poly& x) {
    if (x.is_zero()) throw std::domain_error("sgn(0) undefined");
    return x.lead();
}

namespace detail {
struct CarlitzCache {
    static std::map<std::pair<const FqField*, Poly>, TwistedPolyK>& phi() {
        static std::map<std::pair<const FqField*, Poly>, TwistedPolyK> m;
        return m;
    }
    static std::map<std::pair<const FqField*, Poly>, KPoly>& psi() {
        static std::map<std::pair<const FqField*, Poly>, KPoly> m;
        return m;
    }
    static std::recursive_mutex& mtx() {
        static std::recursive_mutex m;
        return m;
    }
};
}  // namespace detail

/// Carlitz module Phi_a for a in F_q[T], a != 0: the unique F_q-algebra map
/// with Phi_T = T + F.  D(Phi_a) = a, deg_F = deg a, lead = sgn(a).
inline TwistedPolyK phi_elem(const Poly& a) {
    if (a.is_zero()) throw std::invalid_argument("phi_elem: a = 0");
    std::lock_guard<std::recursive_mutex> lk(detail::CarlitzCache::mtx());
    auto key = std::make_pair(a.F.get(), a);
    auto& cache = detail::CarlitzCache::phi();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const FqFieldPtr& F = a.F;
    TwistedPolyK phiT({RatFunc(Poly::var(F)), RatFunc::one(F)});  // T + F
    TwistedPolyK acc, pw = TwistedPolyK::constant(RatFunc::one(F));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i]) {
            TwistedPolyK t = pw;
            for (auto& x : t.c) x *= RatFunc::constant(F, a.c[i]);
            acc += t;
        }
        if (i + 1 < a.c.size()) pw *= phiT;
    }
    cache[key] = acc;
    return acc;
}

/// Monic generator of the left ideal (Phi_a : a in the ideal):
/// Phi_ideal = s(a)^{-1} Phi_a for the monic generator a.
inline TwistedPolyK phi_ideal(const MonicIdeal& a) {
    TwistedPolyK f = phi_elem(a.gen);
    uint32_t s = sgn(a.gen);  // 1: generators are monic
    if (s != 1) {
        uint32_t si = a.field()->inv(s);
        for (auto& x : f.c) x *= RatFunc::constant(a.field(), si);
    }
    return f;
}

/// D(Phi_ideal(a)): the xi-ratio xi(a^{-1}c)/xi(c), independent of c over the
/// rational base.
struct XiRatio {
    MonicIdeal a;
    RatFunc value;
};
inline XiRatio xi_ratio(const MonicIdeal& a) {
    TwistedPolyK f = phi_ideal(a);
    return XiRatio{a, f.constant_term(RatFunc::zero(a.field()))};
}

/// Phi_m as a plain q-polynomial in x.
inline KPoly division_poly(const MonicIdeal& m) {
    return q_polynomial(phi_ideal(m), m.field());
}

/// Primitive division polynomial Psi_m: the factor of Phi_m(x) whose roots
/// have annihilator exactly m, computed as the Moebius quotient
/// prod_{d | m} Phi_{m/d}(x)^{mu(d)} by exact division.
inline KPoly primitive_division_poly(const MonicIdeal& m) {
    if (m.is_unit()) throw std::invalid_argument("primitive_division_poly: modulus (1)");
    std::lock_guard<std::recursive_mutex> lk(detail::CarlitzCache::mtx());
    auto key = std::make_pair(m.field().get(), m.gen);
    auto& cache = detail::CarlitzCache::psi();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    KPoly num = KPoly::one(m.field()), den = KPoly::one(m.field());
    // Psi_m = prod over divisors d of m of Phi_{m/d}(x)^{mu(d)}
    for (const auto& d : m.divisors()) {
        int mu = d.moebius();
        if (mu == 0) continue;
        KPoly f = division_poly(m.quotient(d));
        if (mu == 1) num *= f;
        else den *= f;
    }
    KPoly psi = divexact(num, den);
    if (!psi.is_integral()) throw std::logic_error("Psi_m: non-integral result");
    cache[key] = psi;
    return psi;
}

}  // namespace cfw
