#pragma once

#include <vector>

#include "cfw/ratfunc.hpp"
#include "cfw/twisted.hpp"

namespace cfw {

/// Dense polynomial in x over k = F_q(T), little-endian.
class KPoly {
public:
    FqFieldPtr F;
    std::vector<RatFunc> c;

    KPoly() = default;
    explicit KPoly(FqFieldPtr f) : F(std::move(f)) {}
    KPoly(FqFieldPtr f, std::vector<RatFunc> cc) : F(std::move(f)), c(std::move(cc)) { normalize(); }

    static KPoly zero(const FqFieldPtr& f) { return KPoly(f); }
    static KPoly one(const FqFieldPtr& f) { return KPoly(f, {RatFunc::one(f)}); }
    static KPoly var(const FqFieldPtr& f) { return KPoly(f, {RatFunc::zero(f), RatFunc::one(f)}); }
    static KPoly constant(RatFunc a) {
        FqFieldPtr f = a.field();
        return KPoly(f, {std::move(a)});
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    RatFunc coeff(size_t i) const { return i < c.size() ? c[i] : RatFunc::zero(F); }
    const RatFunc& lead() const {
        if (c.empty()) throw std::domain_error("KPoly: lead of zero");
        return c.back();
    }
    bool is_monic() const { return !c.empty() && c.back().is_one(); }

    friend bool operator==(const KPoly& a, const KPoly& b) { return a.c == b.c; }
    friend bool operator!=(const KPoly& a, const KPoly& b) { return !(a == b); }

    KPoly operator-() const {
        KPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend KPoly operator+(const KPoly& a, const KPoly& b) {
        KPoly r(a.F ? a.F : b.F);
        r.c.resize(std::max(a.c.size(), b.c.size()), RatFunc::zero(r.F));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) + b.coeff(i);
        r.normalize();
        return r;
    }
    friend KPoly operator-(const KPoly& a, const KPoly& b) {
        KPoly r(a.F ? a.F : b.F);
        r.c.resize(std::max(a.c.size(), b.c.size()), RatFunc::zero(r.F));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.coeff(i) - b.coeff(i);
        r.normalize();
        return r;
    }
    friend KPoly operator*(const KPoly& a, const KPoly& b) {
        KPoly r(a.F ? a.F : b.F);
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, RatFunc::zero(r.F));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (b.c[j].is_zero()) continue;
                r.c[i + j] += a.c[i] * b.c[j];
            }
        }
        r.normalize();
        return r;
    }
    KPoly& operator+=(const KPoly& b) { return *this = *this + b; }
    KPoly& operator-=(const KPoly& b) { return *this = *this - b; }
    KPoly& operator*=(const KPoly& b) { return *this = *this * b; }

    KPoly scaled(const RatFunc& a) const {
        KPoly r(F);
        if (a.is_zero()) return r;
        r.c = c;
        for (auto& x : r.c) x *= a;
        return r;
    }
    KPoly monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(lead().inv());
    }

    friend std::pair<KPoly, KPoly> divmod(const KPoly& a, const KPoly& b) {
        if (b.is_zero()) throw std::domain_error("KPoly: division by zero");
        if (a.deg() < b.deg()) return {KPoly(a.F), a};
        KPoly q(a.F), r = a;
        q.c.assign(a.deg() - b.deg() + 1, RatFunc::zero(a.F));
        RatFunc linv = b.lead().inv();
        while (!r.is_zero() && r.deg() >= b.deg()) {
            RatFunc t = r.c.back() * linv;
            size_t sh = r.deg() - b.deg();
            q.c[sh] = t;
            for (size_t j = 0; j < b.c.size(); ++j) r.c[sh + j] -= t * b.c[j];
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }
    friend KPoly operator%(const KPoly& a, const KPoly& b) { return divmod(a, b).second; }
    friend KPoly operator/(const KPoly& a, const KPoly& b) { return divmod(a, b).first; }
    friend KPoly divexact(const KPoly& a, const KPoly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("KPoly: division not exact");
        return q;
    }
    friend KPoly gcd(const KPoly& a, const KPoly& b) {
        KPoly A = a, B = b;
        while (!B.is_zero()) {
            A = A % B;
            std::swap(A, B);
        }
        return A.is_zero() ? A : A.monic();
    }

    KPoly derivative() const {
        KPoly r(F);
        if (c.size() <= 1) return r;
        r.c.assign(c.size() - 1, RatFunc::zero(F));
        for (size_t i = 1; i < c.size(); ++i)
            r.c[i - 1] = c[i] * RatFunc::constant(F, F->from_int((int64_t)i));
        r.normalize();
        return r;
    }

    RatFunc eval(const RatFunc& x) const {
        RatFunc r = RatFunc::zero(F);
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
    template <class X>
    X eval_at(const X& x) const {
        X r = x - x;
        for (size_t i = c.size(); i-- > 0;) r = r * x + X(c[i]);
        return r;
    }

    /// All coefficients in F_q[T]?
    bool is_integral() const {
        for (auto& x : c)
            if (!x.is_integral()) return false;
        return true;
    }

    /// Common denominator cleared: returns (g, d) with g integral, this = g/d.
    std::pair<KPoly, Poly> clear_denominators() const {
        Poly d = Poly::one(F);
        for (auto& x : c) d = divexact(d * x.den, gcd(d, x.den));
        KPoly g(F);
        g.c.reserve(c.size());
        for (auto& x : c) g.c.push_back(RatFunc(x.num * divexact(d, x.den)));
        g.normalize();
        return {g, d};
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            if (!out.empty()) out += "+";
            std::string cs = c[i].to_string();
            bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
            if (i == 0) out += paren ? "(" + cs + ")" : cs;
            else {
                if (!c[i].is_one()) out += (paren ? "(" + cs + ")" : cs) + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }
};

/// Spread of a twisted polynomial to its q-polynomial form:
/// sum c_i F^i -> sum c_i x^{q^i}.
inline KPoly q_polynomial(const TwistedPolyK& A, const FqFieldPtr& F) {
    KPoly r(F);
    if (A.is_zero()) return r;
    uint64_t qq = F->size, stride = 1;
    for (size_t i = 0; i < A.c.size(); ++i) {
        if (!A.c[i].is_zero()) {
            if (r.c.size() < stride + 1) r.c.resize(stride + 1, RatFunc::zero(F));
            r.c[stride] = A.c[i];
        }
        stride *= qq;
    }
    r.normalize();
    return r;
}

}  // namespace cfw
