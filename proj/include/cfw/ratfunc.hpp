#pragma once

#include <string>
#include <utility>

#include "cfw/poly.hpp"

namespace cfw {

/// Element of F_q(T): reduced fraction of polynomials, monic denominator.
class RatFunc {
public:
    Poly num, den;

    RatFunc() = default;
    explicit RatFunc(Poly n) : num(std::move(n)), den(Poly::one(num.F)) {}
    RatFunc(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { reduce(); }

    static RatFunc zero(const FqFieldPtr& F) { return RatFunc(Poly::zero(F)); }
    static RatFunc one(const FqFieldPtr& F) { return RatFunc(Poly::one(F)); }
    static RatFunc constant(const FqFieldPtr& F, uint32_t a) { return RatFunc(Poly::constant(F, a)); }

    const FqFieldPtr& field() const { return num.F; }
    bool same_domain(const RatFunc& o) const { return field().get() == o.field().get(); }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_integral() const { return den.is_one(); }
    /// Constant of F_q (denominator 1, degree <= 0).
    bool is_fq() const { return den.is_one() && num.is_constant(); }

    void reduce() {
        if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num.is_zero()) { den = Poly::one(den.F); return; }
        if (!den.is_one()) {
            Poly g = gcd(num, den);
            if (g.deg() > 0) { num = divexact(num, g); den = divexact(den, g); }
            uint32_t l = den.lead();
            if (l != 1) {
                uint32_t li = den.F->inv(l);
                num = num.scaled(li);
                den = den.scaled(li);
            }
        }
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend bool operator<(const RatFunc& a, const RatFunc& b) {
        if (a.den != b.den) return a.den < b.den;
        return a.num < b.num;
    }

    RatFunc operator-() const {
        RatFunc r = *this;
        r.num = -r.num;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den.is_one() && b.den.is_one()) return RatFunc(a.num + b.num);
        RatFunc r;
        r.num = a.num * b.den + b.num * a.den;
        r.den = a.den * b.den;
        r.reduce();
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        if (a.den.is_one() && b.den.is_one()) return RatFunc(a.num - b.num);
        RatFunc r;
        r.num = a.num * b.den - b.num * a.den;
        r.den = a.den * b.den;
        r.reduce();
        return r;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.den.is_one() && b.den.is_one()) return RatFunc(a.num * b.num);
        RatFunc r;
        r.num = a.num * b.num;
        r.den = a.den * b.den;
        r.reduce();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        RatFunc r;
        r.num = a.num * b.den;
        r.den = a.den * b.num;
        r.reduce();
        return r;
    }
    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den, num);
    }

    RatFunc pow(int64_t e) const {
        if (e < 0) return inv().pow(-e);
        RatFunc r = one(field()), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// x^(q^k), exact (coefficientwise Frobenius is trivial over F_q).
    RatFunc frobenius_pow(uint32_t k) const {
        RatFunc r;
        r.num = num.frobenius_pow(k);
        r.den = den.frobenius_pow(k);
        return r;  // still reduced: gcd(num,den)=1 is preserved by q-powers
    }

    /// Valuation at the infinite place: v(f) = deg den - deg num, v(0) = +inf
    /// (represented by INT32_MAX).
    int v_inf() const {
        if (is_zero()) return INT32_MAX;
        return den.deg() - num.deg();
    }
    /// sgn: leading coefficient of the 1/T-expansion.
    uint32_t sgn() const {
        if (is_zero()) throw std::domain_error("sgn(0) undefined");
        return field()->div(num.lead(), den.lead());
    }

    /// Valuation at a finite prime (monic irreducible pi).
    int valuation(const Poly& pi) const {
        if (is_zero()) return INT32_MAX;
        auto count = [&](Poly f) {
            int v = 0;
            while (true) {
                auto [q, r] = divmod(f, pi);
                if (!r.is_zero()) break;
                f = q;
                ++v;
            }
            return v;
        };
        return count(num) - count(den);
    }

    std::string to_string(const std::string& var = "T", const std::string& gsym = "g") const {
        if (den.is_one()) return num.to_string(var, gsym);
        std::string n = num.to_string(var, gsym), d = den.to_string(var, gsym);
        if (num.c.size() > 1) n = "(" + n + ")";
        if (den.c.size() > 1) d = "(" + d + ")";
        return n + "/" + d;
    }
};

}  // namespace cfw
