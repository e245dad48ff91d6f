#pragma once

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cfw/fq.hpp"

namespace cfw {

/// Dense univariate polynomial over an FqField, little-endian coefficients.
/// The zero polynomial has an empty coefficient vector; otherwise the top
/// coefficient is nonzero.
class Poly {
public:
    FqFieldPtr F;
    std::vector<uint32_t> c;

    Poly() = default;
    explicit Poly(FqFieldPtr f) : F(std::move(f)) {}
    Poly(FqFieldPtr f, std::vector<uint32_t> cc) : F(std::move(f)), c(std::move(cc)) { normalize(); }

    static Poly zero(const FqFieldPtr& f) { return Poly(f); }
    static Poly constant(const FqFieldPtr& f, uint32_t a) {
        Poly r(f);
        if (a) r.c = {a};
        return r;
    }
    static Poly one(const FqFieldPtr& f) { return constant(f, 1); }
    /// The variable T (or x) itself.
    static Poly var(const FqFieldPtr& f) { return Poly(f, {0, 1}); }
    static Poly monomial(const FqFieldPtr& f, uint32_t a, size_t d) {
        Poly r(f);
        if (a) {
            r.c.assign(d + 1, 0);
            r.c[d] = a;
        }
        return r;
    }

    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    int deg() const { return (int)c.size() - 1; }
    uint32_t lead() const { return c.empty() ? 0 : c.back(); }
    uint32_t coeff(size_t i) const { return i < c.size() ? c[i] : 0; }
    bool is_monic() const { return lead() == 1; }
    bool is_constant() const { return c.size() <= 1; }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Lexicographic-by-degree total order, used for canonical enumeration.
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
        for (size_t i = a.c.size(); i-- > 0;)
            if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
        return false;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = F->neg(x);
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const FqFieldPtr& f = a.F ? a.F : b.F;
        Poly r(f);
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->add(a.coeff(i), b.coeff(i));
        r.normalize();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        const FqFieldPtr& f = a.F ? a.F : b.F;
        Poly r(f);
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = f->sub(a.coeff(i), b.coeff(i));
        r.normalize();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        const FqFieldPtr& f = a.F ? a.F : b.F;
        if (a.is_zero() || b.is_zero()) return Poly(f);
        Poly r(f);
        if (f->size == 2) {
            // carry-less multiply on packed words
            size_t na = a.c.size(), nb = b.c.size();
            size_t wa = (na + 63) / 64, wb = (nb + 63) / 64;
            std::vector<uint64_t> A(wa, 0), B(wb, 0), R(wa + wb, 0);
            for (size_t i = 0; i < na; ++i)
                if (a.c[i]) A[i / 64] |= 1ull << (i % 64);
            for (size_t i = 0; i < nb; ++i)
                if (b.c[i]) B[i / 64] |= 1ull << (i % 64);
            for (size_t i = 0; i < na; ++i) {
                if (!a.c[i]) continue;
                size_t w = i / 64, s = i % 64;
                for (size_t j = 0; j < wb; ++j) {
                    R[w + j] ^= B[j] << s;
                    if (s) R[w + j + 1] ^= B[j] >> (64 - s);
                }
            }
            r.c.assign(na + nb - 1, 0);
            for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (R[i / 64] >> (i % 64)) & 1;
        } else {
            r.c.assign(a.c.size() + b.c.size() - 1, 0);
            for (size_t i = 0; i < a.c.size(); ++i) {
                uint32_t ai = a.c[i];
                if (!ai) continue;
                for (size_t j = 0; j < b.c.size(); ++j)
                    if (b.c[j]) r.c[i + j] = f->add(r.c[i + j], f->mul(ai, b.c[j]));
            }
        }
        r.normalize();
        return r;
    }
    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    Poly scaled(uint32_t a) const {
        Poly r(F);
        if (!a) return r;
        r.c = c;
        if (a != 1)
            for (auto& x : r.c) x = F->mul(x, a);
        return r;
    }

    /// Quotient and remainder; divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero");
        const FqFieldPtr& f = a.F ? a.F : b.F;
        if (a.deg() < b.deg()) return {Poly(f), a};
        Poly q(f), r = a;
        q.c.assign(a.deg() - b.deg() + 1, 0);
        uint32_t linv = f->inv(b.lead());
        while (!r.is_zero() && r.deg() >= b.deg()) {
            uint32_t t = f->mul(r.lead(), linv);
            size_t sh = r.deg() - b.deg();
            q.c[sh] = t;
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[sh + j] = f->sub(r.c[sh + j], f->mul(t, b.c[j]));
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Exact division; throws if the remainder is nonzero.
    friend Poly divexact(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw std::domain_error("Poly: division not exact");
        return q;
    }

    Poly monic() const {
        if (is_zero() || lead() == 1) return *this;
        return scaled(F->inv(lead()));
    }

    friend Poly gcd(const Poly& a, const Poly& b) {
        Poly A = a, B = b;
        while (!B.is_zero()) {
            A = A % B;
            std::swap(A, B);
        }
        return A.monic();
    }

    /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
    friend std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
        const FqFieldPtr& f = a.F ? a.F : b.F;
        Poly r0 = a, r1 = b;
        Poly s0 = Poly::one(f), s1 = Poly::zero(f);
        Poly t0 = Poly::zero(f), t1 = Poly::one(f);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = r1; r1 = r;
            Poly s = s0 - q * s1; s0 = s1; s1 = s;
            Poly t = t0 - q * t1; t0 = t1; t1 = t;
        }
        if (!r0.is_zero() && r0.lead() != 1) {
            uint32_t li = f->inv(r0.lead());
            r0 = r0.scaled(li); s0 = s0.scaled(li); t0 = t0.scaled(li);
        }
        return {r0, s0, t0};
    }

    uint32_t eval(uint32_t x) const {
        uint32_t r = 0;
        for (size_t i = c.size(); i-- > 0;) r = F->add(F->mul(r, x), c[i]);
        return r;
    }

    /// Evaluation into an extension field via an embedding of coefficients.
    /// `emb` maps the encoding of a coefficient into the target field.
    template <class Emb>
    uint32_t eval_in(const FqFieldPtr& E, uint32_t x, Emb emb) const {
        uint32_t r = 0;
        for (size_t i = c.size(); i-- > 0;) r = E->add(E->mul(r, x), emb(c[i]));
        return r;
    }

    Poly derivative() const {
        Poly r(F);
        if (c.size() <= 1) return r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) {
            uint32_t k = F->from_int((int64_t)i);
            r.c[i - 1] = F->mul(c[i], k);
        }
        r.normalize();
        return r;
    }

    /// f^(size^k): coefficientwise identity over F_q, so just a stride spread.
    Poly frobenius_pow(uint32_t k) const {
        if (is_zero() || k == 0) return *this;
        uint64_t stride = 1;
        for (uint32_t i = 0; i < k; ++i) stride *= F->size;
        Poly r(F);
        r.c.assign((c.size() - 1) * stride + 1, 0);
        for (size_t i = 0; i < c.size(); ++i) r.c[i * stride] = c[i];
        return r;
    }

    Poly pow(uint64_t e) const {
        Poly r = Poly::one(F), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    friend Poly powmod(const Poly& a, uint64_t e, const Poly& mod) {
        Poly r = Poly::one(a.F), b = a % mod;
        while (e) {
            if (e & 1) r = (r * b) % mod;
            b = (b * b) % mod;
            e >>= 1;
        }
        return r;
    }

    std::string to_string(const std::string& var = "T", const std::string& gsym = "g") const;
};

/// All monic irreducibles of degree d, lex order; memoized per field.
inline const std::vector<Poly>& irreducibles(const FqFieldPtr& F, uint32_t d) {
    static std::map<std::pair<const FqField*, uint32_t>, std::vector<Poly>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lk(mtx);
    auto key = std::make_pair(F.get(), d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    // sieve: enumerate monic degree-d polynomials, trial divide by the
    // irreducibles of degree <= d/2
    std::vector<const std::vector<Poly>*> lower;
    for (uint32_t e = 1; 2 * e <= d; ++e) lower.push_back(&irreducibles(F, e));
    std::vector<Poly> out;
    uint64_t count = 1;
    for (uint32_t i = 0; i < d; ++i) count *= F->size;
    for (uint64_t idx = 0; idx < count; ++idx) {
        Poly f(F);
        f.c.assign(d + 1, 0);
        uint64_t t = idx;
        for (uint32_t i = 0; i < d; ++i) { f.c[i] = (uint32_t)(t % F->size); t /= F->size; }
        f.c[d] = 1;
        bool irred = true;
        for (auto* vp : lower) {
            if (!irred) break;
            for (const auto& g : *vp)
                if ((f % g).is_zero()) { irred = false; break; }
        }
        if (irred) out.push_back(std::move(f));
    }
    return cache[key] = std::move(out);
}

/// Factorization into monic irreducibles by exhaustive trial division
/// (desk-scale inputs; the divisor lists are memoized sieves).
inline std::vector<std::pair<Poly, int>> factor_trial(const Poly& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    if (!f0.is_monic()) throw std::invalid_argument("factor: input must be monic");
    Poly f = f0;
    std::vector<std::pair<Poly, int>> out;
    for (uint32_t d = 1; f.deg() > 0 && 2 * d <= (uint32_t)f0.deg(); ++d) {
        for (const auto& g : irreducibles(f.F, d)) {
            if (f.deg() < (int)d) break;
            int m = 0;
            while (true) {
                auto [q, r] = divmod(f, g);
                if (!r.is_zero()) break;
                f = q;
                ++m;
            }
            if (m) out.emplace_back(g, m);
        }
    }
    if (f.deg() > 0) out.emplace_back(f, 1);  // what is left is irreducible
    return out;
}

namespace detail {

/// Equal-degree splitting of a squarefree product of degree-d irreducibles,
/// deterministic: candidate elements are scanned in canonical order.
inline void edf(const Poly& f, uint32_t d, std::vector<Poly>& out) {
    if ((uint32_t)f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    const FqFieldPtr& F = f.F;
    uint64_t Q = F->size;
    uint32_t pchar = F->p;
    // scan candidate polynomials u of degree < deg f in canonical order
    for (uint64_t idx = 1;; ++idx) {
        Poly u(F);
        uint64_t t = idx;
        size_t i = 0;
        u.c.assign(f.deg(), 0);
        while (t) { u.c[i++] = (uint32_t)(t % Q); t /= Q; if (i >= u.c.size()) break; }
        u.normalize();
        if (u.is_zero()) continue;
        Poly g(F);
        if (pchar == 2) {
            // trace map over F_2: sum of u^(2^i), i < log2(Q^d)
            uint32_t bits = 0;
            uint64_t qq = Q;
            while (qq > 1) { qq >>= 1; ++bits; }
            uint32_t total = bits * d;
            Poly tr = u % f, cur = u % f;
            for (uint32_t j = 1; j < total; ++j) {
                cur = (cur * cur) % f;
                tr = tr + cur;
            }
            g = gcd(f, tr);
        } else {
            // u^((Q^d-1)/2) = (prod_{i<d} u^{Q^i})^((Q-1)/2): avoids the huge
            // exponent by a Frobenius chain
            Poly w = Poly::one(F), cur = u % f;
            for (uint32_t i = 0; i < d; ++i) {
                w = (w * cur) % f;
                if (i + 1 < d) cur = powmod(cur, Q, f);
            }
            w = powmod(w, (Q - 1) / 2, f);
            g = gcd(f, w - Poly::one(F));
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, out);
            edf(divexact(f, g).monic(), d, out);
            return;
        }
    }
}

}  // namespace detail

/// General factorization (squarefree + distinct-degree + equal-degree);
/// used where trial division is out of reach (e.g. splitting mod ell).
inline std::vector<std::pair<Poly, int>> factor(const Poly& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    const FqFieldPtr& F = f0.F;
    std::map<Poly, int> mult;
    // squarefree decomposition (handles p-th power parts)
    struct Item { Poly f; int mul; };
    std::vector<Item> stack{{f0.monic(), 1}};
    while (!stack.empty()) {
        auto [f, m] = stack.back();
        stack.pop_back();
        if (f.deg() <= 0) continue;
        Poly df = f.derivative();
        if (df.is_zero()) {
            // f = h(T^p): take p-th root (coefficients a -> a^{size/p}... over
            // F_q, a = a^q so the p-th root of a is a^{q/p})
            Poly h(F);
            uint32_t pchar = F->p;
            h.c.assign((f.c.size() - 1) / pchar + 1, 0);
            for (size_t i = 0; i < h.c.size(); ++i) {
                uint32_t a = f.coeff(i * pchar);
                h.c[i] = F->frob(a, F->deg_abs - 1);  // p-th root in F
            }
            h.normalize();
            stack.push_back({h, m * (int)pchar});
            continue;
        }
        Poly g = gcd(f, df);
        Poly sqfree = divexact(f, g).monic();
        if (g.deg() > 0) stack.push_back({g, m});
        if (sqfree.deg() > 0) {
            // remove from sqfree the factors still present in g to get true
            // multiplicity-1 part... simpler: DDF on sqfree, later dedup via map
            Poly rem = sqfree;
            // distinct-degree
            Poly x = Poly::var(F);
            Poly xq = x;
            for (uint32_t d = 1; rem.deg() > 0 && (int)d <= rem.deg(); ++d) {
                xq = powmod(xq, F->size, rem);
                Poly g2 = gcd(rem, xq - x);
                if (g2.deg() > 0) {
                    std::vector<Poly> eq;
                    detail::edf(g2, d, eq);
                    for (auto& fac : eq) mult[fac] += m;
                    rem = divexact(rem, g2).monic();
                    xq = xq % rem;
                }
                if (2 * (d + 1) > (uint32_t)rem.deg() && rem.deg() > 0) {
                    mult[rem] += m;
                    rem = Poly::one(F);
                }
            }
        }
    }
    // merge duplicated factors arising from the gcd cascade
    std::vector<std::pair<Poly, int>> out(mult.begin(), mult.end());
    return out;
}

inline bool is_irreducible(const Poly& f) {
    if (f.deg() <= 0) return false;
    if (f.deg() == 1) return true;
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].second == 1;
}

/// Roots in the coefficient field (full scan; fields are small here).
inline std::vector<uint32_t> roots_in_field(const Poly& f) {
    std::vector<uint32_t> out;
    for (uint32_t a = 0; a < f.F->size; ++a)
        if (f.eval(a) == 0) out.push_back(a);
    return out;
}

// ---------------------------------------------------------------------------
// text syntax: "T^4+T^3+1", extension coefficients via "g" ("g*T+1",
// "(g+1)*T^2+2"); case-sensitive
// ---------------------------------------------------------------------------

namespace detail {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    FqFieldPtr F;
    std::string var, gsym;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char ch) {
        skip_ws();
        if (pos < s.size() && s[pos] == ch) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " +
                                    std::to_string(pos) + ": " + what + " in \"" + s + "\"");
    }

    uint64_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit((unsigned char)s[pos])) fail("expected number");
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = v * 10 + (s[pos] - '0');
            if (v > (1ull << 40)) fail("number too large");
            ++pos;
        }
        return v;
    }

    // factor := uint | gsym[^e] | var[^e] | '(' sum-of-coefficient-terms ')'
    // term   := factor (['*'] factor)*
    // poly   := term (('+'|'-') term)*
    Poly parse_poly() {
        Poly acc(F);
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        while (true) {
            Poly t = parse_term();
            acc = neg ? acc - t : acc + t;
            skip_ws();
            if (eat('+')) neg = false;
            else if (eat('-')) neg = true;
            else break;
        }
        skip_ws();
        return acc;
    }

    Poly parse_term() {
        Poly prod = Poly::one(F);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= s.size()) break;
            char ch = s[pos];
            if (!first) {
                size_t save = pos;
                bool star = eat('*');
                skip_ws();
                if (pos >= s.size()) { if (star) fail("dangling '*'"); break; }
                ch = s[pos];
                bool starts_factor = std::isdigit((unsigned char)ch) || ch == '(' ||
                                     s.compare(pos, var.size(), var) == 0 ||
                                     s.compare(pos, gsym.size(), gsym) == 0;
                if (!starts_factor) {
                    if (star) fail("expected factor after '*'");
                    pos = save;
                    break;
                }
            }
            prod = prod * parse_factor();
            first = false;
        }
        if (first) fail("expected term");
        return prod;
    }

    Poly parse_factor() {
        skip_ws();
        if (pos >= s.size()) fail("expected factor");
        char ch = s[pos];
        if (std::isdigit((unsigned char)ch)) {
            uint64_t v = parse_uint();
            return Poly::constant(F, F->from_int((int64_t)v));
        }
        if (ch == '(') {
            ++pos;
            Poly inner = parse_poly();
            if (!eat(')')) fail("expected ')'");
            return maybe_pow(inner);
        }
        if (s.compare(pos, var.size(), var) == 0) {
            pos += var.size();
            return maybe_pow(Poly::var(F));
        }
        if (s.compare(pos, gsym.size(), gsym) == 0) {
            pos += gsym.size();
            if (F->ext_deg <= 1) fail("'" + gsym + "' needs an extension field");
            return maybe_pow(Poly::constant(F, F->gen()));
        }
        fail("unexpected character");
    }

    Poly maybe_pow(Poly base) {
        skip_ws();
        if (eat('^')) {
            uint64_t e = parse_uint();
            return base.pow(e);
        }
        return base;
    }
};

}  // namespace detail

inline Poly parse_poly(const std::string& s, const FqFieldPtr& F,
                       const std::string& var = "T", const std::string& gsym = "g") {
    detail::PolyParser P{s, 0, F, var, gsym};
    Poly r = P.parse_poly();
    P.skip_ws();
    if (P.pos != s.size()) P.fail("trailing input");
    return r;
}

inline std::string Poly::to_string(const std::string& var, const std::string& gsym) const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c.size(); i-- > 0;) {
        if (!c[i]) continue;
        if (!out.empty()) out += "+";
        std::string cs = F->to_string(c[i], gsym);
        bool composite = cs.find('+') != std::string::npos;
        if (i == 0) {
            out += composite ? "(" + cs + ")" : cs;
        } else {
            if (c[i] != 1) out += (composite ? "(" + cs + ")" : cs) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace cfw
