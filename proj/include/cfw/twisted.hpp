#pragma once

#include <string>
#include <vector>

#include "cfw/ratfunc.hpp"

namespace cfw {

/// Left twisted polynomial ring R[F] with the commutation rule F.w = w^q.F.
/// The coefficient type C must provide field arithmetic, is_zero(),
/// frobenius_pow(k) (the q^k-power map) and same_domain().
template <class C>
class TwistedPoly {
public:
    std::vector<C> c;  // c[i] is the coefficient of F^i; normalized

    TwistedPoly() = default;
    explicit TwistedPoly(std::vector<C> cc) : c(std::move(cc)) { normalize(); }
    static TwistedPoly constant(const C& a) {
        TwistedPoly r;
        if (!a.is_zero()) r.c = {a};
        return r;
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    /// Constant term D(A).
    C constant_term(const C& zero_like) const { return c.empty() ? zero_like : c[0]; }
    const C& lead() const {
        if (c.empty()) throw std::domain_error("TwistedPoly: lead of zero");
        return c.back();
    }
    bool check_domain(const TwistedPoly& b) const {
        if (c.empty() || b.c.empty()) return true;
        return c[0].same_domain(b.c[0]);
    }

    friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) { return a.c == b.c; }
    friend bool operator!=(const TwistedPoly& a, const TwistedPoly& b) { return !(a == b); }

    friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
        if (!a.check_domain(b)) throw std::invalid_argument("TwistedPoly: mixed coefficient fields");
        TwistedPoly r;
        size_t n = std::max(a.c.size(), b.c.size());
        for (size_t i = 0; i < n; ++i) {
            if (i < a.c.size() && i < b.c.size()) r.c.push_back(a.c[i] + b.c[i]);
            else if (i < a.c.size()) r.c.push_back(a.c[i]);
            else r.c.push_back(b.c[i]);
        }
        r.normalize();
        return r;
    }
    friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) {
        TwistedPoly nb = b;
        for (auto& x : nb.c) x = -x;
        return a + nb;
    }
    friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
        if (!a.check_domain(b)) throw std::invalid_argument("TwistedPoly: mixed coefficient fields");
        TwistedPoly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, a.c[0] - a.c[0]);  // zeros of the right domain
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) {
                if (b.c[j].is_zero()) continue;
                // a_i F^i * b_j F^j = a_i b_j^{q^i} F^{i+j}
                r.c[i + j] += a.c[i] * b.c[j].frobenius_pow((uint32_t)i);
            }
        }
        r.normalize();
        return r;
    }
    TwistedPoly& operator+=(const TwistedPoly& b) { return *this = *this + b; }
    TwistedPoly& operator-=(const TwistedPoly& b) { return *this = *this - b; }
    TwistedPoly& operator*=(const TwistedPoly& b) { return *this = *this * b; }

    /// Left division: A = Q*B + R with deg_F R < deg_F B.
    friend std::pair<TwistedPoly, TwistedPoly> left_divmod(const TwistedPoly& a, const TwistedPoly& b) {
        if (b.is_zero()) throw std::domain_error("TwistedPoly: division by zero");
        if (!a.check_domain(b)) throw std::invalid_argument("TwistedPoly: mixed coefficient fields");
        TwistedPoly q, r = a;
        while (!r.is_zero() && r.deg() >= b.deg()) {
            size_t sh = r.deg() - b.deg();
            // t * b_e^{q^sh} = r_lead
            C t = r.lead() * b.lead().frobenius_pow((uint32_t)sh).inv();
            TwistedPoly term;
            term.c.assign(sh + 1, t - t);
            term.c[sh] = t;
            q += term;
            r -= term * b;
        }
        return {q, r};
    }

    /// Evaluation as q-polynomial: A(x) = sum c_i x^{q^i}.  X must share the
    /// Frobenius interface; cross-domain use (elements of an extension) is
    /// the caller's responsibility.
    template <class X>
    X apply(const X& x) const {
        X r = x - x;  // zero of the right domain
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            r += mix_mul(c[i], x.frobenius_pow((uint32_t)i));
        }
        return r;
    }

    /// Plain polynomial form: sum c_i x^{q^i} as a dense polynomial in x.
    /// Only for RatFunc coefficients (defined below).
    std::string to_string() const;

private:
    template <class X>
    static X mix_mul(const C& a, const X& b) {
        if constexpr (std::is_same_v<C, X>) return a * b;
        else return X(a) * b;  // X must embed C
    }
};

using TwistedPolyK = TwistedPoly<RatFunc>;

/// "F^2+(T^2+T)*F+T^2" -> twisted polynomial over k = F_q(T).
inline TwistedPolyK parse_twisted(const std::string& s, const FqFieldPtr& F) {
    // split into top-level terms on '+'/'-'
    std::vector<RatFunc> coeffs;
    auto ensure = [&](size_t n) {
        while (coeffs.size() <= n) coeffs.push_back(RatFunc::zero(F));
    };
    size_t pos = 0;
    bool neg = false;
    auto skipws = [&] { while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos; };
    skipws();
    if (pos < s.size() && s[pos] == '-') { neg = true; ++pos; }
    while (pos < s.size()) {
        // one term: [coefficient] ['*'] [F[^k]]
        skipws();
        size_t start = pos;
        int depth = 0;
        while (pos < s.size()) {
            char ch = s[pos];
            if (ch == '(') ++depth;
            else if (ch == ')') --depth;
            else if ((ch == '+' || ch == '-') && depth == 0) break;
            ++pos;
        }
        std::string term = s.substr(start, pos - start);
        // locate 'F' at depth 0
        size_t fpos = std::string::npos;
        depth = 0;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == '(') ++depth;
            else if (term[i] == ')') --depth;
            else if (term[i] == 'F' && depth == 0) { fpos = i; break; }
        }
        RatFunc coef = RatFunc::one(F);
        size_t fdeg = 0;
        if (fpos == std::string::npos) {
            coef = RatFunc(parse_poly(term, F));
        } else {
            std::string pre = term.substr(0, fpos);
            while (!pre.empty() && (std::isspace((unsigned char)pre.back()) || pre.back() == '*'))
                pre.pop_back();
            if (!pre.empty()) coef = RatFunc(parse_poly(pre, F));
            std::string post = term.substr(fpos + 1);
            size_t ppos = 0;
            while (ppos < post.size() && std::isspace((unsigned char)post[ppos])) ++ppos;
            if (ppos < post.size() && post[ppos] == '^') {
                ++ppos;
                size_t end;
                fdeg = std::stoul(post.substr(ppos), &end);
            } else if (ppos < post.size()) {
                throw std::invalid_argument("parse_twisted: trailing input after F in \"" + term + "\"");
            } else {
                fdeg = 1;
            }
        }
        if (neg) coef = -coef;
        ensure(fdeg);
        coeffs[fdeg] += coef;
        skipws();
        if (pos < s.size()) {
            if (s[pos] == '+') { neg = false; ++pos; }
            else if (s[pos] == '-') { neg = true; ++pos; }
            else throw std::invalid_argument("parse_twisted: unexpected character in \"" + s + "\"");
        }
    }
    return TwistedPolyK(std::move(coeffs));
}

template <>
inline std::string TwistedPoly<RatFunc>::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        std::string cs = c[i].to_string();
        bool needs_paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
        if (i == 0) {
            out += needs_paren ? "(" + cs + ")" : cs;
        } else {
            if (!c[i].is_one()) out += (needs_paren ? "(" + cs + ")" : cs) + "*";
            out += "F";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace cfw
