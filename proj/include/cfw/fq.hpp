#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfw {

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

/// A small finite field F_{p^n}, possibly presented as an extension of another
/// FqField (tower construction).  Elements are encoded as integers in
/// [0, size): the base-`bsize` digit expansion gives the coefficients of the
/// residue polynomial in the tower generator, lowest degree first.
///
/// Fields are interned: equal construction parameters yield the same object,
/// so pointer identity doubles as field identity.  Multiplication uses
/// discrete-log tables, which caps the supported size at 2^16 elements.
class FqField : public std::enable_shared_from_this<FqField> {
public:
    uint32_t p;        // characteristic
    uint32_t deg_abs;  // degree over the prime field
    uint32_t size;     // p^deg_abs
    FqFieldPtr base;   // null for a prime field
    uint32_t bsize;    // size of the base field (p for prime fields)
    uint32_t ext_deg;  // degree over the base field
    std::vector<uint32_t> modulus;  // monic, over base, length ext_deg+1

    static constexpr uint32_t kMaxSize = 1u << 16;

    static FqFieldPtr prime(uint32_t p);
    /// F_{p^n} over the prime field, lex-least irreducible modulus.
    static FqFieldPtr make(uint32_t p, uint32_t n);
    /// Extension of `base` by the lex-least irreducible of degree n.
    static FqFieldPtr extension(const FqFieldPtr& base, uint32_t n);
    /// Extension of `base` with an explicit monic irreducible modulus
    /// (little-endian coefficient encodings over `base`).
    static FqFieldPtr extension_with_modulus(const FqFieldPtr& base,
                                             const std::vector<uint32_t>& mod);

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1; }
    /// Class of the tower generator (the residue of the modulus variable).
    uint32_t gen() const { return ext_deg > 1 ? bsize : 1u; }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (p == 2) return a ^ b;
        return add_tab_.empty() ? add_slow(a, b) : add_tab_[a * size + b];
    }
    uint32_t neg(uint32_t a) const {
        if (p == 2) return a;
        return neg_tab_[a];
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        uint64_t e = (uint64_t)log_[a] + log_[b];
        if (e >= size - 1) e -= size - 1;
        return exp_[e];
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw std::domain_error("FqField::inv: zero");
        return exp_[(size - 1 - log_[a]) % (size - 1)];
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, int64_t e) const {
        if (a == 0) {
            if (e < 0) throw std::domain_error("FqField::pow: 0^negative");
            return e == 0 ? 1 : 0;
        }
        int64_t m = size - 1;
        int64_t r = ((int64_t)log_[a] * (e % m)) % m;
        if (r < 0) r += m;
        return exp_[r];
    }
    /// Frobenius x -> x^p iterated k times.
    uint32_t frob(uint32_t a, uint32_t k = 1) const {
        uint32_t r = a;
        for (uint32_t i = 0; i < k % deg_abs; ++i) r = pow(r, p);
        return r;
    }
    /// Multiplicative order of a nonzero element.
    uint32_t mul_order(uint32_t a) const;
    /// Discrete log base the tabulated primitive generator.
    uint32_t dlog(uint32_t a) const {
        if (a == 0) throw std::domain_error("FqField::dlog: zero");
        return log_[a];
    }
    uint32_t primitive_root() const { return exp_[1]; }

    /// Digits of `a` over the base field, little-endian, length ext_deg.
    std::vector<uint32_t> digits(uint32_t a) const {
        std::vector<uint32_t> d(ext_deg);
        for (uint32_t i = 0; i < ext_deg; ++i) { d[i] = a % bsize; a /= bsize; }
        return d;
    }
    uint32_t from_digits(const std::vector<uint32_t>& d) const {
        uint64_t a = 0;
        for (size_t i = d.size(); i-- > 0;) a = a * bsize + d[i];
        return (uint32_t)a;
    }
    /// Embeds a base-field element (constants map to constants).
    uint32_t from_base(uint32_t a) const { return a; }
    bool in_base(uint32_t a) const { return a < bsize; }

    /// Element from an integer (image of Z, i.e. repeated addition of 1).
    uint32_t from_int(int64_t v) const {
        int64_t r = v % (int64_t)p;
        if (r < 0) r += p;
        return (uint32_t)r;
    }

    std::string to_string(uint32_t a, const std::string& gsym = "g") const;

private:
    std::vector<uint32_t> exp_, log_, add_tab_, neg_tab_;
    uint32_t add_slow(uint32_t a, uint32_t b) const;
    uint32_t mul_slow(uint32_t a, uint32_t b) const;
    void build_tables();
    static FqFieldPtr intern(FqFieldPtr f);
    friend struct FqFieldMaker;
};

namespace detail {
inline std::vector<uint64_t> factor_u64(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}
}  // namespace detail

struct FqFieldMaker {
    static std::map<std::pair<const FqField*, std::vector<uint32_t>>, std::shared_ptr<FqField>>& cache() {
        static std::map<std::pair<const FqField*, std::vector<uint32_t>>, std::shared_ptr<FqField>> c;
        return c;
    }
    static std::mutex& mtx() {
        static std::mutex m;
        return m;
    }
};

inline uint32_t FqField::add_slow(uint32_t a, uint32_t b) const {
    uint64_t r = 0, mul = 1;
    for (uint32_t i = 0; i < ext_deg; ++i) {
        uint32_t da = a % bsize, db = b % bsize;
        a /= bsize; b /= bsize;
        uint32_t s = base ? base->add(da, db) : (da + db) % p;
        r += (uint64_t)s * mul;
        mul *= bsize;
    }
    return (uint32_t)r;
}

inline uint32_t FqField::mul_slow(uint32_t a, uint32_t b) const {
    // schoolbook product of residue polynomials, reduced mod `modulus`
    std::vector<uint32_t> da = digits(a), db = digits(b);
    std::vector<uint32_t> prod(2 * ext_deg - 1, 0);
    auto bmul = [&](uint32_t x, uint32_t y) { return base ? base->mul(x, y) : (x * y) % p; };
    auto badd = [&](uint32_t x, uint32_t y) { return base ? base->add(x, y) : (x + y) % p; };
    for (uint32_t i = 0; i < ext_deg; ++i)
        for (uint32_t j = 0; j < ext_deg; ++j) prod[i + j] = badd(prod[i + j], bmul(da[i], db[j]));
    auto bneg = [&](uint32_t x) { return base ? base->neg(x) : (p - x) % p; };
    for (size_t i = prod.size(); i-- > ext_deg;) {
        uint32_t c = prod[i];
        if (!c) continue;
        prod[i] = 0;
        for (uint32_t j = 0; j < ext_deg; ++j)
            prod[i - ext_deg + j] = badd(prod[i - ext_deg + j], bmul(c, bneg(modulus[j])));
    }
    prod.resize(ext_deg);
    uint64_t r = 0;
    for (size_t i = prod.size(); i-- > 0;) r = r * bsize + prod[i];
    return (uint32_t)r;
}

inline void FqField::build_tables() {
    if (p != 2) {
        neg_tab_.resize(size);
        for (uint32_t a = 0; a < size; ++a) {
            std::vector<uint32_t> d = digits(a);
            for (auto& x : d) x = base ? base->neg(x) : (p - x) % p;
            neg_tab_[a] = from_digits(d);
        }
        if ((uint64_t)size * size <= (1u << 22)) {
            add_tab_.resize((size_t)size * size);
            for (uint32_t a = 0; a < size; ++a)
                for (uint32_t b = 0; b < size; ++b) add_tab_[(size_t)a * size + b] = add_slow(a, b);
        }
    }
    // find a primitive generator and tabulate exp/log
    auto pf = detail::factor_u64(size - 1);
    uint32_t g = 0;
    for (uint32_t cand = 1; cand < size; ++cand) {
        bool ok = cand != 0;
        for (uint64_t q : pf) {
            // cand^((size-1)/q) == 1 ?
            uint64_t e = (size - 1) / q;
            uint32_t r = 1, b = cand;
            while (e) {
                if (e & 1) r = mul_slow(r, b);
                b = mul_slow(b, b);
                e >>= 1;
            }
            if (r == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    if (!g && size == 2) g = 1;
    if (!g) throw std::logic_error("FqField: no primitive root found");
    exp_.resize(size - 1);
    log_.assign(size, 0);
    uint32_t cur = 1;
    for (uint32_t i = 0; i < size - 1; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = mul_slow(cur, g);
    }
    if (cur != 1) throw std::logic_error("FqField: generator order mismatch");
}

inline FqFieldPtr FqField::prime(uint32_t pr) {
    return make(pr, 1);
}

inline FqFieldPtr FqField::extension_with_modulus(const FqFieldPtr& base,
                                                  const std::vector<uint32_t>& mod) {
    std::lock_guard<std::mutex> lk(FqFieldMaker::mtx());
    auto key = std::make_pair(base.get(), mod);
    auto& c = FqFieldMaker::cache();
    auto it = c.find(key);
    if (it != c.end()) return it->second;
    auto f = std::make_shared<FqField>();
    f->base = base;
    f->p = base ? base->p : mod.empty() ? 0 : 0;
    if (!base) throw std::invalid_argument("extension_with_modulus: null base");
    f->p = base->p;
    f->ext_deg = (uint32_t)mod.size() - 1;
    f->bsize = base->size;
    f->deg_abs = base->deg_abs * f->ext_deg;
    uint64_t s = 1;
    for (uint32_t i = 0; i < f->ext_deg; ++i) s *= f->bsize;
    if (s > kMaxSize) throw std::invalid_argument("FqField: field too large (size > 2^16)");
    f->size = (uint32_t)s;
    f->modulus = mod;
    if (mod.back() != 1) throw std::invalid_argument("FqField: modulus must be monic");
    f->build_tables();
    c[key] = f;
    return f;
}

inline FqFieldPtr FqField::make(uint32_t pr, uint32_t n) {
    {
        std::lock_guard<std::mutex> lk(FqFieldMaker::mtx());
        std::vector<uint32_t> key_mod{pr, n};  // sentinel key for prime-rooted fields
        auto key = std::make_pair((const FqField*)nullptr, key_mod);
        auto& c = FqFieldMaker::cache();
        auto it = c.find(key);
        if (it != c.end()) return it->second;
        auto f = std::make_shared<FqField>();
        f->base = nullptr;
        f->p = pr;
        f->ext_deg = n;
        f->bsize = pr;
        f->deg_abs = n;
        uint64_t s = 1;
        for (uint32_t i = 0; i < n; ++i) s *= pr;
        if (s > kMaxSize) throw std::invalid_argument("FqField: field too large (size > 2^16)");
        f->size = (uint32_t)s;
        if (n == 1) {
            f->modulus = {0, 1};
            f->build_tables();
            c[key] = f;
            return f;
        }
        // lex-least monic irreducible of degree n over F_p: a polynomial is
        // irreducible iff it has no irreducible factor of degree <= n/2;
        // test by gcd with x^{p^i} - x
        for (uint64_t idx = 1; idx < s; ++idx) {
            std::vector<uint32_t> mod(n + 1);
            uint64_t t = idx;
            for (uint32_t i = 0; i < n; ++i) { mod[i] = (uint32_t)(t % pr); t /= pr; }
            mod[n] = 1;
            // irreducibility over F_p by the x^{p^i}-x gcd criterion
            auto polmulmod = [&](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
                std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
                for (size_t i = 0; i < a.size(); ++i)
                    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % pr;
                for (size_t i = r.size(); i-- > n;) {
                    uint32_t cc = r[i];
                    if (!cc) continue;
                    r[i] = 0;
                    for (uint32_t j = 0; j < n; ++j)
                        r[i - n + j] = (r[i - n + j] + cc * (pr - mod[j])) % pr;
                }
                r.resize(n);
                while (r.size() > 1 && r.back() == 0) r.pop_back();
                return r;
            };
            bool irred = true;
            std::vector<uint32_t> xp{0, 1};  // will hold x^{p^i} mod `mod`
            for (uint32_t i = 1; irred && 2 * i <= n; ++i) {
                // xp = xp^p mod `mod`
                std::vector<uint32_t> acc{1};
                std::vector<uint32_t> b = xp;
                uint32_t e = pr;
                while (e) {
                    if (e & 1) acc = polmulmod(acc, b);
                    b = polmulmod(b, b);
                    e >>= 1;
                }
                xp = acc;
                // gcd(mod, xp - x) trivial?
                std::vector<uint32_t> d = xp;
                if (d.size() < 2) d.resize(2, 0);
                d[1] = (d[1] + pr - 1) % pr;
                while (d.size() > 1 && d.back() == 0) d.pop_back();
                // gcd over F_p
                std::vector<uint32_t> A = mod, B = d;
                auto norml = [&](std::vector<uint32_t>& v) {
                    while (v.size() > 1 && v.back() == 0) v.pop_back();
                };
                norml(A); norml(B);
                while (!(B.size() == 1 && B[0] == 0)) {
                    // A mod B
                    uint32_t linv = 1;
                    { // inverse of lead(B) mod p
                        uint32_t lb = B.back();
                        for (uint32_t x = 1; x < pr; ++x) if ((lb * x) % pr == 1) { linv = x; break; }
                    }
                    while (A.size() >= B.size() && !(A.size() == 1 && A[0] == 0)) {
                        uint32_t c0 = (A.back() * linv) % pr;
                        size_t sh = A.size() - B.size();
                        for (size_t j = 0; j < B.size(); ++j)
                            A[sh + j] = (A[sh + j] + c0 * (pr - B[j])) % pr;
                        norml(A);
                        if (A.size() == 1 && A[0] == 0) break;
                    }
                    std::swap(A, B);
                }
                if (!(A.size() == 1 && A[0] != 0)) irred = false;  // nontrivial gcd
            }
            if (!irred) continue;
            f->modulus = mod;
            break;
        }
        if (f->modulus.empty()) throw std::logic_error("FqField: no irreducible modulus found");
        f->build_tables();
        c[key] = f;
        return f;
    }
}

inline FqFieldPtr FqField::extension(const FqFieldPtr& base, uint32_t n) {
    if (n == 1) return base;
    // lex-least monic irreducible of degree n over `base`
    uint64_t total = 1;
    for (uint32_t i = 0; i < n; ++i) total *= base->size;
    for (uint64_t idx = 1; idx < total; ++idx) {
        std::vector<uint32_t> mod(n + 1);
        uint64_t t = idx;
        for (uint32_t i = 0; i < n; ++i) { mod[i] = (uint32_t)(t % base->size); t /= base->size; }
        mod[n] = 1;
        // root-free and factor-free test by brute force over base-degree <= n/2
        // divisors; cheap at these sizes. Uses poly arithmetic over `base`.
        auto mulmod = [&](const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
            std::vector<uint32_t> r(a.size() + b.size() - 1, 0);
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j)
                    r[i + j] = base->add(r[i + j], base->mul(a[i], b[j]));
            for (size_t i = r.size(); i-- > n;) {
                uint32_t cc = r[i];
                if (!cc) continue;
                r[i] = 0;
                for (uint32_t j = 0; j < n; ++j)
                    r[i - n + j] = base->add(r[i - n + j], base->mul(cc, base->neg(mod[j])));
            }
            r.resize(n);
            return r;
        };
        // irreducible iff x^{B^n} = x mod f and gcd-free at proper divisors:
        // check x^{B^{n/r}} != x for prime r | n, x^{B^n} == x.
        auto frob_pow = [&](uint32_t k) {  // x^{B^k} mod f
            std::vector<uint32_t> xp(n, 0);
            xp[1] = 1;
            for (uint32_t i = 0; i < k; ++i) {
                // xp = xp^B
                std::vector<uint32_t> acc(n, 0);
                acc[0] = 1;
                std::vector<uint32_t> b = xp;
                uint64_t e = base->size;
                while (e) {
                    if (e & 1) acc = mulmod(acc, b);
                    b = mulmod(b, b);
                    e >>= 1;
                }
                xp = acc;
            }
            return xp;
        };
        std::vector<uint32_t> xq = frob_pow(n);
        std::vector<uint32_t> x(n, 0);
        if (n > 1) x[1] = 1;
        if (xq != x) continue;
        bool ok = true;
        for (uint64_t r : detail::factor_u64(n)) {
            if (frob_pow(n / (uint32_t)r) == x) { ok = false; break; }
        }
        if (!ok) continue;
        return extension_with_modulus(base, mod);
    }
    throw std::logic_error("FqField::extension: no irreducible modulus found");
}

inline uint32_t FqField::mul_order(uint32_t a) const {
    if (a == 0) throw std::domain_error("mul_order: zero");
    if (log_[a] == 0) return 1;
    uint64_t n = size - 1;
    return (uint32_t)(n / std::gcd<uint64_t, uint64_t>(n, log_[a]));
}

inline std::string FqField::to_string(uint32_t a, const std::string& gsym) const {
    if (deg_abs == 1 || a < p) {
        // prime-field value (constants of towers print as integers)
        if (in_base(a) && base) return base->to_string(a, gsym);
        return std::to_string(a);
    }
    std::vector<uint32_t> d = digits(a);
    std::string s;
    for (size_t i = d.size(); i-- > 0;) {
        if (!d[i]) continue;
        if (!s.empty()) s += "+";
        std::string term;
        if (i == 0) {
            term = base ? base->to_string(d[i], gsym) : std::to_string(d[i]);
        } else {
            if (d[i] != 1) term += (base ? base->to_string(d[i], gsym) : std::to_string(d[i])) + "*";
            term += gsym;
            if (i > 1) term += "^" + std::to_string(i);
        }
        s += term;
    }
    return s.empty() ? "0" : s;
}

}  // namespace cfw
