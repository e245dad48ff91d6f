#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "cfw/carlitz.hpp"
#include "cfw/residue.hpp"

namespace cfw {

class CycloField;
using CycloFieldPtr = std::shared_ptr<const CycloField>;

/// Element of a cyclotomic function field k_n = k(lambda_n), stored on the
/// power basis of lambda_n modulo Psi_n.  Since O_{k_n} = F_q[T][lambda_n],
/// an element is integral exactly when all coefficients are polynomials.
class CycloElt {
public:
    CycloFieldPtr K;
    std::vector<RatFunc> c;  // length = field degree

    CycloElt() = default;
    CycloElt(CycloFieldPtr k, std::vector<RatFunc> cc);

    bool same_domain(const CycloElt& o) const { return K.get() == o.K.get(); }
    bool is_zero() const {
        for (auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_scalar() const {
        for (size_t i = 1; i < c.size(); ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }
    const RatFunc& scalar() const {
        if (!is_scalar()) throw std::domain_error("CycloElt: not a scalar");
        return c[0];
    }
    bool is_one() const { return is_scalar() && c[0].is_one(); }
    bool is_integral() const {
        for (auto& x : c)
            if (!x.is_integral()) return false;
        return true;
    }
    /// lcm of coefficient denominators: the minimal d with d*x integral.
    Poly denominator() const;

    friend bool operator==(const CycloElt& a, const CycloElt& b) { return a.c == b.c; }
    friend bool operator!=(const CycloElt& a, const CycloElt& b) { return !(a == b); }

    CycloElt operator-() const {
        CycloElt r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    friend CycloElt operator+(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator-(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator*(const CycloElt& a, const CycloElt& b);
    friend CycloElt operator/(const CycloElt& a, const CycloElt& b);
    CycloElt& operator+=(const CycloElt& b) { return *this = *this + b; }
    CycloElt& operator-=(const CycloElt& b) { return *this = *this - b; }
    CycloElt& operator*=(const CycloElt& b) { return *this = *this * b; }

    CycloElt inv() const;
    CycloElt pow(int64_t e) const;
    /// x^(q^k), q the base field size.
    CycloElt frobenius_pow(uint32_t k) const;

    std::string to_string(const std::string& lam = "L") const;
};

/// The cyclotomic function field k_n: minimal polynomial Psi_n of the
/// primitive torsion point lambda_n, with Gal(k_n/k) = (O_k/n)^x acting by
/// a . lambda = Phi_a(lambda).  Construction is cached behind a synchronized
/// registry; fields are immutable afterwards.
class CycloField : public std::enable_shared_from_this<CycloField> {
public:
    MonicIdeal modulus;
    KPoly psi;  // monic, integral
    std::shared_ptr<const ResidueUnitGroup> units;
    int degree;

    static CycloFieldPtr make(const MonicIdeal& n);

    const FqFieldPtr& base() const { return modulus.field(); }

    CycloElt zero() const { return CycloElt(shared_from_this(), std::vector<RatFunc>(degree, RatFunc::zero(base()))); }
    CycloElt one() const { return from_scalar(RatFunc::one(base())); }
    CycloElt from_scalar(const RatFunc& a) const {
        std::vector<RatFunc> v(degree, RatFunc::zero(base()));
        v[0] = a;
        return CycloElt(shared_from_this(), std::move(v));
    }
    CycloElt lambda() const {
        if (degree == 1) {
            // Psi = x + c: lambda = -c
            std::vector<RatFunc> v{-psi.c[0]};
            return CycloElt(shared_from_this(), std::move(v));
        }
        std::vector<RatFunc> v(degree, RatFunc::zero(base()));
        v[1] = RatFunc::one(base());
        return CycloElt(shared_from_this(), std::move(v));
    }

    /// lambda^{q^j} mod Psi (cached); j up to deg_F Phi_n.
    const std::vector<RatFunc>& lambda_qpow(size_t j) const;

    /// Reduce a raw coefficient vector (any length) modulo Psi.
    std::vector<RatFunc> reduce(std::vector<RatFunc> v) const;

    /// Phi_a evaluated at an arbitrary element.
    CycloElt apply_phi(const Poly& a, const CycloElt& x) const;

    /// Galois action sigma_a, a a unit residue (by code or polynomial).
    CycloElt galois(uint64_t unit_code, const CycloElt& x) const;
    CycloElt galois(const Poly& a, const CycloElt& x) const {
        return galois(units->ring.encode(a), x);
    }

    /// lambda_m inside this field, for m | n: Phi_{n/m}(lambda_n).
    CycloElt lambda_of(const MonicIdeal& m) const;

    std::string name() const { return "k_(" + modulus.to_string() + ")"; }

private:
    mutable std::map<uint64_t, std::vector<CycloElt>> galois_pows_;  // sigma(lambda)^i
    mutable std::vector<std::vector<RatFunc>> qpow_;
    mutable std::mutex mtx_;
    friend class CycloElt;
};

// ---------------------------------------------------------------------------

inline CycloElt::CycloElt(CycloFieldPtr k, std::vector<RatFunc> cc) : K(std::move(k)), c(std::move(cc)) {
    if ((int)c.size() != K->degree) c = K->reduce(std::move(c));
}

inline Poly CycloElt::denominator() const {
    Poly d = Poly::one(K->base());
    for (auto& x : c) d = divexact(d * x.den, gcd(d, x.den));
    return d;
}

inline CycloElt operator+(const CycloElt& a, const CycloElt& b) {
    if (!a.same_domain(b)) throw std::invalid_argument("CycloElt: mixed fields");
    CycloElt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}
inline CycloElt operator-(const CycloElt& a, const CycloElt& b) {
    if (!a.same_domain(b)) throw std::invalid_argument("CycloElt: mixed fields");
    CycloElt r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}
inline CycloElt operator*(const CycloElt& a, const CycloElt& b) {
    if (!a.same_domain(b)) throw std::invalid_argument("CycloElt: mixed fields");
    size_t n = a.c.size();
    std::vector<RatFunc> prod(2 * n - 1, RatFunc::zero(a.K->base()));
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
            if (b.c[j].is_zero()) continue;
            prod[i + j] += a.c[i] * b.c[j];
        }
    }
    return CycloElt(a.K, a.K->reduce(std::move(prod)));
}
inline CycloElt CycloElt::inv() const {
    KPoly f(K->base(), c);
    if (f.is_zero()) throw std::domain_error("CycloElt: inverse of zero");
    auto [g, u, v] = [&] {
        KPoly r0 = f, r1 = K->psi;
        KPoly s0 = KPoly::one(K->base()), s1 = KPoly::zero(K->base());
        KPoly t0 = KPoly::zero(K->base()), t1 = KPoly::one(K->base());
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = r1; r1 = r;
            KPoly s = s0 - q * s1; s0 = s1; s1 = s;
            KPoly t = t0 - q * t1; t0 = t1; t1 = t;
        }
        return std::tuple{r0, s0, t0};
    }();
    if (g.deg() != 0) throw std::logic_error("CycloElt::inv: Psi not coprime (reducible?)");
    KPoly res = u.scaled(g.c[0].inv());
    std::vector<RatFunc> v2(K->degree, RatFunc::zero(K->base()));
    for (size_t i = 0; i < res.c.size(); ++i) v2[i] = res.c[i];
    return CycloElt(K, std::move(v2));
}
inline CycloElt operator/(const CycloElt& a, const CycloElt& b) { return a * b.inv(); }
inline CycloElt CycloElt::pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    CycloElt r = K->one(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}
inline CycloElt CycloElt::frobenius_pow(uint32_t k) const {
    CycloElt r = *this;
    for (uint32_t i = 0; i < k; ++i) r = r.pow((int64_t)K->base()->size);
    return r;
}
inline std::string CycloElt::to_string(const std::string& lam) const {
    std::string out;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i].is_zero()) continue;
        if (!out.empty()) out += "+";
        std::string cs = c[i].to_string();
        bool paren = cs.find('+') != std::string::npos || cs.find('/') != std::string::npos;
        if (i == 0) out += paren ? "(" + cs + ")" : cs;
        else {
            if (!c[i].is_one()) out += (paren ? "(" + cs + ")" : cs) + "*";
            out += lam;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

inline CycloFieldPtr CycloField::make(const MonicIdeal& n) {
    static std::map<std::pair<const FqField*, Poly>, CycloFieldPtr> registry;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto key = std::make_pair(n.field().get(), n.gen);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto K = std::make_shared<CycloField>();
    K->modulus = n;
    K->psi = primitive_division_poly(n);
    K->units = unit_group(n);
    K->degree = K->psi.deg();
    if ((uint64_t)K->degree != n.unit_count())
        throw std::logic_error("CycloField: deg Psi != #units");
    registry[key] = K;
    return K;
}

inline std::vector<RatFunc> CycloField::reduce(std::vector<RatFunc> v) const {
    // divide by monic psi, keep remainder
    while (v.size() > (size_t)degree) {
        RatFunc t = v.back();
        v.pop_back();
        if (t.is_zero()) continue;
        size_t sh = v.size() - degree;
        for (int j = 0; j < degree; ++j)
            v[sh + j] -= t * psi.c[j];
    }
    v.resize(degree, RatFunc::zero(base()));
    return v;
}

inline const std::vector<RatFunc>& CycloField::lambda_qpow(size_t j) const {
    std::lock_guard<std::mutex> lk(mtx_);
    if (qpow_.empty()) {
        // qpow_[0] = lambda
        std::vector<RatFunc> l(degree, RatFunc::zero(base()));
        if (degree == 1) l[0] = -psi.c[0];
        else l[1] = RatFunc::one(base());
        qpow_.push_back(std::move(l));
    }
    while (qpow_.size() <= j) {
        // next = prev^q via repeated squaring in the quotient ring
        const auto& prev = qpow_.back();
        std::vector<RatFunc> cur = prev;
        uint64_t e = base()->size;
        // compute prev^e by square-and-multiply on raw vectors
        auto mulvec = [&](const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
            std::vector<RatFunc> prod(2 * degree - 1, RatFunc::zero(base()));
            for (int i = 0; i < degree; ++i) {
                if (a[i].is_zero()) continue;
                for (int jj = 0; jj < degree; ++jj) {
                    if (b[jj].is_zero()) continue;
                    prod[i + jj] += a[i] * b[jj];
                }
            }
            return reduce(std::move(prod));
        };
        std::vector<RatFunc> r(degree, RatFunc::zero(base()));
        r[0] = RatFunc::one(base());
        std::vector<RatFunc> bb = prev;
        while (e) {
            if (e & 1) r = mulvec(r, bb);
            bb = mulvec(bb, bb);
            e >>= 1;
        }
        qpow_.push_back(std::move(r));
    }
    return qpow_[j];
}

inline CycloElt CycloField::apply_phi(const Poly& a, const CycloElt& x) const {
    TwistedPolyK A = phi_elem(a);
    CycloElt r = zero();
    if (x.K.get() != this) throw std::invalid_argument("apply_phi: element of another field");
    bool x_is_lambda = (x == lambda());
    CycloElt cur = x;
    for (size_t i = 0; i < A.c.size(); ++i) {
        if (!A.c[i].is_zero()) {
            CycloElt term = x_is_lambda ? CycloElt(x.K, lambda_qpow(i)) : cur;
            for (auto& cc : term.c) cc *= A.c[i];
            r += term;
        }
        if (!x_is_lambda && i + 1 < A.c.size()) cur = cur.frobenius_pow(1);
    }
    return r;
}

inline CycloElt CycloField::galois(uint64_t unit_code, const CycloElt& x) const {
    // powers of sigma(lambda), cached per sigma
    const std::vector<CycloElt>* pows;
    {
        std::lock_guard<std::mutex> lk(mtx_);
        auto it = galois_pows_.find(unit_code);
        if (it != galois_pows_.end()) pows = &it->second;
        else pows = nullptr;
    }
    if (!pows) {
        Poly a = units->ring.decode(unit_code);
        if (!units->ring.is_unit(unit_code)) throw std::invalid_argument("galois: not a unit");
        CycloElt sl = apply_phi(a, lambda());
        std::vector<CycloElt> v;
        v.push_back(one());
        for (int i = 1; i < degree; ++i) v.push_back(v.back() * sl);
        std::lock_guard<std::mutex> lk(mtx_);
        auto [it2, inserted] = galois_pows_.emplace(unit_code, std::move(v));
        pows = &it2->second;
    }
    CycloElt r = zero();
    for (int i = 0; i < degree; ++i) {
        if (x.c[i].is_zero()) continue;
        CycloElt term = (*pows)[i];
        for (auto& cc : term.c) cc *= x.c[i];
        r += term;
    }
    return r;
}

inline CycloElt CycloField::lambda_of(const MonicIdeal& m) const {
    if (!m.divides(modulus)) throw std::invalid_argument("lambda_of: m does not divide n");
    if (m.is_unit()) throw std::invalid_argument("lambda_of: m must be proper");
    MonicIdeal q = modulus.quotient(m);
    return apply_phi(q.gen, lambda());
}

// ---------------------------------------------------------------------------
// subfields
// ---------------------------------------------------------------------------

/// Subfield of the ambient cyclotomic field: the fixed field of a subgroup S
/// of (O_k/n)^x.  H_m is the image of F_q^x; the paper's K is any S
/// containing it.
struct SubfieldSpec {
    CycloFieldPtr A;                // ambient k_n
    std::vector<uint64_t> S;        // subgroup element codes, sorted
    std::vector<uint64_t> gens;     // generating codes (canonical)

    size_t degree() const { return A->units->card() / S.size(); }
    bool contains_code(uint64_t c) const { return std::binary_search(S.begin(), S.end(), c); }

    static SubfieldSpec trivial(const CycloFieldPtr& A) {  // L = k_n
        SubfieldSpec s;
        s.A = A;
        s.S = {A->units->group.id};
        return s;
    }
    static SubfieldSpec full(const CycloFieldPtr& A) {  // L = k
        SubfieldSpec s;
        s.A = A;
        s.S = A->units->group.elems;
        s.gens.assign(A->units->basis.size(), 0);
        for (size_t i = 0; i < A->units->basis.size(); ++i) s.gens[i] = A->units->basis[i].first;
        return s;
    }
    /// Image of F_q^x: the fixed field is H_n.
    static SubfieldSpec constants(const CycloFieldPtr& A) {
        SubfieldSpec s;
        s.A = A;
        const auto& F = A->base();
        std::vector<uint64_t> g;
        if (F->size > 2) g.push_back(A->units->ring.encode(Poly::constant(F, F->primitive_root())));
        s.S = subgroup_closure(A->units->group, g.empty() ? std::vector<uint64_t>{A->units->group.id} : g);
        s.gens = g;
        return s;
    }
    static SubfieldSpec from_generators(const CycloFieldPtr& A, const std::vector<Poly>& gen_polys) {
        SubfieldSpec s;
        s.A = A;
        for (const auto& g : gen_polys) s.gens.push_back(A->units->ring.encode(g));
        s.S = subgroup_closure(A->units->group, s.gens);
        return s;
    }

    bool fixes(const CycloElt& x) const {
        for (uint64_t g : gens.empty() ? S : gens)
            if (A->galois(g, x) != x) return false;
        return true;
    }

    /// Canonical coset representatives of S in U (minimal code per coset).
    std::vector<uint64_t> coset_reps() const {
        std::vector<uint64_t> reps;
        std::set<uint64_t> seen;
        for (uint64_t u : A->units->group.elems) {
            if (seen.count(u)) continue;
            reps.push_back(u);
            for (uint64_t s : S) seen.insert(A->units->group.mul(u, s));
        }
        return reps;
    }

    /// Minimal coset representative of a given unit code.
    uint64_t coset_rep(uint64_t u) const {
        uint64_t best = UINT64_MAX;
        for (uint64_t s : S) best = std::min(best, A->units->group.mul(u, s));
        return best;
    }

    /// The monic representative of an F_q^x-coset (used for Gal(H_m/k)).
    Poly monic_rep(uint64_t u) const {
        Poly a = A->units->ring.decode(u);
        uint32_t l = a.lead();
        if (l != 1) a = a.scaled(A->base()->inv(l));
        return a;
    }
};

/// Norm from the ambient field down to the fixed field of S.
inline CycloElt norm_to(const SubfieldSpec& L, const CycloElt& x) {
    CycloElt r = L.A->one();
    for (uint64_t s : L.S) r *= L.A->galois(s, x);
    return r;
}
inline CycloElt trace_to(const SubfieldSpec& L, const CycloElt& x) {
    CycloElt r = L.A->zero();
    for (uint64_t s : L.S) r += L.A->galois(s, x);
    return r;
}
/// Relative norm N_{L'/L} for nested subfields (S' subset of S), applied to
/// an element of L': the product over canonical representatives of S/S'.
inline CycloElt norm_between(const SubfieldSpec& Lsub, const SubfieldSpec& Lbig, const CycloElt& x) {
    // Lsub = smaller field (bigger group), Lbig = bigger field (smaller group)
    CycloElt r = Lsub.A->one();
    std::set<uint64_t> seen;
    for (uint64_t s : Lsub.S) {
        uint64_t rep = Lbig.coset_rep(s);
        if (!seen.insert(rep).second) continue;
        r *= Lsub.A->galois(s, x);
    }
    return r;
}

/// Characteristic polynomial of x over k with respect to Gal(L/k), for x in
/// the subfield L: prod over cosets (X - sigma(x)).  Coefficients must land
/// in k; this is asserted.
inline KPoly char_poly_over_k(const SubfieldSpec& L, const CycloElt& x) {
    std::vector<CycloElt> coeffs{L.A->one()};  // polynomial in X, CycloElt coefficients
    for (uint64_t rep : L.coset_reps()) {
        CycloElt sx = L.A->galois(rep, x);
        std::vector<CycloElt> next(coeffs.size() + 1, L.A->zero());
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * sx;
        }
        coeffs = std::move(next);
    }
    KPoly f(L.A->base());
    f.c.reserve(coeffs.size());
    for (auto& ce : coeffs) {
        if (!ce.is_scalar()) throw std::logic_error("char_poly_over_k: coefficient not in k");
        f.c.push_back(ce.scalar());
    }
    f.normalize();
    return f;
}

// ---------------------------------------------------------------------------
// Stark units and the torsion coherence verifiers
// ---------------------------------------------------------------------------

/// epsilon_m = N_{k_m/H_m}(lambda_m), computed as the coset product over the
/// image of F_q^x; cross-checked against -lambda^(q-1) (stark1).
inline CycloElt stark_unit(const CycloFieldPtr& Km) {
    auto Hm = SubfieldSpec::constants(Km);
    CycloElt eps = norm_to(Hm, Km->lambda());
    CycloElt check = -(Km->lambda().pow((int64_t)Km->base()->size - 1));
    if (eps != check) throw std::logic_error("stark_unit: norm != -lambda^(q-1)");
    return eps;
}

struct VerifyReport {
    std::string name;
    std::string lhs, rhs;
    bool pass = false;
    std::string detail;
};

/// Lemma "distribution": N_{k_mq/k_m}(lambda_mq) equals lambda_m (q | m) or
/// lambda_m^{1 - Fr(q)^{-1}} (q coprime to m).  Exact check inside k_mq.
inline VerifyReport verify_distribution(const MonicIdeal& m, const MonicIdeal& qp) {
    if (!qp.is_prime()) throw std::invalid_argument("verify_distribution: q must be prime");
    if (m.is_unit()) throw std::invalid_argument("verify_distribution: m must be proper");
    VerifyReport rep;
    rep.name = "distribution(m=" + m.to_string() + ", q=" + qp.to_string() + ")";
    MonicIdeal n = m * qp;
    auto A = CycloField::make(n);
    const auto& U = *A->units;
    // kernel of (O/n)^x -> (O/m)^x
    std::vector<uint64_t> ker;
    for (uint64_t u : U.group.elems)
        if (((U.ring.decode(u) - Poly::one(m.field())) % m.gen).is_zero()) ker.push_back(u);
    CycloElt lhs = A->one();
    for (uint64_t u : ker) lhs *= A->galois(u, A->lambda());
    CycloElt lam_m = A->lambda_of(m);
    CycloElt rhs = A->zero();
    bool divides = qp.divides(m);
    if (divides) {
        rhs = lam_m;
    } else {
        // lambda_m^{1-Fr(q)^{-1}}: Fr(q) acts on k_m as the class of the
        // monic generator of q; lift to a unit mod m*q via CRT
        // (u = qhat mod m, u = 1 mod q; b*q = 1 mod m from the xgcd)
        auto [g, a, b] = xgcd(m.gen, qp.gen);
        Poly t = (b * (qp.gen - Poly::one(m.field()))) % m.gen;
        Poly u = (Poly::one(m.field()) + qp.gen * t) % n.gen;
        uint64_t uinv = U.group.inverse(U.ring.encode(u));
        rhs = lam_m / A->galois(uinv, lam_m);
    }
    rep.lhs = lhs.to_string();
    rep.rhs = rhs.to_string();
    rep.pass = (lhs == rhs);
    return rep;
}

/// Lemma "congruence": lambda_mq - lambda_m^{Fr(q)^{-1}} = lambda_q^{sigma_m^{-1}}
/// for q coprime to m, checked exactly inside k_mq.
inline VerifyReport verify_congruence(const MonicIdeal& m, const MonicIdeal& qp) {
    if (!qp.is_prime()) throw std::invalid_argument("verify_congruence: q must be prime");
    if (qp.divides(m)) throw std::invalid_argument("verify_congruence: q | m");
    if (m.is_unit()) throw std::invalid_argument("verify_congruence: m must be proper");
    VerifyReport rep;
    rep.name = "congruence(m=" + m.to_string() + ", q=" + qp.to_string() + ")";
    MonicIdeal n = m * qp;
    auto A = CycloField::make(n);
    const auto& U = *A->units;
    const auto& F = m.field();
    CycloElt lam_m = A->lambda_of(m), lam_q = A->lambda_of(qp);
    // Fr(q)^{-1} on lambda_m: lift of qhat through CRT (1 mod q)
    auto [g, am, bq] = xgcd(m.gen, qp.gen);
    Poly t = (bq * (qp.gen - Poly::one(F))) % m.gen;
    Poly u = (Poly::one(F) + qp.gen * t) % n.gen;
    uint64_t uinv = U.group.inverse(U.ring.encode(u));
    // sigma_m^{-1} on lambda_q: lift of mhat (1 mod m)
    auto [g2, aq, bm] = xgcd(qp.gen, m.gen);
    Poly t2 = (bm * (m.gen - Poly::one(F))) % qp.gen;
    Poly v = (Poly::one(F) + m.gen * t2) % n.gen;
    uint64_t vinv = U.group.inverse(U.ring.encode(v));
    CycloElt lhs = A->lambda() - A->galois(uinv, lam_m);
    CycloElt rhs = A->galois(vinv, lam_q);
    rep.lhs = lhs.to_string();
    rep.rhs = rhs.to_string();
    rep.pass = (lhs == rhs);
    return rep;
}

}  // namespace cfw
