#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "cfw/abelian.hpp"
#include "cfw/ideal.hpp"

namespace cfw {

/// The residue ring O_k/m with residues encoded as base-q digit codes of the
/// canonical representative (degree < deg m).
class ResidueRing {
public:
    MonicIdeal m;

    explicit ResidueRing(MonicIdeal mm) : m(std::move(mm)) {
        if (m.gen.deg() < 1) throw std::invalid_argument("ResidueRing: modulus must be proper");
        uint64_t s = 1;
        for (int i = 0; i < m.deg(); ++i) s *= field()->size;
        size_ = s;
    }

    const FqFieldPtr& field() const { return m.field(); }
    uint64_t size() const { return size_; }

    uint64_t encode(const Poly& f) const {
        Poly r = f % m.gen;
        uint64_t code = 0;
        for (size_t i = m.deg(); i-- > 0;) code = code * field()->size + r.coeff(i);
        return code;
    }
    Poly decode(uint64_t code) const {
        Poly r(field());
        r.c.assign(m.deg(), 0);
        for (int i = 0; i < m.deg(); ++i) { r.c[i] = (uint32_t)(code % field()->size); code /= field()->size; }
        r.normalize();
        return r;
    }

    uint64_t mul(uint64_t a, uint64_t b) const { return encode(decode(a) * decode(b)); }
    uint64_t add(uint64_t a, uint64_t b) const { return encode(decode(a) + decode(b)); }
    bool is_unit(uint64_t a) const { return gcd(decode(a), m.gen).is_one(); }
    uint64_t inv(uint64_t a) const {
        auto [g, u, v] = xgcd(decode(a), m.gen);
        if (!g.is_one()) throw std::domain_error("ResidueRing: not a unit");
        return encode(u);
    }

    /// All unit codes, sorted.
    std::vector<uint64_t> units() const {
        std::vector<uint64_t> out;
        out.reserve(m.unit_count());
        for (uint64_t c = 0; c < size_; ++c)
            if (is_unit(c)) out.push_back(c);
        return out;
    }

private:
    uint64_t size_;
};

/// (O_k/m)^x presented as a direct product of cyclic groups; carries
/// discrete-log data.  Construction is verified: generator orders are checked
/// by exponentiation and their product must equal the unit count.
class ResidueUnitGroup {
public:
    ResidueRing ring;
    FinAb group;                                      // element codes
    std::vector<std::pair<uint64_t, uint64_t>> basis; // (generator code, order)

    explicit ResidueUnitGroup(const MonicIdeal& m) : ring(m) {
        if (m.is_unit()) throw std::invalid_argument("unit_group: modulus (1)");
        group.elems = ring.units();
        group.id = ring.encode(Poly::one(ring.field()));
        const ResidueRing* R = &ring;
        group.mul = [R](uint64_t a, uint64_t b) { return R->mul(a, b); };
        if (group.elems.size() != m.unit_count())
            throw std::logic_error("unit_group: cardinality mismatch");
        basis = abelian_basis(group);
        uint64_t prod = 1;
        for (auto& [g, o] : basis) {
            if (group.order(g) != o) throw std::logic_error("unit_group: generator order mismatch");
            prod *= o;
        }
        if (prod != group.elems.size()) throw std::logic_error("unit_group: basis incomplete");
        dlog_ = dlog_table(group, basis);
    }

    size_t card() const { return group.elems.size(); }
    uint64_t exponent() const {
        uint64_t e = 1;
        for (auto& [g, o] : basis) e = std::lcm(e, o);
        return e;
    }

    std::vector<Poly> generators() const {
        std::vector<Poly> out;
        for (auto& [g, o] : basis) out.push_back(ring.decode(g));
        return out;
    }
    std::vector<uint64_t> orders() const {
        std::vector<uint64_t> out;
        for (auto& [g, o] : basis) out.push_back(o);
        return out;
    }

    /// Exponent vector of a unit over the basis.
    std::vector<uint64_t> discrete_log(const Poly& x) const {
        uint64_t c = ring.encode(x);
        auto it = dlog_.find(c);
        if (it == dlog_.end()) throw std::domain_error("discrete_log: not a unit");
        return it->second;
    }
    std::vector<uint64_t> discrete_log_code(uint64_t c) const {
        auto it = dlog_.find(c);
        if (it == dlog_.end()) throw std::domain_error("discrete_log: not a unit");
        return it->second;
    }

    Poly from_exponents(const std::vector<uint64_t>& e) const {
        uint64_t c = group.id;
        for (size_t i = 0; i < basis.size(); ++i) c = group.mul(c, group.pow(basis[i].first, e[i]));
        return ring.decode(c);
    }

private:
    std::map<uint64_t, std::vector<uint64_t>> dlog_;
};

/// Shared, synchronized registry (unit groups are costly to rebuild).
inline std::shared_ptr<const ResidueUnitGroup> unit_group(const MonicIdeal& m) {
    static std::map<std::pair<const FqField*, Poly>, std::shared_ptr<const ResidueUnitGroup>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lk(mtx);
    auto key = std::make_pair(m.field().get(), m.gen);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto g = std::make_shared<const ResidueUnitGroup>(m);
    cache[key] = g;
    return g;
}

}  // namespace cfw
