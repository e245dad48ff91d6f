#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "cfw/fq.hpp"

namespace cfw {

/// A small finite abelian group over opaque element codes.
struct FinAb {
    std::vector<uint64_t> elems;  // all elements, sorted (canonical order)
    uint64_t id = 0;
    std::function<uint64_t(uint64_t, uint64_t)> mul;

    size_t size() const { return elems.size(); }

    uint64_t pow(uint64_t x, uint64_t e) const {
        uint64_t r = id, b = x;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }
    uint64_t order(uint64_t x) const {
        uint64_t o = 1, c = x;
        while (c != id) {
            c = mul(c, x);
            ++o;
            if (o > elems.size()) throw std::logic_error("FinAb::order: element escapes group");
        }
        return o;
    }
    uint64_t inverse(uint64_t x) const { return pow(x, order(x) - 1); }
};

/// Subgroup generated by `gens`, as a sorted element vector.
inline std::vector<uint64_t> subgroup_closure(const FinAb& G, const std::vector<uint64_t>& gens) {
    std::set<uint64_t> S{G.id};
    std::vector<uint64_t> frontier{G.id};
    while (!frontier.empty()) {
        std::vector<uint64_t> next;
        for (uint64_t x : frontier)
            for (uint64_t g : gens) {
                uint64_t y = G.mul(x, g);
                if (S.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<uint64_t>(S.begin(), S.end());
}

/// Independent generators with orders presenting the group as a direct
/// product of cyclic subgroups.  Deterministic: works prime by prime and
/// peels maximal-order elements, scanning candidates in canonical order.
inline std::vector<std::pair<uint64_t, uint64_t>> abelian_basis(const FinAb& G) {
    std::vector<std::pair<uint64_t, uint64_t>> basis;
    if (G.size() == 1) return basis;
    uint64_t n = G.size();
    for (uint64_t P : detail::factor_u64(n)) {
        // Sylow P-subgroup: elements of P-power order
        uint64_t pk = 1;
        while (n % (pk * P) == 0) pk *= P;
        std::vector<uint64_t> Gp;
        for (uint64_t x : G.elems)
            if (G.pow(x, pk) == G.id) Gp.push_back(x);
        // peel cyclic factors
        std::vector<std::pair<uint64_t, uint64_t>> pbasis;  // (gen, order)
        std::map<uint64_t, std::vector<uint64_t>> dlog;     // over pbasis
        dlog[G.id] = {};
        while (dlog.size() < Gp.size()) {
            // x of maximal coset order modulo the current subgroup
            uint64_t best = 0, bestord = 0;
            for (uint64_t x : Gp) {
                if (dlog.count(x)) continue;
                uint64_t o = 1, c = x;
                while (!dlog.count(c)) { c = G.pow(c, P); o *= P; }
                if (o > bestord) { bestord = o; best = x; }
            }
            uint64_t m = bestord, x = best;
            // purity adjustment: x^m = h^m with h in H; replace x by x/h
            uint64_t xm = G.pow(x, m);
            const auto& e = dlog.at(xm);
            for (size_t i = 0; i < pbasis.size(); ++i) {
                uint64_t oi = pbasis[i].second, ei = e[i];
                if (ei == 0) continue;
                uint64_t d = std::gcd(m, oi);
                if (ei % d) throw std::logic_error("abelian_basis: purity violated");
                // solve m*f = ei (mod oi), i.e. (m/d) f = ei/d (mod oi/d)
                uint64_t oi_d = oi / d;
                uint64_t f = 0;
                if (oi_d > 1) {
                    uint64_t m_d = (m / d) % oi_d, inv = 0;
                    for (uint64_t t = 1; t < oi_d; ++t)
                        if ((m_d * t) % oi_d == 1) { inv = t; break; }
                    f = ((ei / d) % oi_d) * inv % oi_d;
                }
                if (f % oi)
                    x = G.mul(x, G.pow(pbasis[i].first, oi - f % oi));  // b_i^{-f}
            }
            if (G.pow(x, m) != G.id) throw std::logic_error("abelian_basis: adjustment failed");
            // extend dlog table
            std::map<uint64_t, std::vector<uint64_t>> nd;
            for (const auto& [el, v] : dlog) {
                uint64_t cur = el;
                for (uint64_t j = 0; j < m; ++j) {
                    auto vv = v;
                    vv.push_back(j);
                    nd[cur] = vv;
                    if (j + 1 < m) cur = G.mul(cur, x);
                }
            }
            dlog = std::move(nd);
            pbasis.emplace_back(x, m);
        }
        for (auto& b : pbasis) basis.push_back(b);
    }
    // canonical order: decreasing order, ties by element code
    std::sort(basis.begin(), basis.end(), [](auto& a, auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return basis;
}

/// Full discrete-log table over a direct-product basis.
inline std::map<uint64_t, std::vector<uint64_t>> dlog_table(
    const FinAb& G, const std::vector<std::pair<uint64_t, uint64_t>>& basis) {
    std::map<uint64_t, std::vector<uint64_t>> dl;
    dl[G.id] = std::vector<uint64_t>(basis.size(), 0);
    for (size_t i = 0; i < basis.size(); ++i) {
        std::map<uint64_t, std::vector<uint64_t>> nd;
        for (const auto& [el, v] : dl) {
            uint64_t cur = el;
            for (uint64_t j = 0; j < basis[i].second; ++j) {
                auto vv = v;
                vv[i] = j;
                nd[cur] = vv;
                if (j + 1 < basis[i].second) cur = G.mul(cur, basis[i].first);
            }
        }
        dl = std::move(nd);
    }
    if (dl.size() != G.size()) throw std::logic_error("dlog_table: basis does not present the group");
    return dl;
}

/// Every subgroup, each as a sorted element vector (BFS over the lattice).
inline std::vector<std::vector<uint64_t>> all_subgroups(const FinAb& G) {
    std::set<std::vector<uint64_t>> seen;
    std::vector<std::vector<uint64_t>> queue;
    std::vector<uint64_t> triv{G.id};
    seen.insert(triv);
    queue.push_back(triv);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto S = queue[qi];
        for (uint64_t x : G.elems) {
            if (std::binary_search(S.begin(), S.end(), x)) continue;
            auto gens = S;
            gens.push_back(x);
            auto S2 = subgroup_closure(G, gens);
            if (seen.insert(S2).second) queue.push_back(S2);
        }
    }
    std::sort(queue.begin(), queue.end(),
              [](const auto& a, const auto& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return queue;
}

}  // namespace cfw
