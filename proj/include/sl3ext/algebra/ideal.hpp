#pragma once

#include "sl3ext/algebra/linalg.hpp"
#include "sl3ext/algebra/poly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <optional>
#include <vector>

namespace sl3ext {

/// All monomials of total degree <= d in the given indeterminates.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, const std::vector<std::size_t>& vars, int d) {
    std::vector<Monomial> out;
    Monomial m(nvars, 0);
    auto rec = [&](auto&& self, std::size_t k, int left) -> void {
        if (k == vars.size()) {
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[vars[k]] = e;
            self(self, k + 1, left - e);
        }
        m[vars[k]] = 0;
    };
    rec(rec, 0, d);
    return out;
}

/// Ideal membership certificate: target = sum_i mult[i] * gens[i].
template <class F>
struct Certificate {
    std::vector<MultiPoly<F>> multipliers;
    int degree = 0;
};

/// Search for multipliers of total degree <= max_degree in `vars` (by exact linear solve).
/// The returned certificate is re-verified by expansion.
template <class F>
std::optional<Certificate<F>> ideal_certificate(const MultiPoly<F>& target, const std::vector<MultiPoly<F>>& gens,
                                                const std::vector<std::string>& vars, int max_degree) {
    RingPtr ring = target.ring();
    for (auto& g : gens)
        if (!ring) ring = g.ring();
    if (!ring) {
        if (target.is_zero()) return Certificate<F>{std::vector<MultiPoly<F>>(gens.size()), 0};
        return std::nullopt;
    }
    std::vector<std::size_t> vidx;
    for (auto& v : vars) vidx.push_back(ring->index(v));

    for (int d = 0; d <= max_degree; ++d) {
        auto monos = monomials_up_to(ring->size(), vidx, d);
        // columns: (generator, multiplier monomial); rows: monomials of the products
        std::vector<MultiPoly<F>> prods;
        for (auto& g : gens)
            for (auto& m : monos) prods.push_back(MultiPoly<F>::monomial(ring, m, F(1)) * g);
        std::map<Monomial, std::size_t, GrlexGreater> row;
        auto index_terms = [&](const MultiPoly<F>& p) {
            for (auto& [m, c] : p.terms()) row.emplace(m, 0);
        };
        for (auto& p : prods) index_terms(p);
        index_terms(target);
        std::size_t r = 0;
        for (auto& [m, i] : row) i = r++;
        Matrix<F> a(row.size(), prods.size());
        std::vector<F> b(row.size(), F(0));
        for (std::size_t j = 0; j < prods.size(); ++j)
            for (auto& [m, c] : prods[j].terms()) a(row.at(m), j) = c;
        for (auto& [m, c] : target.terms()) b[row.at(m)] = c;
        auto x = solve(a, b);
        if (!x) continue;
        Certificate<F> cert;
        cert.degree = d;
        MultiPoly<F> check(ring, F(0));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            MultiPoly<F> mult(ring, F(0));
            for (std::size_t k = 0; k < monos.size(); ++k)
                mult += MultiPoly<F>::monomial(ring, monos[k], (*x)[i * monos.size() + k]);
            check += mult * gens[i];
            cert.multipliers.push_back(std::move(mult));
        }
        if (!(check - target).is_zero()) throw std::logic_error("ideal_certificate: verification failed");
        return cert;
    }
    return std::nullopt;
}

struct EliminationResult {
    std::map<std::string, Poly> solution;
    std::vector<std::string> order;
    std::vector<Poly> leftovers;
};

/// Linear elimination with constant pivots. Each equation is scanned for an unknown that occurs
/// linearly with a nonzero constant coefficient; that unknown is solved and substituted everywhere.
inline EliminationResult eliminate(std::vector<Poly> eqs, const std::vector<std::string>& unknowns) {
    EliminationResult r;
    std::erase_if(eqs, [](const Poly& e) { return e.is_zero(); });
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < eqs.size() && !changed; ++i) {
            for (auto& u : unknowns) {
                if (r.solution.count(u)) continue;
                const Poly& e = eqs[i];
                if (!e.ring()) continue;
                std::size_t ui = e.ring()->index(u);
                if (e.degree_in(ui) != 1 || e.min_degree_in(ui) < 0) continue;
                Poly cf = e.coefficient(ui, 1);
                if (!cf.is_constant() || cf.is_zero()) continue;
                Rational c = cf.constant_value();
                Poly val = -(e - Poly::var(e.ring(), u) * cf) / c;
                for (auto& [k, v] : r.solution)
                    if (v.involves(ui)) v = v.substitute(ui, val);
                r.solution.emplace(u, val);
                r.order.push_back(u);
                std::vector<Poly> rest;
                for (std::size_t j = 0; j < eqs.size(); ++j) {
                    if (j == i) continue;
                    Poly x = eqs[j].involves(ui) ? eqs[j].substitute(ui, val) : eqs[j];
                    if (!x.is_zero()) rest.push_back(std::move(x));
                }
                eqs = std::move(rest);
                changed = true;
                break;
            }
        }
    }
    r.leftovers = std::move(eqs);
    return r;
}

}  // namespace sl3ext
