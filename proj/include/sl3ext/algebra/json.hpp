#pragma once

#include "sl3ext/algebra/matrix.hpp"
#include "sl3ext/algebra/poly.hpp"
#include "sl3ext/algebra/quadratic.hpp"
#include "sl3ext/algebra/rational.hpp"
#include "sl3ext/algebra/structured.hpp"

#include <json.hpp>

namespace sl3ext {

using json = nlohmann::json;

inline json to_json(const Rational& r) { return r.exact(); }

template <long D>
json to_json(const Quadratic<D>& q) {
    return json{{"a", q.a().exact()}, {"b", q.b().exact()}, {"d", D}};
}

template <class F>
json to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
json to_json(const std::vector<F>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(to_json(x));
    return a;
}

/// Term list in canonical order: [{"coef": ..., "exp": {"name": k, ...}}, ...].
template <class F>
json to_json(const MultiPoly<F>& p) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json e = json::object();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) e[p.ring()->name(i)] = m[i];
        terms.push_back(json{{"coef", to_json(c)}, {"exp", std::move(e)}});
    }
    return json{{"terms", std::move(terms)}, {"text", p.str()}};
}

/// (P, e, m) triples.
template <class F>
json to_json(const StructuredFunction<F>& f) {
    json out = json::array();
    for (auto& [m, t] : f.terms()) out.push_back(json{{"P", to_json(t.p)}, {"e", t.e}, {"m", m}});
    return out;
}

}  // namespace sl3ext
