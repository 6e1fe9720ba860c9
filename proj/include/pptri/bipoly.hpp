#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "pptri/poly.hpp"

namespace pptri {

// Sparse bivariate polynomial; no zero coefficients are stored.
template <class Ctx>
struct BiPoly {
    using Element = typename Ctx::Element;
    const Ctx* ctx = nullptr;
    std::map<std::pair<int, int>, Element> t;  // (degX, degY) -> coeff

    bool is_zero() const { return t.empty(); }

    void add_term(int i, int j, const Element& v) {
        if (ctx->is_zero(v)) return;
        auto key = std::make_pair(i, j);
        auto it = t.find(key);
        if (it == t.end()) {
            t.emplace(key, v);
        } else {
            it->second = ctx->add(it->second, v);
            if (ctx->is_zero(it->second)) t.erase(it);
        }
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [k, v] : t) d = std::max(d, k.first + k.second);
        return d;
    }
    int deg_x() const {
        int d = -1;
        for (const auto& [k, v] : t) d = std::max(d, k.first);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (const auto& [k, v] : t) d = std::max(d, k.second);
        return d;
    }

    bool operator==(const BiPoly& o) const { return t == o.t; }
};

template <class Ctx>
BiPoly<Ctx> bipoly_zero(const Ctx& ctx) {
    return {&ctx, {}};
}

template <class Ctx>
BiPoly<Ctx> bipoly_add(const BiPoly<Ctx>& a, const BiPoly<Ctx>& b) {
    BiPoly<Ctx> r = a;
    for (const auto& [k, v] : b.t) r.add_term(k.first, k.second, v);
    return r;
}

template <class Ctx>
BiPoly<Ctx> bipoly_neg(const BiPoly<Ctx>& a) {
    BiPoly<Ctx> r{a.ctx, {}};
    for (const auto& [k, v] : a.t) r.t.emplace(k, a.ctx->neg(v));
    return r;
}

template <class Ctx>
BiPoly<Ctx> bipoly_sub(const BiPoly<Ctx>& a, const BiPoly<Ctx>& b) {
    return bipoly_add(a, bipoly_neg(b));
}

template <class Ctx>
BiPoly<Ctx> bipoly_mul(const BiPoly<Ctx>& a, const BiPoly<Ctx>& b) {
    BiPoly<Ctx> r{a.ctx, {}};
    for (const auto& [ka, va] : a.t)
        for (const auto& [kb, vb] : b.t)
            r.add_term(ka.first + kb.first, ka.second + kb.second, a.ctx->mul(va, vb));
    return r;
}

template <class Ctx>
BiPoly<Ctx> bipoly_scale(const BiPoly<Ctx>& a, const typename Ctx::Element& s) {
    BiPoly<Ctx> r{a.ctx, {}};
    for (const auto& [k, v] : a.t) r.add_term(k.first, k.second, a.ctx->mul(v, s));
    return r;
}

template <class Ctx>
typename Ctx::Element bipoly_eval(const BiPoly<Ctx>& f, const typename Ctx::Element& x,
                                  const typename Ctx::Element& y) {
    const Ctx& F = *f.ctx;
    int dx = f.deg_x(), dy = f.deg_y();
    std::vector<typename Ctx::Element> xp{F.one()}, yp{F.one()};
    for (int i = 1; i <= dx; ++i) xp.push_back(F.mul(xp.back(), x));
    for (int j = 1; j <= dy; ++j) yp.push_back(F.mul(yp.back(), y));
    auto acc = F.zero();
    for (const auto& [k, v] : f.t) acc = F.add(acc, F.mul(v, F.mul(xp[k.first], yp[k.second])));
    return acc;
}

template <class Ctx>
BiPoly<Ctx> bipoly_partial_x(const BiPoly<Ctx>& f) {
    BiPoly<Ctx> r{f.ctx, {}};
    for (const auto& [k, v] : f.t) {
        if (k.first == 0) continue;
        r.add_term(k.first - 1, k.second, f.ctx->mul(v, f.ctx->from_int(k.first)));
    }
    return r;
}

template <class Ctx>
BiPoly<Ctx> bipoly_partial_y(const BiPoly<Ctx>& f) {
    BiPoly<Ctx> r{f.ctx, {}};
    for (const auto& [k, v] : f.t) {
        if (k.second == 0) continue;
        r.add_term(k.first, k.second - 1, f.ctx->mul(v, f.ctx->from_int(k.second)));
    }
    return r;
}

// univariate slice f(x0, Y)
template <class Ctx>
Poly<Ctx> bipoly_slice_x(const BiPoly<Ctx>& f, const typename Ctx::Element& x0) {
    const Ctx& F = *f.ctx;
    int dx = f.deg_x(), dy = f.deg_y();
    std::vector<typename Ctx::Element> xp{F.one()};
    for (int i = 1; i <= dx; ++i) xp.push_back(F.mul(xp.back(), x0));
    std::vector<typename Ctx::Element> out(dy + 1, F.zero());
    for (const auto& [k, v] : f.t)
        out[k.second] = F.add(out[k.second], F.mul(v, xp[k.first]));
    return make_poly(F, std::move(out));
}

// f(X, X)
template <class Ctx>
Poly<Ctx> bipoly_diagonal(const BiPoly<Ctx>& f) {
    const Ctx& F = *f.ctx;
    int d = f.total_degree();
    std::vector<typename Ctx::Element> out(std::max(d + 1, 1), F.zero());
    for (const auto& [k, v] : f.t) out[k.first + k.second] = F.add(out[k.first + k.second], v);
    return make_poly(F, std::move(out));
}

// f(Y, X)
template <class Ctx>
BiPoly<Ctx> bipoly_swap(const BiPoly<Ctx>& f) {
    BiPoly<Ctx> r{f.ctx, {}};
    for (const auto& [k, v] : f.t) r.t.emplace(std::make_pair(k.second, k.first), v);
    return r;
}

// exact division by (X - Y); throws if a remainder is left
template <class Ctx>
BiPoly<Ctx> bipoly_div_x_minus_y(const BiPoly<Ctx>& f) {
    const Ctx& F = *f.ctx;
    int dx = f.deg_x();
    if (dx < 1) {
        if (!f.is_zero()) throw std::domain_error("(X - Y) does not divide");
        return bipoly_zero(F);
    }
    // view as polynomial in X with coefficients in F[Y]
    std::vector<Poly<Ctx>> a(dx + 1, poly_zero(F));
    for (const auto& [k, v] : f.t) {
        auto& pj = a[k.first];
        if (pj.deg() < k.second) pj.c.resize(k.second + 1, F.zero());
        pj.c[k.second] = F.add(pj.c[k.second], v);
    }
    for (auto& pj : a) poly_normalize(pj);
    std::vector<Poly<Ctx>> q(dx, poly_zero(F));
    Poly<Ctx> carry = a[dx];
    for (int j = dx - 1; j >= 0; --j) {
        q[j] = carry;
        carry = poly_add(a[j], poly_mul(poly_x(F), carry));  // a_j + Y * q_j
    }
    if (!carry.is_zero()) throw std::domain_error("(X - Y) does not divide");
    BiPoly<Ctx> r{&F, {}};
    for (int j = 0; j < dx; ++j)
        for (int m = 0; m <= q[j].deg(); ++m) r.add_term(j, m, q[j].c[m]);
    return r;
}

}  // namespace pptri
