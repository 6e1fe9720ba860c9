#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pptri/bigint.hpp"

namespace pptri {

// Dense univariate polynomial over a field context (FieldCtx or QuadExtCtx).
// Coefficients low degree first, trailing zeros stripped.
template <class Ctx>
struct Poly {
    const Ctx* ctx = nullptr;
    std::vector<typename Ctx::Element> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class Ctx>
void poly_normalize(Poly<Ctx>& f) {
    while (!f.c.empty() && f.ctx->is_zero(f.c.back())) f.c.pop_back();
}

template <class Ctx>
Poly<Ctx> make_poly(const Ctx& ctx, std::vector<typename Ctx::Element> coeffs) {
    Poly<Ctx> f{&ctx, std::move(coeffs)};
    poly_normalize(f);
    return f;
}

template <class Ctx>
Poly<Ctx> poly_zero(const Ctx& ctx) {
    return {&ctx, {}};
}

template <class Ctx>
Poly<Ctx> poly_const(const Ctx& ctx, const typename Ctx::Element& a) {
    return make_poly(ctx, {a});
}

template <class Ctx>
Poly<Ctx> poly_x(const Ctx& ctx) {
    return make_poly(ctx, {ctx.zero(), ctx.one()});
}

// X^n with coefficient a
template <class Ctx>
Poly<Ctx> poly_monomial(const Ctx& ctx, unsigned n, const typename Ctx::Element& a) {
    std::vector<typename Ctx::Element> v(n + 1, ctx.zero());
    v[n] = a;
    return make_poly(ctx, std::move(v));
}

template <class Ctx>
Poly<Ctx> poly_add(const Poly<Ctx>& a, const Poly<Ctx>& b) {
    const Ctx& F = *a.ctx;
    std::vector<typename Ctx::Element> r(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = F.add(r[i], b.c[i]);
    return make_poly(F, std::move(r));
}

template <class Ctx>
Poly<Ctx> poly_sub(const Poly<Ctx>& a, const Poly<Ctx>& b) {
    const Ctx& F = *a.ctx;
    std::vector<typename Ctx::Element> r(std::max(a.c.size(), b.c.size()), F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = F.sub(r[i], b.c[i]);
    return make_poly(F, std::move(r));
}

template <class Ctx>
Poly<Ctx> poly_scale(const Poly<Ctx>& a, const typename Ctx::Element& s) {
    const Ctx& F = *a.ctx;
    std::vector<typename Ctx::Element> r;
    r.reserve(a.c.size());
    for (const auto& x : a.c) r.push_back(F.mul(x, s));
    return make_poly(F, std::move(r));
}

template <class Ctx>
Poly<Ctx> poly_mul(const Poly<Ctx>& a, const Poly<Ctx>& b) {
    const Ctx& F = *a.ctx;
    if (a.is_zero() || b.is_zero()) return poly_zero(F);
    std::vector<typename Ctx::Element> r(a.c.size() + b.c.size() - 1, F.zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (F.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
    }
    return make_poly(F, std::move(r));
}

template <class Ctx>
std::pair<Poly<Ctx>, Poly<Ctx>> poly_divrem(const Poly<Ctx>& a, const Poly<Ctx>& b) {
    const Ctx& F = *a.ctx;
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.deg() < b.deg()) return {poly_zero(F), a};
    auto linv = F.inv(b.c.back());
    std::vector<typename Ctx::Element> rem = a.c;
    std::vector<typename Ctx::Element> quo(a.deg() - b.deg() + 1, F.zero());
    for (int d = a.deg(); d >= b.deg(); --d) {
        auto& top = rem[d];
        if (F.is_zero(top)) continue;
        auto q = F.mul(top, linv);
        quo[d - b.deg()] = q;
        for (int i = 0; i <= b.deg(); ++i)
            rem[d - b.deg() + i] = F.sub(rem[d - b.deg() + i], F.mul(q, b.c[i]));
    }
    return {make_poly(F, std::move(quo)), make_poly(F, std::move(rem))};
}

template <class Ctx>
Poly<Ctx> poly_mod(const Poly<Ctx>& a, const Poly<Ctx>& m) {
    return poly_divrem(a, m).second;
}

template <class Ctx>
Poly<Ctx> poly_mulmod(const Poly<Ctx>& a, const Poly<Ctx>& b, const Poly<Ctx>& m) {
    return poly_mod(poly_mul(a, b), m);
}

template <class Ctx>
Poly<Ctx> poly_monic(const Poly<Ctx>& f) {
    if (f.is_zero()) return f;
    return poly_scale(f, f.ctx->inv(f.c.back()));
}

template <class Ctx>
Poly<Ctx> poly_gcd(Poly<Ctx> a, Poly<Ctx> b) {
    while (!b.is_zero()) {
        auto r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

template <class Ctx>
Poly<Ctx> poly_powmod(const Poly<Ctx>& base, const Big& e, const Poly<Ctx>& m) {
    const Ctx& F = *base.ctx;
    if (m.deg() < 1) throw std::domain_error("powmod needs a nonconstant modulus");
    if (sgn(e) < 0) throw std::invalid_argument("negative exponent");
    Poly<Ctx> r = poly_mod(poly_const(F, F.one()), m);
    Poly<Ctx> b = poly_mod(base, m);
    if (sgn(e) == 0) return r;
    for (size_t i = bit_length(e); i-- > 0;) {
        r = poly_mulmod(r, r, m);
        if (test_bit(e, i)) r = poly_mulmod(r, b, m);
    }
    return r;
}

template <class Ctx>
typename Ctx::Element poly_eval(const Poly<Ctx>& f, const typename Ctx::Element& x) {
    const Ctx& F = *f.ctx;
    auto acc = F.zero();
    for (size_t i = f.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.c[i]);
    return acc;
}

template <class Ctx>
Poly<Ctx> poly_derivative(const Poly<Ctx>& f) {
    const Ctx& F = *f.ctx;
    if (f.deg() < 1) return poly_zero(F);
    std::vector<typename Ctx::Element> r(f.deg(), F.zero());
    for (int i = 1; i <= f.deg(); ++i) {
        auto s = F.from_int(i);
        r[i - 1] = F.mul(f.c[i], s);
    }
    return make_poly(F, std::move(r));
}

// gcd(f, X^{|F|} - X): the product of the distinct linear factors of f
template <class Ctx>
Poly<Ctx> distinct_linear_part(const Poly<Ctx>& f) {
    const Ctx& F = *f.ctx;
    auto fm = poly_monic(f);
    if (fm.deg() < 1) return fm;
    auto xq = poly_powmod(poly_x(F), F.order(), fm);
    auto h = poly_sub(xq, poly_x(F));
    return poly_gcd(fm, h);
}

namespace detail {

constexpr std::uint64_t kSplitSeed = 0x9e3779b97f4a7c15ull;

template <class Ctx>
typename Ctx::Element random_element(const Ctx& F, std::mt19937_64& rng) {
    std::vector<std::uint32_t> v(F.fp_dim());
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % F.char_p());
    return F.from_fp_vec(v);
}

// equal-degree style splitting of a squarefree product of linear factors
template <class Ctx>
void split_linear(const Poly<Ctx>& g, std::vector<typename Ctx::Element>& out, std::mt19937_64& rng) {
    const Ctx& F = *g.ctx;
    if (g.deg() < 1) return;
    if (g.deg() == 1) {
        out.push_back(F.neg(F.mul(g.c[0], F.inv(g.c[1]))));
        return;
    }
    const Big half = (F.order() - 1) / 2;
    while (true) {
        auto a = random_element(F, rng);
        auto shifted = make_poly(F, {a, F.one()});
        auto h = poly_powmod(shifted, half, g);
        h = poly_sub(h, poly_const(F, F.one()));
        auto d = poly_gcd(h, g);
        if (d.deg() > 0 && d.deg() < g.deg()) {
            split_linear(d, out, rng);
            split_linear(poly_divrem(g, d).first, out, rng);
            return;
        }
    }
}

}  // namespace detail

// All roots of f in its field, sorted in canonical element order.
// Exhaustive scan for small fields, seeded splitting otherwise.
template <class Ctx>
std::vector<typename Ctx::Element> roots_in_field(const Poly<Ctx>& f) {
    const Ctx& F = *f.ctx;
    if (f.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<typename Ctx::Element> out;
    if (f.deg() < 1) return out;
    if (F.order_fits_u64() && F.order_u64() <= (1u << 16)) {
        for (std::uint64_t i = 0; i < F.order_u64(); ++i) {
            auto x = F.element_at_u64(i);
            if (F.is_zero(poly_eval(f, x))) out.push_back(x);
        }
        return out;
    }
    auto g = distinct_linear_part(f);
    std::mt19937_64 rng(detail::kSplitSeed);
    detail::split_linear(g, out, rng);
    std::sort(out.begin(), out.end(),
              [&F](const auto& a, const auto& b) { return F.less(a, b); });
    return out;
}

// Both square roots of x (lex order), or nothing when x is a nonresidue.
template <class Ctx>
std::optional<std::pair<typename Ctx::Element, typename Ctx::Element>> sqrt_of(
    const Ctx& F, const typename Ctx::Element& x) {
    if (F.char_p() == 2) throw std::domain_error("sqrt needs odd characteristic");
    if (F.is_zero(x)) return std::make_pair(F.zero(), F.zero());
    if (F.quad_char(x) == -1) return std::nullopt;
    auto f = make_poly(F, {F.neg(x), F.zero(), F.one()});
    auto r = roots_in_field(f);
    if (r.size() != 2) throw std::runtime_error("sqrt: expected two roots");
    return std::make_pair(r[0], r[1]);
}

// Roots of Y^n - x, canonical order (may be empty).
template <class Ctx>
std::vector<typename Ctx::Element> nth_roots_of(const Ctx& F, unsigned n,
                                                const typename Ctx::Element& x) {
    std::vector<typename Ctx::Element> coeffs(n + 1, F.zero());
    coeffs[0] = F.neg(x);
    coeffs[n] = F.one();
    return roots_in_field(make_poly(F, std::move(coeffs)));
}

}  // namespace pptri
