#include "pptri/curvelab.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "pptri/embed.hpp"
#include "pptri/permlab.hpp"
#include "pptri/poly.hpp"
#include "pptri/prime.hpp"

namespace pptri {
namespace {

using QBiPoly = BiPoly<QuadExtCtx>;

// X + alpha + X^{p-1} in the chosen variable slot
QBiPoly side_poly(const QuadExtCtx& F, const FieldElement& alpha, bool in_x) {
    std::uint32_t p = F.char_p();
    QBiPoly r = bipoly_zero(F);
    auto one = F.one();
    if (in_x) {
        r.add_term(1, 0, one);
        r.add_term(0, 0, F.lift(alpha));
        r.add_term(p - 1, 0, one);
    } else {
        r.add_term(0, 1, one);
        r.add_term(0, 0, F.lift(alpha));
        r.add_term(0, p - 1, one);
    }
    return r;
}

// X^{p-1} + alpha X^p + X in the chosen variable slot
QBiPoly denom_poly(const QuadExtCtx& F, const FieldElement& alpha, bool in_x) {
    std::uint32_t p = F.char_p();
    QBiPoly r = bipoly_zero(F);
    auto one = F.one();
    if (in_x) {
        r.add_term(p - 1, 0, one);
        r.add_term(p, 0, F.lift(alpha));
        r.add_term(1, 0, one);
    } else {
        r.add_term(0, p - 1, one);
        r.add_term(0, p, F.lift(alpha));
        r.add_term(0, 1, one);
    }
    return r;
}

// reinterpret a curve polynomial over F_q (coefficients must be q-fixed)
BiPoly<FieldCtx> descend_to_base(const QBiPoly& f) {
    const QuadExtCtx& F = *f.ctx;
    BiPoly<FieldCtx> r{&F.base(), {}};
    for (const auto& [key, c] : f.t) {
        if (!F.base().is_zero(c.im))
            throw std::runtime_error("coefficient is not fixed by the q-Frobenius");
        r.t.emplace(key, c.re);
    }
    return r;
}

std::uint64_t fiber_root_count(const FieldCtx& Fq, const Poly<FieldCtx>& slice) {
    if (slice.is_zero()) return Fq.order_u64();
    if (slice.deg() == 0) return 0;
    auto fm = poly_monic(slice);
    auto xq = poly_powmod(poly_x(Fq), Fq.order(), fm);
    auto g = poly_gcd(fm, poly_sub(xq, poly_x(Fq)));
    return static_cast<std::uint64_t>(g.deg());
}

PointCountReport count_impl(const FieldCtx& Fq, const BiPoly<FieldCtx>& G,
                            const FieldElement& alpha, std::uint32_t p, int threads) {
    if (G.is_zero()) throw std::invalid_argument("model polynomial is zero");
    if (!Fq.order_fits_u64()) throw std::domain_error("field too large for fiber counting");
    std::uint64_t q = Fq.order_u64();
    std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total) num_threads(threads)
    for (long long xi = 0; xi < static_cast<long long>(q); ++xi) {
        auto x = Fq.element_at_u64(static_cast<std::uint64_t>(xi));
        total += fiber_root_count(Fq, bipoly_slice_x(G, x));
    }
    auto diag = bipoly_diagonal(G);
    std::uint64_t diag_count =
        diag.is_zero() ? q : static_cast<std::uint64_t>(roots_in_field(diag).size());

    PointCountReport rep;
    rep.q = Fq.order();
    rep.alpha = alpha;
    rep.affine_count = total;
    rep.excluded_count = diag_count;
    double sq = std::sqrt(static_cast<double>(q));
    double excess = static_cast<double>(p - 2) * static_cast<double>(p - 3) * sq;
    rep.lower_bound = static_cast<double>(q) + 1.0 - excess - 2.0 * (p - 1);
    rep.upper_bound = static_cast<double>(q) + 1.0 + excess;
    double a = static_cast<double>(total);
    rep.within_bounds = rep.lower_bound <= a && a <= rep.upper_bound;
    return rep;
}

}  // namespace

CurveSpec build_F_alpha(const QuadExtCtx& ctx2, const FieldElement& alpha) {
    const QuadExtCtx& F = ctx2;
    require_same_ctx(alpha.ctx, &F.base());
    if (F.base().is_zero(alpha)) throw std::invalid_argument("alpha must be nonzero");
    std::uint32_t p = F.char_p();

    QBiPoly defining =
        bipoly_sub(bipoly_mul(side_poly(F, alpha, true), denom_poly(F, alpha, false)),
                   bipoly_mul(side_poly(F, alpha, false), denom_poly(F, alpha, true)));

    // expanded route: alpha (X^{p-1}Y^p - X^p Y^{p-1} + XY^p - X^p Y
    //                        + alpha (Y^p - X^p) + Y^{p-1} - X^{p-1} + Y - X)
    QBiPoly expanded = bipoly_zero(F);
    auto one = F.one();
    auto a = F.lift(alpha);
    expanded.add_term(p - 1, p, one);
    expanded.add_term(p, p - 1, F.neg(one));
    expanded.add_term(1, p, one);
    expanded.add_term(p, 1, F.neg(one));
    expanded.add_term(0, p, a);
    expanded.add_term(p, 0, F.neg(a));
    expanded.add_term(0, p - 1, one);
    expanded.add_term(p - 1, 0, F.neg(one));
    expanded.add_term(0, 1, one);
    expanded.add_term(1, 0, F.neg(one));
    expanded = bipoly_scale(expanded, a);

    if (!(defining == expanded)) throw std::runtime_error("F_alpha construction routes disagree");

    CurveSpec spec;
    spec.ctx2 = &F;
    spec.alpha = alpha;
    spec.F = std::move(defining);
    spec.F1 = bipoly_div_x_minus_y(spec.F);
    return spec;
}

BiPoly<FieldCtx> build_D_model(const CurveSpec& spec) {
    const QuadExtCtx& F = *spec.ctx2;
    int dx = spec.F.deg_x(), dy = spec.F.deg_y();
    QuadElement i = F.i();

    auto build_pows = [&](bool plus, int dmax) {
        std::vector<Poly<QuadExtCtx>> pows;
        auto lin = make_poly(F, {plus ? i : F.neg(i), F.one()});
        pows.push_back(poly_const(F, F.one()));
        for (int d = 1; d <= dmax; ++d) pows.push_back(poly_mul(pows.back(), lin));
        return pows;
    };
    auto xp = build_pows(true, dx), xm = build_pows(false, dx);
    auto yp = build_pows(true, dy), ym = build_pows(false, dy);

    // H = sum c_{ab} (X+i)^a (X-i)^{dx-a} (Y+i)^b (Y-i)^{dy-b}
    QBiPoly H = bipoly_zero(F);
    for (const auto& [key, coeff] : spec.F.t) {
        auto px = poly_mul(xp[key.first], xm[dx - key.first]);
        auto py = poly_mul(yp[key.second], ym[dy - key.second]);
        for (int ax = 0; ax <= px.deg(); ++ax) {
            if (F.is_zero(px.c[ax])) continue;
            auto ca = F.mul(coeff, px.c[ax]);
            for (int by = 0; by <= py.deg(); ++by) {
                if (F.is_zero(py.c[by])) continue;
                H.add_term(ax, by, F.mul(ca, py.c[by]));
            }
        }
    }
    QBiPoly Graw = bipoly_div_x_minus_y(H);
    if (Graw.is_zero()) throw std::runtime_error("model vanished after removing (Y-X)");
    // strip the scalar content so the remaining coefficients land in F_q
    QuadElement lead = Graw.t.begin()->second;
    Graw = bipoly_scale(Graw, F.inv(lead));
    return descend_to_base(Graw);
}

PointCountReport count_points_fiberwise(const FieldCtx& Fq, const BiPoly<FieldCtx>& G,
                                        const FieldElement& alpha, std::uint32_t p, int threads) {
    if (threads <= 0) threads = omp_get_max_threads();
    return count_impl(Fq, G, alpha, p, threads);
}

PointCountReport count_points_fiberwise_serial(const FieldCtx& Fq, const BiPoly<FieldCtx>& G,
                                               const FieldElement& alpha, std::uint32_t p) {
    return count_impl(Fq, G, alpha, p, 1);
}

std::uint64_t count_points_bruteforce(const FieldCtx& Fq, const BiPoly<FieldCtx>& G) {
    std::uint64_t q = Fq.order_u64();
    if (q > (1u << 10)) throw std::domain_error("brute-force count capped at q <= 1024");
    std::uint64_t total = 0;
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        auto x = Fq.element_at_u64(xi);
        for (std::uint64_t yi = 0; yi < q; ++yi) {
            auto y = Fq.element_at_u64(yi);
            if (Fq.is_zero(bipoly_eval(G, x, y))) ++total;
        }
    }
    return total;
}

std::optional<std::pair<FieldElement, FieldElement>> find_offdiag_point(
    const FieldCtx& Fq, const BiPoly<FieldCtx>& G) {
    std::uint64_t q = Fq.order_u64();
    for (std::uint64_t xi = 0; xi < q; ++xi) {
        auto x = Fq.element_at_u64(xi);
        auto slice = bipoly_slice_x(G, x);
        if (slice.is_zero()) continue;
        for (const auto& y : roots_in_field(slice)) {
            if (y != x) return std::make_pair(x, y);
        }
    }
    return std::nullopt;
}

std::optional<std::pair<QuadElement, QuadElement>> map_back_to_mu_collision(
    const CurveSpec& spec, const std::pair<FieldElement, FieldElement>& pt) {
    const QuadExtCtx& F = *spec.ctx2;
    auto mobius = [&](const FieldElement& t) {
        return F.div(F.add(F.lift(t), F.i()), F.sub(F.lift(t), F.i()));
    };
    QuadElement u = mobius(pt.first), v = mobius(pt.second);
    if (u == v) return std::nullopt;
    auto gu = g_alpha(F, spec.alpha, u);
    auto gv = g_alpha(F, spec.alpha, v);
    if (gu.denom_zero || gv.denom_zero) return std::nullopt;
    if (gu.value != gv.value) return std::nullopt;
    return std::make_pair(u, v);
}

std::vector<unsigned> default_singular_degrees(std::uint32_t p, unsigned k) {
    // smallest m with X^{p-2} = 1 split in F_{q^m}
    std::uint64_t s = p - 2;
    std::uint64_t qs = powmod_u64(p % s, k, s);
    unsigned m = 1;
    std::uint64_t acc = qs % s;
    while (acc != 1 % s && m < 6) {
        acc = acc * qs % s;
        ++m;
    }
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= m; ++d)
        if (m % d == 0) out.push_back(d);
    return out;
}

SingularProbeReport singular_probe(const CurveSpec& spec, const std::vector<unsigned>& degrees) {
    const QuadExtCtx& F = *spec.ctx2;
    const FieldCtx& Fq = F.base();
    std::uint32_t p = F.char_p();
    auto Fbase = descend_to_base(spec.F);
    auto F1base = descend_to_base(spec.F1);

    SingularProbeReport rep;
    for (unsigned m : degrees) {
        const FieldCtx& E = field_cache(p, Fq.degree() * m);
        auto emb = make_embedding(Fq, E);
        auto lift_poly = [&](const BiPoly<FieldCtx>& f) {
            BiPoly<FieldCtx> r{&E, {}};
            for (const auto& [key, c] : f.t) r.t.emplace(key, emb.map(c));
            return r;
        };
        auto Fe = lift_poly(Fbase);
        auto F1e = lift_poly(F1base);
        auto PX = bipoly_partial_x(Fe);
        auto PY = bipoly_partial_y(Fe);
        auto is_sing = [&](const FieldElement& x, const FieldElement& y) {
            return E.is_zero(bipoly_eval(Fe, x, y)) && E.is_zero(bipoly_eval(PX, x, y)) &&
                   E.is_zero(bipoly_eval(PY, x, y));
        };

        SingularDegreeReport dr;
        dr.rel_degree = m;

        // candidates on the axes: x = 0 forces y^p = 1, hence y = 1 (and symmetrically)
        if (is_sing(E.zero(), E.one())) ++dr.xy_zero_singulars;
        if (is_sing(E.one(), E.zero())) ++dr.xy_zero_singulars;

        // type (3): x != 1 != y, x^{p-2} = y^{p-2} = 1, x != y
        std::vector<FieldElement> coeffs(p - 1, E.zero());
        coeffs[0] = E.neg(E.one());
        coeffs[p - 2] = E.one();
        auto S = roots_in_field(make_poly(E, std::move(coeffs)));
        for (const auto& x : S) {
            if (x == E.one()) continue;
            for (const auto& y : S) {
                if (y == E.one() || y == x) continue;
                if (is_sing(x, y)) dr.type3.emplace_back(x, y);
            }
        }

        // diagonal: points where F1(X,X) vanishes to order >= 2
        auto diag = bipoly_diagonal(F1e);
        auto rep_roots = poly_gcd(diag, poly_derivative(diag));
        if (rep_roots.deg() >= 1)
            dr.diag_multiple_roots = roots_in_field(rep_roots);

        rep.per_degree.push_back(std::move(dr));
    }
    return rep;
}

}  // namespace pptri
