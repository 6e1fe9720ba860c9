#include "pptri/charsum.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

#include "pptri/poly.hpp"

namespace pptri {

EtaTable build_eta_table(const FieldCtx& ctx, int threads) {
    (void)threads;
    if (ctx.char_p() == 2) throw std::domain_error("eta table needs odd characteristic");
    if (!ctx.order_fits_u64() || ctx.order_u64() > (1ull << 26))
        throw std::domain_error("field too large for an eta table");
    std::uint64_t q = ctx.order_u64();
    EtaTable t;
    t.ctx = &ctx;
    t.v.assign(q, -1);
    t.v[0] = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
        auto x = ctx.element_at_u64(i);
        t.v[ctx.index_of_u64(ctx.mul(x, x))] = 1;
    }
    return t;
}

namespace {

long long weil_term(const FieldCtx& F, const EtaTable& eta, const FieldElement& mu,
                    const FieldElement& four, std::uint64_t zi) {
    FieldElement z = F.element_at_u64(zi);
    FieldElement arg = F.add(F.mul(four, F.mul(F.sub(z, F.one()), mu)), F.one());
    return eta.at(F.mul(arg, z));
}

CharSumReport weil_impl(const FieldCtx& F, const FieldElement& mu, const EtaTable& eta,
                        int threads) {
    if (F.char_p() == 2) throw std::domain_error("odd characteristic required");
    if (F.is_zero(mu)) throw std::invalid_argument("mu must be nonzero");
    require_same_ctx(mu.ctx, &F);
    std::uint64_t q = F.order_u64();
    FieldElement four = F.from_int(4);
    long long s = 0;
#pragma omp parallel for schedule(static) reduction(+ : s) num_threads(threads)
    for (long long zi = 0; zi < static_cast<long long>(q); ++zi)
        s += weil_term(F, eta, mu, four, static_cast<std::uint64_t>(zi));
    CharSumReport rep;
    rep.q = F.order();
    rep.mu = mu;
    rep.sum = s;
    rep.bound = std::sqrt(static_cast<double>(q));
    rep.satisfied = std::llabs(s) <= static_cast<long long>(std::floor(rep.bound));
    return rep;
}

}  // namespace

CharSumReport weil_sum(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta,
                       int threads) {
    if (threads <= 0) threads = omp_get_max_threads();
    return weil_impl(ctx, mu, eta, threads);
}

CharSumReport weil_sum_serial(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta) {
    return weil_impl(ctx, mu, eta, 1);
}

long long linear_eta_sum(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta) {
    if (ctx.is_zero(mu)) throw std::invalid_argument("mu must be nonzero");
    std::uint64_t q = ctx.order_u64();
    FieldElement four = ctx.from_int(4);
    long long s = 0;
    for (std::uint64_t zi = 0; zi < q; ++zi) {
        FieldElement z = ctx.element_at_u64(zi);
        s += eta.at(ctx.add(ctx.mul(four, ctx.mul(ctx.sub(z, ctx.one()), mu)), ctx.one()));
    }
    return s;
}

std::optional<FieldElement> zeta_search(const FieldCtx& ctx, const FieldElement& mu,
                                        const EtaTable& eta) {
    std::uint64_t q = ctx.order_u64();
    FieldElement four = ctx.from_int(4);
    for (std::uint64_t zi = 0; zi < q; ++zi) {
        FieldElement z = ctx.element_at_u64(zi);
        if (eta.at(z) != -1) continue;
        FieldElement arg = ctx.add(ctx.mul(four, ctx.mul(ctx.sub(z, ctx.one()), mu)), ctx.one());
        if (eta.at(arg) == -1) return z;
    }
    return std::nullopt;
}

ZetaCount zeta_valid_count(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta) {
    std::uint64_t q = ctx.order_u64();
    FieldElement four = ctx.from_int(4);
    ZetaCount out;
    long long S = 0;
    for (std::uint64_t zi = 0; zi < q; ++zi) {
        FieldElement z = ctx.element_at_u64(zi);
        FieldElement arg = ctx.add(ctx.mul(four, ctx.mul(ctx.sub(z, ctx.one()), mu)), ctx.one());
        int ez = eta.at(z);
        int ea = eta.at(arg);
        S += eta.at(ctx.mul(arg, z));
        if (ez == -1 && ea == -1) ++out.tally;
    }
    out.four_tally_minus = 4 * static_cast<long long>(out.tally) -
                           (static_cast<long long>(q) + S);
    return out;
}

std::vector<FieldElement> mu_q1_roots_of_unity(const FieldCtx& ctx, const Big& e) {
    if (sgn(e) <= 0) throw std::invalid_argument("exponent must be positive");
    if (!fits_u64(e) || to_u64(e) > (1ull << 20))
        throw std::domain_error("exponent too large");
    unsigned n = static_cast<unsigned>(to_u64(e));
    std::vector<FieldElement> coeffs(n + 1, ctx.zero());
    coeffs[0] = ctx.one();  // X^e + 1
    coeffs[n] = ctx.one();
    return roots_in_field(make_poly(ctx, std::move(coeffs)));
}

}  // namespace pptri
