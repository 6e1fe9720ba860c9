#include "pptri/permlab.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>

namespace pptri {
namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// batch inversion, Montgomery style; zeros stay zero
void batch_invert(const QuadExtCtx& F, std::vector<QuadElement>& v) {
    std::vector<std::size_t> nz;
    nz.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!F.is_zero(v[i])) nz.push_back(i);
    if (nz.empty()) return;
    std::vector<QuadElement> pref(nz.size(), F.one());
    pref[0] = v[nz[0]];
    for (std::size_t i = 1; i < nz.size(); ++i) pref[i] = F.mul(pref[i - 1], v[nz[i]]);
    QuadElement run = F.inv(pref.back());
    for (std::size_t i = nz.size(); i-- > 0;) {
        QuadElement before = i == 0 ? F.one() : pref[i - 1];
        QuadElement old = v[nz[i]];
        v[nz[i]] = F.mul(run, before);
        run = F.mul(run, old);
    }
}

struct AtomicBitset {
    std::vector<std::atomic<std::uint64_t>> w;
    explicit AtomicBitset(std::uint64_t bits) : w((bits + 63) / 64) {
        for (auto& x : w) x.store(0, std::memory_order_relaxed);
    }
    // returns previous value of the bit
    bool test_and_set(std::uint64_t i) {
        std::uint64_t mask = 1ull << (i & 63);
        return (w[i >> 6].fetch_or(mask, std::memory_order_relaxed) & mask) != 0;
    }
    bool test(std::uint64_t i) const {
        return (w[i >> 6].load(std::memory_order_relaxed) >> (i & 63)) & 1;
    }
};

}  // namespace

TrinomialParams make_trinomial(const QuadExtCtx& ctx2, const FieldElement& alpha) {
    return make_trinomial(ctx2, alpha, ctx2.base().one());
}

TrinomialParams make_trinomial(const QuadExtCtx& ctx2, const FieldElement& alpha,
                               const FieldElement& beta) {
    require_same_ctx(alpha.ctx, &ctx2.base());
    require_same_ctx(beta.ctx, &ctx2.base());
    if (ctx2.base().is_zero(ctx2.base().mul(alpha, beta)))
        throw std::invalid_argument("trinomial family needs alpha*beta in F_q^*");
    return {&ctx2, alpha, beta};
}

QuadElement eval_trinomial(const TrinomialParams& params, const QuadElement& x) {
    const QuadExtCtx& F = *params.ctx2;
    require_same_ctx(x.ctx, &F);
    long long p = F.char_p();
    QuadElement c = F.conj(x);  // x^q
    QuadElement xp1 = F.pow(x, p - 1);
    QuadElement cp1 = F.pow(c, p - 1);
    QuadElement a = F.lift(params.alpha), b = F.lift(params.beta);
    // c^{p-1} x + alpha c^p + beta c x^{p-1}
    QuadElement r = F.mul(cp1, x);
    r = F.add(r, F.mul(a, F.mul(cp1, c)));
    r = F.add(r, F.mul(b, F.mul(c, xp1)));
    return r;
}

QuadElement eval_trinomial_transformed(const TrinomialParams& params, const QuadElement& x) {
    const QuadExtCtx& F = *params.ctx2;
    require_same_ctx(x.ctx, &F);
    if (params.beta != F.base().one())
        throw std::invalid_argument("transformed form is defined for beta = 1");
    long long p = F.char_p();
    QuadElement c = F.conj(x);
    QuadElement t = F.mul(c, F.pow(x, p - 1));  // x^{q+p-1}
    return F.add(F.mul(F.lift(params.alpha), F.pow(x, p)), F.rel_trace(t));
}

std::uint64_t MuGroup::size() const {
    return ctx2_->base().order_u64() + 1;
}

QuadElement MuGroup::at(std::uint64_t idx) const {
    const QuadExtCtx& F = *ctx2_;
    if (idx == 0) return F.one();
    FieldElement t = F.base().element_at_u64(idx - 1);
    QuadElement tpi = F.add(F.lift(t), F.i());
    QuadElement tmi = F.sub(F.lift(t), F.i());
    return F.div(tpi, tmi);
}

QuadElement MuGroup::lift(std::uint64_t idx) const {
    const QuadExtCtx& F = *ctx2_;
    if (idx == 0) return F.one();
    FieldElement t = F.base().element_at_u64(idx - 1);
    // ((t+i)^{-1})^{q-1} = (t-i)/(t+i) inverted = (t+i)/(t-i)
    return F.inv(F.add(F.lift(t), F.i()));
}

GAlphaValue g_alpha(const QuadExtCtx& ctx2, const FieldElement& alpha, const QuadElement& x) {
    const QuadExtCtx& F = ctx2;
    long long p = F.char_p();
    QuadElement a = F.lift(alpha);
    QuadElement xp1 = F.pow(x, p - 1);
    QuadElement xp = F.mul(xp1, x);
    QuadElement num = F.add(F.add(x, a), xp1);
    QuadElement den = F.add(F.add(xp1, F.mul(a, xp)), x);
    if (F.is_zero(den)) return {F.zero(), true};
    return {F.div(num, den), false};
}

bool verify_witness(const TrinomialParams& params,
                    const std::pair<QuadElement, QuadElement>& w) {
    if (w.first == w.second) return false;
    return eval_trinomial(params, w.first) == eval_trinomial(params, w.second);
}

namespace {

PermReport exhaustive_impl(const TrinomialParams& params, std::uint64_t budget_cap, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    const QuadExtCtx& F = *params.ctx2;
    if (!F.order_fits_u64() || F.order_u64() > budget_cap)
        throw std::domain_error("exhaustive scan budget exceeded; use the mu-based method");
    std::uint64_t n = F.order_u64();
    if (threads <= 0) threads = omp_get_max_threads();

    PermReport rep;
    rep.p = F.char_p();
    rep.k = F.base_degree();
    rep.alpha = params.alpha;
    rep.method = PermMethod::Exhaustive;

    AtomicBitset seen(n), dup(n);
    std::atomic<bool> any_dup{false};
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
        auto x = F.element_at_u64(static_cast<std::uint64_t>(ii));
        std::uint64_t img = F.index_of_u64(eval_trinomial(params, x));
        if (seen.test_and_set(img)) {
            dup.test_and_set(img);
            any_dup.store(true, std::memory_order_relaxed);
        }
    }
    if (!any_dup.load()) {
        rep.is_permutation = true;
        rep.elapsed_ms = ms_since(t0);
        return rep;
    }
    // smallest x whose image repeats, then its smallest partner
    std::uint64_t first = n;
#pragma omp parallel num_threads(threads)
    {
        std::uint64_t local = n;
#pragma omp for schedule(static) nowait
        for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
            std::uint64_t u = static_cast<std::uint64_t>(ii);
            if (u < local &&
                dup.test(F.index_of_u64(eval_trinomial(params, F.element_at_u64(u)))))
                local = u;
        }
#pragma omp critical
        first = std::min(first, local);
    }
    std::uint64_t target = F.index_of_u64(eval_trinomial(params, F.element_at_u64(first)));
    std::uint64_t partner = n;
#pragma omp parallel num_threads(threads)
    {
        std::uint64_t local = n;
#pragma omp for schedule(static) nowait
        for (long long ii = static_cast<long long>(first) + 1; ii < static_cast<long long>(n); ++ii) {
            std::uint64_t u = static_cast<std::uint64_t>(ii);
            if (u < local &&
                F.index_of_u64(eval_trinomial(params, F.element_at_u64(u))) == target)
                local = u;
        }
#pragma omp critical
        partner = std::min(partner, local);
    }
    if (partner >= n) throw std::runtime_error("collision pass lost its partner");
    rep.is_permutation = false;
    rep.witness = std::make_pair(F.element_at_u64(first), F.element_at_u64(partner));
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

}  // namespace

PermReport is_permutation_exhaustive(const TrinomialParams& params, std::uint64_t budget_cap,
                                     int threads) {
    return exhaustive_impl(params, budget_cap, threads);
}

PermReport is_permutation_exhaustive_serial(const TrinomialParams& params,
                                            std::uint64_t budget_cap) {
    return exhaustive_impl(params, budget_cap, 1);
}

PermReport mu_collision_search(const QuadExtCtx& ctx2, const FieldElement& alpha) {
    auto t0 = std::chrono::steady_clock::now();
    const QuadExtCtx& F = ctx2;
    const FieldCtx& Fq = F.base();
    require_same_ctx(alpha.ctx, &Fq);
    if (!F.order_fits_u64())
        throw std::domain_error("mu scan needs q^2 within 64 bits");

    PermReport rep;
    rep.p = F.char_p();
    rep.k = F.base_degree();
    rep.alpha = alpha;
    rep.method = PermMethod::MuCollision;

    std::uint64_t p = F.char_p();
    std::uint64_t q = Fq.order_u64();
    std::uint64_t r_exp = q + p - 1;
    // The reduction to mu_{q+1} needs gcd(q+p-1, q-1) = 1, which holds since
    // q+p-1 = p mod (q-1) and gcd(p, q-1) = 1.
    if (gcd_u64(r_exp, q - 1) != 1)
        throw std::runtime_error("mu reduction precondition gcd(q+p-1, q-1) = 1 failed");

    MuGroup mu(F);
    std::uint64_t n = mu.size();
    // evaluate g_alpha over mu with one batched inversion of the denominators
    std::vector<QuadElement> nums, dens;
    nums.reserve(n);
    dens.reserve(n);
    QuadElement a = F.lift(alpha);
    for (std::uint64_t j = 0; j < n; ++j) {
        QuadElement x = mu.at(j);
        QuadElement xp1 = F.pow(x, static_cast<long long>(p - 1));
        QuadElement xp = F.mul(xp1, x);
        nums.push_back(F.add(F.add(x, a), xp1));
        dens.push_back(F.add(F.add(xp1, F.mul(a, xp)), x));
    }
    std::vector<QuadElement> den_inv = dens;
    batch_invert(F, den_inv);

    std::uint64_t first_flagged = n;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> val_idx;  // (g value index, mu index)
    val_idx.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        if (F.is_zero(dens[j])) {
            if (first_flagged == n) first_flagged = j;
            continue;
        }
        val_idx.emplace_back(F.index_of_u64(F.mul(nums[j], den_inv[j])), j);
    }

    const TrinomialParams params = make_trinomial(F, alpha);
    if (first_flagged < n) {
        // zero denominator: h vanishes on mu, so f(lift(x)) = 0 = f(0)
        QuadElement lifted = mu.lift(first_flagged);
        rep.is_permutation = false;
        rep.witness = std::make_pair(F.zero(), lifted);
        if (!verify_witness(params, *rep.witness))
            throw std::runtime_error("flagged-zero witness failed verification");
        rep.elapsed_ms = ms_since(t0);
        return rep;
    }

    std::sort(val_idx.begin(), val_idx.end());
    std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
    for (std::size_t i = 1; i < val_idx.size(); ++i) {
        if (val_idx[i].first != val_idx[i - 1].first) continue;
        auto cand = std::make_pair(val_idx[i - 1].second, val_idx[i].second);
        if (!best || cand < *best) best = cand;
    }
    if (!best) {
        rep.is_permutation = true;
        rep.elapsed_ms = ms_since(t0);
        return rep;
    }

    // Lift the mu-collision g(x1) = g(x2) to an f-collision: for u in F_q^*,
    // f(u X) = u^p f(X) and (u X)^{q-1} = X^{q-1}, so scaling X2 by the p-th
    // root of f(X1)/f(X2) aligns the values.
    QuadElement X1 = mu.lift(best->first);
    QuadElement X2 = mu.lift(best->second);
    QuadElement f1 = eval_trinomial(params, X1);
    QuadElement f2 = eval_trinomial(params, X2);
    if (f1 != f2) {
        QuadElement c = F.div(f1, f2);
        if (!F.in_base(c)) throw std::runtime_error("collision lift: ratio not in F_q");
        FieldElement u = Fq.frobenius(c.re, Fq.degree() - 1);  // u^p = c
        X2 = F.mul(F.lift(u), X2);
        f2 = eval_trinomial(params, X2);
        if (f1 != f2) throw std::runtime_error("collision lift failed");
    }
    if (F.less(X2, X1)) std::swap(X1, X2);
    rep.is_permutation = false;
    rep.witness = std::make_pair(X1, X2);
    if (!verify_witness(params, *rep.witness))
        throw std::runtime_error("mu witness failed verification");
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

}  // namespace pptri
