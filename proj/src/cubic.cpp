#include "pptri/cubic.hpp"

namespace pptri {
namespace {

// radicand under the inner square root of the D expression
FieldElement radicand(const FieldCtx& F, const FieldElement& zeta, const FieldElement& mu,
                      const FieldElement& T) {
    auto n = [&](long long v) { return F.from_int(v); };
    FieldElement w = F.mul(T, T);
    FieldElement zm1 = F.sub(zeta, F.one());
    FieldElement z2 = F.mul(zeta, zeta);
    // -48 w^2 + 3 w (6623 z^2 - 16 mu^2 (z-1)^2 + 1160 mu (z-1) z) - 48 z (4mu - 4mu z + z)^3
    FieldElement t1 = F.mul(n(-48), F.mul(w, w));
    FieldElement inner = F.mul(n(6623), z2);
    inner = F.sub(inner, F.mul(n(16), F.mul(F.mul(mu, mu), F.mul(zm1, zm1))));
    inner = F.add(inner, F.mul(n(1160), F.mul(mu, F.mul(zm1, zeta))));
    FieldElement t2 = F.mul(n(3), F.mul(w, inner));
    FieldElement cubein = F.add(F.sub(F.mul(n(4), mu), F.mul(n(4), F.mul(mu, zeta))), zeta);
    FieldElement t3 = F.mul(n(-48), F.mul(zeta, F.mul(cubein, F.mul(cubein, cubein))));
    return F.add(F.add(t1, t2), t3);
}

FieldElement c1_of(const FieldCtx& F, const FieldElement& zeta, const FieldElement& mu,
                   const FieldElement& T) {
    auto n = [&](long long v) { return F.from_int(v); };
    FieldElement w = F.mul(T, T);
    // (w - 18 z (4 mu (z-1) + 47 z)) / z^3
    FieldElement inner = F.add(F.mul(n(4), F.mul(mu, F.sub(zeta, F.one()))), F.mul(n(47), zeta));
    FieldElement num = F.sub(w, F.mul(n(18), F.mul(zeta, inner)));
    return F.div(num, F.pow(zeta, 3ll));
}

}  // namespace

std::array<FieldElement, 4> gamma_cubic_coeffs(const FieldCtx& W, const FieldElement& zeta,
                                               const FieldElement& mu, const FieldElement& T) {
    auto quarter = W.inv(W.from_int(4));
    // zeta x^3 - (T/4) x^2 - ((1-4mu)/4 zeta + mu) x + T
    FieldElement c3 = zeta;
    FieldElement c2 = W.neg(W.mul(T, quarter));
    FieldElement c1 = W.neg(W.add(
        W.mul(W.mul(W.sub(W.one(), W.mul(W.from_int(4), mu)), quarter), zeta), mu));
    FieldElement c0 = T;
    return {c3, c2, c1, c0};
}

std::array<FieldElement, 3> cardano_triple_for_branch(const FieldCtx& W, const FieldElement& zeta,
                                                      const FieldElement& mu, const FieldElement& T,
                                                      const FieldElement& D) {
    auto n = [&](long long v) { return W.from_int(v); };
    auto s3pair = sqrt_of(W, n(-3));
    if (!s3pair) throw CardanoError("sqrt(-3) is missing from the working field");
    FieldElement s = s3pair->first;
    FieldElement w = W.mul(T, T);
    FieldElement z2 = W.mul(zeta, zeta);
    FieldElement inv24 = W.inv(n(24));

    // A1 = 12 z (4 mu (z-1) - z) - w
    FieldElement A1 = W.sub(
        W.mul(n(12), W.mul(zeta, W.sub(W.mul(n(4), W.mul(mu, W.sub(zeta, W.one()))), zeta))), w);
    FieldElement Dz2 = W.mul(D, z2);
    FieldElement twoT_z = W.div(W.mul(n(2), T), zeta);

    FieldElement g1 = W.mul(inv24, W.add(W.sub(W.mul(W.sub(W.one(), s), W.div(A1, Dz2)),
                                               W.mul(W.add(W.one(), s), D)),
                                         twoT_z));
    FieldElement g2 = W.mul(inv24, W.add(W.sub(W.mul(W.add(W.one(), s), W.div(A1, Dz2)),
                                               W.mul(W.sub(W.one(), s), D)),
                                         twoT_z));
    // gamma3 = (z (z (D^2 - 48 mu + 12) + D T + 48 mu) + w) / (12 D z^2)
    FieldElement inner = W.add(W.sub(W.mul(D, D), W.mul(n(48), mu)), n(12));
    FieldElement num3 = W.add(
        W.mul(zeta, W.add(W.add(W.mul(zeta, inner), W.mul(D, T)), W.mul(n(48), mu))), w);
    FieldElement g3 = W.div(num3, W.mul(n(12), Dz2));

    // cross-check against the a2/a3 triple form
    FieldElement theta = W.div(W.add(W.one(), s), W.sub(W.one(), s));
    FieldElement a2 = W.div(W.neg(A1), z2);
    FieldElement a3 = W.div(T, zeta);
    FieldElement th2 = W.mul(theta, theta);
    FieldElement inv12 = W.inv(n(12));
    FieldElement h1 = W.mul(inv12, W.add(W.add(W.mul(th2, D), W.mul(theta, W.div(a2, D))), a3));
    FieldElement h2 = W.mul(inv12, W.add(W.add(W.mul(theta, D), W.mul(th2, W.div(a2, D))), a3));
    FieldElement h3 = W.mul(inv12, W.add(W.add(D, W.div(a2, D)), a3));
    if (g1 != h1 || g2 != h2 || g3 != h3)
        throw CardanoError("closed-form presentations disagree");
    return {g1, g2, g3};
}

CardanoTriple cardano_roots(const FieldCtx& W, const FieldElement& zeta, const FieldElement& mu,
                            const FieldElement& T) {
    if (W.char_p() <= 3) throw std::domain_error("cardano form needs characteristic > 3");
    if (W.degree() % 2) throw CardanoError("working field must contain F_{p^2}");
    if (W.is_zero(zeta)) throw std::invalid_argument("zeta must be nonzero");

    auto s3pair = sqrt_of(W, W.from_int(-3));
    if (!s3pair) throw CardanoError("sqrt(-3) is missing from the working field");
    FieldElement s = s3pair->first;
    FieldElement theta = W.div(W.add(W.one(), s), W.sub(W.one(), s));
    {
        FieldElement chk = W.add(W.add(W.mul(theta, theta), theta), W.one());
        if (!W.is_zero(chk)) throw CardanoError("theta^2 + theta + 1 != 0");
    }

    FieldElement R = radicand(W, zeta, mu, T);
    auto rpair = sqrt_of(W, R);
    if (!rpair) throw CardanoError("inner square root is missing from the working field");
    FieldElement r = rpair->first;

    FieldElement c1v = c1_of(W, zeta, mu, T);
    FieldElement sqrt_d1 = W.div(W.mul(W.from_int(6), r), W.mul(zeta, zeta));
    FieldElement d1v = W.mul(sqrt_d1, sqrt_d1);
    FieldElement D3 = W.add(W.mul(T, c1v), sqrt_d1);
    if (W.is_zero(D3)) throw CardanoError("D = 0: the closed forms are undefined");

    auto cubes = nth_roots_of(W, 3, D3);
    if (cubes.empty()) throw CardanoError("cube root of D^3 is missing from the working field");
    FieldElement D = cubes.front();

    CardanoTriple out;
    out.gamma = cardano_triple_for_branch(W, zeta, mu, T, D);
    out.data = CardanoData{theta, D, W.mul(T, T), c1v, d1v, sqrt_d1};
    // D^3 must recompute to the radicand expression
    if (W.pow(D, 3ll) != D3) throw CardanoError("cube root verification failed");
    return out;
}

std::vector<FieldElement> cardano_cube_branches(const FieldCtx& W, const CardanoData& data,
                                                const FieldElement& T) {
    FieldElement D3 = W.add(W.mul(T, data.c1), data.sqrt_d1);
    return nth_roots_of(W, 3, D3);
}

std::optional<CubicWorkspace> make_cubic_workspace(const QuadExtCtx& src, const QuadElement& zeta,
                                                   const QuadElement& mu, const QuadElement& T) {
    std::uint32_t p = src.char_p();
    if (p <= 3) throw std::domain_error("cardano form needs characteristic > 3");
    unsigned base_dim = src.fp_dim();
    const FieldCtx& flat = field_cache(p, base_dim);
    const auto& iso = quad_flat_iso_cache(src, flat);
    FieldElement z0 = iso.fwd(zeta), m0 = iso.fwd(mu), t0 = iso.fwd(T);
    for (unsigned e : {1u, 2u, 3u, 6u}) {
        const FieldCtx& WW = e == 1 ? flat : field_cache(p, base_dim * e);
        FieldElement z = z0, m = m0, t = t0;
        if (e > 1) {
            const auto& emb = embedding_cache(flat, WW);
            z = emb.map(z0);
            m = emb.map(m0);
            t = emb.map(t0);
        }
        // every radical must exist: sqrt(-3), sqrt(R), cube root of D^3
        if (WW.quad_char(WW.from_int(-3)) == -1) continue;
        FieldElement R = radicand(WW, z, m, t);
        if (WW.quad_char(R) == -1) continue;
        auto rpair = sqrt_of(WW, R);
        FieldElement sqrt_d1 = WW.div(WW.mul(WW.from_int(6), rpair->first), WW.mul(z, z));
        FieldElement D3 = WW.add(WW.mul(t, c1_of(WW, z, m, t)), sqrt_d1);
        if (WW.is_zero(D3)) throw CardanoError("D = 0: the closed forms are undefined");
        Big g3 = (WW.order() - 1) % 3 == 0 ? Big(3) : Big(1);
        if (g3 == 3 && WW.pow(D3, (WW.order() - 1) / 3) != WW.one()) continue;
        return CubicWorkspace{&WW, e, z, m, t};
    }
    return std::nullopt;
}

}  // namespace pptri
