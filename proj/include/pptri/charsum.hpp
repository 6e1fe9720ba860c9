#pragma once

#include <optional>
#include <vector>

#include "pptri/fieldctx.hpp"

namespace pptri {

// index -> eta(element), precomputed from the table of squares
struct EtaTable {
    const FieldCtx* ctx = nullptr;
    std::vector<std::int8_t> v;

    int at(const FieldElement& x) const { return v[ctx->index_of_u64(x)]; }
};

EtaTable build_eta_table(const FieldCtx& ctx, int threads = 0);

struct CharSumReport {
    Big q;
    FieldElement mu;
    long long sum = 0;       // S(mu) = sum_zeta eta((4(zeta-1)mu + 1) zeta)
    double bound = 0.0;      // sqrt(q)
    bool satisfied = false;  // |sum| <= sqrt(q)
};

CharSumReport weil_sum(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta,
                       int threads = 0);
CharSumReport weil_sum_serial(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta);

// sum_zeta eta(4(zeta-1)mu + 1); zero for every mu != 0
long long linear_eta_sum(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta);

// first zeta (canonical order) with eta(zeta) = -1 and eta(4(zeta-1)mu+1) = -1
std::optional<FieldElement> zeta_search(const FieldCtx& ctx, const FieldElement& mu,
                                        const EtaTable& eta);

struct ZetaCount {
    std::uint64_t tally = 0;          // exact count of valid zeta
    long long four_tally_minus = 0;   // 4*tally - (q + S); bounded by the eta = 0 terms
};

ZetaCount zeta_valid_count(const FieldCtx& ctx, const FieldElement& mu, const EtaTable& eta);

// all zeta with zeta^e = -1
std::vector<FieldElement> mu_q1_roots_of_unity(const FieldCtx& ctx, const Big& e);

}  // namespace pptri
