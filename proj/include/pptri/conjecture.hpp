#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptri/permlab.hpp"

namespace pptri {

struct VerdictConfig {
    std::uint64_t dispatch_budget = (1ull << 20);  // exhaustive when q^2 <= this
    std::uint64_t exhaustive_cap = (1ull << 28);   // hard precondition of the scanner
    int threads = 0;
};

PermReport verdict(std::uint32_t p, unsigned k, const FieldElement& alpha,
                   const VerdictConfig& cfg = {});

// all alpha in F_q^* for each k, sorted by (k, alpha index); witnesses verified
std::vector<PermReport> conjecture_table(std::uint32_t p, const std::vector<unsigned>& ks,
                                         const VerdictConfig& cfg = {});

// beta with beta^p = alpha, and B = (h^q - h)/beta
FieldElement beta_from_alpha(const QuadExtCtx& ctx2, const FieldElement& alpha);
QuadElement build_B(const QuadExtCtx& ctx2, const QuadElement& h, const FieldElement& beta);

// gamma^{p+2} - (1-4mu)/4 gamma^p - T/2 gamma^2 - mu gamma + T/8 = 0 with
// T = (1-2mu) t, t = ((h^q + h)/(h^q - h))^p; solutions with gamma^q = -gamma
// are in bijection with the solutions of alpha X^p + Tr(X^{q+p-1}) = h^p via
// X = B(gamma - 1/2)
struct GammaEquation {
    const QuadExtCtx* ctx2 = nullptr;
    FieldElement alpha;
    QuadElement h, B, mu, t, T;
};

GammaEquation make_gamma_equation(const QuadExtCtx& ctx2, const FieldElement& alpha,
                                  const QuadElement& h);

// admissible gamma (gamma^{p^k} = -gamma), via the per-zeta cubic reduction
std::vector<QuadElement> gamma_roots(const GammaEquation& eq);

// solution set of alpha X^p + Tr(X^{q+p-1}) = h^p
std::vector<QuadElement> gamma_root_pipeline(const QuadExtCtx& ctx2, const FieldElement& alpha,
                                             const QuadElement& h);

// brute-force preimages of the transformed trinomial (oracle)
std::vector<QuadElement> brute_preimages_transformed(const QuadExtCtx& ctx2,
                                                     const FieldElement& alpha,
                                                     const QuadElement& value);

// h != 0 with T = (1-2mu) t(h) equal to a prescribed antisymmetric target:
// T^p = -T != 0 for k = 3 (omega = T^2 in F_p), T^{p^2} = -T != 0 for k = 2
struct HConstruction {
    QuadElement h, T, t, a, ell0, h0;
    unsigned kernel_dim = 0;
};

// target_skip selects the (skip+1)-th valid T target in canonical order;
// throws when the targets are exhausted
HConstruction find_h_antisymmetric_T(const QuadExtCtx& ctx2, const QuadElement& mu,
                                     unsigned target_skip = 0);

struct CensusMask {
    bool eta_zeta_neg = true;  // eta(zeta) = -1
    bool eta_arg_neg = true;   // eta(4(zeta-1)mu + 1) = -1
    bool mu_nonzero = false;
    bool mu_not_in_fp = true;  // mu outside F_p
};

struct CensusReport {
    std::uint32_t p = 0;
    std::uint64_t total = 0;       // |F_{p^3}^*|
    std::uint64_t qualifying = 0;  // distinct mu passing the mask
    std::uint64_t zeta_count = 0;  // zeta with norm -1
    std::uint64_t roots_per_zeta = 0;
    std::uint64_t max_shared_mu = 0;  // over pairs of distinct zeta
    CensusMask mask;
};

CensusReport mu_census(std::uint32_t p, const CensusMask& mask = {}, bool compute_overlap = true);

struct K2UniqueResult {
    QuadElement u, X;
    bool via_closed_form = false;  // false when h in F_{p^2} (u = 0 branch)
    bool degenerate_branch_seen = false;
};

// alpha = -1, k = 2: the unique solution of the transformed equation = h^p
K2UniqueResult k2_uniqueness(const QuadExtCtx& ctx2, const QuadElement& h);

enum class K2CertKind { Collision, MissedValue };

struct K2Witness {
    K2CertKind kind = K2CertKind::Collision;
    QuadElement h;
    QuadElement value;            // h^p, the transformed target
    QuadElement X1, X2;           // collision case
    QuadElement gamma1, gamma2;   // the admissible gammas behind X1, X2
    std::uint64_t h_candidates_tried = 0;
};

K2Witness k2_nonperm_witness(const QuadExtCtx& ctx2, const FieldElement& alpha,
                             std::uint64_t budget = 10000);

}  // namespace pptri
