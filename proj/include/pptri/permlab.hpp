#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pptri/quadext.hpp"

namespace pptri {

// f_{alpha,beta}(X) = X^{q(p-1)+1} + alpha X^{pq} + beta X^{q+p-1} over F_{q^2}
struct TrinomialParams {
    const QuadExtCtx* ctx2 = nullptr;
    FieldElement alpha;  // in F_q^*
    FieldElement beta;   // in F_q, default 1
};

TrinomialParams make_trinomial(const QuadExtCtx& ctx2, const FieldElement& alpha);
TrinomialParams make_trinomial(const QuadExtCtx& ctx2, const FieldElement& alpha,
                               const FieldElement& beta);

QuadElement eval_trinomial(const TrinomialParams& params, const QuadElement& x);

// alpha X^p + Tr(X^{q+p-1}); the q-th power of this equals f for beta = 1
QuadElement eval_trinomial_transformed(const TrinomialParams& params, const QuadElement& x);

// mu_{q+1} = {1} u {(t+i)/(t-i) : t in F_q}, enumerated in that order
class MuGroup {
public:
    explicit MuGroup(const QuadExtCtx& ctx2) : ctx2_(&ctx2) {}
    const QuadExtCtx& ctx() const { return *ctx2_; }
    std::uint64_t size() const;
    QuadElement at(std::uint64_t idx) const;
    // X with X^{q-1} = at(idx); pairs f-collisions back to concrete inputs
    QuadElement lift(std::uint64_t idx) const;

private:
    const QuadExtCtx* ctx2_;
};

struct GAlphaValue {
    QuadElement value;
    bool denom_zero = false;  // value is the flagged 0
};

// g_alpha(x) = (x + alpha + x^{p-1}) / (x^{p-1} + alpha x^p + x) on mu_{q+1}
GAlphaValue g_alpha(const QuadExtCtx& ctx2, const FieldElement& alpha, const QuadElement& x);

enum class PermMethod { Exhaustive, MuCollision };

struct PermReport {
    std::uint32_t p = 0;
    unsigned k = 0;
    FieldElement alpha;
    bool is_permutation = false;
    PermMethod method = PermMethod::Exhaustive;
    std::optional<std::pair<QuadElement, QuadElement>> witness;  // f(x) = f(y), x != y
    double elapsed_ms = 0.0;
};

// Marks every image in a q^2-bit table; witness is the smallest colliding
// pair in canonical element order.
PermReport is_permutation_exhaustive(const TrinomialParams& params,
                                     std::uint64_t budget_cap = (1ull << 28), int threads = 0);
PermReport is_permutation_exhaustive_serial(const TrinomialParams& params,
                                            std::uint64_t budget_cap = (1ull << 28));

// Scans g_alpha over mu_{q+1} (O(q)); any repeated value or zero denominator
// certifies non-injectivity, and the certificate is lifted to an f-collision.
PermReport mu_collision_search(const QuadExtCtx& ctx2, const FieldElement& alpha);

bool verify_witness(const TrinomialParams& params,
                    const std::pair<QuadElement, QuadElement>& w);

}  // namespace pptri
