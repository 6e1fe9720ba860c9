#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pptri/bipoly.hpp"
#include "pptri/quadext.hpp"

namespace pptri {

// F_alpha(X,Y) and F1 = F_alpha/(X-Y) over F_{q^2}
struct CurveSpec {
    const QuadExtCtx* ctx2 = nullptr;
    FieldElement alpha;  // in F_q^*, alpha != -2 for the curve argument
    BiPoly<QuadExtCtx> F;
    BiPoly<QuadExtCtx> F1;
};

CurveSpec build_F_alpha(const QuadExtCtx& ctx2, const FieldElement& alpha);

// Moebius-substituted model of D_alpha over F_q: substitute X -> (X+i)/(X-i),
// Y -> (Y+i)/(Y-i) into F_alpha, clear denominators fully, remove the (Y-X)
// factor, normalize the leading coefficient and reinterpret over F_q.
BiPoly<FieldCtx> build_D_model(const CurveSpec& spec);

struct PointCountReport {
    Big q;
    FieldElement alpha;
    std::uint64_t affine_count = 0;    // all affine F_q-points of the model
    std::uint64_t excluded_count = 0;  // of which on the diagonal X = Y
    double lower_bound = 0.0;          // q+1 - (d-1)(d-2) sqrt(q) - 2(p-1)
    double upper_bound = 0.0;          // q+1 + (d-1)(d-2) sqrt(q)
    bool within_bounds = false;
};

PointCountReport count_points_fiberwise(const FieldCtx& Fq, const BiPoly<FieldCtx>& G,
                                        const FieldElement& alpha, std::uint32_t p,
                                        int threads = 0);
PointCountReport count_points_fiberwise_serial(const FieldCtx& Fq, const BiPoly<FieldCtx>& G,
                                               const FieldElement& alpha, std::uint32_t p);

// double-loop oracle for small q
std::uint64_t count_points_bruteforce(const FieldCtx& Fq, const BiPoly<FieldCtx>& G);

// first off-diagonal F_q-point of the model, canonical fiber order
std::optional<std::pair<FieldElement, FieldElement>> find_offdiag_point(const FieldCtx& Fq,
                                                                        const BiPoly<FieldCtx>& G);

// map an off-diagonal model point back to a g_alpha collision on mu_{q+1}
std::optional<std::pair<QuadElement, QuadElement>> map_back_to_mu_collision(
    const CurveSpec& spec, const std::pair<FieldElement, FieldElement>& pt);

struct SingularDegreeReport {
    unsigned rel_degree = 1;  // probe field F_{q^m}
    std::uint64_t xy_zero_singulars = 0;             // singular-system points on XY = 0
    std::vector<std::pair<FieldElement, FieldElement>> type3;  // X^{p-2}=Y^{p-2}=1, X != Y
    std::vector<FieldElement> diag_multiple_roots;   // x = y with F1(x,x) vanishing to order >= 2
};

struct SingularProbeReport {
    std::vector<SingularDegreeReport> per_degree;
};

SingularProbeReport singular_probe(const CurveSpec& spec, const std::vector<unsigned>& degrees);

// default probe degrees over F_q: enough to split X^{p-2} = 1, capped at 6
std::vector<unsigned> default_singular_degrees(std::uint32_t p, unsigned k);

}  // namespace pptri
