#pragma once

#include <vector>

#include "pptri/fieldctx.hpp"
#include "pptri/quadext.hpp"

namespace pptri {

// F_{p^a} -> F_{p^b} with a | b, sending the residue class of X to the
// canonically smallest root of the source modulus in the target field.
struct FlatEmbedding {
    const FieldCtx* src = nullptr;
    const FieldCtx* dst = nullptr;
    std::vector<FieldElement> pow_r;  // r^0 .. r^{a-1}

    FieldElement map(const FieldElement& x) const;
};

FlatEmbedding make_embedding(const FieldCtx& src, const FieldCtx& dst);

// Field isomorphism F_q(i) -> F_{p^{2k}} (flat), with inverse.
struct QuadFlatIso {
    const QuadExtCtx* src = nullptr;
    const FieldCtx* dst = nullptr;
    FlatEmbedding base_emb;
    FieldElement j;                   // image of i
    std::vector<std::uint32_t> inv_mat;  // 2k x 2k over F_p, maps dst coeffs to pair coeffs

    FieldElement fwd(const QuadElement& x) const;
    QuadElement bwd(const FieldElement& y) const;
};

QuadFlatIso make_quad_flat_iso(const QuadExtCtx& src, const FieldCtx& dst);

// memoized variants for registry-owned contexts
const FlatEmbedding& embedding_cache(const FieldCtx& src, const FieldCtx& dst);
const QuadFlatIso& quad_flat_iso_cache(const QuadExtCtx& src, const FieldCtx& dst);

// Gaussian kernel basis of an F_p matrix (column-major, rows x cols).
std::vector<std::vector<std::uint32_t>> fp_kernel_basis(std::vector<std::uint32_t> mat,
                                                        unsigned rows, unsigned cols,
                                                        std::uint32_t p);

// Solve M x = rhs over F_p (unique-solution use); throws if inconsistent.
std::vector<std::uint32_t> fp_solve(std::vector<std::uint32_t> mat, unsigned rows, unsigned cols,
                                    std::vector<std::uint32_t> rhs, std::uint32_t p);

}  // namespace pptri
