#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pptri/embed.hpp"
#include "pptri/poly.hpp"
#include "pptri/quadext.hpp"

namespace pptri {

// all roots of c3 X^3 + c2 X^2 + c1 X + c0 in the given field (gcd method)
template <class Ctx>
std::vector<typename Ctx::Element> cubic_roots(const Ctx& F,
                                               const std::array<typename Ctx::Element, 4>& c) {
    if (F.char_p() <= 3) throw std::domain_error("cubic solver needs characteristic > 3");
    if (F.is_zero(c[0])) throw std::invalid_argument("degenerate cubic: leading coefficient zero");
    return roots_in_field(make_poly(F, {c[3], c[2], c[1], c[0]}));
}

// root multiset of the same cubic, via repeated exact division
template <class Ctx>
std::vector<typename Ctx::Element> cubic_root_multiset(const Ctx& F,
                                                       const std::array<typename Ctx::Element, 4>& c) {
    auto f = make_poly(F, {c[3], c[2], c[1], c[0]});
    std::vector<typename Ctx::Element> out;
    for (const auto& r : roots_in_field(f)) {
        auto lin = make_poly(F, {F.neg(r), F.one()});
        while (true) {
            auto [q, rem] = poly_divrem(f, lin);
            if (!rem.is_zero()) break;
            out.push_back(r);
            f = q;
        }
    }
    std::sort(out.begin(), out.end(), [&F](const auto& a, const auto& b) { return F.less(a, b); });
    return out;
}

struct CardanoData {
    FieldElement theta;    // (1+sqrt(-3))/(1-sqrt(-3)), a primitive cube root of unity
    FieldElement D;        // chosen cube root of the radicand expression
    FieldElement omega;    // T^2
    FieldElement c1, d1;   // D^3 = T c1 + sqrt(d1)
    FieldElement sqrt_d1;  // the chosen branch
};

struct CardanoTriple {
    std::array<FieldElement, 3> gamma;
    CardanoData data;
};

struct CardanoError : std::runtime_error {
    explicit CardanoError(const std::string& what) : std::runtime_error(what) {}
};

// Closed-form roots of g(x) = zeta x^3 - T/4 x^2 - (1-4mu)/4 zeta x - mu x + T,
// evaluated in the working field W (must contain sqrt(-3), sqrt(d1) and a cube
// root of D^3). Throws CardanoError when D = 0 or a radical is missing.
CardanoTriple cardano_roots(const FieldCtx& W, const FieldElement& zeta, const FieldElement& mu,
                            const FieldElement& T);

// coefficient tuple of g as a cubic in x, for cross-validation in W
std::array<FieldElement, 4> gamma_cubic_coeffs(const FieldCtx& W, const FieldElement& zeta,
                                               const FieldElement& mu, const FieldElement& T);

// Flatten quadratic-tower inputs and find the smallest extension of F_{p^{2k}}
// (relative degree 1, 2, 3 or 6) that contains every radical the closed forms
// need. Returns nothing when even the degree-6 extension lacks a radical.
struct CubicWorkspace {
    const FieldCtx* work = nullptr;
    unsigned rel_degree = 1;
    FieldElement zeta, mu, T;
};

std::optional<CubicWorkspace> make_cubic_workspace(const QuadExtCtx& src, const QuadElement& zeta,
                                                   const QuadElement& mu, const QuadElement& T);

// all cube roots of D^3 and both sqrt branches, for branch-invariance checks
std::vector<FieldElement> cardano_cube_branches(const FieldCtx& W, const CardanoData& data,
                                                const FieldElement& T);

std::array<FieldElement, 3> cardano_triple_for_branch(const FieldCtx& W, const FieldElement& zeta,
                                                      const FieldElement& mu, const FieldElement& T,
                                                      const FieldElement& D);

}  // namespace pptri
