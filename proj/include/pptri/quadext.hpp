#pragma once

#include <string>
#include <vector>

#include "pptri/fieldctx.hpp"

namespace pptri {

class QuadExtCtx;

// a + b*i with a, b in F_q and i^2 = d (d a fixed nonresidue of F_q)
struct QuadElement {
    const QuadExtCtx* ctx = nullptr;
    FieldElement re, im;

    bool operator==(const QuadElement& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QuadElement& o) const { return !(*this == o); }
};

// F_{q^2} = F_q(i), q = p^k. The nonresidue d is the first one in the
// canonical enumeration of F_q, so the whole tower is determined by (p, k).
// i satisfies i^q = -i, which makes conjugation the q-Frobenius.
class QuadExtCtx {
public:
    using Element = QuadElement;

    QuadExtCtx(std::uint32_t p, unsigned k);

    const FieldCtx& base() const { return base_; }
    const FieldElement& nonresidue() const { return d_; }
    std::uint32_t char_p() const { return base_.char_p(); }
    unsigned base_degree() const { return base_.degree(); }
    unsigned fp_dim() const { return 2 * base_.degree(); }
    const Big& base_order() const { return base_.order(); }  // q
    const Big& order() const { return q2_; }                 // q^2
    bool order_fits_u64() const { return order_u64_ != 0; }
    std::uint64_t order_u64() const { return order_u64_; }

    Element zero() const;
    Element one() const;
    Element i() const;
    Element from_int(long long v) const;
    Element from_pair(const FieldElement& a, const FieldElement& b) const;
    Element lift(const FieldElement& a) const;  // a + 0*i
    Element element_at(const Big& index) const;
    Element element_at_u64(std::uint64_t index) const;
    Big index_of(const Element& x) const;
    std::uint64_t index_of_u64(const Element& x) const;

    bool is_zero(const Element& x) const;
    bool in_base(const Element& x) const { return base_.is_zero(x.im); }
    bool less(const Element& a, const Element& b) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;  // inv(0) = 0 by convention
    Element div(const Element& a, const Element& b) const;
    Element pow(const Element& a, const Big& e) const;
    Element pow(const Element& a, long long e) const;
    Element frobenius(const Element& x, unsigned e) const;  // x^{p^e}, e mod 2k
    Element conj(const Element& x) const;                   // x^q
    Element rel_trace(const Element& x) const;              // x^q + x
    Element rel_norm_to_subfield(const Element& x, unsigned d) const;  // d | 2k

    int quad_char(const Element& x) const;

    std::vector<std::uint32_t> to_fp_vec(const Element& x) const;  // re coeffs then im coeffs
    Element from_fp_vec(const std::vector<std::uint32_t>& v) const;

    std::string format(const Element& x) const;  // 2k comma-separated coefficients
    Element parse(const std::string& text) const;

    bool same_field(const QuadExtCtx& o) const {
        return base_.same_field(o.base_) && d_ == o.d_;
    }

private:
    FieldCtx base_;
    FieldElement d_;
    Big q2_;
    std::uint64_t order_u64_ = 0;
    std::vector<FieldElement> ipow_;  // i^{p^e} / i for e in [0, 2k)
};

const QuadExtCtx& quad_cache(std::uint32_t p, unsigned k);

inline void require_same_ctx(const QuadExtCtx* a, const QuadExtCtx* b) {
    if (a == b) return;
    if (!a || !b || !a->same_field(*b)) throw std::invalid_argument("field context mismatch");
}

inline QuadElement operator+(const QuadElement& a, const QuadElement& b) { return a.ctx->add(a, b); }
inline QuadElement operator-(const QuadElement& a, const QuadElement& b) { return a.ctx->sub(a, b); }
inline QuadElement operator*(const QuadElement& a, const QuadElement& b) { return a.ctx->mul(a, b); }
inline QuadElement operator-(const QuadElement& a) { return a.ctx->neg(a); }

}  // namespace pptri
