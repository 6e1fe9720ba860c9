#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pptri/bigint.hpp"

namespace pptri {

class FieldCtx;

// coefficient vectors stay inline for the field sizes the kernels touch
using CoeffVec = boost::container::small_vector<std::uint32_t, 8>;

struct FieldElement {
    const FieldCtx* ctx = nullptr;
    CoeffVec c;  // length k, residues mod p, low degree first

    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool operator!=(const FieldElement& o) const { return c != o.c; }
};

// F_{p^k} as F_p[X]/(modulus), modulus monic irreducible of degree k.
// Construction from (p, k) alone is deterministic: the modulus is the monic
// irreducible whose coefficient vector (low degree first) has the smallest
// base-p index.
class FieldCtx {
public:
    using Element = FieldElement;

    FieldCtx(std::uint32_t p, unsigned k);
    FieldCtx(std::uint32_t p, std::vector<std::uint32_t> monic_modulus);

    std::uint32_t char_p() const { return p_; }
    unsigned degree() const { return k_; }
    unsigned fp_dim() const { return k_; }
    const Big& order() const { return q_; }
    bool order_fits_u64() const { return order_u64_ != 0; }
    std::uint64_t order_u64() const { return order_u64_; }
    const std::vector<std::uint32_t>& modulus() const { return mod_; }

    Element zero() const;
    Element one() const;
    Element gen() const;  // class of X (k >= 2), else 1
    Element from_int(long long v) const;
    Element from_vec(const std::vector<std::uint32_t>& coeffs) const;
    Element element_at(const Big& index) const;
    Element element_at_u64(std::uint64_t index) const;
    Big index_of(const Element& x) const;
    std::uint64_t index_of_u64(const Element& x) const;

    bool is_zero(const Element& x) const;
    bool less(const Element& a, const Element& b) const;  // numeric order of base-p index

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;  // x^{q-2}; inv(0) = 0 by convention
    Element div(const Element& a, const Element& b) const;
    Element pow(const Element& a, const Big& e) const;
    Element pow(const Element& a, long long e) const;
    Element frobenius(const Element& x, unsigned e) const;  // x^{p^e}, e reduced mod k

    // relative trace / norm down to F_{p^d}, d | k
    Element rel_trace(const Element& x, unsigned d) const;
    Element rel_norm(const Element& x, unsigned d) const;

    int quad_char(const Element& x) const;  // eta: -1, 0, +1 (odd characteristic)

    // F_p-vector-space view (identity for a flat context)
    std::vector<std::uint32_t> to_fp_vec(const Element& x) const;
    Element from_fp_vec(const std::vector<std::uint32_t>& v) const;

    std::string format(const Element& x) const;  // "c0,c1,...,c{k-1}"
    Element parse(const std::string& text) const;

    // span-level arithmetic on length-k buffers
    void raw_mul(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const;
    void raw_add(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const;
    void raw_sub(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const;

    bool same_field(const FieldCtx& o) const { return p_ == o.p_ && mod_ == o.mod_; }

private:
    void init_tables();
    void check_modulus() const;

    std::uint32_t p_ = 0;
    unsigned k_ = 0;
    std::vector<std::uint32_t> mod_;  // length k+1, monic
    Big q_;
    std::uint64_t order_u64_ = 0;  // 0 when q does not fit
    std::vector<std::uint32_t> frob_;  // k*k, column j = coeffs of X^{jp} mod f
};

// process-wide deterministic context registry (contexts are immutable)
const FieldCtx& field_cache(std::uint32_t p, unsigned k);

inline void require_same_ctx(const FieldCtx* a, const FieldCtx* b) {
    if (a == b) return;
    if (!a || !b || !a->same_field(*b)) throw std::invalid_argument("field context mismatch");
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return a.ctx->add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a.ctx->sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return a.ctx->mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return a.ctx->neg(a); }

}  // namespace pptri
