#include "pptri/quadext.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace pptri {

QuadExtCtx::QuadExtCtx(std::uint32_t p, unsigned k) : base_(p, k) {
    if (p == 2) throw std::invalid_argument("quadratic tower needs odd characteristic");
    // first nonresidue in canonical order
    FieldElement cand = base_.zero();
    bool found = false;
    Big idx = 1;
    while (idx < base_.order()) {
        cand = base_.element_at(idx);
        if (base_.quad_char(cand) == -1) { found = true; break; }
        ++idx;
    }
    if (!found) throw std::runtime_error("no quadratic nonresidue found");
    d_ = cand;
    q2_ = base_.order() * base_.order();
    order_u64_ = fits_u64(q2_) ? to_u64(q2_) : 0;

    // i^{p^e} = ipow_[e] * i; i^p = d^{(p-1)/2} i
    ipow_.resize(fp_dim());
    ipow_[0] = base_.one();
    FieldElement step = base_.pow(d_, static_cast<long long>((p - 1) / 2));
    for (unsigned e = 1; e < fp_dim(); ++e)
        ipow_[e] = base_.mul(base_.frobenius(ipow_[e - 1], 1), step);
    // i^q = -i is the defining property of the representation
    if (ipow_[k] != base_.neg(base_.one()))
        throw std::runtime_error("tower construction failed: i^q != -i");
}

QuadElement QuadExtCtx::zero() const { return {this, base_.zero(), base_.zero()}; }
QuadElement QuadExtCtx::one() const { return {this, base_.one(), base_.zero()}; }
QuadElement QuadExtCtx::i() const { return {this, base_.zero(), base_.one()}; }
QuadElement QuadExtCtx::from_int(long long v) const { return {this, base_.from_int(v), base_.zero()}; }

QuadElement QuadExtCtx::from_pair(const FieldElement& a, const FieldElement& b) const {
    require_same_ctx(a.ctx, &base_);
    require_same_ctx(b.ctx, &base_);
    return {this, a, b};
}

QuadElement QuadExtCtx::lift(const FieldElement& a) const { return from_pair(a, base_.zero()); }

QuadElement QuadExtCtx::element_at(const Big& index) const {
    Big lo = index % base_.order();
    Big hi = index / base_.order();
    return {this, base_.element_at(lo), base_.element_at(hi)};
}

QuadElement QuadExtCtx::element_at_u64(std::uint64_t index) const {
    if (!base_.order_fits_u64()) return element_at(Big(static_cast<unsigned long>(index)));
    std::uint64_t q = base_.order_u64();
    return {this, base_.element_at_u64(index % q), base_.element_at_u64(index / q)};
}

Big QuadExtCtx::index_of(const Element& x) const {
    return base_.index_of(x.re) + base_.order() * base_.index_of(x.im);
}

std::uint64_t QuadExtCtx::index_of_u64(const Element& x) const {
    return base_.index_of_u64(x.re) + base_.order_u64() * base_.index_of_u64(x.im);
}

bool QuadExtCtx::is_zero(const Element& x) const { return base_.is_zero(x.re) && base_.is_zero(x.im); }

bool QuadExtCtx::less(const Element& a, const Element& b) const {
    if (a.im != b.im) return base_.less(a.im, b.im);
    return base_.less(a.re, b.re);
}

QuadElement QuadExtCtx::add(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    return {this, base_.add(a.re, b.re), base_.add(a.im, b.im)};
}

QuadElement QuadExtCtx::sub(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    return {this, base_.sub(a.re, b.re), base_.sub(a.im, b.im)};
}

QuadElement QuadExtCtx::neg(const Element& a) const { return {this, base_.neg(a.re), base_.neg(a.im)}; }

QuadElement QuadExtCtx::mul(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    // (a0 + a1 i)(b0 + b1 i) = a0 b0 + d a1 b1 + (a0 b1 + a1 b0) i
    FieldElement t0 = base_.mul(a.re, b.re);
    FieldElement t1 = base_.mul(a.im, b.im);
    FieldElement mixed = base_.mul(base_.add(a.re, a.im), base_.add(b.re, b.im));
    FieldElement im = base_.sub(mixed, base_.add(t0, t1));
    return {this, base_.add(t0, base_.mul(d_, t1)), im};
}

QuadElement QuadExtCtx::inv(const Element& a) const {
    // (a0 - a1 i) / (a0^2 - d a1^2); zero maps to zero
    FieldElement nrm = base_.sub(base_.mul(a.re, a.re), base_.mul(d_, base_.mul(a.im, a.im)));
    FieldElement ninv = base_.inv(nrm);
    return {this, base_.mul(a.re, ninv), base_.mul(base_.neg(a.im), ninv)};
}

QuadElement QuadExtCtx::div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

QuadElement QuadExtCtx::pow(const Element& a, const Big& e) const {
    if (sgn(e) < 0) throw std::invalid_argument("negative exponent");
    if (sgn(e) == 0) return one();
    if (is_zero(a)) return zero();
    Big em = e;
    if (e >= q2_) {
        em = e % (q2_ - 1);
        if (sgn(em) == 0) em = q2_ - 1;
    }
    Element r = one();
    for (size_t i = bit_length(em); i-- > 0;) {
        r = mul(r, r);
        if (test_bit(em, i)) r = mul(r, a);
    }
    return r;
}

QuadElement QuadExtCtx::pow(const Element& a, long long e) const { return pow(a, Big(static_cast<long>(e))); }

QuadElement QuadExtCtx::frobenius(const Element& x, unsigned e) const {
    e %= fp_dim();
    unsigned eb = e % base_.degree();
    return {this, base_.frobenius(x.re, eb), base_.mul(base_.frobenius(x.im, eb), ipow_[e])};
}

QuadElement QuadExtCtx::conj(const Element& x) const { return {this, x.re, base_.neg(x.im)}; }

QuadElement QuadExtCtx::rel_trace(const Element& x) const { return add(x, conj(x)); }

QuadElement QuadExtCtx::rel_norm_to_subfield(const Element& x, unsigned d) const {
    if (d == 0 || fp_dim() % d) throw std::invalid_argument("subfield degree must divide 2k");
    Element acc = one();
    for (unsigned j = 0; j < fp_dim() / d; ++j) acc = mul(acc, frobenius(x, d * j));
    return acc;
}

int QuadExtCtx::quad_char(const Element& x) const {
    if (is_zero(x)) return 0;
    Element r = pow(x, (q2_ - 1) / 2);
    return r == one() ? 1 : -1;
}

std::vector<std::uint32_t> QuadExtCtx::to_fp_vec(const Element& x) const {
    std::vector<std::uint32_t> v(x.re.c.begin(), x.re.c.end());
    v.insert(v.end(), x.im.c.begin(), x.im.c.end());
    return v;
}

QuadElement QuadExtCtx::from_fp_vec(const std::vector<std::uint32_t>& v) const {
    unsigned k = base_.degree();
    if (v.size() != 2 * k) throw std::invalid_argument("bad F_p vector length");
    std::vector<std::uint32_t> lo(v.begin(), v.begin() + k), hi(v.begin() + k, v.end());
    return {this, base_.from_vec(lo), base_.from_vec(hi)};
}

std::string QuadExtCtx::format(const Element& x) const {
    return base_.format(x.re) + "," + base_.format(x.im);
}

QuadElement QuadExtCtx::parse(const std::string& text) const {
    std::vector<std::uint32_t> coeffs;
    std::istringstream is(text);
    std::string tok;
    unsigned k = base_.degree();
    while (std::getline(is, tok, ',')) {
        size_t pos = 0;
        long long v;
        try {
            v = std::stoll(tok, &pos);
        } catch (...) {
            throw std::invalid_argument("bad field element text: " + text);
        }
        if (pos != tok.size()) throw std::invalid_argument("bad field element text: " + text);
        long long r = v % static_cast<long long>(char_p());
        if (r < 0) r += char_p();
        coeffs.push_back(static_cast<std::uint32_t>(r));
    }
    if (coeffs.empty() || coeffs.size() > 2 * k) throw std::invalid_argument("bad field element text: " + text);
    coeffs.resize(2 * k, 0);
    return from_fp_vec(coeffs);
}

const QuadExtCtx& quad_cache(std::uint32_t p, unsigned k) {
    static std::mutex m;
    static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<QuadExtCtx>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<QuadExtCtx>(p, k)).first;
    return *it->second;
}

}  // namespace pptri
