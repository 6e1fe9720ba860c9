#include "pptri/fieldctx.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "pptri/prime.hpp"

namespace pptri {
namespace {

// F_p[X] helpers on plain coefficient vectors (used before a ctx exists)
using FpPoly = std::vector<std::uint32_t>;

int fp_deg(const FpPoly& f) {
    int d = static_cast<int>(f.size()) - 1;
    while (d >= 0 && f[d] == 0) --d;
    return d;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& mod, std::uint32_t p) {
    unsigned k = mod.size() - 1;
    std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) t[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
    }
    for (auto& v : t) v %= p;
    for (size_t d = t.size(); d-- > k;) {
        std::uint64_t c = t[d] % p;
        if (!c) continue;
        t[d] = 0;
        for (unsigned i = 0; i < k; ++i) t[d - k + i] += c * (p - mod[i] % p);
    }
    FpPoly r(k);
    for (unsigned i = 0; i < k; ++i) r[i] = static_cast<std::uint32_t>(t[i] % p);
    return r;
}

// X^e mod f (e a bigint, possibly a huge p-power)
FpPoly fp_xpow(const Big& e, const FpPoly& mod, std::uint32_t p) {
    unsigned k = mod.size() - 1;
    FpPoly r(k, 0), b(k, 0);
    r[0] = 1;
    if (sgn(e) == 0) return r;
    if (k == 1) {
        // X == -mod[0] in F_p
        std::uint64_t x = (p - mod[0] % p) % p;
        if (x == 0) { r[0] = 0; return r; }
        std::uint64_t ee = mpz_fdiv_ui(e.get_mpz_t(), p - 1);
        if (ee == 0) ee = p - 1;
        r[0] = static_cast<std::uint32_t>(powmod_u64(x, ee, p));
        return r;
    }
    b[1] = 1;
    for (size_t i = bit_length(e); i-- > 0;) {
        r = fp_mulmod(r, r, mod, p);
        if (test_bit(e, i)) r = fp_mulmod(r, b, mod, p);
    }
    return r;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
    auto inv_p = [p](std::uint32_t v) { return static_cast<std::uint32_t>(powmod_u64(v, p - 2, p)); };
    while (true) {
        int db = fp_deg(b);
        if (db < 0) break;
        int da = fp_deg(a);
        if (da < db) { std::swap(a, b); continue; }
        std::uint32_t c = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(a[da]) * inv_p(b[db])) % p);
        for (int i = 0; i <= db; ++i) {
            std::uint64_t sub = static_cast<std::uint64_t>(c) * b[i] % p;
            a[da - db + i] = static_cast<std::uint32_t>((a[da - db + i] + p - sub) % p);
        }
        // a's top coefficient is now 0; loop re-evaluates degrees
    }
    return a;
}

bool fp_is_irreducible(const FpPoly& f, std::uint32_t p) {
    unsigned k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    // X^{p^k} == X mod f, and gcd(X^{p^{k/t}} - X, f) = 1 for prime t | k
    FpPoly x(k, 0);
    x[1] = 1;
    FpPoly xq = fp_xpow(big_pow(p, k), f, p);
    if (xq != x) return false;
    unsigned rem = k;
    for (unsigned t = 2; t <= rem; ++t) {
        if (rem % t) continue;
        while (rem % t == 0) rem /= t;
        FpPoly g = fp_xpow(big_pow(p, k / t), f, p);
        for (unsigned i = 0; i < k; ++i) {
            std::uint32_t xi = (i == 1) ? 1u : 0u;
            g[i] = (g[i] + p - xi) % p;
        }
        FpPoly d = fp_gcd(f, g, p);
        if (fp_deg(d) != 0) return false;
    }
    return true;
}

}  // namespace

FieldCtx::FieldCtx(std::uint32_t p, unsigned k) : p_(p), k_(k) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (k > 64) throw std::invalid_argument("extension degree too large");
    // smallest monic irreducible in base-p index order of the low coefficients
    mod_.assign(k + 1, 0);
    mod_[k] = 1;
    Big idx = 0;
    while (true) {
        Big t = idx;
        for (unsigned i = 0; i < k; ++i) {
            mod_[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(t.get_mpz_t(), p));
            t /= p;
        }
        if (sgn(t) != 0) throw std::runtime_error("no irreducible modulus found");
        if (fp_is_irreducible(mod_, p)) break;
        ++idx;
    }
    init_tables();
}

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> monic_modulus) : p_(p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p is not prime");
    if (monic_modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
    mod_ = std::move(monic_modulus);
    for (auto& c : mod_) c %= p;
    if (mod_.back() != 1) throw std::invalid_argument("modulus must be monic");
    k_ = static_cast<unsigned>(mod_.size()) - 1;
    check_modulus();
    init_tables();
}

void FieldCtx::check_modulus() const {
    if (!fp_is_irreducible(mod_, p_)) throw std::invalid_argument("modulus is reducible");
}

void FieldCtx::init_tables() {
    q_ = big_pow(p_, k_);
    order_u64_ = fits_u64(q_) ? to_u64(q_) : 0;
    // column j of the Frobenius matrix holds X^{jp} mod f
    frob_.assign(static_cast<size_t>(k_) * k_, 0);
    FpPoly xp = fp_xpow(Big(p_), mod_, p_);
    FpPoly col(k_, 0);
    col[0] = 1;
    for (unsigned j = 0; j < k_; ++j) {
        for (unsigned r = 0; r < k_; ++r) frob_[static_cast<size_t>(j) * k_ + r] = col[r];
        if (j + 1 < k_) col = fp_mulmod(col, xp, mod_, p_);
    }
}

FieldElement FieldCtx::zero() const {
    FieldElement e;
    e.ctx = this;
    e.c.assign(k_, 0);
    return e;
}

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::gen() const {
    FieldElement e = zero();
    if (k_ >= 2)
        e.c[1] = 1;
    else
        e.c[0] = 1;
    return e;
}

FieldElement FieldCtx::from_int(long long v) const {
    FieldElement e = zero();
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    e.c[0] = static_cast<std::uint32_t>(r);
    return e;
}

FieldElement FieldCtx::from_vec(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() > k_) throw std::invalid_argument("coefficient vector too long");
    FieldElement e = zero();
    for (size_t i = 0; i < coeffs.size(); ++i) e.c[i] = coeffs[i] % p_;
    return e;
}

FieldElement FieldCtx::element_at(const Big& index) const {
    FieldElement e = zero();
    Big t = index;
    for (unsigned i = 0; i < k_; ++i) {
        e.c[i] = static_cast<std::uint32_t>(mpz_fdiv_ui(t.get_mpz_t(), p_));
        t /= p_;
    }
    if (sgn(t) != 0) throw std::out_of_range("element index out of range");
    return e;
}

FieldElement FieldCtx::element_at_u64(std::uint64_t index) const {
    FieldElement e = zero();
    for (unsigned i = 0; i < k_; ++i) {
        e.c[i] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    if (index) throw std::out_of_range("element index out of range");
    return e;
}

Big FieldCtx::index_of(const Element& x) const {
    Big r = 0;
    for (unsigned i = k_; i-- > 0;) {
        r *= p_;
        r += x.c[i];
    }
    return r;
}

std::uint64_t FieldCtx::index_of_u64(const Element& x) const {
    std::uint64_t r = 0;
    for (unsigned i = k_; i-- > 0;) r = r * p_ + x.c[i];
    return r;
}

bool FieldCtx::is_zero(const Element& x) const {
    for (auto v : x.c)
        if (v) return false;
    return true;
}

bool FieldCtx::less(const Element& a, const Element& b) const {
    for (unsigned i = k_; i-- > 0;) {
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    }
    return false;
}

void FieldCtx::raw_add(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const {
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldCtx::raw_sub(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const {
    for (unsigned i = 0; i < k_; ++i) {
        std::uint32_t s = a[i] + p_ - b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldCtx::raw_mul(std::uint32_t* out, const std::uint32_t* a, const std::uint32_t* b) const {
    std::uint64_t acc[127] = {0};
    for (unsigned i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        std::uint64_t ai = a[i];
        for (unsigned j = 0; j < k_; ++j) acc[i + j] += ai * b[j];
    }
    for (unsigned d = 2 * k_ - 2; d >= k_ && d < 127; --d) {
        std::uint64_t c = acc[d] % p_;
        if (c) {
            for (unsigned i = 0; i < k_; ++i) acc[d - k_ + i] += c * (p_ - mod_[i]);
        }
        if (d == k_) break;
    }
    for (unsigned i = 0; i < k_; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % p_);
}

FieldElement FieldCtx::add(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    FieldElement r = zero();
    raw_add(r.c.data(), a.c.data(), b.c.data());
    return r;
}

FieldElement FieldCtx::sub(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    FieldElement r = zero();
    raw_sub(r.c.data(), a.c.data(), b.c.data());
    return r;
}

FieldElement FieldCtx::neg(const Element& a) const {
    FieldElement r = zero();
    for (unsigned i = 0; i < k_; ++i) r.c[i] = a.c[i] ? p_ - a.c[i] : 0;
    return r;
}

FieldElement FieldCtx::mul(const Element& a, const Element& b) const {
    require_same_ctx(a.ctx, b.ctx);
    FieldElement r = zero();
    if (k_ == 1) {
        r.c[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.c[0]) * b.c[0] % p_);
        return r;
    }
    raw_mul(r.c.data(), a.c.data(), b.c.data());
    return r;
}

FieldElement FieldCtx::pow(const Element& a, const Big& e) const {
    if (sgn(e) < 0) throw std::invalid_argument("negative exponent");
    if (sgn(e) == 0) return one();
    if (is_zero(a)) return zero();
    Big em = e;
    if (e >= q_) {
        em = e % (q_ - 1);
        if (sgn(em) == 0) em = q_ - 1;
    }
    FieldElement r = one();
    for (size_t i = bit_length(em); i-- > 0;) {
        r = mul(r, r);
        if (test_bit(em, i)) r = mul(r, a);
    }
    return r;
}

FieldElement FieldCtx::pow(const Element& a, long long e) const { return pow(a, Big(static_cast<long>(e))); }

FieldElement FieldCtx::inv(const Element& a) const { return pow(a, q_ - 2); }

FieldElement FieldCtx::div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

FieldElement FieldCtx::frobenius(const Element& x, unsigned e) const {
    e %= k_;
    FieldElement r = x;
    for (unsigned s = 0; s < e; ++s) {
        FieldElement t = zero();
        for (unsigned j = 0; j < k_; ++j) {
            if (!r.c[j]) continue;
            std::uint64_t cj = r.c[j];
            for (unsigned row = 0; row < k_; ++row) {
                t.c[row] = static_cast<std::uint32_t>(
                    (t.c[row] + cj * frob_[static_cast<size_t>(j) * k_ + row]) % p_);
            }
        }
        r = t;
    }
    return r;
}

FieldElement FieldCtx::rel_trace(const Element& x, unsigned d) const {
    if (d == 0 || k_ % d) throw std::invalid_argument("subfield degree must divide k");
    FieldElement acc = zero();
    for (unsigned j = 0; j < k_ / d; ++j) acc = add(acc, frobenius(x, d * j));
    return acc;
}

FieldElement FieldCtx::rel_norm(const Element& x, unsigned d) const {
    if (d == 0 || k_ % d) throw std::invalid_argument("subfield degree must divide k");
    FieldElement acc = one();
    for (unsigned j = 0; j < k_ / d; ++j) acc = mul(acc, frobenius(x, d * j));
    return acc;
}

int FieldCtx::quad_char(const Element& x) const {
    if (p_ == 2) throw std::domain_error("quadratic character needs odd characteristic");
    if (is_zero(x)) return 0;
    FieldElement r = pow(x, (q_ - 1) / 2);
    if (r == one()) return 1;
    return -1;
}

std::vector<std::uint32_t> FieldCtx::to_fp_vec(const Element& x) const {
    return std::vector<std::uint32_t>(x.c.begin(), x.c.end());
}

FieldElement FieldCtx::from_fp_vec(const std::vector<std::uint32_t>& v) const {
    if (v.size() != k_) throw std::invalid_argument("bad F_p vector length");
    return from_vec(v);
}

std::string FieldCtx::format(const Element& x) const {
    std::ostringstream os;
    for (unsigned i = 0; i < k_; ++i) {
        if (i) os << ',';
        os << x.c[i];
    }
    return os.str();
}

FieldElement FieldCtx::parse(const std::string& text) const {
    std::vector<std::uint32_t> coeffs;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (...) {
            throw std::invalid_argument("bad field element text: " + text);
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw std::invalid_argument("bad field element text: " + text);
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        coeffs.push_back(static_cast<std::uint32_t>(r));
    }
    if (coeffs.empty() || coeffs.size() > k_) throw std::invalid_argument("bad field element text: " + text);
    return from_vec(coeffs);
}

const FieldCtx& field_cache(std::uint32_t p, unsigned k) {
    static std::mutex m;
    static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<FieldCtx>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<FieldCtx>(p, k)).first;
    return *it->second;
}

}  // namespace pptri
