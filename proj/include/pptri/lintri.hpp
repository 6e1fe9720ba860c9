#pragma once

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pptri/embed.hpp"
#include "pptri/poly.hpp"

namespace pptri {

// F(X) = X^{p^n} - A X - B over F_{p^l}, A != 0, together with the derived
// quantities of the Coulter-Henderson classification.
template <class Ctx>
struct LinTriInstance {
    const Ctx* ctx = nullptr;
    unsigned n = 0;
    typename Ctx::Element A, B;
    unsigned ell = 0, d = 0, m = 0;
    typename Ctx::Element alpha_last, beta_last;  // alpha_{m-1}, beta_{m-1}
};

enum class LinTriCase { NoRoots, UniqueRoot, Kernel };

template <class Ctx>
struct LinTriOutcome {
    LinTriCase kind = LinTriCase::NoRoots;
    std::uint64_t root_count = 0;
    std::vector<typename Ctx::Element> roots;  // materialized when root_count <= cap
    typename Ctx::Element base_root, tau;      // Kernel case data
};

template <class Ctx>
typename Ctx::Element lintri_eval(const LinTriInstance<Ctx>& inst, const typename Ctx::Element& x) {
    const Ctx& F = *inst.ctx;
    return F.sub(F.sub(F.frobenius(x, inst.n), F.mul(inst.A, x)), inst.B);
}

// A^{s} for s = sum_{j in js} p^{n j}, via Frobenius products
template <class Ctx>
typename Ctx::Element frob_power_product(const Ctx& F, const typename Ctx::Element& A, unsigned n,
                                         const std::vector<unsigned>& js) {
    auto acc = F.one();
    for (unsigned j : js) acc = F.mul(acc, F.frobenius(A, n * j));
    return acc;
}

template <class Ctx>
LinTriInstance<Ctx> make_lintri(const Ctx& F, unsigned n, const typename Ctx::Element& A,
                                const typename Ctx::Element& B) {
    if (F.is_zero(A)) throw std::invalid_argument("linearized trinomial needs A != 0");
    if (n == 0) throw std::invalid_argument("Frobenius step must be >= 1");
    LinTriInstance<Ctx> inst{&F, n, A, B, 0, 0, 0, F.zero(), F.zero()};
    inst.ell = F.fp_dim();
    inst.d = std::gcd(inst.ell, n);
    inst.m = inst.ell / inst.d;
    // alpha_{m-1} = prod_{j=0}^{m-1} A^{p^{n j}}
    std::vector<unsigned> js;
    for (unsigned j = 0; j < inst.m; ++j) js.push_back(j);
    inst.alpha_last = frob_power_product(F, A, n, js);
    // beta_{m-1} = sum_i A^{s_i} B^{p^{n i}}, s_i = sum_{j=i}^{m-2} p^{n(j+1)}
    auto beta = F.zero();
    for (unsigned i = 0; i < inst.m; ++i) {
        std::vector<unsigned> sjs;
        for (unsigned j = i; j + 1 <= inst.m - 1; ++j) sjs.push_back(j + 1);
        auto term = F.mul(frob_power_product(F, A, n, sjs), F.frobenius(B, n * i));
        beta = F.add(beta, term);
    }
    inst.beta_last = beta;
    return inst;
}

// smallest (canonical order) nonzero x with x^{p^n} = A x, by index scan
template <class Ctx>
std::optional<typename Ctx::Element> smallest_frobenius_eigenvector(const Ctx& F,
                                                                    unsigned n,
                                                                    const typename Ctx::Element& A) {
    if (!F.order_fits_u64()) throw std::domain_error("field too large for eigenvector scan");
    for (std::uint64_t idx = 1; idx < F.order_u64(); ++idx) {
        auto x = F.element_at_u64(idx);
        if (F.is_zero(F.sub(F.frobenius(x, n), F.mul(A, x)))) return x;
    }
    return std::nullopt;
}

// elements of the subfield F_{p^d} inside F (d | fp_dim), canonical order
template <class Ctx>
std::vector<typename Ctx::Element> subfield_elements(const Ctx& F, unsigned d) {
    std::vector<std::vector<std::uint32_t>> basis;
    {
        unsigned dim = F.fp_dim();
        std::uint32_t p = F.char_p();
        std::vector<std::uint32_t> mat(static_cast<size_t>(dim) * dim);
        for (unsigned c = 0; c < dim; ++c) {
            std::vector<std::uint32_t> unit(dim, 0);
            unit[c] = 1;
            auto img = F.sub(F.frobenius(F.from_fp_vec(unit), d), F.from_fp_vec(unit));
            auto v = F.to_fp_vec(img);
            for (unsigned r = 0; r < dim; ++r) mat[static_cast<size_t>(c) * dim + r] = v[r];
        }
        basis = fp_kernel_basis(mat, dim, dim, p);
    }
    if (basis.size() != d) throw std::runtime_error("unexpected subfield dimension");
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= F.char_p();
    std::vector<typename Ctx::Element> out;
    out.reserve(count);
    std::uint32_t p = F.char_p();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> v(F.fp_dim(), 0);
        std::uint64_t t = idx;
        for (unsigned b = 0; b < d; ++b) {
            std::uint32_t coef = static_cast<std::uint32_t>(t % p);
            t /= p;
            if (!coef) continue;
            for (unsigned r = 0; r < F.fp_dim(); ++r)
                v[r] = static_cast<std::uint32_t>((v[r] + static_cast<std::uint64_t>(coef) * basis[b][r]) % p);
        }
        out.push_back(F.from_fp_vec(v));
    }
    std::sort(out.begin(), out.end(), [&F](const auto& a, const auto& b) { return F.less(a, b); });
    return out;
}

template <class Ctx>
LinTriOutcome<Ctx> classify(const LinTriInstance<Ctx>& inst,
                            std::uint64_t materialize_cap = (1u << 20)) {
    const Ctx& F = *inst.ctx;
    LinTriOutcome<Ctx> out;
    out.base_root = F.zero();
    out.tau = F.zero();
    bool alpha_is_one = inst.alpha_last == F.one();
    if (alpha_is_one && !F.is_zero(inst.beta_last)) {
        out.kind = LinTriCase::NoRoots;
        return out;
    }
    if (!alpha_is_one) {
        out.kind = LinTriCase::UniqueRoot;
        out.root_count = 1;
        out.base_root = F.div(inst.beta_last, F.sub(F.one(), inst.alpha_last));
        out.roots.push_back(out.base_root);
        return out;
    }
    // alpha_{m-1} = 1, beta_{m-1} = 0: p^d roots x + delta tau
    out.kind = LinTriCase::Kernel;
    auto tau = smallest_frobenius_eigenvector(F, inst.n, inst.A);
    if (!tau) throw std::runtime_error("Kernel case: no tau found");
    out.tau = *tau;
    // c = 1 when Tr_d(1) != 0, else the first element with nonzero subfield trace
    auto trace_d = [&](const typename Ctx::Element& c) {
        auto acc = F.zero();
        for (unsigned j = 0; j < inst.ell / inst.d; ++j) acc = F.add(acc, F.frobenius(c, inst.d * j));
        return acc;
    };
    auto c = F.one();
    if (F.is_zero(trace_d(c))) {
        bool found = false;
        for (std::uint64_t idx = 1; idx < F.order_u64(); ++idx) {
            c = F.element_at_u64(idx);
            if (!F.is_zero(trace_d(c))) { found = true; break; }
        }
        if (!found) throw std::runtime_error("no element of nonzero subfield trace");
    }
    // x = Tr_d(c)^{-1} sum_i (sum_{j<=i} c^{p^{n j}}) A^{t_i} B^{p^{n i}}
    auto x = F.zero();
    auto csum = F.zero();
    for (unsigned i = 0; i < inst.m; ++i) {
        csum = F.add(csum, F.frobenius(c, inst.n * i));
        std::vector<unsigned> tjs;
        for (unsigned j = i; j + 1 <= inst.m - 1; ++j) tjs.push_back(j + 1);
        auto term = F.mul(csum, F.mul(frob_power_product(F, inst.A, inst.n, tjs),
                                      F.frobenius(inst.B, inst.n * i)));
        x = F.add(x, term);
    }
    x = F.mul(x, F.inv(trace_d(c)));
    out.base_root = x;
    std::uint64_t cnt = 1;
    for (unsigned i = 0; i < inst.d; ++i) cnt *= F.char_p();
    out.root_count = cnt;
    if (cnt <= materialize_cap) {
        for (const auto& delta : subfield_elements(F, inst.d))
            out.roots.push_back(F.add(x, F.mul(delta, out.tau)));
        std::sort(out.roots.begin(), out.roots.end(),
                  [&F](const auto& a, const auto& b) { return F.less(a, b); });
    }
    return out;
}

template <class Ctx>
std::vector<typename Ctx::Element> brute_roots(const LinTriInstance<Ctx>& inst,
                                               std::uint64_t cap = 1000000) {
    const Ctx& F = *inst.ctx;
    if (!F.order_fits_u64() || F.order_u64() > cap)
        throw std::domain_error("field too large for brute-force roots");
    std::vector<typename Ctx::Element> out;
    for (std::uint64_t idx = 0; idx < F.order_u64(); ++idx) {
        auto x = F.element_at_u64(idx);
        if (F.is_zero(lintri_eval(inst, x))) out.push_back(x);
    }
    return out;
}

template <class Ctx>
struct LinearizedKernel {
    unsigned dim = 0;
    std::vector<typename Ctx::Element> basis;
};

// kernel of x -> sum_j c_j x^{p^{e_j}} as an F_p-linear map on F
template <class Ctx>
LinearizedKernel<Ctx> linearized_kernel(
    const Ctx& F, const std::vector<std::pair<unsigned, typename Ctx::Element>>& terms) {
    unsigned dim = F.fp_dim();
    std::uint32_t p = F.char_p();
    std::vector<std::uint32_t> mat(static_cast<size_t>(dim) * dim);
    for (unsigned c = 0; c < dim; ++c) {
        std::vector<std::uint32_t> unit(dim, 0);
        unit[c] = 1;
        auto e = F.from_fp_vec(unit);
        auto img = F.zero();
        for (const auto& [ej, cj] : terms) img = F.add(img, F.mul(cj, F.frobenius(e, ej)));
        auto v = F.to_fp_vec(img);
        for (unsigned r = 0; r < dim; ++r) mat[static_cast<size_t>(c) * dim + r] = v[r];
    }
    auto vecs = fp_kernel_basis(mat, dim, dim, p);
    LinearizedKernel<Ctx> out;
    out.dim = static_cast<unsigned>(vecs.size());
    for (auto& v : vecs) out.basis.push_back(F.from_fp_vec(v));
    return out;
}

// smallest nonzero kernel element of the same map, by index scan
template <class Ctx>
std::optional<typename Ctx::Element> smallest_kernel_element(
    const Ctx& F, const std::vector<std::pair<unsigned, typename Ctx::Element>>& terms) {
    if (!F.order_fits_u64()) throw std::domain_error("field too large for kernel scan");
    for (std::uint64_t idx = 1; idx < F.order_u64(); ++idx) {
        auto x = F.element_at_u64(idx);
        auto img = F.zero();
        for (const auto& [ej, cj] : terms) img = F.add(img, F.mul(cj, F.frobenius(x, ej)));
        if (F.is_zero(img)) return x;
    }
    return std::nullopt;
}

}  // namespace pptri
