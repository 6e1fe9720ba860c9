#include "pptri/embed.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "pptri/poly.hpp"
#include "pptri/prime.hpp"

namespace pptri {

FieldElement FlatEmbedding::map(const FieldElement& x) const {
    require_same_ctx(x.ctx, src);
    FieldElement acc = dst->zero();
    for (unsigned i = 0; i < src->degree(); ++i) {
        if (!x.c[i]) continue;
        acc = dst->add(acc, dst->mul(dst->from_int(x.c[i]), pow_r[i]));
    }
    return acc;
}

FlatEmbedding make_embedding(const FieldCtx& src, const FieldCtx& dst) {
    if (src.char_p() != dst.char_p() || dst.degree() % src.degree())
        throw std::invalid_argument("no embedding: source degree must divide target degree");
    FlatEmbedding e;
    e.src = &src;
    e.dst = &dst;
    if (src.same_field(dst)) {
        e.pow_r.push_back(dst.one());
        for (unsigned i = 1; i < src.degree(); ++i)
            e.pow_r.push_back(dst.mul(e.pow_r.back(), dst.gen()));
        return e;
    }
    // smallest root of the source modulus inside dst
    std::vector<FieldElement> coeffs;
    for (auto c : src.modulus()) coeffs.push_back(dst.from_int(c));
    auto roots = roots_in_field(make_poly(dst, std::move(coeffs)));
    if (roots.empty()) throw std::runtime_error("embedding root not found");
    FieldElement r = roots.front();
    e.pow_r.push_back(dst.one());
    for (unsigned i = 1; i < src.degree(); ++i) e.pow_r.push_back(dst.mul(e.pow_r.back(), r));
    return e;
}

FieldElement QuadFlatIso::fwd(const QuadElement& x) const {
    require_same_ctx(x.ctx, src);
    return dst->add(base_emb.map(x.re), dst->mul(base_emb.map(x.im), j));
}

QuadElement QuadFlatIso::bwd(const FieldElement& y) const {
    require_same_ctx(y.ctx, dst);
    unsigned n = dst->degree();
    std::vector<std::uint32_t> pair(n);
    std::uint32_t p = dst->char_p();
    for (unsigned r = 0; r < n; ++r) {
        std::uint64_t acc = 0;
        for (unsigned c = 0; c < n; ++c)
            acc += static_cast<std::uint64_t>(inv_mat[static_cast<size_t>(c) * n + r]) * y.c[c];
        pair[r] = static_cast<std::uint32_t>(acc % p);
    }
    return src->from_fp_vec(pair);
}

QuadFlatIso make_quad_flat_iso(const QuadExtCtx& src, const FieldCtx& dst) {
    if (dst.degree() != src.fp_dim() || dst.char_p() != src.char_p())
        throw std::invalid_argument("flat target must have degree 2k");
    QuadFlatIso iso;
    iso.src = &src;
    iso.dst = &dst;
    iso.base_emb = make_embedding(src.base(), dst);
    auto d_img = iso.base_emb.map(src.nonresidue());
    auto roots = sqrt_of(dst, d_img);
    if (!roots) throw std::runtime_error("nonresidue has no square root in the flat field");
    iso.j = roots->first;

    // matrix of the basis {r^s} u {j r^s} in dst coordinates, then inverted
    unsigned n = dst.degree();
    unsigned k = src.base_degree();
    std::uint32_t p = dst.char_p();
    std::vector<std::uint32_t> mat(static_cast<size_t>(n) * n);
    for (unsigned c = 0; c < n; ++c) {
        FieldElement col = c < k ? iso.base_emb.pow_r[c] : dst.mul(iso.j, iso.base_emb.pow_r[c - k]);
        for (unsigned r = 0; r < n; ++r) mat[static_cast<size_t>(c) * n + r] = col.c[r];
    }
    // invert by solving for each unit vector
    iso.inv_mat.assign(static_cast<size_t>(n) * n, 0);
    for (unsigned c = 0; c < n; ++c) {
        std::vector<std::uint32_t> rhs(n, 0);
        rhs[c] = 1;
        auto sol = fp_solve(mat, n, n, rhs, p);
        for (unsigned r = 0; r < n; ++r) iso.inv_mat[static_cast<size_t>(c) * n + r] = sol[r];
    }
    return iso;
}

const FlatEmbedding& embedding_cache(const FieldCtx& src, const FieldCtx& dst) {
    static std::mutex m;
    static std::map<std::pair<const FieldCtx*, const FieldCtx*>, std::unique_ptr<FlatEmbedding>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(&src, &dst);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FlatEmbedding>(make_embedding(src, dst))).first;
    return *it->second;
}

const QuadFlatIso& quad_flat_iso_cache(const QuadExtCtx& src, const FieldCtx& dst) {
    static std::mutex m;
    static std::map<std::pair<const QuadExtCtx*, const FieldCtx*>, std::unique_ptr<QuadFlatIso>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(&src, &dst);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<QuadFlatIso>(make_quad_flat_iso(src, dst))).first;
    return *it->second;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    return static_cast<std::uint32_t>(powmod_u64(a, p - 2, p));
}

}  // namespace

std::vector<std::vector<std::uint32_t>> fp_kernel_basis(std::vector<std::uint32_t> mat,
                                                        unsigned rows, unsigned cols,
                                                        std::uint32_t p) {
    // mat is column-major; row-reduce a row-major copy
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols));
    for (unsigned r = 0; r < rows; ++r)
        for (unsigned c = 0; c < cols; ++c) a[r][c] = mat[static_cast<size_t>(c) * rows + r] % p;

    std::vector<int> pivot_of_col(cols, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned sel = rank;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        std::uint32_t iv = inv_mod(a[rank][c], p);
        for (unsigned j = c; j < cols; ++j)
            a[rank][j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[rank][j]) * iv % p);
        for (unsigned r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank || a[r2][c] == 0) continue;
            std::uint64_t f = a[r2][c];
            for (unsigned j = c; j < cols; ++j) {
                std::uint64_t sub = f * a[rank][j] % p;
                a[r2][j] = static_cast<std::uint32_t>((a[r2][j] + p - sub) % p);
            }
        }
        pivot_of_col[c] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<std::vector<std::uint32_t>> basis;
    for (unsigned c = 0; c < cols; ++c) {
        if (pivot_of_col[c] != -1) continue;
        std::vector<std::uint32_t> v(cols, 0);
        v[c] = 1;
        for (unsigned c2 = 0; c2 < cols; ++c2) {
            if (pivot_of_col[c2] == -1) continue;
            std::uint32_t coef = a[pivot_of_col[c2]][c];
            v[c2] = coef ? p - coef : 0;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::uint32_t> fp_solve(std::vector<std::uint32_t> mat, unsigned rows, unsigned cols,
                                    std::vector<std::uint32_t> rhs, std::uint32_t p) {
    std::vector<std::vector<std::uint32_t>> a(rows, std::vector<std::uint32_t>(cols + 1));
    for (unsigned r = 0; r < rows; ++r) {
        for (unsigned c = 0; c < cols; ++c) a[r][c] = mat[static_cast<size_t>(c) * rows + r] % p;
        a[r][cols] = rhs[r] % p;
    }
    std::vector<int> pivot_of_col(cols, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned sel = rank;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[rank]);
        std::uint32_t iv = inv_mod(a[rank][c], p);
        for (unsigned j = c; j <= cols; ++j)
            a[rank][j] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[rank][j]) * iv % p);
        for (unsigned r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank || a[r2][c] == 0) continue;
            std::uint64_t f = a[r2][c];
            for (unsigned j = c; j <= cols; ++j) {
                std::uint64_t sub = f * a[rank][j] % p;
                a[r2][j] = static_cast<std::uint32_t>((a[r2][j] + p - sub) % p);
            }
        }
        pivot_of_col[c] = static_cast<int>(rank);
        ++rank;
    }
    for (unsigned r = rank; r < rows; ++r)
        if (a[r][cols]) throw std::runtime_error("inconsistent linear system");
    std::vector<std::uint32_t> x(cols, 0);
    for (unsigned c = 0; c < cols; ++c)
        if (pivot_of_col[c] != -1) x[c] = a[pivot_of_col[c]][cols];
    return x;
}

}  // namespace pptri
