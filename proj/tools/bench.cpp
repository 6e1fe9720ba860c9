// Compares the OpenMP kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "pptri/charsum.hpp"
#include "pptri/curvelab.hpp"
#include "pptri/permlab.hpp"

using namespace pptri;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class Fn>
double time_ms(Fn&& fn) {
    double t0 = now_ms();
    fn();
    return now_ms() - t0;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    bool big = argc > 1 && std::string(argv[1]) == "--big";
    int threads = omp_get_max_threads();
    std::printf("threads: %d\n", threads);
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        const QuadExtCtx& F = quad_cache(11, 2);
        auto params = make_trinomial(F, F.base().from_int(-1));
        PermReport a, b;
        double ts = time_ms([&] { a = is_permutation_exhaustive_serial(params); });
        double tp = time_ms([&] { b = is_permutation_exhaustive(params, 1ull << 28, threads); });
        if (a.is_permutation != b.is_permutation) std::printf("MISMATCH in exhaustive scan!\n");
        row("exhaustive scan p=11 k=2", ts, tp);
    }
    {
        const FieldCtx& F = field_cache(11, 3);
        auto eta = build_eta_table(F);
        long long sa = 0, sb = 0;
        double ts = time_ms([&] {
            for (std::uint64_t i = 1; i < 200; ++i)
                sa += weil_sum_serial(F, F.element_at_u64(i), eta).sum;
        });
        double tp = time_ms([&] {
            for (std::uint64_t i = 1; i < 200; ++i)
                sb += weil_sum(F, F.element_at_u64(i), eta, threads).sum;
        });
        if (sa != sb) std::printf("MISMATCH in character sums!\n");
        row("character sums p=11 q=11^3", ts, tp);
    }
    {
        std::uint32_t p = 11;
        unsigned k = big ? 4 : 2;
        const QuadExtCtx& F = quad_cache(p, k);
        auto alpha = F.base().from_int(3);
        auto G = build_D_model(build_F_alpha(F, alpha));
        PointCountReport a, b;
        double ts = time_ms([&] { a = count_points_fiberwise_serial(F.base(), G, alpha, p); });
        double tp = time_ms([&] { b = count_points_fiberwise(F.base(), G, alpha, p, threads); });
        if (a.affine_count != b.affine_count) std::printf("MISMATCH in point counts!\n");
        row(big ? "fiber count p=11 k=4" : "fiber count p=11 k=2", ts, tp);
    }
    return 0;
}
