#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "pptri/charsum.hpp"
#include "pptri/poly.hpp"
#include "pptri/prime.hpp"

using namespace pptri;

TEST_CASE("eta table matches quad_char") {
    const FieldCtx& F = field_cache(11, 2);
    auto eta = build_eta_table(F);
    for (std::uint64_t i = 0; i < F.order_u64(); ++i) {
        auto x = F.element_at_u64(i);
        CHECK(eta.at(x) == F.quad_char(x));
    }
}

TEST_CASE("weil sums over F_{11^3}") {
    const FieldCtx& F = field_cache(11, 3);
    auto eta = build_eta_table(F);
    std::uint64_t q = F.order_u64();
    // mu = 1/4 = 3 degenerates the argument to zeta^2: S = q - 1, bound violated
    auto quarter = F.inv(F.from_int(4));
    CHECK(quarter == F.from_int(3));
    auto bad = weil_sum(F, quarter, eta);
    CHECK(bad.sum == static_cast<long long>(q - 1));
    CHECK_FALSE(bad.satisfied);
    // every other mu obeys the bound; the linear sum vanishes for all mu != 0
    std::uint64_t violations = 0;
    for (std::uint64_t i = 1; i < q; ++i) {
        auto mu = F.element_at_u64(i);
        auto rep = weil_sum(F, mu, eta);
        if (!rep.satisfied) ++violations;
        CHECK(linear_eta_sum(F, mu, eta) == 0);
    }
    CHECK(violations == 1);  // exactly mu = 1/4
}

TEST_CASE("eta multiplicativity within the sum arguments") {
    const FieldCtx& F = field_cache(11, 3);
    auto eta = build_eta_table(F);
    std::mt19937_64 rng(61);
    auto four = F.from_int(4);
    for (int t = 0; t < 200; ++t) {
        auto mu = F.element_at_u64(1 + rng() % (F.order_u64() - 1));
        auto z = F.element_at_u64(rng() % F.order_u64());
        auto arg = F.add(F.mul(four, F.mul(F.sub(z, F.one()), mu)), F.one());
        CHECK(eta.at(F.mul(arg, z)) == eta.at(arg) * eta.at(z));
    }
}

TEST_CASE("zeta search finds a witness for every nonzero mu") {
    const FieldCtx& F = field_cache(11, 3);
    auto eta = build_eta_table(F);
    std::uint64_t q = F.order_u64();
    auto four = F.from_int(4);
    for (std::uint64_t i = 1; i < q; ++i) {
        auto mu = F.element_at_u64(i);
        auto z = zeta_search(F, mu, eta);
        REQUIRE(z.has_value());
        CHECK(eta.at(*z) == -1);
        auto arg = F.add(F.mul(four, F.mul(F.sub(*z, F.one()), mu)), F.one());
        CHECK(eta.at(arg) == -1);
    }
}

TEST_CASE("valid-zeta tally vs the quarter formula") {
    const FieldCtx& F = field_cache(11, 3);
    auto eta = build_eta_table(F);
    std::mt19937_64 rng(67);
    for (int t = 0; t < 100; ++t) {
        auto mu = F.element_at_u64(1 + rng() % (F.order_u64() - 1));
        auto zc = zeta_valid_count(F, mu, eta);
        // 4*tally = q + S up to the eta = 0 boundary terms
        CHECK(std::llabs(zc.four_tally_minus) <= 4);
        CHECK(zc.tally > 0);
    }
}

TEST_CASE("the sum argument is a square of a linear polynomial only at mu = 1/4") {
    // (4(Z-1)mu + 1) Z = 4mu Z^2 + (1-4mu) Z: equal to (aZ+b)^2 iff b = 0 and 4mu = 1
    const FieldCtx& F = field_cache(11, 3);
    std::mt19937_64 rng(71);
    for (int t = 0; t < 100; ++t) {
        auto mu = F.element_at_u64(1 + rng() % (F.order_u64() - 1));
        bool is_square_of_linear = F.sub(F.one(), F.mul(F.from_int(4), mu)) == F.zero();
        CHECK(is_square_of_linear == (mu == F.inv(F.from_int(4))));
    }
}

TEST_CASE("roots of unity zeta^e = -1") {
    const FieldCtx& F = field_cache(11, 3);
    Big e = big_pow(11, 2) + 11 + 1;  // p^2 + p + 1
    auto roots = mu_q1_roots_of_unity(F, e);
    // -1 always qualifies for odd e
    bool has_minus_one = false;
    for (const auto& z : roots) {
        CHECK(F.pow(z, e) == F.from_int(-1));
        if (z == F.from_int(-1)) has_minus_one = true;
    }
    CHECK(has_minus_one);
    // exhaustive oracle
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i < F.order_u64(); ++i)
        if (F.pow(F.element_at_u64(i), e) == F.from_int(-1)) ++count;
    CHECK(count == roots.size());
    CHECK(count == 133);  // the norm -1 fiber has (q-1)/(p-1) elements
    // gcd-determined count: solutions of x^e = c exist iff c^{(q-1)/g} = 1, then g of them
    std::uint64_t g = std::gcd(to_u64(e), F.order_u64() - 1);
    CHECK(g == roots.size());

    // the p + 1 case over F_{p^2}
    const FieldCtx& E = field_cache(11, 2);
    auto roots2 = mu_q1_roots_of_unity(E, Big(12));
    for (const auto& z : roots2) CHECK(E.pow(z, Big(12)) == E.from_int(-1));
    std::uint64_t count2 = 0;
    for (std::uint64_t i = 0; i < E.order_u64(); ++i)
        if (E.pow(E.element_at_u64(i), Big(12)) == E.from_int(-1)) ++count2;
    CHECK(count2 == roots2.size());
}

TEST_CASE("serial and parallel sums agree") {
    const FieldCtx& F = field_cache(11, 3);
    auto eta = build_eta_table(F);
    std::mt19937_64 rng(73);
    for (int t = 0; t < 20; ++t) {
        auto mu = F.element_at_u64(1 + rng() % (F.order_u64() - 1));
        CHECK(weil_sum_serial(F, mu, eta).sum == weil_sum(F, mu, eta, 4).sum);
    }
}
