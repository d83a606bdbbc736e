#include <doctest.h>

#include <cmath>
#include <complex>

#include "ksum/character.hpp"
#include "ksum/rng.hpp"
#include "test_util.hpp"

using namespace ksum;
using test::el;

TEST_CASE("psi exponent basics") {
    const auto f8 = FieldCtx::make(2, 3);
    const AdditiveCharacter psi{f8.one()};
    CHECK(psi_exponent(f8, psi, f8.zero()) == 0);
    CHECK(psi_exponent(f8, psi, f8.one()) == 1);  // Tr(1) = 3 mod 2

    const AdditiveCharacter trivial{f8.zero()};
    CHECK(trivial.trivial());
    for (std::uint64_t i = 0; i < 8; ++i) {
        CHECK(psi_exponent(f8, trivial, el(f8, i)) == 0);
    }
}

TEST_CASE("psi is additive, exhaustive") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                        {3, 2}, {5, 2}, {3, 5}, {7, 3}, {2, 9}, {13, 1}}) {
        const auto ctx = FieldCtx::make(p, n);
        REQUIRE(ctx.q() <= 512);
        const AdditiveCharacter psi{ctx.one()};
        for (std::uint64_t xi = 0; xi < ctx.q(); ++xi) {
            for (std::uint64_t yi = 0; yi < ctx.q(); ++yi) {
                const auto x = el(ctx, xi);
                const auto y = el(ctx, yi);
                REQUIRE(psi_exponent(ctx, psi, ctx.add(x, y)) ==
                        (psi_exponent(ctx, psi, x) + psi_exponent(ctx, psi, y)) % p);
            }
        }
    }
}

TEST_CASE("full-field character sums vanish for every nontrivial character") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 3},
                        {3, 3}, {5, 2}, {2, 5}, {7, 2}, {3, 5}, {17, 1}}) {
        const auto ctx = FieldCtx::make(p, n);
        REQUIRE(ctx.q() <= 512);
        const auto all = ctx.elements();
        for (std::uint64_t ai = 0; ai < ctx.q(); ++ai) {
            const AdditiveCharacter chi{el(ctx, ai)};
            const auto cs = char_sum(ctx, chi, all);
            if (ai == 0) {
                CHECK(cs.value().real() == doctest::Approx(static_cast<double>(ctx.q())));
                CHECK(cs.counts()[0] == static_cast<std::int64_t>(ctx.q()));
            } else {
                REQUIRE(cs.is_zero_exact());
                REQUIRE(std::abs(cs.value()) <= 1e-9 * static_cast<double>(ctx.q()));
            }
        }
    }
}

TEST_CASE("singleton and origin sums") {
    const auto ctx = FieldCtx::make(3, 3);
    const AdditiveCharacter psi{ctx.one()};
    const std::vector<FieldElement> origin{ctx.zero()};
    const auto cs = char_sum(ctx, psi, origin);
    CHECK(cs.value().real() == doctest::Approx(1.0));
    CHECK(cs.total_weight() == 1);
}

TEST_CASE("cyclotomic evaluation") {
    // counts = [q, 0, ..., 0]
    CyclotomicSum cs(5);
    cs.add_exponent(0, 125);
    CHECK(cs.value().real() == doctest::Approx(125.0));
    CHECK(std::abs(cs.value().imag()) < 1e-12);

    // uniform counts evaluate to zero
    CyclotomicSum uni(7);
    for (std::uint32_t j = 0; j < 7; ++j) uni.add_exponent(j, 40);
    CHECK(uni.is_zero_exact());
    CHECK(std::abs(uni.value()) <= 1e-12 * 40 * 7);

    // p = 2: [3, 1] evaluates to 2
    CyclotomicSum two(2);
    two.add_exponent(0, 3);
    two.add_exponent(1, 1);
    CHECK(two.value().real() == doctest::Approx(2.0));
}

TEST_CASE("modulus bounded by the number of summands") {
    const auto ctx = FieldCtx::make(5, 2);
    const AdditiveCharacter psi{ctx.one()};
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t k = 1 + rng.below(40);
        std::vector<FieldElement> set;
        for (std::uint64_t i = 0; i < k; ++i) set.push_back(test::random_element(ctx, rng));
        const auto cs = char_sum(ctx, psi, set);
        CHECK(cs.total_weight() == static_cast<std::int64_t>(k));
        CHECK(std::abs(cs.value()) <= static_cast<double>(k) + 1e-9);
    }
}

TEST_CASE("histogram merge is coordinatewise") {
    const auto ctx = FieldCtx::make(3, 2);
    const AdditiveCharacter psi{ctx.one()};
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FieldElement> a, b;
        for (int i = 0; i < 6; ++i) a.push_back(test::random_element(ctx, rng));
        for (int i = 0; i < 9; ++i) b.push_back(test::random_element(ctx, rng));
        auto ca = char_sum(ctx, psi, a);
        const auto cb = char_sum(ctx, psi, b);
        std::vector<FieldElement> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        ca += cb;
        CHECK(ca == char_sum(ctx, psi, ab));
    }
}
