#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ksum/character.hpp"
#include "ksum/errors.hpp"
#include "ksum/parse.hpp"
#include "ksum/subspace.hpp"
#include "test_util.hpp"

using namespace ksum;
using test::el;
using test::elc;

TEST_CASE("span basics") {
    const auto f8 = FieldCtx::make(2, 3);
    CHECK(span(f8, std::vector<FieldElement>{}).dim() == 0);
    const auto x = elc(f8, {0, 1});
    CHECK(span(f8, std::vector<FieldElement>{x, x}).dim() == 1);
    const auto two = span(f8, std::vector<FieldElement>{f8.one(), x});
    CHECK(two.dim() == 2);
    CHECK(members(f8, two).size() == 4);
    // idempotent: re-spanning the members reproduces the basis
    CHECK(span(f8, members(f8, two)) == two);
}

TEST_CASE("members") {
    const auto f27 = FieldCtx::make(3, 3);
    const SubspaceBasis trivial;
    CHECK(members(f27, trivial) == std::vector<FieldElement>{f27.zero()});

    const auto full = span(f27, f27.elements());
    CHECK(full.dim() == 3);
    auto mem = members(f27, full);
    std::sort(mem.begin(), mem.end());
    CHECK(mem == f27.elements());

    const auto pt = make_affine(f27, el(f27, 11), SubspaceBasis{});
    CHECK(members(f27, pt) == std::vector<FieldElement>{el(f27, 11)});
}

TEST_CASE("RREF representation is unique per subspace") {
    const auto f27 = FieldCtx::make(3, 3);
    for (std::uint32_t d = 0; d <= 3; ++d) {
        for (const auto& basis : enumerate_subspaces(f27, d)) {
            CHECK(span(f27, members(f27, basis)) == basis);
        }
    }
}

TEST_CASE("orthogonal complement") {
    const auto f8 = FieldCtx::make(2, 3);
    const SubspaceBasis zero_space;
    CHECK(orthogonal_complement(f8, zero_space).dim() == 3);

    const auto full = span(f8, f8.elements());
    CHECK(orthogonal_complement(f8, full).dim() == 0);

    // span{1}^perp is the trace-zero hyperplane; 1 is not in it
    const auto line = span(f8, std::vector<FieldElement>{f8.one()});
    const auto perp = orthogonal_complement(f8, line);
    auto mem = members(f8, perp);
    CHECK(mem.size() == 4);
    std::vector<FieldElement> oracle;
    for (std::uint64_t i = 0; i < 8; ++i) {
        if (f8.trace(el(f8, i)) == 0) oracle.push_back(el(f8, i));
    }
    std::sort(mem.begin(), mem.end());
    CHECK(mem == oracle);
    CHECK_FALSE(contains(f8, perp, f8.one()));
}

TEST_CASE("complement identities, exhaustive") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{2, 5}, {3, 3}}) {
        const auto ctx = FieldCtx::make(p, n);
        for (std::uint32_t d = 0; d <= n; ++d) {
            for (const auto& basis : enumerate_subspaces(ctx, d)) {
                const auto perp = orthogonal_complement(ctx, basis);
                REQUIRE(basis.cardinality(ctx) * perp.cardinality(ctx) == ctx.q());
                REQUIRE(orthogonal_complement(ctx, perp) == basis);
            }
        }
    }
}

TEST_CASE("affine character sums: full modulus on the complement, zero off it") {
    const auto ctx = FieldCtx::make(3, 3);
    for (std::uint32_t d = 0; d <= 3; ++d) {
        for (const auto& basis : enumerate_subspaces(ctx, d)) {
            const auto perp = orthogonal_complement(ctx, basis);
            for (std::uint64_t ci = 0; ci < ctx.q(); ++ci) {
                const auto space = make_affine(ctx, el(ctx, ci), basis);
                const auto mem = members(ctx, space);
                for (std::uint64_t xi = 0; xi < ctx.q(); ++xi) {
                    const AdditiveCharacter chi{el(ctx, xi)};
                    const auto cs = char_sum(ctx, chi, mem);
                    if (contains(ctx, perp, el(ctx, xi))) {
                        // all mass at the phase exponent Tr(base * x)
                        const auto e = psi_exponent(ctx, chi, space.base);
                        REQUIRE(cs.counts()[e] == static_cast<std::int64_t>(mem.size()));
                        REQUIRE(cs.total_weight() == static_cast<std::int64_t>(mem.size()));
                    } else {
                        REQUIRE(cs.is_zero_exact());
                    }
                }
            }
        }
    }
}

TEST_CASE("subspace counting") {
    const auto f27 = FieldCtx::make(3, 3);
    CHECK(count_subspaces(f27, 0) == 1);
    CHECK(count_subspaces(f27, 1) == 13);
    CHECK(count_subspaces(f27, 2) == 13);
    CHECK(count_subspaces(f27, 3) == 1);
    CHECK(enumerate_subspaces(f27, 1).size() == 13);

    std::uint64_t total = 0;
    for (std::uint32_t d = 0; d <= 3; ++d) total += enumerate_subspaces(f27, d).size();
    CHECK(total == 28);

    const auto f32 = FieldCtx::make(2, 5);
    std::uint64_t total32 = 0;
    for (std::uint32_t d = 0; d <= 5; ++d) total32 += count_subspaces(f32, d);
    CHECK(total32 == 374);

    const auto big = FieldCtx::make(2, 20, FieldOptions{std::uint64_t{1} << 20, 0});
    CHECK_THROWS_AS(enumerate_subspaces(big, 10), cap_error);
}

TEST_CASE("enumerated subspaces are distinct and well-formed") {
    const auto f32 = FieldCtx::make(2, 5);
    auto all = enumerate_subspaces(f32, 2);
    CHECK(all.size() == 155);
    for (const auto& b : all) {
        CHECK(b.dim() == 2);
        CHECK(span(f32, b.rows()) == b);
    }
    std::sort(all.begin(), all.end(), [](const SubspaceBasis& a, const SubspaceBasis& b) {
        return a.rows() < b.rows();
    });
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST_CASE("random affine subspaces are reproducible") {
    const auto ctx = FieldCtx::make(3, 3);
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        const auto a = random_affine_subspace(ctx, 2, seed);
        const auto b = random_affine_subspace(ctx, 2, seed);
        CHECK(a == b);
    }
    CHECK(random_affine_subspace(ctx, 3, 5).directions.dim() == 3);
    CHECK(random_affine_subspace(ctx, 0, 5).directions.dim() == 0);
    CHECK_THROWS_AS(random_affine_subspace(ctx, 4, 1), std::invalid_argument);
}

TEST_CASE("canonical base is the minimum member") {
    for (auto [p, n] : {std::pair<std::uint32_t, std::uint32_t>{3, 3}, {2, 5}}) {
        const auto ctx = FieldCtx::make(p, n);
        Rng rng(2024);
        for (int trial = 0; trial < 100; ++trial) {
            const auto dim = static_cast<std::uint32_t>(rng.below(n + 1));
            const auto space = random_affine_subspace(ctx, dim, rng.next());
            const auto mem = members(ctx, space);
            CHECK(space.base == *std::min_element(mem.begin(), mem.end()));
            // translate-equality: rebuilding from any member gives the same space
            const auto again =
                make_affine(ctx, mem[rng.below(mem.size())], space.directions);
            CHECK(again == space);
        }
    }
}

TEST_CASE("subspace literals round-trip") {
    const auto f27 = FieldCtx::make(3, 3);
    const auto space = parse_affine(f27, "basis=[1,0,0;0,1,0] base=0,0,1");
    CHECK(space.directions.dim() == 2);
    CHECK(space.cardinality(f27) == 9);
    CHECK(contains(f27, space, elc(f27, {0, 0, 1})));
    CHECK(parse_affine(f27, format_affine(f27, space)) == space);

    // ';' between the parts works too, and base defaults to zero
    const auto linear = parse_affine(f27, "basis=[1,0,0;0,1,0]");
    CHECK(linear.base == f27.zero());
    const auto semi = parse_affine(f27, "basis=[1,0,0;0,1,0];base=0,0,1");
    CHECK(semi == space);

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dim = static_cast<std::uint32_t>(rng.below(4));
        const auto s = random_affine_subspace(f27, dim, rng.next());
        CHECK(parse_affine(f27, format_affine(f27, s)) == s);
    }
    CHECK_THROWS_AS(parse_affine(f27, "base=1,0,0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_affine(f27, "basis=[1,0"), std::invalid_argument);
}

TEST_CASE("element literals") {
    const auto f8 = FieldCtx::make(2, 3);
    CHECK(parse_element(f8, "1,0,1") == elc(f8, {1, 0, 1}));
    CHECK(format_element(f8, elc(f8, {1, 0, 1})) == "1,0,1");
    CHECK(parse_element(f8, " 1 , 0 , 1 ") == elc(f8, {1, 0, 1}));
    CHECK_THROWS_AS(parse_element(f8, "a,b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(f8, ""), std::invalid_argument);
    const auto f7 = FieldCtx::make(7, 1);
    CHECK(parse_element(f7, "-1") == el(f7, 6));
    CHECK(parse_element_set(f7, "1;2;4").size() == 3);
}
