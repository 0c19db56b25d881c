#include "doctest.h"
#include "rayfield/error.hpp"
#include "rayfield/method_a.hpp"
#include "rayfield/method_b.hpp"
#include "rayfield/raygenus.hpp"

using namespace rayfield;

namespace {

LambdaSeq rational_lambda(std::uint32_t p, unsigned e, std::size_t s, long n_max) {
    auto F = FieldCtx::make(p, e);
    std::vector<std::uint32_t> I;
    for (std::uint32_t j = 1; I.size() + 1 < s; ++j) I.push_back(j);
    return lambda_seq_a(SSpecA::from_exponents(F, I), n_max);
}

struct Row {
    std::uint32_t p;
    std::size_t s;
    long l;
    long g, N;
};

}  // namespace

TEST_CASE("conductor exponents") {
    const auto L = lambda_seq_b(Description{2, {2, 5}}, 1, 20);
    CHECK(conductor_exponent(L, 2) == 4);
    CHECK(conductor_exponent(L, 0) == 1);
    const auto A = rational_lambda(2, 1, 2, 20);
    CHECK(conductor_exponent(A, 4) == 8);
    CHECK_THROWS_AS(conductor_exponent(A, 100), Error);
    for (long n = 1; n <= A.max_index(); ++n) CHECK(conductor_exponent(A, A.at(n)) <= n);
}

TEST_CASE("worked example table") {
    const auto L = lambda_seq_b(Description{2, {2, 5}}, 1, 40);
    const std::vector<long> g{4, 10, 28, 68, 164, 388, 868, 1892, 4068};
    const std::vector<long> N{7, 13, 25, 49, 97, 193, 385, 769, 1537};
    for (long l = 1; l <= 9; ++l) {
        const auto fi = ray_invariants(2, 1, 2, L, l, 3, true, false);
        CHECK(fi.genus == g[static_cast<std::size_t>(l - 1)]);
        CHECK(fi.genus_hurwitz == fi.genus);
        CHECK(fi.points.N_lower == N[static_cast<std::size_t>(l - 1)]);
    }
    CHECK(genus_L(2, 1, 2, L, 0) == 2);
}

TEST_CASE("prime field rows") {
    const std::vector<Row> rows{
        {2, 2, 1, 1, 5},     {2, 2, 4, 39, 33},    {2, 1, 4, 17, 17},   {2, 2, 8, 1271, 513},
        {3, 3, 5, 987, 730}, {3, 1, 3, 21, 28},    {3, 2, 4, 181, 163}, {5, 5, 1, 10, 26},
        {5, 4, 3, 356, 501}, {7, 7, 2, 189, 344}, {7, 2, 2, 45, 99},
    };
    for (const auto& r : rows) {
        CAPTURE(r.p);
        CAPTURE(r.s);
        CAPTURE(r.l);
        const auto L = rational_lambda(r.p, 1, r.s, 60);
        const auto fi = ray_invariants(0, 1, r.p, L, r.l, static_cast<long>(r.s), true, true);
        CHECK(fi.genus == r.g);
        CHECK(fi.points.N_lower == r.N);
    }
}

TEST_CASE("closed forms for |S| = q agree with the recursion") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}, {2, 4}}) {
        auto F = FieldCtx::make(p, e);
        std::vector<std::uint32_t> I;
        for (std::uint32_t j = 1; j < F.q(); ++j) I.push_back(j);
        const auto L = lambda_seq_a(SSpecA::from_exponents(F, I), 200);
        const long l_max = e % 2 == 0 ? 3 * static_cast<long>(e) / 2 : static_cast<long>((p - 1) * e);
        for (long l = 0; l <= l_max; ++l) {
            const auto fi = ray_invariants(0, 1, p, L, l, static_cast<long>(F.q()), true, true);
            const auto cf = llcor_closed_form(F, l);
            CHECK(fi.genus == cf.genus);
            CHECK(fi.points.N_lower == cf.N);
        }
    }
}

TEST_CASE("Hayes formulas") {
    CHECK(hayes_degree(2, 1, {{1, 3}}, 1) == 4);
    CHECK(hayes_degree(5, 1, {{1, 1}}, 3) == 3);
    CHECK(hayes_genus(7, 1, {{1, 1}}, 4, 3) == 1 + 4 * (3 - 1));
    CHECK(hayes_genus(2, 1, {{1, 3}}, 1, 0) == 1);
    // two rational places, m_P = 1 each: phi = (q-1)^2, s = 2 (q-1)
    CHECK(hayes_genus(5, 1, {{1, 1}, {1, 1}}, 1, 0) == 1 + (16 * 0 - 8) / 8);
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        const auto F = FieldCtx::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
        const auto L = lambda_seq_a(SSpecA::from_exponents(F, {}), 12);
        for (long n = 1; n <= 12; ++n) {
            const mpz_class deg = hayes_degree(q, 1, {{1, n}}, 1);
            mpz_class pl;
            mpz_ui_pow_ui(pl.get_mpz_t(), F.p(), static_cast<unsigned long>(L.at(n)));
            CHECK(deg == pl);
            CHECK(hayes_genus(q, 1, {{1, n}}, 1, 0) == genus_L(0, 1, F.p(), L, L.at(n)));
        }
    }
    CHECK_THROWS_AS(hayes_degree(3, 1, {{1, 0}}, 1), Error);
}

TEST_CASE("discriminants and differents") {
    CHECK(discriminant_degree({8, 8, 8}, 8, 3) == 0);
    // Hayes case q=2, m = 3P: levels 1, 1, 2 inside a degree-4 field
    const mpz_class d = discriminant_degree({1, 1, 2}, 4, 3);
    CHECK(d == 8);
    CHECK(hurwitz_genus(0, 4, d) == hayes_genus(2, 1, {{1, 3}}, 1, 0));
    CHECK_THROWS_AS(discriminant_degree({2, 1}, 4, 2), Error);
    CHECK_THROWS_AS(hurwitz_genus(0, 3, 1), Error);
    for (long p : {2L, 3L, 5L, 7L})
        for (long t = 0; t <= 10; ++t) {
            std::vector<long> upper(static_cast<std::size_t>(t + 1), p);
            CHECK(different_exponent_upper(upper) == (p - 1) * (t + 1));
            CHECK(different_exponent_lower(upper) == (p - 1) * (t + 1));
            // cyclic of order p^2 with upper jumps t < t2
            for (long t2 = t + 1; t2 <= t + 4; ++t2) {
                std::vector<long> up(static_cast<std::size_t>(t2 + 1), p);
                for (long k = 0; k <= t; ++k) up[static_cast<std::size_t>(k)] = p * p;
                std::vector<long> low(static_cast<std::size_t>(t + 1), p * p);
                low.resize(static_cast<std::size_t>(t + 1 + p * (t2 - t)), p);
                CHECK(different_exponent_upper(up) == different_exponent_lower(low));
            }
        }
}

TEST_CASE("point bounds") {
    CHECK(n_points_lower(1, 2, 2, 3, true, true).N_lower == 13);
    CHECK(n_points_lower(1, 2, 2, 3, true, true).exact);
    CHECK(n_points_lower(1, 2, 0, 4, false, false).N_lower == 4);
    CHECK(n_points_lower(3, 3, 1, 2, false, false).N_lower == 18);
}
