#include "doctest.h"
#include "rayfield/curve.hpp"
#include "rayfield/error.hpp"

using namespace rayfield;

namespace {

// y^2 + y = x^3 (x+1)^2 over F_2, one rational place at infinity.
PlaneCurve genus_two() {
    auto F = FieldCtx::make(2, 1);
    Poly2 f;
    f.terms[{0, 2}] = F.one();
    f.terms[{0, 1}] = F.one();
    f.terms[{5, 0}] = F.one();
    f.terms[{3, 0}] = F.one();
    Chart c{-1, 0, -3, 1, F.zero(), F.zero()};
    return PlaneCurve(F, f, 2, {InfinitePlace{1, c}});
}

PlaneCurve elliptic() {
    auto F = FieldCtx::make(2, 1);
    Poly2 f;
    f.terms[{0, 2}] = F.one();
    f.terms[{0, 1}] = F.one();
    f.terms[{3, 0}] = F.one();
    Chart c{-1, 0, -2, 1, F.zero(), F.zero()};
    return PlaneCurve(F, f, 1, {InfinitePlace{1, c}});
}

PlaneCurve projective_line(std::uint32_t p, unsigned e) {
    auto F = FieldCtx::make(p, e);
    Poly2 f;
    f.terms[{0, 1}] = F.one();
    Chart c{-1, 0, 0, 1, F.zero(), F.zero()};
    return PlaneCurve(F, f, 0, {InfinitePlace{1, c}});
}

RationalFunction fn(const Poly2& num) { return RationalFunction{num, {}}; }

std::vector<long> exponents(const Series& s) {
    std::vector<long> out;
    for (long k = s.valuation(); k < s.abs_prec(); ++k)
        if (s.coeff(k) != s.field().zero()) out.push_back(k);
    return out;
}

}  // namespace

TEST_CASE("point counts of the genus-two curve") {
    const auto C = genus_two();
    CHECK(count_points(C, 1) == 5);
    CHECK(count_points(C, 2) == 5);
    CHECK(rational_places(C).size() == 5);
}

TEST_CASE("projective line has q^d + 1 points") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const auto C = projective_line(p, e);
        std::uint64_t Q = 1;
        for (unsigned d = 1; d <= 3; ++d) {
            Q *= C.field().q();
            CHECK(count_points(C, d) == Q + 1);
        }
        CHECK(class_number(C) == 1);
    }
}

TEST_CASE("zeta numerators") {
    const auto C = genus_two();
    const auto L = zeta_numerator(C);
    CHECK(L == std::vector<mpz_class>{1, 2, 2, 4, 4});
    CHECK(class_number(C) == 13);
    const auto E = elliptic();
    CHECK(count_points(E, 1) == 3);
    CHECK(zeta_numerator(E) == std::vector<mpz_class>{1, 0, 2});
    CHECK(class_number(E) == 3);
}

TEST_CASE("counts from zeta match brute force up to g+2") {
    for (const auto& C : {genus_two(), elliptic()}) {
        const auto L = zeta_numerator(C);
        const unsigned dmax = C.genus() + 2;
        const auto N = counts_from_zeta(C.field().q(), L, dmax);
        for (unsigned d = 1; d <= dmax; ++d) CHECK(N[d] == static_cast<unsigned long>(count_points(C, d)));
    }
}

TEST_CASE("wrong genus is detected") {
    auto F = FieldCtx::make(2, 1);
    const auto C = genus_two();
    const PlaneCurve wrong(F, C.equation(), 1, C.infinity());
    CHECK_THROWS_AS(zeta_numerator(wrong), Error);
}

TEST_CASE("expansion of y at (0,0)") {
    const auto C = genus_two();
    const auto& F = C.field();
    const auto P = PlaceSpec::affine(F.zero(), F.zero());
    const Series y = local_expand(C, P, fn(poly2_y(F)), 11);
    CHECK(y.abs_prec() == 11);
    CHECK(exponents(y) == std::vector<long>{3, 5, 6, 10});
    const Series x = local_expand(C, P, fn(poly2_x(F)), 11);
    CHECK(exponents(x) == std::vector<long>{1});
    const Poly2 yx2 = poly2_add(F, poly2_y(F), poly2_pow(F, poly2_x(F), 2));
    CHECK(valuation(C, P, fn(yx2)) == 2);
}

TEST_CASE("Hensel residual vanishes") {
    const auto C = genus_two();
    const auto& F = C.field();
    for (const auto& P : rational_places(C)) {
        for (long n : {8L, 33L, 100L}) {
            const LocalCoords L = local_coordinates(C, P, n);
            const Series r = eval_poly(F, C.equation(), L);
            CHECK(r.is_zero());
            CHECK(r.abs_prec() >= n - 10 * 2);
        }
    }
}

TEST_CASE("valuation matrix of the four generators") {
    const auto C = genus_two();
    const auto& F = C.field();
    const Poly2 x = poly2_x(F), y = poly2_y(F), one = poly2_const(F, F.one());
    const std::vector<Poly2> gens{x, poly2_add(F, x, one), y, poly2_add(F, y, poly2_pow(F, x, 2))};
    const std::vector<PlaceSpec> places{PlaceSpec::at_infinity(0), PlaceSpec::affine(Fq{0}, Fq{1}),
                                        PlaceSpec::affine(Fq{1}, Fq{0}), PlaceSpec::affine(Fq{1}, Fq{1}),
                                        PlaceSpec::affine(Fq{0}, Fq{0})};
    const std::vector<std::vector<long>> D{
        {-2, 1, 0, 0, 1}, {-2, 0, 1, 1, 0}, {-5, 0, 2, 0, 3}, {-5, 0, 0, 3, 2}};
    for (std::size_t i = 0; i < gens.size(); ++i) {
        long sum = 0;
        for (std::size_t j = 0; j < places.size(); ++j) {
            const long v = valuation(C, places[j], fn(gens[i]));
            CHECK(v == D[i][j]);
            sum += v;
        }
        CHECK(sum == 0);
    }
    CHECK(valuation(C, places[0], fn(one)) == 0);
}

TEST_CASE("quotients and a custom uniformizer") {
    const auto C = genus_two();
    const auto& F = C.field();
    const auto P = PlaceSpec::affine(F.zero(), F.zero());
    // y / x^3 is a one-unit
    const RationalFunction q{poly2_y(F), poly2_pow(F, poly2_x(F), 3)};
    const Series s = local_expand(C, P, q, 8);
    CHECK(exponents(s) == std::vector<long>{0, 2, 3, 7});
    // with pi = x + y the coordinate x has valuation 1 but a different expansion
    auto P2 = P;
    P2.uniformizer = RationalFunction{poly2_add(F, poly2_x(F), poly2_y(F)), {}};
    const Series x2 = local_expand(C, P2, fn(poly2_x(F)), 12);
    CHECK(x2.valuation() == 1);
    CHECK(exponents(x2) != std::vector<long>{1});
    const Series u = local_expand(C, P2, *P2.uniformizer, 12);
    CHECK(exponents(u) == std::vector<long>{1});
    CHECK(valuation(C, P2, fn(poly2_y(F))) == 3);
}

TEST_CASE("errors") {
    const auto C = genus_two();
    const auto& F = C.field();
    const auto P = PlaceSpec::affine(F.zero(), F.zero());
    CHECK_THROWS_AS(valuation(C, P, fn(C.equation())), Error);
    CHECK_THROWS_AS(local_expand(C, P, RationalFunction{poly2_x(F), C.equation()}, 4), Error);
    CHECK_THROWS_AS(count_points(C, 23), Error);
    // singular point: y^2 = x^3 at the origin
    Poly2 cusp;
    cusp.terms[{0, 2}] = F.one();
    cusp.terms[{3, 0}] = F.one();
    const PlaneCurve S(F, cusp, 0, {});
    try {
        local_coordinates(S, P, 8);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::singular_point);
    }
}
