#include <random>

#include "doctest.h"
#include "rayfield/error.hpp"
#include "rayfield/ffield.hpp"

using namespace rayfield;

namespace {

using Orbits = std::vector<std::vector<std::uint32_t>>;

// Brute-force order of a nonzero element by repeated multiplication.
std::uint32_t order_of(const FieldCtx& F, Fq a) {
    std::uint32_t k = 1;
    Fq x = a;
    while (x != F.one()) {
        x = F.mul(x, a);
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("F_2 has omega = 1") {
    auto F = FieldCtx::make(2, 1);
    CHECK(F.q() == 2);
    CHECK(F.omega() == F.one());
    CHECK(F.dlog(F.one()) == 1);
    CHECK(F.frobenius_orbits() == Orbits{{1}});
}

TEST_CASE("F_5 picks omega = 2") {
    auto F = FieldCtx::make(5, 1);
    CHECK(F.omega().code == 2);
    CHECK(F.dlog(F.from_int(4)) == 2);
    CHECK(F.dlog(F.one()) == 4);
    CHECK(F.dlog(F.omega()) == 1);
}

TEST_CASE("F_16 has an element of order 15 and default modulus x^4+x+1") {
    auto F = FieldCtx::make(2, 4);
    CHECK(F.modulus() == PrimePoly{1, 1, 0, 0, 1});
    CHECK(order_of(F, F.omega()) == 15);
    CHECK(F.frobenius_orbits() == Orbits{{1, 2, 4, 8}, {3, 6, 9, 12}, {5, 10}, {7, 11, 13, 14}, {15}});
}

TEST_CASE("F_8 default modulus is x^3+x+1") {
    CHECK(FieldCtx::make(2, 3).modulus() == PrimePoly{1, 1, 0, 1});
}

TEST_CASE("F_9 orbits") {
    auto F = FieldCtx::make(3, 2);
    CHECK(F.frobenius_orbits() == Orbits{{1, 3}, {2, 6}, {4}, {5, 7}, {8}});
}

TEST_CASE("dlog round trip for every field up to 81") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{
             {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}, {17, 1},
             {19, 1}, {23, 1}, {5, 2}, {3, 3}, {29, 1}, {31, 1}, {2, 5}, {7, 2}, {2, 6}, {3, 4}}) {
        auto F = FieldCtx::make(p, e);
        CHECK(order_of(F, F.omega()) == F.q() - 1);
        for (std::uint32_t c = 1; c < F.q(); ++c) {
            const Fq z{c};
            CHECK(F.exp(F.dlog(z)) == z);
            CHECK(F.dlog(F.exp(F.dlog(z))) == F.dlog(z));
        }
        std::uint32_t total = 0;
        for (const auto& o : F.frobenius_orbits()) {
            CHECK(e % o.size() == 0);
            total += static_cast<std::uint32_t>(o.size());
        }
        CHECK(total == F.q() - 1);
    }
}

TEST_CASE("field axioms exhaustively for small q") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 2}, {3, 1}, {2, 3}, {3, 2}, {2, 4}}) {
        auto F = FieldCtx::make(p, e);
        const std::uint32_t q = F.q();
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(F.add(Fq{a}, F.neg(Fq{a})) == F.zero());
            if (a) CHECK(F.mul(Fq{a}, F.inv(Fq{a})) == F.one());
            CHECK(F.frobenius(Fq{a}, e) == Fq{a});
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(F.add(Fq{a}, Fq{b}) == F.add(Fq{b}, Fq{a}));
                CHECK(F.mul(Fq{a}, Fq{b}) == F.mul(Fq{b}, Fq{a}));
                // Frobenius is additive
                CHECK(F.frobenius(F.add(Fq{a}, Fq{b})) == F.add(F.frobenius(Fq{a}), F.frobenius(Fq{b})));
                for (std::uint32_t c = 0; c < q; ++c) {
                    const Fq x{a}, y{b}, z{c};
                    CHECK(F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z));
                    CHECK(F.add(x, F.add(y, z)) == F.add(F.add(x, y), z));
                    CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
                }
            }
        }
    }
}

TEST_CASE("random distributivity for larger fields") {
    std::mt19937 rng(7);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 4}, {2, 6}, {5, 3}, {2, 10}}) {
        auto F = FieldCtx::make(p, e);
        std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
        for (int i = 0; i < 2000; ++i) {
            const Fq x{d(rng)}, y{d(rng)}, z{d(rng)};
            CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
            CHECK(F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z));
        }
    }
}

TEST_CASE("coordinates agree with codes") {
    auto F = FieldCtx::make(3, 2);
    const std::vector<std::uint32_t> c{2, 1};
    CHECK(F.from_coords(c).code == 5);
    CHECK(F.coords(Fq{5}) == c);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(FieldCtx::make(4, 1), Error);
    try {
        FieldCtx::make(6, 1);
    } catch (const Error& err) {
        CHECK(err.code() == Errc::non_prime);
    }
    try {
        FieldCtx::make(2, 2, PrimePoly{1, 0, 1});
        CHECK(false);
    } catch (const Error& err) {
        CHECK(err.code() == Errc::reducible);
    }
    auto F = FieldCtx::make(5, 1);
    CHECK_THROWS_AS(F.dlog(F.zero()), Error);
    CHECK_THROWS_AS(F.inv(F.zero()), Error);
    CHECK_THROWS_AS(FieldCtx::make(2, 11), Error);
}

TEST_CASE("extension fields embed the base field") {
    for (auto [p, e, d] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{
             {2, 1, 5}, {2, 2, 3}, {3, 2, 2}, {2, 4, 2}, {5, 1, 3}}) {
        auto F = FieldCtx::make(p, e);
        auto E = FieldCtx::make_extension(F, d);
        std::uint32_t Q = 1;
        for (unsigned i = 0; i < d; ++i) Q *= F.q();
        CHECK(E.q() == Q);
        if (e * d > 1) CHECK(E.omega().code == p);
        const auto img = E.embedding_of(F);
        for (std::uint32_t a = 0; a < F.q(); ++a)
            for (std::uint32_t b = 0; b < F.q(); ++b) {
                CHECK(img[F.mul(Fq{a}, Fq{b}).code] == E.mul(img[a], img[b]));
                CHECK(img[F.add(Fq{a}, Fq{b}).code] == E.add(img[a], img[b]));
            }
    }
}
