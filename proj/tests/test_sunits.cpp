#include <random>

#include "doctest.h"
#include "rayfield/bounds.hpp"
#include "rayfield/error.hpp"
#include "rayfield/sunits.hpp"

using namespace rayfield;

namespace {

// Columns: inf, P1, P2, P3, P0. Rows: x, x+1, y, y+x^2.
IntMatrix example_D() {
    return int_matrix({{-2, 1, 0, 0, 1}, {-2, 0, 1, 1, 0}, {-5, 0, 2, 0, 3}, {-5, 0, 0, 3, 2}});
}

bool is_echelon(const IntMatrix& H) {
    long last = -1;
    bool zero_seen = false;
    for (const auto& row : H) {
        long lead = -1;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) {
                lead = static_cast<long>(j);
                break;
            }
        if (lead < 0) {
            zero_seen = true;
            continue;
        }
        if (zero_seen || lead <= last || row[static_cast<std::size_t>(lead)] <= 0) return false;
        last = lead;
    }
    return true;
}

IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
    IntMatrix U(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-3, 3);
    for (int k = 0; k < 12; ++k) {
        const auto a = static_cast<std::size_t>(pick(rng)), b = static_cast<std::size_t>(pick(rng));
        if (a == b) continue;
        const int c = coef(rng);
        for (std::size_t j = 0; j < n; ++j) U[a][j] += c * U[b][j];
    }
    return U;
}

}  // namespace

TEST_CASE("identity is its own normal form") {
    const IntMatrix I = int_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto r = hnf(I);
    CHECK(r.H == I);
    CHECK(r.U == I);
}

TEST_CASE("mirrored normal form of the example matrix") {
    const auto r = hnf_trailing(example_D());
    CHECK(r.H == int_matrix({{-13, 13, 0, 0, 0}, {-6, 5, 1, 0, 0}, {4, -5, 0, 1, 0}, {-2, 1, 0, 0, 1}}));
    CHECK(r.U == int_matrix({{13, 6, -3, -2}, {5, 3, -1, -1}, {-5, -2, 1, 1}, {1, 0, 0, 0}}));
    CHECK(mat_mul(r.U, example_D()) == r.H);
    CHECK(abs(determinant(r.U)) == 1);
}

TEST_CASE("lattice index") {
    CHECK(lattice_index(example_D()).value == 13);
    CHECK_FALSE(lattice_index(example_D()).infinite);
    CHECK(lattice_index(int_matrix({{-1, 1, 0}, {-1, 0, 1}})).value == 1);
    CHECK(lattice_index(int_matrix({{-1, 1, 0}, {-2, 2, 0}})).infinite);
    CHECK_THROWS_AS(lattice_index(int_matrix({{1, -1}, {2, -2}})), Error);
    // every maximal minor agrees up to sign
    const IntMatrix D = example_D();
    for (std::size_t drop = 0; drop < 5; ++drop) {
        IntMatrix M(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                if (j != drop) M[i].push_back(D[i][j]);
        CHECK(abs(determinant(M)) == 13);
    }
}

TEST_CASE("random matrices: U D = H, unimodular U, echelon H") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> v(-9, 9);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(it % 4), m = 1 + static_cast<std::size_t>((it / 4) % 5);
        IntMatrix D(n, std::vector<mpz_class>(m));
        for (auto& row : D)
            for (auto& x : row) x = v(rng);
        for (const auto& r : {hnf(D), hnf_trailing(D)}) {
            CHECK(mat_mul(r.U, D) == r.H);
            CHECK(abs(determinant(r.U)) == 1);
        }
        const auto r = hnf(D);
        CHECK(is_echelon(r.H));
        // entries above pivots reduced
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t lead = m;
            for (std::size_t j = 0; j < m; ++j)
                if (r.H[i][j] != 0) {
                    lead = j;
                    break;
                }
            if (lead == m) continue;
            for (std::size_t k = 0; k < i; ++k) {
                CHECK(r.H[k][lead] >= 0);
                CHECK(r.H[k][lead] < r.H[i][lead]);
            }
        }
    }
}

TEST_CASE("index is invariant under unimodular row operations") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> v(-6, 6);
    for (int it = 0; it < 100; ++it) {
        const std::size_t r = 1 + static_cast<std::size_t>(it % 4);
        IntMatrix D(r, std::vector<mpz_class>(r + 1));
        for (auto& row : D) {
            mpz_class s = 0;
            for (std::size_t j = 0; j < r; ++j) {
                row[j] = v(rng);
                s += row[j];
            }
            row[r] = -s;
        }
        const auto a = lattice_index(D);
        const auto b = lattice_index(mat_mul(random_unimodular(rng, r), D));
        CHECK(a.infinite == b.infinite);
        CHECK(a.value == b.value);
        if (!a.infinite) {
            // consistent with the normal form after dropping the dependent column
            const auto h = hnf(D).H;
            IntMatrix sq(r);
            for (std::size_t i = 0; i < r; ++i) sq[i].assign(h[i].begin(), h[i].begin() + static_cast<long>(r));
            CHECK(abs(determinant(sq)) == a.value);
        }
    }
}

TEST_CASE("degree relation") {
    CHECK_NOTHROW(check_degree_relation(example_D(), {1, 1, 1, 1, 1}));
    CHECK_THROWS_AS(check_degree_relation(int_matrix({{1, 1}}), {1, 1}), Error);
    CHECK_NOTHROW(check_degree_relation(int_matrix({{-2, 1}}), {1, 2}));
}

TEST_CASE("S-class number and certification") {
    CHECK(s_class_number(13, 13) == 1);
    CHECK(s_class_number(1, 1) == 1);
    CHECK(s_class_number(13, 1) == 13);
    CHECK_THROWS_AS(s_class_number(13, 5), Error);
    const auto c = certify_generators(13, hbar(2, 2, 5), lattice_index(example_D()).value);
    CHECK(c.certified);
    CHECK(c.h_S == 1);
    CHECK(c.reg_S == 13);
    CHECK_FALSE(certify_generators(13, hbar(2, 2, 5), 26).certified);
}

TEST_CASE("bases for the subsets S_r") {
    const IntMatrix D = example_D();
    const auto b2 = subset_basis(D, {0, 1, 2});
    CHECK(b2.exponents == int_matrix({{13, 6, -3, -2}, {5, 3, -1, -1}}));
    CHECK(b2.divisors == int_matrix({{-13, 13, 0}, {-6, 5, 1}}));
    CHECK(b2.regulator == 13);
    CHECK(s_class_number(13, b2.regulator) == 1);
    const auto b3 = subset_basis(D, {0, 1, 2, 3});
    CHECK(b3.exponents.size() == 3);
    CHECK(b3.exponents[2] == int_matrix({{-5, -2, 1, 1}})[0]);
    const auto b1 = subset_basis(D, {0, 1});
    CHECK(b1.divisors == int_matrix({{-13, 13}}));
    const auto b0 = subset_basis(D, {0});
    CHECK(b0.divisors.empty());
    CHECK(b0.regulator == 1);
    // full S recovers a basis of everything
    const auto b4 = subset_basis(D, {0, 1, 2, 3, 4});
    CHECK(b4.regulator == 13);
    // a non-prefix subset is reordered first
    const auto b_other = subset_basis(D, {4, 0});
    CHECK(b_other.divisors.size() == 1);
    CHECK(b_other.divisors[0][0] == -b_other.divisors[0][1]);
    CHECK_THROWS_AS(subset_basis(D, {}), Error);
    CHECK_THROWS_AS(subset_basis(D, {0, 0}), Error);
}
