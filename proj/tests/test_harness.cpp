#include <set>
#include <sstream>

#include "doctest.h"
#include "rayfield/bounds.hpp"
#include "rayfield/error.hpp"
#include "rayfield/golden.hpp"
#include "rayfield/harness.hpp"
#include "rayfield/input.hpp"
#include "rayfield/raygenus.hpp"

using namespace rayfield;

namespace {

const char* example_curve = R"(# comment
2 1 2
default
0 2 1
0 1 1
5 0 1
3 0 1
infinity
1 -1 0 -3 1
)";

std::set<std::string> descriptions(const Census& c, bool method_a) {
    std::set<std::string> s;
    for (const auto& e : c.entries)
        if ((e.method_a_sets > 0) == method_a) s.insert(e.desc.to_string());
    return s;
}

}  // namespace

TEST_CASE("polynomial expressions") {
    const auto F = FieldCtx::make(2, 1);
    const auto a = parse_poly(F, "x^3 (x+1)^2");
    const auto b = parse_poly(F, "x^5 + x^3");
    CHECK(a.terms == b.terms);
    CHECK(parse_poly(F, "y^2 + y - x^3*(x + 1)^2").terms ==
          poly2_sub(F, poly2_add(F, poly2_pow(F, poly2_y(F), 2), poly2_y(F)), b).terms);
    CHECK(parse_poly(F, "3x").terms == poly2_x(F).terms);
    CHECK(parse_poly(F, "2").terms.empty());

    const auto F4 = FieldCtx::make(2, 2);
    CHECK(parse_poly(F4, "w^3").terms == poly2_const(F4, F4.one()).terms);
    CHECK(parse_poly(F4, "t").terms == poly2_const(F4, F4.from_code(2)).terms);

    CHECK_THROWS_AS(parse_poly(F, "x +"), Error);
    CHECK_THROWS_AS(parse_poly(F, "(x"), Error);
    CHECK_THROWS_AS(parse_poly(F, "z"), Error);
    CHECK_THROWS_AS(parse_poly(F, "t"), Error);
}

TEST_CASE("place specs") {
    const auto F = FieldCtx::make(2, 2);
    CHECK(parse_place(F, "affine:2,3").label() == "affine:2,3");
    CHECK(parse_place(F, "inf:1").label() == "inf:1");
    const auto P = parse_place(F, "affine:0,0/u=x+y");
    REQUIRE(P.uniformizer);
    CHECK(P.uniformizer->num.terms == parse_poly(F, "x+y").terms);
    CHECK_THROWS_AS(parse_place(F, "affine:1"), Error);
    CHECK_THROWS_AS(parse_place(F, "point:1,1"), Error);
    CHECK_THROWS_AS(parse_place(F, "affine:9,0"), Error);
}

TEST_CASE("curve and units files") {
    std::istringstream in(example_curve);
    const auto C = read_curve(in);
    CHECK(C.genus() == 2);
    CHECK(C.equation().terms == parse_poly(C.field(), "y^2 + y + x^5 + x^3").terms);
    CHECK(class_number(C) == 13);
    CHECK(rational_places(C).size() == 5);

    std::istringstream uin("factor x\nfactor x+1\nfactor y\nfactor y+x^2\nunit 13 6 -3 -2\nunit 5 3 -1 -1\n");
    const auto U = read_units(C.field(), uin);
    CHECK(U.factors.size() == 4);
    CHECK(U.exponents.size() == 2);
    const auto u = U.unit(C.field(), 1);
    CHECK(u.num.terms == parse_poly(C.field(), "x^5 (x+1)^3").terms);
    CHECK(u.den.terms == parse_poly(C.field(), "y (y+x^2)").terms);

    std::istringstream bad1("2 1 2\ndefault\n0 2 1 1\ninfinity\n");
    CHECK_THROWS_AS(read_curve(bad1), Error);
    std::istringstream bad2("factor x\nunit 1 2\n");
    CHECK_THROWS_AS(read_units(C.field(), bad2), Error);
    std::istringstream bad3("2 2 1\n1 1 0\n0 2 1 0\ninfinity\n");
    CHECK_THROWS_AS(read_curve(bad3), Error);  // x^2 + x is reducible
}

TEST_CASE("shipped data files") {
    const auto C = load_curve(data_dir() + "/curves/elliptic.curve");
    CHECK(count_points(C, 1) == 3);
    CHECK(class_number(C) == 3);

    const auto rows = load_golden(data_dir() + "/golden_tables.txt");
    CHECK(rows.size() == 311);
    std::set<std::string> keys;
    for (const auto& r : rows) {
        keys.insert(r.key());
        CHECK(r.N_lower <= r.N_upper);
    }
    CHECK(keys.size() == rows.size());

    const auto w = load_witnesses(data_dir() + "/witnesses.txt");
    CHECK(!w.empty());
    for (const auto& [k, codes] : w) CHECK(keys.count(k) == 1);
    std::ostringstream out;
    write_witnesses(out, w);
    std::istringstream back(out.str());
    CHECK(read_witnesses(back) == w);
}

TEST_CASE("subset enumeration and rotations") {
    for (std::uint32_t q : {4u, 5u, 8u, 9u}) {
        for (long s = 1; s <= static_cast<long>(q); ++s) {
            long all = 0, reps = 0;
            std::set<std::vector<std::uint32_t>> orbits;
            for_each_subset(q, s, true, [&](const std::vector<std::uint32_t>& I) {
                ++all;
                orbits.insert(min_rotation(I, q));
                return true;
            });
            for_each_subset(q, s, false, [&](const std::vector<std::uint32_t>&) {
                ++reps;
                return true;
            });
            CHECK(all == binomial(q - 1, s - 1));
            CHECK(reps == static_cast<long>(orbits.size()));
        }
    }
    CHECK(min_rotation({2, 3}, 4) == std::vector<std::uint32_t>{1, 2});
    CHECK(min_rotation({3}, 4) == std::vector<std::uint32_t>{1});
    CHECK(is_min_rotation({1, 2}, 4));
    CHECK(!is_min_rotation({2, 3}, 4));
}

TEST_CASE("rational tables") {
    auto F2 = FieldCtx::make(2, 1);
    auto S2 = RationalSet::from_codes(F2, {1});
    const auto rows = rational_rows(S2, 1, 8, true);
    const long g[] = {1, 5, 15, 39, 103, 247, 567, 1271};
    const long N[] = {5, 9, 17, 33, 65, 129, 257, 513};
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(rows[k].g == g[k]);
        CHECK(rows[k].N_lower == N[k]);
        CHECK(rows[k].exact);  // |S| = q: no rational place is left outside S u P
    }

    auto F5 = FieldCtx::make(5, 1);
    auto S5 = RationalSet::from_codes(F5, {1, 2, 3, 4});
    const auto r5 = rational_rows(S5, 1, 2, false);
    CHECK(r5[0].g == 10);
    CHECK(r5[0].N_lower == 26);
    CHECK(r5[1].g == 70);
    CHECK(r5[1].N_lower == 126);

    const auto F3 = FieldCtx::make(3, 1);
    auto S3 = RationalSet::from_codes(F3, {1, 2});
    const auto r3 = rational_rows(S3, 5, 5, false);
    CHECK(r3[0].g == 987);
    CHECK(r3[0].N_lower == 730);

    std::vector<TableRow> mixed = r5;
    mixed.insert(mixed.end(), rows.begin(), rows.end());
    sort_rows(mixed);
    for (std::size_t k = 1; k < mixed.size(); ++k)
        CHECK((mixed[k - 1].g < mixed[k].g || (mixed[k - 1].g == mixed[k].g && mixed[k - 1].N_lower >= mixed[k].N_lower)));
}

TEST_CASE("q = 4 row with g = 67 found by exhaustive search") {
    const auto F = FieldCtx::make(2, 2);
    const auto res = search_rational(F, {RationalTarget{67, 97, std::nullopt, 5, 3}}, 0);
    CHECK(res.exhaustive);
    REQUIRE(res.found[0]);
    auto S = RationalSet::from_codes(F, *res.found[0]);
    const auto r = rational_rows(S, 5, 5, false).front();
    CHECK(r.g == 67);
    CHECK(r.N_lower == 97);
    CHECK(oesterle_nbar(4, 67) == 117);
    const auto none = search_rational(F, {RationalTarget{68, 97, std::nullopt, 5, 3}}, 0);
    CHECK(!none.found[0]);
}

TEST_CASE("emitted rows revalidate and respect the bound") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}, {3, 2}}) {
        const auto F = FieldCtx::make(p, e);
        for (long s = 1; s <= static_cast<long>(F.q()); ++s)
            for_each_subset(F.q(), s, false, [&](const std::vector<std::uint32_t>& I) {
                RationalSet S(F, I);
                for (const auto& r : rational_rows(S, 0, 4, false)) {
                    const auto& L = S.lambda_reaching(r.l);
                    CHECK(genus_L(0, 1, p, L, r.l) == r.g);
                    mpz_class pl;
                    mpz_ui_pow_ui(pl.get_mpz_t(), p, static_cast<unsigned long>(r.l));
                    CHECK(r.N_lower == 1 + r.s1 * pl);
                    CHECK(r.N_lower <= oesterle_nbar(F.q(), r.g.get_si()));
                    if (r.l > 0) {
                        CHECK(L.at(r.n) >= r.l);
                        CHECK(L.at(r.n - 1) < r.l);
                    }
                }
                return true;
            });
    }
}

TEST_CASE("example curve ground") {
    const auto G = example_ground();
    CHECK(G.h_K == 13);
    CHECK(G.index == 13);
    CHECK(G.certified);
    CHECK(G.support.size() == 5);
    const auto cs = example_s2(G);
    CHECK(cs.h_S == 1);
    REQUIRE(cs.eps);
    CHECK(*cs.eps);
    CHECK(cs.desc.to_string() == "t^2 + t^5");
    const auto rows = curve_rows(G, cs, 1, 9, false);
    const long g[] = {4, 10, 28, 68, 164, 388, 868, 1892, 4068};
    const long N[] = {7, 13, 25, 49, 97, 193, 385, 769, 1537};
    for (std::size_t k = 0; k < 9; ++k) {
        CHECK(rows[k].g == g[k]);
        CHECK(rows[k].N_lower == N[k]);
    }
    CHECK(rows[1].n == 4);

    // |S| = 1 leaves only constants: h_S = h_K
    const auto one = curve_set(G, cs.P, {cs.S.front()});
    CHECK(one.h_S == 13);
    CHECK(one.desc.n_i.empty());
    CHECK(curve_rows(G, one, 0, 0, false).front().g == 1 + 13 * (2 - 1));
    CHECK_THROWS_AS(curve_set(G, cs.P, {cs.P}), Error);
}

TEST_CASE("q = 16 census") {
    const auto c = describe_census(FieldCtx::make(2, 4), 1, 16, false, 2);
    CHECK(c.entries.size() == 37);
    CHECK(c.method_a_descriptions() == 25);
    CHECK(c.method_b_only_descriptions() == 12);
    const std::set<std::string> listed{"2t + t^2",
                                       "2t + t^3",
                                       "3t + t^2",
                                       "3t + t^3",
                                       "3t + 2t^3",
                                       "3t + t^2 + t^3",
                                       "3t + t^2 + 2t^3",
                                       "3t + t^2 + 2t^3 + t^7",
                                       "4t + 3t^3 + t^7",
                                       "4t + 3t^3 + t^5 + t^7",
                                       "4t + 3t^3 + 2t^5 + t^7",
                                       "4t + 3t^3 + 2t^5 + 2t^7"};
    CHECK(descriptions(c, false) == listed);
}

TEST_CASE("census over prime fields") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        const auto F = FieldCtx::make(p, 1);
        for (long s = 1; s <= static_cast<long>(p); ++s) {
            const auto c = describe_census(F, s, s, true, 1);
            REQUIRE(c.entries.size() == 1);
            std::vector<long> want;
            for (long n = 1; n < s; ++n) want.push_back(n);
            CHECK(c.entries[0].desc.n_i == want);
        }
    }
    CHECK_THROWS_AS(describe_census(FieldCtx::make(2, 6), 1, 3, false, 1), Error);
}

TEST_CASE("verify report") {
    const auto rows = load_golden(data_dir() + "/golden_tables.txt");
    VerifyOptions opt;
    opt.corpus = "rational";
    const auto a = verify(rows, opt);
    CHECK(a.ok());
    CHECK(a.count(RowStatus::pass) == static_cast<long>(a.rows.size()));
    opt.jobs = 3;
    const auto b = verify(rows, opt);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].status == b.rows[k].status);
        CHECK(a.rows[k].witness == b.rows[k].witness);
    }

    auto tampered = rows;
    for (auto& r : tampered)
        if (r.cls == RowClass::example && r.l == 2) r.g = 11;
    opt.corpus = "example";
    const auto t = verify(tampered, opt);
    CHECK(!t.ok());
    CHECK(t.count(RowStatus::fail) == 1);

    opt.corpus = "external";
    const auto ext = verify(rows, opt);
    CHECK(ext.ok());
    CHECK(ext.count(RowStatus::excluded) == static_cast<long>(ext.rows.size()));
    CHECK(ext.rows.size() > 100);

    auto above = rows;
    for (auto& r : above)
        if (r.cls == RowClass::example && r.l == 2) r.N_upper = 14;  // Oesterle gives 13
    const auto u = verify(above, VerifyOptions{"example", 0, default_exhaustive_limit, 1, {}});
    CHECK(u.bound_failures() == 1);
}

TEST_CASE("parallel_for") {
    std::vector<long> v(1000);
    parallel_for(v.size(), 4, [&](std::size_t i) { v[i] = static_cast<long>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<long>(i * i));
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) fail(Errc::domain_error, "seven");
                    }),
                    Error);
}

TEST_CASE("emitted rows round-trip through the corpus format") {
    const auto F = FieldCtx::make(3, 1);
    std::ostringstream out;
    for (long s = 1; s <= 3; ++s) {
        std::vector<std::uint32_t> codes;
        for (long k = 1; k < s; ++k) codes.push_back(static_cast<std::uint32_t>(k));
        auto S = RationalSet::from_codes(F, codes);
        for (const auto& r : rational_rows(S, 1, 4, false))
            out << "gen " << r.q << ' ' << r.g << ' ' << r.N_lower << ' ' << r.N_lower << ' ' << r.n << ' ' << r.l
                << ' ' << r.s1 << ' ' << r.h_S << ' ' << r.g_K << " rational\n";
    }
    std::istringstream in(out.str());
    const auto rows = read_golden(in);
    CHECK(rows.size() == 12);
    const auto rep = verify(rows, VerifyOptions{});
    CHECK(rep.ok());
    CHECK(rep.count(RowStatus::pass) == 12);
}
