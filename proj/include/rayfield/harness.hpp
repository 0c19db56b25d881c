#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rayfield/curve.hpp"
#include "rayfield/golden.hpp"
#include "rayfield/input.hpp"
#include "rayfield/lambda.hpp"
#include "rayfield/method_b.hpp"
#include "rayfield/rational.hpp"
#include "rayfield/sunits.hpp"

namespace rayfield {

struct TableRow {
    long q = 0;
    mpz_class g;
    mpz_class N_lower;
    long n = 0;  // printed conductor exponent, 0 when l = 0
    long l = 0;
    long s1 = 0;
    mpz_class h_S;
    long g_K = 0;
    LambdaSource source = LambdaSource::A;
    bool exact = false;
    bool eps = true;
    std::string set;  // S and P, for provenance
};

/// Runs f(0..count-1) on `jobs` threads; results are written by index so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f);

std::string rational_set_label(const FieldCtx& F, const std::vector<std::uint32_t>& codes);

/// Rows for l = l_min..l_max of one S in F_q(x). With `certify`, exact is
/// set when l > lambda_{S u {Q}}^(n) for every rational Q outside S u {P}.
std::vector<TableRow> rational_rows(RationalSet& S, long l_min, long l_max, bool certify);

/// Sorted by g, then N descending, then l.
void sort_rows(std::vector<TableRow>& rows);

/// A curve together with S-units generating all units supported on the places
/// where they have poles or zeros (the support).
struct CurveGround {
    PlaneCurve C;
    UnitsFile units;
    std::vector<PlaceSpec> places;     // all rational places
    std::vector<std::size_t> support;  // indices into places
    IntMatrix D;                       // generators x support
    mpz_class h_K;
    mpz_class index;
    bool certified = false;  // the generators give all support-units
};

CurveGround make_curve_ground(PlaneCurve C, UnitsFile units);

/// Index of a place in ground.places by label.
std::size_t place_index(const CurveGround& G, const PlaceSpec& P);

struct CurveSet {
    std::size_t P = 0;
    std::vector<std::size_t> S;  // indices into places
    mpz_class h_S;
    std::optional<bool> eps;  // h_S = h_{S u P}; unknown when S u P is not inside the support
    Description desc;
    std::vector<RationalFunction> units;
};

CurveSet curve_set(const CurveGround& G, std::size_t P, std::vector<std::size_t> S);
std::string curve_set_label(const CurveGround& G, const CurveSet& cs);

std::vector<TableRow> curve_rows(const CurveGround& G, const CurveSet& cs, long l_min, long l_max, bool certify);

/// The shipped genus-2 example: y^2 + y = x^3 (x+1)^2 over F_2 with the
/// generators x, x+1, y, y+x^2 of the units on all five rational places.
CurveGround example_ground();
/// P = (0,0), S = {inf, (0,1), (1,0)}
CurveSet example_s2(const CurveGround& G);

struct CensusEntry {
    Description desc;
    long sets = 0;          // number of S (up to symmetry unless `all`)
    long method_a_sets = 0;  // of those, sets where Method A is fully valid
};

struct Census {
    long q = 0;
    long sets = 0;
    std::vector<CensusEntry> entries;  // ordered by description string
    long method_a_descriptions() const;
    long method_b_only_descriptions() const;
};

inline constexpr long census_cap = 5000000;

/// Descriptions of all S with s_min <= |S| <= s_max in F_q(x), up to x -> a x
/// unless `all`. CapExceeded above q = 32 or census_cap sets.
Census describe_census(const FieldCtx& F, long s_min, long s_max, bool all, int jobs);

enum class RowStatus { pass, fail, unresolved, excluded };
std::string status_name(RowStatus s);

struct RowCheck {
    GoldenRow row;
    RowStatus status = RowStatus::excluded;
    std::string detail;
    std::string witness;  // S (and P) that reproduced the row
    std::vector<std::uint32_t> witness_codes;  // rational rows found by search
    mpz_class nbar;       // Oesterle bound for (q, g)
    bool bound_ok = true;  // N_lower <= N_upper <= nbar
};

struct VerifyOptions {
    std::string corpus = "all";  // all | example | rational | q<Q> | <tag>
    long search_budget = 0;      // family draws per (q, |S|) group without a witness
    long exhaustive_limit = default_exhaustive_limit;
    int jobs = 1;
    WitnessMap witnesses;
};

struct VerifyReport {
    std::vector<RowCheck> rows;
    WitnessMap witnesses;  // input witnesses plus any found by search
    long count(RowStatus s) const;
    long bound_failures() const;
    bool ok() const;
};

bool corpus_selects(const std::string& corpus, const GoldenRow& r);
VerifyReport verify(const std::vector<GoldenRow>& rows, const VerifyOptions& opt);

}  // namespace rayfield
