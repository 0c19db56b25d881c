#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "rayfield/curve.hpp"
#include "rayfield/qsqrt.hpp"

namespace rayfield {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);
IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
mpz_class determinant(const IntMatrix& A);
std::size_t rank(const IntMatrix& A);
std::string to_string(const IntMatrix& A);

/// U * D = H with |det U| = 1.
struct HnfResult {
    IntMatrix H;
    IntMatrix U;
};

/// Row echelon form with positive pivots, entries above a pivot reduced to [0, pivot).
HnfResult hnf(const IntMatrix& D);

/// The mirrored form used for subsets of S: pivots are the last nonzero entry
/// of each row, rows ordered by pivot column, and entries below a pivot lie
/// in (-pivot/2, pivot/2]. Row k is supported on the first k+2 columns.
HnfResult hnf_trailing(const IntMatrix& D);

/// Valuations v_P(z) of the generators at the places, rows = generators.
/// Rejects rows violating sum_j deg(P_j) v_j = 0.
IntMatrix valuation_matrix(const PlaneCurve& C, const std::vector<RationalFunction>& gens,
                           const std::vector<PlaceSpec>& places);
void check_degree_relation(const IntMatrix& D, const std::vector<long>& degrees);

struct LatticeIndex {
    bool infinite = false;
    mpz_class value;
};

/// Index of the row lattice in the degree-zero divisors on the columns.
/// D must have one more column than rows.
LatticeIndex lattice_index(const IntMatrix& D);

mpz_class s_class_number(const mpz_class& h_K, const mpz_class& reg_S);

struct Certification {
    bool certified = false;
    mpz_class h_S;
    mpz_class reg_S;
};

/// h_S <= hbar < 2 forces h_S = 1 and reg_S = h_K; the generators then
/// generate all S-units exactly when their index equals h_K.
Certification certify_generators(const mpz_class& h_K, const QSqrtNum& hbar_bound, const mpz_class& index);

struct SubsetBasis {
    std::vector<std::size_t> columns;  // the subset, in the order used
    IntMatrix divisors;                // basis rows restricted to those columns
    IntMatrix exponents;               // each basis unit as a product of the original generators
    mpz_class regulator;
};

/// Basis of the units supported on a subset S' of the columns of D (which
/// must generate all S-units). Works for any subset by moving it to the front.
SubsetBasis subset_basis(const IntMatrix& D, const std::vector<std::size_t>& subset);

}  // namespace rayfield
