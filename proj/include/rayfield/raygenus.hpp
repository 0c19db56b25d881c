#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "rayfield/lambda.hpp"

namespace rayfield {

/// min{n : lambda^(n) >= l} within the certified range.
long conductor_exponent(const LambdaSeq& lambda, long l);

/// g(L_{l,S}) = 1 + h_S/2 (p^l (2 g_K - 2 + n) - sum_{v<n} p^lambda^(v)).
mpz_class genus_L(long g_K, const mpz_class& h_S, std::uint32_t p, const LambdaSeq& lambda, long l);

struct PointBound {
    mpz_class N_lower;
    bool exact = false;
};

/// h_S p^l s1 (+ h_S when h_S = h_{S u {P}}).
PointBound n_points_lower(const mpz_class& h_S, std::uint32_t p, long l, long s1, bool split_certified,
                          bool eps_flag);

/// A component m_P P of a cycle.
struct CyclePart {
    long deg = 1;
    long mult = 1;
};

mpz_class hayes_phi(std::uint64_t q, const std::vector<CyclePart>& m);
/// [K_S^m : K] for S a single place of degree d.
mpz_class hayes_degree(std::uint64_t q, long d, const std::vector<CyclePart>& m, const mpz_class& h);
mpz_class hayes_genus(std::uint64_t q, long d, const std::vector<CyclePart>& m, const mpz_class& h, long g);

/// [L:K] m - sum_{n<m} [L^n(P):K] for a rational P.
mpz_class discriminant_degree(const std::vector<mpz_class>& degrees_by_level, const mpz_class& total_degree, long m);

/// 2g_L - 2 = [L:K](2g_K - 2) + deg d for a geometric extension.
mpz_class hurwitz_genus(long g_K, const mpz_class& total_degree, const mpz_class& disc_degree);

/// sum_{n>=0} (|G^0| - (G^0 : G^n)) from the orders |G^0|, |G^1|, ... (later ones 1).
long different_exponent_upper(const std::vector<long>& upper_orders);
/// Hilbert: sum_{n>=0} (|G_n| - 1).
long different_exponent_lower(const std::vector<long>& lower_orders);

struct FieldInvariants {
    std::uint32_t p = 2;
    unsigned e = 1;
    long g_K = 0;
    mpz_class h_S;
    long l = 0;
    long n = 1;
    mpz_class degree;  // h_S p^l over K
    mpz_class genus;
    mpz_class genus_hurwitz;
    PointBound points;
};

/// Both genus paths; IntegralityViolation if they disagree.
FieldInvariants ray_invariants(long g_K, const mpz_class& h_S, std::uint32_t p, const LambdaSeq& lambda, long l,
                               long s1, bool eps_flag, bool split_certified);

}  // namespace rayfield
