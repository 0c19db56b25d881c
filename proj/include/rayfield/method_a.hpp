#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "rayfield/ffield.hpp"
#include "rayfield/lambda.hpp"

namespace rayfield {

/// S = {P_0} u {P_alpha : alpha in A_S} for K = F_q(x), with P the pole of x.
/// Stored by the exponent set I_S = {j : omega^j in A_S}.
struct SSpecA {
    FieldCtx F;
    std::vector<std::uint32_t> I_S;  // sorted, values in 1..q-1

    static SSpecA from_exponents(const FieldCtx& F, std::vector<std::uint32_t> I_S);
    static SSpecA from_elements(const FieldCtx& F, const std::vector<Fq>& A_S);
    /// |S| = |A_S| + 1
    std::size_t size() const noexcept { return I_S.size() + 1; }
};

struct Initial {
    std::uint32_t n;
    unsigned e_n;
};

/// Orbit minima of I with their orbit lengths.
std::vector<Initial> initials(const FieldCtx& F);
/// e^(n) for any n >= 1 (0 unless n is initial).
unsigned e_initial(const FieldCtx& F, long n);

struct EProfile {
    std::vector<unsigned> e_S;  // e_S[n] for n = 0..q-1; index 0 unused
    std::vector<unsigned> rank;  // rank_p M^(n), n = 1..q
    std::vector<Initial> inits;
    long n_S_prime = 0;
    long n_S = 0;

    unsigned at(long n) const;  // 0 for n >= q
};

EProfile e_profile(const SSpecA& S);

/// Closed case description of n_S, used as a cross-check.
long n_S_by_cases(const SSpecA& S, const EProfile& prof);

LambdaSeq lambda_seq_a(const SSpecA& S, long n_max);
LambdaSeq lambda_seq_a(const SSpecA& S, const EProfile& prof, long n_max);

/// Method A applies for every n.
bool fully_valid(const SSpecA& S, const EProfile& prof);

struct GenusPoints {
    mpz_class genus;
    mpz_class N;
};

/// |S| = q closed forms.
GenusPoints llcor_closed_form(const FieldCtx& F, long l);

}  // namespace rayfield
