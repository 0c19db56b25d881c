#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rayfield/ffield.hpp"
#include "rayfield/lambda.hpp"
#include "rayfield/method_a.hpp"
#include "rayfield/method_b.hpp"

namespace rayfield {

/// S = {P_a : a in T} for K = F_q(x), 0 in T, with P the pole of x.
/// lambda comes from Method A while it is valid and from the S-description otherwise.
class RationalSet {
   public:
    RationalSet(const FieldCtx& F, std::vector<std::uint32_t> I_S);
    /// codes of the nonzero elements of T
    static RationalSet from_codes(const FieldCtx& F, const std::vector<std::uint32_t>& codes);

    const FieldCtx& field() const noexcept { return S_.F; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return S_.I_S; }
    std::vector<std::uint32_t> codes() const;
    long size() const noexcept { return static_cast<long>(S_.size()); }
    bool method_a_valid() const noexcept { return fully_valid(S_, prof_); }

    /// certified through n_max
    const LambdaSeq& lambda(long n_max);
    /// certified at least until it reaches l
    const LambdaSeq& lambda_reaching(long l);
    const Description& description();

   private:
    SSpecA S_;
    EProfile prof_;
    std::optional<Description> desc_;
    LambdaSeq cache_;
};

/// Smallest rotation i -> i + k (mod q-1) of an exponent set, as a sorted set.
std::vector<std::uint32_t> min_rotation(const std::vector<std::uint32_t>& I_S, std::uint32_t q);
bool is_min_rotation(const std::vector<std::uint32_t>& I_S, std::uint32_t q);

/// Calls f on every (|S|-1)-subset of I that is its own minimal rotation
/// (or on every subset when `all`); stops early when f returns false.
void for_each_subset(std::uint32_t q, long s1, bool all,
                     const std::function<bool(const std::vector<std::uint32_t>&)>& f);

mpz_class binomial(long n, long k);

struct RationalTarget {
    long g = 0;
    mpz_class N;
    std::optional<long> n;
    long l = 0;
    long s1 = 0;
};

/// Conductor exponent as printed: 0 for the unramified case l = 0.
long printed_conductor(long l, long n);

bool matches(RationalSet& S, const RationalTarget& t);

struct SearchResult {
    std::vector<std::optional<std::vector<std::uint32_t>>> found;  // codes, per target
    bool exhaustive = false;
    long tried = 0;
};

inline constexpr long default_exhaustive_limit = 20000;

/// Looks for sets of one common size reproducing each target. Enumerates all
/// subsets up to rotation when there are at most `exhaustive_limit` of them;
/// otherwise draws `budget` candidates from structured families (unions of
/// Frobenius orbits, additive and multiplicative cosets, trace conditions)
/// with a fixed seed.
SearchResult search_rational(const FieldCtx& F, const std::vector<RationalTarget>& targets, long budget,
                             long exhaustive_limit = default_exhaustive_limit);

}  // namespace rayfield
