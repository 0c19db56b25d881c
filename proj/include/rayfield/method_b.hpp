#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rayfield/curve.hpp"
#include "rayfield/ffield.hpp"
#include "rayfield/lambda.hpp"
#include "rayfield/series.hpp"

namespace rayfield {

/// ceil(log_p(n/j)) for j <= n, else 0.
long round_exp(long n, long j, long p);

/// mu^(n) of a one-unit: coordinates m_{j,b} for j prime to p below n and
/// b indexing the power basis 1, t, ..., t^(e-1), each reduced mod
/// p^round_exp(n, j).
struct OneUnitVec {
    std::uint32_t p = 2;
    unsigned e = 1;
    long n = 1;
    std::vector<long> js;
    std::vector<std::vector<std::int64_t>> m;

    static OneUnitVec zero(std::uint32_t p, unsigned e, long n);
    std::int64_t modulus(std::size_t k) const;
    bool is_zero() const;
    /// Image under the projection M^(n) -> M^(n2), n2 <= n.
    OneUnitVec projected(long n2) const;
    /// "(2,1,1)" for e = 1, "([1,0],[0,1])" otherwise.
    std::string to_string() const;
};

/// u divided by its leading coefficient; u must have valuation 0.
Series one_unit_part(const Series& u);

/// Greedy decomposition of a one-unit known to absolute precision >= n.
OneUnitVec mu_n(const Series& unit, long n);

/// prod (1 + t^b pi^j)^m_{jb} mod pi^n.
Series reconstruct(const FieldCtx& F, const OneUnitVec& m);

/// min j p^v_p(m_jb); nullopt when m vanishes at this truncation.
std::optional<long> nu(const OneUnitVec& m);

/// The multiset n_1 <= ... <= n_r, i.e. delta_S = sum t^n_i.
struct Description {
    std::uint32_t p = 2;
    std::vector<long> n_i;

    /// d_1 .. d_max
    std::vector<long> coeffs() const;
    /// |{i : n_i <= n, n_i* = n*}|
    long delta_at(long n) const;
    /// "t^2 + t^5", "3t + t^2 + 2t^3", "0" when empty.
    std::string to_string() const;
    friend bool operator==(const Description&, const Description&) = default;
};

/// Elimination on rows that share one truncation. Throws PrecisionExceeded
/// when a row vanishes before it yields a pivot.
Description describe(std::vector<OneUnitVec> rows);

LambdaSeq lambda_seq_b(const Description& d, unsigned e, long n_max);

struct DescribeRun {
    Description desc;
    long trunc = 0;
    std::vector<OneUnitVec> mu;
};

inline constexpr long default_trunc_cap = 1024;

/// Runs describe with doubling truncation; `expand(k, n)` must return the
/// one-unit part of unit k to precision >= n. DependentRows past the cap.
DescribeRun describe_adaptive(const FieldCtx& F, std::size_t r,
                              const std::function<Series(std::size_t, long)>& expand,
                              long cap = default_trunc_cap);

/// K = F_q(x), P the pole of x with pi = 1/x, units 1 - alpha pi for alpha in A_S.
DescribeRun describe_rational(const FieldCtx& F, const std::vector<Fq>& A_S,
                              long cap = default_trunc_cap);

/// S-units of a plane curve at a rational place outside S.
DescribeRun describe_units(const PlaneCurve& C, const PlaceSpec& P,
                           const std::vector<RationalFunction>& units,
                           long cap = default_trunc_cap);

}  // namespace rayfield
