#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rayfield {

/// Element of F_q, encoded as the integer sum c_0 + c_1 p + ... + c_{e-1} p^{e-1}
/// of its coordinates in the power basis of the field modulus.
struct Fq {
    std::uint32_t code = 0;

    friend bool operator==(Fq, Fq) = default;
    friend auto operator<=>(Fq, Fq) = default;
};

/// Polynomial over F_p, coefficients from the constant term upwards.
using PrimePoly = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Trial division against every monic polynomial of degree <= deg/2.
bool is_irreducible(const PrimePoly& f, std::uint32_t p);

/// F_q = F_p[t]/(modulus) with a fixed generator omega and full log tables.
/// Immutable once built; copies share the tables.
class FieldCtx {
   public:
    static constexpr std::uint32_t max_q = 1024;
    static constexpr std::uint32_t max_extension_q = 1u << 22;

    /// Deterministic: the modulus defaults to the lexicographically smallest
    /// monic irreducible of degree e (top coefficient compared first) and
    /// omega is the generator of F_q^* with the smallest code.
    static FieldCtx make(std::uint32_t p, unsigned e,
                         const std::optional<PrimePoly>& modulus = std::nullopt);

    /// F_{q^d} with a primitive modulus (omega = t), used for point counts.
    static FieldCtx make_extension(const FieldCtx& base, unsigned d);

    std::uint32_t p() const noexcept { return t_->p; }
    unsigned e() const noexcept { return t_->e; }
    std::uint32_t q() const noexcept { return t_->q; }
    const PrimePoly& modulus() const noexcept { return t_->modulus; }
    Fq omega() const noexcept { return Fq{t_->exp[t_->exp.size() > 1 ? 1 : 0]}; }

    Fq zero() const noexcept { return Fq{0}; }
    Fq one() const noexcept { return Fq{1}; }
    Fq from_int(long long k) const noexcept;
    Fq from_coords(std::span<const std::uint32_t> coords) const;
    std::vector<std::uint32_t> coords(Fq a) const;
    Fq from_code(std::uint32_t code) const;

    Fq add(Fq a, Fq b) const noexcept;
    Fq sub(Fq a, Fq b) const noexcept;
    Fq neg(Fq a) const noexcept;
    Fq mul(Fq a, Fq b) const noexcept;
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const;
    Fq pow(Fq a, long long k) const;
    /// a^(p^k); k is taken mod e so negative k gives the inverse Frobenius.
    Fq frobenius(Fq a, long long k = 1) const;

    /// omega^i for any integer i.
    Fq exp(long long i) const noexcept;
    /// The exponent in I = {1, ..., q-1}; dlog(1) = q-1.
    std::uint32_t dlog(Fq a) const;

    /// Orbits of I under i -> p*i mod (q-1), each sorted, ordered by minimum.
    std::vector<std::vector<std::uint32_t>> frobenius_orbits() const;

    /// Images of every element of `base` inside this field (indexed by code).
    std::vector<Fq> embedding_of(const FieldCtx& base) const;

    std::string to_string(Fq a) const;

   private:
    struct Tables {
        std::uint32_t p = 0;
        unsigned e = 0;
        std::uint32_t q = 0;
        PrimePoly modulus;
        std::vector<std::uint32_t> exp;  // exp[i] = omega^i, i in [0, q-1)
        std::vector<std::uint32_t> log;  // log[code], code != 0
        std::vector<std::uint32_t> pow_p;
    };
    explicit FieldCtx(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

    std::shared_ptr<const Tables> t_;
};

}  // namespace rayfield
