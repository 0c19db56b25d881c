#pragma once

#include <string>
#include <vector>

#include "rayfield/ffield.hpp"

namespace rayfield {

/// Truncated Laurent series sum c_i pi^(val+i) + O(pi^abs_prec) over F_q.
/// Every stored coefficient is exact. The leading stored coefficient is
/// nonzero unless the series is zero to its precision (then it stores nothing
/// and val == abs_prec).
class Series {
   public:
    Series(FieldCtx F, long val, std::vector<Fq> coeffs);

    static Series zero(const FieldCtx& F, long abs_prec);
    static Series constant(const FieldCtx& F, Fq c, long abs_prec);
    /// c * pi^k + O(pi^abs_prec)
    static Series monomial(const FieldCtx& F, Fq c, long k, long abs_prec);

    const FieldCtx& field() const noexcept { return F_; }
    long valuation() const noexcept { return val_; }
    long abs_prec() const noexcept { return val_ + static_cast<long>(c_.size()); }
    long rel_prec() const noexcept { return static_cast<long>(c_.size()); }
    bool is_zero() const noexcept { return c_.empty(); }
    /// Coefficient of pi^k; k must be below abs_prec.
    Fq coeff(long k) const;
    Fq leading() const;
    const std::vector<Fq>& coeffs() const noexcept { return c_; }

    Series truncated(long abs_prec) const;
    Series shifted(long k) const;  // times pi^k
    Series scaled(Fq a) const;
    Series plus_scalar(Fq a) const;

    Series operator-() const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);
    Series inv() const;
    friend Series operator/(const Series& a, const Series& b) { return a * b.inv(); }
    Series pow(long k) const;
    /// Formal derivative d/dpi.
    Series derivative() const;

    /// this(g) for g of positive valuation.
    Series compose(const Series& g) const;
    /// Compositional inverse of a series of valuation exactly 1.
    Series reverse() const;

    std::string to_string() const;

   private:
    void normalize();

    FieldCtx F_;
    long val_;
    std::vector<Fq> c_;
};

}  // namespace rayfield
