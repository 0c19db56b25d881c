#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace rayfield {

/// Exact a + b*sqrt(q) with rational a, b. When q is a perfect square the
/// value is kept with b = 0.
class QSqrtNum {
   public:
    explicit QSqrtNum(long q = 1) : q_(q) { normalize(); }
    QSqrtNum(long q, mpq_class a, mpq_class b = 0);

    /// sqrt(q)^k as an element of Q(sqrt q).
    static QSqrtNum sqrt_pow(long q, unsigned k);

    long radicand() const noexcept { return q_; }
    const mpq_class& a() const noexcept { return a_; }
    const mpq_class& b() const noexcept { return b_; }
    bool is_rational() const noexcept { return b_ == 0; }

    QSqrtNum operator-() const;
    QSqrtNum& operator+=(const QSqrtNum& o);
    QSqrtNum& operator-=(const QSqrtNum& o);
    QSqrtNum& operator*=(const QSqrtNum& o);
    QSqrtNum& operator/=(const QSqrtNum& o);
    friend QSqrtNum operator+(QSqrtNum x, const QSqrtNum& y) { return x += y; }
    friend QSqrtNum operator-(QSqrtNum x, const QSqrtNum& y) { return x -= y; }
    friend QSqrtNum operator*(QSqrtNum x, const QSqrtNum& y) { return x *= y; }
    friend QSqrtNum operator/(QSqrtNum x, const QSqrtNum& y) { return x /= y; }

    QSqrtNum& operator+=(const mpq_class& r) { a_ += r; return *this; }
    QSqrtNum& operator*=(const mpq_class& r);

    /// -1, 0, 1. Decided exactly.
    int sign() const;
    mpz_class floor() const;
    long double to_long_double() const;

    friend bool operator==(const QSqrtNum& x, const QSqrtNum& y);
    friend std::strong_ordering operator<=>(const QSqrtNum& x, const QSqrtNum& y);
    friend bool operator==(const QSqrtNum& x, const mpq_class& r) { return x.b_ == 0 && x.a_ == r; }
    friend std::strong_ordering operator<=>(const QSqrtNum& x, const mpq_class& r);

    /// "(a+b*sqrt(q))/d" style with a common denominator.
    std::string to_string() const;

   private:
    void normalize();
    void check_same(const QSqrtNum& o) const;

    long q_;
    long root_ = 0;  // sqrt(q) when q is a square, else 0
    mpq_class a_ = 0;
    mpq_class b_ = 0;
};

/// Integer square root, floor.
mpz_class isqrt(const mpz_class& n);

}  // namespace rayfield
