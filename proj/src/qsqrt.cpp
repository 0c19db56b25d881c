#include "rayfield/qsqrt.hpp"

#include <cmath>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

mpz_class isqrt(const mpz_class& n) {
    if (n < 0) fail(Errc::domain_error, "isqrt of a negative number");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

QSqrtNum::QSqrtNum(long q, mpq_class a, mpq_class b) : q_(q), a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
    normalize();
}

void QSqrtNum::normalize() {
    if (q_ <= 0) fail(Errc::domain_error, "radicand must be positive");
    const mpz_class r = isqrt(mpz_class(q_));
    if (r * r == q_) {
        root_ = r.get_si();
        if (b_ != 0) {
            a_ += b_ * root_;
            b_ = 0;
        }
    } else {
        root_ = 0;
    }
}

void QSqrtNum::check_same(const QSqrtNum& o) const {
    if (o.q_ != q_) fail(Errc::domain_error, "mixed radicands " + std::to_string(q_) + " and " + std::to_string(o.q_));
}

QSqrtNum QSqrtNum::sqrt_pow(long q, unsigned k) {
    mpz_class base;
    mpz_ui_pow_ui(base.get_mpz_t(), static_cast<unsigned long>(q), k / 2);
    if (k % 2 == 0) return QSqrtNum(q, mpq_class(base), 0);
    return QSqrtNum(q, 0, mpq_class(base));
}

QSqrtNum QSqrtNum::operator-() const { return QSqrtNum(q_, -a_, -b_); }

QSqrtNum& QSqrtNum::operator+=(const QSqrtNum& o) {
    check_same(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QSqrtNum& QSqrtNum::operator-=(const QSqrtNum& o) {
    check_same(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QSqrtNum& QSqrtNum::operator*=(const QSqrtNum& o) {
    check_same(o);
    mpq_class na = a_ * o.a_ + b_ * o.b_ * q_;
    mpq_class nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

QSqrtNum& QSqrtNum::operator*=(const mpq_class& r) {
    a_ *= r;
    b_ *= r;
    return *this;
}

QSqrtNum& QSqrtNum::operator/=(const QSqrtNum& o) {
    check_same(o);
    const mpq_class norm = o.a_ * o.a_ - o.b_ * o.b_ * q_;
    if (norm == 0) fail(Errc::domain_error, "division by zero in Q(sqrt q)");
    QSqrtNum conj(q_, o.a_ / norm, -o.b_ / norm);
    return *this *= conj;
}

int QSqrtNum::sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 q
    const int c = cmp(a_ * a_, b_ * b_ * q_);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

mpz_class QSqrtNum::floor() const {
    // a + b sqrt(q) = (A + B sqrt(q))/D with integers; floor via isqrt of B^2 q.
    const mpz_class D = lcm(a_.get_den(), b_.get_den());
    const mpz_class A = a_.get_num() * (D / a_.get_den());
    const mpz_class B = b_.get_num() * (D / b_.get_den());
    // s = floor(B sqrt(q)) exactly
    mpz_class s;
    if (B >= 0) {
        s = isqrt(B * B * q_);
    } else {
        const mpz_class t = isqrt(B * B * q_);
        s = (t * t == B * B * q_) ? mpz_class(-t) : mpz_class(-t - 1);
    }
    // A + s <= A + B sqrt(q) < A + s + 1, and both bounds are integers.
    const mpz_class lo = A + s;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), lo.get_mpz_t(), D.get_mpz_t());
    return f;
}

long double QSqrtNum::to_long_double() const {
    return static_cast<long double>(a_.get_d()) +
           static_cast<long double>(b_.get_d()) * std::sqrt(static_cast<long double>(q_));
}

bool operator==(const QSqrtNum& x, const QSqrtNum& y) { return x.q_ == y.q_ && x.a_ == y.a_ && x.b_ == y.b_; }

std::strong_ordering operator<=>(const QSqrtNum& x, const QSqrtNum& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const QSqrtNum& x, const mpq_class& r) {
    return x <=> QSqrtNum(x.q_, r, 0);
}

std::string QSqrtNum::to_string() const {
    std::ostringstream os;
    if (b_ == 0) {
        os << a_;
        return os.str();
    }
    const mpz_class D = lcm(a_.get_den(), b_.get_den());
    const mpz_class A = a_.get_num() * (D / a_.get_den());
    const mpz_class B = b_.get_num() * (D / b_.get_den());
    if (D != 1) os << "(";
    if (A != 0) os << A << (B > 0 ? "+" : "");
    if (B == -1)
        os << "-";
    else if (B != 1)
        os << B << "*";
    os << "sqrt(" << q_ << ")";
    if (D != 1) os << ")/" << D;
    return os.str();
}

}  // namespace rayfield
