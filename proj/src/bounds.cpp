#include "rayfield/bounds.hpp"

#include <cmath>

#include "rayfield/error.hpp"

namespace rayfield {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

bool is_square(long q) {
    const mpz_class r = isqrt(mpz_class(q));
    return r * r == q;
}

void check_q(long q) {
    if (q < 2) fail(Errc::domain_error, "q must be a prime power >= 2");
}

long double sqrt_pow_ld(long q, unsigned k) { return std::pow(std::sqrt(static_cast<long double>(q)), static_cast<long double>(k)); }

// -cos((m+1)phi/2) / cos((m-1)phi/2)
long double F_m(unsigned m, long double phi) {
    return -std::cos((m + 1) * phi / 2) / std::cos((m - 1) * phi / 2);
}

}  // namespace

mpz_class hasse_weil(long q, long g) {
    check_q(q);
    return q + 1 + isqrt(mpz_class(4) * g * g * q);
}

mpz_class serre_bound(long q, long g) {
    check_q(q);
    return q + 1 + g * isqrt(mpz_class(4 * q));
}

bool maximality_admissible(long q, long g) {
    if (g == 0) return true;
    if (!is_square(q)) return false;
    const long r = isqrt(mpz_class(q)).get_si();
    return 2 * g == q - r || 4 * g <= (r - 1) * (r - 1);
}

long double theta(long q, long double N) {
    check_q(q);
    if (N < q + 1) fail(Errc::domain_error, "theta needs N >= q+1");
    unsigned m = 2;
    while (sqrt_pow_ld(q, m + 1) <= N - 1) ++m;
    const long double sq = std::sqrt(static_cast<long double>(q));
    const long double u =
        ((sqrt_pow_ld(q, m + 1) - sqrt_pow_ld(q, m - 1)) / (N - 1 - sqrt_pow_ld(q, m - 1)) - 1) / sq;
    long double lo = kPi / (m + 1), hi = kPi / m;
    for (int it = 0; it < 200 && hi - lo > 1e-18L * hi; ++it) {
        const long double mid = (lo + hi) / 2;
        if (F_m(m, mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return std::cos((lo + hi) / 2);
}

mpq_class f_poly(unsigned n, const mpq_class& t) {
    if (n == 0) fail(Errc::domain_error, "f_n needs n >= 1");
    const mpq_class base = -2 * t - 2;
    const unsigned h = n / 2;
    mpq_class sum = 0;
    for (unsigned i = 0; i <= h; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), n - i, i);
        mpq_class coef(binom * n, n - i);
        coef.canonicalize();
        mpq_class pw = 1;
        for (unsigned k = 0; k < h - i; ++k) pw *= base;
        sum += coef * pw;
    }
    sum.canonicalize();
    return sum;
}

QSqrtNum f_poly(unsigned n, const QSqrtNum& t) {
    if (n == 0) fail(Errc::domain_error, "f_n needs n >= 1");
    const long q = t.radicand();
    QSqrtNum base = t;
    base *= mpq_class(-2);
    base += mpq_class(-2);
    const unsigned h = n / 2;
    QSqrtNum sum(q);
    for (unsigned i = 0; i <= h; ++i) {
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), n - i, i);
        mpq_class coef(binom * n, n - i);
        coef.canonicalize();
        QSqrtNum pw(q, 1, 0);
        for (unsigned k = 0; k < h - i; ++k) pw *= base;
        pw *= coef;
        sum += pw;
    }
    return sum;
}

unsigned theta_branch(long double t) {
    if (!(t >= 0 && t < 1)) fail(Errc::domain_error, "theta_inv needs 0 <= t < 1");
    unsigned m = 2;
    while (t > std::cos(kPi / (m + 1))) ++m;
    return m;
}

QSqrtNum theta_inv_on_branch(long q, const QSqrtNum& t, unsigned m) {
    const QSqrtNum u = f_poly(m + 1, t) / f_poly(m - 1, t);
    QSqrtNum num = QSqrtNum::sqrt_pow(q, m + 1) + QSqrtNum::sqrt_pow(q, m) * u;
    QSqrtNum den = QSqrtNum::sqrt_pow(q, 1) * u;
    den += mpq_class(1);
    QSqrtNum r = num / den;
    r += mpq_class(1);
    return r;
}

QSqrtNum theta_inv(long q, const QSqrtNum& t) {
    check_q(q);
    if (t.radicand() != q) fail(Errc::domain_error, "argument lives in a different Q(sqrt q)");
    if (t.sign() < 0 || t >= mpq_class(1)) fail(Errc::domain_error, "theta_inv needs 0 <= t < 1");
    const long double tv = t.to_long_double();
    const unsigned m = theta_branch(tv);
    QSqrtNum r = theta_inv_on_branch(q, t, m);
    // Near a branch endpoint both closed forms must agree.
    for (unsigned other : {m - 1, m + 1}) {
        if (other < 2) continue;
        const long double edge = std::cos(kPi / std::max(m, other));
        if (std::fabs(tv - edge) < 1e-12L) {
            const QSqrtNum alt = theta_inv_on_branch(q, t, other);
            if (std::fabs(alt.to_long_double() - r.to_long_double()) > 1e-9L * std::fabs(r.to_long_double()))
                fail(Errc::branch_mismatch, "adjacent branches disagree at t = " + t.to_string());
        }
    }
    const long double back = theta(q, r.to_long_double());
    if (std::fabs(back - tv) > 1e-9L)
        fail(Errc::branch_mismatch, "closed form and bisection disagree at t = " + t.to_string());
    return r;
}

long double oesterle_genus(long q, long double N) {
    const long double x = std::sqrt(static_cast<long double>(q)) * theta(q, N);
    return 1 + (x - 1) * N / (q - 2 * x + 1);
}

QSqrtNum hbar_t(long q, long g, long N) {
    // (N + (g-1)(q+1)) / (sqrt(q) (N + 2g - 2))
    if (N + 2 * g - 2 == 0) fail(Errc::domain_error, "N + 2g - 2 vanishes");
    QSqrtNum t(q, mpq_class(N + (g - 1) * (q + 1), N + 2 * g - 2), 0);
    return t / QSqrtNum::sqrt_pow(q, 1);
}

bool oesterle_admits(long q, long g, const mpz_class& N) {
    // g_q(N) <= g  <=>  theta(N) <= t  <=>  t >= 1 or theta_inv(t) >= N.
    if (N < q + 1) fail(Errc::domain_error, "Oesterle genus needs N >= q+1");
    const QSqrtNum t = hbar_t(q, g, N.get_si());
    if (t.sign() < 0) return false;
    if (t >= mpq_class(1)) return true;
    return theta_inv(q, t) >= mpq_class(N);
}

mpz_class oesterle_nbar(long q, long g) {
    check_q(q);
    if (g < 0) fail(Errc::domain_error, "genus must be nonnegative");
    mpz_class lo = q + 1;  // always admitted
    mpz_class hi = hasse_weil(q, g) + 1;
    if (oesterle_admits(q, g, hi)) fail(Errc::domain_error, "Oesterle bound above Hasse-Weil");
    while (hi - lo > 1) {
        const mpz_class mid = (lo + hi) / 2;
        if (oesterle_admits(q, g, mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

QSqrtNum hbar(long q, long g, long N) {
    check_q(q);
    if (g < 1) fail(Errc::domain_error, "hbar needs g >= 1");
    if (N < 1) fail(Errc::domain_error, "hbar needs N >= 1");
    // N > (sqrt(q)-1)(g-1)  <=>  N + g - 1 > sqrt(q)(g-1)
    QSqrtNum lhs(q, mpq_class(N + g - 1), 0);
    if (lhs <= QSqrtNum(q, 0, mpq_class(g - 1)))
        fail(Errc::domain_error, "hbar needs N > (sqrt(q)-1)(g-1)");
    QSqrtNum r = theta_inv(q, hbar_t(q, g, N));
    r *= mpq_class(1, N);
    return r;
}

BoundReport bound_report(long q, long g) {
    BoundReport r;
    r.q = q;
    r.g = g;
    r.hasse_weil = hasse_weil(q, g);
    r.serre = serre_bound(q, g);
    r.oesterle = oesterle_nbar(q, g);
    r.maximal_admissible = maximality_admissible(q, g);
    return r;
}

}  // namespace rayfield
