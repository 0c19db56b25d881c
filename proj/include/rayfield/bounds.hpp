#pragma once

#include <gmpxx.h>

#include <optional>

#include "rayfield/qsqrt.hpp"

namespace rayfield {

struct BoundReport {
    long q = 0;
    long g = 0;
    mpz_class hasse_weil;
    mpz_class serre;
    mpz_class oesterle;
    bool maximal_admissible = false;
};

mpz_class hasse_weil(long q, long g);
mpz_class serre_bound(long q, long g);
bool maximality_admissible(long q, long g);

/// theta_q(N) by bisection on F_m; N >= q+1.
long double theta(long q, long double N);

/// f_n(t) for rational or Q(sqrt q) arguments.
QSqrtNum f_poly(unsigned n, const QSqrtNum& t);
mpq_class f_poly(unsigned n, const mpq_class& t);

/// The branch m >= 2 with cos(pi/m) <= t <= cos(pi/(m+1)).
unsigned theta_branch(long double t);

/// Exact closed form of the inverse of theta on branch m.
QSqrtNum theta_inv_on_branch(long q, const QSqrtNum& t, unsigned m);

/// Inverse of theta, exact in Q(sqrt q); cross-checked against bisection.
QSqrtNum theta_inv(long q, const QSqrtNum& t);

/// g_q(N) as a float, for reporting only.
long double oesterle_genus(long q, long double N);

/// Exact test g_q(N) <= g for an integer N >= q+1.
bool oesterle_admits(long q, long g, const mpz_class& N);

mpz_class oesterle_nbar(long q, long g);

/// The t of the S-class-number estimate.
QSqrtNum hbar_t(long q, long g, long N);
QSqrtNum hbar(long q, long g, long N);

BoundReport bound_report(long q, long g);

}  // namespace rayfield
