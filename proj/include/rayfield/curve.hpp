#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rayfield/ffield.hpp"
#include "rayfield/series.hpp"

namespace rayfield {

/// Sparse bivariate polynomial sum c_ij x^i y^j; zero coefficients are never stored.
struct Poly2 {
    std::map<std::pair<int, int>, Fq> terms;

    bool is_zero() const noexcept { return terms.empty(); }
    int deg_x() const;
    int deg_y() const;
    friend bool operator==(const Poly2&, const Poly2&) = default;
};

Poly2 poly2_const(const FieldCtx& F, Fq c);
Poly2 poly2_x(const FieldCtx& F);
Poly2 poly2_y(const FieldCtx& F);
Poly2 poly2_add(const FieldCtx& F, const Poly2& a, const Poly2& b);
Poly2 poly2_sub(const FieldCtx& F, const Poly2& a, const Poly2& b);
Poly2 poly2_mul(const FieldCtx& F, const Poly2& a, const Poly2& b);
Poly2 poly2_pow(const FieldCtx& F, const Poly2& a, unsigned k);
Poly2 poly2_dx(const FieldCtx& F, const Poly2& a);
Poly2 poly2_dy(const FieldCtx& F, const Poly2& a);
Fq poly2_eval(const FieldCtx& F, const Poly2& a, Fq x, Fq y);
std::string poly2_to_string(const FieldCtx& F, const Poly2& a);

/// Monomial substitution x = X^ax Y^bx, y = X^ay Y^by (determinant +-1),
/// used to reach the places over x = infinity. The place is the smooth
/// point (X0, Y0) of the transformed curve.
struct Chart {
    int ax = 0, bx = 0, ay = 0, by = 0;
    Fq X0, Y0;
};

struct InfinitePlace {
    unsigned degree = 1;
    std::optional<Chart> chart;
};

/// Quotient num/den of polynomials in x and y.
struct RationalFunction {
    Poly2 num;
    Poly2 den;  // empty means 1
};

class PlaneCurve {
   public:
    PlaneCurve(FieldCtx F, Poly2 equation, unsigned genus, std::vector<InfinitePlace> infinity);

    const FieldCtx& field() const noexcept { return F_; }
    const Poly2& equation() const noexcept { return f_; }
    unsigned genus() const noexcept { return genus_; }
    const std::vector<InfinitePlace>& infinity() const noexcept { return inf_; }

    /// The transformed equation G(X, Y) of a chart.
    Poly2 chart_equation(const Chart& c) const;

   private:
    FieldCtx F_;
    Poly2 f_;
    unsigned genus_;
    std::vector<InfinitePlace> inf_;
};

/// A rational place: an affine point or a declared place at infinity,
/// optionally with a uniformizer other than the default one.
struct PlaceSpec {
    enum class Kind { affine, infinite };
    Kind kind = Kind::affine;
    Fq alpha, beta;
    std::size_t index = 0;
    std::optional<RationalFunction> uniformizer;

    static PlaceSpec affine(Fq a, Fq b) { return PlaceSpec{Kind::affine, a, b, 0, std::nullopt}; }
    static PlaceSpec at_infinity(std::size_t k) { return PlaceSpec{Kind::infinite, Fq{}, Fq{}, k, std::nullopt}; }
    /// "affine:a,b" or "inf:k" with element codes.
    std::string label() const;
};

/// x and y as Laurent series in the uniformizer.
struct LocalCoords {
    Series x;
    Series y;
};

/// Expansion of x and y at the place, lifted by Newton iteration on the
/// nonvanishing partial derivative; precision of the lift is at least N.
LocalCoords local_coordinates(const PlaneCurve& C, const PlaceSpec& P, long N);

Series eval_poly(const FieldCtx& F, const Poly2& f, const LocalCoords& L);

/// num/den as a Laurent series with every coefficient below pi^n exact.
Series local_expand(const PlaneCurve& C, const PlaceSpec& P, const RationalFunction& f, long n);

/// Valuation with adaptive truncation up to n = 512.
long valuation(const PlaneCurve& C, const PlaceSpec& P, const RationalFunction& f);

/// All degree-one places: affine rational points followed by rational places at infinity.
std::vector<PlaceSpec> rational_places(const PlaneCurve& C);

/// Number of degree-one places of K F_{q^d}.
std::uint64_t count_points(const PlaneCurve& C, unsigned d);

/// Coefficients a_0..a_2g of L(t).
std::vector<mpz_class> zeta_numerator(const PlaneCurve& C);
mpz_class class_number(const PlaneCurve& C);

/// N_d recovered from L(t) via reciprocal-root power sums.
std::vector<mpz_class> counts_from_zeta(long q, const std::vector<mpz_class>& L, unsigned dmax);

}  // namespace rayfield
