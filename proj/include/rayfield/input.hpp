#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "rayfield/curve.hpp"
#include "rayfield/ffield.hpp"

namespace rayfield {

/// Polynomial in x and y over F_q. Grammar: sums and products of integers,
/// x, y, w (the fixed generator omega) and t (the class of the modulus
/// variable), with ^ for nonnegative integer powers and parentheses.
Poly2 parse_poly(const FieldCtx& F, std::string_view expr);

/// "affine:A,B" with element codes or "inf:K" (index into the declared
/// places at infinity); an optional suffix "/u=EXPR" sets the uniformizer.
PlaceSpec parse_place(const FieldCtx& F, std::string_view spec);

/// Comma-separated integers, e.g. "1,2,5".
std::vector<long> parse_int_list(std::string_view s);

/// Curve file: "p e g", then the modulus coefficients c0..ce (or "default"),
/// then one line "i j c0 .. c(e-1)" per term of F(x,y), then "infinity"
/// followed by one line per place at infinity:
/// "degree [ax bx ay by [X0 Y0]]" with X0, Y0 element codes.
PlaneCurve read_curve(std::istream& in);
PlaneCurve load_curve(const std::string& path);

/// Units file: lines "factor EXPR" declare polynomial factors, lines
/// "unit k1 k2 ..." declare the product of factor_i^k_i.
struct UnitsFile {
    std::vector<Poly2> factors;
    std::vector<std::vector<long>> exponents;

    RationalFunction unit(const FieldCtx& F, std::size_t k) const;
    /// prod factor_i^k_i for an arbitrary exponent vector
    RationalFunction product(const FieldCtx& F, const std::vector<long>& k) const;
    std::vector<RationalFunction> units(const FieldCtx& F) const;
};

UnitsFile read_units(const FieldCtx& F, std::istream& in);
UnitsFile load_units(const FieldCtx& F, const std::string& path);

}  // namespace rayfield
