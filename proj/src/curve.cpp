#include "rayfield/curve.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

int Poly2::deg_x() const {
    int d = -1;
    for (const auto& [k, c] : terms) d = std::max(d, k.first);
    return d;
}

int Poly2::deg_y() const {
    int d = -1;
    for (const auto& [k, c] : terms) d = std::max(d, k.second);
    return d;
}

namespace {

void add_term(const FieldCtx& F, Poly2& p, int i, int j, Fq c) {
    if (c == F.zero()) return;
    auto [it, inserted] = p.terms.try_emplace({i, j}, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second == F.zero()) p.terms.erase(it);
    }
}

}  // namespace

Poly2 poly2_const(const FieldCtx& F, Fq c) {
    Poly2 p;
    add_term(F, p, 0, 0, c);
    return p;
}

Poly2 poly2_x(const FieldCtx& F) {
    Poly2 p;
    add_term(F, p, 1, 0, F.one());
    return p;
}

Poly2 poly2_y(const FieldCtx& F) {
    Poly2 p;
    add_term(F, p, 0, 1, F.one());
    return p;
}

Poly2 poly2_add(const FieldCtx& F, const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [k, c] : b.terms) add_term(F, r, k.first, k.second, c);
    return r;
}

Poly2 poly2_sub(const FieldCtx& F, const Poly2& a, const Poly2& b) {
    Poly2 r = a;
    for (const auto& [k, c] : b.terms) add_term(F, r, k.first, k.second, F.neg(c));
    return r;
}

Poly2 poly2_mul(const FieldCtx& F, const Poly2& a, const Poly2& b) {
    Poly2 r;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) add_term(F, r, ka.first + kb.first, ka.second + kb.second, F.mul(ca, cb));
    return r;
}

Poly2 poly2_pow(const FieldCtx& F, const Poly2& a, unsigned k) {
    Poly2 r = poly2_const(F, F.one());
    Poly2 b = a;
    while (k) {
        if (k & 1) r = poly2_mul(F, r, b);
        k >>= 1;
        if (k) b = poly2_mul(F, b, b);
    }
    return r;
}

Poly2 poly2_dx(const FieldCtx& F, const Poly2& a) {
    Poly2 r;
    for (const auto& [k, c] : a.terms)
        if (k.first > 0) add_term(F, r, k.first - 1, k.second, F.mul(F.from_int(k.first), c));
    return r;
}

Poly2 poly2_dy(const FieldCtx& F, const Poly2& a) {
    Poly2 r;
    for (const auto& [k, c] : a.terms)
        if (k.second > 0) add_term(F, r, k.first, k.second - 1, F.mul(F.from_int(k.second), c));
    return r;
}

Fq poly2_eval(const FieldCtx& F, const Poly2& a, Fq x, Fq y) {
    Fq s = F.zero();
    for (const auto& [k, c] : a.terms) s = F.add(s, F.mul(c, F.mul(F.pow(x, k.first), F.pow(y, k.second))));
    return s;
}

std::string poly2_to_string(const FieldCtx& F, const Poly2& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.terms.rbegin(); it != a.terms.rend(); ++it) {
        const auto [i, j] = it->first;
        if (!first) os << " + ";
        first = false;
        const bool unit = it->second == F.one();
        if (!unit || (i == 0 && j == 0)) os << F.to_string(it->second);
        if (i > 0) os << (unit ? "" : "*") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        if (j > 0) os << ((unit && i == 0) ? "" : "*") << "y" << (j > 1 ? "^" + std::to_string(j) : "");
    }
    return os.str();
}

PlaneCurve::PlaneCurve(FieldCtx F, Poly2 equation, unsigned genus, std::vector<InfinitePlace> infinity)
    : F_(std::move(F)), f_(std::move(equation)), genus_(genus), inf_(std::move(infinity)) {
    if (f_.is_zero() || f_.deg_y() < 1) fail(Errc::domain_error, "curve equation must involve y");
    for (const auto& pl : inf_) {
        if (pl.degree == 0) fail(Errc::domain_error, "place degree must be positive");
        if (pl.chart) {
            const auto& c = *pl.chart;
            const long det = static_cast<long>(c.ax) * c.by - static_cast<long>(c.bx) * c.ay;
            if (det != 1 && det != -1) fail(Errc::domain_error, "chart must be unimodular");
        }
    }
}

Poly2 PlaneCurve::chart_equation(const Chart& c) const {
    int minX = std::numeric_limits<int>::max(), minY = std::numeric_limits<int>::max();
    for (const auto& [k, v] : f_.terms) {
        minX = std::min(minX, k.first * c.ax + k.second * c.ay);
        minY = std::min(minY, k.first * c.bx + k.second * c.by);
    }
    Poly2 g;
    for (const auto& [k, v] : f_.terms)
        add_term(F_, g, k.first * c.ax + k.second * c.ay - minX, k.first * c.bx + k.second * c.by - minY, v);
    return g;
}

std::string PlaceSpec::label() const {
    if (kind == Kind::infinite) return "inf:" + std::to_string(index);
    return "affine:" + std::to_string(alpha.code) + "," + std::to_string(beta.code);
}

namespace {

Series eval2(const FieldCtx& F, const Poly2& f, const Series& xs, const Series& ys) {
    const int dx = f.deg_x(), dy = f.deg_y();
    std::vector<Series> xp, yp;
    if (dx >= 1) {
        xp.push_back(xs);
        for (int i = 2; i <= dx; ++i) xp.push_back(xp.back() * xs);
    }
    if (dy >= 1) {
        yp.push_back(ys);
        for (int j = 2; j <= dy; ++j) yp.push_back(yp.back() * ys);
    }
    std::optional<Series> acc;
    Fq constant = F.zero();
    for (const auto& [k, c] : f.terms) {
        const auto [i, j] = k;
        if (i == 0 && j == 0) {
            constant = c;
            continue;
        }
        Series t = i == 0 ? yp[j - 1] : j == 0 ? xp[i - 1] : xp[i - 1] * yp[j - 1];
        t = t.scaled(c);
        acc = acc ? *acc + t : t;
    }
    if (!acc) return Series::constant(F, constant, std::min(xs.abs_prec(), ys.abs_prec()));
    return acc->plus_scalar(constant);
}

// Lift a smooth point (X0, Y0) of G to power series in a local parameter.
std::pair<Series, Series> lift_point(const FieldCtx& F, const Poly2& G, Fq X0, Fq Y0, long N) {
    if (poly2_eval(F, G, X0, Y0) != F.zero()) fail(Errc::domain_error, "point is not on the curve");
    const Poly2 GX = poly2_dx(F, G), GY = poly2_dy(F, G);
    const bool solve_y = poly2_eval(F, GY, X0, Y0) != F.zero();
    if (!solve_y && poly2_eval(F, GX, X0, Y0) == F.zero())
        fail(Errc::singular_point, "both partial derivatives vanish");
    const Series param = Series::monomial(F, F.one(), 1, N).plus_scalar(solve_y ? X0 : Y0);
    Series other = Series::constant(F, solve_y ? Y0 : X0, N);
    const Poly2& D = solve_y ? GY : GX;
    for (long prec = 1; prec < 2 * N; prec *= 2) {
        const Series& xs = solve_y ? param : other;
        const Series& ys = solve_y ? other : param;
        const Series num = eval2(F, G, xs, ys);
        if (num.is_zero() && num.abs_prec() >= N) break;
        other = (other - num / eval2(F, D, xs, ys)).truncated(N);
    }
    const Series& xs = solve_y ? param : other;
    const Series& ys = solve_y ? other : param;
    const Series residual = eval2(F, G, xs, ys);
    if (!residual.is_zero() || residual.abs_prec() < N)
        fail(Errc::precision_exceeded, "Newton lift did not converge");
    return {xs, ys};
}

Series monomial_series(const FieldCtx& F, const Series& X, int a, const Series& Y, int b, long N) {
    if (a == 0 && b == 0) return Series::constant(F, F.one(), N);
    if (a == 0) return Y.pow(b);
    if (b == 0) return X.pow(a);
    return X.pow(a) * Y.pow(b);
}

LocalCoords raw_coordinates(const PlaneCurve& C, const PlaceSpec& P, long N) {
    const FieldCtx& F = C.field();
    if (P.kind == PlaceSpec::Kind::affine) {
        auto [xs, ys] = lift_point(F, C.equation(), P.alpha, P.beta, N);
        return {xs, ys};
    }
    if (P.index >= C.infinity().size()) fail(Errc::domain_error, "no such place at infinity");
    const auto& pl = C.infinity()[P.index];
    if (pl.degree != 1) fail(Errc::domain_error, "place at infinity is not rational");
    if (!pl.chart) fail(Errc::domain_error, "place at infinity has no chart");
    const Chart& c = *pl.chart;
    auto [Xs, Ys] = lift_point(F, C.chart_equation(c), c.X0, c.Y0, N);
    return {monomial_series(F, Xs, c.ax, Ys, c.bx, N), monomial_series(F, Xs, c.ay, Ys, c.by, N)};
}

}  // namespace

Series eval_poly(const FieldCtx& F, const Poly2& f, const LocalCoords& L) { return eval2(F, f, L.x, L.y); }

LocalCoords local_coordinates(const PlaneCurve& C, const PlaceSpec& P, long N) {
    const FieldCtx& F = C.field();
    if (!P.uniformizer) return raw_coordinates(C, P, N);
    for (long work = N + 8;; work *= 2) {
        if (work > 8192) fail(Errc::precision_exceeded, "uniformizer change needs too much precision");
        LocalCoords L = raw_coordinates(C, P, work);
        Series u = eval_poly(F, P.uniformizer->num, L);
        if (!P.uniformizer->den.is_zero()) u = u / eval_poly(F, P.uniformizer->den, L);
        if (u.is_zero()) continue;
        if (u.valuation() != 1) fail(Errc::domain_error, "uniformizer does not have valuation 1");
        const Series t = u.reverse();
        LocalCoords out{L.x.compose(t), L.y.compose(t)};
        if (out.x.abs_prec() >= N && out.y.abs_prec() >= N) return out;
    }
}

Series local_expand(const PlaneCurve& C, const PlaceSpec& P, const RationalFunction& f, long n) {
    const FieldCtx& F = C.field();
    for (long work = std::max<long>(n, 8) + 8;; work *= 2) {
        if (work > 8192) fail(Errc::precision_exceeded, "expansion needs too much precision");
        const LocalCoords L = local_coordinates(C, P, work);
        const Series a = eval_poly(F, f.num, L);
        if (f.den.is_zero()) {
            if (a.abs_prec() >= n) return a.truncated(n);
            continue;
        }
        const Series b = eval_poly(F, f.den, L);
        if (b.is_zero()) {
            if (b.abs_prec() > 4 * 512) fail(Errc::zero_denominator, "denominator vanishes on the curve");
            continue;
        }
        const Series r = a.is_zero() ? Series::zero(F, a.abs_prec() - b.valuation()) : a / b;
        if (r.abs_prec() >= n) return r.truncated(n);
    }
}

long valuation(const PlaneCurve& C, const PlaceSpec& P, const RationalFunction& f) {
    for (long n = 16; n <= 512; n *= 2) {
        const Series s = local_expand(C, P, f, n);
        if (!s.is_zero()) return s.valuation();
    }
    fail(Errc::valuation_cap_exceeded, "no nonzero coefficient below pi^512");
}

std::vector<PlaceSpec> rational_places(const PlaneCurve& C) {
    const FieldCtx& F = C.field();
    std::vector<PlaceSpec> out;
    for (std::uint32_t a = 0; a < F.q(); ++a)
        for (std::uint32_t b = 0; b < F.q(); ++b)
            if (poly2_eval(F, C.equation(), Fq{a}, Fq{b}) == F.zero()) out.push_back(PlaceSpec::affine(Fq{a}, Fq{b}));
    for (std::size_t k = 0; k < C.infinity().size(); ++k)
        if (C.infinity()[k].degree == 1) out.push_back(PlaceSpec::at_infinity(k));
    return out;
}

namespace {

using UPoly = std::vector<Fq>;

void utrim(const FieldCtx& E, UPoly& a) {
    while (!a.empty() && a.back() == E.zero()) a.pop_back();
}

UPoly umod(const FieldCtx& E, UPoly a, const UPoly& m) {
    utrim(E, a);
    const std::size_t dm = m.size() - 1;
    const Fq lead_inv = E.inv(m.back());
    while (a.size() > dm) {
        const Fq c = E.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = E.sub(a[shift + i], E.mul(c, m[i]));
        utrim(E, a);
    }
    return a;
}

UPoly umulmod(const FieldCtx& E, const UPoly& a, const UPoly& b, const UPoly& m) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, E.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = E.add(r[i + j], E.mul(a[i], b[j]));
    return umod(E, std::move(r), m);
}

std::size_t ugcd_degree(const FieldCtx& E, UPoly a, UPoly b) {
    utrim(E, a);
    utrim(E, b);
    while (!b.empty()) {
        UPoly r = umod(E, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Distinct roots in E of a nonzero polynomial f of degree >= 1.
std::uint64_t count_roots(const FieldCtx& E, UPoly f) {
    utrim(E, f);
    if (f.size() <= 1) return 0;
    if (f.size() == 2) return 1;
    // y^Q mod f by repeated p-th powers.
    UPoly ypow = umod(E, UPoly{E.zero(), E.one()}, f);
    const unsigned steps = E.e();
    for (unsigned s = 0; s < steps; ++s) {
        UPoly base = ypow, acc{E.one()};
        for (std::uint32_t k = E.p(); k; k >>= 1) {
            if (k & 1) acc = umulmod(E, acc, base, f);
            if (k > 1) base = umulmod(E, base, base, f);
        }
        ypow = acc;
    }
    // y^Q - y
    if (ypow.size() < 2) ypow.resize(2, E.zero());
    ypow[1] = E.sub(ypow[1], E.one());
    return ugcd_degree(E, f, ypow);
}

}  // namespace

std::uint64_t count_points(const PlaneCurve& C, unsigned d) {
    const FieldCtx& F = C.field();
    if (d == 0) fail(Errc::domain_error, "extension degree must be positive");
    if (d > 12) fail(Errc::cap_exceeded, "extension degree above 12");
    std::uint64_t Q = 1;
    for (unsigned i = 0; i < d; ++i) {
        Q *= F.q();
        if (Q > FieldCtx::max_extension_q) fail(Errc::cap_exceeded, "q^d above 2^22");
    }
    const FieldCtx E = d == 1 ? F : FieldCtx::make_extension(F, d);
    const std::vector<Fq> img = d == 1 ? std::vector<Fq>{} : E.embedding_of(F);
    auto embed = [&](Fq c) { return d == 1 ? c : img[c.code]; };

    const int dy = C.equation().deg_y();
    std::vector<std::vector<std::pair<int, Fq>>> by_j(static_cast<std::size_t>(dy) + 1);
    for (const auto& [k, c] : C.equation().terms) by_j[static_cast<std::size_t>(k.second)].push_back({k.first, embed(c)});

    std::uint64_t affine = 0;
    UPoly fx(static_cast<std::size_t>(dy) + 1);
    for (std::uint64_t xc = 0; xc < Q; ++xc) {
        const Fq x{static_cast<std::uint32_t>(xc)};
        for (int j = 0; j <= dy; ++j) {
            Fq s = E.zero();
            for (const auto& [i, c] : by_j[static_cast<std::size_t>(j)]) s = E.add(s, E.mul(c, E.pow(x, i)));
            fx[static_cast<std::size_t>(j)] = s;
        }
        UPoly f = fx;
        utrim(E, f);
        if (f.empty()) {
            affine += Q;
            continue;
        }
        if (Q <= 1024) {
            for (std::uint64_t yc = 0; yc < Q; ++yc) {
                Fq acc = E.zero();
                const Fq y{static_cast<std::uint32_t>(yc)};
                for (std::size_t j = f.size(); j-- > 0;) acc = E.add(E.mul(acc, y), f[j]);
                if (acc == E.zero()) ++affine;
            }
        } else {
            affine += count_roots(E, std::move(f));
        }
    }
    std::uint64_t at_inf = 0;
    for (const auto& pl : C.infinity())
        if (d % pl.degree == 0) at_inf += pl.degree;
    return affine + at_inf;
}

std::vector<mpz_class> zeta_numerator(const PlaneCurve& C) {
    const unsigned g = C.genus();
    const long q = C.field().q();
    std::vector<mpz_class> a(2 * g + 1, 0);
    a[0] = 1;
    if (g == 0) return a;
    std::vector<mpz_class> s(g + 1, 0);
    mpz_class qk = 1;
    for (unsigned k = 1; k <= g; ++k) {
        qk *= q;
        s[k] = qk + 1 - mpz_class(static_cast<unsigned long>(count_points(C, k)));
        mpz_class acc = 0;
        for (unsigned i = 1; i <= k; ++i) acc -= s[i] * a[k - i];
        if (acc % k != 0) fail(Errc::inconsistent_counts, "non-integral zeta coefficient; wrong genus?");
        a[k] = acc / k;
    }
    for (unsigned i = 0; i < g; ++i) {
        mpz_class qp;
        mpz_ui_pow_ui(qp.get_mpz_t(), static_cast<unsigned long>(q), g - i);
        a[2 * g - i] = qp * a[i];
    }
    // Weil: |a_i| <= binom(2g, i) q^(i/2)
    for (unsigned i = 1; i <= 2 * g; ++i) {
        mpz_class b, qi;
        mpz_bin_uiui(b.get_mpz_t(), 2 * g, i);
        mpz_ui_pow_ui(qi.get_mpz_t(), static_cast<unsigned long>(q), i);
        if (a[i] * a[i] > b * b * qi) fail(Errc::inconsistent_counts, "zeta coefficient violates the Weil bound");
    }
    // Two more counts when they are cheap.
    const auto predicted = counts_from_zeta(q, a, g + 2);
    mpz_class Q = 1;
    for (unsigned d = 1; d <= g + 2; ++d) {
        Q *= q;
        if (d <= g) continue;
        if (Q > (1 << 16)) break;
        if (predicted[d] != static_cast<unsigned long>(count_points(C, d)))
            fail(Errc::inconsistent_counts, "L(t) does not predict N_" + std::to_string(d) + "; wrong genus?");
    }
    return a;
}

mpz_class class_number(const PlaneCurve& C) {
    mpz_class h = 0;
    for (const auto& c : zeta_numerator(C)) h += c;
    if (h < 1) fail(Errc::inconsistent_counts, "class number below 1");
    return h;
}

std::vector<mpz_class> counts_from_zeta(long q, const std::vector<mpz_class>& L, unsigned dmax) {
    const std::size_t deg = L.size() - 1;
    auto a = [&](std::size_t k) { return k <= deg ? L[k] : mpz_class(0); };
    std::vector<mpz_class> s(dmax + 1, 0), N(dmax + 1, 0);
    mpz_class qk = 1;
    for (unsigned k = 1; k <= dmax; ++k) {
        mpz_class acc = -mpz_class(k) * a(k);
        for (unsigned i = 1; i < k; ++i) acc -= s[i] * a(k - i);
        s[k] = acc;
        qk *= q;
        N[k] = qk + 1 - s[k];
    }
    return N;
}

}  // namespace rayfield
