#include "rayfield/raygenus.hpp"

#include "rayfield/error.hpp"

namespace rayfield {

namespace {

mpz_class zpow(std::uint64_t b, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, static_cast<unsigned long>(k));
    return r;
}

mpz_class exact_div(const mpz_class& a, const mpz_class& b, const char* what) {
    if (a % b != 0) fail(Errc::integrality_violation, std::string(what) + " is not an integer");
    return a / b;
}

}  // namespace

long conductor_exponent(const LambdaSeq& lambda, long l) {
    if (l < 0) fail(Errc::domain_error, "l must be nonnegative");
    const long top = std::min(lambda.valid_to, lambda.max_index());
    for (long n = 1; n <= top; ++n)
        if (lambda.values[static_cast<std::size_t>(n)] >= l) return n;
    fail(Errc::out_of_range, "lambda reaches " + std::to_string(l) + " beyond n = " + std::to_string(top));
}

mpz_class genus_L(long g_K, const mpz_class& h_S, std::uint32_t p, const LambdaSeq& lambda, long l) {
    const long n = conductor_exponent(lambda, l);
    mpz_class s = zpow(p, l) * (2 * g_K - 2 + n);
    for (long v = 0; v < n; ++v) s -= zpow(p, lambda.at(v));
    return 1 + exact_div(h_S * s, 2, "genus");
}

PointBound n_points_lower(const mpz_class& h_S, std::uint32_t p, long l, long s1, bool split_certified,
                          bool eps_flag) {
    PointBound b;
    b.N_lower = h_S * zpow(p, l) * s1 + (eps_flag ? h_S : mpz_class(0));
    b.exact = split_certified;
    return b;
}

mpz_class hayes_phi(std::uint64_t q, const std::vector<CyclePart>& m) {
    mpz_class phi = 1;
    bool positive = false;
    for (const auto& c : m) {
        if (c.deg < 1 || c.mult < 0) fail(Errc::domain_error, "bad cycle component");
        if (c.mult == 0) continue;
        positive = true;
        phi *= (zpow(q, c.deg) - 1) * zpow(q, (c.mult - 1) * c.deg);
    }
    if (!positive) fail(Errc::domain_error, "cycle must be positive");
    return phi;
}

mpz_class hayes_degree(std::uint64_t q, long d, const std::vector<CyclePart>& m, const mpz_class& h) {
    return exact_div(h * d * hayes_phi(q, m), mpz_class(q - 1), "ray class degree");
}

mpz_class hayes_genus(std::uint64_t q, long /*d*/, const std::vector<CyclePart>& m, const mpz_class& h, long g) {
    const mpz_class phi = hayes_phi(q, m);
    long deg_m = 0;
    std::vector<const CyclePart*> support;
    for (const auto& c : m)
        if (c.mult > 0) {
            deg_m += c.deg * c.mult;
            support.push_back(&c);
        }
    mpz_class s = 0;
    if (support.size() == 1) {
        const auto& c = *support.front();
        s = (phi / hayes_phi(q, {{c.deg, 1}}) + q - 2) * c.deg;
    } else {
        for (const auto* c : support) s += phi * c->deg / hayes_phi(q, {{c->deg, 1}});
    }
    return 1 + exact_div(h * (phi * (2 * g - 2 + deg_m) - s), mpz_class(2 * q - 2), "Hayes genus");
}

mpz_class discriminant_degree(const std::vector<mpz_class>& degrees_by_level, const mpz_class& total_degree, long m) {
    if (static_cast<long>(degrees_by_level.size()) != m) fail(Errc::domain_error, "need one degree per level");
    mpz_class d = total_degree * m;
    for (long n = 0; n < m; ++n) {
        const auto& x = degrees_by_level[static_cast<std::size_t>(n)];
        if (total_degree % x != 0 || (n > 0 && x < degrees_by_level[static_cast<std::size_t>(n - 1)]))
            fail(Errc::domain_error, "level degrees must increase and divide the total");
        d -= x;
    }
    return d;
}

mpz_class hurwitz_genus(long g_K, const mpz_class& total_degree, const mpz_class& disc_degree) {
    return 1 + exact_div(total_degree * (2 * g_K - 2) + disc_degree, 2, "Hurwitz genus");
}

long different_exponent_upper(const std::vector<long>& upper_orders) {
    if (upper_orders.empty()) return 0;
    const long g0 = upper_orders.front();
    long d = 0;
    for (long gn : upper_orders) {
        if (gn < 1 || g0 % gn != 0) fail(Errc::domain_error, "orders must divide |G^0|");
        d += g0 - g0 / gn;
    }
    return d;
}

long different_exponent_lower(const std::vector<long>& lower_orders) {
    long d = 0;
    for (long gn : lower_orders) d += gn - 1;
    return d;
}

FieldInvariants ray_invariants(long g_K, const mpz_class& h_S, std::uint32_t p, const LambdaSeq& lambda, long l,
                               long s1, bool eps_flag, bool split_certified) {
    FieldInvariants fi;
    fi.p = p;
    fi.e = lambda.e;
    fi.g_K = g_K;
    fi.h_S = h_S;
    fi.l = l;
    fi.n = conductor_exponent(lambda, l);
    fi.degree = h_S * zpow(p, l);
    fi.genus = genus_L(g_K, h_S, p, lambda, l);
    // L contains K_S^{(n-1)P}, so L meets K_S^{vP} in that whole field for v < n
    std::vector<mpz_class> levels;
    for (long v = 0; v < fi.n; ++v) levels.push_back(h_S * zpow(p, lambda.at(v)));
    fi.genus_hurwitz = hurwitz_genus(g_K, fi.degree, discriminant_degree(levels, fi.degree, fi.n));
    if (fi.genus != fi.genus_hurwitz) fail(Errc::integrality_violation, "genus paths disagree");
    fi.points = n_points_lower(h_S, p, l, s1, split_certified, eps_flag);
    return fi;
}

}  // namespace rayfield
