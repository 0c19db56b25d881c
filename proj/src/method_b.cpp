#include "rayfield/method_b.hpp"

#include <algorithm>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

namespace {

std::int64_t ipow(std::int64_t p, long k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= p;
    return r;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

// inverse of a unit u modulo M
std::int64_t inv_mod(std::int64_t u, std::int64_t M) {
    std::int64_t r0 = M, r1 = mod(u, M), s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t qt = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - qt * s1);
    }
    return mod(s0, M);
}

long vp64(std::int64_t a, std::int64_t p) {
    long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

struct Pivot {
    long nu;
    std::size_t k, b;
};

std::optional<Pivot> pivot_of(const OneUnitVec& m) {
    std::optional<Pivot> best;
    for (std::size_t k = 0; k < m.js.size(); ++k) {
        for (std::size_t b = 0; b < m.e; ++b) {
            const std::int64_t x = m.m[k][b];
            if (x == 0) continue;
            const long cand = m.js[k] * static_cast<long>(ipow(m.p, vp64(x, m.p)));
            if (!best || cand < best->nu) best = Pivot{cand, k, b};
        }
    }
    return best;
}

}  // namespace

long round_exp(long n, long j, long p) {
    if (n < 1 || j < 1 || p < 2) fail(Errc::domain_error, "round_exp needs n, j >= 1");
    long k = 0;
    for (long x = j; x < n; x *= p) ++k;
    return k;
}

OneUnitVec OneUnitVec::zero(std::uint32_t p, unsigned e, long n) {
    OneUnitVec v;
    v.p = p;
    v.e = e;
    v.n = n;
    for (long j = 1; j < n; ++j)
        if (j % p != 0) v.js.push_back(j);
    v.m.assign(v.js.size(), std::vector<std::int64_t>(e, 0));
    return v;
}

std::int64_t OneUnitVec::modulus(std::size_t k) const { return ipow(p, round_exp(n, js[k], p)); }

bool OneUnitVec::is_zero() const {
    for (const auto& row : m)
        for (auto x : row)
            if (x != 0) return false;
    return true;
}

OneUnitVec OneUnitVec::projected(long n2) const {
    if (n2 > n || n2 < 1) fail(Errc::precision_exceeded, "cannot project to a larger truncation");
    OneUnitVec r = zero(p, e, n2);
    for (std::size_t k = 0; k < r.js.size(); ++k) {
        const std::int64_t M = r.modulus(k);
        for (std::size_t b = 0; b < e; ++b) r.m[k][b] = m[k][b] % M;
    }
    return r;
}

std::string OneUnitVec::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (k) os << ',';
        if (e == 1) {
            os << m[k][0];
            continue;
        }
        os << '[';
        for (std::size_t b = 0; b < e; ++b) os << (b ? "," : "") << m[k][b];
        os << ']';
    }
    os << ')';
    return os.str();
}

Series one_unit_part(const Series& u) {
    if (u.is_zero() || u.valuation() != 0)
        fail(Errc::not_a_one_unit, "unit has valuation " + std::to_string(u.valuation()) + " at the place");
    return u.scaled(u.field().inv(u.leading()));
}

OneUnitVec mu_n(const Series& unit, long n) {
    const FieldCtx& F = unit.field();
    if (n < 1) fail(Errc::domain_error, "truncation must be positive");
    if (unit.is_zero() || unit.valuation() != 0 || unit.coeff(0) != F.one())
        fail(Errc::not_a_one_unit, "expected 1 + O(pi)");
    if (unit.abs_prec() < n) fail(Errc::precision_exceeded, "unit known only below pi^" + std::to_string(unit.abs_prec()));
    const long p = F.p();
    std::vector<Fq> r(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = unit.coeff(i);

    OneUnitVec out = OneUnitVec::zero(F.p(), F.e(), n);
    std::vector<long> idx(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < out.js.size(); ++k) idx[static_cast<std::size_t>(out.js[k])] = static_cast<long>(k);
    std::vector<Fq> basis;
    for (unsigned b = 0; b < F.e(); ++b) basis.push_back(F.from_code(static_cast<std::uint32_t>(ipow(p, b))));

    for (long k = 1; k < n; ++k) {
        const Fq c = r[static_cast<std::size_t>(k)];
        if (c == F.zero()) continue;
        const long j = strip_p(k, p), s = vp(k, p);
        const auto a = F.coords(F.frobenius(c, -s));
        for (unsigned b = 0; b < F.e(); ++b) {
            if (a[b] == 0) continue;
            const Fq gamma = F.frobenius(basis[b], s);
            // divide by (1 + gamma pi^k)^a_b
            for (std::uint32_t t = 0; t < a[b]; ++t)
                for (long i = k; i < n; ++i)
                    r[static_cast<std::size_t>(i)] =
                        F.sub(r[static_cast<std::size_t>(i)], F.mul(gamma, r[static_cast<std::size_t>(i - k)]));
            auto& slot = out.m[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])][b];
            slot += static_cast<std::int64_t>(a[b]) * ipow(p, s);
        }
    }
    for (std::size_t k = 0; k < out.js.size(); ++k)
        for (auto& x : out.m[k]) x %= out.modulus(k);
    return out;
}

Series reconstruct(const FieldCtx& F, const OneUnitVec& m) {
    Series acc = Series::constant(F, F.one(), m.n);
    for (std::size_t k = 0; k < m.js.size(); ++k)
        for (unsigned b = 0; b < m.e; ++b) {
            if (m.m[k][b] == 0) continue;
            const Fq beta = F.from_code(static_cast<std::uint32_t>(ipow(m.p, b)));
            const Series f = Series::monomial(F, beta, m.js[k], m.n).plus_scalar(F.one());
            acc = (acc * f.pow(m.m[k][b])).truncated(m.n);
        }
    return acc;
}

std::optional<long> nu(const OneUnitVec& m) {
    const auto pv = pivot_of(m);
    if (!pv) return std::nullopt;
    return pv->nu;
}

std::vector<long> Description::coeffs() const {
    std::vector<long> d;
    for (long x : n_i) {
        if (static_cast<long>(d.size()) < x) d.resize(static_cast<std::size_t>(x), 0);
        ++d[static_cast<std::size_t>(x - 1)];
    }
    return d;
}

long Description::delta_at(long n) const {
    const long ns = strip_p(n, p);
    return std::count_if(n_i.begin(), n_i.end(), [&](long x) { return x <= n && strip_p(x, p) == ns; });
}

std::string Description::to_string() const {
    const auto d = coeffs();
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) {
        if (d[k] == 0) continue;
        if (!s.empty()) s += " + ";
        if (d[k] > 1) s += std::to_string(d[k]);
        s += "t";
        if (k > 0) s += "^" + std::to_string(k + 1);
    }
    return s.empty() ? "0" : s;
}

Description describe(std::vector<OneUnitVec> rows) {
    Description out;
    if (rows.empty()) return out;
    out.p = rows.front().p;
    for (const auto& r : rows)
        if (r.n != rows.front().n || r.p != out.p || r.e != rows.front().e)
            fail(Errc::domain_error, "rows must share p, e and truncation");
    const std::int64_t p = out.p;

    while (!rows.empty()) {
        std::size_t best_row = 0;
        std::optional<Pivot> best;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto pv = pivot_of(rows[i]);
            if (!pv)
                fail(Errc::precision_exceeded,
                     "a row vanishes at truncation " + std::to_string(rows[i].n));
            if (!best || pv->nu < best->nu) {
                best = pv;
                best_row = i;
            }
        }
        // the pivot coordinate sits at j = nu*; pivot_of already found it
        // with the smallest basis index since j p^v = nu forces j = nu*.
        const OneUnitVec piv = rows[best_row];
        rows.erase(rows.begin() + static_cast<long>(best_row));
        out.n_i.push_back(best->nu);

        const std::int64_t R = piv.modulus(best->k);
        const std::int64_t pivot_val = piv.m[best->k][best->b];
        const long vb = vp64(pivot_val, p);
        const std::int64_t pb = ipow(p, vb);
        const std::int64_t unit_inv = inv_mod(pivot_val / pb, R);
        for (auto& row : rows) {
            const std::int64_t x = row.m[best->k][best->b];
            if (x == 0) continue;
            // x / pivot is p-integral because nu(row) >= nu(pivot)
            const std::int64_t ratio = mod((x / pb) % R * unit_inv, R);
            for (std::size_t k = 0; k < row.js.size(); ++k) {
                const std::int64_t M = row.modulus(k);
                for (std::size_t b = 0; b < row.e; ++b)
                    row.m[k][b] = mod(row.m[k][b] - (ratio % M) * (piv.m[k][b] % M), M);
            }
        }
    }
    std::sort(out.n_i.begin(), out.n_i.end());
    return out;
}

LambdaSeq lambda_seq_b(const Description& d, unsigned e, long n_max) {
    if (n_max < 1) fail(Errc::domain_error, "n_max must be positive");
    LambdaSeq L;
    L.e = e;
    L.source = LambdaSource::B;
    L.values.assign(static_cast<std::size_t>(n_max + 1), 0);
    for (long n = 1; n < n_max; ++n)
        L.values[static_cast<std::size_t>(n + 1)] =
            L.values[static_cast<std::size_t>(n)] + static_cast<long>(e) - d.delta_at(n);
    L.valid_to = n_max;
    return L;
}

DescribeRun describe_adaptive(const FieldCtx& F, std::size_t r,
                              const std::function<Series(std::size_t, long)>& expand, long cap) {
    DescribeRun run;
    run.desc.p = F.p();
    if (r == 0) return run;
    for (long n = std::min(4 * static_cast<long>(r * F.e()) + 8, cap);; n = std::min(2 * n, cap)) {
        run.mu.clear();
        for (std::size_t k = 0; k < r; ++k) run.mu.push_back(mu_n(expand(k, n), n));
        try {
            run.desc = describe(run.mu);
            run.trunc = n;
            return run;
        } catch (const Error& err) {
            if (err.code() != Errc::precision_exceeded) throw;
        }
        if (n == cap) break;
    }
    fail(Errc::dependent_rows, "units stay dependent up to truncation " + std::to_string(cap));
}

DescribeRun describe_rational(const FieldCtx& F, const std::vector<Fq>& A_S, long cap) {
    return describe_adaptive(
        F, A_S.size(),
        [&](std::size_t k, long n) {
            std::vector<Fq> c(static_cast<std::size_t>(std::max(n, 2L)), F.zero());
            c[0] = F.one();
            c[1] = F.neg(A_S[k]);
            return Series(F, 0, std::move(c));
        },
        cap);
}

DescribeRun describe_units(const PlaneCurve& C, const PlaceSpec& P, const std::vector<RationalFunction>& units,
                           long cap) {
    return describe_adaptive(
        C.field(), units.size(),
        [&](std::size_t k, long n) { return one_unit_part(local_expand(C, P, units[k], n)).truncated(n); }, cap);
}

}  // namespace rayfield
