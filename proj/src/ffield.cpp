#include "rayfield/ffield.hpp"

#include <algorithm>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

std::uint32_t ipow(std::uint32_t b, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r *= b;
    return static_cast<std::uint32_t>(r);
}

void trim(PrimePoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo the monic polynomial g over F_p.
PrimePoly poly_rem(PrimePoly f, const PrimePoly& g, std::uint32_t p) {
    trim(f);
    const std::size_t dg = g.size() - 1;
    while (f.size() >= g.size()) {
        const std::uint32_t lead = f.back();
        const std::size_t shift = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - lead) * static_cast<std::uint64_t>(g[i])) % p);
        }
        trim(f);
    }
    return f;
}

PrimePoly digits_of(std::uint32_t code, std::uint32_t p, unsigned e) {
    PrimePoly d(e, 0);
    for (unsigned i = 0; i < e; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

std::uint32_t code_of(const PrimePoly& d, std::uint32_t p) {
    std::uint32_t c = 0;
    for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
    return c;
}

// Product of two field elements given by code, reduced mod the monic modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, const PrimePoly& modulus, std::uint32_t p, unsigned e) {
    const PrimePoly da = digits_of(a, p, e);
    const PrimePoly db = digits_of(b, p, e);
    PrimePoly prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < e; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
    }
    PrimePoly r = poly_rem(prod, modulus, p);
    r.resize(e, 0);
    return code_of(r, p);
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t k, const PrimePoly& modulus, std::uint32_t p, unsigned e) {
    std::uint32_t r = 1, b = a;
    while (k) {
        if (k & 1) r = slow_mul(r, b, modulus, p, e);
        b = slow_mul(b, b, modulus, p, e);
        k >>= 1;
    }
    return r;
}

bool has_full_order(std::uint32_t g, std::uint32_t q, const PrimePoly& modulus, std::uint32_t p, unsigned e) {
    if (g == 0) return false;
    if (q == 2) return g == 1;
    for (std::uint64_t r : prime_factors(q - 1))
        if (slow_pow(g, (q - 1) / r, modulus, p, e) == 1) return false;
    return true;
}

// Candidate moduli in lexicographic order: the top non-leading coefficient is
// the most significant, which is exactly the order of the code c_0 + c_1 p + ...
PrimePoly candidate_modulus(std::uint32_t code, std::uint32_t p, unsigned e) {
    PrimePoly f = digits_of(code, p, e);
    f.push_back(1);
    return f;
}

}  // namespace

bool is_irreducible(const PrimePoly& f_in, std::uint32_t p) {
    PrimePoly f = f_in;
    trim(f);
    if (f.size() < 2) return false;
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == 1) return true;
    // Normalize to monic for the remainder routine.
    {
        const std::uint32_t lead = f.back();
        std::uint32_t inv = 1;
        while ((static_cast<std::uint64_t>(inv) * lead) % p != 1) ++inv;
        for (auto& c : f) c = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * inv) % p);
    }
    for (unsigned d = 1; d <= deg / 2; ++d) {
        const std::uint32_t count = ipow(p, d);
        for (std::uint32_t code = 0; code < count; ++code) {
            PrimePoly g = digits_of(code, p, d);
            g.push_back(1);
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

FieldCtx FieldCtx::make(std::uint32_t p, unsigned e, const std::optional<PrimePoly>& modulus) {
    if (!is_prime(p)) fail(Errc::non_prime, std::to_string(p) + " is not prime");
    if (e == 0) fail(Errc::domain_error, "extension degree must be positive");
    const std::uint64_t q64 = [&] {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < e; ++i) {
            r *= p;
            if (r > max_q) fail(Errc::cap_exceeded, "field size exceeds " + std::to_string(max_q));
        }
        return r;
    }();
    const auto q = static_cast<std::uint32_t>(q64);

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = q;
    if (modulus) {
        PrimePoly m = *modulus;
        for (auto& c : m) c %= p;
        if (m.size() != e + 1 || m.back() != 1)
            fail(Errc::domain_error, "modulus must be monic of degree " + std::to_string(e));
        if (!is_irreducible(m, p)) fail(Errc::reducible, "modulus is reducible over F_" + std::to_string(p));
        t->modulus = std::move(m);
    } else {
        for (std::uint32_t code = 0;; ++code) {
            PrimePoly m = candidate_modulus(code, p, e);
            if (is_irreducible(m, p)) {
                t->modulus = std::move(m);
                break;
            }
        }
    }

    std::uint32_t omega = 1;
    while (!has_full_order(omega, q, t->modulus, p, e)) ++omega;

    t->exp.resize(q - 1);
    t->log.assign(q, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
        t->exp[i] = cur;
        t->log[cur] = i;
        cur = slow_mul(cur, omega, t->modulus, p, e);
    }
    t->pow_p.resize(e + 1);
    for (unsigned i = 0; i <= e; ++i) t->pow_p[i] = ipow(p, i);
    return FieldCtx(std::move(t));
}

FieldCtx FieldCtx::make_extension(const FieldCtx& base, unsigned d) {
    if (d == 0) fail(Errc::domain_error, "extension degree must be positive");
    const std::uint32_t p = base.p();
    const unsigned e = base.e() * d;
    std::uint64_t q64 = 1;
    for (unsigned i = 0; i < e; ++i) {
        q64 *= p;
        if (q64 > max_extension_q) fail(Errc::cap_exceeded, "extension field exceeds 2^22 elements");
    }
    const auto q = static_cast<std::uint32_t>(q64);

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = q;
    // Smallest irreducible whose root t is primitive, so exp tables are built by shifting.
    const std::uint32_t t_code = e == 1 ? 0 : p;
    for (std::uint32_t code = 0;; ++code) {
        PrimePoly m = candidate_modulus(code, p, e);
        if (!is_irreducible(m, p)) continue;
        std::uint32_t gen = t_code;
        if (e == 1) {
            gen = 1;
            while (!has_full_order(gen, q, m, p, e)) ++gen;
        } else if (!has_full_order(gen, q, m, p, e)) {
            continue;
        }
        t->modulus = std::move(m);
        t->exp.resize(q - 1);
        t->log.assign(q, 0);
        PrimePoly cur(e, 0);
        cur[0] = 1;
        for (std::uint32_t i = 0; i + 1 < q; ++i) {
            const std::uint32_t c = code_of(cur, p);
            t->exp[i] = c;
            t->log[c] = i;
            if (e == 1) {
                cur[0] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(cur[0]) * gen) % p);
            } else {
                // cur *= t, reduced by the monic modulus
                const std::uint32_t top = cur[e - 1];
                for (unsigned k = e - 1; k > 0; --k) cur[k] = cur[k - 1];
                cur[0] = 0;
                if (top) {
                    for (unsigned k = 0; k < e; ++k)
                        cur[k] = static_cast<std::uint32_t>((cur[k] + static_cast<std::uint64_t>(p - top) * t->modulus[k]) % p);
                }
            }
        }
        break;
    }
    t->pow_p.resize(e + 1);
    for (unsigned i = 0; i <= e; ++i) t->pow_p[i] = ipow(p, i);
    return FieldCtx(std::move(t));
}

Fq FieldCtx::from_int(long long k) const noexcept {
    const long long p = t_->p;
    return Fq{static_cast<std::uint32_t>(((k % p) + p) % p)};
}

Fq FieldCtx::from_coords(std::span<const std::uint32_t> coords) const {
    if (coords.size() != t_->e) fail(Errc::domain_error, "expected " + std::to_string(t_->e) + " coordinates");
    PrimePoly d(coords.begin(), coords.end());
    for (auto c : d)
        if (c >= t_->p) fail(Errc::domain_error, "coordinate out of range");
    return Fq{code_of(d, t_->p)};
}

Fq FieldCtx::from_code(std::uint32_t code) const {
    if (code >= t_->q) fail(Errc::domain_error, "element code " + std::to_string(code) + " out of range");
    return Fq{code};
}

std::vector<std::uint32_t> FieldCtx::coords(Fq a) const { return digits_of(a.code, t_->p, t_->e); }

Fq FieldCtx::add(Fq a, Fq b) const noexcept {
    const std::uint32_t p = t_->p;
    if (p == 2) return Fq{a.code ^ b.code};
    if (t_->e == 1) return Fq{(a.code + b.code) % p};
    std::uint32_t r = 0, x = a.code, y = b.code;
    for (unsigned i = 0; i < t_->e; ++i) {
        r += ((x % p + y % p) % p) * t_->pow_p[i];
        x /= p;
        y /= p;
    }
    return Fq{r};
}

Fq FieldCtx::neg(Fq a) const noexcept {
    const std::uint32_t p = t_->p;
    if (p == 2) return a;
    if (t_->e == 1) return Fq{(p - a.code) % p};
    std::uint32_t r = 0, x = a.code;
    for (unsigned i = 0; i < t_->e; ++i) {
        r += ((p - x % p) % p) * t_->pow_p[i];
        x /= p;
    }
    return Fq{r};
}

Fq FieldCtx::sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }

Fq FieldCtx::mul(Fq a, Fq b) const noexcept {
    if (a.code == 0 || b.code == 0) return Fq{0};
    const std::uint32_t n = t_->q - 1;
    std::uint32_t s = t_->log[a.code] + t_->log[b.code];
    if (s >= n) s -= n;
    return Fq{t_->exp[s]};
}

Fq FieldCtx::inv(Fq a) const {
    if (a.code == 0) fail(Errc::zero_element, "inverse of zero");
    const std::uint32_t n = t_->q - 1;
    const std::uint32_t l = t_->log[a.code];
    return Fq{t_->exp[l == 0 ? 0 : n - l]};
}

Fq FieldCtx::div(Fq a, Fq b) const { return mul(a, inv(b)); }

Fq FieldCtx::pow(Fq a, long long k) const {
    if (a.code == 0) {
        if (k < 0) fail(Errc::zero_element, "negative power of zero");
        return k == 0 ? one() : zero();
    }
    const long long n = t_->q - 1;
    long long s = (static_cast<long long>(t_->log[a.code]) * (((k % n) + n) % n)) % n;
    return Fq{t_->exp[static_cast<std::size_t>(s)]};
}

Fq FieldCtx::frobenius(Fq a, long long k) const {
    const long long e = t_->e;
    const long long kk = ((k % e) + e) % e;
    return pow(a, t_->pow_p[static_cast<std::size_t>(kk)]);
}

Fq FieldCtx::exp(long long i) const noexcept {
    const long long n = t_->q - 1;
    return Fq{t_->exp[static_cast<std::size_t>(((i % n) + n) % n)]};
}

std::uint32_t FieldCtx::dlog(Fq a) const {
    if (a.code == 0) fail(Errc::zero_element, "discrete log of zero");
    const std::uint32_t l = t_->log[a.code];
    return l == 0 ? t_->q - 1 : l;
}

std::vector<std::vector<std::uint32_t>> FieldCtx::frobenius_orbits() const {
    const std::uint32_t n = t_->q - 1;
    std::vector<bool> seen(n + 1, false);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (seen[i]) continue;
        std::vector<std::uint32_t> orbit;
        std::uint32_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            orbit.push_back(j);
            j = static_cast<std::uint32_t>((static_cast<std::uint64_t>(j) * t_->p - 1) % n) + 1;
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

std::vector<Fq> FieldCtx::embedding_of(const FieldCtx& base) const {
    if (base.p() != p() || e() % base.e() != 0)
        fail(Errc::domain_error, "base field is not a subfield");
    const unsigned eb = base.e();
    Fq zeta = one();
    if (eb > 1) {
        // The subfield F_{q_b}^* is generated by omega^((q-1)/(q_b-1)).
        const std::uint32_t step = (q() - 1) / (base.q() - 1);
        bool found = false;
        for (std::uint32_t k = 1; k < base.q() && !found; ++k) {
            const Fq cand = exp(static_cast<long long>(k) * step);
            Fq acc = zero();
            for (std::size_t i = base.modulus().size(); i-- > 0;)
                acc = add(mul(acc, cand), from_int(base.modulus()[i]));
            if (acc == zero()) {
                zeta = cand;
                found = true;
            }
        }
        if (!found) fail(Errc::domain_error, "no root of the base modulus found");
    }
    std::vector<Fq> img(base.q());
    for (std::uint32_t code = 0; code < base.q(); ++code) {
        const auto c = base.coords(Fq{code});
        Fq acc = zero();
        for (std::size_t i = c.size(); i-- > 0;) acc = add(mul(acc, zeta), from_int(c[i]));
        img[code] = acc;
    }
    return img;
}

std::string FieldCtx::to_string(Fq a) const {
    if (t_->e == 1) return std::to_string(a.code);
    if (a.code == 0) return "0";
    std::ostringstream os;
    os << "w^" << dlog(a);
    return os.str();
}

}  // namespace rayfield
