#include "rayfield/method_a.hpp"

#include <algorithm>

#include "rayfield/error.hpp"

namespace rayfield {

SSpecA SSpecA::from_exponents(const FieldCtx& F, std::vector<std::uint32_t> I_S) {
    std::sort(I_S.begin(), I_S.end());
    if (std::adjacent_find(I_S.begin(), I_S.end()) != I_S.end()) fail(Errc::domain_error, "repeated exponent in I_S");
    for (auto j : I_S)
        if (j < 1 || j > F.q() - 1) fail(Errc::domain_error, "exponent " + std::to_string(j) + " outside 1..q-1");
    return SSpecA{F, std::move(I_S)};
}

SSpecA SSpecA::from_elements(const FieldCtx& F, const std::vector<Fq>& A_S) {
    std::vector<std::uint32_t> I;
    for (Fq a : A_S) {
        if (a == F.zero()) fail(Errc::domain_error, "A_S may not contain 0");
        I.push_back(F.dlog(a));
    }
    return from_exponents(F, std::move(I));
}

std::vector<Initial> initials(const FieldCtx& F) {
    std::vector<Initial> out;
    for (const auto& orbit : F.frobenius_orbits()) out.push_back({orbit.front(), static_cast<unsigned>(orbit.size())});
    std::sort(out.begin(), out.end(), [](const Initial& a, const Initial& b) { return a.n < b.n; });
    return out;
}

unsigned e_initial(const FieldCtx& F, long n) {
    if (n < 1 || n > static_cast<long>(F.q()) - 1) return 0;
    for (const auto& in : initials(F))
        if (in.n == n) return in.e_n;
    return 0;
}

unsigned EProfile::at(long n) const {
    if (n < 1) fail(Errc::domain_error, "e_S^(n) needs n >= 1");
    if (n >= static_cast<long>(e_S.size())) return 0;
    return e_S[static_cast<std::size_t>(n)];
}

namespace {

// Incremental row echelon basis over F_p.
class EchelonFp {
   public:
    EchelonFp(std::uint32_t p, std::size_t m) : p_(p), piv_(m) {}

    bool insert(std::vector<std::uint32_t> v) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            if (!piv_[c].empty()) {
                const std::uint64_t f = v[c];
                for (std::size_t k = c; k < v.size(); ++k)
                    v[k] = static_cast<std::uint32_t>((v[k] + (p_ - f) * piv_[c][k]) % p_);
                continue;
            }
            std::uint64_t inv = 1;
            while ((inv * v[c]) % p_ != 1) ++inv;
            for (std::size_t k = c; k < v.size(); ++k) v[k] = static_cast<std::uint32_t>((v[k] * inv) % p_);
            piv_[c] = std::move(v);
            ++rank_;
            return true;
        }
        return false;
    }
    unsigned rank() const noexcept { return rank_; }

   private:
    std::uint64_t p_;
    std::vector<std::vector<std::uint32_t>> piv_;
    unsigned rank_ = 0;
};

}  // namespace

EProfile e_profile(const SSpecA& S) {
    const FieldCtx& F = S.F;
    const std::uint32_t q = F.q();
    const unsigned e = F.e();
    const std::size_t m = S.I_S.size();
    EProfile prof;
    prof.inits = initials(F);
    prof.e_S.assign(q, 0);
    prof.rank.assign(q + 1, 0);
    EchelonFp ech(F.p(), m);
    for (std::uint32_t n = 1; n < q; ++n) {
        // row i = n of M^(n+1): omega^(n j), j in I_S, expanded over F_p
        std::vector<std::vector<std::uint32_t>> rows(e, std::vector<std::uint32_t>(m, 0));
        for (std::size_t c = 0; c < m; ++c) {
            const auto co = F.coords(F.exp(static_cast<long long>(n) * S.I_S[c]));
            for (unsigned k = 0; k < e; ++k) rows[k][c] = co[k];
        }
        for (auto& r : rows) ech.insert(std::move(r));
        prof.rank[n + 1] = ech.rank();
        prof.e_S[n] = prof.rank[n + 1] - prof.rank[n];
    }
    // n_S literally: min{q - q/p, n : R_S cap R f^(n) = 0} - 1
    long first_full = q;
    for (std::uint32_t n = 1; n <= q; ++n)
        if (prof.rank[n] == m) {
            first_full = n;
            break;
        }
    prof.n_S = std::min<long>(q - q / F.p(), first_full) - 1;
    for (long n = 1;; ++n)
        if (prof.at(strip_p(n, F.p())) < e) {
            prof.n_S_prime = n;
            break;
        }
    return prof;
}

long n_S_by_cases(const SSpecA& S, const EProfile& prof) {
    const long q = S.F.q();
    if (S.size() == 1) return 0;
    if (static_cast<long>(S.size()) == q) return q - q / S.F.p() - 1;
    long best = 0;
    for (long n = 1; n < q; ++n)
        if (prof.at(n) > 0) best = n;
    return best;
}

bool fully_valid(const SSpecA& S, const EProfile& prof) { return static_cast<long>(S.F.p()) * prof.n_S_prime >= prof.n_S; }

LambdaSeq lambda_seq_a(const SSpecA& S, long n_max) { return lambda_seq_a(S, e_profile(S), n_max); }

LambdaSeq lambda_seq_a(const SSpecA& S, const EProfile& prof, long n_max) {
    if (n_max < 1) fail(Errc::domain_error, "n_max must be >= 1");
    const long p = S.F.p();
    const long e = S.F.e();
    LambdaSeq L;
    L.e = static_cast<unsigned>(e);
    L.source = LambdaSource::A;
    L.valid_to = fully_valid(S, prof) ? n_max : std::min(n_max, p * prof.n_S_prime);
    L.values.assign(static_cast<std::size_t>(L.valid_to) + 1, 0);
    for (long n = 1; n < L.valid_to; ++n)
        L.values[static_cast<std::size_t>(n + 1)] =
            L.values[static_cast<std::size_t>(n)] + e - static_cast<long>(prof.at(strip_p(n, p)));
    return L;
}

GenusPoints llcor_closed_form(const FieldCtx& F, long l) {
    const long p = F.p(), e = F.e();
    if (l < 0) fail(Errc::domain_error, "l must be nonnegative");
    mpz_class pl, q = F.q();
    mpz_ui_pow_ui(pl.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(l));
    GenusPoints out;
    out.N = 1 + pl * q;
    mpz_class twice_g;
    if (e % 2 == 0) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e / 2));
        if (2 * l <= e)
            twice_g = r * (pl - 1);
        else if (2 * l <= 3 * e)
            twice_g = r * (2 * pl - r - 1);
        else
            fail(Errc::domain_error, "l beyond 3e/2");
    } else {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>((e + 1) / 2));
        const long i = std::max<long>(1, (l + e - 1) / e);
        if (i >= p) fail(Errc::domain_error, "l beyond (p-1)e");
        mpz_class qi;
        mpz_pow_ui(qi.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(i));
        twice_g = pl * (r + i - 1) - r - (qi - q) / (q - 1);
    }
    if (twice_g % 2 != 0) fail(Errc::integrality_violation, "closed-form genus is not an integer");
    out.genus = twice_g / 2;
    return out;
}

}  // namespace rayfield
