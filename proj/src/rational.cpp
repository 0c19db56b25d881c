#include "rayfield/rational.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "rayfield/error.hpp"
#include "rayfield/raygenus.hpp"

namespace rayfield {

RationalSet::RationalSet(const FieldCtx& F, std::vector<std::uint32_t> I_S)
    : S_(SSpecA::from_exponents(F, std::move(I_S))), prof_(e_profile(S_)) {}

RationalSet RationalSet::from_codes(const FieldCtx& F, const std::vector<std::uint32_t>& codes) {
    std::vector<std::uint32_t> I;
    for (auto c : codes) I.push_back(F.dlog(F.from_code(c)));
    return RationalSet(F, std::move(I));
}

std::vector<std::uint32_t> RationalSet::codes() const {
    std::vector<std::uint32_t> c;
    for (auto j : S_.I_S) c.push_back(S_.F.exp(j).code);
    std::sort(c.begin(), c.end());
    return c;
}

const Description& RationalSet::description() {
    if (!desc_) {
        std::vector<Fq> A;
        for (auto j : S_.I_S) A.push_back(S_.F.exp(j));
        desc_ = describe_rational(S_.F, A).desc;
    }
    return *desc_;
}

const LambdaSeq& RationalSet::lambda(long n_max) {
    if (!cache_.values.empty() && cache_.valid_to >= n_max) return cache_;
    if (!desc_) {
        LambdaSeq a = lambda_seq_a(S_, prof_, n_max);
        if (a.valid_to >= n_max) return cache_ = std::move(a);
    }
    return cache_ = lambda_seq_b(description(), S_.F.e(), n_max);
}

const LambdaSeq& RationalSet::lambda_reaching(long l) {
    for (long n = 8;; n *= 2) {
        const auto& L = lambda(n);
        if (L.values.back() >= l) return L;
        if (n > (1L << 16)) fail(Errc::out_of_range, "lambda does not reach " + std::to_string(l));
    }
}

std::vector<std::uint32_t> min_rotation(const std::vector<std::uint32_t>& I_S, std::uint32_t q) {
    const std::uint32_t m = q - 1;
    std::vector<std::uint32_t> best = I_S;
    std::sort(best.begin(), best.end());
    for (std::uint32_t k = 1; k < m; ++k) {
        std::vector<std::uint32_t> r;
        for (auto i : I_S) {
            const std::uint32_t j = (i + k) % m;
            r.push_back(j == 0 ? m : j);
        }
        std::sort(r.begin(), r.end());
        if (r < best) best = r;
    }
    return best;
}

bool is_min_rotation(const std::vector<std::uint32_t>& I_S, std::uint32_t q) {
    std::vector<std::uint32_t> s = I_S;
    std::sort(s.begin(), s.end());
    return min_rotation(s, q) == s;
}

void for_each_subset(std::uint32_t q, long s1, bool all,
                     const std::function<bool(const std::vector<std::uint32_t>&)>& f) {
    const long k = s1 - 1, m = static_cast<long>(q) - 1;
    if (k < 0 || k > m) return;
    std::vector<std::uint32_t> c(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i + 1);
    for (;;) {
        if ((all || is_min_rotation(c, q)) && !f(c)) return;
        long i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == static_cast<std::uint32_t>(m - k + i + 1)) --i;
        if (i < 0) return;
        ++c[static_cast<std::size_t>(i)];
        for (long j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
}

mpz_class binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

long printed_conductor(long l, long n) { return l == 0 ? 0 : n; }

bool matches(RationalSet& S, const RationalTarget& t) {
    if (S.size() != t.s1) return false;
    const auto p = S.field().p();
    const LambdaSeq* L = nullptr;
    if (t.n) {
        L = &S.lambda(*t.n + 1);
        if (L->at(*t.n) < t.l) return false;
    } else {
        L = &S.lambda_reaching(t.l);
    }
    const auto fi = ray_invariants(0, 1, p, *L, t.l, t.s1, true, false);
    if (fi.genus != t.g || fi.points.N_lower != t.N) return false;
    return !t.n || printed_conductor(t.l, fi.n) == *t.n;
}

namespace {

using Set = std::vector<std::uint32_t>;

class Families {
   public:
    Families(const FieldCtx& F, long s1, std::uint64_t seed) : F_(F), s_(s1), rng_(seed) {}

    std::optional<Set> next(long k) {
        switch (k % 5) {
            case 0:
                return orbit_union();
            case 1:
                return additive();
            case 2:
                return multiplicative(true);
            case 3:
                return multiplicative(false);
            default:
                return trace_condition();
        }
    }

   private:
    std::uint64_t below(std::uint64_t n) { return rng_() % n; }
    template <class V>
    void shuffle(V& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
    Set from_codes(const std::set<std::uint32_t>& T) const {
        Set I;
        for (auto x : T)
            if (x) I.push_back(F_.dlog(Fq{x}));
        std::sort(I.begin(), I.end());
        return I;
    }

    // T \ {0} a union of Frobenius orbits
    std::optional<Set> orbit_union() {
        auto orbits = F_.frobenius_orbits();
        shuffle(orbits);
        Set I;
        long need = s_ - 1;
        for (const auto& o : orbits)
            if (static_cast<long>(o.size()) <= need) {
                I.insert(I.end(), o.begin(), o.end());
                need -= static_cast<long>(o.size());
            }
        if (need != 0) return std::nullopt;
        std::sort(I.begin(), I.end());
        return I;
    }

    // union of cosets of a random F_p-subspace of order p^k dividing |S|
    std::optional<Set> additive() {
        const long p = F_.p(), q = F_.q();
        std::vector<long> ks;
        long pk = 1;
        for (long k = 0; pk <= s_; ++k, pk *= p)
            if (s_ % pk == 0) ks.push_back(k);
        const long k = ks[below(ks.size())];
        std::set<std::uint32_t> V{0};
        for (long t = 0; t < k; ++t) {
            const Fq g = F_.from_code(static_cast<std::uint32_t>(below(static_cast<std::uint64_t>(q))));
            std::set<std::uint32_t> W;
            for (auto v : V)
                for (long a = 0; a < p; ++a) W.insert(F_.add(Fq{v}, F_.mul(F_.from_int(a), g)).code);
            V = W;
        }
        long want = 1;
        for (long t = 0; t < k; ++t) want *= p;
        if (static_cast<long>(V.size()) != want) return std::nullopt;
        std::set<std::uint32_t> T = V;
        std::vector<std::uint32_t> xs;
        for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(q); ++x) xs.push_back(x);
        shuffle(xs);
        for (auto x : xs) {
            if (static_cast<long>(T.size()) >= s_) break;
            if (T.count(x)) continue;
            for (auto v : V) T.insert(F_.add(Fq{x}, Fq{v}).code);
        }
        if (static_cast<long>(T.size()) != s_) return std::nullopt;
        return from_codes(T);
    }

    // union of cosets of a subgroup of F_q^*, either with 0 added or translated onto 0
    std::optional<Set> multiplicative(bool with_zero) {
        const long q = F_.q(), m = with_zero ? s_ - 1 : s_;
        if (m < 1 || m > q - 1) return std::nullopt;
        std::vector<long> ds;
        for (long d = 1; d <= m; ++d)
            if ((q - 1) % d == 0 && m % d == 0) ds.push_back(d);
        const long d = ds[below(ds.size())], step = (q - 1) / d;
        std::vector<long> reps(static_cast<std::size_t>(step));
        for (long i = 0; i < step; ++i) reps[static_cast<std::size_t>(i)] = i;
        shuffle(reps);
        std::set<std::uint32_t> A;
        for (long t = 0; t < m / d; ++t)
            for (long j = 0; j < d; ++j) A.insert(F_.exp(reps[static_cast<std::size_t>(t)] + j * step).code);
        if (with_zero) {
            A.insert(0);
            return from_codes(A);
        }
        const Fq a0{*A.begin()};
        std::set<std::uint32_t> T;
        for (auto a : A) T.insert(F_.sub(Fq{a}, a0).code);
        return from_codes(T);
    }

    // {x : Tr(sum b_i x^i) in W} for one or two conditions, W a random subset of F_p containing 0
    std::optional<Set> trace_condition() {
        const long p = F_.p(), q = F_.q(), e = F_.e();
        auto tr = [&](Fq a) {
            Fq t = F_.zero();
            for (long k = 0; k < e; ++k) t = F_.add(t, F_.frobenius(a, k));
            return F_.coords(t)[0];
        };
        long r = 1;
        while (r * r < q) ++r;
        std::vector<bool> in(static_cast<std::size_t>(q), true);
        const int conds = 1 + static_cast<int>(below(2));
        for (int k = 0; k < conds; ++k) {
            std::vector<std::pair<long, Fq>> f;
            const int terms = 1 + static_cast<int>(below(3));
            for (int t = 0; t < terms; ++t)
                f.emplace_back(1 + static_cast<long>(below(static_cast<std::uint64_t>(2 * r + 2))),
                               F_.from_code(1 + static_cast<std::uint32_t>(below(static_cast<std::uint64_t>(q - 1)))));
            std::vector<bool> W(static_cast<std::size_t>(p), false);
            W[0] = true;
            for (long w = 1; w < p; ++w) W[static_cast<std::size_t>(w)] = below(3) == 0;
            for (long x = 0; x < q; ++x) {
                Fq v = F_.zero();
                for (const auto& [i, b] : f) v = F_.add(v, F_.mul(b, F_.pow(Fq{static_cast<std::uint32_t>(x)}, i)));
                if (!W[tr(v)]) in[static_cast<std::size_t>(x)] = false;
            }
        }
        std::set<std::uint32_t> T;
        for (long x = 0; x < q; ++x)
            if (in[static_cast<std::size_t>(x)]) T.insert(static_cast<std::uint32_t>(x));
        if (static_cast<long>(T.size()) != s_ || !T.count(0)) return std::nullopt;
        return from_codes(T);
    }

    const FieldCtx& F_;
    long s_;
    std::mt19937_64 rng_;
};

}  // namespace

SearchResult search_rational(const FieldCtx& F, const std::vector<RationalTarget>& targets, long budget,
                             long exhaustive_limit) {
    SearchResult res;
    res.found.resize(targets.size());
    if (targets.empty()) return res;
    const long s1 = targets.front().s1;
    for (const auto& t : targets)
        if (t.s1 != s1) fail(Errc::domain_error, "search targets must share |S|");
    if (s1 < 1 || s1 > static_cast<long>(F.q())) return res;

    std::size_t open = targets.size();
    auto test = [&](const Set& I) {
        ++res.tried;
        RationalSet S(F, I);
        for (std::size_t k = 0; k < targets.size(); ++k) {
            if (res.found[k]) continue;
            if (matches(S, targets[k])) {
                res.found[k] = S.codes();
                --open;
            }
        }
        return open > 0;
    };

    if (binomial(F.q() - 1, s1 - 1) <= exhaustive_limit) {
        res.exhaustive = true;
        for_each_subset(F.q(), s1, false, test);
        return res;
    }
    Families fam(F, s1, 0x5eedULL * F.q() + static_cast<std::uint64_t>(s1));
    std::set<Set> seen;
    for (long k = 0; k < budget && open > 0; ++k) {
        auto I = fam.next(k);
        if (!I || !seen.insert(min_rotation(*I, F.q())).second) continue;
        test(*I);
    }
    return res;
}

}  // namespace rayfield
