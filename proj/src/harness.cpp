#include "rayfield/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "rayfield/bounds.hpp"
#include "rayfield/error.hpp"
#include "rayfield/raygenus.hpp"

namespace rayfield {

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& f) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    for (std::size_t t = 0; t < n; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lk(m);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

std::string rational_set_label(const FieldCtx& F, const std::vector<std::uint32_t>& codes) {
    std::string s = "{0";
    for (auto c : codes) s += "," + F.to_string(F.from_code(c));
    return s + "}";
}

std::vector<TableRow> rational_rows(RationalSet& S, long l_min, long l_max, bool certify) {
    const FieldCtx& F = S.field();
    std::vector<TableRow> rows;
    const auto codes = S.codes();
    const std::string label = rational_set_label(F, codes);
    for (long l = l_min; l <= l_max; ++l) {
        const auto& L = S.lambda_reaching(l);
        const auto fi = ray_invariants(0, 1, F.p(), L, l, S.size(), true, false);
        TableRow r;
        r.q = F.q();
        r.g = fi.genus;
        r.N_lower = fi.points.N_lower;
        r.n = printed_conductor(l, fi.n);
        r.l = l;
        r.s1 = S.size();
        r.h_S = 1;
        r.source = L.source;
        r.set = label;
        rows.push_back(r);
    }
    if (!certify || rows.empty()) return rows;

    long n_max = 1;
    for (const auto& r : rows) n_max = std::max(n_max, r.n);
    std::vector<bool> inside(F.q(), false);
    inside[0] = true;
    for (auto c : codes) inside[c] = true;
    std::vector<long> worst(rows.size(), -1);  // max over Q of lambda_{S u Q}^(n)
    for (std::uint32_t a = 1; a < F.q(); ++a) {
        if (inside[a]) continue;
        auto more = codes;
        more.push_back(a);
        auto T = RationalSet::from_codes(F, more);
        const auto& L = T.lambda(n_max);
        for (std::size_t k = 0; k < rows.size(); ++k) worst[k] = std::max(worst[k], L.at(rows[k].n));
    }
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].exact = rows[k].l > worst[k];
    return rows;
}

void sort_rows(std::vector<TableRow>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
        if (a.g != b.g) return a.g < b.g;
        if (a.N_lower != b.N_lower) return a.N_lower > b.N_lower;
        return a.l < b.l;
    });
}

CurveGround make_curve_ground(PlaneCurve C, UnitsFile units) {
    CurveGround G{std::move(C), std::move(units), {}, {}, {}, 0, 0, false};
    const FieldCtx& F = G.C.field();
    G.places = rational_places(G.C);
    const auto gens = G.units.units(F);
    if (gens.empty()) fail(Errc::rank_deficient, "no units given");
    const IntMatrix all = valuation_matrix(G.C, gens, G.places);
    for (std::size_t j = 0; j < G.places.size(); ++j)
        for (const auto& row : all)
            if (row[j] != 0) {
                G.support.push_back(j);
                break;
            }
    G.D.assign(all.size(), {});
    for (std::size_t i = 0; i < all.size(); ++i)
        for (auto j : G.support) G.D[i].push_back(all[i][j]);
    if (G.D.size() + 1 != G.support.size())
        fail(Errc::rank_deficient, std::to_string(G.D.size()) + " units on " + std::to_string(G.support.size()) +
                                       " places; need one fewer unit than places");
    const auto idx = lattice_index(G.D);
    if (idx.infinite) fail(Errc::rank_deficient, "units are dependent");
    G.index = idx.value;
    G.h_K = class_number(G.C);
    const long g = G.C.genus();
    if (g == 0) {
        G.certified = G.index == 1;
    } else {
        const auto hb = hbar(F.q(), g, static_cast<long>(G.support.size()));
        G.certified = certify_generators(G.h_K, hb, G.index).certified;
    }
    return G;
}

std::size_t place_index(const CurveGround& G, const PlaceSpec& P) {
    for (std::size_t i = 0; i < G.places.size(); ++i)
        if (G.places[i].label() == P.label()) return i;
    fail(Errc::domain_error, "place " + P.label() + " is not a rational place of the curve");
}

namespace {

std::optional<std::size_t> support_pos(const CurveGround& G, std::size_t place) {
    for (std::size_t k = 0; k < G.support.size(); ++k)
        if (G.support[k] == place) return k;
    return std::nullopt;
}

std::vector<std::size_t> support_cols(const CurveGround& G, const std::vector<std::size_t>& places) {
    std::vector<std::size_t> cols;
    for (auto pl : places) {
        const auto k = support_pos(G, pl);
        if (!k) fail(Errc::domain_error, "place " + G.places[pl].label() + " carries no given unit");
        cols.push_back(*k);
    }
    return cols;
}

long to_long(const mpz_class& z) {
    if (!z.fits_slong_p()) fail(Errc::out_of_range, "exponent too large");
    return z.get_si();
}

}  // namespace

CurveSet curve_set(const CurveGround& G, std::size_t P, std::vector<std::size_t> S) {
    if (!G.certified) fail(Errc::rank_deficient, "units are not certified to generate all S-units");
    if (S.empty()) fail(Errc::domain_error, "S must contain a place");
    std::set<std::size_t> seen(S.begin(), S.end());
    if (seen.size() != S.size() || seen.count(P) || P >= G.places.size())
        fail(Errc::domain_error, "S and P must be distinct rational places");
    CurveSet cs;
    cs.P = P;
    cs.S = S;
    const auto sb = subset_basis(G.D, support_cols(G, S));
    cs.h_S = G.h_K / sb.regulator;
    if (support_pos(G, P)) {
        auto SP = S;
        SP.push_back(P);
        const auto sb2 = subset_basis(G.D, support_cols(G, SP));
        cs.eps = G.h_K / sb2.regulator == cs.h_S;
    }
    const FieldCtx& F = G.C.field();
    for (const auto& u : sb.exponents) {
        std::vector<long> k(G.units.factors.size(), 0);
        for (std::size_t j = 0; j < u.size(); ++j)
            for (std::size_t f = 0; f < k.size(); ++f) k[f] += to_long(u[j]) * G.units.exponents[j][f];
        cs.units.push_back(G.units.product(F, k));
    }
    cs.desc = describe_units(G.C, G.places[P], cs.units).desc;
    return cs;
}

std::string curve_set_label(const CurveGround& G, const CurveSet& cs) {
    std::string s = "P=" + G.places[cs.P].label() + " S={";
    for (std::size_t k = 0; k < cs.S.size(); ++k) s += (k ? " " : "") + G.places[cs.S[k]].label();
    return s + "}";
}

namespace {

LambdaSeq lambda_reaching(const Description& d, unsigned e, long l) {
    for (long n = 8;; n *= 2) {
        auto L = lambda_seq_b(d, e, n);
        if (L.values.back() >= l) return L;
        if (n > (1L << 16)) fail(Errc::out_of_range, "lambda does not reach " + std::to_string(l));
    }
}

}  // namespace

std::vector<TableRow> curve_rows(const CurveGround& G, const CurveSet& cs, long l_min, long l_max, bool certify) {
    const FieldCtx& F = G.C.field();
    std::vector<TableRow> rows;
    const std::string label = curve_set_label(G, cs);
    const LambdaSeq L = lambda_reaching(cs.desc, F.e(), std::max(l_max, 0L));
    for (long l = l_min; l <= l_max; ++l) {
        const auto fi = ray_invariants(G.C.genus(), cs.h_S, F.p(), L, l, static_cast<long>(cs.S.size()),
                                       cs.eps.value_or(false), false);
        TableRow r;
        r.q = F.q();
        r.g = fi.genus;
        r.N_lower = fi.points.N_lower;
        r.n = printed_conductor(l, fi.n);
        r.l = l;
        r.s1 = static_cast<long>(cs.S.size());
        r.h_S = cs.h_S;
        r.g_K = G.C.genus();
        r.source = LambdaSource::B;
        r.eps = cs.eps.value_or(false);
        r.set = label;
        rows.push_back(r);
    }
    if (!certify) return rows;
    std::vector<bool> ok(rows.size(), true);
    for (std::size_t Q = 0; Q < G.places.size(); ++Q) {
        if (Q == cs.P || std::count(cs.S.begin(), cs.S.end(), Q)) continue;
        if (!support_pos(G, Q)) {
            ok.assign(rows.size(), false);
            break;
        }
        auto S2 = cs.S;
        S2.push_back(Q);
        const auto c2 = curve_set(G, cs.P, S2);
        long n_max = 1;
        for (const auto& r : rows) n_max = std::max(n_max, r.n);
        const auto L2 = lambda_seq_b(c2.desc, F.e(), n_max + 1);
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (rows[k].l <= L2.at(rows[k].n)) ok[k] = false;
    }
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k].exact = ok[k];
    return rows;
}

CurveGround example_ground() {
    const auto C = load_curve(data_dir() + "/curves/example_g2.curve");
    return make_curve_ground(C, load_units(C.field(), data_dir() + "/units/example_g2_all.units"));
}

CurveSet example_s2(const CurveGround& G) {
    const FieldCtx& F = G.C.field();
    const auto P = place_index(G, PlaceSpec::affine(F.zero(), F.zero()));
    return curve_set(G, P,
                     {place_index(G, PlaceSpec::at_infinity(0)), place_index(G, PlaceSpec::affine(F.zero(), F.one())),
                      place_index(G, PlaceSpec::affine(F.one(), F.zero()))});
}

long Census::method_a_descriptions() const {
    return std::count_if(entries.begin(), entries.end(), [](const CensusEntry& e) { return e.method_a_sets > 0; });
}

long Census::method_b_only_descriptions() const {
    return static_cast<long>(entries.size()) - method_a_descriptions();
}

Census describe_census(const FieldCtx& F, long s_min, long s_max, bool all, int jobs) {
    if (F.q() > 32) fail(Errc::cap_exceeded, "census is limited to q <= 32");
    s_min = std::max(s_min, 1L);
    s_max = std::min<long>(s_max, F.q());
    mpz_class total = 0;
    for (long s = s_min; s <= s_max; ++s) total += binomial(F.q() - 1, s - 1);
    if (!all) total = total / (F.q() - 1) + 1;  // rough size of the reduced census
    if (total > census_cap) fail(Errc::cap_exceeded, "census would visit about " + total.get_str() + " sets");

    std::vector<std::vector<std::uint32_t>> sets;
    for (long s = s_min; s <= s_max; ++s)
        for_each_subset(F.q(), s, all, [&](const std::vector<std::uint32_t>& I) {
            sets.push_back(I);
            return true;
        });
    std::vector<Description> desc(sets.size());
    std::vector<char> by_a(sets.size(), 0);
    parallel_for(sets.size(), jobs, [&](std::size_t k) {
        const auto S = SSpecA::from_exponents(F, sets[k]);
        const auto prof = e_profile(S);
        if (fully_valid(S, prof)) {
            by_a[k] = 1;
            desc[k].p = F.p();
            for (long n = 1; n < static_cast<long>(F.q()); ++n)
                for (unsigned r = 0; r < prof.at(n); ++r) desc[k].n_i.push_back(n);
        } else {
            std::vector<Fq> A;
            for (auto j : sets[k]) A.push_back(F.exp(j));
            desc[k] = describe_rational(F, A).desc;
        }
    });
    std::map<std::string, CensusEntry> m;
    for (std::size_t k = 0; k < sets.size(); ++k) {
        auto& e = m[desc[k].to_string()];
        e.desc = desc[k];
        ++e.sets;
        e.method_a_sets += by_a[k];
    }
    Census c;
    c.q = F.q();
    c.sets = static_cast<long>(sets.size());
    for (auto& [k, e] : m) c.entries.push_back(std::move(e));
    return c;
}

std::string status_name(RowStatus s) {
    switch (s) {
        case RowStatus::pass:
            return "pass";
        case RowStatus::fail:
            return "FAIL";
        case RowStatus::unresolved:
            return "unresolved";
        default:
            return "excluded";
    }
}

long VerifyReport::count(RowStatus s) const {
    return std::count_if(rows.begin(), rows.end(), [s](const RowCheck& r) { return r.status == s; });
}

long VerifyReport::bound_failures() const {
    return std::count_if(rows.begin(), rows.end(), [](const RowCheck& r) { return !r.bound_ok; });
}

bool VerifyReport::ok() const { return count(RowStatus::fail) == 0 && bound_failures() == 0; }

bool corpus_selects(const std::string& corpus, const GoldenRow& r) {
    if (corpus == "all") return true;
    if (corpus == "example") return r.cls == RowClass::example;
    if (corpus == "rational") return r.cls == RowClass::rational;
    if (corpus.size() > 1 && corpus[0] == 'q' && std::all_of(corpus.begin() + 1, corpus.end(), ::isdigit))
        return r.q == std::stol(corpus.substr(1));
    return r.tag == corpus || class_name(r.cls) == corpus;
}

namespace {

FieldCtx field_of(long q) {
    std::uint32_t p = 2;
    while (q % p) ++p;
    unsigned e = 0;
    for (long x = q; x > 1; x /= p) ++e;
    return FieldCtx::make(p, e);
}

RationalTarget target_of(const GoldenRow& r) { return {r.g, r.N_lower, r.n, r.l, r.s1}; }

std::string mismatch(const GoldenRow& r, const TableRow& t) {
    return "computed g=" + t.g.get_str() + " N=" + t.N_lower.get_str() + " n=" + std::to_string(t.n) +
           " h_S=" + t.h_S.get_str() + ", printed g=" + std::to_string(r.g) + " N=" + r.N_lower.get_str() +
           (r.n ? " n=" + std::to_string(*r.n) : std::string()) + " h_S=" + r.h_S.get_str();
}

bool same(const GoldenRow& r, const TableRow& t) {
    return t.g == r.g && t.N_lower == r.N_lower && t.h_S == r.h_S && t.s1 == r.s1 && (!r.n || *r.n == t.n);
}

// rows of one (q, |S|) group over F_q(x)
void check_rational_group(const std::vector<RowCheck*>& group, const VerifyOptions& opt) {
    const long q = group.front()->row.q;
    const FieldCtx F = field_of(q);
    std::vector<RowCheck*> open;
    for (auto* rc : group) {
        const auto it = opt.witnesses.find(rc->row.key());
        if (it == opt.witnesses.end()) {
            open.push_back(rc);
            continue;
        }
        auto S = RationalSet::from_codes(F, it->second);
        rc->witness = rational_set_label(F, S.codes());
        if (matches(S, target_of(rc->row))) {
            rc->status = RowStatus::pass;
            rc->detail = "witness";
        } else {
            rc->status = RowStatus::fail;
            rc->detail = "stored witness does not reproduce the row";
        }
    }
    if (open.empty()) return;
    std::vector<RationalTarget> targets;
    for (auto* rc : open) targets.push_back(target_of(rc->row));
    const auto res = search_rational(F, targets, opt.search_budget, opt.exhaustive_limit);
    for (std::size_t k = 0; k < open.size(); ++k) {
        auto* rc = open[k];
        if (res.found[k]) {
            rc->status = RowStatus::pass;
            rc->witness = rational_set_label(F, *res.found[k]);
            rc->witness_codes = *res.found[k];
            rc->detail = res.exhaustive ? "exhaustive" : "search";
        } else if (res.exhaustive) {
            rc->status = RowStatus::fail;
            rc->detail = "no S of size " + std::to_string(rc->row.s1) + " reproduces the row (" +
                         std::to_string(res.tried) + " sets up to x -> ax)";
        } else {
            rc->status = RowStatus::unresolved;
            rc->detail = "no witness; " + std::to_string(res.tried) + " family draws without a match";
        }
    }
}

void check_example(RowCheck& rc, const CurveGround& G) {
    const auto cs = example_s2(G);
    const auto t = curve_rows(G, cs, rc.row.l, rc.row.l, false).front();
    rc.witness = t.set;
    rc.status = same(rc.row, t) ? RowStatus::pass : RowStatus::fail;
    rc.detail = rc.status == RowStatus::pass ? "worked example" : mismatch(rc.row, t);
}

// every choice of P and S among the rational places of the example curve
void check_curve_search(const std::vector<RowCheck*>& group, const CurveGround& G) {
    const std::size_t m = G.places.size();
    std::vector<CurveSet> sets;
    for (std::size_t P = 0; P < m; ++P)
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            if (mask >> P & 1) continue;
            std::vector<std::size_t> S;
            for (std::size_t j = 0; j < m; ++j)
                if (mask >> j & 1) S.push_back(j);
            sets.push_back(curve_set(G, P, S));
        }
    for (auto* rc : group) {
        rc->status = RowStatus::fail;
        rc->detail = "no P, S on the example curve reproduces the row (" + std::to_string(sets.size()) + " choices)";
        if (rc->row.g_K != G.C.genus() || rc->row.q != static_cast<long>(G.C.field().q())) {
            rc->detail = "ground field differs from the example curve";
            continue;
        }
        for (const auto& cs : sets) {
            if (static_cast<long>(cs.S.size()) != rc->row.s1 || cs.h_S != rc->row.h_S) continue;
            const auto t = curve_rows(G, cs, rc->row.l, rc->row.l, false).front();
            if (same(rc->row, t)) {
                rc->status = RowStatus::pass;
                rc->witness = t.set;
                rc->detail = "curve search";
                break;
            }
        }
    }
}

}  // namespace

VerifyReport verify(const std::vector<GoldenRow>& rows, const VerifyOptions& opt) {
    VerifyReport rep;
    for (const auto& r : rows)
        if (corpus_selects(opt.corpus, r)) rep.rows.push_back(RowCheck{r, RowStatus::excluded, {}, {}, {}, 0, true});

    std::map<std::pair<long, long>, std::vector<RowCheck*>> rational;
    std::vector<RowCheck*> example, curve;
    for (auto& rc : rep.rows) {
        switch (rc.row.cls) {
            case RowClass::rational:
            case RowClass::rational_search:
                rational[{rc.row.q, rc.row.s1}].push_back(&rc);
                break;
            case RowClass::example:
                example.push_back(&rc);
                break;
            case RowClass::curve_search:
                curve.push_back(&rc);
                break;
            case RowClass::external:
                rc.detail = "ground field from the cited literature";
                break;
        }
    }

    std::vector<std::function<void()>> tasks;
    for (auto& [k, group] : rational) tasks.push_back([&group, &opt] { check_rational_group(group, opt); });
    std::optional<CurveGround> G;
    if (!example.empty() || !curve.empty()) G = example_ground();
    for (auto* rc : example) tasks.push_back([rc, &G] { check_example(*rc, *G); });
    if (!curve.empty()) tasks.push_back([&curve, &G] { check_curve_search(curve, *G); });
    parallel_for(tasks.size(), opt.jobs, [&](std::size_t i) { tasks[i](); });

    for (auto& rc : rep.rows) {
        rc.nbar = oesterle_nbar(rc.row.q, rc.row.g);
        const bool within = rc.row.N_lower <= rc.row.N_upper && rc.row.N_upper <= rc.nbar;
        if (within) continue;
        if (rc.row.cls == RowClass::external)
            rc.detail += "; printed range exceeds the Oesterle bound";
        else
            rc.bound_ok = false;
    }

    rep.witnesses = opt.witnesses;
    for (const auto& rc : rep.rows)
        if (rc.status == RowStatus::pass && !rc.witness_codes.empty()) rep.witnesses[rc.row.key()] = rc.witness_codes;
    return rep;
}

}  // namespace rayfield
