#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rayfield/bounds.hpp"
#include "rayfield/error.hpp"
#include "rayfield/golden.hpp"
#include "rayfield/harness.hpp"
#include "rayfield/input.hpp"
#include "rayfield/method_a.hpp"
#include "rayfield/method_b.hpp"
#include "rayfield/rational.hpp"
#include "rayfield/raygenus.hpp"

using json = nlohmann::ordered_json;
using namespace rayfield;

namespace {

struct Grid {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void print_grid(std::ostream& os, const Grid& g, const std::string& format) {
    if (format == "csv") {
        auto cell = [](const std::string& s) {
            if (s.find_first_of(",\"") == std::string::npos) return s;
            std::string q = "\"";
            for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
            return q + "\"";
        };
        for (std::size_t j = 0; j < g.header.size(); ++j) os << (j ? "," : "") << cell(g.header[j]);
        os << '\n';
        for (const auto& r : g.rows) {
            for (std::size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << cell(r[j]);
            os << '\n';
        }
        return;
    }
    std::vector<std::size_t> w(g.header.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = g.header[j].size();
    for (const auto& r : g.rows)
        for (std::size_t j = 0; j < r.size() && j < w.size(); ++j) w[j] = std::max(w[j], r[j].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j + 1 == r.size())
                os << r[j];
            else
                os << std::left << std::setw(static_cast<int>(w[j]) + 2) << r[j];
        }
        os << '\n';
    };
    line(g.header);
    for (const auto& r : g.rows) line(r);
}

// "3", "1..9" or "1,2,5"
std::vector<long> parse_range(const std::string& s) {
    if (const auto dots = s.find(".."); dots != std::string::npos) {
        const long a = std::stol(s.substr(0, dots)), b = std::stol(s.substr(dots + 2));
        std::vector<long> v;
        for (long k = a; k <= b; ++k) v.push_back(k);
        return v;
    }
    return parse_int_list(s);
}

FieldCtx field_for(long q) {
    if (q < 2) fail(Errc::domain_error, "q must be a prime power");
    std::uint32_t p = 2;
    while (q % p) ++p;
    unsigned e = 0;
    long x = q;
    for (; x % p == 0; x /= p) ++e;
    if (x != 1) fail(Errc::non_prime, std::to_string(q) + " is not a prime power");
    return FieldCtx::make(p, e);
}

std::vector<std::uint32_t> codes_of(const std::string& s) {
    std::vector<std::uint32_t> c;
    for (long v : parse_int_list(s)) {
        if (v < 0) fail(Errc::parse_error, "element codes are nonnegative");
        if (v != 0) c.push_back(static_cast<std::uint32_t>(v));
    }
    return c;
}

json lambda_json(const LambdaSeq& L) {
    return json{{"source", source_name(L.source)}, {"e", L.e}, {"valid_to", L.valid_to}, {"lambda", L.values}};
}

LambdaSeq lambda_from_json(const json& j) {
    LambdaSeq L;
    L.values = j.at("lambda").get<std::vector<long>>();
    L.e = j.value("e", 1u);
    L.valid_to = j.value("valid_to", L.max_index());
    const auto src = j.value("source", std::string("A"));
    L.source = src == "B" ? LambdaSource::B : src == "hayes" ? LambdaSource::hayes : LambdaSource::A;
    return L;
}

std::string bool_text(bool b) { return b ? "yes" : "no"; }

json row_json(const TableRow& r) {
    return json{{"q", r.q},
                {"g", r.g.get_str()},
                {"N_lower", r.N_lower.get_str()},
                {"n", r.n},
                {"l", r.l},
                {"S_size", r.s1},
                {"h_S", r.h_S.get_str()},
                {"g_K", r.g_K},
                {"source", source_name(r.source)},
                {"exact", r.exact},
                {"set", r.set}};
}

void emit_rows(const std::vector<TableRow>& rows, const std::string& format) {
    if (format == "json") {
        json a = json::array();
        for (const auto& r : rows) a.push_back(row_json(r));
        std::cout << a.dump(2) << '\n';
        return;
    }
    Grid g{{"g", "N", "n", "l", "|S|", "h_S", "g(K)", "method", "exact", "S"}, {}};
    for (const auto& r : rows)
        g.rows.push_back({r.g.get_str(), r.N_lower.get_str(), std::to_string(r.n), std::to_string(r.l),
                          std::to_string(r.s1), r.h_S.get_str(), std::to_string(r.g_K), source_name(r.source),
                          bool_text(r.exact), r.set});
    print_grid(std::cout, g, format);
}

struct CurveArgs {
    std::string curve, units, place = "affine:0,0", set;
};

void add_curve_options(CLI::App* sub, CurveArgs& c) {
    sub->add_option("--curve", c.curve, "curve file");
    sub->add_option("--units", c.units, "units file");
    sub->add_option("--place", c.place, "the place P, e.g. affine:0,0 or inf:0")->capture_default_str();
}

std::vector<std::size_t> place_list(const CurveGround& G, const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ';');)
        if (!tok.empty()) out.push_back(place_index(G, parse_place(G.C.field(), tok)));
    return out;
}

// every rational place except P that carries a unit
std::vector<std::size_t> default_curve_set(const CurveGround& G, std::size_t P) {
    std::vector<std::size_t> S;
    for (auto j : G.support)
        if (j != P) S.push_back(j);
    return S;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ray class field invariants of global function fields"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    int jobs = 1;
    app.add_option("--format", format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Hasse-Weil, Serre and Oesterle bounds");
    long b_q = 2;
    std::string b_g = "1";
    long b_N = 0;
    bnd->add_option("--q", b_q)->required();
    bnd->add_option("--g", b_g, "genus, list or range a..b")->capture_default_str();
    bnd->add_option("--N", b_N, "also evaluate the S-class number bound hbar_q(g, N)");

    // method-a
    auto* ma = app.add_subcommand("method-a", "lambda sequence of F_q(x) from Method A");
    long a_q = 2, a_n = 24;
    std::string a_set;
    ma->add_option("--q", a_q)->required();
    ma->add_option("--set", a_set, "codes of the nonzero elements of S (0 is always in S)");
    ma->add_option("--n", a_n, "compute lambda^(0..n)")->capture_default_str();

    // method-b
    auto* mb = app.add_subcommand("method-b", "S-description and lambda sequence from Method B");
    long b2_q = 2, b2_n = 24;
    std::string b2_set;
    CurveArgs b2_curve;
    mb->add_option("--q", b2_q, "rational function field F_q(x)");
    mb->add_option("--set", b2_set, "rational: element codes; curve: places separated by ';'");
    mb->add_option("--n", b2_n)->capture_default_str();
    add_curve_options(mb, b2_curve);

    // genus
    auto* gen = app.add_subcommand("genus", "genus and point bound from a lambda sequence");
    long g_q = 2, g_gK = 0, g_s1 = 1;
    std::string g_l = "1", g_lambda, g_hS = "1";
    bool g_eps = true;
    gen->add_option("--q", g_q)->required();
    gen->add_option("--l", g_l, "l, list or range")->required();
    gen->add_option("--lambda", g_lambda, "JSON from method-a/method-b (file or -)")->required();
    gen->add_option("--g-K", g_gK)->capture_default_str();
    gen->add_option("--h-S", g_hS)->capture_default_str();
    gen->add_option("--size", g_s1, "|S|")->capture_default_str();
    gen->add_option("--eps", g_eps, "h_S = h_{S u P}")->capture_default_str();

    // table
    auto* tab = app.add_subcommand("table", "table rows for a family of S");
    long t_q = 2;
    std::string t_l = "1..4", t_sizes;
    std::vector<std::string> t_sets;
    bool t_all = false, t_certify = false;
    CurveArgs t_curve;
    tab->add_option("--q", t_q, "rational function field F_q(x)");
    tab->add_option("--set", t_sets, "S (repeatable): element codes, or places separated by ';' for a curve");
    tab->add_option("--size", t_sizes, "rational: |S| (list or range); S = first |S| elements by code");
    tab->add_flag("--all-sets", t_all, "with --size: every S up to x -> ax");
    tab->add_option("--l", t_l, "l range")->capture_default_str();
    tab->add_flag("--certify", t_certify, "decide exactness of N by enlarging S");
    add_curve_options(tab, t_curve);

    // census
    auto* cen = app.add_subcommand("census", "S-descriptions over F_q(x)");
    long c_q = 16;
    std::string c_sizes;
    bool c_all = false;
    cen->add_option("--q", c_q)->required();
    cen->add_option("--sizes", c_sizes, "|S| range, default 1..q");
    cen->add_flag("--no-symmetry", c_all, "enumerate every S instead of one per orbit of x -> ax");

    // verify
    auto* ver = app.add_subcommand("verify", "recompute the transcribed tables");
    std::string v_corpus = "all", v_golden, v_wit, v_write;
    long v_budget = 0;
    bool v_quiet = false;
    ver->add_option("--corpus", v_corpus, "all, example, rational, q<Q>, a tag or a class")->capture_default_str();
    ver->add_option("--golden", v_golden, "golden table file");
    ver->add_option("--witnesses", v_wit, "witness file for rational rows");
    ver->add_option("--search-budget", v_budget, "family draws for rows without a witness")->capture_default_str();
    ver->add_option("--write-witnesses", v_write, "write all witnesses to this file");
    ver->add_flag("--summary", v_quiet, "print only the totals");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bnd) {
            field_for(b_q);
            json out = json::array();
            Grid grid{{"q", "g", "hasse_weil", "serre", "oesterle", "maximal_admissible"}, {}};
            if (b_N) grid.header.push_back("hbar");
            for (long g : parse_range(b_g)) {
                const auto r = bound_report(b_q, g);
                json j{{"q", r.q},
                       {"g", r.g},
                       {"hasse_weil", r.hasse_weil.get_str()},
                       {"serre", r.serre.get_str()},
                       {"oesterle", r.oesterle.get_str()},
                       {"maximal_admissible", r.maximal_admissible}};
                std::vector<std::string> row{std::to_string(r.q),        std::to_string(r.g),
                                             r.hasse_weil.get_str(),     r.serre.get_str(),
                                             r.oesterle.get_str(),       bool_text(r.maximal_admissible)};
                if (b_N) {
                    const auto h = hbar(b_q, g, b_N);
                    j["N"] = b_N;
                    j["hbar"] = h.to_string();
                    j["hbar_below_2"] = h < mpq_class(2);
                    row.push_back(h.to_string());
                }
                out.push_back(j);
                grid.rows.push_back(row);
            }
            if (format == "json")
                std::cout << out.dump(2) << '\n';
            else
                print_grid(std::cout, grid, format);
            return 0;
        }

        if (*ma) {
            const auto F = field_for(a_q);
            std::vector<std::uint32_t> I;
            for (auto c : codes_of(a_set)) I.push_back(F.dlog(F.from_code(c)));
            const auto S = SSpecA::from_exponents(F, I);
            const auto prof = e_profile(S);
            const auto L = lambda_seq_a(S, prof, a_n);
            json j{{"q", a_q},
                   {"S_size", S.size()},
                   {"I_S", S.I_S},
                   {"n_S", prof.n_S},
                   {"n_S_prime", prof.n_S_prime},
                   {"fully_valid", fully_valid(S, prof)}};
            j.update(lambda_json(L));
            if (format == "json") {
                std::cout << j.dump(2) << '\n';
            } else {
                Grid g{{"n", "lambda", "e_S"}, {}};
                for (long n = 0; n <= L.max_index(); ++n)
                    g.rows.push_back({std::to_string(n), std::to_string(L.values[static_cast<std::size_t>(n)]),
                                      n >= 1 ? std::to_string(prof.at(n)) : "-"});
                if (format == "text")
                    std::cout << "q=" << a_q << " |S|=" << S.size() << " n_S=" << prof.n_S
                              << " n_S'=" << prof.n_S_prime << " valid to n=" << L.valid_to << '\n';
                print_grid(std::cout, g, format);
            }
            return 0;
        }

        if (*mb) {
            DescribeRun run;
            unsigned e = 1;
            json j;
            if (!b2_curve.curve.empty()) {
                if (b2_curve.units.empty()) fail(Errc::parse_error, "--curve needs --units");
                const auto C = load_curve(b2_curve.curve);
                const auto G = make_curve_ground(C, load_units(C.field(), b2_curve.units));
                const auto P = place_index(G, parse_place(C.field(), b2_curve.place));
                const auto S = b2_set.empty() ? default_curve_set(G, P) : place_list(G, b2_set);
                const auto cs = curve_set(G, P, S);
                run = describe_units(C, G.places[P], cs.units);
                e = C.field().e();
                j = json{{"set", curve_set_label(G, cs)}, {"h_S", cs.h_S.get_str()}};
            } else {
                const auto F = field_for(b2_q);
                std::vector<Fq> A;
                for (auto c : codes_of(b2_set)) A.push_back(F.from_code(c));
                run = describe_rational(F, A);
                e = F.e();
                j = json{{"q", b2_q}, {"S_size", A.size() + 1}};
            }
            const auto L = lambda_seq_b(run.desc, e, b2_n);
            std::vector<std::string> mu;
            for (const auto& m : run.mu) mu.push_back(m.to_string());
            j["description"] = run.desc.to_string();
            j["n_i"] = run.desc.n_i;
            j["truncation"] = run.trunc;
            j["mu"] = mu;
            j.update(lambda_json(L));
            if (format == "json") {
                std::cout << j.dump(2) << '\n';
            } else {
                if (format == "text") {
                    std::cout << "delta_S = " << run.desc.to_string() << "  (truncation " << run.trunc << ")\n";
                    for (std::size_t k = 0; k < mu.size(); ++k) std::cout << "mu(u" << k + 1 << ") = " << mu[k] << '\n';
                }
                Grid g{{"n", "lambda"}, {}};
                for (long n = 0; n <= L.max_index(); ++n)
                    g.rows.push_back({std::to_string(n), std::to_string(L.values[static_cast<std::size_t>(n)])});
                print_grid(std::cout, g, format);
            }
            return 0;
        }

        if (*gen) {
            std::stringstream text;
            if (g_lambda == "-") {
                text << std::cin.rdbuf();
            } else {
                std::ifstream in(g_lambda);
                if (!in) fail(Errc::parse_error, "cannot open " + g_lambda);
                text << in.rdbuf();
            }
            // JSON from method-a/method-b, a JSON array, or plain whitespace-separated values
            const std::string body = text.str();
            const auto first = body.find_first_not_of(" \t\r\n");
            json lj;
            if (first != std::string::npos && (body[first] == '{' || body[first] == '[')) {
                lj = json::parse(body);
            } else {
                std::vector<long> v;
                long x = 0;
                while (text >> x) v.push_back(x);
                if (!text.eof() || v.empty()) fail(Errc::parse_error, "lambda: expected JSON or integers");
                lj = json{{"lambda", v}};
            }
            if (lj.is_array()) lj = json{{"lambda", lj}};
            const auto L = lambda_from_json(lj);
            const auto F = field_for(g_q);
            std::vector<TableRow> rows;
            for (long l : parse_range(g_l)) {
                const auto fi = ray_invariants(g_gK, mpz_class(g_hS), F.p(), L, l, g_s1, g_eps, false);
                TableRow r;
                r.q = g_q;
                r.g = fi.genus;
                r.N_lower = fi.points.N_lower;
                r.n = printed_conductor(l, fi.n);
                r.l = l;
                r.s1 = g_s1;
                r.h_S = fi.h_S;
                r.g_K = g_gK;
                r.source = L.source;
                r.eps = g_eps;
                rows.push_back(r);
            }
            emit_rows(rows, format);
            return 0;
        }

        if (*tab) {
            const auto ls = parse_range(t_l);
            if (ls.empty()) fail(Errc::parse_error, "empty l range");
            const long l_min = ls.front(), l_max = ls.back();
            std::vector<TableRow> rows;
            if (!t_curve.curve.empty()) {
                if (t_curve.units.empty()) fail(Errc::parse_error, "--curve needs --units");
                const auto C = load_curve(t_curve.curve);
                const auto G = make_curve_ground(C, load_units(C.field(), t_curve.units));
                const auto P = place_index(G, parse_place(C.field(), t_curve.place));
                std::vector<std::vector<std::size_t>> sets;
                for (const auto& s : t_sets) sets.push_back(place_list(G, s));
                if (sets.empty()) sets.push_back(default_curve_set(G, P));
                std::vector<std::vector<TableRow>> parts(sets.size());
                parallel_for(sets.size(), jobs, [&](std::size_t k) {
                    parts[k] = curve_rows(G, curve_set(G, P, sets[k]), l_min, l_max, t_certify);
                });
                for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
            } else {
                const auto F = field_for(t_q);
                std::vector<std::vector<std::uint32_t>> sets;  // codes
                for (const auto& s : t_sets) sets.push_back(codes_of(s));
                if (!t_sizes.empty())
                    for (long s1 : parse_range(t_sizes)) {
                        if (s1 < 1 || s1 > static_cast<long>(F.q())) fail(Errc::domain_error, "|S| must lie in 1..q");
                        if (t_all) {
                            for_each_subset(F.q(), s1, false, [&](const std::vector<std::uint32_t>& I) {
                                std::vector<std::uint32_t> c;
                                for (auto j : I) c.push_back(F.exp(j).code);
                                sets.push_back(c);
                                return true;
                            });
                        } else {
                            std::vector<std::uint32_t> c;
                            for (long k = 1; k < s1; ++k) c.push_back(static_cast<std::uint32_t>(k));
                            sets.push_back(c);
                        }
                    }
                if (sets.empty()) fail(Errc::parse_error, "give --set or --size");
                std::vector<std::vector<TableRow>> parts(sets.size());
                parallel_for(sets.size(), jobs, [&](std::size_t k) {
                    auto S = RationalSet::from_codes(F, sets[k]);
                    parts[k] = rational_rows(S, l_min, l_max, t_certify);
                });
                for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
            }
            sort_rows(rows);
            emit_rows(rows, format);
            return 0;
        }

        if (*cen) {
            const auto F = field_for(c_q);
            long s_min = 1, s_max = F.q();
            if (!c_sizes.empty()) {
                const auto r = parse_range(c_sizes);
                s_min = r.front();
                s_max = r.back();
            }
            const auto c = describe_census(F, s_min, s_max, c_all, jobs);
            if (format == "json") {
                json a = json::array();
                for (const auto& e : c.entries)
                    a.push_back(json{{"description", e.desc.to_string()},
                                     {"n_i", e.desc.n_i},
                                     {"sets", e.sets},
                                     {"method_a_sets", e.method_a_sets}});
                std::cout << json{{"q", c.q},
                                  {"sets", c.sets},
                                  {"descriptions", c.entries.size()},
                                  {"method_a_descriptions", c.method_a_descriptions()},
                                  {"method_b_only", c.method_b_only_descriptions()},
                                  {"entries", a}}
                                 .dump(2)
                          << '\n';
            } else {
                Grid g{{"description", "sets", "method_a_sets"}, {}};
                for (const auto& e : c.entries)
                    g.rows.push_back({e.desc.to_string(), std::to_string(e.sets), std::to_string(e.method_a_sets)});
                print_grid(std::cout, g, format);
                if (format == "text")
                    std::cout << c.sets << " sets, " << c.entries.size() << " descriptions: "
                              << c.method_a_descriptions() << " from Method A, " << c.method_b_only_descriptions()
                              << " only from Method B\n";
            }
            return 0;
        }

        if (*ver) {
            const auto rows = load_golden(v_golden.empty() ? data_dir() + "/golden_tables.txt" : v_golden);
            VerifyOptions opt;
            opt.corpus = v_corpus;
            opt.search_budget = v_budget;
            opt.jobs = jobs;
            opt.witnesses = load_witnesses(v_wit.empty() ? data_dir() + "/witnesses.txt" : v_wit);
            const auto rep = verify(rows, opt);
            if (rep.rows.empty()) fail(Errc::parse_error, "corpus \"" + v_corpus + "\" selects no rows");
            if (!v_write.empty()) {
                std::ofstream out(v_write);
                write_witnesses(out, rep.witnesses);
            }
            const long n_pass = rep.count(RowStatus::pass), n_fail = rep.count(RowStatus::fail),
                       n_unres = rep.count(RowStatus::unresolved), n_ext = rep.count(RowStatus::excluded);
            if (format == "json") {
                json a = json::array();
                for (const auto& rc : rep.rows)
                    a.push_back(json{{"tag", rc.row.tag},
                                     {"line", rc.row.line},
                                     {"class", class_name(rc.row.cls)},
                                     {"q", rc.row.q},
                                     {"g", rc.row.g},
                                     {"N", rc.row.N_lower.get_str()},
                                     {"l", rc.row.l},
                                     {"S_size", rc.row.s1},
                                     {"status", status_name(rc.status)},
                                     {"detail", rc.detail},
                                     {"witness", rc.witness},
                                     {"oesterle", rc.nbar.get_str()},
                                     {"bound_ok", rc.bound_ok}});
                std::cout << json{{"rows", rep.rows.size()},
                                  {"pass", n_pass},
                                  {"fail", n_fail},
                                  {"unresolved", n_unres},
                                  {"excluded", n_ext},
                                  {"bound_failures", rep.bound_failures()},
                                  {"ok", rep.ok()},
                                  {"checks", a}}
                                 .dump(2)
                          << '\n';
            } else {
                if (!v_quiet) {
                    Grid g{{"line", "tag", "q", "g", "N", "l", "|S|", "status", "bound", "detail", "witness"}, {}};
                    for (const auto& rc : rep.rows)
                        g.rows.push_back({std::to_string(rc.row.line), rc.row.tag, std::to_string(rc.row.q),
                                          std::to_string(rc.row.g), rc.row.N_lower.get_str(), std::to_string(rc.row.l),
                                          std::to_string(rc.row.s1), status_name(rc.status),
                                          rc.bound_ok ? "<=" + rc.nbar.get_str() : "ABOVE " + rc.nbar.get_str(),
                                          rc.detail, rc.witness});
                    print_grid(std::cout, g, format);
                }
                if (format == "text")
                    std::cout << rep.rows.size() << " rows: " << n_pass << " pass, " << n_fail << " fail, " << n_unres
                              << " unresolved, " << n_ext << " excluded (external ground fields); "
                              << rep.bound_failures() << " bound failures\n";
            }
            return rep.ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
