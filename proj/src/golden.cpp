#include "rayfield/golden.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rayfield/error.hpp"

#ifndef RAYFIELD_DATA_DIR
#define RAYFIELD_DATA_DIR "data"
#endif

namespace rayfield {

namespace {

const std::pair<RowClass, const char*> class_names[] = {
    {RowClass::rational, "rational"},         {RowClass::rational_search, "rational-search"},
    {RowClass::example, "example"},           {RowClass::curve_search, "curve-search"},
    {RowClass::external, "external"},
};

}  // namespace

std::string class_name(RowClass c) {
    for (const auto& [k, s] : class_names)
        if (k == c) return s;
    return "?";
}

RowClass parse_class(const std::string& s) {
    for (const auto& [k, name] : class_names)
        if (s == name) return k;
    fail(Errc::parse_error, "unknown row class \"" + s + "\"");
}

std::string GoldenRow::key() const {
    return tag + " " + std::to_string(q) + " " + std::to_string(g) + " " + std::to_string(l) + " " +
           std::to_string(s1);
}

std::vector<GoldenRow> read_golden(std::istream& in) {
    std::vector<GoldenRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        GoldenRow r;
        std::string lo, hi, n, h, cls;
        if (!(is >> r.tag >> r.q >> r.g >> lo >> hi >> n >> r.l >> r.s1 >> h >> r.g_K >> cls))
            fail(Errc::parse_error, "golden line " + std::to_string(lineno) + ": expected 11 fields");
        r.N_lower = mpz_class(lo);
        r.N_upper = mpz_class(hi);
        r.h_S = mpz_class(h);
        if (n != "-") r.n = std::stol(n);
        r.cls = parse_class(cls);
        r.line = lineno;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<GoldenRow> load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open " + path);
    return read_golden(in);
}

WitnessMap read_witnesses(std::istream& in) {
    WitnessMap w;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) fail(Errc::parse_error, "witness line without ':'");
        std::string key = line.substr(0, colon);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        std::istringstream is(line.substr(colon + 1));
        std::vector<std::uint32_t> codes;
        for (std::uint32_t c; is >> c;) codes.push_back(c);
        w[key] = codes;
    }
    return w;
}

WitnessMap load_witnesses(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    return read_witnesses(in);
}

void write_witnesses(std::ostream& out, const WitnessMap& w) {
    out << "# tag q g l |S| : codes of the nonzero elements of S (0 is always in S)\n";
    for (const auto& [k, codes] : w) {
        out << k << " :";
        for (auto c : codes) out << ' ' << c;
        out << '\n';
    }
}

std::string data_dir() {
    if (const char* env = std::getenv("RAYFIELD_DATA_DIR"); env && *env) return env;
    return RAYFIELD_DATA_DIR;
}

}  // namespace rayfield
