#include "rayfield/input.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

namespace {

class PolyParser {
   public:
    PolyParser(const FieldCtx& F, std::string_view s) : F_(F), s_(s) {}

    Poly2 parse() {
        Poly2 r = sum();
        skip();
        if (pos_ != s_.size()) bad("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

   private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void bad(const std::string& msg) const {
        fail(Errc::parse_error, msg + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
    }
    unsigned long number() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) bad("expected a number");
        unsigned long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
            if (v > 1000000000UL) bad("number too large");
        }
        return v;
    }

    Poly2 sum() {
        bool neg = eat('-');
        Poly2 r = product();
        if (neg) r = poly2_sub(F_, Poly2{}, r);
        for (;;) {
            if (eat('+'))
                r = poly2_add(F_, r, product());
            else if (eat('-'))
                r = poly2_sub(F_, r, product());
            else
                return r;
        }
    }
    Poly2 product() {
        Poly2 r = power();
        for (;;) {
            skip();
            if (eat('*')) {
                r = poly2_mul(F_, r, power());
                continue;
            }
            // implicit multiplication: 3x, x(y+1)
            if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
                r = poly2_mul(F_, r, power());
                continue;
            }
            return r;
        }
    }
    Poly2 power() {
        Poly2 b = atom();
        if (eat('^')) b = poly2_pow(F_, b, static_cast<unsigned>(number()));
        return b;
    }
    Poly2 atom() {
        skip();
        if (eat('(')) {
            Poly2 r = sum();
            if (!eat(')')) bad("expected ')'");
            return r;
        }
        if (pos_ >= s_.size()) bad("unexpected end");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return poly2_const(F_, F_.from_int(static_cast<long long>(number() % F_.p())));
        ++pos_;
        switch (c) {
            case 'x':
                return poly2_x(F_);
            case 'y':
                return poly2_y(F_);
            case 'w':
                return poly2_const(F_, F_.omega());
            case 't':
                if (F_.e() < 2) bad("t needs a proper extension field");
                return poly2_const(F_, F_.from_code(F_.p()));
            default:
                --pos_;
                bad("unknown symbol");
        }
    }

    const FieldCtx& F_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

long to_long(const std::string& tok) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        fail(Errc::parse_error, "expected an integer, got \"" + tok + "\"");
    }
    if (used != tok.size()) fail(Errc::parse_error, "expected an integer, got \"" + tok + "\"");
    return v;
}

std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream is(line);
        std::string tok;
        if (is >> tok) out.push_back(line);
    }
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    std::string tok;
    while (is >> tok) t.push_back(tok);
    return t;
}

}  // namespace

Poly2 parse_poly(const FieldCtx& F, std::string_view expr) { return PolyParser(F, expr).parse(); }

std::vector<long> parse_int_list(std::string_view s) {
    std::vector<long> out;
    std::string cur;
    for (char c : std::string(s) + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(to_long(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    return out;
}

PlaceSpec parse_place(const FieldCtx& F, std::string_view spec) {
    std::string s(spec);
    std::optional<RationalFunction> unif;
    if (auto slash = s.find("/u="); slash != std::string::npos) {
        unif = RationalFunction{parse_poly(F, s.substr(slash + 3)), {}};
        s.erase(slash);
    }
    PlaceSpec P;
    if (s.rfind("affine:", 0) == 0) {
        const auto v = parse_int_list(s.substr(7));
        if (v.size() != 2 || v[0] < 0 || v[1] < 0) fail(Errc::parse_error, "affine place needs two element codes");
        P = PlaceSpec::affine(F.from_code(static_cast<std::uint32_t>(v[0])), F.from_code(static_cast<std::uint32_t>(v[1])));
    } else if (s.rfind("inf:", 0) == 0) {
        const long k = to_long(s.substr(4));
        if (k < 0) fail(Errc::parse_error, "negative place index");
        P = PlaceSpec::at_infinity(static_cast<std::size_t>(k));
    } else {
        fail(Errc::parse_error, "place must look like affine:A,B or inf:K");
    }
    P.uniformizer = unif;
    return P;
}

PlaneCurve read_curve(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.size() < 3) fail(Errc::parse_error, "curve file too short");
    const auto head = tokens(lines[0]);
    if (head.size() != 3) fail(Errc::parse_error, "header must be \"p e g\"");
    const long p = to_long(head[0]), e = to_long(head[1]), g = to_long(head[2]);
    if (p < 2 || e < 1 || g < 0) fail(Errc::parse_error, "bad header values");

    std::optional<PrimePoly> modulus;
    const auto mod = tokens(lines[1]);
    if (!(mod.size() == 1 && mod[0] == "default")) {
        if (static_cast<long>(mod.size()) != e + 1) fail(Errc::parse_error, "modulus needs e+1 coefficients");
        PrimePoly m;
        for (const auto& t : mod) m.push_back(static_cast<std::uint32_t>(to_long(t)));
        modulus = m;
    }
    const FieldCtx F = FieldCtx::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(e), modulus);

    Poly2 f;
    std::size_t i = 2;
    for (; i < lines.size(); ++i) {
        const auto t = tokens(lines[i]);
        if (t.size() == 1 && t[0] == "infinity") break;
        if (static_cast<long>(t.size()) != 2 + e) fail(Errc::parse_error, "term line needs i j and e coordinates");
        std::vector<std::uint32_t> c;
        for (long k = 0; k < e; ++k) c.push_back(static_cast<std::uint32_t>(to_long(t[static_cast<std::size_t>(2 + k)])));
        Poly2 term;
        const Fq a = F.from_coords(c);
        if (a == F.zero()) continue;
        term.terms[{static_cast<int>(to_long(t[0])), static_cast<int>(to_long(t[1]))}] = a;
        f = poly2_add(F, f, term);
    }
    std::vector<InfinitePlace> inf;
    for (++i; i < lines.size(); ++i) {
        const auto t = tokens(lines[i]);
        InfinitePlace pl;
        pl.degree = static_cast<unsigned>(to_long(t[0]));
        if (t.size() == 5 || t.size() == 7) {
            Chart c;
            c.ax = static_cast<int>(to_long(t[1]));
            c.bx = static_cast<int>(to_long(t[2]));
            c.ay = static_cast<int>(to_long(t[3]));
            c.by = static_cast<int>(to_long(t[4]));
            c.X0 = t.size() == 7 ? F.from_code(static_cast<std::uint32_t>(to_long(t[5]))) : F.zero();
            c.Y0 = t.size() == 7 ? F.from_code(static_cast<std::uint32_t>(to_long(t[6]))) : F.zero();
            pl.chart = c;
        } else if (t.size() != 1) {
            fail(Errc::parse_error, "place at infinity: degree [ax bx ay by [X0 Y0]]");
        }
        inf.push_back(pl);
    }
    return PlaneCurve(F, f, static_cast<unsigned>(g), inf);
}

PlaneCurve load_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open " + path);
    return read_curve(in);
}

RationalFunction UnitsFile::product(const FieldCtx& F, const std::vector<long>& k) const {
    if (k.size() != factors.size()) fail(Errc::parse_error, "exponent vector length differs from factor count");
    Poly2 num = poly2_const(F, F.one()), den = poly2_const(F, F.one());
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] > 0) num = poly2_mul(F, num, poly2_pow(F, factors[i], static_cast<unsigned>(k[i])));
        if (k[i] < 0) den = poly2_mul(F, den, poly2_pow(F, factors[i], static_cast<unsigned>(-k[i])));
    }
    return RationalFunction{num, den};
}

RationalFunction UnitsFile::unit(const FieldCtx& F, std::size_t k) const { return product(F, exponents.at(k)); }

std::vector<RationalFunction> UnitsFile::units(const FieldCtx& F) const {
    std::vector<RationalFunction> out;
    for (std::size_t k = 0; k < exponents.size(); ++k) out.push_back(unit(F, k));
    return out;
}

UnitsFile read_units(const FieldCtx& F, std::istream& in) {
    UnitsFile u;
    for (const auto& line : content_lines(in)) {
        std::istringstream is(line);
        std::string kw;
        is >> kw;
        std::string rest;
        std::getline(is, rest);
        if (kw == "factor") {
            u.factors.push_back(parse_poly(F, rest));
        } else if (kw == "unit") {
            std::vector<long> k;
            for (const auto& t : tokens(rest)) k.push_back(to_long(t));
            if (k.size() != u.factors.size()) fail(Errc::parse_error, "unit line needs one exponent per factor");
            u.exponents.push_back(k);
        } else {
            fail(Errc::parse_error, "unknown keyword \"" + kw + "\" in units file");
        }
    }
    return u;
}

UnitsFile load_units(const FieldCtx& F, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open " + path);
    return read_units(F, in);
}

}  // namespace rayfield
