#include "rayfield/series.hpp"

#include <algorithm>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

Series::Series(FieldCtx F, long val, std::vector<Fq> coeffs) : F_(std::move(F)), val_(val), c_(std::move(coeffs)) {
    normalize();
}

void Series::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == F_.zero()) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        val_ += static_cast<long>(lead);
    }
}

Series Series::zero(const FieldCtx& F, long abs_prec) { return Series(F, abs_prec, {}); }

Series Series::constant(const FieldCtx& F, Fq c, long abs_prec) { return monomial(F, c, 0, abs_prec); }

Series Series::monomial(const FieldCtx& F, Fq c, long k, long abs_prec) {
    if (abs_prec <= k || c == F.zero()) return zero(F, abs_prec);
    std::vector<Fq> v(static_cast<std::size_t>(abs_prec - k), F.zero());
    v[0] = c;
    return Series(F, k, std::move(v));
}

Fq Series::coeff(long k) const {
    if (k >= abs_prec()) fail(Errc::precision_exceeded, "coefficient beyond series precision");
    if (k < val_) return F_.zero();
    return c_[static_cast<std::size_t>(k - val_)];
}

Fq Series::leading() const {
    if (c_.empty()) fail(Errc::precision_exceeded, "series is zero to its precision");
    return c_[0];
}

Series Series::truncated(long prec) const {
    if (prec >= abs_prec()) return *this;
    if (prec <= val_) return zero(F_, prec);
    return Series(F_, val_, std::vector<Fq>(c_.begin(), c_.begin() + (prec - val_)));
}

Series Series::shifted(long k) const {
    Series r = *this;
    r.val_ += k;
    return r;
}

Series Series::scaled(Fq a) const {
    if (a == F_.zero()) return zero(F_, abs_prec());
    Series r = *this;
    for (auto& c : r.c_) c = F_.mul(c, a);
    return r;
}

Series Series::plus_scalar(Fq a) const {
    if (a == F_.zero() || abs_prec() <= 0) return *this;
    return *this + constant(F_, a, abs_prec());
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& c : r.c_) c = F_.neg(c);
    return r;
}

Series operator+(const Series& a, const Series& b) {
    const long prec = std::min(a.abs_prec(), b.abs_prec());
    const long start = std::min(a.val_, b.val_);
    if (start >= prec) return Series::zero(a.F_, prec);
    std::vector<Fq> v(static_cast<std::size_t>(prec - start), a.F_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        const long k = a.val_ + static_cast<long>(i);
        if (k >= prec) break;
        v[static_cast<std::size_t>(k - start)] = a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        const long k = b.val_ + static_cast<long>(i);
        if (k >= prec) break;
        auto& slot = v[static_cast<std::size_t>(k - start)];
        slot = a.F_.add(slot, b.c_[i]);
    }
    return Series(a.F_, start, std::move(v));
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    if (a.is_zero() && b.is_zero()) return Series::zero(a.F_, a.abs_prec() + b.abs_prec());
    if (a.is_zero()) return Series::zero(a.F_, a.abs_prec() + b.val_);
    if (b.is_zero()) return Series::zero(a.F_, b.abs_prec() + a.val_);
    const std::size_t n = std::min(a.c_.size(), b.c_.size());
    const FieldCtx& F = a.F_;
    std::vector<Fq> v(n, F.zero());
    for (std::size_t i = 0; i < n; ++i) {
        const Fq ai = a.c_[i];
        if (ai == F.zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) v[i + j] = F.add(v[i + j], F.mul(ai, b.c_[j]));
    }
    return Series(F, a.val_ + b.val_, std::move(v));
}

Series Series::inv() const {
    if (is_zero()) fail(Errc::zero_denominator, "inverse of a series that is zero to its precision");
    const std::size_t n = c_.size();
    std::vector<Fq> r(n, F_.zero());
    const Fq inv0 = F_.inv(c_[0]);
    r[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Fq s = F_.zero();
        for (std::size_t i = 1; i <= k; ++i) s = F_.add(s, F_.mul(c_[i], r[k - i]));
        r[k] = F_.neg(F_.mul(s, inv0));
    }
    return Series(F_, -val_, std::move(r));
}

Series Series::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    if (k == 0) {
        if (is_zero()) fail(Errc::precision_exceeded, "zeroth power of an unknown series");
        return constant(F_, F_.one(), rel_prec());
    }
    Series result = *this;
    Series base = *this;
    --k;
    while (k) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Series Series::derivative() const {
    if (is_zero()) return zero(F_, abs_prec() - 1);
    std::vector<Fq> v(c_.size(), F_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F_.mul(F_.from_int(val_ + static_cast<long>(i)), c_[i]);
    return Series(F_, val_ - 1, std::move(v));
}

Series Series::compose(const Series& g) const {
    if (g.is_zero() || g.valuation() < 1) fail(Errc::domain_error, "composition needs an argument of positive valuation");
    if (is_zero()) return zero(F_, abs_prec() * g.valuation());
    // this = pi^val * P(pi), so this(g) = g^val * P(g); P evaluated by Horner.
    const long gv = g.valuation();
    const long prec = rel_prec() * gv;  // relative precision of P(g)
    Series acc = constant(F_, c_.back(), prec);
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = (acc * g).plus_scalar(c_[i]).truncated(prec);
    // bound precision by what P itself determines
    acc = acc.truncated(std::min(prec, rel_prec() * gv));
    return g.pow(val_) * acc;
}

Series Series::reverse() const {
    if (val_ != 1) fail(Errc::domain_error, "reversion needs valuation exactly 1");
    const long n = rel_prec() + 1;  // this known mod pi^n
    // Newton on U(t) - u = 0 for t as a series in u.
    const Series u = monomial(F_, F_.one(), 1, n);
    Series t = u.scaled(F_.inv(c_[0]));
    const Series dU = derivative();
    for (long prec = 2; prec < 2 * n; prec *= 2) {
        const Series Ut = compose(t).truncated(n);
        const Series dUt = dU.compose(t).truncated(n - 1);
        t = (t - (Ut - u) / dUt).truncated(n);
    }
    return t;
}

std::string Series::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == F_.zero()) continue;
        if (!first) os << " + ";
        first = false;
        const long k = val_ + static_cast<long>(i);
        const bool unit = c_[i] == F_.one();
        if (!unit || k == 0) os << F_.to_string(c_[i]);
        if (k != 0) os << (unit ? "" : "*") << "pi^" << k;
    }
    if (!first) os << " + ";
    os << "O(pi^" << abs_prec() << ")";
    return os.str();
}

}  // namespace rayfield
