#include "rayfield/sunits.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rayfield/error.hpp"

namespace rayfield {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
    IntMatrix M;
    for (const auto& r : rows) {
        std::vector<mpz_class> row;
        for (long v : r) row.emplace_back(v);
        M.push_back(std::move(row));
    }
    return M;
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.empty()) return {};
    const std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
    if (A[0].size() != k) fail(Errc::domain_error, "matrix shapes do not match");
    IntMatrix C(n, std::vector<mpz_class>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (A[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    return C;
}

mpz_class determinant(const IntMatrix& A_in) {
    // Bareiss fraction-free elimination.
    IntMatrix A = A_in;
    const std::size_t n = A.size();
    if (n == 0) return 1;
    for (const auto& r : A)
        if (r.size() != n) fail(Errc::domain_error, "determinant of a non-square matrix");
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && A[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(A[k], A[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                A[i][j] = A[i][j] * A[k][k] - A[i][k] * A[k][j];
                mpz_divexact(A[i][j].get_mpz_t(), A[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

std::size_t rank(const IntMatrix& A) {
    if (A.empty()) return 0;
    const IntMatrix H = hnf(A).H;
    return static_cast<std::size_t>(std::count_if(H.begin(), H.end(), [](const auto& row) {
        return std::any_of(row.begin(), row.end(), [](const mpz_class& v) { return v != 0; });
    }));
}

std::string to_string(const IntMatrix& A) {
    std::ostringstream os;
    for (const auto& r : A) {
        for (std::size_t j = 0; j < r.size(); ++j) os << (j ? " " : "") << r[j];
        os << "\n";
    }
    return os.str();
}

namespace {

IntMatrix identity(std::size_t n) {
    IntMatrix I(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

// rows (a, b) <- (s a + t b, -(b/g) a + (a/g) b) applied to both H and U
void combine(IntMatrix& H, IntMatrix& U, std::size_t i, std::size_t k, std::size_t col) {
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), H[i][col].get_mpz_t(), H[k][col].get_mpz_t());
    const mpz_class a = H[i][col] / g, b = H[k][col] / g;
    for (IntMatrix* M : {&H, &U}) {
        auto& ri = (*M)[i];
        auto& rk = (*M)[k];
        for (std::size_t j = 0; j < ri.size(); ++j) {
            const mpz_class x = ri[j], y = rk[j];
            ri[j] = s * x + t * y;
            rk[j] = a * y - b * x;
        }
    }
}

void add_multiple(IntMatrix& M, std::size_t dst, std::size_t src, const mpz_class& c) {
    for (std::size_t j = 0; j < M[dst].size(); ++j) M[dst][j] -= c * M[src][j];
}

enum class Residues { nonnegative, centered };

HnfResult hnf_impl(const IntMatrix& D, Residues mode) {
    const std::size_t n = D.size();
    HnfResult r{D, identity(n)};
    if (n == 0) return r;
    const std::size_t m = D[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        for (std::size_t k = row + 1; k < n; ++k)
            if (r.H[k][col] != 0) {
                if (r.H[row][col] == 0) {
                    std::swap(r.H[row], r.H[k]);
                    std::swap(r.U[row], r.U[k]);
                } else {
                    combine(r.H, r.U, row, k, col);
                }
            }
        if (r.H[row][col] == 0) continue;
        if (r.H[row][col] < 0) {
            for (auto* M : {&r.H, &r.U})
                for (auto& v : (*M)[row]) v = -v;
        }
        const mpz_class piv = r.H[row][col];
        for (std::size_t i = 0; i < row; ++i) {
            mpz_class qt;
            mpz_fdiv_q(qt.get_mpz_t(), r.H[i][col].get_mpz_t(), piv.get_mpz_t());
            if (mode == Residues::centered) {
                mpz_class rem = r.H[i][col] - qt * piv;
                if (2 * rem > piv) ++qt;
            }
            if (qt != 0) {
                add_multiple(r.H, i, row, qt);
                add_multiple(r.U, i, row, qt);
            }
        }
        ++row;
    }
    return r;
}

IntMatrix reverse_columns(IntMatrix M) {
    for (auto& row : M) std::reverse(row.begin(), row.end());
    return M;
}

}  // namespace

HnfResult hnf(const IntMatrix& D) { return hnf_impl(D, Residues::nonnegative); }

HnfResult hnf_trailing(const IntMatrix& D) {
    HnfResult r = hnf_impl(reverse_columns(D), Residues::centered);
    r.H = reverse_columns(r.H);
    std::reverse(r.H.begin(), r.H.end());
    std::reverse(r.U.begin(), r.U.end());
    return r;
}

void check_degree_relation(const IntMatrix& D, const std::vector<long>& degrees) {
    for (std::size_t i = 0; i < D.size(); ++i) {
        if (D[i].size() != degrees.size()) fail(Errc::domain_error, "row length differs from the number of places");
        mpz_class s = 0;
        for (std::size_t j = 0; j < degrees.size(); ++j) s += D[i][j] * degrees[j];
        if (s != 0) fail(Errc::degree_relation, "row " + std::to_string(i) + " has divisor degree " + s.get_str());
    }
}

IntMatrix valuation_matrix(const PlaneCurve& C, const std::vector<RationalFunction>& gens,
                           const std::vector<PlaceSpec>& places) {
    IntMatrix D;
    for (const auto& z : gens) {
        std::vector<mpz_class> row;
        for (const auto& P : places) row.emplace_back(valuation(C, P, z));
        D.push_back(std::move(row));
    }
    check_degree_relation(D, std::vector<long>(places.size(), 1));
    return D;
}

LatticeIndex lattice_index(const IntMatrix& D) {
    const std::size_t r = D.size();
    const std::size_t c = r == 0 ? 1 : D[0].size();
    if (c != r + 1)
        fail(Errc::rank_deficient, std::to_string(r) + " rows need " + std::to_string(r + 1) + " columns");
    if (r == 0) return {false, 1};
    if (rank(D) < r) return {true, 0};
    // With the degree relation every maximal minor is a multiple of the index;
    // their gcd is the index itself.
    mpz_class g = 0;
    for (std::size_t drop = 0; drop < c; ++drop) {
        IntMatrix M(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (j != drop) M[i].push_back(D[i][j]);
        g = gcd(g, determinant(M));
    }
    return {false, abs(g)};
}

mpz_class s_class_number(const mpz_class& h_K, const mpz_class& reg_S) {
    if (reg_S <= 0 || h_K <= 0) fail(Errc::domain_error, "class number and regulator must be positive");
    if (h_K % reg_S != 0) fail(Errc::non_divisible, "regulator " + reg_S.get_str() + " does not divide " + h_K.get_str());
    return h_K / reg_S;
}

Certification certify_generators(const mpz_class& h_K, const QSqrtNum& hbar_bound, const mpz_class& index) {
    Certification c;
    if (hbar_bound < mpq_class(2) && index == h_K) {
        c.certified = true;
        c.h_S = 1;
        c.reg_S = h_K;
    }
    return c;
}

SubsetBasis subset_basis(const IntMatrix& D, const std::vector<std::size_t>& subset) {
    if (D.empty()) fail(Errc::domain_error, "empty valuation matrix");
    const std::size_t c = D[0].size();
    if (subset.empty()) fail(Errc::unsupported_ordering, "subset must contain a place");
    std::vector<bool> used(c, false);
    for (std::size_t j : subset) {
        if (j >= c || used[j]) fail(Errc::unsupported_ordering, "subset column out of range or repeated");
        used[j] = true;
    }
    std::vector<std::size_t> order = subset;
    for (std::size_t j = 0; j < c; ++j)
        if (!used[j]) order.push_back(j);
    IntMatrix P(D.size());
    for (std::size_t i = 0; i < D.size(); ++i)
        for (std::size_t j : order) P[i].push_back(D[i][j]);

    const HnfResult h = hnf_trailing(P);
    SubsetBasis out;
    out.columns = subset;
    const std::size_t k = subset.size() - 1;
    if (k > h.H.size()) fail(Errc::rank_deficient, "not enough generators for the subset");
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = subset.size(); j < c; ++j)
            if (h.H[i][j] != 0) fail(Errc::rank_deficient, "generators do not span the subset units");
        out.divisors.emplace_back(h.H[i].begin(), h.H[i].begin() + static_cast<long>(subset.size()));
        out.exponents.push_back(h.U[i]);
    }
    out.regulator = k == 0 ? mpz_class(1) : lattice_index(out.divisors).value;
    return out;
}

}  // namespace rayfield
