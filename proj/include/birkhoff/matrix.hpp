#pragma once

#include <random>
#include <utility>
#include <vector>

#include "birkhoff/ratfun.hpp"

namespace birkhoff {

/// Integer cocharacter of the diagonal torus of GL(n); antidominant means
/// nondecreasing entries under the conventions pinned here (row vectors
/// acted on the right, B upper triangular, |x| = q^-val).
using Cocharacter = std::vector<int>;

inline bool is_antidominant(const Cocharacter& eta) {
    for (size_t i = 1; i < eta.size(); ++i)
        if (eta[i - 1] > eta[i]) return false;
    return true;
}

/// Square matrix over one of the three coefficient rings (LaurentPoly,
/// LaurentSeries, RatFun). Row-major; value semantics.
template <typename R>
struct Mat {
    int n = 0;
    const Fq* F = nullptr;
    std::vector<R> e;

    Mat() = default;
    Mat(int n_, const Fq* F_, R fill) : n(n_), F(F_), e(static_cast<size_t>(n_) * n_, std::move(fill)) {}

    R& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const R& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
};

template <typename R>
void require_compatible(const Mat<R>& A, const Mat<R>& B) {
    if (A.n != B.n) throw SizeMismatch("matrix sizes differ");
    if (A.F != B.F && (A.F == nullptr || B.F == nullptr || !A.F->same_spec(*B.F)))
        throw FieldMismatch("matrices over different fields");
}

template <typename R>
Mat<R> operator*(const Mat<R>& A, const Mat<R>& B) {
    require_compatible(A, B);
    Mat<R> C;
    C.n = A.n;
    C.F = A.F;
    C.e.reserve(static_cast<size_t>(A.n) * A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            R acc = A.at(i, 0) * B.at(0, j);
            for (int k = 1; k < A.n; ++k) acc = acc + A.at(i, k) * B.at(k, j);
            C.e.push_back(std::move(acc));
        }
    return C;
}

template <typename R>
bool operator==(const Mat<R>& A, const Mat<R>& B) {
    if (A.n != B.n) return false;
    for (size_t i = 0; i < A.e.size(); ++i)
        if (!(A.e[i] == B.e[i])) return false;
    return true;
}

template <typename R>
Mat<R> submatrix(const Mat<R>& A, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw SizeMismatch("minor index sets of unequal cardinality");
    Mat<R> S;
    S.n = static_cast<int>(rows.size());
    S.F = A.F;
    S.e.reserve(rows.size() * cols.size());
    for (int r : rows)
        for (int c : cols) S.e.push_back(A.at(r, c));
    return S;
}

// ---- constructors ----

inline Mat<LaurentPoly> mat_identity(const Fq* F, int n) {
    Mat<LaurentPoly> I(n, F, LaurentPoly::zero(F));
    for (int i = 0; i < n; ++i) I.at(i, i) = LaurentPoly::one(F);
    return I;
}

inline Mat<RatFun> mat_identity_rat(const Fq* F, int n) {
    Mat<RatFun> I(n, F, RatFun::zero(F));
    for (int i = 0; i < n; ++i) I.at(i, i) = RatFun::one(F);
    return I;
}

/// u_alpha(x) at root position (i, j): identity plus x in entry (i, j).
template <typename R>
Mat<R> make_elementary_with(Mat<R> I, int i, int j, R x) {
    if (i == j || i < 0 || j < 0 || i >= I.n || j >= I.n) throw SizeMismatch("elementary position out of range");
    I.at(i, j) = I.at(i, j) + x;
    return I;
}

inline Mat<LaurentPoly> make_elementary(const Fq* F, int n, int i, int j, const LaurentPoly& x) {
    return make_elementary_with(mat_identity(F, n), i, j, x);
}

/// P with P[i][perm[i]] = 1: left multiplication by P sends row perm[i] of
/// the operand into row i of the product.
inline Mat<LaurentPoly> make_permutation(const Fq* F, const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    Mat<LaurentPoly> P(n, F, LaurentPoly::zero(F));
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        if (perm[i] < 0 || perm[i] >= n || seen[perm[i]]) throw SizeMismatch("not a permutation");
        seen[perm[i]] = true;
        P.at(i, perm[i]) = LaurentPoly::one(F);
    }
    return P;
}

/// diag(pi^eta_1, ..., pi^eta_n).
inline Mat<LaurentPoly> make_pi_eta(const Fq* F, const Cocharacter& eta) {
    int n = static_cast<int>(eta.size());
    Mat<LaurentPoly> D(n, F, LaurentPoly::zero(F));
    for (int i = 0; i < n; ++i) D.at(i, i) = LaurentPoly::monomial(F->one(), eta[i]);
    return D;
}

/// The determinant-one Weyl flip [[0,1],[-1,0]] embedded at rows/cols
/// (i, i+1); 0-based, 0 <= i <= n-2.
inline Mat<LaurentPoly> make_flip(const Fq* F, int n, int i) {
    if (i < 0 || i + 1 >= n) throw SizeMismatch("flip position out of range");
    Mat<LaurentPoly> M = mat_identity(F, n);
    M.at(i, i) = LaurentPoly::zero(F);
    M.at(i + 1, i + 1) = LaurentPoly::zero(F);
    M.at(i, i + 1) = LaurentPoly::one(F);
    M.at(i + 1, i) = LaurentPoly::constant(F->neg(F->one()));
    return M;
}

// ---- determinants ----

/// Fraction-free Bareiss elimination; exact in the Laurent ring.
inline LaurentPoly det(const Mat<LaurentPoly>& A) {
    int n = A.n;
    if (n == 0) return LaurentPoly::one(A.F);
    Mat<LaurentPoly> M = A;
    LaurentPoly prev = LaurentPoly::one(A.F);
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (M.at(k, k).is_zero()) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M.at(i, k).is_zero()) {
                    sw = i;
                    break;
                }
            if (sw < 0) return LaurentPoly::zero(A.F);
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(sw, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                M.at(i, j) = LaurentPoly::exact_div(M.at(k, k) * M.at(i, j) - M.at(i, k) * M.at(k, j), prev);
        prev = M.at(k, k);
    }
    LaurentPoly d = M.at(n - 1, n - 1);
    return negate ? -d : d;
}

/// Gaussian elimination over the field F_q(t).
inline RatFun det(const Mat<RatFun>& A) {
    int n = A.n;
    if (n == 0) return RatFun::one(A.F);
    Mat<RatFun> M = A;
    RatFun d = RatFun::one(A.F);
    bool negate = false;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!M.at(i, k).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return RatFun::zero(A.F);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            negate = !negate;
        }
        d = d * M.at(k, k);
        RatFun pi = M.at(k, k).inverse();
        for (int i = k + 1; i < n; ++i) {
            if (M.at(i, k).is_zero()) continue;
            RatFun f = M.at(i, k) * pi;
            for (int j = k; j < n; ++j) M.at(i, j) = M.at(i, j) - f * M.at(k, j);
        }
    }
    return negate ? -d : d;
}

namespace detail {

/// Pick the row r in [from, n) whose column-c entry has minimal valuation.
/// Sound with truncated entries: every ztp candidate must be known-zero
/// past the chosen minimum, otherwise PrecisionExhausted. Returns -1 when
/// every candidate is ztp.
inline int min_val_pivot_row(const Mat<LaurentSeries>& M, int c, int from, int n) {
    int best = -1;
    int bestval = 0;
    for (int i = from; i < n; ++i) {
        const LaurentSeries& x = M.at(i, c);
        if (x.is_ztp()) continue;
        if (best < 0 || x.val() < bestval) {
            best = i;
            bestval = x.val();
        }
    }
    if (best < 0) return -1;
    for (int i = from; i < n; ++i) {
        const LaurentSeries& x = M.at(i, c);
        if (x.is_ztp() && x.prec() <= bestval)
            throw PrecisionExhausted("pivot selection undetermined at current precision");
    }
    return best;
}

}  // namespace detail

/// Valuation-pivoted Gaussian elimination for truncated series.
inline LaurentSeries det(const Mat<LaurentSeries>& A) {
    int n = A.n;
    Mat<LaurentSeries> M = A;
    bool negate = false;
    std::vector<LaurentSeries> pivots;
    for (int k = 0; k < n; ++k) {
        int piv = detail::min_val_pivot_row(M, k, k, n);
        if (piv < 0) {
            // all-ztp column: determinant is zero to the available precision
            int prec = M.at(k, k).prec();
            for (int i = k; i < n; ++i) prec = std::min(prec, M.at(i, k).prec());
            LaurentSeries z = LaurentSeries::zero_to_prec(A.F, prec);
            for (const auto& p : pivots) z = z * p;
            return z;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(piv, j));
            negate = !negate;
        }
        LaurentSeries inv_piv = M.at(k, k).inverse();
        for (int i = k + 1; i < n; ++i) {
            const LaurentSeries& x = M.at(i, k);
            if (!x.is_ztp()) {
                LaurentSeries f = x * inv_piv;
                for (int j = k + 1; j < n; ++j) M.at(i, j) = M.at(i, j) - f * M.at(k, j);
            }
        }
        pivots.push_back(M.at(k, k));
    }
    LaurentSeries d = pivots[0];
    for (size_t i = 1; i < pivots.size(); ++i) d = d * pivots[i];
    if (negate) d = -d;
    return d;
}

template <typename R>
R minor(const Mat<R>& A, const std::vector<int>& rows, const std::vector<int>& cols) {
    return det(submatrix(A, rows, cols));
}

// ---- inverses ----

/// Exact inverse inside the Laurent ring: requires det to be a unit there,
/// i.e. a monomial c*pi^k. NonUnitDeterminant otherwise.
inline Mat<LaurentPoly> exact_inverse(const Mat<LaurentPoly>& A) {
    const LaurentPoly d = det(A);
    if (d.is_zero()) throw SingularInput("matrix is singular");
    if (!d.is_monomial())
        throw NonUnitDeterminant("determinant is not a unit of the Laurent ring; no exact Laurent inverse");
    int n = A.n;
    FqElem lead_inv = A.F->inv(d.coeff(d.min_exp()));
    int shift = -d.min_exp();
    Mat<LaurentPoly> R(n, A.F, LaurentPoly::zero(A.F));
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rows, cols;
            for (int r : all)
                if (r != i) rows.push_back(r);
            for (int c : all)
                if (c != j) cols.push_back(c);
            LaurentPoly cof = (n == 1) ? LaurentPoly::one(A.F) : minor(A, rows, cols);
            if ((i + j) % 2 != 0) cof = -cof;
            R.at(j, i) = cof.scaled(lead_inv).shifted(shift);
        }
    return R;
}

/// Inverse of a gamma-side matrix: entries in R and det in F_q^x; the
/// adjugate divided by a constant stays in R.
inline Mat<LaurentPoly> gamma_inverse(const Mat<LaurentPoly>& A) {
    const LaurentPoly d = det(A);
    if (d.is_zero()) throw SingularInput("matrix is singular");
    if (!d.is_unit_constant()) throw NonUnitDeterminant("determinant is not in F_q^x");
    return exact_inverse(A);
}

/// Gauss-Jordan over the field F_q(t).
inline Mat<RatFun> exact_inverse(const Mat<RatFun>& A) {
    int n = A.n;
    Mat<RatFun> M = A;
    Mat<RatFun> R = mat_identity_rat(A.F, n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!M.at(i, k).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw SingularInput("matrix is singular");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(k, j), M.at(piv, j));
                std::swap(R.at(k, j), R.at(piv, j));
            }
        RatFun pi = M.at(k, k).inverse();
        for (int j = 0; j < n; ++j) {
            M.at(k, j) = M.at(k, j) * pi;
            R.at(k, j) = R.at(k, j) * pi;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || M.at(i, k).is_zero()) continue;
            RatFun f = M.at(i, k);
            for (int j = 0; j < n; ++j) {
                M.at(i, j) = M.at(i, j) - f * M.at(k, j);
                R.at(i, j) = R.at(i, j) - f * R.at(k, j);
            }
        }
    }
    return R;
}

/// Gauss-Jordan with valuation pivoting for truncated series.
inline Mat<LaurentSeries> series_inverse(const Mat<LaurentSeries>& A) {
    int n = A.n;
    Mat<LaurentSeries> M = A;
    int prec = 0;
    for (const auto& x : M.e) prec = std::max(prec, x.prec());
    Mat<LaurentSeries> R(n, A.F, LaurentSeries::zero_to_prec(A.F, prec));
    LaurentPoly one = LaurentPoly::one(A.F);
    for (int i = 0; i < n; ++i) R.at(i, i) = LaurentSeries::from_poly(one, prec);
    for (int k = 0; k < n; ++k) {
        int piv = detail::min_val_pivot_row(M, k, k, n);
        if (piv < 0) throw PrecisionExhausted("series inversion: column vanishes to precision");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(k, j), M.at(piv, j));
                std::swap(R.at(k, j), R.at(piv, j));
            }
        LaurentSeries pi = M.at(k, k).inverse();
        for (int j = 0; j < n; ++j) {
            M.at(k, j) = M.at(k, j) * pi;
            R.at(k, j) = R.at(k, j) * pi;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || M.at(i, k).is_ztp()) continue;
            LaurentSeries f = M.at(i, k);
            for (int j = 0; j < n; ++j) {
                M.at(i, j) = M.at(i, j) - f * M.at(k, j);
                R.at(i, j) = R.at(i, j) - f * R.at(k, j);
            }
        }
    }
    return R;
}

// ---- conversions ----

inline Mat<LaurentSeries> to_series(const Mat<LaurentPoly>& A, int prec) {
    Mat<LaurentSeries> S;
    S.n = A.n;
    S.F = A.F;
    S.e.reserve(A.e.size());
    for (const auto& x : A.e) S.e.push_back(LaurentSeries::from_poly(x, prec));
    return S;
}

inline Mat<LaurentSeries> expand_matrix(const Mat<RatFun>& A, const Place& v, int prec) {
    Mat<LaurentSeries> S;
    S.n = A.n;
    S.F = A.F;
    S.e.reserve(A.e.size());
    for (const auto& x : A.e) S.e.push_back(expand_at_place(x, v, prec));
    return S;
}

inline Mat<RatFun> to_ratfun(const Mat<LaurentPoly>& A, const Place& v) {
    Mat<RatFun> R;
    R.n = A.n;
    R.F = A.F;
    R.e.reserve(A.e.size());
    for (const auto& x : A.e) R.e.push_back(ratfun_from_laurent(x, v));
    return R;
}

/// (min, max) exponent over the nonzero entries; (0, 0) for zero matrices.
inline std::pair<int, int> exponent_range(const Mat<LaurentPoly>& A) {
    bool any = false;
    int lo = 0, hi = 0;
    for (const auto& x : A.e) {
        if (x.is_zero()) continue;
        if (!any) {
            lo = x.min_exp();
            hi = x.max_exp();
            any = true;
        } else {
            lo = std::min(lo, x.min_exp());
            hi = std::max(hi, x.max_exp());
        }
    }
    return {lo, hi};
}

// ---- seeded random generators ----

/// Deterministic seeded RNG. The stream is part of the artifact's
/// interface: std::mt19937_64 (bit-stable across platforms) with
/// multiply-shift range reduction; no libc distributions.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    uint64_t below(uint64_t k) {  // k >= 1
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * k) >> 64);
    }

    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1))); }

    FqElem elem(const Fq& F) {
        FqElem x{{}, &F};
        for (int i = 0; i < F.m(); ++i) x.c[i] = static_cast<uint16_t>(below(F.p()));
        return x;
    }

    FqElem unit(const Fq& F) {
        FqElem x = elem(F);
        while (x.is_zero()) x = elem(F);
        return x;
    }

    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(p[i], p[static_cast<int>(below(i + 1))]);
        return p;
    }

    /// Random Laurent polynomial supported on [lo_exp, hi_exp].
    LaurentPoly laurent(const Fq& F, int lo_exp, int hi_exp) {
        std::vector<FqElem> c;
        c.reserve(static_cast<size_t>(hi_exp - lo_exp + 1));
        for (int e = lo_exp; e <= hi_exp; ++e) c.push_back(elem(F));
        return LaurentPoly::from_coeffs(&F, lo_exp, std::move(c));
    }

  private:
    std::mt19937_64 eng_;
};

namespace detail {

/// Product of `factors` draws from {permutations, diagonal units,
/// elementaries}; `gamma_side` selects R-supported coefficients
/// (exponents in [-degree_bound, 0]) versus O-supported ones.
inline Mat<LaurentPoly> random_group_element(int n, const Fq* F, uint64_t seed, int degree_bound, int factors,
                                             bool gamma_side) {
    if (factors < 1) throw ConfigError("factors must be >= 1");
    if (degree_bound < 0) throw ConfigError("degree_bound must be >= 0");
    Rng rng(seed);
    Mat<LaurentPoly> A = mat_identity(F, n);
    for (int f = 0; f < factors; ++f) {
        uint64_t kind = rng.below(3);
        Mat<LaurentPoly> D;
        if (kind == 0) {
            D = make_permutation(F, rng.permutation(n));
        } else if (kind == 1) {
            D = mat_identity(F, n);
            for (int i = 0; i < n; ++i) {
                if (gamma_side) {
                    D.at(i, i) = LaurentPoly::constant(rng.unit(*F));
                } else {
                    // unit of O: nonzero constant term, random tail
                    LaurentPoly u = LaurentPoly::constant(rng.unit(*F));
                    if (degree_bound > 0) u = u + rng.laurent(*F, 1, degree_bound);
                    D.at(i, i) = u;
                }
            }
        } else {
            int i = rng.range(0, n - 1);
            int j = rng.range(0, n - 2);
            if (j >= i) ++j;
            LaurentPoly x = gamma_side ? rng.laurent(*F, -degree_bound, 0) : rng.laurent(*F, 0, degree_bound);
            D = make_elementary(F, n, i, j, x);
        }
        A = A * D;
    }
    return A;
}

}  // namespace detail

/// Seeded element of Gamma = GL(n, R) with det in F_q^x.
inline Mat<LaurentPoly> random_gamma(int n, const Fq* F, uint64_t seed, int degree_bound, int factors) {
    return detail::random_group_element(n, F, seed, degree_bound, factors, true);
}

/// Seeded element of GL(n, O): entries in O, det a unit of O.
inline Mat<LaurentPoly> random_k(int n, const Fq* F, uint64_t seed, int degree_bound, int factors) {
    return detail::random_group_element(n, F, seed, degree_bound, factors, false);
}

}  // namespace birkhoff
