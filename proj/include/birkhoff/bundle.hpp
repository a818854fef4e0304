#pragma once

#include <optional>

#include "birkhoff/reduce.hpp"

namespace birkhoff {

/// Rank of a dense matrix over F_q (destroys its argument).
inline int fq_matrix_rank(std::vector<std::vector<FqElem>>& M, const Fq* F) {
    int rows = static_cast<int>(M.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(M[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!M[r][c].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[rank], M[piv]);
        FqElem inv_p = F->inv(M[rank][c]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || M[r][c].is_zero()) continue;
            FqElem f = F->mul(M[r][c], inv_p);
            for (int k = c; k < cols; ++k) M[r][k] = F->sub(M[r][k], F->mul(f, M[rank][k]));
        }
        ++rank;
    }
    return rank;
}

/// A rank-n vector bundle on the projective line, presented by the
/// transition matrix g gluing the trivial bundle on the affine line
/// Spec F_q[t] to the trivial bundle on the formal disk at infinity
/// (pi = t^-1). Entries are exact Laurent polynomials in pi or general
/// rational functions in t.
struct BundleSpec {
    Mat<RatFun> rational;
    std::optional<Mat<LaurentPoly>> laurent;  // kept when available: faster reduction path

    static BundleSpec from_laurent(const Mat<LaurentPoly>& m) {
        BundleSpec b;
        b.laurent = m;
        b.rational = to_ratfun(m, Place::inf());
        return b;
    }

    static BundleSpec from_rational(Mat<RatFun> m) {
        BundleSpec b;
        b.rational = std::move(m);
        return b;
    }

    int n() const { return rational.n; }
    const Fq* field() const { return rational.F; }
};

/// The splitting type of the bundle: with the sign calibration pinned by
/// the h0 closed form below, the bundle is O(eta_1) + ... + O(eta_n) for
/// the antidominant eta of the reduction at infinity.
inline Cocharacter splitting_type(const BundleSpec& b, const ReduceOptions& opt = {}) {
    if (b.laurent.has_value()) return eta_of(*b.laurent, opt);
    return reduce_at_place(b.rational, Place::inf(), opt).eta;
}

/// dim over F_q of { f in F_q[t]^n (row vectors) : val_inf((f g)_j) >= -m }.
/// Exact linear algebra on pi-expansion coefficients; the degree bound
/// deg f_i <= m + e(g^{-1}) comes from ||f|| <= C_{g^{-1}} ||f g||.
inline int h0(const BundleSpec& b, int m) {
    const Mat<RatFun>& g = b.rational;
    const Fq* F = g.F;
    const int n = g.n;
    if (det(g).is_zero()) throw SingularInput("transition matrix is singular");
    Mat<RatFun> ginv = exact_inverse(g);
    int e_inv = 0;
    for (const auto& x : ginv.e) {
        auto v = val_at(x, Place::inf());
        if (v.has_value()) e_inv = std::max(e_inv, -*v);
    }
    const int D = m + e_inv;
    if (D < 0) return 0;

    int lo_g = 0;
    for (const auto& x : g.e) {
        auto v = val_at(x, Place::inf());
        if (v.has_value()) lo_g = std::min(lo_g, *v);
    }
    const int emin = lo_g - D;
    const int emax = -m - 1;
    const int vars = n * (D + 1);
    if (emax < emin) return vars;

    Mat<LaurentSeries> ge = expand_matrix(g, Place::inf(), D - m);
    std::vector<std::vector<FqElem>> rows;
    rows.reserve(static_cast<size_t>(n) * (emax - emin + 1));
    for (int j = 0; j < n; ++j) {
        for (int e = emin; e <= emax; ++e) {
            std::vector<FqElem> row(vars, F->zero());
            bool nonzero = false;
            for (int i = 0; i < n; ++i) {
                const LaurentSeries& s = ge.at(i, j);
                for (int d = 0; d <= D; ++d) {
                    // f_i carries t^d = pi^-d, so pick the coefficient at e + d
                    FqElem cf = s.coeff(e + d);
                    if (!cf.is_zero()) nonzero = true;
                    row[static_cast<size_t>(i) * (D + 1) + d] = cf;
                }
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    int rank = fq_matrix_rank(rows, F);
    return vars - rank;
}

/// Recover the splitting multiset from the section-dimension profile
/// m -> h0(m), as the unique nondecreasing solution of
/// h0(m) = sum_i max(0, eta_i + m + 1). Fully independent of the
/// reduction path. OracleMismatch if no integer multiset fits.
inline Cocharacter splitting_from_h0(const BundleSpec& b, int m_lo, int m_hi) {
    const Mat<RatFun>& g = b.rational;
    const int n = g.n;
    if (m_hi < m_lo) throw OracleMismatch("empty m range");
    std::vector<int> prof;
    prof.reserve(m_hi - m_lo + 1);
    for (int m = m_lo; m <= m_hi; ++m) prof.push_back(h0(b, m));
    if (prof.front() != 0) throw OracleMismatch("h0 profile does not start at zero; range too narrow");
    if (prof.size() < 2 || prof[prof.size() - 1] - prof[prof.size() - 2] != n)
        throw OracleMismatch("h0 profile does not reach slope n; range too narrow");

    // diff(m) = h0(m) - h0(m-1) counts eta_i >= -m
    auto diff_at = [&](int m) -> int {
        if (m <= m_lo) return 0;
        if (m > m_hi) return n;
        return prof[m - m_lo] - prof[m - m_lo - 1];
    };
    Cocharacter eta;
    for (int v = -m_hi; v <= -m_lo - 1; ++v) {
        int count = diff_at(-v) - diff_at(-v - 1);
        if (count < 0) throw OracleMismatch("h0 profile is not convex");
        for (int c = 0; c < count; ++c) eta.push_back(v);
    }
    std::sort(eta.begin(), eta.end());
    if (static_cast<int>(eta.size()) != n) throw OracleMismatch("profile does not fit any rank-n multiset");

    // exact fit over the whole sampled range
    for (int m = m_lo; m <= m_hi; ++m) {
        int expect = 0;
        for (int e : eta) expect += std::max(0, e + m + 1);
        if (expect != prof[m - m_lo]) throw OracleMismatch("no integer multiset fits the h0 profile");
    }
    auto vdet = val_at(det(g), Place::inf());
    int s = 0;
    for (int e : eta) s += e;
    if (!vdet.has_value() || *vdet != s) throw OracleMismatch("profile multiset contradicts det valuation");
    return eta;
}

/// Range derived from c_g_bound exponents of g and g^{-1}: covers every
/// eta_i the reduction could produce.
inline Cocharacter splitting_from_h0(const BundleSpec& b) {
    const Mat<RatFun>& g = b.rational;
    const int n = g.n;
    auto max_negval = [&](const Mat<RatFun>& M) {
        int e = 0;
        for (const auto& x : M.e) {
            auto v = val_at(x, Place::inf());
            if (v.has_value()) e = std::max(e, -*v);
        }
        return e;
    };
    if (det(g).is_zero()) throw SingularInput("transition matrix is singular");
    int e_g = max_negval(g);
    int e_inv = max_negval(exact_inverse(g));
    // eta_i in [-(n e_g + (n-1) e_inv), e_inv] from the potential bounds
    int lo = -e_inv - 2;
    int hi = n * e_g + (n - 1) * e_inv + 2;
    return splitting_from_h0(b, lo, hi);
}

}  // namespace birkhoff
