#pragma once

#include <vector>

#include "birkhoff/matrix.hpp"

namespace birkhoff {

/// Norm of a local vector, represented purely by its exponent:
/// ||x|| = q^e. Exactly zero vectors carry -infinity. No floating point:
/// all norm values are integer powers of q.
struct NormExp {
    int e = 0;
    bool minus_inf = false;

    static NormExp of(int e) { return NormExp{e, false}; }
    static NormExp minus_infinity() { return NormExp{0, true}; }

    friend bool operator==(const NormExp& a, const NormExp& b) {
        if (a.minus_inf || b.minus_inf) return a.minus_inf == b.minus_inf;
        return a.e == b.e;
    }
    friend bool operator<=(const NormExp& a, const NormExp& b) {
        if (a.minus_inf) return true;
        if (b.minus_inf) return false;
        return a.e <= b.e;
    }
    friend bool operator<(const NormExp& a, const NormExp& b) { return a <= b && !(a == b); }
};

/// sup-norm exponent of an exact vector: max over coordinates of -val.
inline NormExp vec_norm(const std::vector<LaurentPoly>& v) {
    NormExp r = NormExp::minus_infinity();
    for (const auto& x : v) {
        auto val = x.val();
        if (!val.has_value()) continue;
        int e = -*val;
        if (r.minus_inf || e > r.e) r = NormExp::of(e);
    }
    return r;
}

/// sup-norm exponent of a truncated vector. Determined when the maximum
/// over known coordinates dominates every ztp coordinate's upper bound;
/// otherwise PrecisionExhausted.
inline NormExp vec_norm(const std::vector<LaurentSeries>& v) {
    bool have = false;
    int e = 0;
    for (const auto& x : v) {
        if (x.is_ztp()) continue;
        int cand = -x.val();
        if (!have || cand > e) e = cand;
        have = true;
    }
    if (!have) throw PrecisionExhausted("vector norm: every coordinate is zero to precision");
    for (const auto& x : v) {
        if (x.is_ztp() && -x.prec() > e)
            throw PrecisionExhausted("vector norm not determined by known coefficients");
    }
    return NormExp::of(e);
}

/// Lemma-8 constant: C_g = q^e with e the sup of entry norm exponents;
/// guarantees ||x g|| <= C_g ||x||.
template <typename R>
NormExp c_g_bound(const Mat<R>& g) {
    return vec_norm(g.e);
}

/// Lexicographically ordered j-element subsets of {0, ..., n-1}.
inline std::vector<std::vector<int>> lex_subsets(int n, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(j);
    for (int i = 0; i < j; ++i) cur[i] = i;
    if (j == 0) {
        out.push_back({});
        return out;
    }
    if (j > n) return out;
    while (true) {
        out.push_back(cur);
        int i = j - 1;
        while (i >= 0 && cur[i] == n - j + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int k = i + 1; k < j; ++k) cur[k] = cur[k - 1] + 1;
    }
    return out;
}

/// v_j rho_j(g) for rho_j the j-th wedge power of the standard
/// representation: the vector of j x j minors of the bottom j rows of g,
/// columns in fixed lexicographic order.
template <typename R>
std::vector<R> fundamental_image(const Mat<R>& g, int j) {
    if (j < 1 || j > g.n) throw SizeMismatch("fundamental representation index out of range");
    std::vector<int> rows(j);
    for (int i = 0; i < j; ++i) rows[i] = g.n - j + i;
    std::vector<R> out;
    for (const auto& cols : lex_subsets(g.n, j)) out.push_back(minor(g, rows, cols));
    return out;
}

/// N_j(g): the norm exponent of the j-th fundamental image. This is the
/// quantity driven down over Gamma during phase 1; at the torus,
/// N_j(pi^eta) = -pairing(j, eta).
template <typename R>
NormExp n_potential(const Mat<R>& g, int j) {
    return vec_norm(fundamental_image(g, j));
}

/// <mu_j, eta> = eta_{n-j+1} + ... + eta_n (last j entries).
inline int pairing(int j, const Cocharacter& eta) {
    int n = static_cast<int>(eta.size());
    if (j < 0 || j > n) throw SizeMismatch("pairing index out of range");
    int s = 0;
    for (int i = n - j; i < n; ++i) s += eta[i];
    return s;
}

/// Delta_j(b) for upper-triangular b: the product of the trailing j
/// diagonal entries.
template <typename R>
R delta_character(const Mat<R>& b, int j) {
    R r = b.at(b.n - j, b.n - j);
    for (int i = b.n - j + 1; i < b.n; ++i) r = r * b.at(i, i);
    return r;
}

/// The lowest-weight coordinate (the subset {n-j, ..., n-1}) is last in
/// lexicographic order.
inline int lowest_weight_index(int n, int j) {
    return static_cast<int>(lex_subsets(n, j).size()) - 1;
}

/// Norm exponent of g^{-1}, computed exactly from cofactors:
/// -val(g^{-1}_ij) = val(det g) - val(cof_ji), so the sup is
/// val(det) - min val over nonzero cofactors. SingularInput on det = 0.
inline int inverse_norm_exponent(const Mat<LaurentPoly>& g) {
    LaurentPoly d = det(g);
    if (d.is_zero()) throw SingularInput("matrix is singular");
    int vd = *d.val();
    if (g.n == 1) return vd;  // g^{-1} = 1/det
    std::vector<int> all(g.n);
    for (int i = 0; i < g.n; ++i) all[i] = i;
    bool have = false;
    int min_cof_val = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            std::vector<int> rows, cols;
            for (int r : all)
                if (r != i) rows.push_back(r);
            for (int c : all)
                if (c != j) cols.push_back(c);
            LaurentPoly cof = minor(g, rows, cols);
            if (cof.is_zero()) continue;
            if (!have || *cof.val() < min_cof_val) min_cof_val = *cof.val();
            have = true;
        }
    if (!have) throw SingularInput("adjugate vanished");
    return vd - min_cof_val;
}

/// Evaluates ||v rho_j(pi^mu)|| / ||v|| >= ||v_j rho_j(pi^mu)|| / ||v_j||
/// for a wedge-coordinate vector v of length C(n, j) and an antidominant mu.
/// True for all valid inputs; exposed so the inequality is testable.
inline bool fundamental_inequality_check(const std::vector<LaurentPoly>& v, const Cocharacter& mu, int j) {
    int n = static_cast<int>(mu.size());
    if (!is_antidominant(mu)) throw Error("fundamental_inequality_check requires antidominant mu");
    auto subsets = lex_subsets(n, j);
    if (v.size() != subsets.size()) throw SizeMismatch("wedge coordinate vector has wrong length");
    NormExp base = vec_norm(v);
    if (base.minus_inf) throw Error("fundamental_inequality_check requires v != 0");
    NormExp lhs = NormExp::minus_infinity();
    for (size_t s = 0; s < subsets.size(); ++s) {
        auto val = v[s].val();
        if (!val.has_value()) continue;
        int w = 0;
        for (int i : subsets[s]) w += mu[i];
        int cand = -*val - w;
        if (lhs.minus_inf || cand > lhs.e) lhs = NormExp::of(cand);
    }
    int lhs_exp = lhs.e - base.e;
    int rhs_exp = -pairing(j, mu);
    return lhs_exp >= rhs_exp;
}

}  // namespace birkhoff
