#pragma once

#include <vector>

#include "birkhoff/norms.hpp"

namespace birkhoff {

namespace detail {

/// Pick the pivot column for row r among columns [0, r]: minimal known
/// valuation, ties broken by smallest column index. Sound under
/// truncation: every ztp candidate must have prec > the chosen minimum,
/// else the minimum (or the tie-break) could be hiding below precision.
inline int pivot_column(const Mat<LaurentSeries>& M, int r) {
    int best = -1;
    int bestval = 0;
    for (int c = 0; c <= r; ++c) {
        const LaurentSeries& x = M.at(r, c);
        if (x.is_ztp()) continue;
        if (best < 0 || x.val() < bestval) {
            best = c;
            bestval = x.val();
        }
    }
    if (best < 0) throw PrecisionExhausted("pivot row vanishes to working precision");
    for (int c = 0; c <= r; ++c) {
        const LaurentSeries& x = M.at(r, c);
        if (x.is_ztp() && x.prec() <= bestval)
            throw PrecisionExhausted("pivot valuation indeterminate at working precision");
    }
    return best;
}

}  // namespace detail

/// Right-reduce g to upper-triangular form: returns b with g = b * k^{-1}
/// ... precisely, applies right factors E in GL(n, O) so that b = g E is
/// upper triangular (below-diagonal entries zero to precision), and if
/// k_out is given accumulates k = E^{-1} in GL(n, O), so g = b k.
///
/// Rows are processed bottom-up; in row r restricted to columns 0..r the
/// minimal-valuation entry (tie: smallest column) is permuted to column r
/// and the remaining columns of row r are cleared by elementary column
/// operations with coefficients in O.
inline Mat<LaurentSeries> triangularize(Mat<LaurentSeries> M, Mat<LaurentSeries>* k_out = nullptr) {
    const int n = M.n;
    if (k_out != nullptr) {
        int prec = 0;
        for (const auto& x : M.e) prec = std::max(prec, x.prec());
        *k_out = to_series(mat_identity(M.F, n), prec);
    }
    for (int r = n - 1; r >= 0; --r) {
        int piv = detail::pivot_column(M, r);
        if (piv != r) {
            for (int i = 0; i < n; ++i) std::swap(M.at(i, piv), M.at(i, r));
            if (k_out != nullptr)
                for (int j = 0; j < n; ++j) std::swap(k_out->at(piv, j), k_out->at(r, j));
        }
        LaurentSeries pivot_inv = M.at(r, r).inverse();
        for (int c = 0; c < r; ++c) {
            const LaurentSeries& x = M.at(r, c);
            if (x.is_ztp()) continue;
            LaurentSeries ratio = x * pivot_inv;  // val >= 0 by pivot minimality
            for (int i = 0; i < n; ++i) M.at(i, c) = M.at(i, c) - ratio * M.at(i, r);
            if (k_out != nullptr)
                for (int j = 0; j < n; ++j) k_out->at(r, j) = k_out->at(r, j) + ratio * k_out->at(c, j);
        }
    }
    return M;
}

/// g = t n k: torus valuations and units, unit upper-triangular part, and
/// the integral factor.
struct IwasawaDecomp {
    std::vector<int> t_vals;
    std::vector<LaurentSeries> t_units;
    Mat<LaurentSeries> n_part;
    Mat<LaurentSeries> k;
};

inline IwasawaDecomp iwasawa_decompose(const Mat<LaurentSeries>& g) {
    IwasawaDecomp d;
    Mat<LaurentSeries> b = triangularize(g, &d.k);
    const int n = g.n;
    d.t_vals.resize(n);
    d.t_units.reserve(n);
    d.n_part = b;
    for (int i = 0; i < n; ++i) {
        const LaurentSeries& di = b.at(i, i);
        d.t_vals[i] = di.val();  // throws PrecisionExhausted if indeterminate
        d.t_units.push_back(di.shifted(-d.t_vals[i]));
        LaurentSeries di_inv = di.inverse();
        for (int j = 0; j < n; ++j) {
            if (j == i)
                d.n_part.at(i, j) = LaurentSeries::from_poly(LaurentPoly::one(g.F), di.prec() - d.t_vals[i]);
            else if (j > i)
                d.n_part.at(i, j) = b.at(i, j) * di_inv;
        }
    }
    return d;
}

/// t n k reassembled (for verification).
inline Mat<LaurentSeries> iwasawa_assemble(const IwasawaDecomp& d) {
    int n = d.n_part.n;
    Mat<LaurentSeries> tn = d.n_part;
    for (int i = 0; i < n; ++i) {
        LaurentSeries t = d.t_units[i].shifted(d.t_vals[i]);
        for (int j = 0; j < n; ++j) tn.at(i, j) = t * tn.at(i, j);
    }
    return tn * d.k;
}

/// Valuation vector of the Iwasawa torus part: the coset
/// Phi(g) in T(F)/T(O) identified with Z^n. Independent of the
/// decomposition choices (well-definedness is a test).
inline std::vector<int> phi_tvals(const Mat<LaurentSeries>& g) {
    Mat<LaurentSeries> b = triangularize(g);
    std::vector<int> t(g.n);
    for (int i = 0; i < g.n; ++i) t[i] = b.at(i, i).val();
    return t;
}

/// Standard parabolic/Levi data for GL(n): D is a set of simple-root
/// indices (0-based: i joins positions i and i+1); the Levi's blocks are
/// the maximal runs of joined positions.
struct ParabolicSpec {
    int n = 0;
    std::vector<int> D;

    std::vector<std::pair<int, int>> blocks() const {  // [begin, end) intervals
        std::vector<bool> joined(n > 0 ? n - 1 : 0, false);
        for (int i : D) {
            if (i < 0 || i >= n - 1) throw SizeMismatch("simple root index out of range");
            joined[i] = true;
        }
        std::vector<std::pair<int, int>> out;
        int begin = 0;
        for (int i = 0; i + 1 < n; ++i) {
            if (!joined[i]) {
                out.push_back({begin, i + 1});
                begin = i + 1;
            }
        }
        out.push_back({begin, n});
        return out;
    }
};

/// The Levi projection Phi^G_L: the block-diagonal part of an Iwasawa-type
/// decomposition g = l u k, returned as one matrix per block (a
/// representative of l modulo L(O)). For D empty use phi_tvals.
inline std::vector<Mat<LaurentSeries>> phi_levi(const Mat<LaurentSeries>& g, const ParabolicSpec& D) {
    if (D.n != g.n) throw SizeMismatch("parabolic spec size mismatch");
    Mat<LaurentSeries> b = triangularize(g);
    std::vector<Mat<LaurentSeries>> out;
    for (auto [lo, hi] : D.blocks()) {
        std::vector<int> idx;
        for (int i = lo; i < hi; ++i) idx.push_back(i);
        out.push_back(submatrix(b, idx, idx));
    }
    return out;
}

/// The Harder/Siegel domain membership test of eq. (2): all simple-root
/// characters of the torus part have |alpha_i| >= 1, i.e. the valuation
/// vector is nondecreasing.
inline bool omega_member(const Mat<LaurentSeries>& g) { return is_antidominant(phi_tvals(g)); }

}  // namespace birkhoff
