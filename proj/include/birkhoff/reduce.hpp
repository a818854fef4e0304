#pragma once

#include <functional>
#include <optional>

#include "birkhoff/iwasawa.hpp"

namespace birkhoff {

/// Exact-coefficient multiplication: c is exact, so only x limits the
/// precision of the product (prec = val(c) + prec(x)).
inline LaurentPoly mul_coef(const LaurentPoly& x, const LaurentPoly& c) { return x * c; }
inline LaurentSeries mul_coef(const LaurentSeries& x, const LaurentPoly& c) {
    if (c.is_zero()) throw Error("mul_coef with zero coefficient");
    LaurentSeries cs = LaurentSeries::from_poly(c, c.max_exp() + 1 + (x.prec() - x.val_lower_bound()));
    return x * cs;
}

/// One left-multiplication by an element of Gamma = GL(n, R).
/// FlipShift(i, S) applies the 2x2 Weyl flip times u_{i,i+1}(S) at rows
/// (i, i+1) -- the phase-1 move, S = -(polar part of alpha(t) x).
/// UnipotentShift(i, j, P) applies u_{ij}(P)^{-1} = u_{ij}(-P) -- the
/// phase-2 move, P = polar part of alpha_{ij}(t) x. Both coefficients lie
/// in R, so every move matrix is in Gamma (det 1).
struct Move {
    enum class Kind { FlipShift, UnipotentShift };
    Kind kind = Kind::FlipShift;
    int n = 0;
    int i = 0;
    int j = 0;  // FlipShift uses (i, i+1)
    LaurentPoly coef;  // S for FlipShift, P for UnipotentShift

    Mat<LaurentPoly> matrix(const Fq* F) const {
        if (kind == Kind::FlipShift) {
            Mat<LaurentPoly> M = make_flip(F, n, i);
            // flip * u_{i,i+1}(S): block [[0, 1], [-1, -S]]
            M.at(i + 1, i + 1) = -coef;
            return M;
        }
        return make_elementary(F, n, i, j, -coef);
    }

    Mat<LaurentPoly> inverse_matrix(const Fq* F) const {
        if (kind == Kind::FlipShift) {
            // u(-S) * flip^{-1}: block [[-S, -1], [1, 0]]
            Mat<LaurentPoly> M = mat_identity(F, n);
            M.at(i, i) = -coef;
            M.at(i, i + 1) = LaurentPoly::constant(F->neg(F->one()));
            M.at(i + 1, i) = LaurentPoly::one(F);
            M.at(i + 1, i + 1) = LaurentPoly::zero(F);
            return M;
        }
        return make_elementary(F, n, i, j, coef);
    }
};

/// M <- move.matrix() * M, as row operations.
template <typename R>
void apply_move_rows(Mat<R>& M, const Move& mv) {
    const int n = M.n;
    if (mv.kind == Move::Kind::FlipShift) {
        const int i = mv.i;
        for (int c = 0; c < n; ++c) {
            R old_i = M.at(i, c);
            M.at(i, c) = M.at(i + 1, c);
            R t = -old_i;
            if (!mv.coef.is_zero()) t = t - mul_coef(M.at(i, c), mv.coef);
            M.at(i + 1, c) = std::move(t);
        }
    } else {
        if (mv.coef.is_zero()) return;
        for (int c = 0; c < n; ++c) M.at(mv.i, c) = M.at(mv.i, c) - mul_coef(M.at(mv.j, c), mv.coef);
    }
}

/// G <- G * move.inverse_matrix(), as column operations.
inline void apply_move_cols_inverse(Mat<LaurentPoly>& G, const Move& mv) {
    const int n = G.n;
    if (mv.kind == Move::Kind::FlipShift) {
        const int i = mv.i;
        for (int r = 0; r < n; ++r) {
            LaurentPoly old_i = G.at(r, i);
            LaurentPoly t = G.at(r, i + 1);
            if (!mv.coef.is_zero()) t = t - mv.coef * old_i;
            G.at(r, i) = std::move(t);
            G.at(r, i + 1) = -old_i;
        }
    } else {
        if (mv.coef.is_zero()) return;
        for (int r = 0; r < n; ++r) G.at(r, mv.j) = G.at(r, mv.j) + mv.coef * G.at(r, mv.i);
    }
}

/// The certificate of Theorem-2 membership: g = gamma * pi^eta * k with
/// gamma in Gamma, eta antidominant, k in GL(n, O). gamma is not canonical;
/// eta is the unique invariant.
struct Witness {
    Mat<LaurentPoly> gamma;
    Cocharacter eta;
    Mat<LaurentPoly> k;
    std::vector<Move> trace;  // filled when requested
};

struct ReduceStats {
    long phase1_steps = 0;
    long phase2_moves = 0;
    long potential_checks = 0;  // per-step contract verifications performed
    int retries = 0;            // PrecisionExhausted-triggered reruns
    int final_precision = 0;
};

struct ReduceOptions {
    int initial_precision = 0;  // 0: derive from the input's exponent spread
    int precision_cap = kPrecisionCap;
    bool keep_trace = false;
};

/// Exact check of all four witness invariants. Returns false rather than
/// throwing.
inline bool verify_witness(const Mat<LaurentPoly>& g, const Witness& w) {
    try {
        if (w.gamma.n != g.n || w.k.n != g.n || static_cast<int>(w.eta.size()) != g.n) return false;
        if (!is_antidominant(w.eta)) return false;
        for (const auto& x : w.gamma.e)
            if (!x.in_R()) return false;
        if (!det(w.gamma).is_unit_constant()) return false;
        for (const auto& x : w.k.e)
            if (!x.in_O()) return false;
        LaurentPoly dk = det(w.k);
        if (dk.is_zero() || *dk.val() != 0) return false;
        return w.gamma * make_pi_eta(g.F, w.eta) * w.k == g;
    } catch (const Error&) {
        return false;
    }
}

namespace detail {

/// The working state of a reduction: an upper-triangular form b with
/// (moves applied so far) * g = b * (element of GL(n, O)). All decisions
/// are made from b; every recorded move is an exact element of Gamma.
/// N_j(current) = -pairing(j, t_vals) throughout, which is what makes the
/// per-step potential contract checkable for free.
class Engine {
  public:
    Engine(Mat<LaurentSeries> g, ReduceStats* stats) : b_(triangularize(std::move(g))), stats_(stats) {
        n_ = b_.n;
        tv_.resize(n_);
        for (int i = 0; i < n_; ++i) tv_[i] = b_.at(i, i).val();
    }

    const std::vector<int>& t_vals() const { return tv_; }

    bool in_omega() const { return is_antidominant(tv_); }

    /// Largest simple root index with val(alpha_i(t)) > 0, or -1.
    int offending_root() const {
        for (int i = n_ - 2; i >= 0; --i)
            if (tv_[i] > tv_[i + 1]) return i;
        return -1;
    }

    /// One norm-decreasing rank-one move. Returns nullopt when already in
    /// Omega. Postcondition (checked): exactly one N_j drops by >= 1.
    std::optional<Move> phase1_step() {
        int i = offending_root();
        if (i < 0) return std::nullopt;
        const LaurentSeries& num = b_.at(i, i + 1);
        LaurentPoly S = LaurentPoly::zero(b_.F);
        if (!num.is_ztp()) {
            LaurentSeries c = num * b_.at(i + 1, i + 1).inverse();
            S = -split_integral(c).P;  // |S + alpha(t) x| < 1
        } else if (num.prec() - tv_[i + 1] < 1) {
            throw PrecisionExhausted("phase 1 shift coefficient not extractable");
        }
        Move mv{Move::Kind::FlipShift, n_, i, i + 1, S};
        int ti = tv_[i], tj = tv_[i + 1];
        apply_flip(mv);
        // contract: the touched pair conserves its valuation sum and the
        // lower position strictly increases (one N_j drops, rest fixed)
        if (stats_ != nullptr) ++stats_->potential_checks;
        if (tv_[i] + tv_[i + 1] != ti + tj || tv_[i + 1] <= tj)
            throw PotentialStall("phase-1 step violated its potential contract");
        if (stats_ != nullptr) ++stats_->phase1_steps;
        moves_.push_back(mv);
        return mv;
    }

    void phase1(long step_cap) {
        long steps = 0;
        while (phase1_step().has_value()) {
            if (++steps > step_cap) throw PotentialStall("phase 1 exceeded its termination cap");
        }
    }

    /// Strip the R-parts of the unipotent coordinates, positive roots by
    /// increasing height; at most n-1 passes.
    void phase2() {
        if (!in_omega()) throw Error("phase 2 requires Omega membership");
        for (int pass = 0; pass < std::max(1, n_ - 1); ++pass) {
            for (int h = 1; h < n_; ++h) {
                for (int i = 0; i + h < n_; ++i) {
                    int j = i + h;
                    const LaurentSeries& num = b_.at(i, j);
                    if (num.is_ztp()) {
                        if (num.prec() < tv_[i])
                            throw PrecisionExhausted("phase 2 coordinate not decidable");
                        continue;  // n_ij zero to precision: already integral
                    }
                    if (num.val() >= tv_[i]) continue;  // n_ij = b_ij / b_ii already in O
                    LaurentSeries c = num * b_.at(j, j).inverse();  // alpha_ij(t) * n_ij
                    LaurentPoly P = split_integral(c).P;
                    Move mv{Move::Kind::UnipotentShift, n_, i, j, P};
                    // left-multiply by u_{ij}(-P): row_i -= P row_j
                    for (int col = j; col < n_; ++col)
                        b_.at(i, col) = b_.at(i, col) - mul_coef(b_.at(j, col), mv.coef);
                    moves_.push_back(mv);
                    if (stats_ != nullptr) ++stats_->phase2_moves;
                }
            }
            if (unipotent_integral()) return;
        }
        if (!unipotent_integral()) throw PotentialStall("phase 2 did not stabilize within n-1 passes");
    }

    /// After phase 2: (moves) * g lies in pi^eta * GL(n, O) with
    /// eta = t_vals, nondecreasing by Omega preservation.
    Cocharacter eta() const { return tv_; }

    const std::vector<Move>& moves() const { return moves_; }

  private:
    /// n_{ij} in O for all i < j, i.e. val(b_ij) >= t_i; PrecisionExhausted
    /// when undecidable.
    bool unipotent_integral() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                const LaurentSeries& x = b_.at(i, j);
                if (x.is_ztp()) {
                    if (x.prec() >= tv_[i]) continue;
                    throw PrecisionExhausted("phase 2 integrality check beyond precision");
                }
                if (x.val() < tv_[i]) return false;
            }
        return true;
    }

    /// Apply the flip-shift at (i, i+1) to b and restore triangularity by
    /// a local column fix in GL(n, O).
    void apply_flip(const Move& mv) {
        const int i = mv.i;
        // rows: row_i <- row_{i+1}; row_{i+1} <- -row_i - S row_{i+1}
        for (int c = i; c < n_; ++c) {
            LaurentSeries old_i = b_.at(i, c);
            b_.at(i, c) = b_.at(i + 1, c);
            LaurentSeries t = -old_i;
            if (!mv.coef.is_zero()) t = t - mul_coef(b_.at(i, c), mv.coef);
            b_.at(i + 1, c) = std::move(t);
        }
        // entry (i+1, i) = -old b_ii is known; (i+1, i+1) may be anything
        const LaurentSeries& a = b_.at(i + 1, i);
        const LaurentSeries& d = b_.at(i + 1, i + 1);
        int va = a.val();
        bool pivot_left;
        if (d.is_ztp()) {
            if (d.prec() <= va) throw PrecisionExhausted("flip fix: pivot undetermined");
            pivot_left = true;
        } else {
            pivot_left = va <= d.val();  // tie-break: smaller column
        }
        if (pivot_left) {
            for (int r = 0; r <= i + 1; ++r) std::swap(b_.at(r, i), b_.at(r, i + 1));
        }
        // clear (i+1, i) against the pivot at (i+1, i+1)
        const LaurentSeries& off = b_.at(i + 1, i);
        if (!off.is_ztp()) {
            LaurentSeries ratio = off * b_.at(i + 1, i + 1).inverse();  // in O
            for (int r = 0; r <= i + 1; ++r) b_.at(r, i) = b_.at(r, i) - ratio * b_.at(r, i + 1);
        }
        tv_[i] = b_.at(i, i).val();
        tv_[i + 1] = b_.at(i + 1, i + 1).val();
    }

    Mat<LaurentSeries> b_;
    int n_ = 0;
    std::vector<int> tv_;
    std::vector<Move> moves_;
    ReduceStats* stats_ = nullptr;
};

/// Termination cap from the potential argument: the sum of the N_j starts
/// at -sum_j pairing(j, t_vals) and can never drop below -sum_j j*e_inv
/// (the Prop.-10-style lower bound); each step decreases it by at least 1.
inline long phase1_step_cap(const std::vector<int>& tv, int e_inv_bound) {
    int n = static_cast<int>(tv.size());
    long total = 16;
    for (int j = 1; j <= n; ++j) {
        long nj = -pairing(j, tv);
        total += nj + static_cast<long>(j) * std::max(0, e_inv_bound);
    }
    return std::max<long>(total, 16);
}

struct EngineOutcome {
    std::vector<Move> moves;
    Cocharacter eta;
};

/// Retry loop: run both phases at working precision W, doubling W on
/// PrecisionExhausted up to the cap.
inline EngineOutcome run_phases(const std::function<Mat<LaurentSeries>(int)>& provider, int e_inv_bound,
                                int initial_precision, int precision_cap, ReduceStats* stats) {
    int W = std::max(2, initial_precision);
    for (;;) {
        try {
            Engine eng(provider(W), stats);
            eng.phase1(phase1_step_cap(eng.t_vals(), e_inv_bound) + 8);
            eng.phase2();
            if (stats != nullptr) stats->final_precision = W;
            return EngineOutcome{eng.moves(), eng.eta()};
        } catch (const PrecisionExhausted&) {
            if (W >= precision_cap)
                throw PrecisionExhausted("working precision cap " + std::to_string(precision_cap) + " reached");
            W = std::min(W * 2, precision_cap);
            if (stats != nullptr) ++stats->retries;
        }
    }
}

}  // namespace detail

// ---- public phase-level API (series flavor) ----

struct Phase1StepResult {
    bool already_in_omega = false;
    Move move;
    Mat<LaurentSeries> g_next;
};

/// One rank-one move on a series matrix.
inline Phase1StepResult phase1_step(const Mat<LaurentSeries>& g) {
    detail::Engine eng(g, nullptr);
    auto mv = eng.phase1_step();
    if (!mv.has_value()) return Phase1StepResult{true, {}, g};
    Mat<LaurentSeries> next = g;
    apply_move_rows(next, *mv);
    return Phase1StepResult{false, *mv, next};
}

struct PhaseRun {
    std::vector<Move> moves;
    Mat<LaurentSeries> g_final;
    Cocharacter eta;  // phase 2 only
};

/// Iterate phase-1 steps until Omega membership.
inline PhaseRun phase1(const Mat<LaurentSeries>& g) {
    int e_inv = c_g_bound(series_inverse(g)).e;
    detail::Engine eng(g, nullptr);
    eng.phase1(detail::phase1_step_cap(eng.t_vals(), e_inv) + 8);
    PhaseRun out;
    out.moves = eng.moves();
    out.g_final = g;
    for (const Move& mv : out.moves) apply_move_rows(out.g_final, mv);
    return out;
}

/// Strip the unipotent part of an Omega element and read off eta.
inline PhaseRun phase2(const Mat<LaurentSeries>& g) {
    if (!omega_member(g)) throw Error("phase 2 requires Omega membership");
    detail::Engine eng(g, nullptr);
    eng.phase2();
    PhaseRun out;
    out.moves = eng.moves();
    out.g_final = g;
    for (const Move& mv : out.moves) apply_move_rows(out.g_final, mv);
    out.eta = eng.eta();
    return out;
}

// ---- the local theorem, end to end ----

/// Factor g = gamma * pi^eta * k exactly. The engine runs on truncated
/// series at working precision W (doubled on PrecisionExhausted, capped);
/// the witness is assembled and verified in exact Laurent arithmetic.
inline Witness local_reduce(const Mat<LaurentPoly>& g, const ReduceOptions& opt = {}, ReduceStats* stats = nullptr) {
    const Fq* F = g.F;
    const int n = g.n;
    if (det(g).is_zero()) throw SingularInput("input matrix is singular");
    int e_inv = inverse_norm_exponent(g);
    auto [lo, hi] = exponent_range(g);
    int W0 = opt.initial_precision > 0 ? opt.initial_precision : default_working_precision(hi, lo);

    auto provider = [&](int prec) { return to_series(g, prec); };
    detail::EngineOutcome out = detail::run_phases(provider, e_inv, W0, opt.precision_cap, stats);

    // exact assembly: gamma = (product of moves)^{-1}, k = pi^{-eta} (moves) g
    Mat<LaurentPoly> gamma = mat_identity(F, n);
    Mat<LaurentPoly> reduced = g;
    for (const Move& mv : out.moves) {
        apply_move_rows(reduced, mv);
        apply_move_cols_inverse(gamma, mv);
    }
    Mat<LaurentPoly> k = reduced;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k.at(i, j) = k.at(i, j).shifted(-out.eta[i]);

    Witness w{std::move(gamma), out.eta, std::move(k), {}};
    if (opt.keep_trace) w.trace = out.moves;

    // exact verification of every witness invariant
    if (!verify_witness(g, w)) throw WitnessCheckFailed("reduction produced an invalid witness");
    return w;
}

/// The unique coset invariant of Theorem 2.
inline Cocharacter eta_of(const Mat<LaurentPoly>& g, const ReduceOptions& opt = {}) {
    return local_reduce(g, opt).eta;
}

// ---- the local theorem at a place of F_q(t), in exact rational arithmetic ----

/// Local reduction of a rational matrix at a degree-1 place v: the engine
/// runs on truncated pi_v-expansions, the witness is assembled back in
/// F_q(t). gamma has entries in F_q[pi_v^{-1}] (a subring of F) and
/// left = pi_v^{-eta} gamma^{-1} satisfies left * g = k, integral at v.
struct PlaceReduction {
    Cocharacter eta;
    Mat<RatFun> gamma;
    Mat<RatFun> left;
    Mat<RatFun> k;
};

inline PlaceReduction reduce_at_place(const Mat<RatFun>& g, const Place& v, const ReduceOptions& opt = {},
                                      ReduceStats* stats = nullptr) {
    const Fq* F = g.F;
    const int n = g.n;
    if (det(g).is_zero()) throw SingularInput("input matrix is singular");
    Mat<RatFun> ginv = exact_inverse(g);
    auto max_negval = [&](const Mat<RatFun>& M) {
        int e = 0;
        for (const auto& x : M.e) {
            auto val = val_at(x, v);
            if (val.has_value()) e = std::max(e, -*val);
        }
        return e;
    };
    int e_g = max_negval(g);
    int e_inv = max_negval(ginv);
    int W0 = opt.initial_precision > 0 ? opt.initial_precision : default_working_precision(e_g + e_inv, 0);

    auto provider = [&](int prec) { return expand_matrix(g, v, prec); };
    detail::EngineOutcome out = detail::run_phases(provider, e_inv, W0, opt.precision_cap, stats);

    Mat<LaurentPoly> gamma_pi = mat_identity(F, n);
    Mat<LaurentPoly> gmul_pi = mat_identity(F, n);
    for (const Move& mv : out.moves) {
        apply_move_rows(gmul_pi, mv);
        apply_move_cols_inverse(gamma_pi, mv);
    }
    for (const auto& x : gamma_pi.e)
        if (!x.in_R()) throw WitnessCheckFailed("gamma left the polynomial ring of the place");
    if (!det(gamma_pi).is_unit_constant()) throw WitnessCheckFailed("det gamma is not a unit constant");

    PlaceReduction pr;
    pr.eta = out.eta;
    pr.gamma = to_ratfun(gamma_pi, v);
    Mat<RatFun> gmul = to_ratfun(gmul_pi, v);
    RatFun pi_v = v.infinite ? RatFun::one(F) / RatFun::variable(F)
                             : RatFun::variable(F) - RatFun::constant(v.a);
    auto pi_pow = [&](int e) {
        RatFun r = RatFun::one(F);
        RatFun base = e >= 0 ? pi_v : pi_v.inverse();
        for (int t = 0; t < std::abs(e); ++t) r = r * base;
        return r;
    };
    pr.left = gmul;
    for (int i = 0; i < n; ++i) {
        RatFun s = pi_pow(-pr.eta[i]);
        for (int j = 0; j < n; ++j) pr.left.at(i, j) = s * pr.left.at(i, j);
    }
    pr.k = pr.left * g;

    // exact verification at the place
    if (!is_antidominant(pr.eta)) throw WitnessCheckFailed("eta is not antidominant");
    for (const auto& x : pr.k.e) {
        auto val = val_at(x, v);
        if (val.has_value() && *val < 0) throw WitnessCheckFailed("k is not integral at the place");
    }
    auto dk = val_at(det(pr.k), v);
    if (!dk.has_value() || *dk != 0) throw WitnessCheckFailed("det k is not a unit at the place");
    Mat<RatFun> recon = pr.gamma;
    for (int i = 0; i < n; ++i) {
        RatFun s = pi_pow(pr.eta[i]);
        for (int j = 0; j < n; ++j) recon.at(j, i) = recon.at(j, i) * s;  // right-multiply by pi^eta
    }
    if (!(recon * pr.k == g)) throw WitnessCheckFailed("gamma pi^eta k does not reassemble the input");
    return pr;
}

}  // namespace birkhoff
