#pragma once

#include <algorithm>
#include <utility>

#include "birkhoff/reduce.hpp"

namespace birkhoff {

/// An adelic matrix over F_q(t) with explicit finite support: places not
/// listed carry the identity (so the tuple lies in G(O_v) almost
/// everywhere). Components are exact rational matrices; only the local
/// engine ever expands them into series.
struct AdeleMat {
    const Fq* F = nullptr;
    int n = 0;
    std::vector<std::pair<Place, Mat<RatFun>>> support;

    static AdeleMat identity(const Fq* F, int n) { return AdeleMat{F, n, {}}; }

    bool has_place(const Place& v) const {
        for (const auto& [w, m] : support)
            if (w == v) return true;
        return false;
    }

    const Mat<RatFun>* find(const Place& v) const {
        for (const auto& [w, m] : support)
            if (w == v) return &m;
        return nullptr;
    }

    Mat<RatFun> component(const Place& v) const {
        const Mat<RatFun>* m = find(v);
        return m != nullptr ? *m : mat_identity_rat(F, n);
    }

    /// Install a component; rejects singular matrices and duplicate places.
    void set_component(const Place& v, Mat<RatFun> m) {
        if (m.n != n) throw SizeMismatch("component size differs from the adele's rank");
        if (det(m).is_zero()) throw SingularInput("adele component is singular");
        if (has_place(v)) throw ConfigError("duplicate place in adele support");
        support.push_back({v, std::move(m)});
    }

    /// Left-multiply every component (creating the infinite one when
    /// absent) by a common rational matrix.
    void left_multiply_all(const Mat<RatFun>& M, bool ensure_infinity) {
        if (ensure_infinity && !has_place(Place::inf())) support.push_back({Place::inf(), mat_identity_rat(F, n)});
        for (auto& [w, m] : support) m = M * m;
    }

    void erase_place(const Place& v) {
        for (auto it = support.begin(); it != support.end(); ++it)
            if (it->first == v) {
                support.erase(it);
                return;
            }
    }
};

namespace detail {

/// Strip all (t-a) factors, a running over `as`; true iff what remains is
/// a (nonzero) constant.
inline bool factors_over(Poly p, const std::vector<FqElem>& as, const Fq* F) {
    if (p.is_zero()) return false;
    bool progress = true;
    while (p.deg() > 0 && progress) {
        progress = false;
        for (const FqElem& a : as) {
            Poly lin = Poly::from_coeffs(F, {F->neg(a), F->one()});
            for (;;) {
                auto [q, r] = Poly::divmod(p, lin);
                if (!r.is_zero()) break;
                p = q;
                progress = true;
                if (p.deg() == 0) return true;
            }
        }
    }
    return p.deg() == 0;
}

/// x has poles only at the listed finite places (and possibly infinity).
inline bool poles_only_at(const RatFun& x, const std::vector<FqElem>& as, const Fq* F) {
    if (x.den().deg() == 0) return true;
    return factors_over(x.den(), as, F);
}

/// x = c * prod (t - a_i)^{e_i} over the listed places.
inline bool monomial_in_places(const RatFun& x, const std::vector<FqElem>& as, const Fq* F) {
    if (x.is_zero()) return false;
    return factors_over(x.num(), as, F) && factors_over(x.den(), as, F);
}

}  // namespace detail

/// One step of the global reduction: locally reduce the component at the
/// finite place v and push pi_v^{-eta} gamma^{-1} (an element of G(F),
/// integral with unit determinant away from v) through every component.
/// Afterwards the v-component is integral at v and v leaves the support.
inline Cocharacter peel_place(AdeleMat& A, const Place& v, const ReduceOptions& opt = {},
                              ReduceStats* stats = nullptr, Mat<RatFun>* multiplier_out = nullptr) {
    if (v.infinite) throw Error("peel_place applies to finite places only");
    if (!A.has_place(v)) throw Error("place not in the adele's support");
    PlaceReduction pr = reduce_at_place(A.component(v), v, opt, stats);

    // the multiplier may only touch the place itself and infinity
    for (const auto& x : pr.left.e)
        if (!x.is_zero() && !detail::poles_only_at(x, {v.a}, A.F))
            throw WitnessCheckFailed("peel multiplier has poles away from the place");
    if (!detail::monomial_in_places(det(pr.left), {v.a}, A.F))
        throw WitnessCheckFailed("peel multiplier determinant is not supported at the place");

    A.left_multiply_all(pr.left, /*ensure_infinity=*/true);
    if (multiplier_out != nullptr) *multiplier_out = pr.left;

    // the peeled component must now be integral at v with unit determinant
    Mat<RatFun> peeled = A.component(v);
    for (const auto& x : peeled.e) {
        auto val = val_at(x, v);
        if (val.has_value() && *val < 0) throw WitnessCheckFailed("peeled component is not integral");
    }
    auto dv = val_at(det(peeled), v);
    if (!dv.has_value() || *dv != 0) throw WitnessCheckFailed("peeled component determinant is not a unit");
    A.erase_place(v);
    return pr.eta;
}

/// Full global witness: A = left * (t^-1)^eta * k with left in G(F), eta
/// antidominant, and k_v in G(O_v) at every place (identity-completed
/// outside the listed components).
struct GlobalWitness {
    Mat<RatFun> left;
    Cocharacter eta;
    std::vector<std::pair<Place, Mat<RatFun>>> k;
};

/// The finite places of the support, in the deterministic peel order
/// (ascending label of a).
inline std::vector<Place> finite_support_sorted(const AdeleMat& A) {
    std::vector<Place> out;
    for (const auto& [w, m] : A.support)
        if (!w.infinite) out.push_back(w);
    std::sort(out.begin(), out.end(), [](const Place& x, const Place& y) { return elem_less(x.a, y.a); });
    return out;
}

/// Theorem 1: the unique antidominant eta with A in G(F) (t^-1)^eta K.
/// Peels the finite places in ascending order of a, then reduces at
/// infinity with Gamma_inf = G(F_q[t]).
inline Cocharacter global_reduce(const AdeleMat& input, GlobalWitness* witness = nullptr,
                                 const ReduceOptions& opt = {}, ReduceStats* stats = nullptr) {
    AdeleMat A = input;
    for (const auto& [w, m] : A.support)
        if (det(m).is_zero()) throw SingularInput("adele component is singular");
    Mat<RatFun> acc = mat_identity_rat(A.F, A.n);  // product of the peel multipliers
    for (const Place& v : finite_support_sorted(A)) {
        Mat<RatFun> mult;
        peel_place(A, v, opt, stats, witness != nullptr ? &mult : nullptr);
        if (witness != nullptr) acc = mult * acc;
    }
    PlaceReduction inf = reduce_at_place(A.component(Place::inf()), Place::inf(), opt, stats);
    if (witness != nullptr) {
        witness->eta = inf.eta;
        witness->left = exact_inverse(acc) * inf.gamma;
        witness->k.clear();
        Mat<RatFun> gamma_inf_inv = exact_inverse(inf.gamma);
        for (const auto& [w, m] : input.support) {
            if (w.infinite) continue;
            // K_w = gamma_inf^{-1} * acc * A_w
            witness->k.push_back({w, gamma_inf_inv * acc * m});
        }
        witness->k.push_back({Place::inf(), inf.k});
    }
    return inf.eta;
}

/// Exact verification of a global witness against the original adele:
/// per-place reassembly and integrality at every listed place, plus
/// supportedness of the rational part so the implicit k_v = left^{-1}
/// stays integral at the infinitely many unlisted places.
inline bool verify_global_witness(const AdeleMat& A, const GlobalWitness& w) {
    try {
        const Fq* F = A.F;
        if (!is_antidominant(w.eta)) return false;
        Mat<RatFun> tinv_eta(A.n, F, RatFun::zero(F));
        RatFun tinv = RatFun::one(F) / RatFun::variable(F);
        for (int i = 0; i < A.n; ++i) {
            RatFun p = RatFun::one(F);
            RatFun base = w.eta[i] >= 0 ? tinv : tinv.inverse();
            for (int t = 0; t < std::abs(w.eta[i]); ++t) p = p * base;
            tinv_eta.at(i, i) = p;
        }
        auto k_at = [&](const Place& v) -> const Mat<RatFun>* {
            for (const auto& [u, m] : w.k)
                if (u == v) return &m;
            return nullptr;
        };
        std::vector<Place> places = {Place::inf()};
        std::vector<FqElem> finite_as;
        auto add_place = [&](const Place& u) {
            if (std::find(places.begin(), places.end(), u) == places.end()) places.push_back(u);
            if (!u.infinite) finite_as.push_back(u.a);
        };
        for (const auto& [u, m] : A.support) add_place(u);
        for (const auto& [u, m] : w.k) add_place(u);

        for (const Place& v : places) {
            Mat<RatFun> head = v.infinite ? w.left * tinv_eta : w.left;
            const Mat<RatFun>* given = k_at(v);
            Mat<RatFun> k = given != nullptr ? *given : exact_inverse(head) * A.component(v);
            for (const auto& x : k.e) {
                auto val = val_at(x, v);
                if (val.has_value() && *val < 0) return false;
            }
            auto dv = val_at(det(k), v);
            if (!dv.has_value() || *dv != 0) return false;
            if (!(head * k == A.component(v))) return false;
        }

        // away from the listed places: A_v = I forces k_v = left^{-1},
        // which is integral with unit determinant iff left's entries and
        // determinant are supported on the listed places
        for (const auto& x : w.left.e)
            if (!x.is_zero() && !detail::poles_only_at(x, finite_as, F)) return false;
        if (!detail::monomial_in_places(det(w.left), finite_as, F)) return false;
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace birkhoff
