#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/adele.hpp"
#include "birkhoff/bundle.hpp"

using namespace birkhoff;

namespace {

/// A = gamma_glob * (t^-1)^eta * k, with gamma_glob in G(F_q[t]) (det in
/// F_q^x), k_v in G(O_v) at each chosen finite place and at infinity.
AdeleMat build_witnessed_adele(const Fq* F, int n, const Cocharacter& eta, uint64_t seed,
                               const std::vector<FqElem>& as) {
    Rng rng(seed);
    Mat<RatFun> gamma = to_ratfun(random_gamma(n, F, rng.next(), 2, 5), Place::inf());
    AdeleMat A = AdeleMat::identity(F, n);
    for (const FqElem& a : as) {
        Place v = Place::finite(a);
        Mat<RatFun> kv = to_ratfun(random_k(n, F, rng.next(), 2, 4), v);
        A.set_component(v, gamma * kv);
    }
    Mat<RatFun> tinv_eta(n, F, RatFun::zero(F));
    RatFun tinv = RatFun::one(F) / RatFun::variable(F);
    for (int i = 0; i < n; ++i) {
        RatFun p = RatFun::one(F);
        RatFun base = eta[i] >= 0 ? tinv : tinv.inverse();
        for (int t = 0; t < std::abs(eta[i]); ++t) p = p * base;
        tinv_eta.at(i, i) = p;
    }
    Mat<RatFun> kinf = to_ratfun(random_k(n, F, rng.next(), 2, 4), Place::inf());
    A.set_component(Place::inf(), gamma * tinv_eta * kinf);
    return A;
}

std::vector<FqElem> distinct_elems(Rng& rng, const Fq& F, int count) {
    std::vector<FqElem> out;
    while (static_cast<int>(out.size()) < count) {
        FqElem a = rng.elem(F);
        bool dup = false;
        for (const auto& b : out) dup = dup || a == b;
        if (!dup) out.push_back(a);
    }
    return out;
}

/// Independent oracle: dim over F_q of the twisted global sections
/// { f in F^n : f A_v integral at every finite place, val_inf(f A_inf) >= -m }.
int global_h0(const AdeleMat& A, int m) {
    const Fq* F = A.F;
    const int n = A.n;
    std::vector<std::pair<FqElem, int>> finite;  // (a, pole bound d_a)
    int e_inv_inf = 0;
    for (const auto& [v, g] : A.support) {
        Mat<RatFun> gi = exact_inverse(g);
        int e = 0;
        for (const auto& x : gi.e) {
            auto val = val_at(x, v);
            if (val.has_value()) e = std::max(e, -*val);
        }
        if (v.infinite)
            e_inv_inf = e;
        else
            finite.push_back({v.a, e});
    }
    int degQ = 0;
    for (const auto& [a, d] : finite) degQ += d;
    const int Dh = degQ + m + e_inv_inf;
    if (Dh < 0) return 0;
    const int vars = n * (Dh + 1);
    std::vector<std::vector<FqElem>> rows;

    // finite places: coefficients of pi^e, e < d_a, in sum_i h_i(t) g_ij
    for (const auto& [a, d] : finite) {
        if (d == 0) continue;
        Place v = Place::finite(a);
        Mat<RatFun> g = A.component(v);
        int lo = 0;
        for (const auto& x : g.e) {
            auto val = val_at(x, v);
            if (val.has_value()) lo = std::min(lo, *val);
        }
        Mat<LaurentSeries> ge = expand_matrix(g, v, d);
        // (a + pi)^dd expansions of the monomial basis
        std::vector<std::vector<FqElem>> tpow(Dh + 1);
        Poly tp = Poly::one(F);
        for (int dd = 0; dd <= Dh; ++dd) {
            tpow[dd] = tp.shifted_to(a).coeffs();
            tp = tp * Poly::variable(F);
        }
        for (int j = 0; j < n; ++j)
            for (int e = lo; e < d; ++e) {
                std::vector<FqElem> row(vars, F->zero());
                bool nz = false;
                for (int i = 0; i < n; ++i) {
                    const LaurentSeries& s = ge.at(i, j);
                    for (int dd = 0; dd <= Dh; ++dd) {
                        FqElem acc = F->zero();
                        for (int l = 0; l < static_cast<int>(tpow[dd].size()); ++l) {
                            int idx = e - l;
                            if (idx < s.val_lower_bound() || idx >= s.prec()) continue;
                            acc = F->add(acc, F->mul(tpow[dd][l], s.coeff(idx)));
                        }
                        if (!acc.is_zero()) nz = true;
                        row[static_cast<size_t>(i) * (Dh + 1) + dd] = acc;
                    }
                }
                if (nz) rows.push_back(std::move(row));
            }
    }

    // infinity: coefficients of pi^e, e < -m - degQ, in sum_i h_i g_ij
    {
        Mat<RatFun> g = A.component(Place::inf());
        int lo = 0;
        for (const auto& x : g.e) {
            auto val = val_at(x, Place::inf());
            if (val.has_value()) lo = std::min(lo, *val);
        }
        const int emax = -m - degQ - 1;
        const int emin = lo - Dh;
        if (emin <= emax) {
            Mat<LaurentSeries> ge = expand_matrix(g, Place::inf(), emax + Dh + 1);
            for (int j = 0; j < n; ++j)
                for (int e = emin; e <= emax; ++e) {
                    std::vector<FqElem> row(vars, F->zero());
                    bool nz = false;
                    for (int i = 0; i < n; ++i) {
                        const LaurentSeries& s = ge.at(i, j);
                        for (int dd = 0; dd <= Dh; ++dd) {
                            int idx = e + dd;  // t^dd = pi^-dd
                            FqElem cf = (idx < s.val_lower_bound() || idx >= s.prec()) ? F->zero() : s.coeff(idx);
                            if (!cf.is_zero()) nz = true;
                            row[static_cast<size_t>(i) * (Dh + 1) + dd] = cf;
                        }
                    }
                    if (nz) rows.push_back(std::move(row));
                }
        }
    }
    return vars - fq_matrix_rank(rows, F);
}

}  // namespace

TEST_CASE("peel example: diag(t, 1) at the place t") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    AdeleMat A = AdeleMat::identity(F, 2);
    Mat<RatFun> g(2, F, RatFun::zero(F));
    g.at(0, 0) = RatFun::variable(F);
    g.at(1, 1) = RatFun::one(F);
    Place v = Place::finite(F->from_int(0));
    A.set_component(v, g);
    A.set_component(Place::inf(), mat_identity_rat(F, 2));

    Cocharacter before = global_reduce(A);
    Cocharacter local_eta = peel_place(A, v);
    CHECK(local_eta == Cocharacter{0, 1});
    CHECK_FALSE(A.has_place(v));
    // the class is preserved: reducing the peeled adele gives the same eta
    CHECK(global_reduce(A) == before);
    // and the infinity slot now carries the pushed-through factor
    CHECK(A.has_place(Place::inf()));
}

TEST_CASE("peeling an identity component is a no-op up to K") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    AdeleMat A = AdeleMat::identity(F, 2);
    Place v = Place::finite(F->from_int(1));
    A.set_component(v, mat_identity_rat(F, 2));
    Cocharacter eta = peel_place(A, v);
    CHECK(eta == Cocharacter{0, 0});
    CHECK(global_reduce(A) == Cocharacter{0, 0});
}

TEST_CASE("peel preconditions") {
    auto F5 = Fq::make(5, 1);
    AdeleMat A = AdeleMat::identity(F5.get(), 2);
    CHECK_THROWS_AS(peel_place(A, Place::finite(F5->from_int(0))), Error);
    CHECK_THROWS_AS(peel_place(A, Place::inf()), Error);
}

TEST_CASE("global examples") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    CHECK(global_reduce(AdeleMat::identity(F, 3)) == Cocharacter{0, 0, 0});

    AdeleMat Ainf = AdeleMat::identity(F, 2);
    Mat<RatFun> g(2, F, RatFun::zero(F));
    g.at(0, 0) = RatFun::variable(F);
    g.at(1, 1) = RatFun::one(F);
    Ainf.set_component(Place::inf(), g);
    CHECK(global_reduce(Ainf) == Cocharacter{-1, 0});

    AdeleMat Afin = AdeleMat::identity(F, 2);
    Afin.set_component(Place::finite(F->from_int(0)), g);
    CHECK(global_reduce(Afin) == Cocharacter{0, 1});
    // cross-check via the global section oracle: h0(m) = sum max(0, eta_i + m + 1)
    CHECK(global_h0(Afin, 0) == 3);
    CHECK(global_h0(Afin, -1) == 1);
}

TEST_CASE("adele construction guards") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    AdeleMat A = AdeleMat::identity(F, 2);
    Mat<RatFun> sing(2, F, RatFun::one(F));
    CHECK_THROWS_AS(A.set_component(Place::inf(), sing), SingularInput);
    A.set_component(Place::inf(), mat_identity_rat(F, 2));
    CHECK_THROWS_AS(A.set_component(Place::inf(), mat_identity_rat(F, 2)), ConfigError);
}

TEST_CASE("uniqueness: witnessed adeles reduce to their eta") {
    auto F3 = Fq::make(3, 1);
    auto F5 = Fq::make(5, 1);
    Rng rng(606);
    for (int c = 0; c < 25; ++c) {
        const Fq* F = (c % 2 == 0) ? F3.get() : F5.get();
        int n = rng.range(2, 3);
        Cocharacter eta(n);
        for (int& e : eta) e = rng.range(-4, 4);
        std::sort(eta.begin(), eta.end());
        auto as = distinct_elems(rng, *F, rng.range(1, 2));
        AdeleMat A = build_witnessed_adele(F, n, eta, rng.next(), as);

        GlobalWitness w;
        CHECK(global_reduce(A, &w) == eta);
        CHECK(w.eta == eta);
        CHECK(verify_global_witness(A, w));
    }
}

TEST_CASE("peel order does not matter") {
    auto F5 = Fq::make(5, 1);
    Rng rng(1234);
    for (int c = 0; c < 10; ++c) {
        int n = 2;
        Cocharacter eta = {rng.range(-3, 0), rng.range(0, 3)};
        auto as = distinct_elems(rng, *F5, 3);
        AdeleMat A = build_witnessed_adele(F5.get(), n, eta, rng.next(), as);

        Cocharacter reference = global_reduce(A);
        REQUIRE(reference == eta);
        // permute manually: peel in a rotated order, then reduce at infinity
        for (int rot = 1; rot < 3; ++rot) {
            AdeleMat B = A;
            std::vector<Place> order = finite_support_sorted(B);
            std::rotate(order.begin(), order.begin() + rot, order.end());
            for (const Place& v : order) peel_place(B, v);
            REQUIRE(reduce_at_place(B.component(Place::inf()), Place::inf()).eta == reference);
        }
    }
}

TEST_CASE("global invariance under G(F) and K") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    Rng rng(55);
    for (int c = 0; c < 10; ++c) {
        int n = 2;
        Cocharacter eta = {rng.range(-2, 0), rng.range(0, 2)};
        auto as = distinct_elems(rng, *F, 2);
        AdeleMat A = build_witnessed_adele(F, n, eta, rng.next(), as);
        Cocharacter base = global_reduce(A);

        // common left factor in G(F_q[t]) with constant determinant:
        // integral at every finite place, so the support stays finite
        Mat<RatFun> M = to_ratfun(random_gamma(n, F, rng.next(), 2, 4), Place::inf());
        AdeleMat B = A;
        B.left_multiply_all(M, true);
        REQUIRE(global_reduce(B) == base);

        // right multiplication of one component by G(O_v)
        AdeleMat C = A;
        Place v = Place::finite(as[0]);
        Mat<RatFun> kv = to_ratfun(random_k(n, F, rng.next(), 2, 3), v);
        Mat<RatFun> comp = C.component(v) * kv;
        C.erase_place(v);
        C.set_component(v, comp);
        REQUIRE(global_reduce(C) == base);
    }
}

TEST_CASE("global section oracle agrees with the splitting") {
    auto F3 = Fq::make(3, 1);
    Rng rng(77);
    for (int c = 0; c < 12; ++c) {
        int n = rng.range(2, 3);
        Cocharacter eta(n);
        for (int& e : eta) e = rng.range(-3, 3);
        std::sort(eta.begin(), eta.end());
        auto as = distinct_elems(rng, *F3, rng.range(1, 2));
        AdeleMat A = build_witnessed_adele(F3.get(), n, eta, rng.next(), as);
        REQUIRE(global_reduce(A) == eta);
        for (int m : {-1, 0, 2}) {
            int expect = 0;
            for (int e : eta) expect += std::max(0, e + m + 1);
            REQUIRE(global_h0(A, m) == expect);
        }
    }
}
