#include <catch2/catch_amalgamated.hpp>

#include "birkhoff/iwasawa.hpp"

using namespace birkhoff;

namespace {

LaurentPoly mono(const Fq* F, int c, int e) { return LaurentPoly::monomial(F->from_int(c), e); }

Mat<LaurentPoly> random_invertible(Rng& rng, const Fq* F, int n, int lo, int hi) {
    for (;;) {
        Mat<LaurentPoly> M(n, F, LaurentPoly::zero(F));
        for (auto& e : M.e) e = rng.laurent(*F, rng.range(lo, 0), rng.range(0, hi));
        if (!det(M).is_zero()) return M;
    }
}

bool series_matrix_eq(const Mat<LaurentSeries>& A, const Mat<LaurentSeries>& B) {
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            if (!equal_to_precision(A.at(i, j), B.at(i, j))) return false;
    return true;
}

}  // namespace

TEST_CASE("integral matrices have zero torus valuations") {
    auto F5 = Fq::make(5, 1);
    Rng rng(1);
    for (int c = 0; c < 50; ++c) {
        int n = rng.range(2, 4);
        Mat<LaurentPoly> k = random_k(n, F5.get(), rng.next(), 3, 5);
        auto t = phi_tvals(to_series(k, 30));
        for (int v : t) REQUIRE(v == 0);
    }
}

TEST_CASE("triangular example: [[pi,1],[0,pi^-1]]") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    Mat<LaurentPoly> g(2, F, LaurentPoly::zero(F));
    g.at(0, 0) = mono(F, 1, 1);
    g.at(0, 1) = LaurentPoly::one(F);
    g.at(1, 1) = mono(F, 1, -1);
    IwasawaDecomp d = iwasawa_decompose(to_series(g, 20));
    CHECK(d.t_vals == std::vector<int>{1, -1});
    // n = [[1, pi^-1], [0, 1]]
    CHECK(d.n_part.at(0, 1).val() == -1);
    CHECK(d.n_part.at(0, 1).coeff(-1) == F->one());
    // k = I
    CHECK(d.k.at(0, 0).coeff(0) == F->one());
    CHECK(d.k.at(1, 1).coeff(0) == F->one());
    CHECK(d.k.at(0, 1).is_ztp());
    CHECK(d.k.at(1, 0).is_ztp());
}

TEST_CASE("pivoting example: [[pi^-1,0],[1,pi]]") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    Mat<LaurentPoly> g(2, F, LaurentPoly::zero(F));
    g.at(0, 0) = mono(F, 1, -1);
    g.at(1, 0) = LaurentPoly::one(F);
    g.at(1, 1) = mono(F, 1, 1);
    Mat<LaurentSeries> gs = to_series(g, 24);
    IwasawaDecomp d = iwasawa_decompose(gs);
    CHECK(d.t_vals == std::vector<int>{0, 0});
    // back-multiplication: t n k = g to precision, k integral
    CHECK(series_matrix_eq(iwasawa_assemble(d), gs));
    for (const auto& x : d.k.e) CHECK(x.in_O());
}

TEST_CASE("reassembly, determinant conservation, K-invariance (randomized)") {
    auto F3 = Fq::make(3, 1);
    auto F4 = Fq::make_from_q(4);
    Rng rng(7);
    for (int c = 0; c < 10000; ++c) {
        const Fq* F = (c % 2 == 0) ? F3.get() : F4.get();
        int n = rng.range(2, 3);
        Mat<LaurentPoly> g = random_invertible(rng, F, n, -2, 2);
        Mat<LaurentSeries> gs = to_series(g, 30);
        IwasawaDecomp d = iwasawa_decompose(gs);

        // t n k = g to working precision
        REQUIRE(series_matrix_eq(iwasawa_assemble(d), gs));

        // k in GL(n, O)
        for (const auto& x : d.k.e) REQUIRE(x.in_O());
        REQUIRE(det(d.k).val() == 0);

        // sum of torus valuations = val det g
        int s = 0;
        for (int v : d.t_vals) s += v;
        REQUIRE(s == *det(g).val());

        // n_part has unit diagonal
        for (int i = 0; i < n; ++i) {
            REQUIRE(d.n_part.at(i, i).val() == 0);
            REQUIRE(d.n_part.at(i, i).coeff(0) == F->one());
        }

        // well-definedness: right multiplication by GL(n, O) fixes t_vals
        Mat<LaurentPoly> k2 = random_k(n, F, rng.next(), 2, 3);
        REQUIRE(phi_tvals(to_series(g * k2, 30)) == d.t_vals);
    }
}

TEST_CASE("parabolic blocks") {
    ParabolicSpec full{4, {0, 1, 2}};
    CHECK(full.blocks() == std::vector<std::pair<int, int>>{{0, 4}});
    ParabolicSpec empty{4, {}};
    CHECK(empty.blocks().size() == 4);
    ParabolicSpec mid{4, {1}};
    CHECK(mid.blocks() == std::vector<std::pair<int, int>>{{0, 1}, {1, 3}, {3, 4}});
}

TEST_CASE("Levi projection transitivity on valuation vectors") {
    auto F3 = Fq::make(3, 1);
    Rng rng(99);
    for (int c = 0; c < 300; ++c) {
        int n = rng.range(3, 4);
        Mat<LaurentPoly> g = random_invertible(rng, F3.get(), n, -2, 2);
        Mat<LaurentSeries> gs = to_series(g, 40);
        std::vector<int> direct = phi_tvals(gs);
        // every proper nonempty block structure
        for (int mask = 1; mask < (1 << (n - 1)) - 1; ++mask) {
            ParabolicSpec D{n, {}};
            for (int i = 0; i < n - 1; ++i)
                if (mask & (1 << i)) D.D.push_back(i);
            std::vector<int> two_step;
            for (const auto& blk : phi_levi(gs, D)) {
                auto tv = phi_tvals(blk);
                two_step.insert(two_step.end(), tv.begin(), tv.end());
            }
            REQUIRE(two_step == direct);
        }
        // full-set Levi is g itself modulo G(O)
        ParabolicSpec full{n, {}};
        for (int i = 0; i < n - 1; ++i) full.D.push_back(i);
        auto blocks = phi_levi(gs, full);
        REQUIRE(blocks.size() == 1);
        REQUIRE(phi_tvals(blocks[0]) == direct);
    }
}

TEST_CASE("phi at the torus returns eta") {
    auto F5 = Fq::make(5, 1);
    CHECK(phi_tvals(to_series(make_pi_eta(F5.get(), {-2, 0, 3}), 20)) == std::vector<int>{-2, 0, 3});
}

TEST_CASE("omega membership") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    CHECK(omega_member(to_series(make_pi_eta(F, {-1, 0, 2}), 20)));
    CHECK(omega_member(to_series(mat_identity(F, 3), 20)));
    Mat<LaurentPoly> g(2, F, LaurentPoly::zero(F));
    g.at(0, 0) = mono(F, 1, 1);
    g.at(0, 1) = LaurentPoly::one(F);
    g.at(1, 1) = mono(F, 1, -1);
    CHECK_FALSE(omega_member(to_series(g, 20)));
}

TEST_CASE("precision exhaustion surfaces instead of wrong answers") {
    auto F5 = Fq::make(5, 1);
    const Fq* F = F5.get();
    // a matrix whose pivot decision needs coefficients beyond precision
    Mat<LaurentSeries> g(2, F, LaurentSeries::zero_to_prec(F, 0));
    g.at(0, 0) = LaurentSeries::from_poly(mono(F, 1, 2), 4);
    g.at(0, 1) = LaurentSeries::from_poly(mono(F, 1, 0), 4);
    g.at(1, 0) = LaurentSeries::zero_to_prec(F, 1);  // could hide mass at pi^1 < val 2 of the known entry
    g.at(1, 1) = LaurentSeries::from_poly(mono(F, 1, 2), 4);
    CHECK_THROWS_AS(phi_tvals(g), PrecisionExhausted);
}
