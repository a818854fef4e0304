#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "birkhoff/series.hpp"

namespace birkhoff {

/// Dense polynomial in t over F_q, ascending coefficients, no trailing
/// zeros (empty = 0).
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Fq* F) : F_(F) {}

    static Poly zero(const Fq* F) { return Poly(F); }
    static Poly constant(const FqElem& x) {
        Poly r(&field_of(x));
        if (!x.is_zero()) r.c_ = {x};
        return r;
    }
    static Poly one(const Fq* F) { return constant(F->one()); }
    static Poly variable(const Fq* F) { return from_coeffs(F, {F->zero(), F->one()}); }
    static Poly from_coeffs(const Fq* F, std::vector<FqElem> c) {
        Poly r(F);
        r.c_ = std::move(c);
        r.normalize();
        return r;
    }

    const Fq* field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<FqElem>& coeffs() const { return c_; }
    FqElem coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : F_->zero(); }
    FqElem lc() const { return c_.empty() ? F_->zero() : c_.back(); }

    friend Poly operator+(const Poly& a, const Poly& b) { return add_impl(a, b, false); }
    friend Poly operator-(const Poly& a, const Poly& b) { return add_impl(a, b, true); }
    friend Poly operator-(const Poly& a) {
        Poly r(a.F_);
        r.c_.reserve(a.c_.size());
        for (const auto& x : a.c_) r.c_.push_back(a.F_->neg(x));
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.require_same_field(b);
        if (a.is_zero() || b.is_zero()) return zero(a.F_);
        Poly r(a.F_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.F_->zero());
        a.F_->conv(r.c_.data(), r.c_.size(), a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
        r.normalize();
        return r;
    }

    Poly scaled(const FqElem& s) const {
        Poly r(F_);
        if (s.is_zero()) return r;
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(F_->mul(x, s));
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Long division: a = q*b + r with deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        a.require_same_field(b);
        if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
        if (a.deg() < b.deg()) return {zero(a.F_), a};
        const Fq* F = a.F_;
        FqElem lci = F->inv(b.lc());
        std::vector<FqElem> rem = a.c_;
        std::vector<FqElem> quo(a.deg() - b.deg() + 1, F->zero());
        for (int k = a.deg(); k >= b.deg(); --k) {
            FqElem cv = rem[k];
            if (cv.is_zero()) continue;
            FqElem s = F->mul(cv, lci);
            quo[k - b.deg()] = s;
            for (int i = 0; i <= b.deg(); ++i) rem[k - b.deg() + i] = F->sub(rem[k - b.deg() + i], F->mul(s, b.c_[i]));
        }
        return {from_coeffs(F, std::move(quo)), from_coeffs(F, std::move(rem))};
    }

    static Poly exact_div(const Poly& a, const Poly& b) {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero()) throw Error("polynomial exact_div left a remainder");
        return q;
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = b;
            b = r;
        }
        if (!a.is_zero() && !(a.lc() == a.F_->one())) a = a.scaled(a.F_->inv(a.lc()));
        return a;
    }

    FqElem eval(const FqElem& x) const {
        FqElem r = F_->zero();
        for (int i = deg(); i >= 0; --i) r = F_->add(F_->mul(r, x), c_[i]);
        return r;
    }

    /// Taylor shift: coefficients of p(a + u) as a polynomial in u
    /// (in-place repeated synthetic division).
    Poly shifted_to(const FqElem& a) const {
        if (is_zero()) return *this;
        std::vector<FqElem> c = c_;
        int L = static_cast<int>(c.size());
        for (int k = 0; k <= L - 2; ++k)
            for (int i = L - 2; i >= k; --i) c[i] = F_->add(c[i], F_->mul(a, c[i + 1]));
        return from_coeffs(F_, std::move(c));
    }

    /// Multiplicity of a as a root (0 if not a root; -1 is never returned:
    /// caller handles the zero polynomial).
    int order_at(const FqElem& a) const {
        Poly cur = *this;
        int ord = 0;
        while (!cur.is_zero() && cur.eval(a).is_zero()) {
            Poly lin = from_coeffs(F_, {F_->neg(a), F_->one()});
            cur = exact_div(cur, lin);
            ++ord;
        }
        return ord;
    }

    static Poly power(Poly base, int e) {
        Poly r = one(base.F_);
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    void require_same_field(const Poly& other) const {
        if (F_ == other.F_) return;
        if (F_ == nullptr || other.F_ == nullptr || !F_->same_spec(*other.F_))
            throw FieldMismatch("polynomials over different fields");
    }

  private:
    static Poly add_impl(const Poly& a, const Poly& b, bool subtract) {
        a.require_same_field(b);
        const Fq* F = a.F_;
        Poly r(F);
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), F->zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = subtract ? F->sub(r.c_[i], b.c_[i]) : F->add(r.c_[i], b.c_[i]);
        r.normalize();
        return r;
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    const Fq* F_ = nullptr;
    std::vector<FqElem> c_;
};

/// Element of F_q(t) in canonical form: monic denominator, reduced fraction.
class RatFun {
  public:
    RatFun() = default;
    explicit RatFun(const Fq* F) : num_(Poly::zero(F)), den_(Poly::one(F)) {}
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        reduce();
    }

    static RatFun zero(const Fq* F) { return RatFun(F); }
    static RatFun one(const Fq* F) { return from_poly(Poly::one(F)); }
    static RatFun from_poly(Poly p) {
        const Fq* F = p.field();
        return RatFun(std::move(p), Poly::one(F));
    }
    static RatFun constant(const FqElem& x) { return from_poly(Poly::constant(x)); }
    static RatFun variable(const Fq* F) { return from_poly(Poly::variable(F)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Fq* field() const { return num_.field(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.deg() == 0; }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFun operator-(const RatFun& a) { return RatFun(-a.num_, a.den_); }

    RatFun inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
        return RatFun(den_, num_);
    }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

  private:
    void reduce() {
        const Fq* F = den_.field();
        if (num_.is_zero()) {
            den_ = Poly::one(F);
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.deg() > 0) {
            num_ = Poly::exact_div(num_, g);
            den_ = Poly::exact_div(den_, g);
        }
        if (!(den_.lc() == F->one())) {
            FqElem s = F->inv(den_.lc());
            num_ = num_.scaled(s);
            den_ = den_.scaled(s);
        }
    }

    Poly num_, den_;
};

/// A degree-1 place of F_q(t): either infinity (uniformizer t^-1) or the
/// finite place t - a.
struct Place {
    bool infinite = true;
    FqElem a{};  // meaningful for finite places

    static Place inf() { return Place{true, {}}; }
    static Place finite(const FqElem& a) { return Place{false, a}; }

    friend bool operator==(const Place& u, const Place& v) {
        if (u.infinite != v.infinite) return false;
        return u.infinite || u.a == v.a;
    }
    friend bool operator!=(const Place& u, const Place& v) { return !(u == v); }
};

/// Order of vanishing of x at the place; nullopt for x = 0.
inline std::optional<int> val_at(const RatFun& x, const Place& v) {
    if (x.is_zero()) return std::nullopt;
    if (v.infinite) return x.den().deg() - x.num().deg();
    return x.num().order_at(v.a) - x.den().order_at(v.a);
}

/// x as an exact Laurent polynomial in the place's uniformizer, when the
/// denominator is supported only at the place (otherwise throws).
inline LaurentPoly exact_laurent_at_place(const Poly& p, const Place& v) {
    const Fq* F = p.field();
    if (p.is_zero()) return LaurentPoly::zero(F);
    if (v.infinite) {
        // t^d -> pi^-d
        LaurentPoly r = LaurentPoly::zero(F);
        std::vector<FqElem> rev(p.coeffs().rbegin(), p.coeffs().rend());
        return LaurentPoly::from_coeffs(F, -p.deg(), std::move(rev));
    }
    Poly sh = p.shifted_to(v.a);
    std::vector<FqElem> cc = sh.coeffs();
    return LaurentPoly::from_coeffs(F, 0, std::move(cc));
}

/// Laurent expansion of x in the uniformizer of the place, correct through
/// exponent prec-1. The valuation of the result is the order of vanishing.
inline LaurentSeries expand_at_place(const RatFun& x, const Place& v, int prec) {
    const Fq* F = x.field();
    if (x.is_zero()) return LaurentSeries::zero_to_prec(F, prec);
    LaurentPoly numL = exact_laurent_at_place(x.num(), v);
    LaurentPoly denL = exact_laurent_at_place(x.den(), v);
    int vn = *numL.val();
    int vd = *denL.val();
    int pn = std::max(prec + vd, vn + 1);
    int pd = std::max(prec - vn + 2 * vd, vd + 1);
    LaurentSeries res = LaurentSeries::from_poly(numL, pn) * LaurentSeries::from_poly(denL, pd).inverse();
    return res.truncated(prec);
}

/// Inverse of exact_laurent_at_place on full Laurent polynomials: rewrite a
/// Laurent polynomial in pi_v as an element of F_q(t).
inline RatFun ratfun_from_laurent(const LaurentPoly& L, const Place& v) {
    const Fq* F = L.field();
    if (L.is_zero()) return RatFun::zero(F);
    if (v.infinite) {
        // pi^e -> t^-e; clear with t^max_exp
        int E = L.max_exp();
        std::vector<FqElem> cc(static_cast<size_t>(E - L.min_exp() + 1), F->zero());
        for (int e = L.min_exp(); e <= E; ++e) cc[E - e] = L.coeff(e);
        Poly num = Poly::from_coeffs(F, std::move(cc));
        Poly den = Poly::power(Poly::variable(F), E > 0 ? E : 0);
        if (E < 0) num = num * Poly::power(Poly::variable(F), -E);
        return RatFun(std::move(num), std::move(den));
    }
    Poly lin = Poly::from_coeffs(F, {F->neg(v.a), F->one()});
    int E = std::max(0, -L.min_exp());
    Poly num = Poly::zero(F);
    for (int e = L.min_exp(); e <= L.max_exp(); ++e) {
        FqElem c = L.coeff(e);
        if (c.is_zero()) continue;
        num = num + Poly::power(lin, e + E).scaled(c);
    }
    return RatFun(std::move(num), Poly::power(lin, E));
}

}  // namespace birkhoff
