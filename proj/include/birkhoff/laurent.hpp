#pragma once

#include <optional>
#include <vector>

#include "birkhoff/fq.hpp"

namespace birkhoff {

/// Exact Laurent polynomial in the uniformizer pi, stored densely:
/// coefficient of pi^(lo + i) at c[i]. Invariants: c is empty exactly for
/// the zero polynomial; otherwise c.front() != 0 and c.back() != 0.
///
/// The subring checks are decidable: in_R (all exponents <= 0) and
/// in_O (all exponents >= 0).
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Fq* F) : F_(F) {}

    static LaurentPoly zero(const Fq* F) { return LaurentPoly(F); }

    static LaurentPoly constant(const FqElem& x) {
        LaurentPoly r(&field_of(x));
        if (!x.is_zero()) {
            r.lo_ = 0;
            r.c_ = {x};
        }
        return r;
    }

    static LaurentPoly monomial(const FqElem& coeff, int exp) {
        LaurentPoly r(&field_of(coeff));
        if (!coeff.is_zero()) {
            r.lo_ = exp;
            r.c_ = {coeff};
        }
        return r;
    }

    static LaurentPoly one(const Fq* F) { return constant(F->one()); }

    /// From a dense coefficient run starting at exponent lo (normalizes).
    static LaurentPoly from_coeffs(const Fq* F, int lo, std::vector<FqElem> coeffs) {
        LaurentPoly r(F);
        r.lo_ = lo;
        r.c_ = std::move(coeffs);
        r.normalize();
        return r;
    }

    const Fq* field() const { return F_; }
    bool is_zero() const { return c_.empty(); }

    /// Valuation; std::nullopt encodes +infinity (the zero polynomial).
    std::optional<int> val() const {
        if (c_.empty()) return std::nullopt;
        return lo_;
    }

    int min_exp() const { return lo_; }                                   // pre: nonzero
    int max_exp() const { return lo_ + static_cast<int>(c_.size()) - 1; }  // pre: nonzero

    bool in_R() const { return c_.empty() || max_exp() <= 0; }
    bool in_O() const { return c_.empty() || min_exp() >= 0; }

    FqElem coeff(int e) const {
        if (c_.empty() || e < lo_ || e > max_exp()) return F_->zero();
        return c_[e - lo_];
    }

    const std::vector<FqElem>& coeffs() const { return c_; }

    bool is_constant() const { return c_.empty() || (lo_ == 0 && c_.size() == 1); }
    bool is_monomial() const { return c_.size() == 1; }

    /// Nonzero constant (an element of F_q^x)?
    bool is_unit_constant() const { return c_.size() == 1 && lo_ == 0; }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return add_impl(a, b, false); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return add_impl(a, b, true); }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r(a.F_);
        r.lo_ = a.lo_;
        r.c_.reserve(a.c_.size());
        for (const auto& x : a.c_) r.c_.push_back(a.F_->neg(x));
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_field(b);
        if (a.is_zero() || b.is_zero()) return zero(a.F_);
        LaurentPoly r(a.F_);
        r.lo_ = a.lo_ + b.lo_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.F_->zero());
        a.F_->conv(r.c_.data(), r.c_.size(), a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
        r.normalize();
        return r;
    }

    LaurentPoly scaled(const FqElem& s) const {
        if (s.is_zero()) return zero(F_);
        LaurentPoly r(F_);
        r.lo_ = lo_;
        r.c_.reserve(c_.size());
        for (const auto& x : c_) r.c_.push_back(F_->mul(x, s));
        return r;
    }

    /// Multiply by pi^k.
    LaurentPoly shifted(int k) const {
        LaurentPoly r = *this;
        if (!r.c_.empty()) r.lo_ += k;
        return r;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.c_.empty() && b.c_.empty()) return true;
        if (a.c_.size() != b.c_.size() || a.lo_ != b.lo_) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// The split x = P + h with P carrying every exponent <= 0 (P in R)
    /// and h the exponents >= 1 (h in O). Exact.
    struct Split;
    Split split() const;

    /// Exact quotient a/b in F_q[pi, pi^-1]; throws if b = 0 or the division
    /// leaves a remainder. Used by fraction-free elimination.
    static LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
        a.require_same_field(b);
        if (b.is_zero()) throw DivisionByZero("exact_div by zero");
        if (a.is_zero()) return zero(a.F_);
        if (a.c_.size() < b.c_.size()) throw Error("exact_div: quotient is not a Laurent polynomial");
        const Fq* F = a.F_;
        size_t qlen = a.c_.size() - b.c_.size() + 1;
        std::vector<FqElem> q(qlen, F->zero());
        FqElem b0i = F->inv(b.c_[0]);  // leading (lowest-exponent) coefficient is nonzero
        for (size_t k = 0; k < qlen; ++k) {
            FqElem s = a.c_[k];
            size_t imin = k >= b.c_.size() ? k - b.c_.size() + 1 : 0;
            for (size_t i = imin; i < k; ++i) s = F->sub(s, F->mul(q[i], b.c_[k - i]));
            q[k] = F->mul(s, b0i);
        }
        LaurentPoly quot = from_coeffs(F, a.lo_ - b.lo_, std::move(q));
        if (!(quot * b == a)) throw Error("exact_div: division left a remainder");
        return quot;
    }

    void require_same_field(const LaurentPoly& other) const {
        if (F_ == other.F_) return;
        if (F_ == nullptr || other.F_ == nullptr || !F_->same_spec(*other.F_))
            throw FieldMismatch("Laurent polynomials over different fields");
    }

  private:
    static LaurentPoly add_impl(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
        a.require_same_field(b);
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        const Fq* F = a.F_;
        int lo = std::min(a.lo_, b.lo_);
        int hi = std::max(a.max_exp(), b.max_exp());
        LaurentPoly r(F);
        r.lo_ = lo;
        r.c_.assign(static_cast<size_t>(hi - lo + 1), F->zero());
        for (size_t i = 0; i < a.c_.size(); ++i) r.c_[a.lo_ - lo + i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) {
            size_t k = b.lo_ - lo + i;
            r.c_[k] = subtract ? F->sub(r.c_[k], b.c_[i]) : F->add(r.c_[k], b.c_[i]);
        }
        r.normalize();
        return r;
    }

    void normalize() {
        size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        size_t tail = c_.size();
        while (tail > lead && c_[tail - 1].is_zero()) --tail;
        if (lead > 0 || tail < c_.size()) {
            std::vector<FqElem> nc(c_.begin() + lead, c_.begin() + tail);
            c_ = std::move(nc);
            lo_ += static_cast<int>(lead);
        }
    }

    const Fq* F_ = nullptr;
    int lo_ = 0;
    std::vector<FqElem> c_;
};

struct LaurentPoly::Split {
    LaurentPoly P;
    LaurentPoly h;
};

inline LaurentPoly::Split LaurentPoly::split() const {
    Split s{zero(F_), zero(F_)};
    for (size_t i = 0; i < c_.size(); ++i) {
        int e = lo_ + static_cast<int>(i);
        if (c_[i].is_zero()) continue;
        if (e <= 0)
            s.P = s.P + monomial(c_[i], e);
        else
            s.h = s.h + monomial(c_[i], e);
    }
    return s;
}

}  // namespace birkhoff
