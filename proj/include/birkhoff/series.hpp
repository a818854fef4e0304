#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "birkhoff/laurent.hpp"

namespace birkhoff {

/// Truncated Laurent series: coefficients are known exactly for exponents
/// in [val, prec) and unknown from prec on. A series all of whose known
/// coefficients vanish is "zero to precision" (ztp): its valuation is only
/// bounded below by prec, never known, and asking for it throws
/// PrecisionExhausted. Exact zero does not exist at this level; it lives in
/// LaurentPoly.
///
/// Every operation computes the exact precision of its result:
///   prec(x+y)  = min(prec x, prec y)
///   prec(x*y)  = min(val x + prec y, val y + prec x)   (val of a ztp := its prec)
///   prec(1/x)  = prec x - 2 val x
class LaurentSeries {
  public:
    LaurentSeries() = default;

    static LaurentSeries zero_to_prec(const Fq* F, int prec) {
        LaurentSeries s;
        s.F_ = F;
        s.ztp_ = true;
        s.prec_ = prec;
        return s;
    }

    /// Truncation of an exact polynomial: coefficients at exponents >= prec
    /// are forgotten.
    static LaurentSeries from_poly(const LaurentPoly& p, int prec) {
        LaurentSeries s;
        s.F_ = p.field();
        s.prec_ = prec;
        if (p.is_zero() || p.min_exp() >= prec) {
            s.ztp_ = true;
            return s;
        }
        s.val_ = p.min_exp();
        s.c_.assign(static_cast<size_t>(prec - s.val_), p.field()->zero());
        int hi = std::min(p.max_exp(), prec - 1);
        for (int e = s.val_; e <= hi; ++e) s.c_[e - s.val_] = p.coeff(e);
        s.renormalize();
        return s;
    }

    const Fq* field() const { return F_; }
    bool is_ztp() const { return ztp_; }
    int prec() const { return prec_; }

    /// Valuation; PrecisionExhausted when only bounded below (ztp).
    int val() const {
        if (ztp_) throw PrecisionExhausted("valuation unknown: series is zero to precision " + std::to_string(prec_));
        return val_;
    }

    /// Lower bound on the valuation that is always available.
    int val_lower_bound() const { return ztp_ ? prec_ : val_; }

    FqElem coeff(int e) const {
        if (e >= prec_) throw PrecisionExhausted("coefficient beyond known precision");
        if (ztp_ || e < val_) return F_->zero();
        return c_[e - val_];
    }

    const std::vector<FqElem>& coeffs() const { return c_; }

    /// Membership in O = F_q[[pi]]; PrecisionExhausted when a ztp series
    /// has prec < 0 (its valuation could still be negative).
    bool in_O() const {
        if (!ztp_) return val_ >= 0;
        if (prec_ >= 0) return true;
        throw PrecisionExhausted("cannot decide integrality of a ztp series with negative precision");
    }

    LaurentSeries truncated(int new_prec) const {
        if (new_prec >= prec_) return *this;
        if (ztp_ || new_prec <= val_) return zero_to_prec(F_, new_prec);
        LaurentSeries s;
        s.F_ = F_;
        s.val_ = val_;
        s.prec_ = new_prec;
        s.c_.assign(c_.begin(), c_.begin() + (new_prec - val_));
        s.renormalize();
        return s;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return add_impl(a, b, false); }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return add_impl(a, b, true); }

    friend LaurentSeries operator-(const LaurentSeries& a) {
        LaurentSeries r = a;
        for (auto& x : r.c_) x = a.F_->neg(x);
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        a.require_same_field(b);
        const Fq* F = a.F_;
        int prec = std::min(a.val_lower_bound() + b.prec_, b.val_lower_bound() + a.prec_);
        if (a.ztp_ || b.ztp_) return zero_to_prec(F, prec);
        LaurentSeries r;
        r.F_ = F;
        r.ztp_ = false;  // leading coefficients are nonzero in a field
        r.val_ = a.val_ + b.val_;
        r.prec_ = prec;
        size_t len = static_cast<size_t>(prec - r.val_);
        r.c_.assign(len, F->zero());
        F->conv(r.c_.data(), len, a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size());
        return r;
    }

    /// Inverse; the divisor must not be zero to precision.
    LaurentSeries inverse() const {
        if (ztp_) throw PrecisionExhausted("cannot invert a series that is zero to precision");
        LaurentSeries r;
        r.F_ = F_;
        r.ztp_ = false;
        r.val_ = -val_;
        r.prec_ = prec_ - 2 * val_;
        size_t len = c_.size();  // (prec - 2v) - (-v) = prec - v = len
        r.c_.assign(len, F_->zero());
        F_->series_inv(r.c_.data(), c_.data(), c_.size(), len);
        return r;
    }

    friend LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return a * b.inverse(); }

    LaurentSeries scaled(const FqElem& s) const {
        if (s.is_zero()) return zero_to_prec(F_, prec_);  // exact-zero scalars collapse knowledge is fine: 0*x known 0 everywhere
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = F_->mul(x, s);
        return r;
    }

    /// Multiply by pi^k.
    LaurentSeries shifted(int k) const {
        LaurentSeries r = *this;
        r.val_ += k;
        r.prec_ += k;
        return r;
    }

    /// Exact polynomial made of the known coefficients in [val, upto].
    LaurentPoly known_part(int upto) const {
        if (ztp_) return LaurentPoly::zero(F_);
        if (upto >= prec_) throw PrecisionExhausted("known_part beyond precision");
        std::vector<FqElem> cc;
        int hi = std::min(upto, prec_ - 1);
        if (hi < val_) return LaurentPoly::zero(F_);
        cc.assign(c_.begin(), c_.begin() + (hi - val_ + 1));
        return LaurentPoly::from_coeffs(F_, val_, std::move(cc));
    }

    /// Known coefficients agree on the common precision range.
    friend bool equal_to_precision(const LaurentSeries& a, const LaurentSeries& b) {
        int prec = std::min(a.prec_, b.prec_);
        int lo = std::min(a.val_lower_bound(), b.val_lower_bound());
        for (int e = lo; e < prec; ++e) {
            FqElem xa = (a.ztp_ || e < a.val_) ? a.F_->zero() : (e >= a.prec_ ? a.F_->zero() : a.c_[e - a.val_]);
            FqElem xb = (b.ztp_ || e < b.val_) ? b.F_->zero() : (e >= b.prec_ ? b.F_->zero() : b.c_[e - b.val_]);
            if (!(xa == xb)) return false;
        }
        return true;
    }

    void require_same_field(const LaurentSeries& other) const {
        if (F_ == other.F_) return;
        if (F_ == nullptr || other.F_ == nullptr || !F_->same_spec(*other.F_))
            throw FieldMismatch("series over different fields");
    }

  private:
    static LaurentSeries add_impl(const LaurentSeries& a, const LaurentSeries& b, bool subtract) {
        a.require_same_field(b);
        const Fq* F = a.F_;
        int prec = std::min(a.prec_, b.prec_);
        int lo = std::min(a.val_lower_bound(), b.val_lower_bound());
        if (lo >= prec) return zero_to_prec(F, prec);
        LaurentSeries r;
        r.F_ = F;
        r.val_ = lo;
        r.prec_ = prec;
        r.c_.assign(static_cast<size_t>(prec - lo), F->zero());
        if (!a.ztp_) {
            for (int e = a.val_; e < prec && e - a.val_ < static_cast<int>(a.c_.size()); ++e)
                if (e >= lo) r.c_[e - lo] = a.c_[e - a.val_];
        }
        if (!b.ztp_) {
            for (int e = b.val_; e < prec && e - b.val_ < static_cast<int>(b.c_.size()); ++e) {
                if (e < lo) continue;
                r.c_[e - lo] = subtract ? F->sub(r.c_[e - lo], b.c_[e - b.val_]) : F->add(r.c_[e - lo], b.c_[e - b.val_]);
            }
        }
        r.renormalize();
        return r;
    }

    void renormalize() {
        size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead == c_.size()) {
            c_.clear();
            ztp_ = true;
            return;
        }
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + lead);
            val_ += static_cast<int>(lead);
        }
        ztp_ = false;
    }

    const Fq* F_ = nullptr;
    bool ztp_ = true;
    int val_ = 0;
    int prec_ = 0;
    std::vector<FqElem> c_;
};

// ---- module-level operations ----

/// Valuation of an exact element; nullopt encodes +infinity (exact zero).
inline std::optional<int> val_of(const LaurentPoly& x) { return x.val(); }

/// Valuation of a truncated series; PrecisionExhausted when unknown.
inline int val_of(const LaurentSeries& x) { return x.val(); }

struct IntegralSplit {
    LaurentPoly P;   // exponents <= 0, exact (element of R)
    LaurentSeries h;  // exponents >= 1 (element of O)
};

/// x = P + h with P carrying exactly the exponents <= 0. Requires every
/// exponent <= 0 to be known, i.e. prec(x) >= 1.
inline IntegralSplit split_integral(const LaurentSeries& x) {
    if (x.prec() < 1) throw PrecisionExhausted("split requires precision >= 1");
    LaurentPoly P = x.known_part(0);
    LaurentSeries h = x - LaurentSeries::from_poly(P, x.prec());
    return {P, h};
}

inline LaurentPoly::Split split_integral(const LaurentPoly& x) { return x.split(); }

/// Engine default working precision for a matrix whose entries span the
/// given exponent range.
inline int default_working_precision(int max_exp, int min_exp) {
    int spread = max_exp - min_exp;
    if (spread < 0) spread = 0;
    return 4 * spread + 16;
}

constexpr int kPrecisionCap = 4096;

}  // namespace birkhoff
