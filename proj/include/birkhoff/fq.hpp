#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

class Fq;

/// Element of F_q, q = p^m, as a digit vector over F_p (ascending powers of
/// the generator `a`). Digits beyond position m-1 are always zero, so
/// structural equality is plain array equality. Elements carry a pointer to
/// their field; mixing fields throws FieldMismatch.
struct FqElem {
    std::array<uint16_t, 8> c{};
    const Fq* field = nullptr;

    bool is_zero() const {
        for (uint16_t d : c)
            if (d != 0) return false;
        return true;
    }
};

namespace detail {

inline bool is_prime_u32(uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

}  // namespace detail

/// The finite field F_q, q = p^m. Immutable after construction; create via
/// Fq::make so element back-pointers stay valid. For q <= 256 full add/mul
/// lookup tables are built, which the dense series kernels below rely on.
///
/// Limits: p <= 2^16 and m <= 8; anything larger is rejected with
/// ConfigError so all digit arithmetic stays in machine words.
class Fq {
  public:
    static constexpr uint32_t kMaxPrime = 1u << 16;
    static constexpr int kMaxDegree = 8;
    static constexpr uint64_t kTableLimit = 256;

    /// Validating constructor. `modulus` is ascending, length m+1, monic;
    /// empty means "use the built-in default" (prime fields need none).
    static std::shared_ptr<const Fq> make(uint32_t p, int m, std::vector<uint32_t> modulus = {}) {
        validate(p, m, modulus);  // throws ConfigError; fills in defaults
        return std::shared_ptr<const Fq>(new Fq(p, m, std::move(modulus)));
    }

    /// Field of order q with the default modulus table; q must be a prime
    /// power, and for m > 1 a built-in modulus must exist.
    static std::shared_ptr<const Fq> make_from_q(uint64_t q) {
        if (q < 2) throw ConfigError("q must be at least 2");
        uint64_t p = smallest_prime_factor(q);
        int m = 0;
        uint64_t t = q;
        while (t > 1) {
            if (t % p != 0) throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
            t /= p;
            ++m;
        }
        return make(static_cast<uint32_t>(p), m);
    }

    /// Checks a (p, m, modulus) triple the same way the constructor does,
    /// without building the field. Throws ConfigError on failure.
    static void validate_spec(uint32_t p, int m, std::vector<uint32_t> modulus) { validate(p, m, modulus); }

    uint32_t p() const { return p_; }
    int m() const { return m_; }
    /// q = p^m, saturated to UINT64_MAX when it does not fit.
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    bool same_spec(const Fq& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

    // ---- element construction ----

    FqElem zero() const { return FqElem{{}, this}; }

    FqElem one() const { return from_int(1); }

    /// Constant element from an integer (reduced mod p).
    FqElem from_int(int64_t v) const {
        int64_t r = v % static_cast<int64_t>(p_);
        if (r < 0) r += p_;
        FqElem x{{}, this};
        x.c[0] = static_cast<uint16_t>(r);
        return x;
    }

    /// The generator `a` of the extension; rejected for prime fields.
    FqElem gen() const {
        if (m_ < 2) throw ConfigError("prime field has no extension generator 'a'");
        FqElem x{{}, this};
        x.c[1] = 1;
        return x;
    }

    /// Element from an ascending digit list (length <= m, digits in [0,p)).
    FqElem from_digits(const std::vector<uint32_t>& digits) const {
        if (static_cast<int>(digits.size()) > m_) throw ConfigError("too many digits for this field");
        FqElem x{{}, this};
        for (size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] >= p_) throw ConfigError("digit out of range [0,p)");
            x.c[i] = static_cast<uint16_t>(digits[i]);
        }
        return x;
    }

    /// Integer label sum(c_i p^i); only valid when q fits in 64 bits.
    uint64_t label(const FqElem& x) const {
        uint64_t l = 0;
        for (int i = m_ - 1; i >= 0; --i) l = l * p_ + x.c[i];
        return l;
    }

    FqElem from_label(uint64_t l) const {
        FqElem x{{}, this};
        for (int i = 0; i < m_; ++i) {
            x.c[i] = static_cast<uint16_t>(l % p_);
            l /= p_;
        }
        return x;
    }

    // ---- arithmetic ----

    FqElem add(const FqElem& x, const FqElem& y) const {
        check(x, y);
        FqElem r{{}, this};
        for (int i = 0; i < m_; ++i) {
            uint32_t s = uint32_t(x.c[i]) + y.c[i];
            r.c[i] = static_cast<uint16_t>(s >= p_ ? s - p_ : s);
        }
        return r;
    }

    FqElem sub(const FqElem& x, const FqElem& y) const {
        check(x, y);
        FqElem r{{}, this};
        for (int i = 0; i < m_; ++i) {
            uint32_t s = uint32_t(x.c[i]) + p_ - y.c[i];
            r.c[i] = static_cast<uint16_t>(s >= p_ ? s - p_ : s);
        }
        return r;
    }

    FqElem neg(const FqElem& x) const {
        check(x);
        FqElem r{{}, this};
        for (int i = 0; i < m_; ++i) r.c[i] = static_cast<uint16_t>(x.c[i] == 0 ? 0 : p_ - x.c[i]);
        return r;
    }

    FqElem mul(const FqElem& x, const FqElem& y) const {
        check(x, y);
        if (has_tables_) return from_small_label(mul_tbl_[label(x) * qs_ + label(y)]);
        return mul_digits(x, y);
    }

    /// Multiplicative inverse; DivisionByZero on 0.
    FqElem inv(const FqElem& x) const {
        check(x);
        if (x.is_zero()) throw DivisionByZero("inverse of zero in F_q");
        if (has_tables_) return from_small_label(inv_tbl_[label(x)]);
        return inv_generic(x);
    }

    FqElem div(const FqElem& x, const FqElem& y) const { return mul(x, inv(y)); }

    FqElem pow(FqElem x, uint64_t e) const {
        check(x);
        FqElem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    // ---- dense coefficient kernels (used by series/poly arithmetic) ----

    /// Truncated convolution out[k] = sum_{i+j=k} x[i] y[j] for k < nout.
    void conv(FqElem* out, size_t nout, const FqElem* x, size_t nx, const FqElem* y, size_t ny) const {
        if (has_tables_) {
            conv_labels(out, nout, x, nx, y, ny);
            return;
        }
        for (size_t k = 0; k < nout; ++k) out[k] = zero();
        for (size_t i = 0; i < nx; ++i) {
            if (x[i].is_zero()) continue;
            size_t jmax = std::min(ny, nout > i ? nout - i : size_t(0));
            for (size_t j = 0; j < jmax; ++j) out[i + j] = add(out[i + j], mul(x[i], y[j]));
        }
    }

    /// First `len` coefficients of the power-series inverse of a unit
    /// (a[0] != 0); coefficients of `a` beyond na are treated as zero.
    void series_inv(FqElem* out, const FqElem* a, size_t na, size_t len) const {
        if (a == nullptr || na == 0 || a[0].is_zero()) throw DivisionByZero("series unit inversion needs a[0] != 0");
        if (has_tables_) {
            series_inv_labels(out, a, na, len);
            return;
        }
        FqElem a0i = inv(a[0]);
        if (len == 0) return;
        out[0] = a0i;
        for (size_t k = 1; k < len; ++k) {
            FqElem s = zero();
            size_t imax = std::min(k, na - 1);
            for (size_t i = 1; i <= imax; ++i) s = add(s, mul(a[i], out[k - i]));
            out[k] = neg(mul(a0i, s));
        }
    }

    // ---- string form ----

    /// Human/parser form: digits as a polynomial in `a`, descending powers,
    /// e.g. "a^2 + 2*a + 1"; plain integer for constants.
    std::string to_string(const FqElem& x) const {
        check(x);
        std::string s;
        for (int i = m_ - 1; i >= 0; --i) {
            if (x.c[i] == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0) {
                s += std::to_string(x.c[i]);
            } else {
                if (x.c[i] != 1) s += std::to_string(x.c[i]) + "*";
                s += (i == 1) ? "a" : "a^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

    /// Number of terms in the string form (controls parenthesization).
    int term_count(const FqElem& x) const {
        int t = 0;
        for (int i = 0; i < m_; ++i)
            if (x.c[i] != 0) ++t;
        return t;
    }

    void check(const FqElem& x) const {
        if (x.field == this) return;
        if (x.field == nullptr || !same_spec(*x.field)) throw FieldMismatch("element does not belong to this field");
    }

    void check(const FqElem& x, const FqElem& y) const {
        check(x);
        check(y);
    }

    Fq(const Fq&) = delete;
    Fq& operator=(const Fq&) = delete;

  private:
    Fq(uint32_t p, int m, std::vector<uint32_t> modulus) : p_(p), m_(m), modulus_(std::move(modulus)) {
        q_ = 1;
        for (int i = 0; i < m_; ++i) {
            if (q_ > UINT64_MAX / p_) {
                q_ = UINT64_MAX;
                break;
            }
            q_ *= p_;
        }
        if (q_ <= kTableLimit) build_tables();
    }

    static uint64_t smallest_prime_factor(uint64_t q) {
        for (uint64_t d = 2; d * d <= q; ++d)
            if (q % d == 0) return d;
        return q;
    }

    static void validate(uint32_t p, int m, std::vector<uint32_t>& modulus) {
        if (!detail::is_prime_u32(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
        if (p > kMaxPrime) throw ConfigError("p exceeds the 2^16 limit");
        if (m < 1 || m > kMaxDegree) throw ConfigError("extension degree m must be in [1, 8]");
        if (m == 1) {
            if (!modulus.empty() && modulus != std::vector<uint32_t>{0, 1})
                throw ConfigError("prime fields take no modulus");
            modulus = {0, 1};  // canonical a - 0 placeholder, never consulted
            return;
        }
        if (modulus.empty()) {
            modulus = default_modulus(p, m);
            if (modulus.empty())
                throw ConfigError("no built-in modulus for p=" + std::to_string(p) + ", m=" + std::to_string(m) +
                                  "; supply one explicitly");
        }
        if (static_cast<int>(modulus.size()) != m + 1) throw ConfigError("modulus must have m+1 coefficients");
        for (uint32_t c : modulus)
            if (c >= p) throw ConfigError("modulus coefficient out of range [0,p)");
        if (modulus[m] != 1) throw ConfigError("modulus must be monic");
        if (!irreducible_mod_p(p, modulus)) throw ConfigError("modulus is reducible over F_p");
    }

    /// Built-in defaults (Conway polynomials) for the documented q values.
    static std::vector<uint32_t> default_modulus(uint32_t p, int m) {
        struct Entry {
            uint32_t p;
            int m;
            std::vector<uint32_t> mod;
        };
        static const std::vector<Entry> table = {
            {2, 2, {1, 1, 1}},          {2, 3, {1, 1, 0, 1}},          {2, 4, {1, 1, 0, 0, 1}},
            {2, 5, {1, 0, 1, 0, 0, 1}}, {2, 6, {1, 1, 0, 1, 1, 0, 1}}, {3, 2, {2, 2, 1}},
            {3, 3, {1, 2, 0, 1}},       {5, 2, {2, 4, 1}},             {7, 2, {3, 6, 1}},
        };
        for (const auto& e : table)
            if (e.p == p && e.m == m) return e.mod;
        return {};
    }

    // -- polynomial arithmetic over F_p for the irreducibility test --

    using PPoly = std::vector<uint32_t>;  // ascending, may carry leading zeros

    static PPoly ppoly_mulmod(const PPoly& a, const PPoly& b, const PPoly& f, uint32_t p) {
        size_t m = f.size() - 1;
        std::vector<uint64_t> prod(2 * m - 1, 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + uint64_t(a[i]) * b[j]) % p;
        }
        for (size_t k = 2 * m - 2; k + 1 > m; --k) {
            uint64_t c = prod[k] % p;
            if (c == 0) continue;
            for (size_t i = 0; i < m; ++i) prod[k - m + i] = (prod[k - m + i] + c * (p - f[i] % p)) % p;
            prod[k] = 0;
        }
        PPoly r(m, 0);
        for (size_t i = 0; i < m; ++i) r[i] = static_cast<uint32_t>(prod[i] % p);
        return r;
    }

    /// x^(p^k) mod f by k rounds of binary exponentiation by p.
    static PPoly ppoly_frobenius(PPoly x, int k, const PPoly& f, uint32_t p) {
        for (int round = 0; round < k; ++round) {
            PPoly base = x;
            PPoly r = {1};
            uint32_t e = p;
            while (e > 0) {
                if (e & 1) r = ppoly_mulmod(r, base, f, p);
                base = ppoly_mulmod(base, base, f, p);
                e >>= 1;
            }
            x = r;
        }
        return x;
    }

    static PPoly ppoly_gcd(PPoly a, PPoly b, uint32_t p) {
        auto deg = [](const PPoly& v) {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i] != 0) return i;
            return -1;
        };
        while (deg(b) >= 0) {
            // a mod b
            int db = deg(b);
            uint64_t lc = b[db];
            // modular inverse of lc mod p by Fermat
            uint64_t lci = 1, base = lc % p, e = p - 2;
            while (e) {
                if (e & 1) lci = lci * base % p;
                base = base * base % p;
                e >>= 1;
            }
            PPoly r = a;
            for (int k = deg(r); k >= db; k = deg(r)) {
                uint64_t c = r[k] % p;
                if (c != 0) {
                    uint64_t s = c * lci % p;
                    for (int i = 0; i <= db; ++i) r[k - db + i] = static_cast<uint32_t>((r[k - db + i] + s * (p - b[i] % p)) % p);
                }
                r[k] = 0;
            }
            a = b;
            b = r;
        }
        return a;
    }

    /// Rabin's test: f of degree m is irreducible over F_p iff
    /// x^(p^m) == x mod f and gcd(x^(p^(m/l)) - x, f) = 1 for prime l | m.
    static bool irreducible_mod_p(uint32_t p, const std::vector<uint32_t>& f) {
        int m = static_cast<int>(f.size()) - 1;
        PPoly fx(f.begin(), f.end());
        PPoly x = (m == 1) ? PPoly{0} : PPoly{0, 1};
        if (m == 1) return true;
        PPoly xm = ppoly_frobenius(PPoly{0, 1}, m, fx, p);
        // x^(p^m) - x must vanish mod f
        PPoly diff = xm;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        for (uint32_t c : diff)
            if (c % p != 0) return false;
        for (int l = 2; l <= m; ++l) {
            if (m % l != 0) continue;
            bool lprime = true;
            for (int d = 2; d * d <= l; ++d)
                if (l % d == 0) lprime = false;
            if (!lprime) continue;
            PPoly xk = ppoly_frobenius(PPoly{0, 1}, m / l, fx, p);
            if (xk.size() < 2) xk.resize(2, 0);
            xk[1] = (xk[1] + p - 1) % p;
            PPoly g = ppoly_gcd(fx, xk, p);
            int dg = -1;
            for (int i = static_cast<int>(g.size()) - 1; i >= 0; --i)
                if (g[i] != 0) {
                    dg = i;
                    break;
                }
            if (dg != 0) return false;
        }
        return true;
    }

    // -- digit-path multiplication / inversion (any supported q) --

    FqElem mul_digits(const FqElem& x, const FqElem& y) const {
        std::array<uint64_t, 16> prod{};
        for (int i = 0; i < m_; ++i) {
            if (x.c[i] == 0) continue;
            for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + uint64_t(x.c[i]) * y.c[j]) % p_;
        }
        for (int k = 2 * m_ - 2; k >= m_; --k) {
            uint64_t c = prod[k] % p_;
            if (c == 0) continue;
            for (int i = 0; i < m_; ++i) prod[k - m_ + i] = (prod[k - m_ + i] + c * (p_ - modulus_[i] % p_)) % p_;
            prod[k] = 0;
        }
        FqElem r{{}, this};
        for (int i = 0; i < m_; ++i) r.c[i] = static_cast<uint16_t>(prod[i] % p_);
        return r;
    }

    /// Extended Euclid in F_p[a] modulo the defining polynomial.
    FqElem inv_generic(const FqElem& x) const {
        if (m_ == 1) {
            // Fermat: x^(p-2)
            return pow(x, p_ - 2);
        }
        using V = std::vector<uint32_t>;
        auto deg = [](const V& v) {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i] != 0) return i;
            return -1;
        };
        auto pinv = [&](uint32_t a) {
            uint64_t r = 1, b = a % p_, e = p_ - 2;
            while (e) {
                if (e & 1) r = r * b % p_;
                b = b * b % p_;
                e >>= 1;
            }
            return static_cast<uint32_t>(r);
        };
        V r0(modulus_.begin(), modulus_.end());
        V r1(m_, 0);
        for (int i = 0; i < m_; ++i) r1[i] = x.c[i];
        V s0 = {0}, s1 = {1};
        while (deg(r1) > 0) {
            int d1 = deg(r1);
            uint32_t lci = pinv(r1[d1]);
            V q(deg(r0) - d1 + 1, 0);
            V r = r0;
            for (int k = deg(r); k >= d1; k = deg(r)) {
                uint64_t c = r[k] % p_;
                if (c != 0) {
                    uint64_t s = c * lci % p_;
                    q[k - d1] = static_cast<uint32_t>(s);
                    for (int i = 0; i <= d1; ++i)
                        r[k - d1 + i] = static_cast<uint32_t>((r[k - d1 + i] + s * (p_ - r1[i] % p_)) % p_);
                }
                r[k] = 0;
            }
            // s_next = s0 - q*s1
            V qs(q.size() + s1.size(), 0);
            for (size_t i = 0; i < q.size(); ++i)
                for (size_t j = 0; j < s1.size(); ++j) qs[i + j] = static_cast<uint32_t>((qs[i + j] + uint64_t(q[i]) * s1[j]) % p_);
            V snext(std::max(s0.size(), qs.size()), 0);
            for (size_t i = 0; i < snext.size(); ++i) {
                uint64_t a = i < s0.size() ? s0[i] : 0;
                uint64_t b = i < qs.size() ? qs[i] : 0;
                snext[i] = static_cast<uint32_t>((a + p_ - b % p_) % p_);
            }
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = snext;
        }
        if (deg(r1) != 0) throw DivisionByZero("element is not invertible");  // cannot happen in a field
        uint32_t lci = pinv(r1[0]);
        FqElem out{{}, this};
        for (int i = 0; i < m_ && i < static_cast<int>(s1.size()); ++i)
            out.c[i] = static_cast<uint16_t>(uint64_t(s1[i]) * lci % p_);
        return out;
    }

    // -- lookup tables (q <= kTableLimit) --

    void build_tables() {
        qs_ = static_cast<size_t>(q_);
        digits_.resize(qs_);
        for (size_t l = 0; l < qs_; ++l) digits_[l] = from_label(l).c;
        add_tbl_.resize(qs_ * qs_);
        mul_tbl_.resize(qs_ * qs_);
        inv_tbl_.assign(qs_, 0);
        neg_tbl_.resize(qs_);
        for (size_t i = 0; i < qs_; ++i) {
            FqElem x{digits_[i], this};
            neg_tbl_[i] = static_cast<uint16_t>(label(neg(x)));
            for (size_t j = 0; j < qs_; ++j) {
                FqElem y{digits_[j], this};
                uint64_t s = label(add(x, y));
                uint64_t m = label(mul_digits(x, y));
                add_tbl_[i * qs_ + j] = static_cast<uint16_t>(s);
                mul_tbl_[i * qs_ + j] = static_cast<uint16_t>(m);
                if (m == 1) inv_tbl_[i] = static_cast<uint16_t>(j);
            }
        }
        has_tables_ = true;
    }

    FqElem from_small_label(uint16_t l) const { return FqElem{digits_[l], this}; }

    void conv_labels(FqElem* out, size_t nout, const FqElem* x, size_t nx, const FqElem* y, size_t ny) const {
        std::vector<uint16_t> lx(nx), ly(ny), lo(nout, 0);
        for (size_t i = 0; i < nx; ++i) lx[i] = static_cast<uint16_t>(label(x[i]));
        for (size_t j = 0; j < ny; ++j) ly[j] = static_cast<uint16_t>(label(y[j]));
        const uint16_t* mt = mul_tbl_.data();
        const uint16_t* at = add_tbl_.data();
        const size_t q = qs_;
        for (size_t i = 0; i < nx; ++i) {
            const size_t xi = lx[i];
            if (xi == 0) continue;
            const uint16_t* mrow = mt + xi * q;
            size_t jmax = std::min(ny, nout > i ? nout - i : size_t(0));
            uint16_t* dst = lo.data() + i;
            for (size_t j = 0; j < jmax; ++j) dst[j] = at[size_t(dst[j]) * q + mrow[ly[j]]];
        }
        for (size_t k = 0; k < nout; ++k) out[k] = from_small_label(lo[k]);
    }

    void series_inv_labels(FqElem* out, const FqElem* a, size_t na, size_t len) const {
        if (len == 0) return;
        std::vector<uint16_t> la(na), lo(len, 0);
        for (size_t i = 0; i < na; ++i) la[i] = static_cast<uint16_t>(label(a[i]));
        const uint16_t* mt = mul_tbl_.data();
        const uint16_t* at = add_tbl_.data();
        const size_t q = qs_;
        uint16_t a0i = inv_tbl_[la[0]];
        uint16_t a0i_neg = neg_tbl_[a0i];
        lo[0] = a0i;
        for (size_t k = 1; k < len; ++k) {
            uint16_t s = 0;
            size_t imax = std::min(k, na - 1);
            for (size_t i = 1; i <= imax; ++i) s = at[size_t(s) * q + mt[size_t(la[i]) * q + lo[k - i]]];
            lo[k] = mt[size_t(a0i_neg) * q + s];
        }
        for (size_t k = 0; k < len; ++k) out[k] = from_small_label(lo[k]);
    }

    uint32_t p_;
    int m_;
    std::vector<uint32_t> modulus_;
    uint64_t q_ = 0;
    size_t qs_ = 0;
    bool has_tables_ = false;
    std::vector<std::array<uint16_t, 8>> digits_;
    std::vector<uint16_t> add_tbl_, mul_tbl_, inv_tbl_, neg_tbl_;
};

// ---- element-level operators ----

inline const Fq& field_of(const FqElem& x) {
    if (x.field == nullptr) throw FieldMismatch("element has no field");
    return *x.field;
}

inline bool operator==(const FqElem& x, const FqElem& y) {
    if (x.field != y.field && (x.field == nullptr || y.field == nullptr || !x.field->same_spec(*y.field)))
        return false;
    return x.c == y.c;
}

inline bool operator!=(const FqElem& x, const FqElem& y) { return !(x == y); }

inline FqElem operator+(const FqElem& x, const FqElem& y) { return field_of(x).add(x, y); }
inline FqElem operator-(const FqElem& x, const FqElem& y) { return field_of(x).sub(x, y); }
inline FqElem operator*(const FqElem& x, const FqElem& y) { return field_of(x).mul(x, y); }
inline FqElem operator-(const FqElem& x) { return field_of(x).neg(x); }
inline FqElem inv(const FqElem& x) { return field_of(x).inv(x); }

/// Total order on elements of one field (label order); used for canonical
/// sorting of finite places.
inline bool elem_less(const FqElem& x, const FqElem& y) {
    for (int i = 7; i >= 0; --i) {
        if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
    }
    return false;
}

}  // namespace birkhoff
