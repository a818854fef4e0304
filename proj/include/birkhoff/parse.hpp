#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "birkhoff/adele.hpp"

namespace birkhoff {

/// A parsed instance file: either a local matrix over F_q((pi)) (entries
/// are Laurent polynomials in the symbol x, denoting pi) or an adelic
/// matrix (place blocks with rational entries in t).
struct Instance {
    std::shared_ptr<const Fq> field;
    int n = 0;
    bool is_adele = false;
    Mat<LaurentPoly> local;
    AdeleMat adele;
};

namespace detail {

/// Recursive-descent evaluator for entry expressions over F_q(v), where v
/// is the ambient variable ('x' locally, 't' globally, none for constants).
class ExprParser {
  public:
    ExprParser(const std::string& text, int line, int col0, const Fq* F, char var)
        : s_(text), line_(line), col0_(col0), F_(F), var_(var) {}

    RatFun parse() {
        RatFun r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input in expression");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFun expr() {
        RatFun r = term();
        for (;;) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    RatFun term() {
        RatFun r = factor();
        for (;;) {
            if (eat('*'))
                r = r * factor();
            else if (eat('/')) {
                RatFun d = factor();
                if (d.is_zero()) fail("division by zero in entry");
                r = r / d;
            } else
                return r;
        }
    }

    RatFun factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RatFun base = primary();
        if (eat('^')) {
            bool neg = eat('-');
            if (!neg) eat('+');
            long e = integer();
            if (neg && base.is_zero()) fail("zero raised to a negative power");
            RatFun r = RatFun::one(F_);
            RatFun b = neg ? base.inverse() : base;
            for (long t = 0; t < e; ++t) r = r * b;
            return r;
        }
        return base;
    }

    RatFun primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected an operand");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFun r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c >= '0' && c <= '9') return RatFun::constant(F_->from_int(integer()));
        if (c == var_) {
            ++pos_;
            return RatFun::variable(F_);
        }
        if (c == 'a') {
            ++pos_;
            if (F_->m() < 2) fail("the generator 'a' is undefined over a prime field");
            return RatFun::constant(F_->gen());
        }
        fail(std::string("unexpected character '") + c + "' in expression");
    }

    long integer() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] < '0' || s_[pos_] > '9') fail("expected an integer");
        long v = 0;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) fail("integer literal too large");
            ++pos_;
        }
        return v;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_;
    int col0_;
    const Fq* F_;
    char var_;
};

inline LaurentPoly ratfun_to_laurent(const RatFun& r, int line, int col) {
    const Fq* F = r.field();
    if (r.is_zero()) return LaurentPoly::zero(F);
    const Poly& den = r.den();
    // the denominator must be a monomial x^k (monic by normalization)
    for (int i = 0; i < den.deg(); ++i)
        if (!den.coeff(i).is_zero())
            throw ParseError("entry is not a Laurent polynomial in x", line, col);
    int k = den.deg();
    std::vector<FqElem> c = r.num().coeffs();
    return LaurentPoly::from_coeffs(F, -k, std::move(c));
}

inline FqElem parse_fq_elem(const std::string& text, int line, int col, const Fq* F) {
    RatFun r = ExprParser(text, line, col, F, '\0').parse();
    if (!r.is_poly() || r.num().deg() > 0)
        throw ParseError("expected a field constant", line, col);
    return r.num().coeff(0);
}

struct Line {
    std::string text;
    int number;
};

inline std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        size_t b = raw.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = raw.find_last_not_of(" \t\r");
        out.push_back({raw.substr(b, e - b + 1), no});
    }
    return out;
}

/// key=value scanner for the header lines ("field p=5 m=1 modulus=1,2,1").
inline bool take_kv(std::string& rest, const std::string& key, std::string& value) {
    size_t at = rest.find(key + "=");
    if (at != 0 && (at == std::string::npos || rest[at - 1] != ' ')) return false;
    size_t vstart = at + key.size() + 1;
    size_t vend = rest.find(' ', vstart);
    value = rest.substr(vstart, vend == std::string::npos ? std::string::npos : vend - vstart);
    rest.erase(at, (vend == std::string::npos ? rest.size() : vend + 1) - at);
    return true;
}

}  // namespace detail

/// Parse the textual instance grammar: a `field` header, an `n=` line,
/// then either n matrix rows (local) or `place` blocks each followed by n
/// rows (adelic). Whitespace-insensitive; comments start with '#'.
inline Instance parse_instance(const std::string& text) {
    auto lines = detail::significant_lines(text);
    size_t at = 0;
    auto need = [&](const char* what) -> const detail::Line& {
        if (at >= lines.size()) throw ParseError(std::string("expected ") + what + " before end of input",
                                                 lines.empty() ? 1 : lines.back().number + 1, 1);
        return lines[at];
    };

    // field header
    {
        const auto& ln = need("a 'field' header");
        if (ln.text.rfind("field", 0) != 0) throw ParseError("expected 'field p=<int> m=<int> [modulus=...]'", ln.number, 1);
        std::string rest = ln.text.substr(5);
        if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
        std::string pv, mv, modv;
        bool has_mod = detail::take_kv(rest, "modulus", modv);
        if (!detail::take_kv(rest, "p", pv) || !detail::take_kv(rest, "m", mv))
            throw ParseError("field header needs p= and m=", ln.number, 1);
        uint32_t p = 0;
        int m = 0;
        try {
            p = static_cast<uint32_t>(std::stoul(pv));
            m = std::stoi(mv);
        } catch (const std::exception&) {
            throw ParseError("malformed integer in field header", ln.number, 1);
        }
        std::vector<uint32_t> modulus;
        if (has_mod) {
            std::istringstream ms(modv);
            std::string tokc;
            while (std::getline(ms, tokc, ',')) {
                try {
                    modulus.push_back(static_cast<uint32_t>(std::stoul(tokc)));
                } catch (const std::exception&) {
                    throw ParseError("malformed modulus coefficient", ln.number, 1);
                }
            }
        }
        ++at;
        Instance inst;
        inst.field = Fq::make(p, m, modulus);  // ConfigError on bad specs

        // n line
        const auto& nl = need("an 'n=' line");
        if (nl.text.rfind("n=", 0) != 0) throw ParseError("expected 'n=<int>'", nl.number, 1);
        try {
            inst.n = std::stoi(nl.text.substr(2));
        } catch (const std::exception&) {
            throw ParseError("malformed n", nl.number, 1);
        }
        if (inst.n < 1 || inst.n > 64) throw ParseError("n out of range [1, 64]", nl.number, 1);
        ++at;

        const Fq* F = inst.field.get();
        std::vector<int> row_lines;
        auto read_rows = [&](char var) {
            std::vector<std::vector<RatFun>> rows;
            row_lines.clear();
            for (int r = 0; r < inst.n; ++r) {
                const auto& rl = need("a matrix row");
                std::vector<RatFun> row;
                std::string cell;
                int col = 1;
                std::istringstream rs(rl.text);
                while (std::getline(rs, cell, ';')) {
                    row.push_back(detail::ExprParser(cell, rl.number, col, F, var).parse());
                    col += static_cast<int>(cell.size()) + 1;
                }
                if (static_cast<int>(row.size()) != inst.n)
                    throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(inst.n),
                                     rl.number, 1);
                rows.push_back(std::move(row));
                row_lines.push_back(rl.number);
                ++at;
            }
            return rows;
        };

        if (at < lines.size() && lines[at].text.rfind("place", 0) == 0) {
            inst.is_adele = true;
            inst.adele = AdeleMat::identity(F, inst.n);
            while (at < lines.size()) {
                const auto& pl = lines[at];
                if (pl.text.rfind("place", 0) != 0) throw ParseError("expected a 'place' block", pl.number, 1);
                std::string spec = pl.text.substr(5);
                size_t b = spec.find_first_not_of(" \t");
                if (b == std::string::npos) throw ParseError("expected 'place inf' or 'place a=<elem>'", pl.number, 1);
                spec = spec.substr(b);
                Place v = Place::inf();
                if (spec != "inf") {
                    if (spec.rfind("a=", 0) != 0)
                        throw ParseError("expected 'place inf' or 'place a=<elem>'", pl.number, 1);
                    v = Place::finite(detail::parse_fq_elem(spec.substr(2), pl.number, 9, F));
                }
                ++at;
                auto rows = read_rows('t');
                Mat<RatFun> comp(inst.n, F, RatFun::zero(F));
                for (int i = 0; i < inst.n; ++i)
                    for (int j = 0; j < inst.n; ++j) comp.at(i, j) = rows[i][j];
                inst.adele.set_component(v, std::move(comp));  // SingularInput / ConfigError
            }
            return inst;
        }

        // local matrix in x
        auto rows = read_rows('x');
        inst.local = Mat<LaurentPoly>(inst.n, F, LaurentPoly::zero(F));
        for (int i = 0; i < inst.n; ++i)
            for (int j = 0; j < inst.n; ++j) {
                inst.local.at(i, j) = detail::ratfun_to_laurent(rows[i][j], row_lines[i], 1);
            }
        if (at < lines.size()) throw ParseError("unexpected input after the matrix", lines[at].number, 1);
        if (det(inst.local).is_zero()) throw SingularInput("matrix is singular");
        return inst;
    }
}

// ---- canonical serializers (parse_instance round-trips all of them) ----

inline std::string to_string(const FqElem& x) { return field_of(x).to_string(x); }

namespace detail {

inline std::string coeff_string(const FqElem& c) {
    const Fq& F = field_of(c);
    std::string s = F.to_string(c);
    return F.term_count(c) > 1 ? "(" + s + ")" : s;
}

}  // namespace detail

/// Laurent polynomial in the entry syntax, ascending exponents:
/// "2*x^-3 + 1 + a*x^2".
inline std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    const Fq& F = *p.field();
    std::string out;
    for (int e = p.min_exp(); e <= p.max_exp(); ++e) {
        FqElem c = p.coeff(e);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = detail::coeff_string(c);
        if (e == 0) {
            out += cs;
        } else {
            std::string xp = (e == 1) ? "x" : "x^" + std::to_string(e);
            if (c == F.one())
                out += xp;
            else
                out += cs + "*" + xp;
        }
    }
    return out;
}

inline std::string to_string(const Poly& p, char var) {
    if (p.is_zero()) return "0";
    const Fq& F = *p.field();
    std::string out;
    for (int e = 0; e <= p.deg(); ++e) {
        FqElem c = p.coeff(e);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = detail::coeff_string(c);
        if (e == 0) {
            out += cs;
        } else {
            std::string xp = (e == 1) ? std::string(1, var) : std::string(1, var) + "^" + std::to_string(e);
            if (c == F.one())
                out += xp;
            else
                out += cs + "*" + xp;
        }
    }
    return out;
}

inline std::string to_string(const RatFun& r) {
    if (r.is_poly()) return to_string(r.num(), 't');
    return "(" + to_string(r.num(), 't') + ")/(" + to_string(r.den(), 't') + ")";
}

inline std::string field_header(const Fq& F) {
    std::string s = "field p=" + std::to_string(F.p()) + " m=" + std::to_string(F.m());
    if (F.m() > 1) {
        s += " modulus=";
        for (size_t i = 0; i < F.modulus().size(); ++i) {
            if (i) s += ",";
            s += std::to_string(F.modulus()[i]);
        }
    }
    return s;
}

inline std::string serialize_instance(const Mat<LaurentPoly>& g, const std::string& comment = "") {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += field_header(*g.F) + "\n";
    out += "n=" + std::to_string(g.n) + "\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            if (j) out += " ; ";
            out += to_string(g.at(i, j));
        }
        out += "\n";
    }
    return out;
}

inline std::string serialize_instance(const AdeleMat& A, const std::string& comment = "") {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += field_header(*A.F) + "\n";
    out += "n=" + std::to_string(A.n) + "\n";
    for (const Place& v : finite_support_sorted(A)) {
        out += "place a=" + to_string(v.a) + "\n";
        Mat<RatFun> m = A.component(v);
        for (int i = 0; i < A.n; ++i) {
            for (int j = 0; j < A.n; ++j) {
                if (j) out += " ; ";
                out += to_string(m.at(i, j));
            }
            out += "\n";
        }
    }
    if (A.has_place(Place::inf())) {
        out += "place inf\n";
        Mat<RatFun> m = A.component(Place::inf());
        for (int i = 0; i < A.n; ++i) {
            for (int j = 0; j < A.n; ++j) {
                if (j) out += " ; ";
                out += to_string(m.at(i, j));
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace birkhoff
