#include "otk/poly.hpp"

#include <cctype>
#include <sstream>

namespace otk {

// --- rational text helpers ---------------------------------------------------

Rat parse_rat(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal: " + text);
    }
}

std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const Int& z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

namespace {

Rat simplest_positive(const Rat& a, const Rat& b) {  // 0 < a <= b
    Int ca = ceil_rat(a);
    if (Rat(ca) <= b) return Rat(ca);
    Rat fa(floor_rat(a));
    return fa + Rat(1) / simplest_positive(Rat(1) / (b - fa), Rat(1) / (a - fa));
}

}  // namespace

Rat simplest_rational_in(const QInterval& iv) {
    if (iv.lo > iv.hi) throw Error("empty interval");
    if (iv.lo <= 0 && 0 <= iv.hi) return Rat(0);
    if (iv.hi < 0) return -simplest_positive(-iv.hi, -iv.lo);
    return simplest_positive(iv.lo, iv.hi);
}

std::optional<QInterval> interval_det(std::vector<std::vector<QInterval>> M) {
    size_t n = M.size();
    QInterval det(Rat(1));
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t best = n;
        Rat best_mag(0);
        for (size_t r = col; r < n; ++r) {
            if (M[r][col].contains_zero()) continue;
            Rat mag = abs_rat(M[r][col].mid());
            if (best == n || mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best == n) return std::nullopt;
        if (best != col) {
            std::swap(M[best], M[col]);
            sign = -sign;
        }
        det = det * M[col][col];
        QInterval inv = M[col][col].reciprocal();
        for (size_t r = col + 1; r < n; ++r) {
            QInterval f = M[r][col] * inv;
            for (size_t c = col; c < n; ++c) M[r][c] = M[r][c] - f * M[col][c];
        }
    }
    return sign > 0 ? det : -det;
}

// --- ZPoly -------------------------------------------------------------------

void ZPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ZPoly::monomial(int deg, const Int& lead) {
    if (lead == 0) return {};
    std::vector<Int> c(deg + 1, Int(0));
    c[deg] = lead;
    return ZPoly(std::move(c));
}

const Int& ZPoly::lc() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

const Int& ZPoly::coeff(int i) const {
    static const Int zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

ZPoly ZPoly::operator-() const {
    std::vector<Int> c(c_);
    for (auto& v : c) v = -v;
    return ZPoly(std::move(c));
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<Int> c(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return ZPoly(std::move(c));
}

ZPoly ZPoly::operator-(const ZPoly& o) const { return *this + (-o); }

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> c(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return ZPoly(std::move(c));
}

ZPoly ZPoly::operator*(const Int& k) const {
    if (k == 0) return {};
    std::vector<Int> c(c_);
    for (auto& v : c) v *= k;
    return ZPoly(std::move(c));
}

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Int> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Int(static_cast<long>(i));
    return ZPoly(std::move(c));
}

Int ZPoly::content() const {
    Int g(0);
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

ZPoly ZPoly::primitive_part() const {
    if (is_zero()) return {};
    Int g = content();
    std::vector<Int> c(c_);
    for (auto& v : c) v /= g;
    return ZPoly(std::move(c));
}

Int ZPoly::eval(const Int& x) const {
    Int acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat ZPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

QInterval ZPoly::eval(const QInterval& x) const {
    QInterval acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

CBox ZPoly::eval(const CBox& x) const {
    CBox acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x;
        acc.re = acc.re + Rat(*it);
    }
    return acc;
}

QPoly ZPoly::to_q() const {
    std::vector<Rat> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.emplace_back(v);
    return QPoly(std::move(c));
}

// --- QPoly -------------------------------------------------------------------

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::monomial(int deg, const Rat& lead) {
    if (lead == 0) return {};
    std::vector<Rat> c(deg + 1, Rat(0));
    c[deg] = lead;
    return QPoly(std::move(c));
}

const Rat& QPoly::lc() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

const Rat& QPoly::coeff(int i) const {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

QPoly QPoly::operator-() const {
    std::vector<Rat> c(c_);
    for (auto& v : c) v = -v;
    return QPoly(std::move(c));
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return QPoly(std::move(c));
}

QPoly QPoly::operator*(const Rat& k) const {
    if (k == 0) return {};
    std::vector<Rat> c(c_);
    for (auto& v : c) v *= k;
    return QPoly(std::move(c));
}

QPoly QPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rat> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return QPoly(std::move(c));
}

QPoly QPoly::monic() const {
    if (is_zero()) return {};
    return *this * (Rat(1) / lc());
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QInterval QPoly::eval(const QInterval& x) const {
    QInterval acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + QInterval(*it);
    return acc;
}

CBox QPoly::eval(const CBox& x) const {
    CBox acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x;
        acc.re = acc.re + QInterval(*it);
    }
    return acc;
}

bool QPoly::is_integral() const {
    for (const auto& v : c_)
        if (!is_integer(v)) return false;
    return true;
}

ZPoly QPoly::to_z() const {
    std::vector<Int> c;
    c.reserve(c_.size());
    for (const auto& v : c_) {
        if (!is_integer(v)) throw Error("polynomial has non-integer coefficients");
        c.push_back(v.get_num());
    }
    return ZPoly(std::move(c));
}

std::pair<ZPoly, Int> QPoly::clear_denominators() const {
    Int d(1);
    for (const auto& v : c_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Int> c;
    c.reserve(c_.size());
    for (const auto& v : c_) {
        Rat scaled = v * Rat(d);
        c.push_back(scaled.get_num());
    }
    return {ZPoly(std::move(c)), d};
}

// --- division / gcd ----------------------------------------------------------

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rat> r(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rat> q(a.degree() - db + 1, Rat(0));
    for (int i = a.degree(); i >= db; --i) {
        if (r[i] == 0) continue;
        Rat f = r[i] / b.lc();
        q[i - db] = f;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.coeff(j);
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a reduced mod b, over Z.
static ZPoly prem(ZPoly a, const ZPoly& b) {
    int db = b.degree();
    const Int& blc = b.lc();
    int e = a.degree() - db + 1;
    while (!a.is_zero() && a.degree() >= db) {
        int shift = a.degree() - db;
        a = a * blc - (ZPoly::monomial(shift, a.lc()) * b);
        --e;
    }
    for (; e > 0; --e) a = a * blc;
    return a;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    if (a.is_zero() && b.is_zero()) throw Error("gcd of two zero polynomials");
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    ZPoly A = a.clear_denominators().first.primitive_part();
    ZPoly B = b.clear_denominators().first.primitive_part();
    if (A.degree() < B.degree()) std::swap(A, B);
    // subresultant remainder sequence on primitive parts
    Int g(1), h(1);
    while (true) {
        if (B.is_zero()) break;
        if (B.degree() == 0) {
            // nonzero constant remainder: coprime
            return QPoly::constant(Rat(1));
        }
        int d = A.degree() - B.degree();
        ZPoly R = prem(A, B);
        A = B;
        Int divisor = g;
        for (int i = 0; i < d; ++i) divisor *= h;
        if (R.is_zero()) {
            B = ZPoly();
        } else {
            std::vector<Int> c(R.coeffs());
            for (auto& v : c) v /= divisor;
            B = ZPoly(std::move(c));
        }
        g = A.lc();
        if (d > 0) {
            Int hn = g;
            for (int i = 1; i < d; ++i) hn *= g;
            for (int i = 0; i < d - 1; ++i) hn /= h;
            h = hn;
        }
    }
    return A.primitive_part().to_q().monic();
}

// --- resultant ---------------------------------------------------------------

Int resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) throw Error("resultant of zero polynomial");
    ZPoly A = a, B = b;
    int sign = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) sign = -sign;
        std::swap(A, B);
    }
    if (B.degree() == 0) {
        Int res(1);
        for (int i = 0; i < A.degree(); ++i) res *= B.lc();
        return sign * res;
    }
    Int ca = A.content(), cb = B.content();
    A = A.primitive_part();
    B = B.primitive_part();
    Int t(1);
    for (int i = 0; i < B.degree(); ++i) t *= ca;
    for (int i = 0; i < A.degree(); ++i) t *= cb;
    Int g(1), h(1);
    int s = sign;
    while (true) {
        int da = A.degree(), db = B.degree();
        int d = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        ZPoly R = prem(A, B);
        A = B;
        Int divisor = g;
        for (int i = 0; i < d; ++i) divisor *= h;
        if (R.is_zero()) {
            B = ZPoly();
        } else {
            std::vector<Int> c(R.coeffs());
            for (auto& v : c) v /= divisor;
            B = ZPoly(std::move(c));
        }
        g = A.lc();
        if (d > 0) {
            Int hn = g;
            for (int i = 1; i < d; ++i) hn *= g;
            for (int i = 0; i < d - 1; ++i) hn /= h;
            h = hn;
        }
        if (B.is_zero()) return Int(0);
        if (B.degree() == 0) break;
    }
    // final step with d = deg(A), constant B
    int d = A.degree();
    Int hf = B.lc();
    for (int i = 1; i < d; ++i) hf *= B.lc();
    for (int i = 0; i < d - 1; ++i) hf /= h;
    return s * t * hf;
}

Rat resultant(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) throw Error("resultant of zero polynomial");
    auto [A, da] = a.clear_denominators();
    auto [B, db] = b.clear_denominators();
    Rat scale(1);
    for (int i = 0; i < b.degree(); ++i) scale /= Rat(da);
    for (int i = 0; i < a.degree(); ++i) scale /= Rat(db);
    return Rat(resultant(A, B)) * scale;
}

Int discriminant(const ZPoly& p) {
    if (p.degree() < 1) throw Error("discriminant needs degree >= 1");
    if (p.degree() == 1) return Int(1);
    Int res = resultant(p, p.derivative());
    Int lead = p.lc();
    Int d = res / lead;
    int n = p.degree();
    long exp = static_cast<long>(n) * (n - 1) / 2;
    return (exp % 2 == 0) ? d : -d;
}

QPoly compose_quadratic(const ZPoly& p, const Rat& q) {
    if (p.is_zero()) throw Error("compose_quadratic of zero polynomial");
    QPoly inner({q, Rat(0), Rat(1)});  // X^2 + q
    QPoly acc;
    for (int i = p.degree(); i >= 0; --i) {
        acc = acc * inner + QPoly::constant(Rat(p.coeff(i)));
    }
    return acc;
}

QPoly squarefree_part(const QPoly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return QPoly::constant(Rat(1));
    QPoly g = poly_gcd(p, p.derivative());
    return divmod(p, g).first.monic();
}

ZPoly squarefree_part(const ZPoly& p) {
    QPoly sf = squarefree_part(p.to_q());
    return sf.clear_denominators().first.primitive_part();
}

QPoly pow(const QPoly& base, int e) {
    QPoly acc = QPoly::constant(Rat(1));
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
}

// --- text --------------------------------------------------------------------

namespace {

std::string term_text(const Int& coeff, int deg, bool first) {
    std::string out;
    Int a = coeff;
    if (a < 0) {
        out += first ? "-" : " - ";
        a = -a;
    } else if (!first) {
        out += " + ";
    }
    std::string mag = to_string(a);
    if (deg == 0) {
        out += mag;
    } else {
        if (a != 1) out += mag;
        out += "x";
        if (deg > 1) out += "^" + std::to_string(deg);
    }
    return out;
}

}  // namespace

std::string ZPoly::to_text() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (coeff(i) == 0) continue;
        out += term_text(coeff(i), i, first);
        first = false;
    }
    return out;
}

std::string QPoly::to_text() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (coeff(i) == 0) continue;
        const Rat& v = coeff(i);
        std::string piece;
        Rat a = v;
        if (a < 0) {
            piece += first ? "-" : " - ";
            a = -a;
        } else if (!first) {
            piece += " + ";
        }
        std::string mag = to_string(a);
        if (i == 0) {
            piece += mag;
        } else {
            if (a != 1) piece += mag;
            piece += "x";
            if (i > 1) piece += "^" + std::to_string(i);
        }
        out += piece;
        first = false;
    }
    return out;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
};

ZPoly parse_coeff_list(const std::string& text) {
    std::vector<Int> coeffs;
    std::string body = text.substr(1, text.rfind(']') - 1);
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw Error("empty entry in coefficient list");
        coeffs.emplace_back(cur);
        cur.clear();
    };
    for (char ch : body) {
        if (ch == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) flush();
    if (coeffs.empty()) throw Error("empty coefficient list");
    return ZPoly(std::move(coeffs));
}

}  // namespace

ZPoly parse_zpoly(const std::string& text) {
    std::string trimmed = text;
    size_t a = trimmed.find_first_not_of(" \t\n");
    if (a == std::string::npos) throw Error("empty polynomial");
    size_t b = trimmed.find_last_not_of(" \t\n");
    trimmed = trimmed.substr(a, b - a + 1);
    if (trimmed.front() == '[') {
        if (trimmed.back() != ']') throw Error("unterminated coefficient list");
        try {
            return parse_coeff_list(trimmed);
        } catch (const std::invalid_argument&) {
            throw Error("malformed coefficient list: " + text);
        }
    }

    Cursor cur{trimmed};
    ZPoly acc;
    bool any = false;
    while (!cur.done()) {
        int sign = 1;
        while (!cur.done() && (cur.peek() == '+' || cur.peek() == '-')) {
            if (cur.peek() == '-') sign = -sign;
            ++cur.i;
        }
        if (cur.done()) throw Error("dangling sign in polynomial: " + text);
        std::string digits;
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            digits += cur.s[cur.i];
            ++cur.i;
        }
        Int coeff = digits.empty() ? Int(1) : Int(digits);
        coeff *= sign;
        int deg = 0;
        bool has_var = false;
        if (!cur.done() && cur.peek() == '*') ++cur.i;
        if (!cur.done() && (cur.peek() == 'x' || cur.peek() == 'X')) {
            has_var = true;
            ++cur.i;
            if (!cur.done() && cur.peek() == '^') {
                ++cur.i;
                std::string exp;
                while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                    exp += cur.s[cur.i];
                    ++cur.i;
                }
                if (exp.empty()) throw Error("missing exponent in polynomial: " + text);
                deg = std::stoi(exp);
            } else {
                deg = 1;
            }
        }
        if (digits.empty() && !has_var)
            throw Error("unexpected character in polynomial: " + text);
        acc = acc + ZPoly::monomial(deg, coeff);
        any = true;
    }
    if (!any) throw Error("empty polynomial: " + text);
    return acc;
}

}  // namespace otk
