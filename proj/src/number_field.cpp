#include "otk/number_field.hpp"

#include <algorithm>
#include <sstream>

namespace otk {

std::shared_ptr<const NumberField> NumberField::create(const ZPoly& f) {
    if (f.degree() < 1) throw Error("number field needs degree >= 1");
    if (!f.is_monic()) throw Error("defining polynomial must be monic");
    auto irr = certify_irreducible(f);
    if (!irr.irreducible)
        throw Error("defining polynomial is reducible; factor: " + irr.factor.to_text());
    SturmChain chain(f);
    Rat B = cauchy_bound(f);
    int s = chain.count(-B, B);
    Signature sig{s, (f.degree() - s) / 2};
    return std::shared_ptr<const NumberField>(new NumberField(f, sig, std::move(irr)));
}

EmbeddingSet NumberField::embeddings(const Rat& eps) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (cache_ && cache_->precision <= eps) return *cache_;
    cache_ = refine_embeddings(f_, eps);
    return *cache_;
}

// --- FieldElement ------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rat> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw Error("element without a field");
    if (static_cast<int>(coords_.size()) != field_->degree())
        throw Error("coordinate count does not match the field degree");
}

FieldElement FieldElement::zero(FieldPtr field) {
    std::vector<Rat> c(field->degree(), Rat(0));
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::one(FieldPtr field) { return rational(std::move(field), Rat(1)); }

FieldElement FieldElement::rational(FieldPtr field, const Rat& value) {
    std::vector<Rat> c(field->degree(), Rat(0));
    c[0] = value;
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::generator(FieldPtr field) {
    if (field->degree() < 2) return rational(std::move(field), Rat(0));
    std::vector<Rat> c(field->degree(), Rat(0));
    c[1] = 1;
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::from_poly(FieldPtr field, const QPoly& rep) {
    QPoly reduced = rep;
    if (rep.degree() >= field->degree())
        reduced = divmod(rep, field->defining().to_q()).second;
    std::vector<Rat> c(field->degree(), Rat(0));
    for (int i = 0; i <= reduced.degree(); ++i) c[i] = reduced.coeff(i);
    return FieldElement(std::move(field), std::move(c));
}

bool FieldElement::is_zero() const {
    for (const auto& v : coords_)
        if (v != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (coords_[i] != 0) return false;
    return true;
}

namespace {

void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field() &&
        !(a.field()->defining() == b.field()->defining()))
        throw Error("elements of different fields");
}

}  // namespace

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c(coords_);
    for (auto& v : c) v = -v;
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*this, o);
    std::vector<Rat> c(coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
    return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return *this + (-o);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*this, o);
    QPoly prod = rep() * o.rep();
    return from_poly(field_, prod);
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error("inverting zero");
    // extended Euclid over Q[X] against the (irreducible) defining polynomial
    QPoly a = rep(), b = field_->defining().to_q();
    QPoly s0 = QPoly::constant(Rat(1)), s1;
    QPoly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if (r0.degree() != 0) throw Error("element not invertible (field arithmetic bug)");
    QPoly inv = s0 * (Rat(1) / r0.coeff(0));
    return from_poly(field_, inv);
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e < 0 ? inverse() : *this;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : e;
    FieldElement acc = one(field_);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_->defining() == o.field_->defining() && coords_ == o.coords_;
}

std::string FieldElement::to_text() const {
    std::string out = "(";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ", ";
        out += to_string(coords_[i]);
    }
    return out + ")";
}

// --- characteristic / minimal polynomial, norm, trace ------------------------

namespace {

QPoly lagrange_interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
    QPoly acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        QPoly term = QPoly::constant(ys[i]);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            Rat denom = xs[i] - xs[j];
            term = term * QPoly({-xs[j] / denom, Rat(1) / denom});
        }
        acc = acc + term;
    }
    return acc;
}

}  // namespace

QPoly char_poly(const FieldElement& x) {
    int n = x.field()->degree();
    QPoly w = x.rep();
    if (x.is_rational()) {
        // (Y - c)^n
        QPoly lin({-x.coords()[0], Rat(1)});
        return pow(lin, n);
    }
    // c_x(Y) = Res_X(f(X), Y - w(X)), recovered from values at n+1 points
    QPoly f = x.field()->defining().to_q();
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= n; ++k) {
        Rat y(k);
        QPoly b = QPoly::constant(y) - w;
        xs.push_back(y);
        ys.push_back(resultant(f, b));
    }
    QPoly c = lagrange_interpolate(xs, ys);
    if (c.degree() != n || !(c.lc() == 1))
        throw Error("characteristic polynomial interpolation failed");
    return c;
}

QPoly min_poly(const FieldElement& x) {
    QPoly c = char_poly(x);
    QPoly m = squarefree_part(c);
    int n = x.field()->degree();
    int d = m.degree();
    if (d == 0 || n % d != 0) throw Error("minimal polynomial degree bug");
    if (!(pow(m, n / d) == c))
        throw Error("characteristic polynomial is not a power of the minimal one");
    return m;
}

Rat norm(const FieldElement& x) {
    if (x.is_zero()) return Rat(0);
    return resultant(x.field()->defining().to_q(), x.rep());
}

Rat trace(const FieldElement& x) {
    // trace of the multiplication-by-x matrix in the power basis
    int n = x.field()->degree();
    Rat t(0);
    FieldElement alpha_i = FieldElement::one(x.field());
    FieldElement alpha = FieldElement::generator(x.field());
    for (int i = 0; i < n; ++i) {
        FieldElement col = x * alpha_i;
        t += col.coords()[i];
        if (i + 1 < n) alpha_i = alpha_i * alpha;
    }
    return t;
}

bool is_integral(const FieldElement& x) { return min_poly(x).is_integral(); }

bool is_totally_positive(const FieldElement& x) {
    if (x.is_zero()) throw Error("total positivity of zero is undefined");
    const auto sig = x.field()->sig();
    if (sig.s < 1) throw Error("total positivity needs a real embedding");
    QPoly w = x.rep();
    Rat eps(1, 1 << 20);
    for (int i = 0; i < sig.s; ++i) {
        for (int round = 0;; ++round) {
            if (round > 60) throw Error("sign decision failed to converge");
            QInterval iv = x.field()->embeddings(eps).real_roots[i];
            QInterval val = w.eval(iv);
            if (val.strictly_negative()) return false;
            if (val.strictly_positive()) break;
            eps /= 256;
        }
    }
    return true;
}

QInterval real_embedding_value(const FieldElement& x, int i, const Rat& eps) {
    const auto sig = x.field()->sig();
    if (i < 0 || i >= sig.s) throw Error("real embedding index out of range");
    QPoly w = x.rep();
    Rat root_eps = eps;
    for (int round = 0;; ++round) {
        if (round > 80) throw Error("embedding value refinement failed");
        QInterval iv = x.field()->embeddings(root_eps).real_roots[i];
        QInterval val = w.eval(iv);
        if (val.width() <= eps) return val;
        root_eps /= 256;
    }
}

CBox complex_embedding_value(const FieldElement& x, const Rat& eps) {
    const auto sig = x.field()->sig();
    if (sig.t < 1) throw Error("field has no complex embedding");
    QPoly w = x.rep();
    Rat root_eps = eps;
    for (int round = 0;; ++round) {
        if (round > 80) throw Error("embedding value refinement failed");
        CDisk d = x.field()->embeddings(root_eps).complex_roots[0];
        CBox val = w.eval(d.box());
        if (val.re.width() <= eps && val.im.width() <= eps) return val;
        root_eps /= 256;
    }
}

FieldElement parse_element(FieldPtr field, const std::string& text) {
    std::string body = text;
    size_t a = body.find_first_not_of(" \t");
    size_t b = body.find_last_not_of(" \t");
    if (a == std::string::npos) throw Error("empty element literal");
    body = body.substr(a, b - a + 1);
    if (body.front() != '(' || body.back() != ')')
        throw Error("element literal must look like (c0, c1, ...)");
    body = body.substr(1, body.size() - 2);
    std::vector<Rat> coords;
    std::string cur;
    std::istringstream in(body);
    while (std::getline(in, cur, ',')) coords.push_back(parse_rat(cur));
    return FieldElement(std::move(field), std::move(coords));
}

}  // namespace otk
