#pragma once

#include <string>
#include <utility>
#include <vector>

#include "otk/interval.hpp"
#include "otk/rational.hpp"

namespace otk {

class QPoly;

// Univariate polynomial with arbitrary-precision integer coefficients,
// stored ascending. The zero polynomial has an empty coefficient vector.
class ZPoly {
  public:
    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static ZPoly constant(const Int& v) { return v == 0 ? ZPoly() : ZPoly({v}); }
    static ZPoly monomial(int deg, const Int& lead = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const Int& lc() const;
    const Int& coeff(int i) const;
    const std::vector<Int>& coeffs() const { return c_; }

    ZPoly operator-() const;
    ZPoly operator+(const ZPoly& o) const;
    ZPoly operator-(const ZPoly& o) const;
    ZPoly operator*(const ZPoly& o) const;
    ZPoly operator*(const Int& k) const;
    bool operator==(const ZPoly& o) const { return c_ == o.c_; }

    ZPoly derivative() const;
    Int content() const;          // nonnegative; 0 only for the zero polynomial
    ZPoly primitive_part() const; // sign of lc preserved
    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    QInterval eval(const QInterval& x) const;
    CBox eval(const CBox& x) const;

    QPoly to_q() const;
    std::string to_text() const;

  private:
    void trim();
    std::vector<Int> c_;
};

// Univariate polynomial with rational coefficients, ascending order.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static QPoly constant(const Rat& v) { return v == 0 ? QPoly() : QPoly({v}); }
    static QPoly monomial(int deg, const Rat& lead = Rat(1));

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rat& lc() const;
    const Rat& coeff(int i) const;
    const std::vector<Rat>& coeffs() const { return c_; }

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& k) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    QPoly derivative() const;
    QPoly monic() const;
    Rat eval(const Rat& x) const;
    QInterval eval(const QInterval& x) const;
    CBox eval(const CBox& x) const;

    bool is_integral() const;     // all coefficients integers
    ZPoly to_z() const;           // requires is_integral
    // Smallest positive d with d*this integral, and the cleared polynomial.
    std::pair<ZPoly, Int> clear_denominators() const;

    std::string to_text() const;

  private:
    void trim();
    std::vector<Rat> c_;
};

// --- exact polynomial operations ------------------------------------------

// Euclidean division a = q*b + r with deg r < deg b; throws on zero divisor.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

// Monic gcd via a fraction-free subresultant remainder sequence.
QPoly poly_gcd(const QPoly& a, const QPoly& b);

// Res(a,b) = lc(a)^deg(b) * prod b(alpha) over roots alpha of a; exact.
Int resultant(const ZPoly& a, const ZPoly& b);
Rat resultant(const QPoly& a, const QPoly& b);

Int discriminant(const ZPoly& p);

// P(X^2 + q): the degree doubles.
QPoly compose_quadratic(const ZPoly& p, const Rat& q);

QPoly squarefree_part(const QPoly& p);
ZPoly squarefree_part(const ZPoly& p);

QPoly pow(const QPoly& base, int e);

// --- text formats -----------------------------------------------------------

// Accepts either an ascending coefficient list "[-2,0,0,0,1]" or an
// expression "x^4-2" with integer coefficients.
ZPoly parse_zpoly(const std::string& text);

}  // namespace otk
