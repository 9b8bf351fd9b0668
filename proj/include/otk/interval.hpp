#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "otk/rational.hpp"

namespace otk {

// Closed interval with exact rational endpoints. All operations are exact,
// so enclosures never lose containment; widths only grow through the
// usual dependency effect.
struct QInterval {
    Rat lo, hi;

    QInterval() : lo(0), hi(0) {}
    explicit QInterval(const Rat& point) : lo(point), hi(point) {}
    QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error("interval endpoints out of order");
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat mag() const { return std::max(abs_rat(lo), abs_rat(hi)); }

    bool contains(const Rat& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
    bool subset_of(const QInterval& o) const { return o.lo <= lo && hi <= o.hi; }

    QInterval operator-() const { return {-hi, -lo}; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }

    QInterval operator*(const QInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }

    QInterval operator+(const Rat& x) const { return {lo + x, hi + x}; }
    QInterval operator-(const Rat& x) const { return {lo - x, hi - x}; }
    QInterval operator*(const Rat& x) const {
        return x >= 0 ? QInterval{lo * x, hi * x} : QInterval{hi * x, lo * x};
    }

    QInterval square() const {
        if (lo >= 0) return {lo * lo, hi * hi};
        if (hi <= 0) return {hi * hi, lo * lo};
        return {Rat(0), std::max(lo * lo, hi * hi)};
    }

    // Requires the interval to exclude zero.
    QInterval reciprocal() const {
        if (contains_zero()) throw Error("reciprocal of interval containing zero");
        return {Rat(1) / hi, Rat(1) / lo};
    }

    static QInterval hull(const QInterval& a, const QInterval& b) {
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
};

inline QInterval operator*(const Rat& x, const QInterval& iv) { return iv * x; }

// Smallest-denominator rational inside a closed interval (Stern-Brocot walk).
Rat simplest_rational_in(const QInterval& iv);

// Determinant enclosure via interval Gaussian elimination; nullopt when some
// pivot column cannot be certified nonzero at this precision.
std::optional<QInterval> interval_det(std::vector<std::vector<QInterval>> M);

// Rectangular complex enclosure.
struct CBox {
    QInterval re, im;

    CBox() = default;
    CBox(QInterval r, QInterval i) : re(std::move(r)), im(std::move(i)) {}
    static CBox point(const Rat& r, const Rat& i) { return {QInterval(r), QInterval(i)}; }

    CBox operator+(const CBox& o) const { return {re + o.re, im + o.im}; }
    CBox operator-(const CBox& o) const { return {re - o.re, im - o.im}; }
    CBox operator*(const CBox& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CBox conj() const { return {re, -im}; }

    QInterval norm2() const { return re.square() + im.square(); }

    // Requires 0 outside the box modulus.
    CBox reciprocal() const {
        QInterval n2 = norm2();
        if (n2.contains_zero()) throw Error("reciprocal of complex box containing zero");
        QInterval inv = n2.reciprocal();
        return {re * inv, (-im) * inv};
    }

    bool disjoint(const CBox& o) const {
        return re.hi < o.re.lo || o.re.hi < re.lo || im.hi < o.im.lo || o.im.hi < im.lo;
    }
};

}  // namespace otk
