#pragma once

#include <mpfr.h>

#include "otk/interval.hpp"

namespace otk {

// Exact value of an MPFR number as a rational (MPFR values are dyadic).
Rat mpfr_to_rat_exact(mpfr_srcptr x);

// Enclosure of log over a positive rational interval, via directed rounding.
QInterval log_enclosure(const QInterval& x, mpfr_prec_t prec);

// Enclosure of 2*cos(2*pi*k/p).
QInterval two_cos_2pi_enclosure(long k, long p, mpfr_prec_t prec);

// Nearest dyadic rational with denominator 2^bits.
Rat round_dyadic(const Rat& x, int bits);

long double rat_to_ld(const Rat& x);

// Complex number with exact rational parts.
struct CRat {
    Rat re, im;

    CRat() : re(0), im(0) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    CRat operator+(const CRat& o) const { return {re + o.re, im + o.im}; }
    CRat operator-(const CRat& o) const { return {re - o.re, im - o.im}; }
    CRat operator*(const CRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CRat operator/(const CRat& o) const {
        Rat n2 = o.re * o.re + o.im * o.im;
        if (n2 == 0) throw Error("complex division by zero");
        return {(re * o.re + im * o.im) / n2, (im * o.re - re * o.im) / n2};
    }
    Rat norm2() const { return re * re + im * im; }
    CRat conj() const { return {re, -im}; }
};

// Certified disk enclosure of a complex value.
struct CDisk {
    CRat center;
    Rat radius;

    CDisk() : radius(0) {}
    CDisk(CRat c, Rat r) : center(std::move(c)), radius(std::move(r)) {}

    CBox box() const {
        return {QInterval(center.re - radius, center.re + radius),
                QInterval(center.im - radius, center.im + radius)};
    }
    // strict separation: |c1 - c2| > r1 + r2, decided exactly
    bool disjoint(const CDisk& o) const {
        Rat dx = center.re - o.center.re, dy = center.im - o.center.im;
        Rat rr = radius + o.radius;
        return dx * dx + dy * dy > rr * rr;
    }
    bool strictly_above_axis() const { return center.im - radius > 0; }
};

}  // namespace otk
