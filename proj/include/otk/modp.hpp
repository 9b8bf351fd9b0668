#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "otk/poly.hpp"

namespace otk {

// Dense polynomial over F_p for a word-sized prime p, coefficients in [0, p).
struct FpPoly {
    long p = 0;
    std::vector<long> c;  // ascending

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    long lc() const { return c.back(); }
    bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
    bool operator<(const FpPoly& o) const;  // degree, then lexicographic coeffs
};

FpPoly fp_from(const ZPoly& a, long p);
FpPoly fp_constant(long p, long v);
FpPoly fp_x(long p);

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_monic(const FpPoly& a);
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(const FpPoly& a, const FpPoly& b);  // monic
FpPoly fp_derivative(const FpPoly& a);
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& mod);

ZPoly fp_lift(const FpPoly& a);  // coefficients in [0, p)
std::string fp_to_text(const FpPoly& a);

constexpr uint64_t kDefaultFactorSeed = 20260809u;

// Complete factorization of P mod p into monic irreducibles with multiplicity;
// the product times lc(P mod p) reproduces P mod p. Throws if p | lc(P).
// Equal-degree splitting is randomized; the seed makes runs reproducible.
std::vector<std::pair<FpPoly, int>> factor_mod_p(const ZPoly& P, long p,
                                                 uint64_t seed = kDefaultFactorSeed);

bool fp_is_squarefree(const FpPoly& f);

// Sorted multiset of irreducible factor degrees of P mod p, or nullopt when
// the reduction is not squarefree (unusable as a Frobenius cycle type).
std::optional<std::vector<int>> factor_pattern_mod_p(const ZPoly& P, long p,
                                                     uint64_t seed = kDefaultFactorSeed);

bool is_prime(long n);
long next_prime(long n);  // smallest prime > n

}  // namespace otk
