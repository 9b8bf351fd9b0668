#pragma once

#include <optional>

#include "otk/galois.hpp"
#include "otk/number_field.hpp"

namespace otk {

// Inputs for f = -15 f1 + 10 f2 + 6 f3 + 30 g: the three mod-p shapes force
// an S_2n Galois group on the splitting field.
struct MaximalFamilySpec {
    int n = 0;          // half the degree
    ZPoly f1, f2, f3;   // monic, degree 2n
    ZPoly g;            // degree <= 2n-1
};

struct MaximalConstruction {
    ZPoly f;
    FactorPattern witness2, witness3, witness5;
};

// Validates the three mod-p shapes (naming the failing polynomial and prime)
// and returns f with its congruence witnesses. The signature is not checked
// here; use search_g_for_signature or the analysis pipeline.
MaximalConstruction make_maximal(const MaximalFamilySpec& spec);

struct GSearchResult {
    ZPoly g;
    ZPoly f;
};

// Scans g with coefficients in [-bound, bound], degree <= 2n-1, for the first
// f with signature (2n-2, 1); nullopt when the box is exhausted.
std::optional<GSearchResult> search_g_for_signature(const MaximalFamilySpec& spec,
                                                    long g_coeff_bound);

// F = E(sqrt(alpha - q)) presented by a monic integer polynomial. When q has
// denominator b > 1 the generator is rescaled by b, so the returned model is
// the minimal polynomial of b*sqrt(alpha - q) over Q.
struct HalfConstruction {
    ZPoly f;               // monic integral model, degree 2n
    Rat q;                 // the chosen shift, alpha_{n-1} > q > alpha_n
    Int scale;             // generator scaling that clears the denominator of q
    ZPoly scaled_subfield; // minimal polynomial of scale^2 * alpha
};

HalfConstruction make_half(const ZPoly& E_poly, std::optional<Rat> q_opt);

// Minimal polynomial of 2 cos(2 pi / p) for an odd prime p; degree (p-1)/2.
ZPoly min_poly_cos(long p);

// Degree-n totally real irreducible polynomial from Gaussian periods of the
// cosine field of the least prime p with n | (p-1)/2.
ZPoly make_totally_real(int n);

}  // namespace otk
