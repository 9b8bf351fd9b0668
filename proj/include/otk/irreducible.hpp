#pragma once

#include <string>
#include <vector>

#include "otk/poly.hpp"

namespace otk {

// Decision for irreducibility over Q with re-checkable evidence. On the
// reducible side `factor` is an explicit nontrivial divisor.
struct IrreducibilityCertificate {
    enum class Kind {
        eisenstein,     // Eisenstein criterion at `prime`
        mod_p,          // irreducible mod `prime`, squarefree reduction
        degree_sieve,   // factor-degree subset sums over `sieve` intersect to {0, n}
        factor_search,  // exhaustive search up to the coefficient bound found nothing
        reducible,
    };
    Kind kind = Kind::reducible;
    bool irreducible = false;
    long prime = 0;
    std::vector<std::pair<long, std::vector<int>>> sieve;  // (p, pattern) witnesses
    ZPoly factor;  // set when reducible

    std::string describe() const;
};

// Decides irreducibility of the primitive part of P over Q; deg P >= 1.
IrreducibilityCertificate certify_irreducible(const ZPoly& P);

bool is_irreducible(const ZPoly& P);

// Exact re-validation of a previously issued certificate.
bool recheck_irreducibility(const ZPoly& P, const IrreducibilityCertificate& cert);

}  // namespace otk
