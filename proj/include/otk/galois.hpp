#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otk/modp.hpp"

namespace otk {

// Factor-degree multiset of P mod p; meaningful as a Frobenius cycle type
// only when the reduction is squarefree.
struct FactorPattern {
    long p = 0;
    std::vector<int> degrees;  // sorted ascending, summing to deg P
};

struct GaloisWitness {
    long p = 0;
    std::vector<int> pattern;
    std::vector<std::string> roles;  // transitive / n_minus_1_cycle / transposition
};

// Evidence that the Galois group of the splitting field is the full symmetric
// group: a transitive witness, an (n-1)-cycle witness and a transposition
// witness force S_n.
struct GaloisCertificate {
    enum class Conclusion { full_symmetric, inconclusive };
    Conclusion conclusion = Conclusion::inconclusive;
    int n = 0;
    long prime_budget = 0;
    uint64_t seed = kDefaultFactorSeed;
    std::vector<GaloisWitness> witnesses;
};

// nullopt marks a non-squarefree reduction (unusable as a cycle type).
std::optional<FactorPattern> factor_pattern(const ZPoly& P, long p,
                                            uint64_t seed = kDefaultFactorSeed);

GaloisCertificate certify_symmetric_group(const ZPoly& P, long prime_budget,
                                          uint64_t seed = kDefaultFactorSeed);

// With a full_symmetric certificate the point stabilizer S_{n-1} is maximal,
// so the field has no proper subfields. Throws on an inconclusive certificate.
bool no_proper_subfields(const GaloisCertificate& cert, int n);

bool recheck_galois(const ZPoly& P, const GaloisCertificate& cert);

}  // namespace otk
