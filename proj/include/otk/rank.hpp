#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "otk/galois.hpp"
#include "otk/subfield.hpp"
#include "otk/units.hpp"

namespace otk {

// First Betti number of M(F, U_F^+); requires signature (s, 1) with s >= 1.
int betti1(const FieldPtr& F);

struct MatchingFailure {
    std::vector<std::pair<int, int>> real_pairs;  // indices into the real roots
    std::string combo;
    std::string reason;
};

// Every root matching rejected with an exact reason: no index-2 totally real
// subfield exists.
struct ExhaustionProof {
    int matchings_tried = 0;
    std::vector<MatchingFailure> failures;
};

using SubfieldOutcome = std::variant<SubfieldCertificate, ExhaustionProof>;

// Enumerates the (s-1)!! matchings of the real roots (the complex pair is
// always matched together), building candidate subfield generators from pair
// sums, products, and mixed combinations; certifies or rejects each exactly.
// Throws Undecided when a matching admits no non-degenerate combination.
SubfieldOutcome find_index2_totally_real_subfield(const FieldPtr& F);

// E = Q(u + 1/u) for a unit that is unimodular at the complex place.
SubfieldCertificate subfield_from_unimodular_unit(const UnitElement& u);

struct RankReport {
    ZPoly field;
    int s = 0, t = 0, n = 0, b1 = 0, dim_c = 0;
    enum class Case { maximal, half, undecided } kase = Case::undecided;
    std::optional<int> rank;
    enum class CertKind {
        odd_degree,
        no_proper_subfield,
        matching_exhausted,
        subfield,
        none,
    } cert_kind = CertKind::none;
    std::optional<GaloisCertificate> galois;
    std::optional<SubfieldCertificate> subfield;
    std::optional<ExhaustionProof> exhaustion;
    std::string undecided_reason;

    // advisory cross-check via bounded unit search
    bool crosscheck_ran = false;
    bool crosscheck_found_unimodular_unit = false;
    bool crosscheck_consistent = true;
};

struct ClassifyOptions {
    long prime_budget = 200;
    long crosscheck_units_bound = 0;  // 0 disables the advisory unit cross-check
};

RankReport classify(const FieldPtr& F, const ClassifyOptions& opts = {});

}  // namespace otk
