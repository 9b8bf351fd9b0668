#pragma once

#include <optional>
#include <string>
#include <vector>

#include "otk/number_field.hpp"
#include "otk/subfield.hpp"

namespace otk {

struct UnitElement {
    FieldElement element;
    int norm_sign = 1;            // Nm = +1 or -1
    bool totally_positive = false;
};

// Norm criterion on integral elements; throws when x is not integral.
bool is_unit(const FieldElement& x);

// All units with integer power-basis coordinates in [-bound, bound], one
// representative per sign pair (the one positive under the largest real
// embedding), sorted by coordinates.
std::vector<UnitElement> unit_search_bounded(const FieldPtr& F, long bound);

// Fundamental unit of Q(sqrt d) for squarefree d > 1, via the continued
// fraction of sqrt d (with the half-integer generator when d = 1 mod 4).
UnitElement quadratic_fundamental_unit(long d);

// |sigma_{s+1}(u)|^2 with certified error; when a subfield certificate is
// supplied, also the exact element Nm_{F/E}(u) together with the real
// embedding of E that sigma_{s+1} restricts to.
struct DilationFactor {
    UnitElement unit;
    QInterval value;
    std::optional<FieldElement> exact_form;  // element of E
    int exact_embedding = -1;                // real embedding index of E
};

DilationFactor dilation_factor(const UnitElement& u, const Rat& eps,
                               const SubfieldCertificate* cert = nullptr);

// Exact decision of |sigma_{s+1}(u)| = 1: reciprocal minimal polynomial as
// the necessary test, then certified root matching of 1/sigma against the
// conjugate root.
struct UnimodularityCertificate {
    bool unimodular = false;
    QPoly minimal_polynomial;
    bool reciprocal = false;
    std::string detail;
};

UnimodularityCertificate is_unimodular_at_complex_place(const UnitElement& u);

struct PositiveUnitRankReport {
    int rank = 0;       // s + t - 1
    int exhibited = 0;  // certified independent totally positive units found
    std::vector<UnitElement> independent;
};

// Dirichlet rank s+t-1 plus an empirical lower bound from bounded search;
// independence is certified by interval determinants on enclosed logs
// (default enclosure width 10^-22).
PositiveUnitRankReport positive_unit_rank(const FieldPtr& F, long search_bound,
                                          const Rat& log_precision);
PositiveUnitRankReport positive_unit_rank(const FieldPtr& F, long search_bound = 10);

}  // namespace otk
