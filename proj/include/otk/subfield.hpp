#pragma once

#include <optional>

#include "otk/number_field.hpp"

namespace otk {

// Evidence that F has the index-2 totally real subfield E = Q[Y]/(g):
// gamma = generator(alpha) lies in F with minimal polynomial g, and f factors
// over E with the monic quadratic X^2 + b(Y) X + c(Y) vanishing at alpha.
// All parts re-verify by exact arithmetic.
struct SubfieldCertificate {
    ZPoly g;                      // monic, irreducible, totally real, degree n/2
    QPoly generator;              // w with gamma = w(alpha)
    QPoly quad_b, quad_c;         // E-elements, degree < n/2 in Y
    std::vector<QPoly> cofactor;  // H with f = (X^2 + bX + c) H over E, ascending in X
};

// Arithmetic in E = Q[Y]/(g); elements are polynomials of degree < deg g.
QPoly e_reduce(const ZPoly& g, const QPoly& a);
QPoly e_mul(const ZPoly& g, const QPoly& a, const QPoly& b);

// Builds the certificate from a candidate generator; throws with the failing
// condition when gamma does not generate an index-2 totally real subfield.
SubfieldCertificate build_subfield_certificate(const FieldPtr& F,
                                               const FieldElement& gamma);

// Full exact re-validation against the field.
bool verify_subfield_certificate(const FieldPtr& F, const SubfieldCertificate& cert);

FieldPtr subfield_as_field(const SubfieldCertificate& cert);

// gamma as an element of F.
FieldElement certificate_generator(const FieldPtr& F, const SubfieldCertificate& cert);

// Nm_{F/E}(x) = x tau(x) where tau is the E-automorphism sending alpha to the
// other root of the quadratic factor; returned in the power basis of E.
FieldElement relative_norm_to_subfield(const FieldElement& x,
                                       const SubfieldCertificate& cert);

// Index (0-based, ascending) of the real embedding of E that sigma_{s+1} of F
// restricts to; needs signature (s, 1).
int complex_restriction_index(const FieldPtr& F, const SubfieldCertificate& cert);

// Exact rational linear solve (Gaussian elimination); nullopt if inconsistent.
// The system may be overdetermined; any exact solution is returned.
std::optional<std::vector<Rat>> solve_linear_exact(
    std::vector<std::vector<Rat>> A, std::vector<Rat> rhs);

}  // namespace otk
