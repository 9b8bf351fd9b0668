#pragma once

#include <complex>
#include <random>

#include "otk/units.hpp"

namespace otk {

// Point of H^s x C: entries 0..s-1 have positive imaginary part, entry s is
// the free C coordinate.
struct GeomPoint {
    std::vector<std::complex<double>> z;
    int s() const { return static_cast<int>(z.size()) - 1; }
};

// sigma_1..sigma_s (real) and sigma_{s+1} of an element, in double precision
// read off certified enclosures.
struct EmbeddedElement {
    std::vector<double> real_values;
    std::complex<double> complex_value;
};

EmbeddedElement embed_element(const FieldElement& x);

struct ActionElement {
    enum class Kind { translation, rotation } kind;
    FieldElement value;
    EmbeddedElement emb;
};

ActionElement make_translation(const FieldElement& a);
ActionElement make_rotation(const UnitElement& u);  // requires totally positive

double potential(const GeomPoint& p);

using CMatrix = std::vector<std::vector<std::complex<double>>>;

// Complex Hessian of the potential: the H^s block from the product term, the
// corner entry 2, zero off-blocks.
CMatrix hessian(const GeomPoint& p);

bool is_positive_definite(const CMatrix& H);

GeomPoint act(const ActionElement& e, const GeomPoint& p);

// Im z_j log-uniform in [1e-2, 1e2], Re z_j and the C coordinate uniform in
// [-10, 10]; deterministic given the generator state.
GeomPoint sample_point(int s, std::mt19937_64& rng);

struct CheckReport {
    bool pass = true;
    double worst = 0;
    size_t worst_index = 0;
    std::string what;
};

// R_u scales the potential by its dilation factor at every sample; when a
// translation is supplied, also checks that T_a leaves the Hessian unchanged.
CheckReport check_homothety(const UnitElement& u,
                            const std::optional<FieldElement>& translation,
                            const std::vector<GeomPoint>& samples, double tol);

// composition (a,u)(b,v) = (a+ub, uv) and the commutator [T_a, R_u] = T_{(1-u)a}
CheckReport check_group_law(const FieldElement& a, const FieldElement& b,
                            const UnitElement& u, const UnitElement& v,
                            const std::vector<GeomPoint>& samples, double tol);

// rank of the flattened embedding lattice of 1, alpha, ..., alpha^(n-1);
// certified by an interval determinant.
int lattice_rank(const FieldPtr& F);

struct FixedPointReport {
    std::vector<std::complex<double>> point;  // sigma(a / (1 - u))
    double residual = 0;                      // |T_a(R_u(x)) - x|
    double max_h_imag = 0;                    // imaginary size at the real places
};

FixedPointReport check_fixed_point(const FieldElement& a, const UnitElement& u);

struct DilationRankReport {
    int rank = 0;
    bool certified = false;
    long coefficient_bound = 0;
    std::vector<std::vector<long>> relations;  // exactly verified relations
};

// Rank of the group generated by the dilation factors: exact zeros are
// removed by the unimodularity test, candidate relations are verified
// exactly, and independence is certified by interval arithmetic (continued
// fractions for pairs, exhaustive screening for triples).
DilationRankReport dilation_rank_numeric(const std::vector<UnitElement>& units,
                                         long coeff_bound = 1000000);

struct GeometrySuiteReport {
    int samples = 0;
    uint64_t seed = 0;
    double tol = 1e-9;
    double tol_tight = 1e-12;

    bool hessian_pd = false;
    int units_tested = 0;
    double homothety_worst = 0;
    bool homothety_pass = false;
    double translation_worst = 0;
    bool translation_pass = false;
    double group_worst = 0;
    bool group_pass = false;
    double fixed_point_residual = 0;
    bool fixed_point_pass = false;
    double log_constancy_worst = 0;
    bool log_constancy_pass = false;
    int lattice = 0;
    bool lattice_pass = false;
    int dilation_rank = 0;
    bool dilation_certified = false;

    bool pass() const {
        return hessian_pd && homothety_pass && translation_pass && group_pass &&
               fixed_point_pass && log_constancy_pass && lattice_pass;
    }
    std::string worst_offender() const;
};

GeometrySuiteReport run_geometry_suite(const FieldPtr& F, int samples, uint64_t seed,
                                       double tol = 1e-9, double tol_tight = 1e-12);

}  // namespace otk
