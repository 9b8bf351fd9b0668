#include "otk/subfield.hpp"

#include <algorithm>

namespace otk {

QPoly e_reduce(const ZPoly& g, const QPoly& a) {
    if (a.degree() < g.degree()) return a;
    return divmod(a, g.to_q()).second;
}

QPoly e_mul(const ZPoly& g, const QPoly& a, const QPoly& b) {
    return e_reduce(g, a * b);
}

std::optional<std::vector<Rat>> solve_linear_exact(std::vector<std::vector<Rat>> A,
                                                   std::vector<Rat> rhs) {
    size_t rows = A.size();
    if (rows == 0) return std::vector<Rat>{};
    size_t cols = A[0].size();
    std::vector<size_t> pivot_col_of_row;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t pr = row;
        while (pr < rows && A[pr][col] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[row]);
        std::swap(rhs[pr], rhs[row]);
        Rat inv = Rat(1) / A[row][col];
        for (size_t j = col; j < cols; ++j) A[row][j] *= inv;
        rhs[row] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rat f = A[i][col];
            for (size_t j = col; j < cols; ++j) A[i][j] -= f * A[row][j];
            rhs[i] -= f * rhs[row];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    // inconsistency check
    for (size_t i = row; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i) x[pivot_col_of_row[i]] = rhs[i];
    return x;
}

namespace {

// Division of f (rational coefficients, lifted to E) by the monic quadratic
// X^2 + bX + c over E; returns (cofactor, remainder-is-zero).
std::pair<std::vector<QPoly>, bool> divide_f_by_quadratic(const ZPoly& g,
                                                          const ZPoly& f,
                                                          const QPoly& b,
                                                          const QPoly& c) {
    int n = f.degree();
    std::vector<QPoly> rem(n + 1);
    for (int i = 0; i <= n; ++i) rem[i] = QPoly::constant(Rat(f.coeff(i)));
    std::vector<QPoly> quot(n - 1);
    for (int i = n; i >= 2; --i) {
        QPoly lead = rem[i];
        quot[i - 2] = lead;
        if (lead.is_zero()) continue;
        rem[i] = QPoly();
        rem[i - 1] = rem[i - 1] - e_mul(g, lead, b);
        rem[i - 2] = rem[i - 2] - e_mul(g, lead, c);
    }
    bool zero = rem[0].is_zero() && rem[1].is_zero();
    return {std::move(quot), zero};
}

}  // namespace

SubfieldCertificate build_subfield_certificate(const FieldPtr& F,
                                               const FieldElement& gamma) {
    int n = F->degree();
    if (n % 2 != 0) throw Error("index-2 subfield needs even degree");
    int m = n / 2;
    QPoly mp = min_poly(gamma);
    if (mp.degree() != m)
        throw Error("generator has degree " + std::to_string(mp.degree()) +
                    ", expected " + std::to_string(m));
    if (!mp.is_integral())
        throw Error("generator minimal polynomial is not integral");
    ZPoly g = mp.to_z();
    if (!is_totally_real(g)) throw Error("candidate subfield is not totally real");

    // solve alpha^2 + b(gamma) alpha + c(gamma) = 0 for b, c in E
    FieldElement alpha = FieldElement::generator(F);
    FieldElement alpha2 = alpha * alpha;
    std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> rhs(n);
    FieldElement gpow = FieldElement::one(F);
    for (int j = 0; j < m; ++j) {
        FieldElement ga = gpow * alpha;
        for (int i = 0; i < n; ++i) {
            A[i][j] = ga.coords()[i];        // b_j column
            A[i][m + j] = gpow.coords()[i];  // c_j column
        }
        if (j + 1 < m) gpow = gpow * gamma;
    }
    for (int i = 0; i < n; ++i) rhs[i] = -alpha2.coords()[i];
    auto sol = solve_linear_exact(A, rhs);
    if (!sol) throw Error("alpha is not quadratic over the candidate subfield");
    std::vector<Rat> bc(sol->begin(), sol->begin() + m);
    std::vector<Rat> cc(sol->begin() + m, sol->end());
    QPoly b(std::move(bc)), c(std::move(cc));

    auto [cof, zero] = divide_f_by_quadratic(g, F->defining(), b, c);
    if (!zero) throw Error("quadratic factor does not divide the defining polynomial");

    SubfieldCertificate cert;
    cert.g = g;
    cert.generator = gamma.rep();
    cert.quad_b = b;
    cert.quad_c = c;
    cert.cofactor = std::move(cof);
    return cert;
}

bool verify_subfield_certificate(const FieldPtr& F, const SubfieldCertificate& cert) {
    int n = F->degree();
    if (n % 2 != 0) return false;
    if (cert.g.degree() != n / 2 || !cert.g.is_monic()) return false;
    if (!certify_irreducible(cert.g).irreducible) return false;
    if (!is_totally_real(cert.g)) return false;
    // g(w(alpha)) = 0 in F
    FieldElement gamma = certificate_generator(F, cert);
    FieldElement acc = FieldElement::zero(F);
    for (int i = cert.g.degree(); i >= 0; --i) {
        acc = acc * gamma + FieldElement::rational(F, Rat(cert.g.coeff(i)));
    }
    if (!acc.is_zero()) return false;
    // exact division of f by the quadratic factor over E
    auto [cof, zero] = divide_f_by_quadratic(cert.g, F->defining(), cert.quad_b,
                                             cert.quad_c);
    if (!zero) return false;
    if (cof.size() != cert.cofactor.size()) return false;
    for (size_t i = 0; i < cof.size(); ++i)
        if (!(cof[i] == cert.cofactor[i])) return false;
    // the quadratic vanishes at alpha
    FieldElement alpha = FieldElement::generator(F);
    FieldElement b_in_F = FieldElement::zero(F), c_in_F = FieldElement::zero(F);
    for (int i = cert.quad_b.degree(); i >= 0; --i)
        b_in_F = b_in_F * gamma + FieldElement::rational(F, cert.quad_b.coeff(i));
    for (int i = cert.quad_c.degree(); i >= 0; --i)
        c_in_F = c_in_F * gamma + FieldElement::rational(F, cert.quad_c.coeff(i));
    return (alpha * alpha + b_in_F * alpha + c_in_F).is_zero();
}

FieldPtr subfield_as_field(const SubfieldCertificate& cert) {
    return NumberField::create(cert.g);
}

FieldElement certificate_generator(const FieldPtr& F, const SubfieldCertificate& cert) {
    return FieldElement::from_poly(F, cert.generator);
}

FieldElement relative_norm_to_subfield(const FieldElement& x,
                                       const SubfieldCertificate& cert) {
    const ZPoly& g = cert.g;
    if (2 * g.degree() != x.field()->degree())
        throw Error("certificate does not match the field of the element");
    // write x = A + B alpha with A, B in E, reducing with
    // alpha^2 = -b alpha - c
    QPoly A, B;
    const auto& coords = x.coords();
    for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
        // (A + B alpha) * alpha = -Bc + (A - Bb) alpha
        QPoly nA = -e_mul(g, B, cert.quad_c);
        QPoly nB = A - e_mul(g, B, cert.quad_b);
        A = nA + QPoly::constant(coords[i]);
        B = nB;
    }
    // Nm = A^2 - A B b + B^2 c
    QPoly nm = e_mul(g, A, A) - e_mul(g, e_mul(g, A, B), cert.quad_b) +
               e_mul(g, e_mul(g, B, B), cert.quad_c);
    FieldPtr E = subfield_as_field(cert);
    return FieldElement::from_poly(E, nm);
}

int complex_restriction_index(const FieldPtr& F, const SubfieldCertificate& cert) {
    if (F->sig().t != 1) throw Error("complex restriction needs signature (s, 1)");
    FieldElement gamma = certificate_generator(F, cert);
    FieldPtr E = subfield_as_field(cert);
    // fixed coarse isolation of E's roots; the value interval shrinks into
    // exactly one of them (sigma_{s+1}(gamma) is an interior root of g)
    auto emb = E->embeddings(Rat(1, 1 << 10));
    Rat eps(1, 1 << 20);
    for (int round = 0; round < 60; ++round) {
        CBox val = complex_embedding_value(gamma, eps);
        for (int k = 0; k < static_cast<int>(emb.real_roots.size()); ++k) {
            if (val.re.subset_of(emb.real_roots[k])) return k;
        }
        eps /= 4096;
    }
    throw Error("could not match the complex restriction to a real embedding of E");
}

}  // namespace otk
