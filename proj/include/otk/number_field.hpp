#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "otk/irreducible.hpp"
#include "otk/poly.hpp"
#include "otk/roots.hpp"

namespace otk {

// F = Q[X]/(f) for monic irreducible integer f. Embeddings are refined
// lazily and cached; the cache is the only mutable state (mutex-guarded).
class NumberField : public std::enable_shared_from_this<NumberField> {
  public:
    static std::shared_ptr<const NumberField> create(const ZPoly& f);

    const ZPoly& defining() const { return f_; }
    int degree() const { return n_; }
    Signature sig() const { return sig_; }
    const IrreducibilityCertificate& irreducibility() const { return irr_; }

    // Embeddings with radius at most eps; refines and caches monotonically.
    EmbeddingSet embeddings(const Rat& eps) const;

  private:
    NumberField(ZPoly f, Signature sig, IrreducibilityCertificate irr)
        : f_(std::move(f)), n_(f_.degree()), sig_(sig), irr_(std::move(irr)) {}

    ZPoly f_;
    int n_;
    Signature sig_;
    IrreducibilityCertificate irr_;
    mutable std::mutex mu_;
    mutable std::optional<EmbeddingSet> cache_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

// Element of F in the power basis 1, alpha, ..., alpha^(n-1).
class FieldElement {
  public:
    FieldElement(FieldPtr field, std::vector<Rat> coords);
    static FieldElement zero(FieldPtr field);
    static FieldElement one(FieldPtr field);
    static FieldElement rational(FieldPtr field, const Rat& value);
    static FieldElement generator(FieldPtr field);
    static FieldElement from_poly(FieldPtr field, const QPoly& rep);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return coords_; }
    QPoly rep() const { return QPoly(coords_); }

    bool is_zero() const;
    bool is_rational() const;

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(long e) const;  // negative exponents via the inverse
    bool operator==(const FieldElement& o) const;

    std::string to_text() const;  // "(c0, c1, ...)"

  private:
    FieldPtr field_;
    std::vector<Rat> coords_;
};

QPoly char_poly(const FieldElement& x);
QPoly min_poly(const FieldElement& x);
Rat norm(const FieldElement& x);
Rat trace(const FieldElement& x);
bool is_integral(const FieldElement& x);  // minimal polynomial in Z[X]

// Sign decision under every real embedding; requires s >= 1 and x != 0.
bool is_totally_positive(const FieldElement& x);

// Certified value of x under the i-th real embedding (0-based, ascending).
QInterval real_embedding_value(const FieldElement& x, int i, const Rat& eps);
// Certified value under sigma_{s+1} (first upper-half-plane embedding).
CBox complex_embedding_value(const FieldElement& x, const Rat& eps);

// Parses "(c0, c1, ...)" with rational entries.
FieldElement parse_element(FieldPtr field, const std::string& text);

}  // namespace otk
