#pragma once

#include <vector>

#include "otk/bigfloat.hpp"
#include "otk/interval.hpp"
#include "otk/poly.hpp"

namespace otk {

// Counts of real embeddings and conjugate complex pairs; s + 2t = degree.
struct Signature {
    int s = 0;
    int t = 0;
    bool operator==(const Signature& o) const { return s == o.s && t == o.t; }
};

// Signed-remainder (Sturm) chain of the squarefree part of a polynomial.
class SturmChain {
  public:
    explicit SturmChain(const ZPoly& P);
    // Exact count of real roots of the squarefree part in the open interval
    // (a, b); requires a < b and nonzero values at both endpoints.
    int count(const Rat& a, const Rat& b) const;
    int variations(const Rat& x) const;
    const ZPoly& squarefree() const { return sqf_; }

  private:
    ZPoly sqf_;
    std::vector<ZPoly> chain_;
};

// Strict bound on the modulus of all roots: 1 + max |a_i| / |lc|.
Rat cauchy_bound(const ZPoly& P);

int sturm_count(const ZPoly& P, const Rat& a, const Rat& b);

// Isolating intervals for all real roots of the squarefree part, ascending;
// endpoints are never roots.
std::vector<QInterval> isolate_real_roots(const ZPoly& P);

// Shrinks an isolating interval (with a sign change of `sqf` across it)
// until its width is at most eps.
QInterval refine_root_interval(const ZPoly& sqf, QInterval iv, const Rat& eps);

Signature signature(const ZPoly& P);      // requires P irreducible
bool is_totally_real(const ZPoly& P);     // requires P irreducible

// All embeddings of Q[X]/(P): s real isolating intervals sorted ascending and
// t certified disks in the upper half plane, sorted by (Re, Im). Disks are
// pairwise disjoint and each contains exactly one root.
struct EmbeddingSet {
    std::vector<QInterval> real_roots;
    std::vector<CDisk> complex_roots;
    Rat precision;  // radius bound used for this refinement
};

EmbeddingSet refine_embeddings(const ZPoly& P, const Rat& eps);

// Isolates all roots of a squarefree polynomial as disjoint disks (real roots
// become zero-imaginary-center disks from Sturm intervals). Used wherever a
// a full certified root list of an auxiliary polynomial is needed.
std::vector<CDisk> isolate_all_roots(const ZPoly& P, const Rat& eps);

}  // namespace otk
