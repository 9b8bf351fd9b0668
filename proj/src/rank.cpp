#include "otk/rank.hpp"

#include <algorithm>

namespace otk {

int betti1(const FieldPtr& F) {
    const auto sig = F->sig();
    if (sig.t != 1 || sig.s < 1)
        throw Error("betti1 needs signature (s, 1) with s >= 1; got (" +
                    std::to_string(sig.s) + ", " + std::to_string(sig.t) + ")");
    return sig.s;
}

namespace {

// All perfect matchings of {0, ..., k-1}, lexicographically by the pairing of
// the smallest unmatched index.
void enumerate_matchings(int k, std::vector<int>& taken,
                         std::vector<std::pair<int, int>>& current,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    int first = -1;
    for (int i = 0; i < k; ++i)
        if (!taken[i]) {
            first = i;
            break;
        }
    if (first < 0) {
        out.push_back(current);
        return;
    }
    taken[first] = 1;
    for (int j = first + 1; j < k; ++j) {
        if (taken[j]) continue;
        taken[j] = 1;
        current.emplace_back(first, j);
        enumerate_matchings(k, taken, current, out);
        current.pop_back();
        taken[j] = 0;
    }
    taken[first] = 0;
}

struct Combo {
    std::string name;
    long c;  // gamma = product + c * sum; c < 0 encodes the pure cases
};

const std::vector<Combo> kCombos = {
    {"sum", -1}, {"product", 0},  {"mixed c=1", 1}, {"mixed c=2", 2},
    {"mixed c=3", 3}, {"mixed c=4", 4}, {"mixed c=5", 5},
};

// Candidate generator values for each pair under a combo, as exact intervals.
std::vector<QInterval> candidate_values(const EmbeddingSet& emb,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        const Combo& combo) {
    std::vector<QInterval> vals;
    for (auto& [i, j] : pairs) {
        QInterval a = emb.real_roots[i], b = emb.real_roots[j];
        QInterval sum = a + b, prod = a * b;
        if (combo.c < 0)
            vals.push_back(sum);
        else if (combo.c == 0)
            vals.push_back(prod);
        else
            vals.push_back(prod + sum * Rat(combo.c));
    }
    // the complex pair: sum = 2 Re sigma, product = |sigma|^2
    const CDisk& d = emb.complex_roots[0];
    QInterval re(d.center.re - d.radius, d.center.re + d.radius);
    QInterval sum = re * Rat(2);
    QInterval prod = d.box().norm2();
    if (combo.c < 0)
        vals.push_back(sum);
    else if (combo.c == 0)
        vals.push_back(prod);
    else
        vals.push_back(prod + sum * Rat(combo.c));
    return vals;
}

bool pairwise_disjoint(const std::vector<QInterval>& vals) {
    for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
            if (!(vals[i].hi < vals[j].lo || vals[j].hi < vals[i].lo)) return false;
    return true;
}

// product of (Y - v_k) with interval coefficients, ascending
std::vector<QInterval> expand_candidate(const std::vector<QInterval>& vals) {
    std::vector<QInterval> coeffs{QInterval(Rat(1))};
    for (const auto& v : vals) {
        std::vector<QInterval> next(coeffs.size() + 1, QInterval(Rat(0)));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = next[i + 1] + coeffs[i];
            next[i] = next[i] - coeffs[i] * v;
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

enum class RoundOutcome { integral, non_integral, unclear };

RoundOutcome round_coefficients(const std::vector<QInterval>& coeffs,
                                std::vector<Int>& out) {
    out.clear();
    for (const auto& c : coeffs) {
        Int m = round_rat(c.mid());
        Rat mr(m);
        if (c.lo > mr - Rat(1, 4) && c.hi < mr + Rat(1, 4)) {
            out.push_back(m);
            continue;
        }
        // certified distance > 1/5 from every integer
        Int fl = floor_rat(c.lo);
        Rat fl_r(fl);
        if (c.lo > fl_r + Rat(1, 5) && c.hi < fl_r + Rat(4, 5)) return RoundOutcome::non_integral;
        return RoundOutcome::unclear;
    }
    return RoundOutcome::integral;
}

// Interval Gaussian elimination; returns nullopt when a pivot cannot be
// certified nonzero at this precision.
std::optional<std::vector<QInterval>> interval_solve(
    std::vector<std::vector<QInterval>> A, std::vector<QInterval> rhs) {
    size_t n = A.size();
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t col = 0; col < n; ++col) {
        // choose the pivot with the largest midpoint magnitude among rows
        // whose pivot interval excludes zero
        size_t best = n;
        Rat best_mag(0);
        for (size_t r = col; r < n; ++r) {
            if (A[r][col].contains_zero()) continue;
            Rat mag = abs_rat(A[r][col].mid());
            if (best == n || mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best == n) return std::nullopt;
        std::swap(A[best], A[col]);
        std::swap(rhs[best], rhs[col]);
        QInterval inv = A[col][col].reciprocal();
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            if (A[r][col].contains_zero() && A[r][col].lo == 0 && A[r][col].hi == 0)
                continue;
            QInterval f = A[r][col] * inv;
            for (size_t c2 = col; c2 < n; ++c2)
                A[r][c2] = A[r][c2] - f * A[col][c2];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    std::vector<QInterval> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] * A[i][i].reciprocal();
    return x;
}

struct Reconstruction {
    enum class Status { ok, imprecise, impossible } status;
    QPoly w;
};

// Reconstruct w with gamma = w(alpha) from the matching: solve the
// Vandermonde-type system Sum_j w_j sigma_i(alpha)^j = gamma_{pair(i)}.
// A genuine matching has a rational solution with denominators bounded by
// |disc f|, so an enclosure whose simplest rational exceeds the bound is an
// exact refutation.
Reconstruction reconstruct_generator(const FieldPtr& F,
                                     const EmbeddingSet& emb,
                                     const std::vector<std::pair<int, int>>& pairs,
                                     const std::vector<QInterval>& vals,
                                     const Int& denom_bound) {
    int n = F->degree();
    int s = F->sig().s;
    // value assigned to each real root index
    std::vector<QInterval> target(s, QInterval(Rat(0)));
    for (size_t k = 0; k < pairs.size(); ++k) {
        target[pairs[k].first] = vals[k];
        target[pairs[k].second] = vals[k];
    }
    std::vector<std::vector<QInterval>> A;
    std::vector<QInterval> rhs;
    for (int i = 0; i < s; ++i) {
        std::vector<QInterval> row;
        QInterval p(Rat(1));
        for (int j = 0; j < n; ++j) {
            row.push_back(p);
            p = p * emb.real_roots[i];
        }
        A.push_back(std::move(row));
        rhs.push_back(target[i]);
    }
    // complex root: real and imaginary parts
    {
        const CDisk& d = emb.complex_roots[0];
        CBox z = d.box();
        CBox p(QInterval(Rat(1)), QInterval(Rat(0)));
        std::vector<QInterval> row_re, row_im;
        for (int j = 0; j < n; ++j) {
            row_re.push_back(p.re);
            row_im.push_back(p.im);
            p = p * z;
        }
        A.push_back(std::move(row_re));
        rhs.push_back(vals.back());
        A.push_back(std::move(row_im));
        rhs.push_back(QInterval(Rat(0)));
    }
    auto sol = interval_solve(std::move(A), std::move(rhs));
    if (!sol) return {Reconstruction::Status::imprecise, QPoly()};
    // rational reconstruction with denominator bound
    Rat width_cap = Rat(1) / Rat(denom_bound * denom_bound * 2);
    std::vector<Rat> w;
    for (auto& iv : *sol) {
        Rat r = simplest_rational_in(iv);
        if (r.get_den() > denom_bound)
            return {Reconstruction::Status::impossible, QPoly()};
        if (iv.width() >= width_cap)
            return {Reconstruction::Status::imprecise, QPoly()};
        w.push_back(r);
    }
    return {Reconstruction::Status::ok, QPoly(std::move(w))};
}

}  // namespace

SubfieldOutcome find_index2_totally_real_subfield(const FieldPtr& F) {
    int n = F->degree();
    if (n % 2 != 0) throw Error("index-2 subfield search needs even degree");
    const auto sig = F->sig();
    if (sig.t != 1) throw Error("index-2 subfield search needs signature (s, 1)");
    int s = sig.s;

    std::vector<std::vector<std::pair<int, int>>> matchings;
    {
        std::vector<int> taken(s, 0);
        std::vector<std::pair<int, int>> current;
        enumerate_matchings(s, taken, current, matchings);
    }

    // coordinates of integral elements have denominators dividing the index
    // [O_F : Z[alpha]], whose square divides |disc f|
    Int D;
    {
        Int disc = discriminant(F->defining());
        if (disc < 0) disc = -disc;
        if (disc == 0) throw Error("discriminant vanished for an irreducible polynomial");
        mpz_sqrt(D.get_mpz_t(), disc.get_mpz_t());
        D += 1;
    }

    ExhaustionProof proof;
    proof.matchings_tried = static_cast<int>(matchings.size());
    bool any_undecided = false;
    std::string undecided_note;

    for (const auto& pairs : matchings) {
        bool matching_resolved = false;
        std::vector<std::string> degenerate_combos;
        for (const auto& combo : kCombos) {
            // precision ladder for this combo
            Rat eps(1, Int(1) << 40);
            bool combo_done = false;
            for (int round = 0; round < 8 && !combo_done; ++round, eps = eps / (Int(1) << 24)) {
                EmbeddingSet emb = F->embeddings(eps);
                auto vals = candidate_values(emb, pairs, combo);
                if (!pairwise_disjoint(vals)) {
                    if (round == 7) {
                        degenerate_combos.push_back(combo.name);
                        combo_done = true;
                    }
                    continue;
                }
                auto coeffs = expand_candidate(vals);
                std::vector<Int> rounded;
                RoundOutcome ro = round_coefficients(coeffs, rounded);
                if (ro == RoundOutcome::unclear) continue;
                if (ro == RoundOutcome::non_integral) {
                    proof.failures.push_back(
                        {pairs, combo.name, "certified non-integral coefficient"});
                    matching_resolved = true;
                    combo_done = true;
                    continue;
                }
                ZPoly g(std::vector<Int>(rounded.begin(), rounded.end()));
                auto irr = certify_irreducible(g);
                if (!irr.irreducible) {
                    proof.failures.push_back(
                        {pairs, combo.name,
                         "candidate minimal polynomial is reducible (factor " +
                             irr.factor.to_text() + ")"});
                    matching_resolved = true;
                    combo_done = true;
                    continue;
                }
                auto rec = reconstruct_generator(F, emb, pairs, vals, D);
                if (rec.status == Reconstruction::Status::imprecise) continue;
                if (rec.status == Reconstruction::Status::impossible) {
                    proof.failures.push_back(
                        {pairs, combo.name,
                         "no generator with bounded denominator solves the matching"});
                    matching_resolved = true;
                    combo_done = true;
                    continue;
                }
                FieldElement gamma = FieldElement::from_poly(F, rec.w);
                // exact check g(gamma) = 0
                FieldElement acc = FieldElement::zero(F);
                for (int i = g.degree(); i >= 0; --i)
                    acc = acc * gamma + FieldElement::rational(F, Rat(g.coeff(i)));
                if (!acc.is_zero()) {
                    proof.failures.push_back(
                        {pairs, combo.name,
                         "reconstructed generator fails g(w(alpha)) = 0 mod f"});
                    matching_resolved = true;
                    combo_done = true;
                    continue;
                }
                try {
                    SubfieldCertificate cert = build_subfield_certificate(F, gamma);
                    return cert;
                } catch (const Error& e) {
                    proof.failures.push_back({pairs, combo.name, e.what()});
                    matching_resolved = true;
                    combo_done = true;
                }
            }
            if (matching_resolved) break;
        }
        if (!matching_resolved) {
            any_undecided = true;
            undecided_note = "a matching admits only degenerate generator candidates";
        }
    }
    if (any_undecided)
        throw Undecided("index-2 subfield search inconclusive: " + undecided_note);
    return proof;
}

SubfieldCertificate subfield_from_unimodular_unit(const UnitElement& u) {
    const FieldPtr& F = u.element.field();
    if (u.element.is_rational())
        throw Error("subfield construction needs a non-rational unit");
    auto cert = is_unimodular_at_complex_place(u);
    if (!cert.unimodular)
        throw Error("unit is not unimodular at the complex place");
    FieldElement gamma = u.element + u.element.inverse();
    return build_subfield_certificate(F, gamma);
}

RankReport classify(const FieldPtr& F, const ClassifyOptions& opts) {
    RankReport report;
    report.field = F->defining();
    const auto sig = F->sig();
    report.s = sig.s;
    report.t = sig.t;
    report.n = F->degree();
    if (sig.t != 1 || sig.s < 1)
        throw Error("classification needs signature (s, 1) with s >= 1; got (" +
                    std::to_string(sig.s) + ", " + std::to_string(sig.t) + ")");
    report.b1 = sig.s;
    report.dim_c = report.n - 1;

    if (report.n % 2 == 1) {
        report.kase = RankReport::Case::maximal;
        report.rank = report.b1;
        report.cert_kind = RankReport::CertKind::odd_degree;
    } else {
        auto galois = certify_symmetric_group(F->defining(), opts.prime_budget);
        if (galois.conclusion == GaloisCertificate::Conclusion::full_symmetric &&
            no_proper_subfields(galois, report.n)) {
            report.kase = RankReport::Case::maximal;
            report.rank = report.b1;
            report.cert_kind = RankReport::CertKind::no_proper_subfield;
            report.galois = std::move(galois);
        } else {
            try {
                SubfieldOutcome outcome = find_index2_totally_real_subfield(F);
                if (std::holds_alternative<SubfieldCertificate>(outcome)) {
                    report.kase = RankReport::Case::half;
                    report.rank = report.b1 / 2;
                    report.cert_kind = RankReport::CertKind::subfield;
                    report.subfield = std::get<SubfieldCertificate>(std::move(outcome));
                } else {
                    report.kase = RankReport::Case::maximal;
                    report.rank = report.b1;
                    report.cert_kind = RankReport::CertKind::matching_exhausted;
                    report.exhaustion = std::get<ExhaustionProof>(std::move(outcome));
                }
            } catch (const Undecided& e) {
                report.kase = RankReport::Case::undecided;
                report.cert_kind = RankReport::CertKind::none;
                report.undecided_reason = e.what();
            }
        }
    }

    if (opts.crosscheck_units_bound > 0) {
        report.crosscheck_ran = true;
        auto units = unit_search_bounded(F, opts.crosscheck_units_bound);
        for (const auto& u : units) {
            if (!u.totally_positive || u.element.is_rational()) continue;
            auto uc = is_unimodular_at_complex_place(u);
            if (!uc.unimodular) continue;
            report.crosscheck_found_unimodular_unit = true;
            // the paper's proof path: such a unit forces the half case
            if (report.kase != RankReport::Case::half) {
                report.crosscheck_consistent = false;
            } else {
                try {
                    auto alt = subfield_from_unimodular_unit(u);
                    if (!verify_subfield_certificate(F, alt))
                        report.crosscheck_consistent = false;
                } catch (const Error&) {
                    report.crosscheck_consistent = false;
                }
            }
            break;
        }
    }
    return report;
}

}  // namespace otk
