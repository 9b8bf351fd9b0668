#include "otk/units.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <map>

#include "otk/parallel.hpp"

namespace otk {

bool is_unit(const FieldElement& x) {
    if (x.is_zero()) return false;
    if (!is_integral(x)) throw Error("unit test requires an integral element");
    Rat nm = norm(x);
    return nm == 1 || nm == -1;
}

namespace {

// exact sign of x under the largest real embedding
int sign_at_last_real_embedding(const FieldElement& x) {
    const auto sig = x.field()->sig();
    if (sig.s < 1) return 1;
    QPoly w = x.rep();
    Rat eps(1, 1 << 16);
    for (int round = 0; round < 60; ++round) {
        QInterval iv = x.field()->embeddings(eps).real_roots[sig.s - 1];
        QInterval val = w.eval(iv);
        if (val.strictly_positive()) return 1;
        if (val.strictly_negative()) return -1;
        eps /= 256;
    }
    throw Error("sign decision failed");
}

}  // namespace

std::vector<UnitElement> unit_search_bounded(const FieldPtr& F, long bound) {
    std::vector<UnitElement> out;
    if (bound < 1) return out;
    int n = F->degree();
    const auto sig = F->sig();

    // double-precision embedding table for the norm screen
    auto emb = F->embeddings(Rat(1, Int(1) << 48));
    std::vector<std::vector<std::complex<double>>> powers;  // [place][power]
    for (int i = 0; i < sig.s; ++i) {
        std::complex<double> r(emb.real_roots[i].mid().get_d(), 0.0);
        std::vector<std::complex<double>> row(n);
        row[0] = 1;
        for (int j = 1; j < n; ++j) row[j] = row[j - 1] * r;
        powers.push_back(std::move(row));
    }
    for (int i = 0; i < sig.t; ++i) {
        std::complex<double> r(emb.complex_roots[i].center.re.get_d(),
                               emb.complex_roots[i].center.im.get_d());
        std::vector<std::complex<double>> row(n);
        row[0] = 1;
        for (int j = 1; j < n; ++j) row[j] = row[j - 1] * r;
        powers.push_back(std::move(row));
    }

    long side = 2 * bound + 1;
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= side;

    int workers = thread_budget();
    std::vector<std::vector<std::vector<long>>> found(workers);
    size_t chunk = (total + workers - 1) / workers;
    parallel_for(workers, [&](size_t w) {
        size_t lo = w * chunk, hi = std::min(total, lo + chunk);
        std::vector<long> c(n);
        for (size_t idx = lo; idx < hi; ++idx) {
            size_t rest = idx;
            bool zero = true;
            for (int i = 0; i < n; ++i) {
                c[i] = static_cast<long>(rest % side) - bound;
                rest /= side;
                if (c[i] != 0) zero = false;
            }
            if (zero) continue;
            double log_abs = 0;
            bool degenerate = false;
            for (int place = 0; place < sig.s + sig.t; ++place) {
                std::complex<double> v = 0;
                for (int j = 0; j < n; ++j)
                    v += static_cast<double>(c[j]) * powers[place][j];
                double a = std::abs(v);
                if (a < 1e-12) {
                    degenerate = true;
                    break;
                }
                log_abs += (place < sig.s ? 1.0 : 2.0) * std::log(a);
            }
            // |Nm| is a positive integer; only |Nm| = 1 interests us
            if (!degenerate && std::abs(log_abs) > 0.4) continue;
            std::vector<Rat> coords;
            coords.reserve(n);
            for (int i = 0; i < n; ++i) coords.emplace_back(c[i]);
            FieldElement x(F, coords);
            Rat nm = norm(x);
            if (nm == 1 || nm == -1) found[w].push_back(c);
        }
    });

    std::map<std::vector<Rat>, UnitElement> dedup;
    for (auto& bucket : found) {
        for (auto& c : bucket) {
            std::vector<Rat> coords;
            coords.reserve(n);
            for (long v : c) coords.emplace_back(v);
            FieldElement x(F, std::move(coords));
            if (sig.s >= 1 && sign_at_last_real_embedding(x) < 0) x = -x;
            if (dedup.count(x.coords())) continue;
            Rat nm = norm(x);
            UnitElement u{x, nm == 1 ? 1 : -1, is_totally_positive(x)};
            dedup.emplace(x.coords(), std::move(u));
        }
    }
    for (auto& [k, u] : dedup) out.push_back(u);
    return out;
}

UnitElement quadratic_fundamental_unit(long d) {
    if (d <= 1) throw Error("need squarefree d > 1");
    for (long q = 2; q * q <= d; ++q)
        if (d % (q * q) == 0) throw Error("d is not squarefree");

    // continued fraction of sqrt(d): fundamental solution of x^2 - d y^2 = +-1
    Int a0;
    {
        Int dd(d);
        mpz_sqrt(a0.get_mpz_t(), dd.get_mpz_t());
    }
    Int m(0), den(1), a(a0);
    Int p_prev(1), p(a0), q_prev(0), q(1);
    while (true) {
        m = den * a - m;
        den = (Int(d) - m * m) / den;
        a = (a0 + m) / den;
        Int p_next = a * p + p_prev;
        Int q_next = a * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
        if (a == 2 * a0) break;
    }
    // convergent just before the period end solves x^2 - d y^2 = +-1
    Int x1 = p_prev, y1 = q_prev;

    Int x = 2 * x1, y = 2 * y1;  // in the (x + y sqrt d)/2 normal form
    if (d % 4 == 1) {
        // scan for a smaller half-integer unit: x^2 - d y^2 = +-4
        for (Int yy(1); yy <= 2 * y1 + 1; ++yy) {
            Int t = Int(d) * yy * yy;
            Int cand = t - 4;
            Int r;
            if (cand > 0 && mpz_perfect_square_p(cand.get_mpz_t())) {
                mpz_sqrt(r.get_mpz_t(), cand.get_mpz_t());
                x = r;
                y = yy;
                break;
            }
            cand = t + 4;
            if (mpz_perfect_square_p(cand.get_mpz_t())) {
                mpz_sqrt(r.get_mpz_t(), cand.get_mpz_t());
                x = r;
                y = yy;
                break;
            }
        }
    }

    auto Fd = NumberField::create(ZPoly({Int(-d), Int(0), Int(1)}));
    FieldElement u(Fd, {make_rat(x, 2), make_rat(y, 2)});
    Rat nm = norm(u);
    if (!(nm == 1 || nm == -1)) throw Error("continued fraction unit bug");
    return UnitElement{u, nm == 1 ? 1 : -1, is_totally_positive(u)};
}

DilationFactor dilation_factor(const UnitElement& u, const Rat& eps,
                               const SubfieldCertificate* cert) {
    const FieldPtr& F = u.element.field();
    if (F->sig().t != 1) throw Error("dilation factor needs signature (s, 1)");
    if (!u.totally_positive) throw Error("dilation factor needs a totally positive unit");
    QInterval value;
    {
        Rat delta = eps;
        bool done = false;
        for (int round = 0; round < 80 && !done; ++round) {
            CBox v = complex_embedding_value(u.element, delta);
            QInterval n2 = v.norm2();
            if (n2.width() <= eps) {
                value = n2;
                done = true;
            }
            delta /= 256;
        }
        if (!done) throw Error("dilation factor refinement failed");
    }
    DilationFactor out{u, value, std::nullopt, -1};
    if (cert) {
        FieldElement nm = relative_norm_to_subfield(u.element, *cert);
        int k = complex_restriction_index(F, *cert);
        QInterval check = real_embedding_value(nm, k, eps);
        // the exact form must be numerically consistent with the certified value
        bool overlap = !(check.hi < out.value.lo || out.value.hi < check.lo);
        if (!overlap) throw Error("exact dilation form disagrees with the numeric value");
        out.exact_form = nm;
        out.exact_embedding = k;
    }
    return out;
}

namespace {

// disk image of 1/z over a disk that excludes zero
CDisk invert_disk(const CDisk& d) {
    Rat c2 = d.center.norm2();
    Rat denom = c2 - d.radius * d.radius;
    if (!(denom > 0)) throw Error("disk inversion needs 0 outside the disk");
    return CDisk(CRat(d.center.re / denom, -d.center.im / denom), d.radius / denom);
}

int unique_intersection(const std::vector<CDisk>& roots, const CDisk& target) {
    int hit = -1;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (!roots[i].disjoint(target)) {
            if (hit >= 0) return -2;  // ambiguous
            hit = static_cast<int>(i);
        }
    }
    return hit;  // -1: no intersection (impossible for disks containing the value)
}

}  // namespace

UnimodularityCertificate is_unimodular_at_complex_place(const UnitElement& u) {
    const FieldPtr& F = u.element.field();
    if (F->sig().t != 1) throw Error("unimodularity test needs signature (s, 1)");
    UnimodularityCertificate cert;
    QPoly mp = min_poly(u.element);
    cert.minimal_polynomial = mp;
    if (u.element.is_rational()) {
        Rat c = u.element.coords()[0];
        if (c == 1 || c == -1) throw Error("unimodularity test excludes +-1");
        cert.unimodular = false;
        cert.reciprocal = false;
        cert.detail = "rational unit with modulus != 1";
        return cert;
    }
    int d = mp.degree();
    bool pal = true;
    for (int i = 0; i <= d; ++i)
        if (!(mp.coeff(i) == mp.coeff(d - i))) pal = false;
    cert.reciprocal = pal;
    if (!pal) {
        cert.detail = "minimal polynomial is not self-reciprocal";
        cert.unimodular = false;
        return cert;
    }
    if (!mp.is_integral()) throw Error("unit with non-integral minimal polynomial");
    ZPoly mpz_poly = mp.to_z();

    Rat eps(1, 1 << 24);
    for (int round = 0; round < 40; ++round, eps /= 4096) {
        CBox v = complex_embedding_value(u.element, eps);
        QInterval n2 = v.norm2();
        if (n2.hi < 1 || n2.lo > 1) {
            cert.unimodular = false;
            cert.detail = "certified |sigma(u)|^2 != 1 with reciprocal minimal polynomial";
            return cert;
        }
        // disk form of sigma(u)
        CRat center(v.re.mid(), v.im.mid());
        Rat radius = (v.re.width() + v.im.width()) / 2;
        CDisk sigma(center, radius);
        if (!(sigma.center.norm2() > sigma.radius * sigma.radius)) continue;

        std::vector<CDisk> roots;
        try {
            roots = isolate_all_roots(mpz_poly, eps);
        } catch (const Error&) {
            continue;
        }
        int at = unique_intersection(roots, sigma);
        int inv = unique_intersection(roots, invert_disk(sigma));
        int conj = unique_intersection(roots, CDisk(sigma.center.conj(), sigma.radius));
        if (at < 0 || inv < 0 || conj < 0) continue;
        if (inv == conj) {
            cert.unimodular = true;
            cert.detail = "1/sigma(u) and conj(sigma(u)) match the same isolated root";
            return cert;
        }
        cert.unimodular = false;
        cert.detail = "1/sigma(u) and conj(sigma(u)) are distinct roots";
        return cert;
    }
    throw Error("unimodularity decision did not converge");
}

// --- Dirichlet rank ---------------------------------------------------------

namespace {

// log |sigma_i(x)| enclosures over all s + t places
std::vector<QInterval> log_embedding_vector(const FieldElement& x, const Rat& width,
                                            mpfr_prec_t prec) {
    const auto sig = x.field()->sig();
    QPoly w = x.rep();
    std::vector<QInterval> out;
    Rat eps = width;
    for (int i = 0; i < sig.s; ++i) {
        for (int round = 0;; ++round) {
            if (round > 80) throw Error("log vector refinement failed");
            QInterval iv = x.field()->embeddings(eps).real_roots[i];
            QInterval val = w.eval(iv);
            if (val.strictly_negative()) val = -val;
            if (!val.strictly_positive()) {
                eps /= 256;
                continue;
            }
            QInterval lg = log_enclosure(val, prec);
            if (lg.width() <= width) {
                out.push_back(lg);
                break;
            }
            eps /= 256;
        }
    }
    for (int i = 0; i < sig.t; ++i) {
        for (int round = 0;; ++round) {
            if (round > 80) throw Error("log vector refinement failed");
            CDisk disk = x.field()->embeddings(eps).complex_roots[i];
            QInterval n2 = w.eval(disk.box()).norm2();
            if (!n2.strictly_positive()) {
                eps /= 256;
                continue;
            }
            QInterval lg = log_enclosure(n2, prec) * Rat(1, 2);
            if (lg.width() <= width) {
                out.push_back(lg);
                break;
            }
            eps /= 256;
        }
    }
    return out;
}

// some k x k minor over the chosen rows excludes zero
bool rows_certified_independent(const std::vector<std::vector<QInterval>>& rows) {
    size_t k = rows.size();
    size_t places = rows[0].size();
    std::vector<size_t> cols(k);
    // enumerate column subsets
    std::function<bool(size_t, size_t)> rec = [&](size_t idx, size_t from) -> bool {
        if (idx == k) {
            std::vector<std::vector<QInterval>> M;
            for (size_t r = 0; r < k; ++r) {
                std::vector<QInterval> row;
                for (size_t c = 0; c < k; ++c) row.push_back(rows[r][cols[c]]);
                M.push_back(std::move(row));
            }
            auto det = interval_det(std::move(M));
            return det && !det->contains_zero();
        }
        for (size_t c = from; c < places; ++c) {
            cols[idx] = c;
            if (rec(idx + 1, c + 1)) return true;
        }
        return false;
    };
    return rec(0, 0);
}

}  // namespace

PositiveUnitRankReport positive_unit_rank(const FieldPtr& F, long search_bound,
                                          const Rat& log_precision) {
    const auto sig = F->sig();
    if (sig.s < 1) throw Error("positive unit rank needs s >= 1");
    PositiveUnitRankReport report;
    report.rank = sig.s + sig.t - 1;

    auto units = unit_search_bounded(F, search_bound);
    std::vector<UnitElement> candidates;
    for (auto& u : units) {
        if (u.element.is_rational()) continue;  // only +-1 qualify; skip them
        if (u.totally_positive) {
            candidates.push_back(u);
        } else {
            // the square of any found unit is totally positive and spans the
            // same log direction
            FieldElement sq = u.element * u.element;
            candidates.push_back(UnitElement{sq, 1, true});
        }
    }
    // prefer small exhibits: sort by coordinate height, then lexicographically
    auto height = [](const UnitElement& u) {
        Rat h(0);
        for (const auto& c : u.element.coords()) {
            Rat a = abs_rat(c);
            if (a > h) h = a;
        }
        return h;
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const UnitElement& a, const UnitElement& b) {
                  Rat ha = height(a), hb = height(b);
                  if (ha != hb) return ha < hb;
                  return a.element.coords() < b.element.coords();
              });
    mpfr_prec_t prec = 192;

    std::vector<std::vector<QInterval>> basis_logs;
    for (auto& u : candidates) {
        if (report.exhibited >= report.rank) break;
        auto logs = log_embedding_vector(u.element, log_precision, prec);
        auto trial = basis_logs;
        trial.push_back(logs);
        if (rows_certified_independent(trial)) {
            basis_logs = std::move(trial);
            report.independent.push_back(u);
            ++report.exhibited;
        }
    }
    return report;
}

PositiveUnitRankReport positive_unit_rank(const FieldPtr& F, long search_bound) {
    Int den = 1;
    for (int i = 0; i < 22; ++i) den *= 10;
    return positive_unit_rank(F, search_bound, make_rat(1, den));
}

}  // namespace otk
