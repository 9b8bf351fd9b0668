#include "otk/roots.hpp"

#include <algorithm>
#include <complex>

#include "otk/irreducible.hpp"

namespace otk {

// --- mpfr helpers -------------------------------------------------------------

Rat mpfr_to_rat_exact(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rat(0);
    if (!mpfr_number_p(x)) throw Error("non-finite value in exact conversion");
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rat r(m);
    if (e >= 0) {
        Int p(1);
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
        r *= Rat(p);
    } else {
        Int p(1);
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), -e);
        r /= Rat(p);
    }
    return r;
}

QInterval log_enclosure(const QInterval& x, mpfr_prec_t prec) {
    if (!(x.lo > 0)) throw Error("log enclosure needs a positive interval");
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, x.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_set_q(hi, x.hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi, hi, MPFR_RNDU);
    QInterval out{mpfr_to_rat_exact(lo), mpfr_to_rat_exact(hi)};
    mpfr_clear(lo);
    mpfr_clear(hi);
    return out;
}

QInterval two_cos_2pi_enclosure(long k, long p, mpfr_prec_t prec) {
    mpfr_t pi, ang_lo, ang_hi, lo, hi;
    mpfr_init2(pi, prec);
    mpfr_init2(ang_lo, prec);
    mpfr_init2(ang_hi, prec);
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_const_pi(pi, MPFR_RNDD);
    mpfr_mul_si(ang_lo, pi, 2 * k, MPFR_RNDD);
    mpfr_div_si(ang_lo, ang_lo, p, MPFR_RNDD);
    mpfr_const_pi(pi, MPFR_RNDU);
    mpfr_mul_si(ang_hi, pi, 2 * k, MPFR_RNDU);
    mpfr_div_si(ang_hi, ang_hi, p, MPFR_RNDU);
    mpfr_cos(lo, ang_lo, MPFR_RNDD);
    mpfr_cos(hi, ang_hi, MPFR_RNDU);
    Rat a = mpfr_to_rat_exact(lo), b = mpfr_to_rat_exact(hi);
    // the true angle lies between the rounded angles; cos is 1-Lipschitz, so
    // the angle enclosure width bounds the value deviation
    Rat slack = mpfr_to_rat_exact(ang_hi) - mpfr_to_rat_exact(ang_lo);
    if (slack < 0) slack = -slack;
    mpfr_clear(pi);
    mpfr_clear(ang_lo);
    mpfr_clear(ang_hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    QInterval cosiv{std::min(a, b) - slack, std::max(a, b) + slack};
    return cosiv * Rat(2);
}

Rat round_dyadic(const Rat& x, int bits) {
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Int m = round_rat(x * Rat(scale));
    return make_rat(m, scale);
}

long double rat_to_ld(const Rat& x) {
    mpfr_t t;
    mpfr_init2(t, 80);
    mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
    long double out = mpfr_get_ld(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

// --- Sturm machinery ------------------------------------------------------------

SturmChain::SturmChain(const ZPoly& P) {
    if (P.is_zero()) throw Error("Sturm chain of zero polynomial");
    sqf_ = squarefree_part(P);
    chain_.push_back(sqf_);
    ZPoly d = sqf_.derivative();
    if (!d.is_zero()) {
        chain_.push_back(d.primitive_part());
        while (true) {
            const ZPoly& a = chain_[chain_.size() - 2];
            const ZPoly& b = chain_.back();
            if (b.degree() == 0) break;
            // negative pseudo-remainder, normalized to primitive with the
            // sign flip preserved (positive scaling keeps sign sequences)
            ZPoly r = a;
            {
                // use rational division then clear denominators
                auto [q, rem] = divmod(a.to_q(), b.to_q());
                (void)q;
                if (rem.is_zero()) break;  // squarefree input: cannot happen
                auto [num, den] = rem.clear_denominators();
                (void)den;
                r = -num.primitive_part();
            }
            chain_.push_back(r);
        }
    }
}

int SturmChain::variations(const Rat& x) const {
    int var = 0, last = 0;
    for (const ZPoly& f : chain_) {
        Rat v = f.eval(x);
        int s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int SturmChain::count(const Rat& a, const Rat& b) const {
    if (!(a < b)) throw Error("sturm_count needs a < b");
    if (sqf_.eval(a) == 0 || sqf_.eval(b) == 0)
        throw Error("sturm_count endpoint is a root; perturb the endpoint");
    return variations(a) - variations(b);
}

Rat cauchy_bound(const ZPoly& P) {
    if (P.is_zero()) throw Error("root bound of zero polynomial");
    Rat mx(0);
    for (int i = 0; i < P.degree(); ++i) {
        Rat a = abs_rat(Rat(P.coeff(i)));
        if (a > mx) mx = a;
    }
    Rat lead = abs_rat(Rat(P.lc()));
    return Rat(1) + mx / lead;
}

int sturm_count(const ZPoly& P, const Rat& a, const Rat& b) {
    return SturmChain(P).count(a, b);
}

namespace {

// Midpoint-like interior point with nonzero polynomial value; the polynomial
// has finitely many roots, so one of the 16ths works.
Rat split_point(const ZPoly& f, const Rat& a, const Rat& b) {
    for (int k : {8, 7, 9, 5, 11, 3, 13, 1, 15, 6, 10, 4, 12, 2, 14}) {
        Rat m = a + (b - a) * Rat(k, 16);
        if (f.eval(m) != 0) return m;
    }
    throw Error("no admissible split point (degree exceeds the grid)");
}

}  // namespace

std::vector<QInterval> isolate_real_roots(const ZPoly& P) {
    SturmChain chain(P);
    const ZPoly& f = chain.squarefree();
    if (f.degree() == 0) return {};
    Rat B = cauchy_bound(f);
    std::vector<QInterval> done;
    std::vector<QInterval> work;
    work.emplace_back(-B, B);
    while (!work.empty()) {
        QInterval iv = work.back();
        work.pop_back();
        int c = chain.count(iv.lo, iv.hi);
        if (c == 0) continue;
        if (c == 1) {
            done.push_back(iv);
            continue;
        }
        Rat m = split_point(f, iv.lo, iv.hi);
        work.emplace_back(iv.lo, m);
        work.emplace_back(m, iv.hi);
    }
    std::sort(done.begin(), done.end(),
              [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
    return done;
}

QInterval refine_root_interval(const ZPoly& sqf, QInterval iv, const Rat& eps) {
    Rat va = sqf.eval(iv.lo);
    Rat vb = sqf.eval(iv.hi);
    if (va == 0 || vb == 0) throw Error("refine_root_interval endpoint is a root");
    if ((va > 0) == (vb > 0))
        throw Error("refine_root_interval needs a sign change");
    while (iv.width() > eps) {
        Rat m = split_point(sqf, iv.lo, iv.hi);
        Rat vm = sqf.eval(m);
        if ((vm > 0) == (va > 0)) {
            iv.lo = m;
            va = vm;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

Signature signature(const ZPoly& P) {
    auto cert = certify_irreducible(P);
    if (!cert.irreducible)
        throw Error("signature requires an irreducible polynomial; factor: " +
                    cert.factor.to_text());
    SturmChain chain(P);
    Rat B = cauchy_bound(P);
    int s = chain.count(-B, B);
    return Signature{s, (P.degree() - s) / 2};
}

bool is_totally_real(const ZPoly& P) { return signature(P).t == 0; }

// --- complex embeddings ---------------------------------------------------------

namespace {

// Durand-Kerner in double precision for starting approximations.
std::vector<std::complex<double>> dk_roots(const ZPoly& P, int iters, double phase) {
    int n = P.degree();
    std::vector<std::complex<double>> c(n + 1);
    double lead = P.lc().get_d();
    for (int i = 0; i <= n; ++i) c[i] = P.coeff(i).get_d() / lead;
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i) {
        double ang = 2 * 3.14159265358979323846 * i / n + phase;
        z[i] = std::polar(radius * 0.7, ang);
    }
    for (int iter = 0; iter < iters; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> num = eval(z[i]);
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0) continue;
            std::complex<double> step = num / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

CRat eval_crat(const ZPoly& P, const CRat& z) {
    CRat acc;
    for (int i = P.degree(); i >= 0; --i) {
        acc = acc * z;
        acc.re += Rat(P.coeff(i));
    }
    return acc;
}

// Newton iteration on exact rationals, rounding to dyadics each step.
CRat newton_polish(const ZPoly& P, const ZPoly& dP, CRat z, int bits, int iters) {
    for (int k = 0; k < iters; ++k) {
        CRat fv = eval_crat(P, z);
        if (fv.re == 0 && fv.im == 0) return z;
        CRat dv = eval_crat(dP, z);
        if (dv.re == 0 && dv.im == 0) throw Error("Newton hit a critical point");
        CRat step = fv / dv;
        z = z - step;
        z.re = round_dyadic(z.re, bits);
        z.im = round_dyadic(z.im, bits);
        // quadratic convergence: stop once the step is far below the rounding
        Rat s2 = step.norm2();
        Rat tol = Rat(1);
        Int denom(1);
        mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), 2 * bits + 8);
        tol /= Rat(denom);
        if (s2 < tol) break;
    }
    return z;
}

// Certified inclusion radius: the disk of radius rho around z contains at
// least one root of P whenever rho >= n |P(z)| / |P'(z)|; rho is checked by
// the exact inequality rho^2 |P'(z)|^2 >= n^2 |P(z)|^2.
Rat certified_radius(const ZPoly& P, const ZPoly& dP, const CRat& z) {
    Rat a = eval_crat(P, z).norm2();
    Rat b = eval_crat(dP, z).norm2();
    if (b == 0) throw Error("derivative vanished during certification");
    long n = P.degree();
    Rat target = a * Rat(n) * Rat(n) / b;  // rho^2 must be >= target
    if (target == 0) return Rat(0);
    Rat rho(1);
    while (rho * rho < target) rho *= 2;
    while ((rho / 2) * (rho / 2) >= target) rho /= 2;
    return rho;
}

struct Isolation {
    std::vector<QInterval> real_intervals;
    std::vector<CDisk> uhp_disks;  // sorted by (Re, Im)
};

// Shared worker: certified real intervals plus certified UHP disks, with all
// implied disks (real diameters, UHP, mirrored LHP) pairwise disjoint.
Isolation isolate_squarefree(const ZPoly& P, const Rat& eps) {
    int n = P.degree();
    Isolation out;
    auto isolated = isolate_real_roots(P);
    int s = static_cast<int>(isolated.size());
    for (auto& iv : isolated)
        out.real_intervals.push_back(refine_root_interval(P, iv, eps));
    int t = (n - s) / 2;
    if (s + 2 * t != n)
        throw Error("real root count does not match degree parity");
    // adjacent isolating intervals may share an endpoint; shrink until the
    // diameter disks are strictly separated
    Rat real_sep_eps = eps;
    for (int round = 0; round < 60; ++round) {
        bool separated = true;
        for (size_t i = 0; i + 1 < out.real_intervals.size(); ++i)
            if (!(out.real_intervals[i].hi < out.real_intervals[i + 1].lo))
                separated = false;
        if (separated) break;
        real_sep_eps /= 16;
        for (auto& iv : out.real_intervals)
            iv = refine_root_interval(P, iv, real_sep_eps);
        if (round == 59) throw Error("real root separation failed");
    }
    if (t == 0) return out;

    ZPoly dP = P.derivative();
    int bits = 64;
    {
        Rat e = eps;
        while (e < 1) {
            e *= 2;
            ++bits;
        }
        bits += 16;
    }
    Rat real_eps = eps;
    for (int attempt = 0; attempt < 14; ++attempt, bits *= 2) {
        auto start =
            dk_roots(P, 600 * (attempt + 1), 0.4 + 0.17 * attempt);
        std::vector<std::complex<double>> uhp;
        for (auto& z : start)
            if (z.imag() > 1e-9) uhp.push_back(z);
        if (static_cast<int>(uhp.size()) != t) continue;

        bool ok = true;
        std::vector<CDisk> disks;
        for (auto& z0 : uhp) {
            CRat z(round_dyadic(Rat(z0.real()), 53), round_dyadic(Rat(z0.imag()), 53));
            try {
                z = newton_polish(P, dP, z, bits, 120);
                Rat rho = certified_radius(P, dP, z);
                if (!(rho <= eps) || !(z.im - rho > 0)) ok = false;
                disks.emplace_back(z, rho);
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) break;
        }
        if (ok) {
            // pairwise disjoint including conjugate mirrors
            for (size_t i = 0; i < disks.size() && ok; ++i) {
                for (size_t j = 0; j < disks.size() && ok; ++j) {
                    if (i != j && !disks[i].disjoint(disks[j])) ok = false;
                    CDisk mirror(disks[j].center.conj(), disks[j].radius);
                    if (!disks[i].disjoint(mirror)) ok = false;
                }
            }
        }
        if (ok) {
            // complex disks must stay clear of the real root disks
            for (int shrink = 0; shrink < 60 && ok; ++shrink) {
                bool clear = true;
                for (auto& iv : out.real_intervals) {
                    CDisk rdisk(CRat(iv.mid(), Rat(0)), iv.width() / 2);
                    for (auto& d : disks)
                        if (!d.disjoint(rdisk)) clear = false;
                }
                if (clear) break;
                real_eps /= 16;
                for (auto& iv : out.real_intervals)
                    iv = refine_root_interval(P, iv, real_eps);
                if (shrink == 59) ok = false;
            }
        }
        if (!ok) continue;
        std::sort(disks.begin(), disks.end(), [](const CDisk& a, const CDisk& b) {
            if (a.center.re + a.radius < b.center.re - b.radius) return true;
            if (b.center.re + b.radius < a.center.re - a.radius) return false;
            if (a.center.re != b.center.re) return a.center.re < b.center.re;
            return a.center.im < b.center.im;
        });
        out.uhp_disks = std::move(disks);
        return out;
    }
    throw Error("complex root isolation failed to certify");
}

}  // namespace

EmbeddingSet refine_embeddings(const ZPoly& P, const Rat& eps) {
    if (!(eps > 0)) throw Error("refine_embeddings needs eps > 0");
    auto cert = certify_irreducible(P);
    if (!cert.irreducible)
        throw Error("refine_embeddings requires an irreducible polynomial");
    Isolation iso = isolate_squarefree(P, eps);
    EmbeddingSet out;
    out.precision = eps;
    out.real_roots = std::move(iso.real_intervals);
    out.complex_roots = std::move(iso.uhp_disks);
    return out;
}

std::vector<CDisk> isolate_all_roots(const ZPoly& P, const Rat& eps) {
    if (!(eps > 0)) throw Error("isolate_all_roots needs eps > 0");
    ZPoly sqf = squarefree_part(P);
    if (sqf.degree() != P.degree())
        throw Error("isolate_all_roots requires a squarefree polynomial");
    Isolation iso = isolate_squarefree(P, eps);
    std::vector<CDisk> disks;
    for (auto& iv : iso.real_intervals)
        disks.emplace_back(CRat(iv.mid(), Rat(0)), iv.width() / 2);
    for (auto& d : iso.uhp_disks) disks.push_back(d);
    for (auto& d : iso.uhp_disks)
        disks.emplace_back(d.center.conj(), d.radius);
    return disks;
}

}  // namespace otk
