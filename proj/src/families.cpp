#include "otk/families.hpp"

#include <algorithm>

#include "otk/roots.hpp"

namespace otk {

namespace {

void require_monic_of_degree(const ZPoly& p, int deg, const std::string& name) {
    if (p.degree() != deg)
        throw Error(name + " must have degree " + std::to_string(deg));
    if (!p.is_monic()) throw Error(name + " must be monic");
}

std::vector<int> pattern_or_throw(const ZPoly& p, long prime, const std::string& name) {
    auto pat = factor_pattern_mod_p(p, prime);
    if (!pat)
        throw Error(name + " has a non-squarefree reduction modulo " +
                    std::to_string(prime));
    return *pat;
}

}  // namespace

MaximalConstruction make_maximal(const MaximalFamilySpec& spec) {
    if (spec.n < 1) throw Error("need n >= 1");
    int deg = 2 * spec.n;
    require_monic_of_degree(spec.f1, deg, "f1");
    require_monic_of_degree(spec.f2, deg, "f2");
    require_monic_of_degree(spec.f3, deg, "f3");
    if (spec.g.degree() > deg - 1)
        throw Error("g must have degree at most " + std::to_string(deg - 1));

    auto p1 = pattern_or_throw(spec.f1, 2, "f1");
    if (p1 != std::vector<int>{deg})
        throw Error("f1 is not irreducible modulo 2");
    auto p2 = pattern_or_throw(spec.f2, 3, "f2");
    if (!(p2.size() == 2 && p2[0] == 1 && p2[1] == deg - 1))
        throw Error("f2 is not linear times irreducible modulo 3");
    auto p3 = pattern_or_throw(spec.f3, 5, "f3");
    {
        bool ok = p3.size() == 3;
        if (ok) {
            int twos = 0, odd = 0;
            for (int d : p3) {
                if (d == 2) ++twos;
                else if (d % 2 == 1) ++odd;
            }
            ok = twos == 1 && odd == 2;
        }
        if (!ok)
            throw Error("f3 is not quadratic times two odd-degree irreducibles modulo 5");
    }

    ZPoly f = spec.f1 * Int(-15) + spec.f2 * Int(10) + spec.f3 * Int(6) +
              spec.g * Int(30);
    if (f.degree() != deg || !f.is_monic())
        throw Error("assembled polynomial is not monic of the right degree");
    // irreducibility via the mod-2 reduction (f = f1 mod 2)
    auto fpat = factor_pattern_mod_p(f, 2);
    if (!fpat || *fpat != std::vector<int>{deg})
        throw Error("assembled polynomial lost mod-2 irreducibility");
    return MaximalConstruction{f, FactorPattern{2, p1}, FactorPattern{3, p2},
                               FactorPattern{5, p3}};
}

std::optional<GSearchResult> search_g_for_signature(const MaximalFamilySpec& spec,
                                                    long g_coeff_bound) {
    if (g_coeff_bound < 0) return std::nullopt;
    int deg = 2 * spec.n;
    MaximalFamilySpec base = spec;
    base.g = ZPoly();
    ZPoly f_base = make_maximal(base).f;

    long side = 2 * g_coeff_bound + 1;
    size_t total = 1;
    for (int i = 0; i < deg; ++i) total *= side;
    std::vector<Int> c(deg);
    for (size_t idx = 0; idx < total; ++idx) {
        size_t rest = idx;
        for (int i = 0; i < deg; ++i) {
            c[i] = Int(static_cast<long>(rest % side) - g_coeff_bound);
            rest /= side;
        }
        ZPoly g(c);
        ZPoly f = f_base + g * Int(30);
        // f = f1 mod 2 keeps f irreducible for every g
        SturmChain chain(f);
        Rat B = cauchy_bound(f);
        if (chain.count(-B, B) == deg - 2) return GSearchResult{g, f};
    }
    return std::nullopt;
}

HalfConstruction make_half(const ZPoly& E_poly, std::optional<Rat> q_opt) {
    int n = E_poly.degree();
    if (n < 2) throw Error("subfield polynomial must have degree >= 2");
    if (!E_poly.is_monic()) throw Error("subfield polynomial must be monic");
    auto irr = certify_irreducible(E_poly);
    if (!irr.irreducible)
        throw Error("subfield polynomial is reducible; factor: " +
                    irr.factor.to_text());
    if (!is_totally_real(E_poly))
        throw Error("subfield polynomial is not totally real");

    // the two smallest roots bracket q (paper ordering alpha_1 > ... > alpha_n)
    Rat eps(1, 1 << 16);
    Rat q;
    if (q_opt) {
        q = *q_opt;
        // decide alpha_n < q < alpha_{n-1} by refining the two isolating intervals
        for (int round = 0;; ++round) {
            if (round > 60) throw Error("could not separate q from the roots");
            auto emb = refine_embeddings(E_poly, eps);
            const QInterval& low = emb.real_roots[0];
            const QInterval& next = emb.real_roots[1];
            if (q >= low.hi && q <= next.lo) break;  // certified inside
            if (q <= low.lo || q >= next.hi)
                throw Error("q is outside the open interval (alpha_n, alpha_{n-1})");
            eps /= 256;
        }
    } else {
        // smallest-denominator rational in the certified gap keeps the
        // rescaled integral model small
        auto emb = refine_embeddings(E_poly, eps);
        q = simplest_rational_in(QInterval(emb.real_roots[0].hi, emb.real_roots[1].lo));
    }

    Int b = q.get_den();
    Int a = q.get_num();
    // scaled subfield model: minimal polynomial of b^2 alpha
    std::vector<Int> sc(n + 1);
    Int b2(1);
    for (int i = n; i >= 0; --i) {
        sc[i] = E_poly.coeff(i) * b2;
        b2 *= b * b;
    }
    ZPoly scaled(std::move(sc));
    QPoly fq = compose_quadratic(scaled, Rat(a * b));
    if (!fq.is_integral()) throw Error("integral model construction bug");
    ZPoly f = fq.to_z();

    auto firr = certify_irreducible(f);
    if (!firr.irreducible)
        throw Error("composed polynomial is reducible; factor: " +
                    firr.factor.to_text());
    Signature sig = signature(f);
    if (!(sig.s == 2 * n - 2 && sig.t == 1))
        throw Error("composed polynomial has signature (" + std::to_string(sig.s) +
                    ", " + std::to_string(sig.t) + "), expected (2n-2, 1)");
    return HalfConstruction{f, q, b, scaled};
}

ZPoly min_poly_cos(long p) {
    if (p < 3 || !is_prime(p)) throw Error("need an odd prime");
    long m = (p - 1) / 2;
    // V_k(Y) = 2 T_k(Y/2): V_0 = 2, V_1 = Y, V_{k+1} = Y V_k - V_{k-1};
    // 1 + sum_{k=1..m} V_k vanishes exactly at 2 cos(2 pi j / p)
    ZPoly y = ZPoly::monomial(1);
    ZPoly prev = ZPoly::constant(2), cur = y;
    ZPoly acc = ZPoly::constant(1) + cur;
    for (long k = 2; k <= m; ++k) {
        ZPoly next = y * cur - prev;
        prev = cur;
        cur = next;
        acc = acc + cur;
    }
    if (acc.degree() != m || !acc.is_monic()) throw Error("cosine polynomial bug");
    return acc;
}

namespace {

long primitive_root(long p) {
    std::vector<long> prime_factors;
    long m = p - 1;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    auto powmod = [&](long base, long e) {
        long r = 1, b = base % p;
        while (e > 0) {
            if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * b % p);
            b = static_cast<long>(static_cast<__int128>(b) * b % p);
            e >>= 1;
        }
        return r;
    };
    for (long r = 2; r < p; ++r) {
        bool ok = true;
        for (long q : prime_factors)
            if (powmod(r, (p - 1) / q) == 1) ok = false;
        if (ok) return r;
    }
    throw Error("no primitive root found");
}

// reduce mod the p-th cyclotomic polynomial 1 + X + ... + X^(p-1)
ZPoly cyclotomic_reduce(const ZPoly& a, long p) {
    // X^p = 1, then X^(p-1) = -(1 + X + ... + X^(p-2))
    std::vector<Int> c(p, Int(0));
    for (int i = 0; i <= a.degree(); ++i) c[i % p] += a.coeff(i);
    Int top = c[p - 1];
    if (top != 0)
        for (long i = 0; i < p - 1; ++i) c[i] -= top;
    c.resize(p - 1);
    return ZPoly(std::move(c));
}

}  // namespace

ZPoly make_totally_real(int n) {
    if (n < 1) throw Error("need n >= 1");
    if (n == 1) return ZPoly({Int(-1), Int(1)});

    long p = 3;
    while ((p - 1) % (2L * n) != 0) p = next_prime(p);
    long m = (p - 1) / 2;
    long g0 = primitive_root(p);

    // cosets of the index-n subgroup of (Z/p)*/{+-1}; representatives as
    // exponents of g0
    std::vector<std::vector<long>> cosets(n);
    {
        long cur = 1;
        for (long e = 0; e < m; ++e) {
            cosets[e % n].push_back(cur);
            cur = static_cast<long>(static_cast<__int128>(cur) * g0 % p);
        }
    }

    for (mpfr_prec_t prec = 128; prec <= 1 << 14; prec *= 2) {
        std::vector<QInterval> periods;
        for (int i = 0; i < n; ++i) {
            QInterval acc(Rat(0));
            for (long a : cosets[i]) acc = acc + two_cos_2pi_enclosure(a, p, prec);
            periods.push_back(acc);
        }
        // expand prod (Y - theta_i)
        std::vector<QInterval> coeffs{QInterval(Rat(1))};
        for (const auto& th : periods) {
            std::vector<QInterval> next(coeffs.size() + 1, QInterval(Rat(0)));
            for (size_t i = 0; i < coeffs.size(); ++i) {
                next[i + 1] = next[i + 1] + coeffs[i];
                next[i] = next[i] - coeffs[i] * th;
            }
            coeffs = std::move(next);
        }
        std::vector<Int> rounded;
        bool ok = true;
        for (const auto& c : coeffs) {
            Int mid = round_rat(c.mid());
            Rat mr(mid);
            if (c.lo > mr - Rat(1, 4) && c.hi < mr + Rat(1, 4)) {
                rounded.push_back(mid);
            } else {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ZPoly candidate(std::move(rounded));
        // exact verification inside Z[X]/(cyclotomic): candidate(theta_0) = 0
        ZPoly theta0;
        {
            std::vector<Int> c(p, Int(0));
            for (long a : cosets[0]) {
                c[a % p] += 1;
                c[(p - a % p) % p] += 1;
            }
            theta0 = cyclotomic_reduce(ZPoly(std::move(c)), p);
        }
        ZPoly acc;  // Horner in Z[X]/(Phi_p)
        for (int i = candidate.degree(); i >= 0; --i) {
            acc = cyclotomic_reduce(acc * theta0 + ZPoly::constant(candidate.coeff(i)), p);
        }
        if (!acc.is_zero()) continue;
        if (candidate.degree() != n) throw Error("period polynomial has wrong degree");
        if (!certify_irreducible(candidate).irreducible)
            throw Error("period polynomial is reducible");
        if (!is_totally_real(candidate)) throw Error("period polynomial is not totally real");
        return candidate;
    }
    throw Error("period coefficients could not be certified at maximal precision");
}

}  // namespace otk
