#include "otk/modp.hpp"

#include <algorithm>

namespace otk {

namespace {

long mulmod(long a, long b, long p) {
    return static_cast<long>(static_cast<__int128>(a) * b % p);
}

long invmod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw Error("not invertible mod p");
    return t < 0 ? t + p : t;
}

void trim(FpPoly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

}  // namespace

bool FpPoly::operator<(const FpPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (int i = degree(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

FpPoly fp_from(const ZPoly& a, long p) {
    FpPoly r;
    r.p = p;
    r.c.resize(a.degree() + 1);
    for (int i = 0; i <= a.degree(); ++i) {
        Int m = a.coeff(i) % p;
        long v = m.get_si();
        if (v < 0) v += p;
        r.c[i] = v;
    }
    trim(r);
    return r;
}

FpPoly fp_constant(long p, long v) {
    FpPoly r;
    r.p = p;
    v %= p;
    if (v < 0) v += p;
    if (v != 0) r.c = {v};
    return r;
}

FpPoly fp_x(long p) {
    FpPoly r;
    r.p = p;
    r.c = {0, 1};
    return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] + b.c[i]) % r.p;
    trim(r);
    return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = (r.c[i] - b.c[i] % r.p + r.p) % r.p;
    trim(r);
    return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
    FpPoly r;
    r.p = a.p;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], r.p)) % r.p;
    }
    trim(r);
    return r;
}

FpPoly fp_monic(const FpPoly& a) {
    if (a.is_zero() || a.lc() == 1) return a;
    long inv = invmod(a.lc(), a.p);
    FpPoly r = a;
    for (auto& v : r.c) v = mulmod(v, inv, a.p);
    return r;
}

std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw Error("division by zero mod p");
    FpPoly r = a;
    FpPoly q;
    q.p = a.p;
    int db = b.degree();
    if (a.degree() < db) return {q, r};
    q.c.assign(a.degree() - db + 1, 0);
    long binv = invmod(b.lc(), b.p);
    for (int i = a.degree(); i >= db; --i) {
        if (static_cast<int>(r.c.size()) <= i || r.c[i] == 0) continue;
        long f = mulmod(r.c[i], binv, b.p);
        q.c[i - db] = f;
        for (int j = 0; j <= db; ++j)
            r.c[i - db + j] = (r.c[i - db + j] - mulmod(f, b.c[j], b.p) % b.p + b.p) % b.p;
    }
    trim(q);
    trim(r);
    return {q, r};
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& b) { return fp_divmod(a, b).second; }

FpPoly fp_gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = fp_mod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) throw Error("gcd of zero polynomials mod p");
    return fp_monic(x);
}

FpPoly fp_derivative(const FpPoly& a) {
    FpPoly r;
    r.p = a.p;
    if (a.degree() <= 0) return r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i)
        r.c[i - 1] = mulmod(a.c[i], static_cast<long>(i % a.p), a.p);
    trim(r);
    return r;
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& mod) {
    FpPoly result = fp_constant(base.p, 1);
    FpPoly b = fp_mod(base, mod);
    Int exp = e;
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) result = fp_mod(fp_mul(result, b), mod);
        b = fp_mod(fp_mul(b, b), mod);
        exp >>= 1;
    }
    return result;
}

ZPoly fp_lift(const FpPoly& a) {
    std::vector<Int> c;
    c.reserve(a.c.size());
    for (long v : a.c) c.emplace_back(v);
    return ZPoly(std::move(c));
}

std::string fp_to_text(const FpPoly& a) { return fp_lift(a).to_text(); }

bool fp_is_squarefree(const FpPoly& f) {
    FpPoly d = fp_derivative(f);
    if (d.is_zero()) return f.degree() == 0;
    return fp_gcd(f, d).degree() == 0;
}

namespace {

// f monic with zero derivative: f = g(X^p), and over F_p this is g(X)^p.
FpPoly fp_pth_root(const FpPoly& f) {
    FpPoly g;
    g.p = f.p;
    g.c.resize(f.degree() / f.p + 1, 0);
    for (int i = 0; i * f.p <= f.degree(); ++i) g.c[i] = f.c[i * f.p];
    trim(g);
    return g;
}

// Yun-style squarefree decomposition over F_p, including the p-th power case.
std::vector<std::pair<FpPoly, int>> fp_squarefree_decomposition(const FpPoly& fin) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly f = fp_monic(fin);
    if (f.degree() == 0) return out;
    FpPoly d = fp_derivative(f);
    if (d.is_zero()) {
        for (auto& [g, m] : fp_squarefree_decomposition(fp_pth_root(f)))
            out.emplace_back(g, m * static_cast<int>(f.p));
        return out;
    }
    FpPoly c = fp_gcd(f, d);
    FpPoly w = fp_divmod(f, c).first;
    int i = 1;
    while (w.degree() > 0) {
        FpPoly y = fp_gcd(w, c);
        FpPoly z = fp_divmod(w, y).first;
        if (z.degree() > 0) out.emplace_back(fp_monic(z), i);
        ++i;
        w = y;
        c = fp_divmod(c, y).first;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : fp_squarefree_decomposition(fp_pth_root(c)))
            out.emplace_back(g, m * static_cast<int>(f.p));
    }
    return out;
}

FpPoly fp_random(long p, int deg_below, std::mt19937_64& rng) {
    FpPoly r;
    r.p = p;
    r.c.resize(deg_below);
    std::uniform_int_distribution<long> dist(0, p - 1);
    for (auto& v : r.c) v = dist(rng);
    trim(r);
    return r;
}

// Equal-degree splitting (Cantor-Zassenhaus); f monic squarefree, all
// irreducible factors of degree d.
void fp_equal_degree(const FpPoly& f, int d, std::mt19937_64& rng,
                     std::vector<FpPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    long p = f.p;
    while (true) {
        FpPoly a = fp_random(p, f.degree(), rng);
        if (a.degree() < 1) continue;
        FpPoly g = fp_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            fp_equal_degree(g, d, rng, out);
            fp_equal_degree(fp_divmod(f, g).first, d, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            // trace map over F_{2^d}
            b.p = 2;
            FpPoly t = a;
            b = a;
            for (int i = 1; i < d; ++i) {
                t = fp_mod(fp_mul(t, t), f);
                b = fp_add(b, t);
            }
        } else {
            Int e = 1;
            for (int i = 0; i < d; ++i) e *= p;
            e = (e - 1) / 2;
            b = fp_sub(fp_powmod(a, e, f), fp_constant(p, 1));
        }
        if (b.is_zero()) continue;
        g = fp_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            fp_equal_degree(g, d, rng, out);
            fp_equal_degree(fp_divmod(f, g).first, d, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of monic squarefree f.
std::vector<std::pair<FpPoly, int>> fp_distinct_degree(const FpPoly& fin) {
    std::vector<std::pair<FpPoly, int>> out;  // (product of factors, degree)
    FpPoly f = fin;
    FpPoly h = fp_x(f.p);
    int d = 0;
    while (f.degree() > 0 && 2 * (d + 1) <= f.degree()) {
        ++d;
        h = fp_powmod(h, Int(f.p), f);
        FpPoly g = fp_gcd(fp_sub(h, fp_x(f.p)), f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = fp_divmod(f, g).first;
            h = fp_mod(h, f);
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_mod_p(const ZPoly& P, long p, uint64_t seed) {
    if (!is_prime(p)) throw Error("modulus is not prime");
    if (P.is_zero()) throw Error("factoring the zero polynomial");
    if (P.lc() % p == 0) throw Error("prime divides leading coefficient");
    FpPoly f = fp_from(P, p);
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(p));
    std::vector<std::pair<FpPoly, int>> out;
    if (f.degree() == 0) return out;
    for (auto& [sqf, mult] : fp_squarefree_decomposition(f)) {
        for (auto& [prod, d] : fp_distinct_degree(sqf)) {
            std::vector<FpPoly> irr;
            fp_equal_degree(prod, d, rng, irr);
            for (auto& g : irr) out.emplace_back(g, mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

std::optional<std::vector<int>> factor_pattern_mod_p(const ZPoly& P, long p, uint64_t seed) {
    if (!is_prime(p)) throw Error("modulus is not prime");
    if (P.is_zero()) throw Error("pattern of the zero polynomial");
    if (P.lc() % p == 0) throw Error("prime divides leading coefficient");
    FpPoly f = fp_from(P, p);
    if (f.degree() != P.degree()) throw Error("prime divides leading coefficient");
    if (!fp_is_squarefree(f)) return std::nullopt;
    std::vector<int> degs;
    for (auto& [g, m] : factor_mod_p(P, p, seed)) {
        for (int i = 0; i < m; ++i) degs.push_back(g.degree());
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long next_prime(long n) {
    long c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

}  // namespace otk
