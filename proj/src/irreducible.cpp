#include "otk/irreducible.hpp"

#include <algorithm>

#include "otk/modp.hpp"

namespace otk {

namespace {

constexpr long kSievePrimeBudget = 200;
constexpr int kSieveUsablePrimes = 12;

std::vector<bool> attainable_sums(const std::vector<int>& pattern, int n) {
    std::vector<bool> can(n + 1, false);
    can[0] = true;
    for (int d : pattern)
        for (int s = n; s >= d; --s)
            if (can[s - d]) can[s] = true;
    return can;
}

std::optional<long> eisenstein_prime(const ZPoly& P) {
    int n = P.degree();
    Int g(0);
    for (int i = 0; i < n; ++i)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), P.coeff(i).get_mpz_t());
    if (g <= 1) return std::nullopt;
    // trial-divide the gcd of the low coefficients
    Int rest = g;
    std::vector<Int> primes;
    for (Int d(2); d * d <= rest && d < 1000000; d = d + 1) {
        if (rest % d == 0) {
            primes.push_back(d);
            while (rest % d == 0) rest /= d;
        }
    }
    if (rest > 1 && rest.fits_slong_p()) primes.push_back(rest);
    for (const Int& p : primes) {
        if (!p.fits_slong_p()) continue;
        if (P.lc() % p == 0) continue;
        if (P.coeff(0) % (p * p) == 0) continue;
        return p.get_si();
    }
    return std::nullopt;
}

// Kronecker-style exhaustive factor search. Returns a nontrivial factor or
// nothing if P is irreducible. `feasible` restricts candidate degrees.
std::optional<ZPoly> kronecker_factor(const ZPoly& P, const std::vector<bool>& feasible) {
    int n = P.degree();
    for (int d = 1; d <= n / 2; ++d) {
        if (!feasible[d]) continue;
        std::vector<Int> xs;
        for (int k = 0; static_cast<int>(xs.size()) < d + 1; ++k) {
            // points 0, 1, -1, 2, -2, ...
            Int x = (k % 2 == 1) ? Int((k + 1) / 2) : Int(-(k / 2));
            xs.push_back(x);
        }
        std::vector<Int> vals;
        for (const Int& x : xs) {
            Int v = P.eval(x);
            if (v == 0) return ZPoly({-x, Int(1)});  // integer root
            vals.push_back(v);
        }
        // all divisors (with sign) of each value
        std::vector<std::vector<Int>> divisor_sets;
        for (const Int& v : vals) {
            Int a = v < 0 ? Int(-v) : v;
            std::vector<Int> divs;
            for (Int w(1); w * w <= a; w = w + 1) {
                if (a % w == 0) {
                    divs.push_back(w);
                    if (w * w != a) divs.push_back(a / w);
                }
                if (divs.size() > 4000)
                    throw Undecided(
                        "factor search: divisor enumeration exceeds desk-scale bound");
            }
            std::vector<Int> with_sign;
            for (const Int& w : divs) {
                with_sign.push_back(w);
                with_sign.push_back(-w);
            }
            std::sort(with_sign.begin(), with_sign.end());
            divisor_sets.push_back(std::move(with_sign));
        }
        // Lagrange basis for the fixed points, ascending coefficients
        std::vector<std::vector<Rat>> basis;
        for (int i = 0; i <= d; ++i) {
            QPoly term = QPoly::constant(Rat(1));
            for (int j = 0; j <= d; ++j) {
                if (j == i) continue;
                Rat denom = Rat(xs[i] - xs[j]);
                term = term * QPoly({Rat(-xs[j]) / denom, Rat(1) / denom});
            }
            std::vector<Rat> coeffs(d + 1, Rat(0));
            for (int c = 0; c <= term.degree(); ++c) coeffs[c] = term.coeff(c);
            basis.push_back(std::move(coeffs));
        }
        const bool monic_target = P.is_monic();
        std::vector<size_t> idx(d + 1, 0);
        while (true) {
            // cheap leading-coefficient filter before full interpolation
            Rat lead(0);
            for (int i = 0; i <= d; ++i)
                lead += Rat(divisor_sets[i][idx[i]]) * basis[i][d];
            bool lead_ok;
            if (monic_target) {
                lead_ok = lead == 1;
            } else {
                lead_ok = lead != 0 && is_integer(lead) &&
                          P.lc() % lead.get_num() == 0;
            }
            if (lead_ok) {
                std::vector<Rat> coeffs(d + 1, Rat(0));
                for (int i = 0; i <= d; ++i) {
                    Rat y(divisor_sets[i][idx[i]]);
                    for (int c = 0; c <= d; ++c) coeffs[c] += y * basis[i][c];
                }
                QPoly g(std::move(coeffs));
                if (g.degree() == d && g.is_integral()) {
                    auto [q, r] = divmod(P.to_q(), g);
                    if (r.is_zero() && q.is_integral()) return g.to_z();
                }
            }
            int pos = 0;
            while (pos <= d) {
                if (++idx[pos] < divisor_sets[pos].size()) break;
                idx[pos] = 0;
                ++pos;
            }
            if (pos > d) break;
        }
    }
    return std::nullopt;
}

}  // namespace

IrreducibilityCertificate certify_irreducible(const ZPoly& Pin) {
    if (Pin.degree() < 1) throw Error("irreducibility needs degree >= 1");
    ZPoly P = Pin.primitive_part();
    int n = P.degree();
    IrreducibilityCertificate cert;

    if (n == 1) {
        cert.kind = IrreducibilityCertificate::Kind::mod_p;
        cert.irreducible = true;
        cert.prime = (P.lc() % 2 != 0) ? 2 : 3;
        return cert;
    }

    if (auto p = eisenstein_prime(P)) {
        cert.kind = IrreducibilityCertificate::Kind::eisenstein;
        cert.irreducible = true;
        cert.prime = *p;
        return cert;
    }

    std::vector<bool> feasible(n + 1, true);
    int usable = 0;
    for (long p = 2; p <= kSievePrimeBudget && usable < kSieveUsablePrimes;
         p = next_prime(p)) {
        if (P.lc() % p == 0) continue;
        auto pattern = factor_pattern_mod_p(P, p);
        if (!pattern) continue;
        ++usable;
        if (pattern->size() == 1) {
            cert.kind = IrreducibilityCertificate::Kind::mod_p;
            cert.irreducible = true;
            cert.prime = p;
            return cert;
        }
        cert.sieve.emplace_back(p, *pattern);
        auto can = attainable_sums(*pattern, n);
        for (int dgr = 0; dgr <= n; ++dgr)
            feasible[dgr] = feasible[dgr] && can[dgr];
        bool only_trivial = true;
        for (int dgr = 1; dgr < n; ++dgr) only_trivial = only_trivial && !feasible[dgr];
        if (only_trivial) {
            cert.kind = IrreducibilityCertificate::Kind::degree_sieve;
            cert.irreducible = true;
            return cert;
        }
    }

    if (auto factor = kronecker_factor(P, feasible)) {
        cert.kind = IrreducibilityCertificate::Kind::reducible;
        cert.irreducible = false;
        cert.factor = *factor;
        return cert;
    }
    cert.kind = IrreducibilityCertificate::Kind::factor_search;
    cert.irreducible = true;
    return cert;
}

bool is_irreducible(const ZPoly& P) { return certify_irreducible(P).irreducible; }

bool recheck_irreducibility(const ZPoly& Pin, const IrreducibilityCertificate& cert) {
    ZPoly P = Pin.primitive_part();
    int n = P.degree();
    switch (cert.kind) {
        case IrreducibilityCertificate::Kind::eisenstein: {
            long p = cert.prime;
            if (P.lc() % p == 0) return false;
            for (int i = 0; i < n; ++i)
                if (P.coeff(i) % p != 0) return false;
            return P.coeff(0) % (Int(p) * p) != 0;
        }
        case IrreducibilityCertificate::Kind::mod_p: {
            if (n == 1) return true;
            auto pattern = factor_pattern_mod_p(P, cert.prime);
            return pattern && pattern->size() == 1;
        }
        case IrreducibilityCertificate::Kind::degree_sieve: {
            std::vector<bool> feasible(n + 1, true);
            for (const auto& [p, recorded] : cert.sieve) {
                auto pattern = factor_pattern_mod_p(P, p);
                if (!pattern || *pattern != recorded) return false;
                auto can = attainable_sums(*pattern, n);
                for (int dgr = 0; dgr <= n; ++dgr)
                    feasible[dgr] = feasible[dgr] && can[dgr];
            }
            for (int dgr = 1; dgr < n; ++dgr)
                if (feasible[dgr]) return false;
            return true;
        }
        case IrreducibilityCertificate::Kind::factor_search:
            return certify_irreducible(P).irreducible;
        case IrreducibilityCertificate::Kind::reducible: {
            if (cert.factor.degree() < 1 || cert.factor.degree() >= n) return false;
            auto [q, r] = divmod(P.to_q(), cert.factor.to_q());
            return r.is_zero();
        }
    }
    return false;
}

std::string IrreducibilityCertificate::describe() const {
    switch (kind) {
        case Kind::eisenstein:
            return "eisenstein at p=" + std::to_string(prime);
        case Kind::mod_p:
            return "irreducible mod p=" + std::to_string(prime);
        case Kind::degree_sieve: {
            std::string s = "degree sieve over primes";
            for (const auto& [p, pat] : sieve) {
                (void)pat;
                s += " " + std::to_string(p);
            }
            return s;
        }
        case Kind::factor_search:
            return "exhaustive factor search found no divisor";
        case Kind::reducible:
            return "reducible with factor " + factor.to_text();
    }
    return "";
}

}  // namespace otk
