#include "otk/galois.hpp"

#include <algorithm>

#include "otk/irreducible.hpp"

namespace otk {

namespace {

bool is_transitive_pattern(const std::vector<int>& pat, int n) {
    return pat.size() == 1 && pat[0] == n;
}

bool is_n_minus_1_cycle_pattern(const std::vector<int>& pat, int n) {
    return n >= 3 && pat.size() == 2 &&
           ((pat[0] == 1 && pat[1] == n - 1) || (pat[0] == n - 1 && pat[1] == 1));
}

// One part equal to 2 and every other part odd: an odd power of the
// Frobenius element is a transposition.
bool is_transposition_pattern(const std::vector<int>& pat) {
    int twos = 0;
    for (int d : pat) {
        if (d == 2) {
            ++twos;
        } else if (d % 2 == 0) {
            return false;
        }
    }
    return twos == 1;
}

}  // namespace

std::optional<FactorPattern> factor_pattern(const ZPoly& P, long p, uint64_t seed) {
    auto degs = factor_pattern_mod_p(P, p, seed);
    if (!degs) return std::nullopt;
    return FactorPattern{p, *degs};
}

GaloisCertificate certify_symmetric_group(const ZPoly& P, long prime_budget,
                                          uint64_t seed) {
    auto irr = certify_irreducible(P);
    if (!irr.irreducible)
        throw Error("symmetric-group certification requires an irreducible polynomial");
    GaloisCertificate cert;
    cert.n = P.degree();
    cert.prime_budget = prime_budget;
    cert.seed = seed;
    const int n = cert.n;
    if (n == 1) {
        cert.conclusion = GaloisCertificate::Conclusion::full_symmetric;
        return cert;
    }

    bool have_transitive = false, have_cycle = false, have_transposition = false;
    auto complete = [&]() {
        if (n <= 2) return have_transitive;
        return have_transitive && have_cycle && have_transposition;
    };

    for (long p = 2; p <= prime_budget && !complete(); p = next_prime(p)) {
        if (P.lc() % p == 0) continue;
        auto pat = factor_pattern(P, p, seed);
        if (!pat) continue;
        std::vector<std::string> roles;
        if (!have_transitive && is_transitive_pattern(pat->degrees, n)) {
            have_transitive = true;
            roles.push_back("transitive");
        }
        if (!have_cycle && is_n_minus_1_cycle_pattern(pat->degrees, n)) {
            have_cycle = true;
            roles.push_back("n_minus_1_cycle");
        }
        if (!have_transposition && is_transposition_pattern(pat->degrees)) {
            have_transposition = true;
            roles.push_back("transposition");
        }
        if (!roles.empty())
            cert.witnesses.push_back(GaloisWitness{p, pat->degrees, roles});
    }
    cert.conclusion = complete() ? GaloisCertificate::Conclusion::full_symmetric
                                 : GaloisCertificate::Conclusion::inconclusive;
    if (cert.conclusion == GaloisCertificate::Conclusion::inconclusive)
        cert.witnesses.clear();
    return cert;
}

bool no_proper_subfields(const GaloisCertificate& cert, int n) {
    if (cert.conclusion != GaloisCertificate::Conclusion::full_symmetric)
        throw Error("no_proper_subfields needs a full_symmetric certificate");
    if (cert.n != n) throw Error("certificate degree mismatch");
    return true;
}

bool recheck_galois(const ZPoly& P, const GaloisCertificate& cert) {
    if (cert.conclusion != GaloisCertificate::Conclusion::full_symmetric) return false;
    int n = P.degree();
    if (n != cert.n) return false;
    if (n == 1) return true;
    bool have_transitive = false, have_cycle = false, have_transposition = false;
    for (const auto& w : cert.witnesses) {
        auto pat = factor_pattern(P, w.p, cert.seed);
        if (!pat || pat->degrees != w.pattern) return false;
        for (const auto& role : w.roles) {
            if (role == "transitive" && is_transitive_pattern(pat->degrees, n))
                have_transitive = true;
            if (role == "n_minus_1_cycle" && is_n_minus_1_cycle_pattern(pat->degrees, n))
                have_cycle = true;
            if (role == "transposition" && is_transposition_pattern(pat->degrees))
                have_transposition = true;
        }
    }
    if (n <= 2) return have_transitive;
    return have_transitive && have_cycle && have_transposition;
}

}  // namespace otk
