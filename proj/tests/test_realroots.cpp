#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "otk/poly.hpp"
#include "otk/roots.hpp"

using namespace otk;

namespace {

ZPoly zp(std::initializer_list<long> asc) {
    std::vector<Int> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}

// Independent oracle: Durand-Kerner roots in double precision, counting the
// ones that are numerically real.
int real_count_numeric(const ZPoly& P) {
    int n = P.degree();
    std::vector<double> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = P.coeff(i).get_d() / P.lc().get_d();
    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::polar(1.7, 2 * 3.14159265358979 * i / n + 0.5);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    for (int it = 0; it < 3000; ++it) {
        for (int i = 0; i < n; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            if (std::abs(den) > 0) z[i] -= eval(z[i]) / den;
        }
    }
    int count = 0;
    for (auto& r : z) {
        if (std::abs(r.imag()) < 1e-7) {
            ++count;
        } else if (std::abs(r.imag()) < 1e-4) {
            return -1;  // too close to the axis for a double-precision verdict
        }
    }
    return count;
}

}  // namespace

TEST_CASE("sturm counts: frozen values") {
    CHECK(sturm_count(zp({-2, 0, 1}), Rat(0), Rat(2)) == 1);
    // X^5-4X+2 has sign changes across -2,-1,0,1,2: three real roots
    CHECK(sturm_count(zp({2, -4, 0, 0, 0, 1}), Rat(-10), Rat(10)) == 3);
    CHECK(sturm_count(zp({1, 0, 1}), Rat(-10), Rat(10)) == 0);
    CHECK_THROWS_AS(sturm_count(zp({-2, 0, 1}), Rat(0), Rat(0)), Error);
}

TEST_CASE("sturm count with a root at an endpoint is rejected") {
    CHECK_THROWS_AS(sturm_count(zp({0, 1}), Rat(0), Rat(1)), Error);
}

TEST_CASE("signatures of the example fields") {
    CHECK(signature(zp({-2, 0, 0, 0, 1})) == Signature{2, 1});
    CHECK(signature(zp({-17, -5, 6, 0, 1})) == Signature{2, 1});
    CHECK(signature(zp({-1, -2, 1, 1})) == Signature{3, 0});
    CHECK(signature(zp({2, -4, 0, 0, 0, 1})) == Signature{3, 1});
    CHECK(signature(zp({1, 0, 1})) == Signature{0, 1});
    CHECK_THROWS_AS(signature(zp({-1, 0, 0, 0, 1})), Error);  // reducible
}

TEST_CASE("totally real detection") {
    CHECK(is_totally_real(zp({-1, -2, 1, 1})));
    CHECK(!is_totally_real(zp({-2, 0, 0, 0, 1})));
    CHECK(is_totally_real(zp({-7, 1})));
}

TEST_CASE("sturm vs numeric oracle on 200 random squarefree polynomials") {
    std::mt19937_64 rng(20260809);
    std::uniform_int_distribution<int> dd(2, 6);
    std::uniform_int_distribution<long> cc(-9, 9);
    int done = 0;
    while (done < 200) {
        int d = dd(rng);
        std::vector<Int> c(d + 1);
        for (auto& v : c) v = cc(rng);
        ZPoly P(std::move(c));
        if (P.degree() < 2) continue;
        if (squarefree_part(P).degree() != P.degree()) continue;
        int numeric = real_count_numeric(P);
        if (numeric < 0) continue;  // oracle abstains near the axis
        ++done;
        CHECK(sturm_count(P, -cauchy_bound(P), cauchy_bound(P)) == numeric);
    }
}

TEST_CASE("s + 2t equals the degree") {
    for (auto& poly : {zp({-2, 0, 0, 0, 1}), zp({-17, -5, 6, 0, 1}),
                       zp({2, -4, 0, 0, 0, 1}), zp({1, 0, 1}), zp({-1, -2, 1, 1})}) {
        Signature sig = signature(poly);
        CHECK(sig.s + 2 * sig.t == poly.degree());
    }
}

TEST_CASE("refine_embeddings on x^4-2") {
    ZPoly f = zp({-2, 0, 0, 0, 1});
    auto emb = refine_embeddings(f, Rat(1, 1000));
    REQUIRE(emb.real_roots.size() == 2);
    REQUIRE(emb.complex_roots.size() == 1);
    // 2^(1/4) = 1.18920711...
    CHECK(emb.real_roots[0].contains(parse_rat("-1189207/1000000")));
    CHECK(emb.real_roots[1].contains(parse_rat("1189207/1000000")));
    CHECK(emb.real_roots[0].width() <= Rat(1, 1000));
    const CDisk& d = emb.complex_roots[0];
    CHECK(d.strictly_above_axis());
    CHECK(abs_rat(d.center.re) < Rat(1, 500));
    CHECK(abs_rat(d.center.im - parse_rat("1189207/1000000")) < Rat(1, 500));
}

TEST_CASE("refine_embeddings on x^2-2 at 1e-6") {
    auto emb = refine_embeddings(zp({-2, 0, 1}), Rat(1, 1000000));
    REQUIRE(emb.real_roots.size() == 2);
    CHECK(emb.real_roots[1].contains(parse_rat("1414213562/1000000000")));
    CHECK(emb.real_roots[1].width() <= Rat(1, 1000000));
}

TEST_CASE("refine_embeddings on x^2+1") {
    auto emb = refine_embeddings(zp({1, 0, 1}), Rat(1, 100000000));
    REQUIRE(emb.real_roots.empty());
    REQUIRE(emb.complex_roots.size() == 1);
    CHECK(emb.complex_roots[0].center.re == 0);
    CHECK(abs_rat(emb.complex_roots[0].center.im - 1) <= emb.complex_roots[0].radius);
}

TEST_CASE("shrinking eps keeps the same root assignment") {
    ZPoly f = zp({-17, -5, 6, 0, 1});
    auto coarse = refine_embeddings(f, Rat(1, 100));
    auto fine = refine_embeddings(f, Rat(1, 100000000));
    REQUIRE(coarse.real_roots.size() == fine.real_roots.size());
    for (size_t i = 0; i < coarse.real_roots.size(); ++i)
        CHECK(fine.real_roots[i].subset_of(coarse.real_roots[i]));
    REQUIRE(coarse.complex_roots.size() == fine.complex_roots.size());
    for (size_t i = 0; i < coarse.complex_roots.size(); ++i) {
        // the finer disk lies inside the coarse one
        CRat diff = fine.complex_roots[i].center - coarse.complex_roots[i].center;
        Rat reach = coarse.complex_roots[i].radius + fine.complex_roots[i].radius;
        CHECK(diff.norm2() <= reach * reach);
    }
}

TEST_CASE("isolate_all_roots returns disjoint disks covering the degree") {
    ZPoly f = zp({1, -12, 6, -12, 1});  // palindromic quartic: 2 real + 2 complex roots
    auto disks = isolate_all_roots(f, Rat(1, 100000));
    REQUIRE(disks.size() == 4);
    for (size_t i = 0; i < disks.size(); ++i)
        for (size_t j = i + 1; j < disks.size(); ++j) CHECK(disks[i].disjoint(disks[j]));
}
