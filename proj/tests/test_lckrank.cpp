#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "otk/rank.hpp"

using namespace otk;

namespace {

ZPoly zp(std::initializer_list<long> asc) {
    std::vector<Int> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}

}  // namespace

TEST_CASE("betti1") {
    CHECK(betti1(NumberField::create(zp({-2, 0, 0, 0, 1}))) == 2);
    CHECK(betti1(NumberField::create(zp({-17, -5, 6, 0, 1}))) == 2);
    CHECK(betti1(NumberField::create(zp({2, -4, 0, 0, 0, 1}))) == 3);
    CHECK_THROWS_AS(betti1(NumberField::create(zp({1, 0, 1}))), Error);       // s = 0
    CHECK_THROWS_AS(betti1(NumberField::create(zp({-1, -2, 1, 1}))), Error);  // t = 0
}

TEST_CASE("subfield search on x^4-2 finds Q(sqrt 2)") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    auto outcome = find_index2_totally_real_subfield(F);
    REQUIRE(std::holds_alternative<SubfieldCertificate>(outcome));
    const auto& cert = std::get<SubfieldCertificate>(outcome);
    CHECK(cert.g == zp({-2, 0, 1}));
    CHECK(verify_subfield_certificate(F, cert));
    // the quadratic factor is X^2 +- Y over E = Q[Y]/(Y^2-2)
    CHECK(cert.quad_b.is_zero());
    CHECK(cert.quad_c.degree() == 1);
    // f = (X^2 + c)(X^2 - c) with c = +-gamma
    REQUIRE(cert.cofactor.size() == 3);
    CHECK(cert.cofactor[2] == QPoly::constant(Rat(1)));
    CHECK(cert.cofactor[1].is_zero());
    CHECK(cert.cofactor[0] == -cert.quad_c);
}

TEST_CASE("subfield search on the S4 field is exhausted") {
    auto F = NumberField::create(zp({-17, -5, 6, 0, 1}));
    auto outcome = find_index2_totally_real_subfield(F);
    REQUIRE(std::holds_alternative<ExhaustionProof>(outcome));
    const auto& proof = std::get<ExhaustionProof>(outcome);
    CHECK(proof.matchings_tried == 1);
    CHECK(!proof.failures.empty());
}

TEST_CASE("subfield search rejects odd degree") {
    auto F = NumberField::create(zp({2, -4, 0, 0, 0, 1}));
    CHECK_THROWS_AS(find_index2_totally_real_subfield(F), Error);
}

TEST_CASE("subfield from the unimodular unit") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement alpha = FieldElement::generator(F);
    FieldElement w =
        (alpha - FieldElement::one(F)) * (alpha + FieldElement::one(F)).inverse();
    UnitElement u{w, 1, true};
    auto cert = subfield_from_unimodular_unit(u);
    // gamma = w + 1/w has minimal polynomial Y^2 - 12Y + 4 (roots 6 +- 4 sqrt2)
    CHECK(cert.g == zp({4, -12, 1}));
    CHECK(verify_subfield_certificate(F, cert));

    // same field as the matching-search certificate: discriminants share
    // their squarefree part (128 = 8 * 4^2 vs 8)
    Int d1 = discriminant(cert.g);
    Int d2 = discriminant(zp({-2, 0, 1}));
    Int prod = d1 * d2;  // isomorphic quadratic fields iff d1*d2 is a square
    CHECK(mpz_perfect_square_p(prod.get_mpz_t()));

    UnitElement one{FieldElement::one(F), 1, true};
    CHECK_THROWS_AS(subfield_from_unimodular_unit(one), Error);
    UnitElement not_uni{FieldElement::from_poly(F, QPoly({Rat(1), Rat(0), Rat(1)})), 1,
                        true};
    CHECK_THROWS_AS(subfield_from_unimodular_unit(not_uni), Error);
}

TEST_CASE("classify: the three example fields") {
    {
        auto r = classify(NumberField::create(zp({-2, 0, 0, 0, 1})));
        CHECK(r.s == 2);
        CHECK(r.t == 1);
        CHECK(r.b1 == 2);
        CHECK(r.dim_c == 3);
        CHECK(r.kase == RankReport::Case::half);
        CHECK(r.rank == 1);
        CHECK(r.cert_kind == RankReport::CertKind::subfield);
        REQUIRE(r.subfield.has_value());
        CHECK(r.subfield->g == zp({-2, 0, 1}));
    }
    {
        auto r = classify(NumberField::create(zp({-17, -5, 6, 0, 1})));
        CHECK(r.b1 == 2);
        CHECK(r.kase == RankReport::Case::maximal);
        CHECK(r.rank == 2);
        CHECK(r.cert_kind == RankReport::CertKind::no_proper_subfield);
        REQUIRE(r.galois.has_value());
        CHECK(r.galois->witnesses.size() == 3);
    }
    {
        auto r = classify(NumberField::create(zp({2, -4, 0, 0, 0, 1})));
        CHECK(r.s == 3);
        CHECK(r.b1 == 3);
        CHECK(r.kase == RankReport::Case::maximal);
        CHECK(r.rank == 3);
        CHECK(r.cert_kind == RankReport::CertKind::odd_degree);
    }
}

TEST_CASE("classify gate failures") {
    CHECK_THROWS_AS(classify(NumberField::create(zp({1, 0, 1}))), Error);
    CHECK_THROWS_AS(classify(NumberField::create(zp({-1, -2, 1, 1}))), Error);
}

TEST_CASE("rank bounds and case consistency") {
    for (auto poly : {zp({-2, 0, 0, 0, 1}), zp({-17, -5, 6, 0, 1}),
                      zp({2, -4, 0, 0, 0, 1})}) {
        auto r = classify(NumberField::create(poly));
        REQUIRE(r.rank.has_value());
        CHECK(*r.rank >= 1);
        CHECK(*r.rank <= r.b1);
        if (r.kase == RankReport::Case::half) CHECK(*r.rank * 2 == r.b1);
    }
}

TEST_CASE("unit cross-check agrees with the classification") {
    {
        auto r = classify(NumberField::create(zp({-2, 0, 0, 0, 1})),
                          ClassifyOptions{200, 3});
        CHECK(r.crosscheck_ran);
        CHECK(r.crosscheck_found_unimodular_unit);  // w has coordinates within 3
        CHECK(r.crosscheck_consistent);
    }
    {
        auto r = classify(NumberField::create(zp({-17, -5, 6, 0, 1})),
                          ClassifyOptions{200, 3});
        CHECK(r.crosscheck_ran);
        CHECK(!r.crosscheck_found_unimodular_unit);
        CHECK(r.crosscheck_consistent);
    }
}

TEST_CASE("an insufficient prime budget falls back to the matching search") {
    // p = 5 supplies the transposition witness; below that the classifier
    // must decide through the exhaustive matching refutation instead
    auto r = classify(NumberField::create(zp({-17, -5, 6, 0, 1})),
                      ClassifyOptions{3, 0});
    CHECK(r.kase == RankReport::Case::maximal);
    CHECK(r.rank == 2);
    CHECK(r.cert_kind == RankReport::CertKind::matching_exhausted);
    REQUIRE(r.exhaustion.has_value());
    CHECK(r.exhaustion->matchings_tried == 1);
}

TEST_CASE("galois certificate and matching search agree on x^4-2") {
    // inconclusive S_n certificate together with a found subfield
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    auto cert = certify_symmetric_group(F->defining(), 100);
    CHECK(cert.conclusion == GaloisCertificate::Conclusion::inconclusive);
    auto outcome = find_index2_totally_real_subfield(F);
    CHECK(std::holds_alternative<SubfieldCertificate>(outcome));
}

TEST_CASE("random gated fields classify consistently") {
    std::mt19937_64 rng(987654321);
    std::uniform_int_distribution<long> cc(-12, 12);
    int quartics = 0, quintics = 0;
    while (quartics + quintics < 40) {
        int deg = (quartics < 28) ? 4 : 5;
        std::vector<Int> c(deg + 1);
        for (int i = 0; i < deg; ++i) c[i] = cc(rng);
        c[deg] = 1;
        ZPoly f(std::move(c));
        if (!certify_irreducible(f).irreducible) continue;
        Signature sig = signature(f);
        if (!(sig.t == 1 && sig.s >= 1)) continue;
        auto F = NumberField::create(f);
        RankReport r = classify(F);
        if (r.kase == RankReport::Case::undecided) continue;  // none expected
        (deg == 4 ? quartics : quintics) += 1;
        REQUIRE(r.rank.has_value());
        CHECK(*r.rank >= 1);
        CHECK(*r.rank <= r.b1);
        if (deg == 5) {
            CHECK(r.cert_kind == RankReport::CertKind::odd_degree);
            CHECK(*r.rank == r.b1);
        }
        if (r.kase == RankReport::Case::half) {
            CHECK(r.b1 % 2 == 0);
            CHECK(*r.rank * 2 == r.b1);
            REQUIRE(r.subfield.has_value());
            CHECK(verify_subfield_certificate(F, *r.subfield));
        }
        if (r.cert_kind == RankReport::CertKind::no_proper_subfield) {
            REQUIRE(r.galois.has_value());
            CHECK(recheck_galois(f, *r.galois));
            // the matching search must agree with the group-theoretic route
            auto outcome = find_index2_totally_real_subfield(F);
            CHECK(std::holds_alternative<ExhaustionProof>(outcome));
        }
    }
}

TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_rational_in(QInterval(parse_rat("31/10"), parse_rat("33/10"))) ==
          parse_rat("13/4"));
    CHECK(simplest_rational_in(QInterval(parse_rat("2"), parse_rat("3"))) == Rat(2));
    CHECK(simplest_rational_in(QInterval(parse_rat("-1/3"), parse_rat("-1/4"))) ==
          parse_rat("-1/3"));
    CHECK(simplest_rational_in(QInterval(parse_rat("-1/2"), parse_rat("1/3"))) == Rat(0));
}
