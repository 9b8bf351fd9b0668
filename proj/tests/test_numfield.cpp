#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "otk/number_field.hpp"

using namespace otk;

namespace {

ZPoly zp(std::initializer_list<long> asc) {
    std::vector<Int> c;
    for (long v : asc) c.emplace_back(v);
    return ZPoly(std::move(c));
}

FieldElement elem(const FieldPtr& F, std::initializer_list<long> coords) {
    std::vector<Rat> c;
    for (long v : coords) c.emplace_back(v);
    return FieldElement(F, std::move(c));
}

// Independent characteristic-polynomial oracle: Faddeev-LeVerrier on the
// multiplication matrix.
QPoly char_poly_oracle(const FieldElement& x) {
    int n = x.field()->degree();
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
    FieldElement basis = FieldElement::one(x.field());
    FieldElement alpha = FieldElement::generator(x.field());
    for (int j = 0; j < n; ++j) {
        FieldElement col = x * basis;
        for (int i = 0; i < n; ++i) M[i][j] = col.coords()[i];
        if (j + 1 < n) basis = basis * alpha;
    }
    auto matmul = [&](const std::vector<std::vector<Rat>>& A,
                      const std::vector<std::vector<Rat>>& B) {
        std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) C[i][j] += A[i][k] * B[k][j];
        return C;
    };
    std::vector<Rat> coeffs(n + 1, Rat(0));
    coeffs[n] = 1;
    std::vector<std::vector<Rat>> N = M;
    for (int k = 1; k <= n; ++k) {
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += N[i][i];
        Rat c = -tr / Rat(k);
        coeffs[n - k] = c;
        if (k == n) break;
        for (int i = 0; i < n; ++i) N[i][i] += c;
        N = matmul(M, N);
    }
    return QPoly(std::move(coeffs));
}

FieldElement random_element(const FieldPtr& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> cc(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Rat> c;
    for (int i = 0; i < F->degree(); ++i) c.push_back(make_rat(cc(rng), den(rng)));
    return FieldElement(F, std::move(c));
}

}  // namespace

TEST_CASE("field construction validates the defining polynomial") {
    CHECK_THROWS_AS(NumberField::create(zp({-1, 0, 0, 0, 1})), Error);  // reducible
    CHECK_THROWS_AS(NumberField::create(zp({-2, 0, 2})), Error);        // not monic
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    CHECK(F->degree() == 4);
    CHECK(F->sig() == Signature{2, 1});
}

TEST_CASE("arithmetic in Q[X]/(X^4-2)") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement alpha = FieldElement::generator(F);
    CHECK(alpha * alpha.pow(3) == FieldElement::rational(F, Rat(2)));

    FieldElement a = elem(F, {1, 0, 1, 0});   // 1 + alpha^2
    FieldElement b = elem(F, {-1, 0, 1, 0});  // alpha^2 - 1
    FieldElement q = a * b.inverse();
    CHECK(q * b == a);

    CHECK(a + FieldElement::zero(F) == a);
    CHECK_THROWS_AS(FieldElement::zero(F).inverse(), Error);
}

TEST_CASE("char_poly frozen values") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement alpha = FieldElement::generator(F);
    CHECK(char_poly(alpha) == zp({-2, 0, 0, 0, 1}).to_q());
    // alpha^2 has degree 2: (X^2-2)^2
    QPoly sq = zp({-2, 0, 1}).to_q();
    CHECK(char_poly(alpha * alpha) == sq * sq);
    CHECK(char_poly(FieldElement::rational(F, Rat(3))) ==
          pow(QPoly({Rat(-3), Rat(1)}), 4));
}

TEST_CASE("min_poly frozen values") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement alpha = FieldElement::generator(F);
    CHECK(min_poly(alpha * alpha) == zp({-2, 0, 1}).to_q());
    CHECK(min_poly(FieldElement::rational(F, Rat(5))) == QPoly({Rat(-5), Rat(1)}));
    // w = (alpha-1)/(alpha+1): substitute alpha=(1+w)/(1-w) into alpha^4=2
    FieldElement w =
        (alpha - FieldElement::one(F)) * (alpha + FieldElement::one(F)).inverse();
    CHECK(min_poly(w) == zp({1, -12, 6, -12, 1}).to_q());
}

TEST_CASE("norm and trace frozen values") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement alpha = FieldElement::generator(F);
    CHECK(norm(alpha) == Rat(-2));
    CHECK(norm(elem(F, {1, 0, 1, 0})) == Rat(1));
    CHECK(norm(FieldElement::one(F)) == Rat(1));
    CHECK(trace(FieldElement::one(F)) == Rat(4));
    CHECK(norm(FieldElement::zero(F)) == Rat(0));
}

TEST_CASE("total positivity") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    CHECK(is_totally_positive(elem(F, {1, 0, 1, 0})));       // 1 + sqrt2 > 0 twice
    CHECK(!is_totally_positive(elem(F, {-1, 1, 0, 0})));     // alpha - 1
    CHECK(is_totally_positive(FieldElement::rational(F, Rat(2))));
    CHECK_THROWS_AS(is_totally_positive(FieldElement::zero(F)), Error);
}

TEST_CASE("norm multiplicativity, trace additivity, char = min^(n/d)") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    auto G = NumberField::create(zp({2, -4, 0, 0, 0, 1}));
    std::mt19937_64 rng(55);
    for (const auto& field : {F, G}) {
        for (int i = 0; i < 100; ++i) {
            FieldElement x = random_element(field, rng);
            FieldElement y = random_element(field, rng);
            CHECK(norm(x * y) == norm(x) * norm(y));
            CHECK(trace(x + y) == trace(x) + trace(y));
            if (!x.is_zero()) {
                QPoly c = char_poly(x);
                QPoly m = min_poly(x);
                CHECK(pow(m, field->degree() / m.degree()) == c);
                CHECK(char_poly_oracle(x) == c);
            }
        }
    }
}

TEST_CASE("norm modulus matches the product over refined embeddings") {
    auto F = NumberField::create(zp({-17, -5, 6, 0, 1}));
    std::mt19937_64 rng(77);
    auto emb = F->embeddings(Rat(1, Int(1) << 40));
    for (int i = 0; i < 30; ++i) {
        FieldElement x = random_element(F, rng);
        if (x.is_zero()) continue;
        double prod = 1;
        QPoly w = x.rep();
        for (auto& iv : emb.real_roots) prod *= std::abs(w.eval(iv.mid()).get_d());
        CBox v = w.eval(emb.complex_roots[0].box());
        double re = v.re.mid().get_d(), im = v.im.mid().get_d();
        prod *= re * re + im * im;
        double exact = std::abs(norm(x).get_d());
        CHECK(std::abs(prod - exact) <= 1e-6 * std::max(1.0, exact));
    }
}

TEST_CASE("embedding values are certified enclosures") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement u = elem(F, {1, 0, 1, 0});
    auto near = [](const QInterval& iv, const Rat& target, const Rat& tol) {
        return iv.lo <= target + tol && target - tol <= iv.hi;
    };
    // both real embeddings give 1 + sqrt(2)
    for (int i = 0; i < 2; ++i) {
        QInterval v = real_embedding_value(u, i, Rat(1, 1000000));
        CHECK(near(v, parse_rat("2414213562/1000000000"), Rat(1, 1000000)));
        CHECK(v.width() <= Rat(1, 1000000));
    }
    // sigma_3(u) = 1 - sqrt(2)
    CBox c = complex_embedding_value(u, Rat(1, 1000000));
    CHECK(near(c.re, parse_rat("-414213562/1000000000"), Rat(1, 1000000)));
    CHECK(c.im.contains(Rat(0)));
}

TEST_CASE("element text round trip") {
    auto F = NumberField::create(zp({-2, 0, 0, 0, 1}));
    FieldElement x = parse_element(F, "(1, -2/3, 0, 4)");
    CHECK(x.to_text() == "(1, -2/3, 0, 4)");
    CHECK_THROWS_AS(parse_element(F, "(1, 2)"), Error);
}
