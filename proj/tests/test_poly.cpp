#include <doctest.h>

#include "frobsum/poly.hpp"
#include "frobsum/selfcheck.hpp"
#include "frobsum/sieve.hpp"

using namespace frobsum;

namespace {

ModPolynomial make_mod(std::uint64_t p, std::vector<std::uint64_t> coeffs) {
    return ModPolynomial{p, std::move(coeffs)};
}

}  // namespace

TEST_CASE("polynomial parsing accepts both grammars") {
    const IntPolynomial a = IntPolynomial::parse("x^4+x+1");
    const IntPolynomial b = IntPolynomial::parse("1,1,0,0,1");
    CHECK(a == b);
    CHECK(a.degree() == 4);
    CHECK(a.to_string() == "x^4+x+1");

    const IntPolynomial c = IntPolynomial::parse(" - x^2 + 3x - 1 ");
    CHECK(c.degree() == 2);
    CHECK(c.coeff(0) == -1);
    CHECK(c.coeff(1) == 3);
    CHECK(c.coeff(2) == -1);

    const IntPolynomial d = IntPolynomial::parse("2x^3-x");
    CHECK(d.coeffs() == std::vector<BigInt>{0, -1, 0, 2});

    CHECK(IntPolynomial::parse("x").degree() == 1);
    CHECK(IntPolynomial::parse("-12,1").coeff(0) == -12);
}

TEST_CASE("polynomial parsing rejects malformed input") {
    CHECK_THROWS_AS(IntPolynomial::parse(""), PolynomialParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("x+x"), PolynomialParseError);        // duplicate exponent
    CHECK_THROWS_AS(IntPolynomial::parse("x^2+2x^2"), PolynomialParseError);   // duplicate exponent
    CHECK_THROWS_AS(IntPolynomial::parse("1.5x"), PolynomialParseError);       // non-integer
    CHECK_THROWS_AS(IntPolynomial::parse("x^"), PolynomialParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("x y"), PolynomialParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("3"), PolynomialParseError);          // degree 0
    CHECK_THROWS_AS(IntPolynomial::parse("5,"), PolynomialParseError);
}

TEST_CASE("construction enforces squarefreeness over Q") {
    CHECK_THROWS_AS(IntPolynomial::parse("x^2-2x+1"), NotSquarefreeOverQ);  // (x-1)^2
    CHECK_THROWS_AS(IntPolynomial::parse("x^4+2x^2+1"), NotSquarefreeOverQ);
    CHECK_NOTHROW(IntPolynomial::parse("x^2-2"));
}

TEST_CASE("reduce_mod reduces coefficientwise and guards the leading term") {
    const IntPolynomial f = IntPolynomial::parse("x^4+x+1");
    const ModPolynomial g2 = reduce_mod(f, 2);
    CHECK(g2.coeffs == std::vector<std::uint64_t>{1, 1, 0, 0, 1});
    const ModPolynomial g3 = reduce_mod(f, 3);
    CHECK(g3.coeffs == std::vector<std::uint64_t>{1, 1, 0, 0, 1});

    const IntPolynomial h = IntPolynomial::parse("2x^2+4x+6");
    CHECK_THROWS_AS(reduce_mod(h, 2), LeadingCoeffVanishes);
    CHECK_NOTHROW(reduce_mod(h, 3));

    // negative coefficients land in [0, p)
    const ModPolynomial gneg = reduce_mod(IntPolynomial::parse("x^2-2"), 5);
    CHECK(gneg.coeffs == std::vector<std::uint64_t>{3, 0, 1});
}

TEST_CASE("ddf_pattern on the worked examples") {
    const IntPolynomial f = IntPolynomial::parse("x^4+x+1");
    CHECK(ddf_pattern(reduce_mod(f, 2)) == CycleType({4}));
    CHECK(ddf_pattern(reduce_mod(f, 2)) == oracle::factor_pattern_brute(reduce_mod(f, 2)));

    // x^2 - 1 over F5 splits into two linears
    CHECK(ddf_pattern(make_mod(5, {4, 0, 1})) == CycleType({1, 1}));

    const ModPolynomial g3 = reduce_mod(f, 3);
    CHECK(ddf_pattern(g3) == oracle::factor_pattern_brute(g3));

    // (x-1)^2 mod 5
    CHECK_THROWS_AS(ddf_pattern(make_mod(5, {1, 3, 1})), NotSquarefree);
}

TEST_CASE("root_count agrees with the pattern and the definitions") {
    CHECK(root_count(make_mod(5, {4, 0, 1})) == 2);  // roots 1 and 4
    const IntPolynomial f = IntPolynomial::parse("x^4+x+1");
    CHECK(root_count(reduce_mod(f, 2)) == 0);
    CHECK_THROWS_AS(root_count(make_mod(5, {1, 3, 1})), NotSquarefree);

    const FactorSieve sieve(300);
    std::uint32_t state = 7;
    for (int i = 0; i < 10; ++i) {
        const IntPolynomial g = oracle::random_squarefree_monic(state, 5);
        for (std::uint64_t p = 2; p < 100; ++p) {
            if (!sieve.is_prime(p) || !is_squarefree_mod(g, p)) continue;
            const ModPolynomial gp = reduce_mod(g, p);
            const CycleType pat = ddf_pattern(gp);
            CHECK(root_count(gp) == pat.root_count());
            CHECK(pat.sum() == g.degree());
        }
    }
}

TEST_CASE("ddf_pattern matches exhaustive factorization for random polynomials") {
    const FactorSieve sieve(300);
    std::uint32_t state = 20240601;
    for (int i = 0; i < 8; ++i) {
        const IntPolynomial f = oracle::random_squarefree_monic(state, 5);
        for (std::uint64_t p = 2; p < 100; ++p) {
            if (!sieve.is_prime(p) || !is_squarefree_mod(f, p)) continue;
            const ModPolynomial g = reduce_mod(f, p);
            CHECK(ddf_pattern(g) == oracle::factor_pattern_brute(g));
        }
    }
}

TEST_CASE("discriminants: textbook quadratics and the Sylvester oracle") {
    CHECK(IntPolynomial::parse("x^2+1").discriminant() == -4);
    CHECK(IntPolynomial::parse("x^2+x+1").discriminant() == -3);
    // disc(x^3 + px + q) = -4p^3 - 27q^2
    CHECK(IntPolynomial::parse("x^3-x+1").discriminant() == BigInt(4 - 27));
    CHECK(IntPolynomial::parse("x^4+x+1").discriminant() == 229);
    CHECK_THROWS_AS(IntPolynomial::parse("3x+1").discriminant(), std::domain_error);

    std::uint32_t state = 424242;
    for (int i = 0; i < 100; ++i) {
        const IntPolynomial f = oracle::random_squarefree_monic(state, 6);
        CHECK(f.discriminant() == oracle::sylvester_discriminant(f));
    }
}

TEST_CASE("resultant agrees with the Sylvester determinant on random pairs") {
    std::uint32_t state = 99;
    auto random_poly = [&state](int maxdeg) {
        const int deg = 1 + static_cast<int>(oracle::xorshift32(state) % static_cast<std::uint32_t>(maxdeg));
        std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
        for (int i = 0; i <= deg; ++i)
            c[static_cast<std::size_t>(i)] = static_cast<int>(oracle::xorshift32(state) % 21) - 10;
        if (c.back() == 0) c.back() = 1;
        return c;
    };
    for (int i = 0; i < 200; ++i) {
        const auto a = random_poly(5);
        const auto b = random_poly(5);
        CHECK(resultant(a, b) == oracle::sylvester_resultant(a, b));
    }
}

TEST_CASE("is_squarefree_mod ties to the discriminant") {
    const IntPolynomial f = IntPolynomial::parse("x^4+x+1");  // disc = 229
    CHECK(is_squarefree_mod(f, 2));
    CHECK(is_squarefree_mod(f, 3));
    CHECK_FALSE(is_squarefree_mod(f, 229));
    CHECK_FALSE(is_squarefree_mod(IntPolynomial::parse("x^2-2"), 2));

    const FactorSieve sieve(300);
    std::uint32_t state = 31337;
    for (int i = 0; i < 10; ++i) {
        const IntPolynomial g = oracle::random_squarefree_monic(state, 5);
        const BigInt disc = g.discriminant();
        for (std::uint64_t p = 2; p < 200; ++p) {
            if (!sieve.is_prime(p)) continue;
            if (!is_squarefree_mod(g, p)) CHECK(disc % p == 0);
        }
    }
}

TEST_CASE("cycle type parsing and ordering") {
    CHECK(CycleType::parse("2,2").parts() == std::vector<int>{2, 2});
    CHECK(CycleType::parse("1,3").parts() == std::vector<int>{3, 1});  // sorted descending
    CHECK(CycleType({3, 1}).to_string() == "3,1");
    CHECK(CycleType({3, 1}).root_count() == 1);
    CHECK(CycleType({1, 1, 2}).root_count() == 2);
    CHECK_THROWS_AS(CycleType::parse("2,,1"), PolynomialParseError);
    CHECK_THROWS_AS(CycleType({0, 1}), std::invalid_argument);
}
