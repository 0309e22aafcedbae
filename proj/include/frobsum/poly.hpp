#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frobsum/rational.hpp"

namespace frobsum {

class PolynomialParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown at construction when gcd(f, f') is not constant over Q.
class NotSquarefreeOverQ : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// reduce_mod: the modulus divides the leading coefficient.
class LeadingCoeffVanishes : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// ddf_pattern / root_count: input not squarefree over F_p.
class NotSquarefree : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Multiset of irreducible-factor degrees of a polynomial mod p, kept as a
/// partition sorted in descending order. For a squarefree reduction this is
/// the cycle type of Frobenius acting on the roots.
class CycleType {
public:
    CycleType() = default;
    explicit CycleType(std::vector<int> parts);

    /// Comma-separated parts, e.g. "3,1".
    static CycleType parse(std::string_view text);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int sum() const;
    int count_part(int k) const;
    /// Number of parts equal to 1 (distinct roots of a squarefree reduction).
    int root_count() const { return count_part(1); }
    std::string to_string() const;

    friend auto operator<=>(const CycleType&, const CycleType&) = default;

private:
    std::vector<int> parts_;
};

/// Polynomial over Z, constant term first, with nonzero leading coefficient,
/// degree >= 1, squarefree over Q (enforced at construction).
class IntPolynomial {
public:
    explicit IntPolynomial(std::vector<BigInt> coeffs);

    /// Accepts either the term form "x^4+x+1" (terms `[+|-] [c] [x [^e]]`,
    /// whitespace ignored, duplicate exponents rejected) or a constant-first
    /// coefficient list "1,1,0,0,1".
    static IntPolynomial parse(std::string_view text);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& coeff(std::size_t i) const { return coeffs_.at(i); }
    const BigInt& leading_coeff() const { return coeffs_.back(); }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    /// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f), exact. Requires
    /// degree >= 2; computed once at construction via the subresultant PRS.
    const BigInt& discriminant() const;

    std::string to_string() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<BigInt> coeffs_;
    BigInt disc_;
    bool has_disc_ = false;
};

/// Polynomial over F_p, constant term first, coefficients in [0, p).
struct ModPolynomial {
    std::uint64_t p = 2;
    std::vector<std::uint64_t> coeffs;

    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// Coefficientwise reduction of f mod p. Throws LeadingCoeffVanishes when
/// p divides lc(f) (the degree would drop).
ModPolynomial reduce_mod(const IntPolynomial& f, std::uint64_t p);

/// True iff p does not divide lc(f) and gcd(f mod p, f' mod p) is constant.
bool is_squarefree_mod(const IntPolynomial& f, std::uint64_t p);

/// Squarefreeness of an already-reduced polynomial: gcd(g, g') constant.
bool is_squarefree(const ModPolynomial& g);

/// Degrees of the irreducible factors of g via distinct-degree
/// factorization (gcd of g with x^{p^d} - x for d = 1, 2, ...). Requires g
/// squarefree over F_p; throws NotSquarefree otherwise.
CycleType ddf_pattern(const ModPolynomial& g);

/// Number of distinct roots of g in F_p, = deg gcd(g, x^p - x). Requires g
/// squarefree.
int root_count(const ModPolynomial& g);

/// Same count without the squarefree requirement (repeated roots counted
/// once).
int distinct_root_count(const ModPolynomial& g);

/// Resultant of two integer polynomials (constant-first coefficient
/// vectors) by the fraction-free subresultant PRS.
BigInt resultant(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

}  // namespace frobsum
