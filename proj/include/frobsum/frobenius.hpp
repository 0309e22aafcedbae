#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobsum/poly.hpp"
#include "frobsum/rational.hpp"
#include "frobsum/sieve.hpp"

namespace frobsum {

/// Result of classifying one prime against a polynomial: either the prime is
/// ramified in the splitting field (p divides lc(f) or f mod p is not
/// squarefree), or it carries the factorization pattern of f mod p.
struct PrimeClass {
    bool ramified = false;
    CycleType pattern;  // meaningful only when !ramified

    static PrimeClass make_ramified() { return {true, {}}; }
    static PrimeClass make_unramified(CycleType c) { return {false, std::move(c)}; }
};

PrimeClass classify_prime(const IntPolynomial& f, std::uint64_t p);

/// Fraction of permutations in S_n with the given cycle type:
/// 1 / prod_k (k^{m_k} m_k!) where m_k is the multiplicity of part k.
Rational symmetric_density(const CycleType& pattern, int n);

std::uint64_t euler_phi(std::uint64_t k);

/// How a pattern selector treats primes whose reduction is not squarefree.
/// Exclude skips them (they are tallied separately by the series
/// computations); RootCount classifies them by the number of distinct roots
/// of f mod p, matching against the root counts of the selected patterns.
/// RootCount is intended for pattern sets that are unions of root-count
/// classes (e.g. "no roots" = {4 | 2,2}, "one root" = {3,1} for a quartic).
enum class RamifiedPolicy { Exclude, RootCount };

enum class Membership { In, Out, Ramified };

/// A predicate on primes together with the density its indicator sums
/// should converge to. Three variants: residue classes mod k, factorization
/// pattern sets for a polynomial, and arbitrary predicates with a declared
/// density. Immutable and cheap to copy; pattern classification results are
/// memoized per prime.
class ClassSelector {
public:
    /// Primes p with p mod k in `residues` (each coprime to k). Target
    /// density |L| / phi(k). Primes dividing k count as ramified.
    static ClassSelector residue_set(std::uint64_t k, std::vector<std::uint64_t> residues);

    /// Primes whose factorization pattern mod p lies in `patterns` (each a
    /// partition of deg f). Target density is the sum of the patterns'
    /// symmetric-group densities, valid when Gal(f) is the full symmetric
    /// group; pass `density_override` for other Galois groups.
    static ClassSelector pattern_set(IntPolynomial f, std::vector<CycleType> patterns,
                                     RamifiedPolicy policy = RamifiedPolicy::Exclude,
                                     std::optional<Rational> density_override = {});

    /// Arbitrary membership with a declared density in [0, 1].
    static ClassSelector explicit_predicate(std::function<bool(std::uint64_t)> membership,
                                            Rational density);

    /// The whole-group selector: every prime, density 1.
    static ClassSelector all_primes();

    Membership membership(std::uint64_t p) const;
    bool contains(std::uint64_t p) const { return membership(p) == Membership::In; }

    const Rational& target_density() const noexcept { return density_; }
    const std::string& describe() const noexcept { return desc_; }

    /// Classify every prime <= upto from the sieve into the memo cache,
    /// optionally in parallel (the classification is a pure function, so the
    /// result does not depend on the thread count). Call before sharing the
    /// selector across threads; the lazy path is not synchronized against
    /// concurrent readers.
    void precompute(const FactorSieve& sieve, std::uint64_t upto, unsigned threads = 1) const;

private:
    ClassSelector() = default;

    enum class Kind { Residue, Pattern, Predicate };

    std::uint8_t classify_pattern_membership(std::uint64_t p) const;

    Kind kind_ = Kind::Predicate;

    // Residue variant
    std::uint64_t modulus_ = 0;
    std::vector<std::uint8_t> residue_in_;  // indexed by p mod k

    // Pattern variant
    std::shared_ptr<const IntPolynomial> poly_;
    std::vector<CycleType> patterns_;
    RamifiedPolicy policy_ = RamifiedPolicy::Exclude;
    std::vector<int> pattern_root_counts_;

    struct Cache {
        std::mutex m;
        std::vector<std::uint8_t> code;  // 0 unknown, else Membership+1
    };
    std::shared_ptr<Cache> cache_;

    // Predicate variant
    std::function<bool(std::uint64_t)> pred_;

    Rational density_ = 0;
    std::string desc_;
};

/// Parse "k:l1,l2,..." into the arguments of residue_set.
std::pair<std::uint64_t, std::vector<std::uint64_t>> parse_residue_spec(std::string_view text);

/// Parse "4|2,2" into a list of cycle types (patterns separated by '|',
/// parts by ',').
std::vector<CycleType> parse_pattern_list(std::string_view text);

/// Parse "a/b" or "a" into a rational in [0, 1].
Rational parse_density(std::string_view text);

}  // namespace frobsum
