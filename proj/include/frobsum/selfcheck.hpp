#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frobsum/poly.hpp"
#include "frobsum/sieve.hpp"

namespace frobsum::oracle {

/// Factor degrees of g (with multiplicity) by exhaustive trial division:
/// root stripping by evaluation, then division by every monic quadratic.
/// Supports deg g <= 5. Independent of the DDF implementation.
CycleType factor_pattern_brute(const ModPolynomial& g);

/// Resultant as the determinant of the Sylvester matrix, by fraction-free
/// Bareiss elimination. Independent of the subresultant PRS.
BigInt sylvester_resultant(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

/// Discriminant through the Sylvester route.
BigInt sylvester_discriminant(const IntPolynomial& f);

/// Psi(X, Y) by per-n trial factoring; no sieve involved. Small X only.
std::uint64_t psi_brute(std::uint64_t x, std::uint64_t y);

/// Random monic squarefree-over-Q polynomial of degree in [2, max_degree],
/// coefficients in [-9, 9]. Deterministic in the seed state.
IntPolynomial random_squarefree_monic(std::uint32_t& state, int max_degree);

/// xorshift32 step; the oracles draw from this so runs are reproducible
/// from a single integer seed.
inline std::uint32_t xorshift32(std::uint32_t& state) {
    state ^= state << 13;
    state ^= state >> 17;
    state ^= state << 5;
    return state;
}

}  // namespace frobsum::oracle

namespace frobsum {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfcheckOptions {
    std::uint64_t duality_n_max = 10'000;
    unsigned duality_trials = 5;
    std::uint32_t seed = 0x5eed;
};

/// The invariant suite: duality exactness, interval-identity exactness,
/// Dickman closed form and the Gamma bound, DDF against the brute-force
/// oracle, and pattern-class partition additivity. The sieve limit caps the
/// ranges actually exercised.
std::vector<CheckResult> run_selfcheck(const FactorSieve& sieve, const SelfcheckOptions& = {});

}  // namespace frobsum
