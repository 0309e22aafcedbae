#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "frobsum/frobenius.hpp"
#include "frobsum/rational.hpp"
#include "frobsum/sieve.hpp"

namespace frobsum {

enum class SeriesKind { MinMobius, MaxCount, MaxHarmonic, PrimePi };

enum class SumMode { Compensated, ExactRational };

struct Checkpoint {
    std::uint64_t x = 0;
    double value = 0;
    double target = 0;
    double abs_error = 0;
    std::uint64_t skipped_ramified = 0;  // running tally up to x
    Rational value_exact;                // populated in exact mode
};

/// Checkpointed partial-sum trace for one selector.
struct SumSeries {
    SeriesKind kind = SeriesKind::MinMobius;
    std::string selector;
    Rational density;
    bool exact_mode = false;
    std::vector<Checkpoint> checkpoints;
    std::uint64_t skipped_ramified = 0;  // final tally
};

struct SeriesOptions {
    SumMode mode = SumMode::Compensated;
    unsigned threads = 1;  // workers for selector precomputation; 0 = hardware
};

/// sum_{2<=n<=X, selector contains pmin(n)} -mu(n)/n, recorded at each
/// checkpoint. Squarefree n whose smallest prime factor is ramified are
/// skipped and tallied. Accumulation is ascending in n.
SumSeries min_mobius_sum(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                         std::span<const std::uint64_t> checkpoints, const SeriesOptions& = {});

/// #{2 <= n <= X : selector contains pmax(n)}; target density * X.
SumSeries max_count(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                    std::span<const std::uint64_t> checkpoints, const SeriesOptions& = {});

/// sum_{2<=n<=X, selector contains pmax(n)} 1/n; target density * log X. The
/// signed difference value - target drifts toward a finite constant.
SumSeries max_harmonic(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                       std::span<const std::uint64_t> checkpoints, const SeriesOptions& = {});

/// #{p <= X prime : selector contains p}; target density * Li(X).
SumSeries prime_pi_series(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                          std::span<const std::uint64_t> checkpoints, const SeriesOptions& = {});

/// Single-point form of prime_pi_series: (count, density * Li(X)).
std::pair<std::uint64_t, double> prime_count_class(const FactorSieve& sieve,
                                                   const ClassSelector& sel, std::uint64_t x);

/// Li(X) = integral_2^X dt/log t by adaptive Simpson quadrature (1e-9).
double li(double x);

/// Both Mobius-divisor duality identities for one n, evaluated exactly:
///   sum_{d|n} mu(d) f(pmax(d)) == -f(pmin(n))
///   sum_{d|n} mu(d) f(pmin(d)) == -f(pmax(n))
/// f maps primes to rationals and f(1) = 0 implicitly; missing keys are 0.
struct DualityResult {
    Rational lhs1, rhs1;
    Rational lhs2, rhs2;
    bool ok = false;
};

DualityResult duality_check(const FactorSieve& sieve, std::uint64_t n,
                            const std::map<std::uint64_t, Rational>& f);

/// Least-squares fit of log|error| against -(log X)^{1/3} over the
/// checkpoints with nonzero error. Diagnostic only.
struct ConvergenceFit {
    bool exact = false;  // every checkpoint error was zero
    double k_hat = 0;
    double quality = 0;  // R^2 of the fit
};

ConvergenceFit fit_convergence(const SumSeries& series);

/// CSV rows "X,value,target,abs_error,skipped_ramified", floats at 10
/// significant digits.
void write_csv(std::ostream& os, const SumSeries& series);

/// JSON mirror with selector metadata.
std::string to_json(const SumSeries& series, int indent = 2);

}  // namespace frobsum
