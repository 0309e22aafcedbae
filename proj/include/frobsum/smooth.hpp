#pragma once

#include <cstdint>
#include <vector>

#include "frobsum/rational.hpp"
#include "frobsum/sieve.hpp"

namespace frobsum {

/// Dickman's rho on a uniform grid. rho solves rho(b) = 1 on [0,1] and
/// -b rho'(b) = rho(b-1) for b > 1. Because the solution spans hundreds of
/// orders of magnitude, the table integrates w = log rho, whose errors stay
/// relative: one Simpson panel per grid step on w' = -exp(w(b-1) - w(b))/b,
/// with a short fixed-point iteration for the implicit endpoint and
/// midpoint. All interpolation is cubic with stencils clamped to one unit
/// interval, where the solution is analytic. Immutable once built.
class DickmanTable {
public:
    explicit DickmanTable(double beta_max = 64.0, unsigned log2_step = 10);

    double rho(double beta) const;

    double step() const noexcept { return h_; }
    double beta_max() const noexcept { return static_cast<double>(units_); }
    std::size_t grid_size() const noexcept { return values_.size(); }
    double grid_value(std::size_t i) const { return values_.at(i); }

private:
    double interp_log(double pos) const;

    double h_ = 0;
    std::size_t per_unit_ = 0;
    std::size_t units_ = 0;
    std::vector<double> logs_;    // w = log rho at the grid points
    std::vector<double> values_;  // exp(w), kept for grid queries
};

/// Norton's bound 1 / Gamma(beta + 1).
double rho_upper_bound(double beta);

/// Stirling form of the bound: exp(-beta log(beta/e)) / sqrt(2 pi beta).
/// Diagnostic only.
double stirling_rho_estimate(double beta);

/// Heuristic smooth-count bound X exp(-beta log(beta) / 2), with an
/// unspecified O-constant. Diagnostic only.
double smooth_count_bound(double x, double beta);

/// True when 1 <= beta <= (log X)^{1 - eps}, the uniform range of the
/// asymptotic Psi(X, Y) ~ X rho(beta). Diagnostic.
bool within_uniform_range(std::uint64_t x, std::uint64_t y, double eps = 2.0 / 3.0);

/// Psi(X, Y): number of n <= X with largest prime factor <= Y; n = 1 is
/// counted (pmax(1) treated as 1).
std::uint64_t psi_exact(const FactorSieve& sieve, std::uint64_t x, std::uint64_t y);

/// X * rho(log X / log Y). Requires X >= 3, Y >= 2 and beta within the table.
double hildebrand_estimate(const DickmanTable& table, std::uint64_t x, std::uint64_t y);

struct SmoothCount {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t count = 0;  // exact Psi
    double estimate = 0;      // X rho(beta)
    double beta = 0;          // log X / log Y
};

SmoothCount smooth_count(const FactorSieve& sieve, const DickmanTable& table, std::uint64_t x,
                         std::uint64_t y);

/// Both sides of the interval identity
///   integral_a^X |S(X/t, t)| dt
///     = sum_{n <= X/a, pmax(n) <= X/n} (X/n - max(pmax(n), a)),
/// evaluated independently as exact rationals. The left side integrates the
/// step function t -> |S(X/t, t)| over its breakpoints; the right side sums
/// interval lengths per n.
struct TetrisIdentity {
    Rational lhs;
    Rational rhs;
    bool equal = false;
};

TetrisIdentity tetris_identity(const FactorSieve& sieve, std::uint64_t x, std::uint64_t a);

}  // namespace frobsum
