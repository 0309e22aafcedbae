#include "frobsum/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frobsum/errors.hpp"

namespace frobsum {

// ---------------------------------------------------------------------------
// Dickman table

namespace {

// Lagrange value at position x for nodes 0..n-1 (n <= 4)
double lagrange(const double* y, int n, double x) {
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        double l = 1;
        for (int m = 0; m < n; ++m)
            if (m != i) l *= (x - m) / (i - m);
        acc += y[i] * l;
    }
    return acc;
}

}  // namespace

DickmanTable::DickmanTable(double beta_max, unsigned log2_step) {
    if (!(beta_max >= 2.0) || beta_max > 128.0)
        throw std::invalid_argument("beta_max must lie in [2, 128]");
    if (log2_step < 4 || log2_step > 16)
        throw std::invalid_argument("log2_step must lie in [4, 16]");
    per_unit_ = std::size_t{1} << log2_step;
    h_ = 1.0 / static_cast<double>(per_unit_);
    units_ = static_cast<std::size_t>(std::ceil(beta_max));
    values_.assign(units_ * per_unit_ + 1, 1.0);

    // Each grid value solves the integral form beta rho(beta) =
    // integral_{beta-1}^{beta} rho(u) du. The window is a sum of positive
    // terms, so relative accuracy survives the superexponential decay
    // (stepping the ODE instead cancels catastrophically once rho is tiny).
    // Every h-panel is integrated by the cubic through 4 grid nodes clamped
    // to the panel's unit interval, where rho is analytic; the panels next
    // to the unknown endpoint fall back to one-sided rules. The unknown
    // enters linearly with coefficient c: rho_i = Q / (beta - c).

    // integrals of the cubic Lagrange basis (nodes 0..3) over [s, s+1]
    static constexpr double kCubic[3][4] = {
        {9.0 / 24, 19.0 / 24, -5.0 / 24, 1.0 / 24},
        {-1.0 / 24, 13.0 / 24, 13.0 / 24, -1.0 / 24},
        {1.0 / 24, -5.0 / 24, 19.0 / 24, 9.0 / 24},
    };
    // integral over [1, 2] of the quadratic basis on nodes 0..2
    static constexpr double kQuadRight[3] = {-1.0 / 12, 8.0 / 12, 5.0 / 12};

    for (std::size_t i = per_unit_ + 1; i < values_.size(); ++i) {
        const double beta = static_cast<double>(i) * h_;
        double q_known = 0;
        double c_self = 0;
        auto add = [&](std::size_t idx, double w) {
            if (idx == i)
                c_self += w;
            else
                q_known += w * values_[idx];
        };
        for (std::size_t p = i - per_unit_; p < i; ++p) {  // panel [p, p+1]
            const std::size_t bb = (p / per_unit_) * per_unit_;
            const std::size_t lo =
                std::clamp(p >= 1 ? p - 1 : std::size_t{0}, bb, bb + per_unit_ - 3);
            if (lo + 3 <= i) {
                const std::size_t s = p - lo;
                for (std::size_t t = 0; t < 4; ++t) add(lo + t, h_ * kCubic[s][t]);
            } else if (p >= bb + 1) {
                for (std::size_t t = 0; t < 3; ++t) add(p - 1 + t, h_ * kQuadRight[t]);
            } else {
                add(p, 0.5 * h_);
                add(p + 1, 0.5 * h_);
            }
        }
        values_[i] = q_known / (beta - c_self);
    }

    logs_.resize(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) logs_[i] = std::log(values_[i]);
}

double DickmanTable::interp_log(double pos) const {
    if (pos <= static_cast<double>(per_unit_)) return 0.0;  // beta <= 1
    std::size_t blk = static_cast<std::size_t>(pos) / per_unit_;
    if (blk >= units_) blk = units_ - 1;
    const std::size_t base = blk * per_unit_;
    const double local = pos - static_cast<double>(base);
    const long j = static_cast<long>(local);
    // 4-point stencil clamped inside this unit block, where w is analytic
    const long lo = std::clamp<long>(j - 1, 0, static_cast<long>(per_unit_) - 3);
    return lagrange(&logs_[base + static_cast<std::size_t>(lo)], 4, local - static_cast<double>(lo));
}

double DickmanTable::rho(double beta) const {
    if (!(beta >= 0.0)) throw std::domain_error("rho: beta must be nonnegative");
    if (beta > beta_max() * (1.0 + 1e-15))
        throw RangeError("rho: beta exceeds the table range");
    if (beta <= 1.0) return 1.0;
    const double pos = beta * static_cast<double>(per_unit_);
    if (pos >= static_cast<double>(logs_.size() - 1)) return values_.back();
    return std::exp(interp_log(pos));
}

// ---------------------------------------------------------------------------
// Bounds and diagnostics

double rho_upper_bound(double beta) {
    if (!(beta >= 0.0)) throw std::domain_error("rho_upper_bound: beta must be nonnegative");
    return std::exp(-std::lgamma(beta + 1.0));
}

double stirling_rho_estimate(double beta) {
    if (!(beta > 0.0)) throw std::domain_error("stirling_rho_estimate: beta must be positive");
    return std::exp(-beta * std::log(beta / std::numbers::e)) /
           std::sqrt(2.0 * std::numbers::pi * beta);
}

double smooth_count_bound(double x, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("smooth_count_bound: beta must be positive");
    return x * std::exp(-beta * std::log(beta) / 2.0);
}

bool within_uniform_range(std::uint64_t x, std::uint64_t y, double eps) {
    if (x < 3 || y < 2) return false;
    const double beta = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
    return beta >= 1.0 &&
           beta <= std::pow(std::log(static_cast<double>(x)), 1.0 - eps);
}

// ---------------------------------------------------------------------------
// Exact smooth counting

std::uint64_t psi_exact(const FactorSieve& sieve, std::uint64_t x, std::uint64_t y) {
    if (x < 1 || x > sieve.limit() || y < 1 || y > sieve.limit())
        throw RangeError("psi_exact: X and Y must lie in [1, sieve limit]");
    const auto pmax = sieve.pmax_table();
    std::uint64_t count = 1;  // n = 1
    for (std::uint64_t n = 2; n <= x; ++n)
        if (pmax[n] <= y) ++count;
    return count;
}

double hildebrand_estimate(const DickmanTable& table, std::uint64_t x, std::uint64_t y) {
    if (x < 3 || y < 2) throw RangeError("hildebrand_estimate: requires X >= 3, Y >= 2");
    const double beta = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
    return static_cast<double>(x) * table.rho(beta);
}

SmoothCount smooth_count(const FactorSieve& sieve, const DickmanTable& table, std::uint64_t x,
                         std::uint64_t y) {
    SmoothCount out;
    out.x = x;
    out.y = y;
    out.count = psi_exact(sieve, x, y);
    out.beta = std::log(static_cast<double>(x)) / std::log(static_cast<double>(y));
    out.estimate = hildebrand_estimate(table, x, y);
    return out;
}

// ---------------------------------------------------------------------------
// The interval identity

namespace {

// floor of a positive rational
std::uint64_t rational_floor(const Rational& r) {
    const BigInt q = numerator(r) / denominator(r);
    return q.convert_to<std::uint64_t>();
}

}  // namespace

TetrisIdentity tetris_identity(const FactorSieve& sieve, std::uint64_t x, std::uint64_t a) {
    if (a < 2 || a > x || x > sieve.limit())
        throw RangeError("tetris_identity: requires 2 <= a <= X <= sieve limit");
    const auto pmax = sieve.pmax_table();
    const std::uint64_t n_top = x / a;

    TetrisIdentity out;

    // Right side: each n <= X/a with pmax(n) <= X/n contributes the length
    // of [max(pmax(n), a), X/n].
    out.rhs = 0;
    for (std::uint64_t n = 1; n <= n_top; ++n) {
        const std::uint64_t pm = pmax[n];
        if (pm * n > x) continue;  // pmax(n) > X/n
        const std::uint64_t lo = std::max<std::uint64_t>(pm, a);
        const Rational len = Rational(x, n) - lo;
        if (len > 0) out.rhs += len;
    }

    // Left side: |S(X/t, t)| is a step function of t with breakpoints at the
    // values X/n and pmax(n); integrate it by re-counting at each interval's
    // midpoint.
    std::vector<Rational> cuts;
    cuts.emplace_back(a);
    cuts.emplace_back(x);
    for (std::uint64_t n = 1; n <= n_top; ++n) {
        const Rational xn(x, n);
        if (xn >= a && xn <= x) cuts.push_back(xn);
        const std::uint64_t pm = pmax[n];
        if (pm >= a && pm <= x) cuts.emplace_back(pm);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    out.lhs = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational width = cuts[i + 1] - cuts[i];
        const Rational mid = cuts[i] + width / 2;
        const std::uint64_t n_max = rational_floor(Rational(x) / mid);
        const std::uint64_t y_max = rational_floor(mid);
        std::uint64_t count = 0;
        for (std::uint64_t n = 1; n <= n_max; ++n)
            if (pmax[n] <= y_max) ++count;
        if (count) out.lhs += width * count;
    }

    out.equal = (out.lhs == out.rhs);
    return out;
}

}  // namespace frobsum
