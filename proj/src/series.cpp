#include "frobsum/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "frobsum/errors.hpp"
#include "frobsum/summation.hpp"

namespace frobsum {

namespace {

std::vector<std::uint64_t> checked_checkpoints(std::span<const std::uint64_t> cps,
                                               std::uint64_t x) {
    if (cps.empty()) throw std::invalid_argument("at least one checkpoint is required");
    std::vector<std::uint64_t> out(cps.begin(), cps.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.front() < 2 || out.back() > x)
        throw RangeError("checkpoints must lie in [2, X]");
    return out;
}

double kind_target(SeriesKind kind, const Rational& density, std::uint64_t x) {
    switch (kind) {
        case SeriesKind::MinMobius:
            return to_double(density);
        case SeriesKind::MaxCount:
            return to_double(density * x);
        case SeriesKind::MaxHarmonic:
            return to_double(density) * std::log(static_cast<double>(x));
        case SeriesKind::PrimePi:
            return to_double(density) * li(static_cast<double>(x));
    }
    return 0;
}

// Shared scan driver. `term` is invoked for every n in [2, X] and returns
// the contribution handling; checkpoints are emitted in ascending order.
struct Accumulator {
    SumMode mode = SumMode::Compensated;
    CompensatedSum fsum;
    Rational rsum;
    std::uint64_t count = 0;

    void add_signed_unit_over(std::uint64_t n, int sign) {
        if (mode == SumMode::ExactRational)
            rsum += Rational(sign, n);
        else
            fsum.add(static_cast<double>(sign) / static_cast<double>(n));
    }

    double value() const {
        return mode == SumMode::ExactRational ? to_double(rsum) : fsum.value();
    }
};

SumSeries run_scan(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                   std::span<const std::uint64_t> checkpoints, const SeriesOptions& opt,
                   SeriesKind kind) {
    if (x < 2 || x > sieve.limit()) throw RangeError("X must lie in [2, sieve limit]");
    const std::vector<std::uint64_t> cps = checked_checkpoints(checkpoints, x);
    sel.precompute(sieve, x, opt.threads);

    SumSeries out;
    out.kind = kind;
    out.selector = sel.describe();
    out.density = sel.target_density();
    out.exact_mode = (opt.mode == SumMode::ExactRational);

    const auto mu = sieve.mobius_table();
    const auto spf = sieve.spf_table();
    const auto pmax = sieve.pmax_table();

    Accumulator acc;
    acc.mode = opt.mode;
    std::uint64_t skipped = 0;
    std::size_t ci = 0;

    const bool min_kind = (kind == SeriesKind::MinMobius);
    const bool pi_kind = (kind == SeriesKind::PrimePi);

    for (std::uint64_t n = 2; n <= cps.back(); ++n) {
        if (min_kind) {
            const int m = mu[n];
            if (m != 0) {
                switch (sel.membership(spf[n])) {
                    case Membership::In:
                        acc.add_signed_unit_over(n, -m);  // mu*(n) = -mu(n)
                        break;
                    case Membership::Ramified:
                        ++skipped;
                        break;
                    case Membership::Out:
                        break;
                }
            }
        } else if (pi_kind) {
            if (spf[n] == n) {
                switch (sel.membership(n)) {
                    case Membership::In:
                        ++acc.count;
                        break;
                    case Membership::Ramified:
                        ++skipped;
                        break;
                    case Membership::Out:
                        break;
                }
            }
        } else {
            switch (sel.membership(pmax[n])) {
                case Membership::In:
                    if (kind == SeriesKind::MaxCount)
                        ++acc.count;
                    else
                        acc.add_signed_unit_over(n, 1);
                    break;
                case Membership::Ramified:
                    ++skipped;
                    break;
                case Membership::Out:
                    break;
            }
        }

        if (n == cps[ci]) {
            Checkpoint cp;
            cp.x = n;
            cp.skipped_ramified = skipped;
            const bool counting = (kind == SeriesKind::MaxCount || kind == SeriesKind::PrimePi);
            if (counting) {
                cp.value = static_cast<double>(acc.count);
                cp.value_exact = Rational(acc.count);
            } else {
                cp.value = acc.value();
                if (out.exact_mode) cp.value_exact = acc.rsum;
            }
            cp.target = kind_target(kind, out.density, n);
            if (out.exact_mode && kind == SeriesKind::MinMobius) {
                const Rational err = cp.value_exact - out.density;
                cp.abs_error = std::abs(to_double(err));
            } else {
                cp.abs_error = std::abs(cp.value - cp.target);
            }
            out.checkpoints.push_back(std::move(cp));
            ++ci;
            if (ci == cps.size()) break;
        }
    }
    out.skipped_ramified = skipped;
    return out;
}

}  // namespace

SumSeries min_mobius_sum(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                         std::span<const std::uint64_t> checkpoints, const SeriesOptions& opt) {
    return run_scan(sieve, sel, x, checkpoints, opt, SeriesKind::MinMobius);
}

SumSeries max_count(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                    std::span<const std::uint64_t> checkpoints, const SeriesOptions& opt) {
    return run_scan(sieve, sel, x, checkpoints, opt, SeriesKind::MaxCount);
}

SumSeries max_harmonic(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                       std::span<const std::uint64_t> checkpoints, const SeriesOptions& opt) {
    return run_scan(sieve, sel, x, checkpoints, opt, SeriesKind::MaxHarmonic);
}

SumSeries prime_pi_series(const FactorSieve& sieve, const ClassSelector& sel, std::uint64_t x,
                          std::span<const std::uint64_t> checkpoints, const SeriesOptions& opt) {
    return run_scan(sieve, sel, x, checkpoints, opt, SeriesKind::PrimePi);
}

std::pair<std::uint64_t, double> prime_count_class(const FactorSieve& sieve,
                                                   const ClassSelector& sel, std::uint64_t x) {
    const std::uint64_t cps[] = {x};
    const SumSeries s = prime_pi_series(sieve, sel, x, cps);
    return {static_cast<std::uint64_t>(s.checkpoints.back().value + 0.5),
            s.checkpoints.back().target};
}

// ---------------------------------------------------------------------------
// Li(X) by adaptive Simpson

namespace {

double inv_log(double t) { return 1.0 / std::log(t); }

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = inv_log(lm), frm = inv_log(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive(a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive(m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

}  // namespace

double li(double x) {
    if (!(x >= 2.0)) {
        if (x >= 0.0) return 0.0;
        throw std::domain_error("li: X must be nonnegative");
    }
    if (x == 2.0) return 0.0;
    const double a = 2.0, b = x;
    const double fa = inv_log(a), fb = inv_log(b), fm = inv_log(0.5 * (a + b));
    return adaptive(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 1e-9, 48);
}

// ---------------------------------------------------------------------------
// Duality identities

DualityResult duality_check(const FactorSieve& sieve, std::uint64_t n,
                            const std::map<std::uint64_t, Rational>& f) {
    if (n < 2 || n > sieve.limit()) throw RangeError("duality_check: n out of range");
    const auto fval = [&f](std::uint64_t q) -> Rational {
        const auto it = f.find(q);
        return it == f.end() ? Rational(0) : it->second;
    };

    const std::vector<std::uint32_t> primes = sieve.distinct_primes(n);
    const std::size_t k = primes.size();

    DualityResult out;
    // Non-squarefree divisors have mu = 0; only subsets of the distinct
    // primes contribute. The empty subset is d = 1 with f(1) = 0.
    out.lhs1 = 0;
    out.lhs2 = 0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        const int bits = std::popcount(mask);
        const int mu_d = (bits % 2) ? -1 : 1;
        std::uint64_t lo = 0, hi = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (1u << i)) {
                if (lo == 0) lo = primes[i];
                hi = primes[i];
            }
        }
        if (mu_d > 0) {
            out.lhs1 += fval(hi);
            out.lhs2 += fval(lo);
        } else {
            out.lhs1 -= fval(hi);
            out.lhs2 -= fval(lo);
        }
    }
    out.rhs1 = -fval(sieve.spf(n));
    out.rhs2 = -fval(sieve.pmax(n));
    out.ok = (out.lhs1 == out.rhs1) && (out.lhs2 == out.rhs2);
    return out;
}

// ---------------------------------------------------------------------------
// Convergence-rate fit

ConvergenceFit fit_convergence(const SumSeries& series) {
    std::vector<double> u, y;
    for (const Checkpoint& cp : series.checkpoints) {
        if (cp.abs_error > 0.0) {
            u.push_back(std::cbrt(std::log(static_cast<double>(cp.x))));
            y.push_back(std::log(cp.abs_error));
        }
    }
    if (u.empty()) return ConvergenceFit{true, 0.0, 1.0};
    if (u.size() < 4)
        throw std::invalid_argument("fit_convergence: need at least 4 checkpoints with nonzero error");

    const std::size_t m = u.size();
    double su = 0, sy = 0, suu = 0, suy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        su += u[i];
        sy += y[i];
        suu += u[i] * u[i];
        suy += u[i] * y[i];
    }
    const double denom = m * suu - su * su;
    if (denom == 0.0) throw std::invalid_argument("fit_convergence: degenerate abscissas");
    const double slope = (m * suy - su * sy) / denom;
    const double intercept = (sy - slope * su) / m;

    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / m;
    for (std::size_t i = 0; i < m; ++i) {
        const double fit = intercept + slope * u[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ymean) * (y[i] - ymean);
    }
    ConvergenceFit out;
    out.exact = false;
    out.k_hat = -slope;
    out.quality = (ss_tot == 0.0) ? 1.0 : 1.0 - ss_res / ss_tot;
    return out;
}

// ---------------------------------------------------------------------------
// Writers

namespace {

std::string fmt10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

const char* kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::MinMobius: return "min-mobius";
        case SeriesKind::MaxCount: return "max-count";
        case SeriesKind::MaxHarmonic: return "max-harmonic";
        case SeriesKind::PrimePi: return "prime-pi";
    }
    return "?";
}

std::string rational_str(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace

void write_csv(std::ostream& os, const SumSeries& series) {
    os << "X,value,target,abs_error,skipped_ramified\n";
    for (const Checkpoint& cp : series.checkpoints) {
        os << cp.x << ',' << fmt10(cp.value) << ',' << fmt10(cp.target) << ','
           << fmt10(cp.abs_error) << ',' << cp.skipped_ramified << '\n';
    }
}

std::string to_json(const SumSeries& series, int indent) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(series.kind);
    j["selector"] = series.selector;
    j["target_density"] = rational_str(series.density);
    j["exact_mode"] = series.exact_mode;
    j["skipped_ramified"] = series.skipped_ramified;
    auto rows = nlohmann::ordered_json::array();
    for (const Checkpoint& cp : series.checkpoints) {
        nlohmann::ordered_json row;
        row["x"] = cp.x;
        row["value"] = cp.value;
        row["target"] = cp.target;
        row["abs_error"] = cp.abs_error;
        row["difference"] = cp.value - cp.target;
        row["skipped_ramified"] = cp.skipped_ramified;
        if (series.exact_mode) row["value_exact"] = rational_str(cp.value_exact);
        rows.push_back(std::move(row));
    }
    j["checkpoints"] = std::move(rows);
    return j.dump(indent);
}

}  // namespace frobsum
