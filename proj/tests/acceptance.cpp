// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// Criterion 8 is expected to fail: at X = 1e6, Y = 1e3 the main-term
// estimate X rho(2) sits about 12% below the exact count, not within the 5%
// demanded, and the gap shrinks only logarithmically in X. The check is
// implemented as stated and reports the measured ratio.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "frobsum/frobenius.hpp"
#include "frobsum/selfcheck.hpp"
#include "frobsum/series.hpp"
#include "frobsum/smooth.hpp"

using namespace frobsum;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%2d] %-28s %s  (%s)\n", idx, name.c_str(), pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// peak resident set in MiB from /proc/self/status, or -1 if unavailable
double peak_rss_mib() {
    std::ifstream st("/proc/self/status");
    std::string line;
    while (std::getline(st, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream is(line.substr(6));
            double kb = 0;
            is >> kb;
            return kb / 1024.0;
        }
    }
    return -1.0;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

int main() {
    const IntPolynomial quartic = IntPolynomial::parse("x^4+x+1");
    const std::vector<CycleType> no_root_patterns = {CycleType({4}), CycleType({2, 2})};
    const std::vector<CycleType> one_root_patterns = {CycleType({3, 1})};

    // ---- 1. Example table reproduction at X = 1e5 ------------------------
    {
        const auto t0 = std::chrono::steady_clock::now();
        const FactorSieve sieve(100'000);
        const std::vector<std::uint64_t> cps = {20'000, 40'000, 60'000, 80'000, 100'000};
        const double expect_no_roots[] = {0.3730, 0.3741, 0.3738, 0.3735, 0.3734};
        const double expect_one_root[] = {0.3342, 0.3328, 0.3337, 0.3330, 0.3338};

        // the published table classifies the lone ramified prime 229 by its
        // root count, so the reproduction uses the root-count policy
        const ClassSelector s0 = ClassSelector::pattern_set(quartic, no_root_patterns,
                                                            RamifiedPolicy::RootCount);
        const ClassSelector s1 = ClassSelector::pattern_set(quartic, one_root_patterns,
                                                            RamifiedPolicy::RootCount);
        const SumSeries r0 = min_mobius_sum(sieve, s0, 100'000, cps);
        const SumSeries r1 = min_mobius_sum(sieve, s1, 100'000, cps);
        double worst = 0;
        for (std::size_t i = 0; i < cps.size(); ++i) {
            worst = std::max(worst, std::abs(r0.checkpoints[i].value - expect_no_roots[i]));
            worst = std::max(worst, std::abs(r1.checkpoints[i].value - expect_one_root[i]));
        }
        const double secs = seconds_since(t0);
        report(1, "example-table", worst <= 5e-4 && secs < 5.0,
               "max dev " + fmt(worst) + ", " + fmt(secs) + " s");
    }

    // ---- big sieve shared by criteria 2, 3, 4, 8, 9 ----------------------
    const auto t_big = std::chrono::steady_clock::now();
    const FactorSieve big(10'000'000);

    // ---- 2. Pattern-class limits at X = 1e7 ------------------------------
    {
        const std::vector<std::uint64_t> cps = {10'000'000};
        SeriesOptions opt;
        opt.threads = 0;
        const ClassSelector s0 = ClassSelector::pattern_set(quartic, no_root_patterns,
                                                            RamifiedPolicy::RootCount);
        const ClassSelector s1 = ClassSelector::pattern_set(quartic, one_root_patterns,
                                                            RamifiedPolicy::RootCount);
        const double v0 = min_mobius_sum(big, s0, 10'000'000, cps, opt).checkpoints[0].value;
        const double v1 = min_mobius_sum(big, s1, 10'000'000, cps, opt).checkpoints[0].value;
        const double d0 = std::abs(v0 - 3.0 / 8.0);
        const double d1 = std::abs(v1 - 1.0 / 3.0);
        const double secs = seconds_since(t_big);
        const double mem = peak_rss_mib();
        const bool pass = d0 <= 0.01 && d1 <= 0.01 && secs < 60.0 && (mem < 0 || mem < 1024.0);
        report(2, "theorem1-limits-1e7", pass,
               "|dev| " + fmt(d0) + " / " + fmt(d1) + ", " + fmt(secs) + " s, " + fmt(mem) +
                   " MiB peak");
    }

    // ---- 3. Cyclotomic case at X = 1e6 ------------------------------------
    {
        const std::vector<std::uint64_t> cps = {1'000'000};
        double worst = 0;
        for (const auto& [k, l] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                 {4, 1}, {4, 3}, {3, 1}}) {
            const ClassSelector sel = ClassSelector::residue_set(k, {l});
            const double v = min_mobius_sum(big, sel, 1'000'000, cps).checkpoints[0].value;
            worst = std::max(worst, std::abs(v - 0.5));
        }
        report(3, "cyclotomic-residues-1e6", worst <= 0.02, "max dev " + fmt(worst));
    }

    // ---- 4. Largest-prime counts at X = 1e6 -------------------------------
    {
        const std::vector<std::uint64_t> cps = {1'000'000};
        const ClassSelector sel = ClassSelector::residue_set(4, {1});
        const double v = max_count(big, sel, 1'000'000, cps).checkpoints[0].value;
        const double rel = std::abs(v / 500'000.0 - 1.0);
        report(4, "theorem2-count-1e6", rel <= 0.05,
               "count " + fmt(v) + ", rel dev " + fmt(rel));
    }

    // ---- 5. Duality identities, 100 randomized prime functions -----------
    {
        std::vector<std::uint32_t> primes;
        for (std::uint64_t p = 2; p <= 10'000; ++p)
            if (big.is_prime(p)) primes.push_back(static_cast<std::uint32_t>(p));
        std::uint32_t state = 0xd1a1;
        std::uint64_t bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            std::map<std::uint64_t, Rational> f;
            for (std::uint32_t p : primes) {
                const int num = static_cast<int>(oracle::xorshift32(state) % 19) - 9;
                const int den = 1 + static_cast<int>(oracle::xorshift32(state) % 9);
                f[p] = Rational(num, den);
            }
            for (std::uint64_t n = 2; n <= 10'000; ++n)
                if (!duality_check(big, n, f).ok) ++bad;
        }
        report(5, "duality-identities", bad == 0,
               "n <= 1e4, 100 trials, " + std::to_string(bad) + " failures");
    }

    // ---- 6. Interval identity, exact rationals ----------------------------
    {
        bool ok = true;
        for (std::uint64_t x : {100, 1000, 10000})
            for (std::uint64_t a : {2, 10, 97})
                ok = ok && tetris_identity(big, x, a).equal;
        report(6, "interval-identity", ok, ok ? "lhs == rhs for all 9 (X, a)" : "mismatch");
    }

    // ---- 7. Dickman suite --------------------------------------------------
    {
        const DickmanTable coarse(64.0, 10);
        const DickmanTable fine(16.0, 11);
        bool ones = true;
        const std::size_t per_unit = static_cast<std::size_t>(1.0 / coarse.step());
        for (std::size_t i = 0; i <= per_unit; ++i)
            if (coarse.grid_value(i) != 1.0) ones = false;

        const double rho2_err = std::abs(coarse.rho(2.0) - (1.0 - std::log(2.0)));

        double halving = 0;
        for (double beta = 0; beta <= 10.0; beta += 1.0 / 64)
            halving = std::max(halving, std::abs(coarse.rho(beta) - fine.rho(beta)));
        std::uint32_t state = 4242;
        for (int i = 0; i < 400; ++i) {
            const double beta = 10.0 * static_cast<double>(oracle::xorshift32(state)) / 4294967296.0;
            halving = std::max(halving, std::abs(coarse.rho(beta) - fine.rho(beta)));
        }

        bool norton = true;
        for (std::size_t i = 0; i < coarse.grid_size(); ++i) {
            const double beta = static_cast<double>(i) * coarse.step();
            if (coarse.grid_value(i) > rho_upper_bound(beta) * (1 + 1e-12)) norton = false;
        }
        const bool pass = ones && rho2_err <= 1e-8 && halving <= 1e-8 && norton;
        report(7, "dickman-suite", pass,
               "rho(2) err " + fmt(rho2_err) + ", halving " + fmt(halving) +
                   (norton ? ", Gamma bound holds" : ", Gamma bound VIOLATED"));
    }

    // ---- 8. Hildebrand main term at (1e6, 1e3) ----------------------------
    {
        const DickmanTable table(8.0, 10);
        const double psi = static_cast<double>(psi_exact(big, 1'000'000, 1'000));
        const double est = hildebrand_estimate(table, 1'000'000, 1'000);
        const double rel = std::abs(psi / est - 1.0);
        report(8, "hildebrand-main-term", rel <= 0.05,
               "Psi = " + fmt(psi) + ", X rho(2) = " + fmt(est) + ", |ratio-1| = " + fmt(rel));
    }

    // ---- 9. Mobius partial sums at X = 1e7 --------------------------------
    {
        const double m = big.mertens_weighted(10'000'000);
        const double ml = big.mertens_log_weighted(10'000'000);
        const bool pass = std::abs(m) <= 0.001 && std::abs(ml + 1.0) <= 0.01;
        report(9, "mobius-partial-sums", pass,
               "sum mu/n = " + fmt(m) + ", sum mu log n/n = " + fmt(ml));
    }

    // ---- 10. DDF against exhaustive factorization -------------------------
    {
        std::uint32_t state = 0xacce;
        std::uint64_t checked = 0, bad = 0;
        for (int i = 0; i < 20; ++i) {
            const IntPolynomial f = oracle::random_squarefree_monic(state, 5);
            for (std::uint64_t p = 2; p < 200; ++p) {
                if (!big.is_prime(p)) continue;
                if (!is_squarefree_mod(f, p)) continue;  // skip ramified
                const ModPolynomial g = reduce_mod(f, p);
                ++checked;
                if (!(ddf_pattern(g) == oracle::factor_pattern_brute(g))) ++bad;
            }
        }
        report(10, "ddf-oracle", bad == 0,
               std::to_string(checked) + " cases, " + std::to_string(bad) + " mismatches");
    }

    // ---- 11. Identity suite ------------------------------------------------
    {
        bool ok = true;
        std::string detail;

        // all-primes min-sum equals 1 - mertens at every checkpoint, exactly
        SeriesOptions exact;
        exact.mode = SumMode::ExactRational;
        const std::vector<std::uint64_t> cps = {10, 100, 1000, 10'000};
        const SumSeries s =
            min_mobius_sum(big, ClassSelector::all_primes(), 10'000, cps, exact);
        for (const Checkpoint& cp : s.checkpoints)
            if (cp.value_exact != Rational(1) - big.mertens_weighted_exact(cp.x)) {
                ok = false;
                detail += "all-primes identity broken at X=" + std::to_string(cp.x) + "; ";
            }

        // partition additivity over all partitions of 4, exact mode
        const std::vector<CycleType> parts4 = {CycleType({4}), CycleType({3, 1}),
                                               CycleType({2, 2}), CycleType({2, 1, 1}),
                                               CycleType({1, 1, 1, 1})};
        Rational total = 0;
        const std::vector<std::uint64_t> cps1 = {10'000};
        for (const CycleType& c : parts4) {
            const ClassSelector sel = ClassSelector::pattern_set(quartic, {c});
            total += min_mobius_sum(big, sel, 10'000, cps1, exact).checkpoints[0].value_exact;
        }
        Rational direct = 0;
        for (std::uint64_t n = 2; n <= 10'000; ++n) {
            const int m = big.mobius(n);
            if (m == 0) continue;
            if (!classify_prime(quartic, big.spf(n)).ramified) direct += Rational(-m, n);
        }
        if (total != direct) {
            ok = false;
            detail += "partition additivity broken; ";
        }

        // [X]-1 = sum over p <= X of Psi(X/p, p), every X <= 1e4
        for (std::uint64_t x = 1; x <= 10'000; ++x) {
            std::uint64_t sum = 0;
            for (std::uint64_t p = 2; p <= x; ++p)
                if (big.is_prime(p)) sum += psi_exact(big, x / p, p);
            if (sum != x - 1) {
                ok = false;
                detail += "Psi recursion broken at X=" + std::to_string(x) + "; ";
                break;
            }
        }

        if (ok) detail = "exact identities hold (X <= 1e4)";
        report(11, "identity-suite", ok, detail);
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
