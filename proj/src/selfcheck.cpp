#include "frobsum/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frobsum/frobenius.hpp"
#include "frobsum/series.hpp"
#include "frobsum/smooth.hpp"

namespace frobsum::oracle {

// ---------------------------------------------------------------------------
// Brute-force factorization pattern (own arithmetic, kept naive on purpose)

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 inv(u64 a, u64 p) {
    u64 r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 eval(const std::vector<u64>& c, u64 t, u64 p) {
    u64 v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = (mul(v, t, p) + c[i]) % p;
    return v;
}

// divide a by the monic divisor d; returns true and the quotient on success
bool try_divide(const std::vector<u64>& a, const std::vector<u64>& d, u64 p,
                std::vector<u64>& quot) {
    std::vector<u64> r = a;
    const int dd = static_cast<int>(d.size()) - 1;
    const int da = static_cast<int>(r.size()) - 1;
    if (da < dd) return false;
    quot.assign(static_cast<std::size_t>(da - dd) + 1, 0);
    for (int i = da; i >= dd; --i) {
        const u64 c = r[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        quot[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) {
            u64& rr = r[static_cast<std::size_t>(i - dd + j)];
            const u64 t = mul(c, d[static_cast<std::size_t>(j)], p);
            rr = (rr >= t) ? rr - t : rr + p - t;
        }
    }
    for (int i = 0; i < dd; ++i)
        if (r[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

}  // namespace

CycleType factor_pattern_brute(const ModPolynomial& g) {
    const u64 p = g.p;
    std::vector<u64> a(g.coeffs.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.coeffs[i] % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.size() < 2) throw std::invalid_argument("factor_pattern_brute: constant polynomial");
    if (a.size() > 6) throw std::invalid_argument("factor_pattern_brute: supports degree <= 5");

    // make monic
    const u64 li = inv(a.back(), p);
    for (u64& c : a) c = mul(c, li, p);

    std::vector<int> parts;
    // strip roots
    for (u64 r = 0; r < p && a.size() > 1; ++r) {
        while (a.size() > 1 && eval(a, r, p) == 0) {
            const std::vector<u64> lin = {p - r == p ? 0 : p - r, 1};  // x - r
            std::vector<u64> q;
            if (!try_divide(a, lin, p, q)) break;
            a = q;
            parts.push_back(1);
        }
    }
    // strip monic quadratic factors (reducible ones cannot divide anymore)
    for (u64 b = 0; b < p && a.size() > 2; ++b) {
        for (u64 c = 0; c < p && a.size() > 2; ++c) {
            const std::vector<u64> quad = {c, b, 1};
            std::vector<u64> q;
            while (a.size() > 2 && try_divide(a, quad, p, q)) {
                a = q;
                parts.push_back(2);
            }
        }
    }
    // whatever remains has no factor of degree <= 2, hence is irreducible
    // for total degree <= 5
    if (a.size() > 1) parts.push_back(static_cast<int>(a.size()) - 1);
    return CycleType(std::move(parts));
}

// ---------------------------------------------------------------------------
// Sylvester determinant by Bareiss

BigInt sylvester_resultant(const std::vector<BigInt>& a_in, const std::vector<BigInt>& b_in) {
    std::vector<BigInt> a = a_in, b = b_in;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!b.empty() && b.back() == 0) b.pop_back();
    if (a.empty() || b.empty()) return 0;
    const int da = static_cast<int>(a.size()) - 1;
    const int db = static_cast<int>(b.size()) - 1;
    if (da == 0 && db == 0) return 1;
    if (da == 0) return boost::multiprecision::pow(a[0], static_cast<unsigned>(db));
    if (db == 0) return boost::multiprecision::pow(b[0], static_cast<unsigned>(da));

    const int n = da + db;
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(n),
                                       std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(0)));
    for (int r = 0; r < db; ++r)
        for (int i = 0; i <= da; ++i) m[r][r + i] = a[static_cast<std::size_t>(da - i)];
    for (int r = 0; r < da; ++r)
        for (int i = 0; i <= db; ++i) m[db + r][r + i] = b[static_cast<std::size_t>(db - i)];

    int sign = 1;
    BigInt prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

BigInt sylvester_discriminant(const IntPolynomial& f) {
    const int d = f.degree();
    if (d < 2) throw std::domain_error("discriminant requires degree >= 2");
    std::vector<BigInt> df(f.coeffs().size() - 1);
    for (std::size_t i = 1; i < f.coeffs().size(); ++i) df[i - 1] = f.coeffs()[i] * static_cast<int>(i);
    const BigInt res = sylvester_resultant(f.coeffs(), df);
    const BigInt num = ((d * (d - 1) / 2) % 2) ? -res : res;
    BigInt q, r;
    boost::multiprecision::divide_qr(num, f.leading_coeff(), q, r);
    if (r != 0) throw std::logic_error("sylvester_discriminant: inexact division");
    return q;
}

std::uint64_t psi_brute(std::uint64_t x, std::uint64_t y) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        std::uint64_t m = n;
        std::uint64_t largest = 1;
        for (std::uint64_t p = 2; p * p <= m; ++p)
            while (m % p == 0) {
                largest = p;
                m /= p;
            }
        if (m > 1) largest = m;
        if (largest <= y) ++count;
    }
    return count;
}

IntPolynomial random_squarefree_monic(std::uint32_t& state, int max_degree) {
    for (;;) {
        const int deg = 2 + static_cast<int>(xorshift32(state) % static_cast<std::uint32_t>(max_degree - 1));
        std::vector<BigInt> c(static_cast<std::size_t>(deg) + 1);
        for (int i = 0; i < deg; ++i)
            c[static_cast<std::size_t>(i)] = static_cast<int>(xorshift32(state) % 19) - 9;
        c[static_cast<std::size_t>(deg)] = 1;
        try {
            return IntPolynomial(std::move(c));
        } catch (const NotSquarefreeOverQ&) {
            continue;  // redraw
        }
    }
}

}  // namespace frobsum::oracle

// ---------------------------------------------------------------------------
// Invariant suite

namespace frobsum {

namespace {

std::map<std::uint64_t, Rational> random_prime_function(const std::vector<std::uint32_t>& primes,
                                                        std::uint32_t& state) {
    std::map<std::uint64_t, Rational> f;
    for (std::uint32_t p : primes) {
        const int num = static_cast<int>(oracle::xorshift32(state) % 19) - 9;
        const int den = 1 + static_cast<int>(oracle::xorshift32(state) % 9);
        f[p] = Rational(num, den);
    }
    return f;
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const FactorSieve& sieve, const SelfcheckOptions& opt) {
    std::vector<CheckResult> out;
    std::ostringstream detail;

    // 1. Duality identities, exact, every n up to the cap.
    {
        const std::uint64_t n_max = std::min(opt.duality_n_max, sieve.limit());
        std::vector<std::uint32_t> primes;
        for (std::uint64_t p = 2; p <= n_max; ++p)
            if (sieve.is_prime(p)) primes.push_back(static_cast<std::uint32_t>(p));
        std::uint32_t state = opt.seed ? opt.seed : 1;
        std::uint64_t failures = 0;
        for (unsigned t = 0; t < opt.duality_trials; ++t) {
            const auto f = random_prime_function(primes, state);
            for (std::uint64_t n = 2; n <= n_max; ++n)
                if (!duality_check(sieve, n, f).ok) ++failures;
        }
        detail.str("");
        detail << "n <= " << n_max << ", " << opt.duality_trials << " random prime functions, "
               << failures << " failures";
        out.push_back({"duality-exactness", failures == 0, detail.str()});
    }

    // 2. Interval identity, exact rationals.
    {
        bool ok = true;
        detail.str("");
        for (const auto& [x, a] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                 {100, 2}, {1000, 10}, {10000, 97}}) {
            if (x > sieve.limit()) continue;
            const TetrisIdentity t = tetris_identity(sieve, x, a);
            if (!t.equal) {
                ok = false;
                detail << "mismatch at X=" << x << " a=" << a << "; ";
            }
        }
        if (ok) detail << "lhs == rhs at all tested (X, a)";
        out.push_back({"interval-identity", ok, detail.str()});
    }

    // 3. Dickman closed form on [1, 2] and exact 1 on [0, 1].
    {
        const DickmanTable table(12.0, 10);
        double worst = 0;
        bool ones = true;
        const std::size_t per_unit = static_cast<std::size_t>(1.0 / table.step());
        for (std::size_t i = 0; i <= per_unit; ++i)
            if (table.grid_value(i) != 1.0) ones = false;
        for (std::size_t i = per_unit; i <= 2 * per_unit; ++i) {
            const double beta = static_cast<double>(i) * table.step();
            worst = std::max(worst, std::abs(table.grid_value(i) - (1.0 - std::log(beta))));
        }
        detail.str("");
        detail << "max |rho - (1 - log b)| on [1,2] = " << worst;
        out.push_back({"dickman-closed-form", ones && worst <= 1e-9, detail.str()});

        bool norton = true;
        for (std::size_t i = 0; i < table.grid_size(); ++i) {
            const double beta = static_cast<double>(i) * table.step();
            if (table.grid_value(i) > rho_upper_bound(beta) * (1.0 + 1e-12)) norton = false;
        }
        out.push_back({"dickman-gamma-bound", norton,
                       norton ? "rho <= 1/Gamma(beta+1) at every grid point" : "bound violated"});
    }

    // 4. DDF against the brute-force factorization oracle.
    {
        std::uint32_t state = opt.seed ^ 0x9e3779b9u;
        if (state == 0) state = 1;
        std::uint64_t checked = 0, bad = 0;
        for (int i = 0; i < 8; ++i) {
            const IntPolynomial f = oracle::random_squarefree_monic(state, 5);
            for (std::uint64_t p = 2; p < 200; ++p) {
                if (!sieve.is_prime(p)) continue;
                if (!is_squarefree_mod(f, p)) continue;
                const ModPolynomial g = reduce_mod(f, p);
                ++checked;
                if (!(ddf_pattern(g) == oracle::factor_pattern_brute(g))) ++bad;
            }
        }
        detail.str("");
        detail << checked << " (poly, p) pairs, " << bad << " mismatches";
        out.push_back({"ddf-oracle", bad == 0, detail.str()});
    }

    // 5. Partition additivity for the quartic pattern classes, exact mode.
    {
        const std::uint64_t x = std::min<std::uint64_t>(10'000, sieve.limit());
        const IntPolynomial f = IntPolynomial::parse("x^4+x+1");
        const std::vector<CycleType> partitions = {
            CycleType({4}), CycleType({3, 1}), CycleType({2, 2}), CycleType({2, 1, 1}),
            CycleType({1, 1, 1, 1})};
        SeriesOptions so;
        so.mode = SumMode::ExactRational;
        const std::uint64_t cps[] = {x};
        Rational total = 0;
        for (const CycleType& c : partitions) {
            const ClassSelector sel = ClassSelector::pattern_set(f, {c});
            total += min_mobius_sum(sieve, sel, x, cps, so).checkpoints.back().value_exact;
        }
        Rational direct = 0;
        for (std::uint64_t n = 2; n <= x; ++n) {
            const int m = sieve.mobius(n);
            if (m == 0) continue;
            if (!classify_prime(f, sieve.spf(n)).ramified) direct += Rational(-m, n);
        }
        const bool ok = (total == direct);
        out.push_back({"partition-additivity", ok,
                       ok ? "pattern classes partition the unramified mass exactly"
                          : "sum over classes differs from the direct sum"});
    }

    return out;
}

}  // namespace frobsum
