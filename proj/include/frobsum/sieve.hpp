#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "frobsum/errors.hpp"
#include "frobsum/rational.hpp"

namespace frobsum {

/// Smallest-prime-factor, Mobius and largest-prime-factor tables for
/// 2..limit. Built once with a linear (Euler) sieve, so every composite is
/// struck exactly once; all queries are O(1) afterwards and the object is
/// immutable, hence freely shareable across threads.
class FactorSieve {
public:
    explicit FactorSieve(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    /// Smallest prime factor of n, 2 <= n <= limit.
    std::uint32_t spf(std::uint64_t n) const {
        check(n, 2);
        return spf_[n];
    }

    /// Largest prime factor of n; pmax(1) == 1 by convention.
    std::uint32_t pmax(std::uint64_t n) const {
        check(n, 1);
        return pmax_[n];
    }

    /// Mobius function, 1 <= n <= limit.
    int mobius(std::uint64_t n) const {
        check(n, 1);
        return mu_[n];
    }

    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    std::span<const std::uint32_t> spf_table() const noexcept { return spf_; }
    std::span<const std::uint32_t> pmax_table() const noexcept { return pmax_; }
    std::span<const std::int8_t> mobius_table() const noexcept { return mu_; }

    /// Distinct prime factors of n, ascending.
    std::vector<std::uint32_t> distinct_primes(std::uint64_t n) const;

    /// sum_{n<=X} mu(n)/n, compensated floating accumulation in ascending n.
    double mertens_weighted(std::uint64_t x) const;

    /// Same sum as an exact rational.
    Rational mertens_weighted_exact(std::uint64_t x) const;

    /// sum_{n<=X} mu(n) log(n)/n, compensated floating accumulation.
    double mertens_log_weighted(std::uint64_t x) const;

    /// Binary cache: magic "SPF1", little-endian u64 limit, then the spf,
    /// mu, pmax arrays (indices 0..limit) stored contiguously.
    void save(const std::filesystem::path& path) const;
    static FactorSieve load(const std::filesystem::path& path);

    /// Largest limit accepted by the constructor. Defaults to 2e9; the
    /// FROBSUM_LIMIT_CEILING environment variable overrides it (capped at
    /// 2^32 - 1, the width of a table entry).
    static std::uint64_t limit_ceiling();

private:
    FactorSieve() = default;

    void check(std::uint64_t n, std::uint64_t lo) const {
        if (n < lo || n > limit_)
            throw RangeError("FactorSieve: argument out of table range");
    }

    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> pmax_;
    std::vector<std::int8_t> mu_;
};

}  // namespace frobsum
