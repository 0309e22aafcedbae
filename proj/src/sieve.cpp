#include "frobsum/sieve.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "frobsum/summation.hpp"

namespace frobsum {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'F', '1'};

void put_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void write_u32_array(std::ostream& os, std::span<const std::uint32_t> a) {
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(a.data()),
                 static_cast<std::streamsize>(a.size() * sizeof(std::uint32_t)));
    } else {
        for (std::uint32_t v : a) {
            unsigned char b[4];
            for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
            os.write(reinterpret_cast<const char*>(b), 4);
        }
    }
}

void read_u32_array(std::istream& is, std::vector<std::uint32_t>& a) {
    if constexpr (std::endian::native == std::endian::little) {
        is.read(reinterpret_cast<char*>(a.data()),
                static_cast<std::streamsize>(a.size() * sizeof(std::uint32_t)));
    } else {
        for (std::uint32_t& v : a) {
            unsigned char b[4];
            is.read(reinterpret_cast<char*>(b), 4);
            v = 0;
            for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
        }
    }
}

}  // namespace

std::uint64_t FactorSieve::limit_ceiling() {
    constexpr std::uint64_t kHardCap = 0xffffffffull;  // table entries are 32-bit
    if (const char* env = std::getenv("FROBSUM_LIMIT_CEILING")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 2)
            return std::min<std::uint64_t>(v, kHardCap);
    }
    return 2'000'000'000ull;
}

FactorSieve::FactorSieve(std::uint64_t limit) : limit_(limit) {
    if (limit < 2)
        throw CapacityError("sieve limit must be at least 2");
    if (limit > limit_ceiling())
        throw CapacityError("sieve limit " + std::to_string(limit) +
                            " exceeds ceiling " + std::to_string(limit_ceiling()));

    spf_.assign(limit + 1, 0);
    pmax_.assign(limit + 1, 0);
    mu_.assign(limit + 1, 0);
    mu_[1] = 1;
    pmax_[1] = 1;

    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(
        limit < 100 ? 32 : 1.2 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));

    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            pmax_[i] = static_cast<std::uint32_t>(i);
            mu_[i] = -1;
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t s = spf_[i];
        for (std::uint32_t p : primes) {
            if (p > s) break;
            const std::uint64_t c = i * p;
            if (c > limit) break;
            spf_[c] = p;
            pmax_[c] = pmax_[i];  // p <= every prime factor of i
            mu_[c] = (p == s) ? std::int8_t{0} : static_cast<std::int8_t>(-mu_[i]);
        }
    }
}

std::vector<std::uint32_t> FactorSieve::distinct_primes(std::uint64_t n) const {
    check(n, 2);
    std::vector<std::uint32_t> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    return out;
}

double FactorSieve::mertens_weighted(std::uint64_t x) const {
    check(x, 1);
    CompensatedSum acc;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const int m = mu_[n];
        if (m != 0) acc.add(static_cast<double>(m) / static_cast<double>(n));
    }
    return acc.value();
}

Rational FactorSieve::mertens_weighted_exact(std::uint64_t x) const {
    check(x, 1);
    Rational acc = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const int m = mu_[n];
        if (m != 0) acc += Rational(m, n);
    }
    return acc;
}

double FactorSieve::mertens_log_weighted(std::uint64_t x) const {
    check(x, 1);
    CompensatedSum acc;
    for (std::uint64_t n = 2; n <= x; ++n) {
        const int m = mu_[n];
        if (m != 0)
            acc.add(static_cast<double>(m) * std::log(static_cast<double>(n)) /
                    static_cast<double>(n));
    }
    return acc.value();
}

void FactorSieve::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open sieve cache for writing: " + path.string());
    os.write(kMagic, 4);
    put_u64_le(os, limit_);
    write_u32_array(os, spf_);
    os.write(reinterpret_cast<const char*>(mu_.data()),
             static_cast<std::streamsize>(mu_.size()));
    write_u32_array(os, pmax_);
    if (!os) throw IoError("failed writing sieve cache: " + path.string());
}

FactorSieve FactorSieve::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open sieve cache: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("not a sieve cache (bad magic): " + path.string());
    const std::uint64_t limit = get_u64_le(is);
    if (!is || limit < 2 || limit > limit_ceiling())
        throw IoError("sieve cache has invalid limit: " + path.string());

    FactorSieve s;
    s.limit_ = limit;
    s.spf_.resize(limit + 1);
    s.mu_.resize(limit + 1);
    s.pmax_.resize(limit + 1);
    read_u32_array(is, s.spf_);
    is.read(reinterpret_cast<char*>(s.mu_.data()), static_cast<std::streamsize>(s.mu_.size()));
    read_u32_array(is, s.pmax_);
    if (!is) throw IoError("sieve cache truncated: " + path.string());
    if (s.spf_[2] != 2 || s.mu_[1] != 1 || s.pmax_[1] != 1)
        throw IoError("sieve cache failed sanity check: " + path.string());
    return s;
}

}  // namespace frobsum
