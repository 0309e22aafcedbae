#include "frobsum/frobenius.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

namespace frobsum {

PrimeClass classify_prime(const IntPolynomial& f, std::uint64_t p) {
    if (f.leading_coeff() % p == 0) return PrimeClass::make_ramified();
    if (!is_squarefree_mod(f, p)) return PrimeClass::make_ramified();
    return PrimeClass::make_unramified(ddf_pattern(reduce_mod(f, p)));
}

Rational symmetric_density(const CycleType& pattern, int n) {
    if (pattern.sum() != n)
        throw std::invalid_argument("cycle type " + pattern.to_string() +
                                    " is not a partition of " + std::to_string(n));
    std::map<int, int> mult;
    for (int k : pattern.parts()) ++mult[k];
    BigInt denom = 1;
    for (auto [k, m] : mult) {
        denom *= boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(m));
        for (int i = 2; i <= m; ++i) denom *= i;
    }
    return Rational(1, denom);
}

std::uint64_t euler_phi(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("euler_phi(0)");
    std::uint64_t phi = k;
    std::uint64_t m = k;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            phi -= phi / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) phi -= phi / m;
    return phi;
}

// ---------------------------------------------------------------------------
// ClassSelector

namespace {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

}  // namespace

ClassSelector ClassSelector::residue_set(std::uint64_t k, std::vector<std::uint64_t> residues) {
    if (k < 2) throw std::invalid_argument("residue modulus must be at least 2");
    ClassSelector s;
    s.kind_ = Kind::Residue;
    s.modulus_ = k;
    s.residue_in_.assign(k, 0);
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    for (std::uint64_t r : residues) {
        const std::uint64_t rr = r % k;
        if (gcd_u64(rr, k) != 1)
            throw std::invalid_argument("residue " + std::to_string(r) + " not coprime to " +
                                        std::to_string(k));
        s.residue_in_[rr] = 1;
    }
    const std::uint64_t count =
        static_cast<std::uint64_t>(std::count(s.residue_in_.begin(), s.residue_in_.end(), 1));
    s.density_ = Rational(count, euler_phi(k));

    std::string desc = "residue k=" + std::to_string(k) + " L=";
    bool first = true;
    for (std::uint64_t r = 0; r < k; ++r)
        if (s.residue_in_[r]) {
            if (!first) desc += ',';
            desc += std::to_string(r);
            first = false;
        }
    s.desc_ = std::move(desc);
    return s;
}

ClassSelector ClassSelector::pattern_set(IntPolynomial f, std::vector<CycleType> patterns,
                                         RamifiedPolicy policy,
                                         std::optional<Rational> density_override) {
    const int deg = f.degree();
    std::sort(patterns.begin(), patterns.end());
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());

    ClassSelector s;
    s.kind_ = Kind::Pattern;
    s.policy_ = policy;
    Rational density = 0;
    for (const CycleType& c : patterns) {
        density += symmetric_density(c, deg);  // also validates the partition
        if (!std::count(s.pattern_root_counts_.begin(), s.pattern_root_counts_.end(),
                        c.root_count()))
            s.pattern_root_counts_.push_back(c.root_count());
    }
    std::sort(s.pattern_root_counts_.begin(), s.pattern_root_counts_.end());
    if (density_override) {
        if (*density_override < 0 || *density_override > 1)
            throw std::invalid_argument("density override must lie in [0, 1]");
        density = *density_override;
    }
    s.density_ = std::move(density);

    std::string desc = "patterns f=" + f.to_string() + " set=";
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (i) desc += '|';
        desc += patterns[i].to_string();
    }
    desc += (policy == RamifiedPolicy::Exclude) ? " ramified=exclude" : " ramified=root-count";
    s.desc_ = std::move(desc);

    s.poly_ = std::make_shared<const IntPolynomial>(std::move(f));
    s.patterns_ = std::move(patterns);
    s.cache_ = std::make_shared<Cache>();
    return s;
}

ClassSelector ClassSelector::explicit_predicate(std::function<bool(std::uint64_t)> membership,
                                                Rational density) {
    if (density < 0 || density > 1)
        throw std::invalid_argument("predicate density must lie in [0, 1]");
    ClassSelector s;
    s.kind_ = Kind::Predicate;
    s.pred_ = std::move(membership);
    s.density_ = std::move(density);
    s.desc_ = "predicate";
    return s;
}

ClassSelector ClassSelector::all_primes() {
    ClassSelector s = explicit_predicate([](std::uint64_t) { return true; }, Rational(1));
    s.desc_ = "all-primes";
    return s;
}

std::uint8_t ClassSelector::classify_pattern_membership(std::uint64_t p) const {
    auto code = [](Membership m) { return static_cast<std::uint8_t>(static_cast<int>(m) + 1); };
    if (poly_->leading_coeff() % p == 0) return code(Membership::Ramified);
    const ModPolynomial g = reduce_mod(*poly_, p);
    if (is_squarefree(g)) {
        const CycleType pat = ddf_pattern(g);
        const bool in = std::binary_search(patterns_.begin(), patterns_.end(), pat);
        return code(in ? Membership::In : Membership::Out);
    }
    if (policy_ == RamifiedPolicy::Exclude) return code(Membership::Ramified);
    const int rc = distinct_root_count(g);
    const bool in = std::binary_search(pattern_root_counts_.begin(), pattern_root_counts_.end(), rc);
    return code(in ? Membership::In : Membership::Out);
}

Membership ClassSelector::membership(std::uint64_t p) const {
    switch (kind_) {
        case Kind::Residue:
            if (p <= modulus_ && modulus_ % p == 0) return Membership::Ramified;
            return residue_in_[p % modulus_] ? Membership::In : Membership::Out;
        case Kind::Predicate:
            return pred_(p) ? Membership::In : Membership::Out;
        case Kind::Pattern:
            break;
    }
    if (p < cache_->code.size()) {
        const std::uint8_t c = cache_->code[p];
        if (c != 0) return static_cast<Membership>(c - 1);
    }
    const std::uint8_t c = classify_pattern_membership(p);
    {
        std::lock_guard<std::mutex> lock(cache_->m);
        if (p >= cache_->code.size()) cache_->code.resize(p + 1, 0);
        cache_->code[p] = c;
    }
    return static_cast<Membership>(c - 1);
}

void ClassSelector::precompute(const FactorSieve& sieve, std::uint64_t upto,
                               unsigned threads) const {
    if (kind_ != Kind::Pattern) return;
    upto = std::min(upto, sieve.limit());

    std::vector<std::uint32_t> todo;
    {
        std::lock_guard<std::mutex> lock(cache_->m);
        if (cache_->code.size() < upto + 1) cache_->code.resize(upto + 1, 0);
        const auto spf = sieve.spf_table();
        for (std::uint64_t p = 2; p <= upto; ++p)
            if (spf[p] == p && cache_->code[p] == 0) todo.push_back(static_cast<std::uint32_t>(p));
    }
    if (todo.empty()) return;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(todo.size()));

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            cache_->code[todo[i]] = classify_pattern_membership(todo[i]);
    };
    if (threads <= 1) {
        work(0, todo.size());
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (todo.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(todo.size(), b + chunk);
        if (b >= e) break;
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Selector spec parsing (CLI syntax)

std::pair<std::uint64_t, std::vector<std::uint64_t>> parse_residue_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("residue spec must look like \"k:l1,l2\"");
    const std::string kstr(text.substr(0, colon));
    std::uint64_t k = 0;
    try {
        k = std::stoull(kstr);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad residue modulus: " + kstr);
    }
    std::vector<std::uint64_t> residues;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("empty residue in spec");
        residues.push_back(std::stoull(cur));
        cur.clear();
    };
    for (char c : text.substr(colon + 1)) {
        if (c == ',')
            flush();
        else if (std::isdigit(static_cast<unsigned char>(c)))
            cur.push_back(c);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument(std::string("bad character in residue spec: ") + c);
    }
    flush();
    return {k, std::move(residues)};
}

std::vector<CycleType> parse_pattern_list(std::string_view text) {
    std::vector<CycleType> out;
    std::string cur;
    auto flush = [&] {
        out.push_back(CycleType::parse(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == '|')
            flush();
        else
            cur.push_back(c);
    }
    flush();
    return out;
}

Rational parse_density(std::string_view text) {
    const auto slash = text.find('/');
    try {
        Rational r;
        if (slash == std::string_view::npos) {
            r = Rational(BigInt(std::string(text)));
        } else {
            r = Rational(BigInt(std::string(text.substr(0, slash))),
                         BigInt(std::string(text.substr(slash + 1))));
        }
        if (r < 0 || r > 1) throw std::invalid_argument("density must lie in [0, 1]");
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad density: " + std::string(text));
    }
}

}  // namespace frobsum
