#include "frobsum/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace frobsum {

// ---------------------------------------------------------------------------
// CycleType

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int k : parts_)
        if (k < 1) throw std::invalid_argument("cycle type parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

CycleType CycleType::parse(std::string_view text) {
    std::vector<int> parts;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw PolynomialParseError("empty part in cycle type");
        parts.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        } else {
            throw PolynomialParseError(std::string("bad character in cycle type: ") + c);
        }
    }
    flush();
    return CycleType(std::move(parts));
}

int CycleType::sum() const {
    int s = 0;
    for (int k : parts_) s += k;
    return s;
}

int CycleType::count_part(int k) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

std::string CycleType::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// F_p polynomial arithmetic (coefficients ascending; empty vector == 0)

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Fp = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) {
    // sieve-bounded primes fit in 32 bits, so the product fits in 64
    if (p <= 0xffffffffull) return (a * b) % p;
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }  // p prime

void fp_trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const Fp& a) { return static_cast<int>(a.size()) - 1; }

Fp fp_monic(Fp a, u64 p) {
    fp_trim(a);
    if (a.empty() || a.back() == 1) return a;
    const u64 inv = invmod(a.back(), p);
    for (u64& c : a) c = mulmod(c, inv, p);
    return a;
}

Fp fp_mul(const Fp& a, const Fp& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Fp r(a.size() + b.size() - 1, 0);
    if (p <= 0xffffffffull) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        }
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = static_cast<u64>((r[i + j] + static_cast<u128>(a[i]) * b[j]) % p);
        }
    }
    fp_trim(r);
    return r;
}

// Remainder of a by b; b must be nonzero.
Fp fp_rem(Fp a, const Fp& b, u64 p) {
    const int db = fp_deg(b);
    const u64 inv = invmod(b.back(), p);
    fp_trim(a);
    while (fp_deg(a) >= db) {
        const int da = fp_deg(a);
        const u64 c = mulmod(a.back(), inv, p);
        if (c != 0) {
            for (int i = 0; i <= db; ++i) {
                u64 t = mulmod(c, b[i], p);
                u64& ai = a[da - db + i];
                ai = (ai >= t) ? ai - t : ai + p - t;
            }
        }
        a.pop_back();
        fp_trim(a);
    }
    return a;
}

// Quotient of a by b; the division must be exact for callers that need it.
Fp fp_quot(Fp a, const Fp& b, u64 p) {
    const int db = fp_deg(b);
    const u64 inv = invmod(b.back(), p);
    fp_trim(a);
    if (fp_deg(a) < db) return {};
    Fp q(static_cast<std::size_t>(fp_deg(a) - db) + 1, 0);
    while (fp_deg(a) >= db) {
        const int da = fp_deg(a);
        const u64 c = mulmod(a.back(), inv, p);
        q[da - db] = c;
        if (c != 0) {
            for (int i = 0; i <= db; ++i) {
                u64 t = mulmod(c, b[i], p);
                u64& ai = a[da - db + i];
                ai = (ai >= t) ? ai - t : ai + p - t;
            }
        }
        a.pop_back();
        fp_trim(a);
    }
    return q;
}

Fp fp_gcd(Fp a, Fp b, u64 p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        Fp r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(std::move(a), p);
}

Fp fp_derivative(const Fp& a, u64 p) {
    Fp d;
    if (a.size() < 2) return d;
    d.resize(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = mulmod(a[i], static_cast<u64>(i % p), p);
    fp_trim(d);
    return d;
}

// out = a * b mod g with g monic; out must not alias a or b. Keeps its
// capacity across calls, so the exponentiation loop below does not allocate.
void fp_mulred(const Fp& a, const Fp& b, const Fp& g, u64 p, Fp& out) {
    if (a.empty() || b.empty()) {
        out.clear();
        return;
    }
    out.assign(a.size() + b.size() - 1, 0);
    if (p <= 0xffffffffull) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const u64 ai = a[i];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = (out[i + j] + ai * b[j]) % p;
        }
    } else {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const u64 ai = a[i];
            if (ai == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] = static_cast<u64>((out[i + j] + static_cast<u128>(ai) * b[j]) % p);
        }
    }
    const std::size_t dg = g.size() - 1;
    for (std::size_t i = out.size(); i-- > dg;) {
        const u64 c = out[i];
        if (c == 0) continue;
        out[i] = 0;
        for (std::size_t j = 0; j < dg; ++j) {
            const u64 t = mulmod(c, g[j], p);
            u64& o = out[i - dg + j];
            o = (o >= t) ? o - t : o + p - t;
        }
    }
    if (out.size() > dg) out.resize(dg);
    fp_trim(out);
}

// h^e mod g by square-and-multiply; g must be monic of degree >= 1.
Fp fp_powmod(Fp h, u64 e, const Fp& g, u64 p) {
    const std::size_t cap = 2 * g.size();
    Fp r{1};
    r.reserve(cap);
    h = fp_rem(std::move(h), g, p);
    h.reserve(cap);
    Fp scratch;
    scratch.reserve(cap);
    while (e) {
        if (e & 1) {
            fp_mulred(r, h, g, p, scratch);
            r.swap(scratch);
        }
        e >>= 1;
        if (e == 0) break;
        fp_mulred(h, h, g, p, scratch);
        h.swap(scratch);
    }
    return r;
}

// Reduce-and-trim a raw ModPolynomial into internal form.
Fp fp_normalize(const ModPolynomial& g) {
    Fp a(g.coeffs.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g.coeffs[i] % g.p;
    fp_trim(a);
    return a;
}

Fp fp_sub_x(Fp a, u64 p) {
    if (a.size() < 2) a.resize(2, 0);
    a[1] = (a[1] >= 1) ? a[1] - 1 : p - 1;
    fp_trim(a);
    return a;
}

bool fp_squarefree(const Fp& g, u64 p) {
    const Fp d = fp_derivative(g, p);
    if (d.empty()) return fp_deg(g) < 1;  // zero derivative with deg >= 1: p | every exponent
    return fp_deg(fp_gcd(g, d, p)) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Mod-p operations on the public types

ModPolynomial reduce_mod(const IntPolynomial& f, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    if (f.leading_coeff() % p == 0)
        throw LeadingCoeffVanishes("p = " + std::to_string(p) +
                                   " divides the leading coefficient of " + f.to_string());
    ModPolynomial g;
    g.p = p;
    g.coeffs.resize(f.coeffs().size());
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
        BigInt r = f.coeffs()[i] % p;
        if (r < 0) r += p;
        g.coeffs[i] = r.convert_to<std::uint64_t>();
    }
    return g;
}

bool is_squarefree_mod(const IntPolynomial& f, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("modulus must be at least 2");
    if (f.leading_coeff() % p == 0) return false;
    return fp_squarefree(fp_normalize(reduce_mod(f, p)), p);
}

bool is_squarefree(const ModPolynomial& g) { return fp_squarefree(fp_normalize(g), g.p); }

CycleType ddf_pattern(const ModPolynomial& g) {
    const u64 p = g.p;
    Fp v = fp_normalize(g);
    if (fp_deg(v) < 1) throw std::invalid_argument("ddf_pattern: polynomial must be nonconstant");
    if (!fp_squarefree(v, p)) throw NotSquarefree("ddf_pattern: input not squarefree mod p");

    v = fp_monic(std::move(v), p);
    std::vector<int> parts;
    Fp h = fp_rem(Fp{0, 1}, v, p);  // x mod v
    int d = 0;
    while (fp_deg(v) > 0) {
        ++d;
        if (2 * d > fp_deg(v)) {
            // no factor of degree <= deg(v)/2 remains, so v is irreducible
            parts.push_back(fp_deg(v));
            break;
        }
        h = fp_powmod(std::move(h), p, v, p);  // h = x^{p^d} mod v
        const Fp w = fp_gcd(v, fp_sub_x(h, p), p);
        if (fp_deg(w) > 0) {
            for (int i = 0; i < fp_deg(w) / d; ++i) parts.push_back(d);
            v = fp_quot(std::move(v), w, p);
            if (fp_deg(v) == 0) break;
            h = fp_rem(std::move(h), v, p);
        }
    }
    return CycleType(std::move(parts));
}

int distinct_root_count(const ModPolynomial& g) {
    const u64 p = g.p;
    Fp v = fp_monic(fp_normalize(g), p);
    if (fp_deg(v) < 1) return 0;
    const Fp h = fp_powmod(Fp{0, 1}, p, v, p);  // x^p mod v
    return fp_deg(fp_gcd(v, fp_sub_x(h, p), p));
}

int root_count(const ModPolynomial& g) {
    Fp v = fp_normalize(g);
    if (fp_deg(v) < 1) throw std::invalid_argument("root_count: polynomial must be nonconstant");
    if (!fp_squarefree(v, g.p)) throw NotSquarefree("root_count: input not squarefree mod p");
    return distinct_root_count(g);
}

// ---------------------------------------------------------------------------
// Exact integer polynomial arithmetic: subresultant PRS resultant

namespace {

using ZPoly = std::vector<BigInt>;

void z_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int z_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

BigInt z_content(const ZPoly& a) {
    BigInt g = 0;
    for (const BigInt& c : a) g = boost::multiprecision::gcd(g, c);
    return g;
}

BigInt z_pow(const BigInt& b, int e) {
    return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

// Pseudo-remainder: lc(B)^{deg A - deg B + 1} * A mod B, exact over Z.
ZPoly z_prem(ZPoly a, const ZPoly& b) {
    const int db = z_deg(b);
    const BigInt& lb = b.back();
    int e = z_deg(a) - db + 1;
    while (!a.empty() && z_deg(a) >= db) {
        const int da = z_deg(a);
        const BigInt la = a.back();
        for (BigInt& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        a.pop_back();
        z_trim(a);
        --e;
    }
    if (e > 0) {
        const BigInt s = z_pow(lb, e);
        for (BigInt& c : a) c *= s;
    }
    return a;
}

BigInt z_exact_div(const BigInt& num, const BigInt& den) {
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("subresultant PRS: inexact division");
    return q;
}

}  // namespace

BigInt resultant(const std::vector<BigInt>& a_in, const std::vector<BigInt>& b_in) {
    ZPoly a = a_in, b = b_in;
    z_trim(a);
    z_trim(b);
    if (a.empty() || b.empty()) return 0;
    if (z_deg(a) == 0 && z_deg(b) == 0) return 1;
    if (z_deg(a) == 0) return z_pow(a[0], z_deg(b));
    if (z_deg(b) == 0) return z_pow(b[0], z_deg(a));

    const BigInt ca = z_content(a), cb = z_content(b);
    for (BigInt& c : a) c = z_exact_div(c, ca);
    for (BigInt& c : b) c = z_exact_div(c, cb);
    const BigInt scale = z_pow(ca, z_deg(b)) * z_pow(cb, z_deg(a));

    int sign = 1;
    if (z_deg(a) < z_deg(b)) {
        if ((z_deg(a) & 1) && (z_deg(b) & 1)) sign = -sign;
        std::swap(a, b);
    }

    BigInt g = 1, h = 1;
    while (true) {
        const int da = z_deg(a), db = z_deg(b);
        const int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;
        ZPoly r = z_prem(a, b);
        a = std::move(b);
        if (r.empty()) return 0;  // nonconstant gcd
        const BigInt div = g * z_pow(h, delta);
        b = std::move(r);
        for (BigInt& c : b) c = z_exact_div(c, div);
        g = a.back();
        if (delta > 0) h = z_exact_div(z_pow(g, delta), z_pow(h, delta - 1));
        if (z_deg(b) == 0) break;
    }
    const BigInt res = z_exact_div(z_pow(b[0], z_deg(a)), z_pow(h, z_deg(a) - 1));
    return scale * sign * res;
}

// ---------------------------------------------------------------------------
// IntPolynomial

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (degree() < 1)
        throw PolynomialParseError("polynomial must have degree at least 1");
    if (degree() >= 2) {
        ZPoly d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<int>(i);
        const BigInt res = resultant(coeffs_, d);
        if (res == 0)
            throw NotSquarefreeOverQ("polynomial has a repeated factor over Q: " + to_string());
        const int dg = degree();
        const BigInt num = ((dg * (dg - 1) / 2) % 2) ? -res : res;
        disc_ = z_exact_div(num, coeffs_.back());
        has_disc_ = true;
    }
}

const BigInt& IntPolynomial::discriminant() const {
    if (!has_disc_)
        throw std::domain_error("discriminant requires degree >= 2");
    return disc_;
}

namespace {

BigInt parse_bigint(std::string_view s) {
    if (s.empty()) throw PolynomialParseError("empty integer");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw PolynomialParseError("sign without digits");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw PolynomialParseError("not an integer: " + std::string(s));
    return BigInt(std::string(s));
}

IntPolynomial parse_coeff_list(std::string_view text) {
    std::vector<BigInt> coeffs;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            coeffs.push_back(parse_bigint(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    coeffs.push_back(parse_bigint(cur));
    return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_terms(std::string_view text) {
    std::map<long, BigInt> terms;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool first = true;
    while (i < n) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = (text[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            throw PolynomialParseError("expected '+' or '-' between terms");
        }
        first = false;
        std::string digits;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) digits.push_back(text[i++]);
        BigInt c = digits.empty() ? BigInt(1) : BigInt(digits);
        if (sign < 0) c = -c;
        long e = 0;
        if (i < n && text[i] == 'x') {
            ++i;
            e = 1;
            if (i < n && text[i] == '^') {
                ++i;
                std::string ed;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ed.push_back(text[i++]);
                if (ed.empty()) throw PolynomialParseError("missing exponent after '^'");
                e = std::stol(ed);
            }
        } else if (digits.empty()) {
            throw PolynomialParseError("empty term in polynomial");
        }
        if (terms.count(e)) throw PolynomialParseError("duplicate exponent " + std::to_string(e));
        terms.emplace(e, std::move(c));
    }
    if (terms.empty()) throw PolynomialParseError("empty polynomial");
    std::vector<BigInt> coeffs(static_cast<std::size_t>(terms.rbegin()->first) + 1, BigInt(0));
    for (auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = std::move(c);
    return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial IntPolynomial::parse(std::string_view text) {
    std::string clean;
    clean.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
    if (clean.empty()) throw PolynomialParseError("empty polynomial");
    if (clean.find('x') == std::string::npos)
        return parse_coeff_list(clean);
    return parse_terms(clean);
}

std::string IntPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int e = degree(); e >= 0; --e) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(e)];
        if (c == 0) continue;
        const bool neg = c < 0;
        BigInt ac = neg ? BigInt(-c) : c;
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? '-' : '+');
        }
        if (ac != 1 || e == 0) os << ac;
        if (e >= 1) {
            os << 'x';
            if (e > 1) os << '^' << e;
        }
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace frobsum
