#pragma once

// Exact integer and rational kernel: 64-bit modular arithmetic, deterministic
// primality, primitive roots, p-th power residue characters, Bernoulli numbers
// and trial-division factorizations.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ktame/error.hpp"

namespace ktame {

using BigInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const ExactRational & q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const ExactRational & q) { return boost::multiprecision::denominator(q); }

inline std::string to_string(const BigInt & n) { return n.str(); }

inline std::string to_string(const ExactRational & q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// ---------------------------------------------------------------------------
// 64-bit modular arithmetic

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    if (m == 1)
        return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Residue of a signed integer modulo m, in [0, m).
inline std::uint64_t reduce(std::int64_t a, std::uint64_t m)
{
    auto r = static_cast<std::int64_t>(static_cast<__int128>(a) % static_cast<__int128>(m));
    if (r < 0)
        r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b)
{
    while (b != 0) {
        auto t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        auto tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1)
        fail("NotInvertible", std::to_string(a) + " is not invertible modulo " + std::to_string(m));
    if (t < 0)
        t += m;
    return static_cast<std::uint64_t>(t);
}

// ---------------------------------------------------------------------------
// Primality

/// Deterministic Miller-Rabin; the first twelve prime bases are exact below 2^64.
inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n % b == 0)
            return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

/// Inputs of 2^64 and beyond are rejected rather than tested probabilistically.
inline bool is_prime(const BigInt & n)
{
    if (n < 0)
        fail("OutOfRange", "primality is defined for non-negative integers");
    if (n > std::numeric_limits<std::uint64_t>::max())
        fail("OutOfRange", "primality test is limited to n < 2^64, got " + n.str());
    return is_prime(static_cast<std::uint64_t>(n));
}

inline void require_prime(std::uint64_t n, const char * what)
{
    if (!is_prime(n))
        fail("NotPrime", std::string(what) + " = " + std::to_string(n) + " is not prime");
}

// ---------------------------------------------------------------------------
// Factorizations

struct PrimePower
{
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimePower &, const PrimePower &) = default;
};

/// Signed integer as an ordered list of prime powers plus an explicit
/// unfactored cofactor (1 when the factorization is complete).
struct FactoredInteger
{
    int sign = 1;
    std::vector<PrimePower> factors;
    BigInt cofactor = 1;

    bool complete() const { return cofactor == 1; }

    BigInt value() const
    {
        BigInt v = cofactor;
        for (const auto & f : factors)
            v *= boost::multiprecision::pow(f.prime, f.exponent);
        return sign < 0 ? BigInt(-v) : v;
    }

    unsigned valuation(const BigInt & p) const
    {
        for (const auto & f : factors)
            if (f.prime == p)
                return f.exponent;
        return 0;
    }

    /// Part of |value| prime to p; the cofactor is kept as is (it only holds
    /// primes above the trial bound).
    BigInt prime_to(const BigInt & p) const
    {
        BigInt v = cofactor;
        for (const auto & f : factors)
            if (f.prime != p)
                v *= boost::multiprecision::pow(f.prime, f.exponent);
        return v;
    }

    std::string to_string() const
    {
        std::ostringstream out;
        if (sign < 0)
            out << "-";
        bool first = true;
        for (const auto & f : factors) {
            if (!first)
                out << " * ";
            out << f.prime;
            if (f.exponent > 1)
                out << "^" << f.exponent;
            first = false;
        }
        if (cofactor != 1) {
            if (!first)
                out << " * ";
            out << "[" << cofactor << "]";
            first = false;
        }
        if (first)
            out << "1";
        return out.str();
    }

    friend bool operator==(const FactoredInteger &, const FactoredInteger &) = default;
};

inline constexpr std::uint64_t default_trial_bound = 1'000'000;

/// Trial division by every integer up to `trial_bound`; a leftover below
/// trial_bound^2 is prime, a leftover below 2^64 is tested, anything else is
/// reported as an unfactored cofactor.
inline FactoredInteger factor(BigInt n, std::uint64_t trial_bound = default_trial_bound)
{
    if (n == 0)
        fail("ZeroNotFactorable", "cannot factor 0");
    FactoredInteger out;
    if (n < 0) {
        out.sign = -1;
        n = -n;
    }
    auto strip = [&](std::uint64_t d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e > 0)
            out.factors.push_back({BigInt(d), e});
    };
    strip(2);
    for (std::uint64_t d = 3; d <= trial_bound; d += 2) {
        if (BigInt(d) * d > n)
            break;
        strip(d);
    }
    if (n == 1)
        return out;
    BigInt bound_sq = BigInt(trial_bound) * trial_bound;
    bool prime = n < bound_sq;
    if (!prime && n <= std::numeric_limits<std::uint64_t>::max())
        prime = is_prime(static_cast<std::uint64_t>(n));
    if (prime)
        out.factors.push_back({n, 1});
    else
        out.cofactor = n;
    return out;
}

/// Distinct prime factors of a 64-bit integer (full trial division).
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    if (n > 1 && is_prime(n))
        return {n};
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0)
            continue;
        out.push_back(d);
        while (n % d == 0)
            n /= d;
        if (n > 1 && is_prime(n))
            break;
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

// ---------------------------------------------------------------------------
// Primitive roots and characters

/// Multiplicative order of a modulo the prime ell.
inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t ell)
{
    a %= ell;
    if (a == 0)
        fail("NotInvertible", "0 has no multiplicative order");
    std::uint64_t order = ell - 1;
    for (auto q : prime_divisors(ell - 1)) {
        while (order % q == 0 && powmod(a, order / q, ell) == 1)
            order /= q;
    }
    return order;
}

/// The first `count` primitive roots modulo the odd prime ell, ascending.
inline std::vector<std::uint64_t> primitive_roots(std::uint64_t ell, std::size_t count)
{
    if (ell == 2 || !is_prime(ell))
        fail("NotOddPrime", "primitive_root requires an odd prime, got " + std::to_string(ell));
    auto qs = prime_divisors(ell - 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t g = 2; g < ell && out.size() < count; ++g) {
        bool generator = std::all_of(qs.begin(), qs.end(),
                                     [&](auto q) { return powmod(g, (ell - 1) / q, ell) != 1; });
        if (generator)
            out.push_back(g);
    }
    return out;
}

/// Smallest positive primitive root modulo the odd prime ell.
inline std::uint64_t primitive_root(std::uint64_t ell)
{
    return primitive_roots(ell, 1).front();
}

/// Discrete logarithm c in F_p with g^((ell-1)/p) = zeta^c (mod ell), where
/// zeta = root^((ell-1)/p). `root` defaults to primitive_root(ell); any other
/// primitive root scales c by a unit of F_p.
inline unsigned power_residue_character(std::int64_t g, std::uint64_t ell, std::uint64_t p,
                                        std::optional<std::uint64_t> root = std::nullopt)
{
    require_prime(p, "p");
    require_prime(ell, "ell");
    if ((ell - 1) % p != 0)
        fail("NotOneModP", "power residue character needs ell = 1 (mod p); ell = " +
                               std::to_string(ell) + ", p = " + std::to_string(p));
    std::uint64_t a = reduce(g, ell);
    if (a == 0)
        fail("NotCoprime", "g = " + std::to_string(g) + " is divisible by ell = " + std::to_string(ell));
    if (ell == 2)
        return 0;
    std::uint64_t r = root ? *root : primitive_root(ell);
    std::uint64_t k = (ell - 1) / p;
    std::uint64_t zeta = powmod(r, k, ell);
    std::uint64_t target = powmod(a, k, ell);
    std::uint64_t cur = 1;
    for (unsigned c = 0; c < p; ++c) {
        if (cur == target)
            return c;
        cur = mulmod(cur, zeta, ell);
    }
    fail("NotPrimitiveRoot", "root " + std::to_string(r) + " is not a primitive root modulo " +
                                 std::to_string(ell));
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace detail {

struct BernoulliCache
{
    std::mutex lock;
    std::vector<ExactRational> values{ExactRational(1)};
};

inline BernoulliCache & bernoulli_cache()
{
    static BernoulliCache cache;
    return cache;
}

} // namespace detail

/// B_m for even m >= 2 in the convention B_2 = 1/6, B_4 = -1/30.
inline ExactRational bernoulli(unsigned m)
{
    if (m < 2 || m % 2 != 0)
        fail("OddIndex", "bernoulli(m) is defined here for even m >= 2, got " + std::to_string(m));
    auto & cache = detail::bernoulli_cache();
    std::lock_guard guard(cache.lock);
    auto & B = cache.values;
    // sum_{k=0}^{n} binom(n+1, k) B_k = 0
    while (B.size() <= m) {
        std::size_t n = B.size();
        ExactRational sum = 0;
        BigInt binom = 1; // binom(n+1, k)
        for (std::size_t k = 0; k < n; ++k) {
            sum += ExactRational(binom) * B[k];
            binom = binom * (n + 1 - k) / (k + 1);
        }
        B.push_back(-sum / ExactRational(n + 1));
    }
    return B[m];
}

} // namespace ktame
