#pragma once

// Ramification shapes of cyclic degree-p extensions of Q and their local
// invariants e_v, e_v', e_v^(i) = gcd(e_v, q_v^i - 1).

#include <cstdint>
#include <set>
#include <string>

#include "ktame/exactnum.hpp"

namespace ktame {

/// Ramification shape of a cyclic degree-p extension L/Q.
struct CyclicExtensionOfQ
{
    std::uint64_t p = 2;
    std::set<std::uint64_t> tame_ramified;
    bool wild_ramified = false;
    bool infinity_ramified = false;

    /// r: number of real places of Q ramified in L.
    int r() const { return infinity_ramified ? 1 : 0; }

    friend bool operator==(const CyclicExtensionOfQ &, const CyclicExtensionOfQ &) = default;
};

/// Throws unless the shape can be realized by a cyclic degree-p extension.
inline void validate(const CyclicExtensionOfQ & ext)
{
    require_prime(ext.p, "degree p");
    if (ext.p != 2 && ext.infinity_ramified)
        fail("InvalidExtension", "infinite places cannot ramify in an extension of odd degree");
    if (ext.tame_ramified.empty() && !ext.wild_ramified && !ext.infinity_ramified)
        fail("InvalidExtension", "no ramified place: Q has no unramified cyclic extension");
    for (auto ell : ext.tame_ramified) {
        require_prime(ell, "tame prime");
        if (ell == ext.p)
            fail("InvalidExtension", "p itself is listed as tame; use the wild flag");
        if ((ell - 1) % ext.p != 0)
            fail("InvalidExtension", "tame prime " + std::to_string(ell) + " is not 1 mod " +
                                         std::to_string(ext.p));
    }
}

/// |S \ S_p|: finite ramified primes other than p.
inline std::size_t tame_count(const CyclicExtensionOfQ & ext) { return ext.tame_ramified.size(); }

struct LocalData
{
    std::uint64_t ell = 0;
    std::uint64_t q = 0;  // residue field cardinality
    std::uint64_t e = 1;  // ramification index
    std::uint64_t f = 1;  // residue degree
    std::uint64_t e_prime = 1;  // prime-to-ell part of e
    std::uint64_t e_i = 1;  // gcd(e, q^i - 1)

    friend bool operator==(const LocalData &, const LocalData &) = default;
};

/// gcd(e, q^i - 1) without forming q^i.
inline std::uint64_t twisted_index(std::uint64_t e, std::uint64_t q, unsigned i)
{
    if (e == 0)
        fail("InvalidArgument", "ramification index must be positive");
    std::uint64_t qi = powmod(q, i, e);
    return gcd_u64(e, (qi + e - 1) % e);
}

inline LocalData local_invariants(const CyclicExtensionOfQ & ext, std::uint64_t ell, unsigned i)
{
    validate(ext);
    if (i < 1)
        fail("InvalidTwist", "twist i must be >= 1");
    LocalData out;
    out.ell = ell;
    out.q = ell;
    out.e = ext.p;
    out.f = 1;
    if (ext.tame_ramified.count(ell)) {
        out.e_prime = ext.p;
    } else if (ell == ext.p && ext.wild_ramified) {
        out.e_prime = 1;
    } else {
        fail("UnramifiedPrime", std::to_string(ell) + " does not ramify in this extension");
    }
    out.e_i = twisted_index(out.e, out.q, i);
    return out;
}

/// |K_{2i-1}(F_q)| = q^i - 1 in factored form.
inline FactoredInteger residual_k_order(std::uint64_t q, unsigned i,
                                        std::uint64_t trial_bound = default_trial_bound)
{
    if (q < 2)
        fail("InvalidArgument", "residue cardinality q must be >= 2");
    if (i < 1)
        fail("InvalidTwist", "twist i must be >= 1");
    BigInt v = boost::multiprecision::pow(BigInt(q), i) - 1;
    return factor(v, trial_bound);
}

/// Cyclic degree-p extension shape of Q(sqrt d); |d| is limited to 10^12 so
/// that full trial division stays cheap.
inline CyclicExtensionOfQ quadratic_extension(std::int64_t d)
{
    if (d == 0 || d == 1)
        fail("InvalidDiscriminant", "d must be a squarefree integer other than 0 and 1");
    std::uint64_t n = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (n > 1'000'000'000'000ULL)
        fail("OutOfRange", "|d| is limited to 10^12");
    CyclicExtensionOfQ ext;
    ext.p = 2;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q != 0)
            continue;
        n /= q;
        if (n % q == 0)
            fail("NotSquarefree", std::to_string(d) + " is not squarefree");
        if (q != 2)
            ext.tame_ramified.insert(q);
    }
    if (n > 1 && n != 2)
        ext.tame_ramified.insert(n);
    ext.wild_ramified = reduce(d, 4) != 1;
    ext.infinity_ramified = d < 0;
    return ext;
}

/// Field discriminant of Q(sqrt d).
inline std::int64_t quadratic_discriminant(std::int64_t d)
{
    return reduce(d, 4) == 1 ? d : 4 * d;
}

} // namespace ktame
