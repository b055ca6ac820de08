#pragma once

// Kummer radicals over Q, Frobenius vectors in Gal(E(D^{1/p})/E) with
// E = Q(mu_p), and primitivity ranks over F_p.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktame/exactnum.hpp"

namespace ktame {

enum class RadicalTag { MinusOne, Two, PrimeP, ZetaP, CyclotomicXi };

struct RadicalGenerator
{
    RadicalTag tag = RadicalTag::Two;
    int j = 0;  // only meaningful for CyclotomicXi

    std::string name() const
    {
        switch (tag) {
        case RadicalTag::MinusOne: return "-1";
        case RadicalTag::Two: return "2";
        case RadicalTag::PrimeP: return "p";
        case RadicalTag::ZetaP: return "zeta_p";
        case RadicalTag::CyclotomicXi: return "xi_" + std::to_string(j);
        }
        return "?";
    }

    friend bool operator==(const RadicalGenerator &, const RadicalGenerator &) = default;
};

struct KummerRadical
{
    std::uint64_t p = 2;
    unsigned i = 2;
    std::vector<RadicalGenerator> generators;
    bool plus_variant = false;
    bool conditional_on_vandiver = false;

    std::size_t dim() const { return generators.size(); }
};

/// Generators of D_Q^{(i)} (or D_Q^{+(i)}) modulo p-th powers.
inline KummerRadical radical(std::uint64_t p, unsigned i, bool plus_variant)
{
    require_prime(p, "p");
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    KummerRadical rad;
    rad.p = p;
    rad.i = i;
    rad.plus_variant = plus_variant;
    using T = RadicalTag;
    if (p == 2) {
        // -1 is negative at the real place, so it leaves the totally positive part.
        if (i % 2 == 1 && !plus_variant)
            rad.generators = {{T::MinusOne}, {T::Two}};
        else
            rad.generators = {{T::Two}};
        return rad;
    }
    const std::uint64_t period = p - 1;
    if (i % 2 == 1) {
        if (i % period == 1 % period) {
            rad.generators = {{T::PrimeP}};
        } else {
            rad.generators = {{T::CyclotomicXi, 1 - static_cast<int>(i)}};
            rad.conditional_on_vandiver = true;
        }
    } else if (i % period == 0) {
        rad.generators = {{T::ZetaP}};
    } else {
        rad.conditional_on_vandiver = true;
    }
    return rad;
}

struct FrobeniusVector
{
    std::uint64_t ell = 0;
    std::vector<unsigned> components;  // entries of F_p, one per generator
};

struct FrobeniusOptions
{
    /// Primitive root used to fix zeta in F_ell; defaults to the smallest one.
    std::optional<std::uint64_t> root;
};

namespace detail {

inline void check_frobenius_prime(std::uint64_t p, std::uint64_t ell)
{
    require_prime(ell, "ell");
    if (ell == 2 || ell == p)
        fail("InvalidFrobeniusPrime", "ell must be odd and different from p, got " + std::to_string(ell));
    if (p != 2 && (ell - 1) % p != 0)
        fail("NotOneModP", "ell = " + std::to_string(ell) + " is not 1 mod " + std::to_string(p));
}

/// a^(-j) mod p for a in [1, p-1]; Teichmuller lift reduced modulo p.
inline std::uint64_t xi_exponent(std::uint64_t a, int j, std::uint64_t p)
{
    if (j >= 0)
        return powmod(invmod(a, p), static_cast<std::uint64_t>(j), p);
    return powmod(a, static_cast<std::uint64_t>(-static_cast<std::int64_t>(j)), p);
}

} // namespace detail

/// xi_j = prod_{a=1}^{p-1} (zeta^a - 1)^{a^{-j} mod p} evaluated in F_ell.
inline std::uint64_t cyclotomic_xi_mod(int j, std::uint64_t p, std::uint64_t ell, std::uint64_t root)
{
    std::uint64_t zeta = powmod(root, (ell - 1) / p, ell);
    std::uint64_t x = 1, zeta_a = 1;
    for (std::uint64_t a = 1; a < p; ++a) {
        zeta_a = mulmod(zeta_a, zeta, ell);
        std::uint64_t base = (zeta_a + ell - 1) % ell;
        x = mulmod(x, powmod(base, detail::xi_exponent(a, j, p), ell), ell);
    }
    return x;
}

inline FrobeniusVector frobenius_vector(const KummerRadical & rad, std::uint64_t ell,
                                        const FrobeniusOptions & opts = {})
{
    detail::check_frobenius_prime(rad.p, ell);
    FrobeniusVector out;
    out.ell = ell;
    const std::uint64_t p = rad.p;
    auto root = [&] { return opts.root ? *opts.root : primitive_root(ell); };
    for (const auto & g : rad.generators) {
        unsigned c = 0;
        switch (g.tag) {
        case RadicalTag::MinusOne:
            c = ell % 4 == 3 ? 1 : 0;
            break;
        case RadicalTag::Two:
            c = (ell % 8 == 3 || ell % 8 == 5) ? 1 : 0;
            break;
        case RadicalTag::PrimeP:
            c = power_residue_character(static_cast<std::int64_t>(p), ell, p, root());
            break;
        case RadicalTag::ZetaP:
            c = (ell - 1) % (p * p) == 0 ? 0 : 1;
            break;
        case RadicalTag::CyclotomicXi: {
            auto r = root();
            auto x = cyclotomic_xi_mod(g.j, p, ell, r);
            c = power_residue_character(static_cast<std::int64_t>(x), ell, p, r);
            break;
        }
        }
        out.components.push_back(c);
    }
    return out;
}

/// Rank over F_p of the given rows (Gaussian elimination on a copy).
inline std::size_t rank_mod_p(std::vector<std::vector<unsigned>> rows, std::uint64_t p)
{
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] % p == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint64_t inv = invmod(rows[rank][col] % p, p);
        for (auto & v : rows[rank])
            v = static_cast<unsigned>(mulmod(v, inv, p));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] % p == 0)
                continue;
            std::uint64_t factor = rows[r][col] % p;
            for (std::size_t k = 0; k < cols; ++k)
                rows[r][k] = static_cast<unsigned>((rows[r][k] + p * p - mulmod(factor, rows[rank][k], p)) % p);
        }
        ++rank;
    }
    return rank;
}

struct PrimitivityResult
{
    std::size_t t = 0;
    bool independent = true;
    std::set<std::uint64_t> maximal_subset;
    std::vector<FrobeniusVector> vectors;  // ascending ell
};

/// t_D for the given tame primes; the maximal subset is chosen greedily in
/// ascending prime order.
inline PrimitivityResult primitivity_rank(const KummerRadical & rad, const std::set<std::uint64_t> & primes,
                                          const FrobeniusOptions & opts = {})
{
    PrimitivityResult out;
    std::vector<std::vector<unsigned>> kept;
    for (auto ell : primes) {
        auto v = frobenius_vector(rad, ell, opts);
        kept.push_back(v.components);
        if (rank_mod_p(kept, rad.p) == kept.size())
            out.maximal_subset.insert(ell);
        else
            kept.pop_back();
        out.vectors.push_back(std::move(v));
    }
    out.t = out.maximal_subset.size();
    out.independent = out.t == primes.size();
    return out;
}

} // namespace ktame
