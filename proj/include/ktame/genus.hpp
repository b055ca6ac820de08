#pragma once

// Genus exponents for motivic tame kernels and even K-groups of cyclic
// degree-p extensions L/Q, descent bounds, and the exact ker/coker structure.
//
// Every exponent is the p-adic valuation of
//     |H^2_M(o_L, Z(i))_G| / |H^2_M(Z, Z(i))|    (genus_exponent)
//     |K_{2i-2}(o_L)_G| / |K_{2i-2}(Z)|          (k_genus_ratio)
// and equals |S \ S_p| - t + (sign correction at the real place).

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ktame/exactnum.hpp"
#include "ktame/ktable.hpp"
#include "ktame/kummer.hpp"
#include "ktame/localdata.hpp"

namespace ktame {

enum class Assumption { H_i, UnramifiedAtInfinity, Vandiver };

inline std::string to_string(Assumption a)
{
    switch (a) {
    case Assumption::H_i: return "H_i";
    case Assumption::UnramifiedAtInfinity: return "unramified_at_infinity";
    case Assumption::Vandiver: return "vandiver";
    }
    return "?";
}

struct GenusOptions
{
    /// Assume hypothesis (H_i); needed to pin the 2-exponent for i odd when
    /// the real place ramifies.
    bool assume_hi = false;
};

struct PrimeContribution
{
    std::uint64_t e_i = 1;
    std::uint64_t e_prime = 1;

    friend bool operator==(const PrimeContribution &, const PrimeContribution &) = default;
};

struct GenusReport
{
    CyclicExtensionOfQ ext;
    unsigned i = 2;
    std::map<std::uint64_t, PrimeContribution> per_prime;
    std::size_t t = 0;
    int r = 0;
    int s_i = 0;
    bool delta_variant_used = false;  // t computed from the totally positive radical
    int exponent_low = 0;
    int exponent_high = 0;
    BigInt norm_index = 1;
    std::set<Assumption> assumptions;
    std::set<std::uint64_t> primitive_subset;
    std::string formula;

    bool exact() const { return exponent_low == exponent_high; }
};

/// s_i(L/Q): cokernel rank of the sign map on H^1(Q, Z_2(i))/2 at the ramified
/// real places. -1 generates the sign for i odd; the sign map is trivial for i even.
inline int signature_corank(unsigned i, int r) { return i % 2 == 0 ? r : 0; }

namespace detail {

inline GenusReport genus_skeleton(const CyclicExtensionOfQ & ext, unsigned i)
{
    validate(ext);
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    GenusReport rep;
    rep.ext = ext;
    rep.i = i;
    rep.r = ext.r();
    rep.s_i = signature_corank(i, rep.r);
    for (auto ell : ext.tame_ramified) {
        auto ld = local_invariants(ext, ell, i);
        rep.per_prime[ell] = {ld.e_i, ld.e_prime};
    }
    if (ext.wild_ramified) {
        auto ld = local_invariants(ext, ext.p, i);
        rep.per_prime[ext.p] = {ld.e_i, ld.e_prime};
    }
    return rep;
}

inline void set_rank(GenusReport & rep, const KummerRadical & rad)
{
    auto prim = primitivity_rank(rad, rep.ext.tame_ramified);
    rep.t = prim.t;
    rep.primitive_subset = prim.maximal_subset;
    rep.norm_index = boost::multiprecision::pow(BigInt(rep.ext.p), static_cast<unsigned>(rep.t));
    rep.delta_variant_used = rad.plus_variant;
    if (rad.conditional_on_vandiver)
        rep.assumptions.insert(Assumption::Vandiver);
}

inline void set_exact(GenusReport & rep, int value)
{
    rep.exponent_low = rep.exponent_high = value;
}

} // namespace detail

inline GenusReport genus_exponent(const CyclicExtensionOfQ & ext, unsigned i, const GenusOptions & opts = {})
{
    auto rep = detail::genus_skeleton(ext, i);
    const int tame = static_cast<int>(tame_count(ext));
    const auto p = ext.p;

    if (p != 2) {
        detail::set_rank(rep, radical(p, i, false));
        detail::set_exact(rep, tame - static_cast<int>(rep.t));
        rep.formula = "|S\\S_p| - t_i";
        return rep;
    }
    if (i % 2 == 0) {
        detail::set_rank(rep, radical(2, i, false));
        detail::set_exact(rep, tame - static_cast<int>(rep.t) - rep.r);
        rep.formula = "|S\\S_2| - t_i - r";
        return rep;
    }
    if (rep.r == 0) {
        detail::set_rank(rep, radical(2, i, false));
        detail::set_exact(rep, tame - static_cast<int>(rep.t));
        rep.assumptions.insert(Assumption::UnramifiedAtInfinity);
        rep.formula = "|S\\S_2| - t_i";
        return rep;
    }
    if (opts.assume_hi) {
        detail::set_rank(rep, radical(2, i, true));
        detail::set_exact(rep, tame + rep.s_i - static_cast<int>(rep.t));
        rep.assumptions.insert(Assumption::H_i);
        rep.formula = "|S\\S_2| + s_i - t_i^+";
        return rep;
    }
    // s_i <= nu_i <= r
    detail::set_rank(rep, radical(2, i, false));
    rep.exponent_low = tame + rep.s_i - static_cast<int>(rep.t);
    rep.exponent_high = tame + rep.r - static_cast<int>(rep.t);
    rep.formula = "|S\\S_2| + nu_i - t_i, s_i <= nu_i <= r";
    return rep;
}

inline GenusReport k_genus_ratio(const CyclicExtensionOfQ & ext, unsigned i, const GenusOptions & opts = {})
{
    auto rep = genus_exponent(ext, i, opts);
    if (ext.p != 2)
        return rep;
    const int tame = static_cast<int>(tame_count(ext));
    switch (k_index_class(i)) {
    case 2:  // alpha_i = -r, same as the motivic ratio
        rep.formula = "|S\\S_2| - t_i - r";
        break;
    case 6:  // alpha_i = 0: the (Z/2)^r cokernel is added back
        rep.exponent_low += rep.r;
        rep.exponent_high += rep.r;
        rep.formula = "|S\\S_2| - t_i";
        break;
    case 0:  // s_i <= alpha_i <= r, pinned by (H_i) or by r = 0
        break;
    case 4: {  // alpha_i = 0 and the norm index is read on the positive radical
        auto fresh = detail::genus_skeleton(ext, i);
        detail::set_rank(fresh, radical(2, i, true));
        detail::set_exact(fresh, tame - static_cast<int>(fresh.t));
        fresh.assumptions.insert(Assumption::H_i);
        fresh.formula = "|S\\S_2| - t_i^+";
        return fresh;
    }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Descent

/// Finite abelian group as cyclic factors in ascending divisibility order.
struct AbelianGroupStructure
{
    std::vector<BigInt> cyclic_orders;

    std::string to_string() const
    {
        if (cyclic_orders.empty())
            return "0";
        std::string s;
        for (const auto & n : cyclic_orders) {
            if (!s.empty())
                s += " + ";
            s += "Z/" + n.str();
        }
        return s;
    }

    friend bool operator==(const AbelianGroupStructure &, const AbelianGroupStructure &) = default;
};

/// Invariant factors d_1 | d_2 | ... of the direct sum of Z/n over `orders`
/// (entries equal to 1 are dropped).
inline AbelianGroupStructure canonical_structure(const std::vector<BigInt> & orders)
{
    std::map<BigInt, std::vector<unsigned>> by_prime;  // prime -> exponents
    for (const auto & n : orders) {
        if (n < 1)
            fail("InvalidArgument", "cyclic orders must be positive");
        auto f = factor(n);
        if (!f.complete())
            fail("OutOfRange", "cannot put " + n.str() + " in canonical form: incomplete factorization");
        for (const auto & pp : f.factors)
            by_prime[pp.prime].push_back(pp.exponent);
    }
    std::size_t len = 0;
    for (auto & [q, exps] : by_prime) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        len = std::max(len, exps.size());
    }
    // The k-th largest invariant factor takes the k-th largest power of every prime.
    std::vector<BigInt> out(len, BigInt(1));
    for (const auto & [q, exps] : by_prime)
        for (std::size_t k = 0; k < exps.size(); ++k)
            out[len - 1 - k] *= boost::multiprecision::pow(q, exps[k]);
    return {out};
}

struct DescentBounds
{
    BigInt coker_product = 1;  // prod_{v in T} e_v^{(i-1)}
    int coker_two_exponent = 0;  // s_i - r for i odd, 0 for i even
    BigInt ker_product = 1;  // prod_{v in T} e_v'
    int ker_two_exponent = 0;  // r for i even, -r for i odd
    FactoredInteger coker_lower;  // product * 2^max(0, exponent)
    FactoredInteger ker_lower;
    std::set<std::uint64_t> T_used;
    std::set<Assumption> assumptions;
};

inline DescentBounds descent_bounds(const CyclicExtensionOfQ & ext, unsigned i)
{
    validate(ext);
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    const auto rad = radical(ext.p, i, false);
    const auto prim = primitivity_rank(rad, ext.tame_ramified);
    const int r = ext.r();
    const int s_i = signature_corank(i, r);

    DescentBounds out;
    out.T_used = prim.maximal_subset;
    if (rad.conditional_on_vandiver)
        out.assumptions.insert(Assumption::Vandiver);
    for (auto ell : out.T_used) {
        auto ld = local_invariants(ext, ell, i);
        out.coker_product *= twisted_index(ld.e, ld.q, i - 1);
        out.ker_product *= ld.e_prime;
    }
    out.coker_two_exponent = i % 2 == 1 ? s_i - r : 0;
    out.ker_two_exponent = i % 2 == 0 ? r : -r;
    auto scaled = [](const BigInt & base, int two_exp) {
        return factor(two_exp > 0 ? BigInt(base << two_exp) : base);
    };
    out.coker_lower = scaled(out.coker_product, out.coker_two_exponent);
    out.ker_lower = scaled(out.ker_product, out.ker_two_exponent);
    return out;
}

struct ExactDescent
{
    bool applicable = false;
    AbelianGroupStructure structure;  // ker f_i = coker f_i when applicable
    std::string reason;
    std::set<Assumption> assumptions;
};

/// ker f_i = coker f_i = sum over finite ramified v of Z/e_v', when the
/// base group has no p-torsion and every tame prime is D-primitive.
inline ExactDescent exact_descent_structure(const CyclicExtensionOfQ & ext, unsigned i, bool assume_vandiver)
{
    validate(ext);
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    ExactDescent out;
    if (ext.infinity_ramified) {
        out.reason = "ramified at infinity";
        return out;
    }
    const auto base = h2_order_Z(i, assume_vandiver);
    if (base.vandiver_assumed && ext.p != 2)
        out.assumptions.insert(Assumption::Vandiver);
    if (base.conditional_on_vandiver && ext.p != 2) {
        out.reason = "p-part of |H^2_M(Z,Z(" + std::to_string(i) + "))| is only known under Vandiver's conjecture";
        return out;
    }
    if (base.h2_order.valuation(BigInt(ext.p)) > 0) {
        out.reason = "p divides |H^2_M(Z,Z(" + std::to_string(i) + "))| = " + base.h2_order.to_string();
        return out;
    }
    const auto rad = radical(ext.p, i, false);
    if (rad.conditional_on_vandiver) {
        if (!assume_vandiver) {
            out.reason = "radical is only known under Vandiver's conjecture";
            return out;
        }
        out.assumptions.insert(Assumption::Vandiver);
    }
    const auto prim = primitivity_rank(rad, ext.tame_ramified);
    if (!prim.independent) {
        out.reason = "rank deficit: t = " + std::to_string(prim.t) + " < " +
                     std::to_string(ext.tame_ramified.size()) + " tame primes";
        return out;
    }
    std::vector<BigInt> orders;
    for (auto ell : ext.tame_ramified)
        orders.emplace_back(local_invariants(ext, ell, i).e_prime);
    if (ext.wild_ramified)
        orders.emplace_back(local_invariants(ext, ext.p, i).e_prime);
    out.applicable = true;
    out.structure = canonical_structure(orders);
    return out;
}

} // namespace ktame
