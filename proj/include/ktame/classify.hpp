#pragma once

// Vanishing of H^2_et(o_L', Z_p(i)) and of the positive cohomology
// H^2_+(o_L[1/2], Z_2(i)) for p-extensions L/Q, decided by congruences and
// power residue characters on the tamely ramified primes.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktame/exactnum.hpp"
#include "ktame/genus.hpp"
#include "ktame/ktable.hpp"
#include "ktame/kummer.hpp"
#include "ktame/localdata.hpp"

namespace ktame {

enum class RealType { TotallyReal, TotallyImaginary, NotApplicable };

inline std::string to_string(RealType t)
{
    switch (t) {
    case RealType::TotallyReal: return "totally_real";
    case RealType::TotallyImaginary: return "totally_imaginary";
    case RealType::NotApplicable: return "not_applicable";
    }
    return "?";
}

struct ExtensionShape
{
    std::uint64_t p = 2;
    std::set<std::uint64_t> ramified_tame;
    bool wild = true;
    RealType real_type = RealType::TotallyImaginary;
    bool cyclic = true;
};

inline void validate(const ExtensionShape & s)
{
    require_prime(s.p, "p");
    if ((s.p == 2) == (s.real_type == RealType::NotApplicable))
        fail("InvalidShape", "real_type must be given exactly when p = 2");
    for (auto ell : s.ramified_tame) {
        require_prime(ell, "tame prime");
        if (ell == s.p)
            fail("InvalidShape", "p cannot be tamely ramified");
        if ((ell - 1) % s.p != 0)
            fail("InvalidShape", "tame prime " + std::to_string(ell) + " is not 1 mod " + std::to_string(s.p));
    }
}

/// Shape of a cyclic degree-p extension: for p = 2 the field is imaginary
/// exactly when the real place ramifies.
inline ExtensionShape shape_of(const CyclicExtensionOfQ & ext)
{
    validate(ext);
    ExtensionShape s;
    s.p = ext.p;
    s.ramified_tame = ext.tame_ramified;
    s.wild = ext.wild_ramified;
    s.cyclic = true;
    if (ext.p != 2)
        s.real_type = RealType::NotApplicable;
    else
        s.real_type = ext.infinity_ramified ? RealType::TotallyImaginary : RealType::TotallyReal;
    return s;
}

enum class Verdict { Vanishes, Nonzero, Conditional, Unsupported };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Vanishes: return "vanishes";
    case Verdict::Nonzero: return "nonzero";
    case Verdict::Conditional: return "conditional";
    case Verdict::Unsupported: return "unsupported";
    }
    return "?";
}

struct Decision
{
    Verdict verdict = Verdict::Unsupported;
    std::optional<Assumption> condition;        // set iff verdict is Conditional
    std::optional<Verdict> verdict_if_assumed;  // the outcome once `condition` is granted
    std::string reason;
    std::optional<std::string> k_theory_consequence;
    std::set<Assumption> assumed;               // assumptions the caller granted and we used

    bool admissible() const
    {
        return verdict == Verdict::Vanishes ||
               (verdict == Verdict::Conditional && verdict_if_assumed == Verdict::Vanishes);
    }
};

namespace detail {

inline bool trivial_shape(const ExtensionShape & s) { return s.ramified_tame.empty() && !s.wild; }

inline std::string join_primes(const std::set<std::uint64_t> & primes)
{
    std::string out = "{";
    for (auto ell : primes) {
        if (out.size() > 1)
            out += ",";
        out += std::to_string(ell);
    }
    return out + "}";
}

inline bool pm3_mod8(std::uint64_t ell) { return ell % 8 == 3 || ell % 8 == 5; }

/// At most one tame prime, and it is +-3 mod 8.
inline bool positive_criterion(const ExtensionShape & s)
{
    return s.ramified_tame.size() <= 1 &&
           (s.ramified_tame.empty() || pm3_mod8(*s.ramified_tame.begin()));
}

/// At most two tame primes, none 1 mod 8, pairwise distinct mod 8: their
/// Frobenius elements generate Gal(Q(zeta_8)/Q).
inline bool real_pair_criterion(const ExtensionShape & s)
{
    if (s.ramified_tame.size() > 2)
        return false;
    std::set<std::uint64_t> residues;
    for (auto ell : s.ramified_tame) {
        if (ell % 8 == 1)
            return false;
        residues.insert(ell % 8);
    }
    return residues.size() == s.ramified_tame.size();
}

inline Decision settled(bool vanishes, std::string reason)
{
    Decision d;
    d.verdict = vanishes ? Verdict::Vanishes : Verdict::Nonzero;
    d.reason = std::move(reason);
    return d;
}

inline Decision conditional(Assumption a, bool vanishes_if_assumed, std::string reason)
{
    Decision d;
    d.verdict = Verdict::Conditional;
    d.condition = a;
    d.verdict_if_assumed = vanishes_if_assumed ? Verdict::Vanishes : Verdict::Nonzero;
    d.reason = std::move(reason);
    return d;
}

inline Decision unsupported(std::string reason)
{
    Decision d;
    d.verdict = Verdict::Unsupported;
    d.reason = std::move(reason);
    return d;
}

inline std::string k_group(unsigned i) { return "K_" + std::to_string(2 * i - 2) + "(o_L)"; }

inline std::string odd_consequence(const Decision & d, unsigned i, std::uint64_t p)
{
    std::string part = "the " + std::to_string(p) + "-part of " + k_group(i);
    switch (d.verdict) {
    case Verdict::Vanishes: return part + " vanishes";
    case Verdict::Nonzero: return part + " is nonzero";
    case Verdict::Conditional: return part + " vanishes iff H^2 vanishes (decided under " +
                                      to_string(*d.condition) + ")";
    case Verdict::Unsupported: break;
    }
    return {};
}

inline std::string two_consequence(const ExtensionShape & s, const Decision & d, unsigned i)
{
    const bool positive = positive_criterion(s);
    const std::string K = k_group(i) + " (x) Z_2";
    switch (k_index_class(i)) {
    case 2:
        return positive ? "the surjection " + K + " -> (Z/2)^{r_1(L)} is an isomorphism"
                        : "the surjection " + K + " -> (Z/2)^{r_1(L)} is not injective";
    case 4:
        return positive ? K + " = 0" : K + " != 0";
    case 6:
        return K + " = H^2_+(o_L[1/2], Z_2(i)), which " + (positive ? "vanishes" : "is nonzero");
    default:
        break;
    }
    // 2i-2 = 0 mod 8: the Chern characters are isomorphisms.
    switch (d.verdict) {
    case Verdict::Vanishes: return K + " = 0";
    case Verdict::Nonzero: return K + " != 0";
    case Verdict::Conditional:
        return K + " = H^2(o_L[1/2], Z_2(i)), " +
               (d.verdict_if_assumed == Verdict::Vanishes ? "zero" : "nonzero") + " under " +
               to_string(*d.condition);
    case Verdict::Unsupported: break;
    }
    return {};
}

inline Decision decide_odd(const ExtensionShape & s, unsigned i, bool assume_vandiver)
{
    const auto p = s.p;
    const auto & tame = s.ramified_tame;
    const std::string set = join_primes(tame);
    if (i % (p - 1) == 0) {
        bool ok = tame.size() <= 1 && (tame.empty() || (*tame.begin() - 1) % (p * p) != 0);
        return settled(ok, ok ? "p-rational: at most one tame prime, not 1 mod p^2; tame = " + set
                              : "not p-rational: tame set " + set + " fails the 1 mod p, not 1 mod p^2 test");
    }
    if (i % 2 == 0) {
        if (!tame.empty())
            return settled(false, "only layers of the cyclotomic Z_p-extension qualify; tame = " + set);
        auto base = h2_order_Z(i, assume_vandiver);
        bool p_free = base.h2_order.valuation(BigInt(p)) == 0;
        if (!p_free)
            return settled(false, "p divides |H^2_M(Z,Z(i))| = " + base.h2_order.to_string());
        return settled(true, "inside the cyclotomic Z_p-extension and |H^2_M(Z,Z(i))| = " +
                                 base.h2_order.to_string() + " is prime to p");
    }
    const auto rad = radical(p, i, false);
    bool ok = tame.size() <= 1;
    if (ok && !tame.empty())
        ok = frobenius_vector(rad, *tame.begin()).components.front() != 0;
    std::string why = ok ? "tame set " + set + " is D-primitive for radical " + rad.generators.front().name()
                         : "tame set " + set + " is not D-primitive for radical " + rad.generators.front().name();
    if (!ok)
        return settled(false, why);
    if (rad.conditional_on_vandiver && !assume_vandiver)
        return conditional(Assumption::Vandiver, true, why + "; needs H^2(Z[1/p], Z_p(i)) = 0");
    auto d = settled(true, why);
    if (rad.conditional_on_vandiver)
        d.assumed.insert(Assumption::Vandiver);
    return d;
}

inline Decision decide_two(const ExtensionShape & s, unsigned i)
{
    const std::string set = join_primes(s.ramified_tame);
    if (s.real_type == RealType::TotallyImaginary) {
        bool ok = positive_criterion(s);
        return settled(ok, ok ? "unramified outside {2, inf, l} with l = +-3 mod 8; tame = " + set
                              : "needs at most one tame prime l = +-3 mod 8; tame = " + set);
    }
    if (i % 2 == 0)
        return settled(false, "i even requires L totally imaginary");
    bool ok = real_pair_criterion(s);
    std::string why = ok ? "Frobenius of tame primes " + set + " independent in Gal(Q(zeta_8)/Q)"
                         : "tame primes " + set + " do not satisfy: <= 2 primes, none 1 mod 8, distinct mod 8";
    if (!s.cyclic)
        return conditional(Assumption::H_i, ok, why + " (non-cyclic: holds under H_i)");
    return settled(ok, why);
}

} // namespace detail

inline Decision vanishing_decision(const ExtensionShape & shape, unsigned i, bool assume_vandiver)
{
    validate(shape);
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    if (detail::trivial_shape(shape))
        return detail::unsupported("no finite ramification: not a nontrivial p-extension of Q");
    Decision d;
    if (shape.p != 2) {
        d = detail::decide_odd(shape, i, assume_vandiver);
        d.k_theory_consequence = detail::odd_consequence(d, i, shape.p);
    } else {
        d = detail::decide_two(shape, i);
        d.k_theory_consequence = detail::two_consequence(shape, d, i);
    }
    return d;
}

/// H^2_+(o_L[1/2], Z_2(i)) = 0, i.e. L is 2-regular; independent of i.
inline Decision positive_vanishing_decision(const ExtensionShape & shape, unsigned i)
{
    validate(shape);
    if (shape.p != 2)
        fail("RequiresPEqualsTwo", "positive cohomology is only decided for p = 2");
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    if (detail::trivial_shape(shape))
        return detail::unsupported("no finite ramification: not a nontrivial 2-extension of Q");
    bool ok = detail::positive_criterion(shape);
    const std::string set = detail::join_primes(shape.ramified_tame);
    auto d = detail::settled(ok, ok ? "unramified outside {2, inf, l} with l = +-3 mod 8; tame = " + set
                                    : "needs at most one tame prime l = +-3 mod 8; tame = " + set);
    d.k_theory_consequence = detail::two_consequence(shape, d, i);
    return d;
}

struct EnumeratedSet
{
    std::set<std::uint64_t> tame;
    Decision decision;
};

/// Tame sets of primes <= bound for which the shape's H^2 vanishes (or would
/// vanish under the stated condition), ordered by size then lexicographically.
/// `shape_template.ramified_tame` is ignored.
inline std::vector<EnumeratedSet> enumerate_vanishing(std::uint64_t p, unsigned i, ExtensionShape shape_template,
                                                      std::uint64_t bound)
{
    shape_template.p = p;
    shape_template.ramified_tame.clear();
    validate(shape_template);
    if (bound < 2)
        fail("InvalidArgument", "bound must be >= 2");
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t ell = 3; ell <= bound; ell += 2)
        if (ell != p && (ell - 1) % p == 0 && is_prime(ell))
            candidates.push_back(ell);

    std::vector<EnumeratedSet> out;
    // Admissibility is closed under subsets, so growing admissible sets by a
    // larger prime reaches every admissible set.
    std::vector<std::set<std::uint64_t>> frontier{{}};
    while (!frontier.empty()) {
        std::vector<std::set<std::uint64_t>> next;
        for (const auto & tame : frontier) {
            auto shape = shape_template;
            shape.ramified_tame = tame;
            auto d = vanishing_decision(shape, i, false);
            bool grow = d.admissible() || (tame.empty() && d.verdict == Verdict::Unsupported);
            if (d.admissible())
                out.push_back({tame, d});
            if (!grow)
                continue;
            std::uint64_t last = tame.empty() ? 0 : *tame.rbegin();
            for (auto ell : candidates) {
                if (ell <= last)
                    continue;
                auto bigger = tame;
                bigger.insert(ell);
                next.push_back(std::move(bigger));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace ktame
