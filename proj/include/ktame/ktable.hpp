#pragma once

// Orders of H^2_M(Z, Z(i)) and K_{2i-2}(Z).

#include <cstdint>

#include "ktame/exactnum.hpp"

namespace ktame {

/// c_k = numerator(|B_{2k}| / 4k).
inline BigInt bernoulli_c(unsigned k)
{
    if (k == 0)
        fail("InvalidArgument", "c_k needs k >= 1");
    ExactRational b = bernoulli(2 * k);
    if (b < 0)
        b = -b;
    return numerator(b / ExactRational(4 * k));
}

struct BaseOrder
{
    unsigned i = 2;
    FactoredInteger h2_order;
    FactoredInteger k_order;
    /// The odd part is only known under Vandiver's conjecture (i odd) and
    /// the caller did not assume it.
    bool conditional_on_vandiver = false;
    /// The caller assumed Vandiver's conjecture to produce the value.
    bool vandiver_assumed = false;
};

/// 2i - 2 mod 8.
inline unsigned k_index_class(unsigned i) { return (2 * i - 2) % 8; }

inline BaseOrder h2_order_Z(unsigned i, bool assume_vandiver)
{
    if (i < 2)
        fail("InvalidTwist", "twist i must be >= 2");
    BaseOrder out;
    out.i = i;
    if (i % 2 == 0) {
        BigInt h2 = 2 * bernoulli_c(i / 2);
        out.h2_order = factor(h2);
        // Only 2i-2 = 6 (mod 8) has the (Z/2)^{r_1} cokernel, r_1(Q) = 1.
        out.k_order = k_index_class(i) == 6 ? factor(BigInt(h2 / 2)) : out.h2_order;
        return out;
    }
    // i odd: 2-part trivial unconditionally, odd part trivial iff Vandiver holds
    // in the relevant eigenspaces. delta_i(Q) = 0 since -1 has negative sign.
    out.h2_order = FactoredInteger{};
    out.k_order = FactoredInteger{};
    out.conditional_on_vandiver = !assume_vandiver;
    out.vandiver_assumed = assume_vandiver;
    return out;
}

inline FactoredInteger k_order_Z(unsigned i, bool assume_vandiver)
{
    return h2_order_Z(i, assume_vandiver).k_order;
}

} // namespace ktame
