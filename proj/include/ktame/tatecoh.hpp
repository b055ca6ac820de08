#pragma once

// Tate cohomology of a cyclic group acting on Z/m, by enumeration. This is the
// oracle for the closed form gcd(e, q^i - 1); it never falls back to it.

#include <cstdint>
#include <vector>

#include "ktame/exactnum.hpp"

namespace ktame {

/// Z/m with a cyclic group of order n whose generator acts by x -> u*x.
struct TateModule
{
    std::uint64_t m = 1;
    std::uint64_t n = 1;
    std::uint64_t u = 0;

    friend bool operator==(const TateModule &, const TateModule &) = default;
};

struct TateOrders
{
    std::uint64_t h0 = 1;   // |M^G / N M|
    std::uint64_t hm1 = 1;  // |ker N / (sigma - 1) M|

    friend bool operator==(const TateOrders &, const TateOrders &) = default;
};

inline constexpr std::uint64_t tate_module_cap = 1'000'000;

inline void validate(const TateModule & M)
{
    if (M.m == 0 || M.n == 0)
        fail("InvalidModule", "m and n must be positive");
    if (M.m > tate_module_cap)
        fail("ModuleTooLarge", "enumeration is capped at m <= 10^6, got m = " + std::to_string(M.m));
    if (gcd_u64(M.u % M.m, M.m) != 1 && M.m != 1)
        fail("InvalidModule", "u must be a unit modulo m");
    if (powmod(M.u, M.n, M.m) != 1 % M.m)
        fail("InvalidModule", "u^n is not 1 modulo m; the action is not of order dividing n");
}

namespace detail {

/// Size of { x in Z/m : c*x = 0 } and of { c*x : x in Z/m }, by enumeration.
struct MapSizes
{
    std::uint64_t kernel = 0;
    std::uint64_t image = 0;
};

inline MapSizes enumerate_multiplication(std::uint64_t c, std::uint64_t m)
{
    MapSizes out;
    std::vector<char> hit(m, 0);
    std::uint64_t y = 0;  // c*x mod m, updated incrementally
    for (std::uint64_t x = 0; x < m; ++x) {
        if (y == 0)
            ++out.kernel;
        if (!hit[y]) {
            hit[y] = 1;
            ++out.image;
        }
        y += c;
        if (y >= m)
            y -= m;
    }
    return out;
}

} // namespace detail

inline TateOrders tate_orders(const TateModule & M)
{
    validate(M);
    const std::uint64_t m = M.m;
    const std::uint64_t u = M.u % m;
    const std::uint64_t sigma_minus_1 = (u + m - 1) % m;

    // N = sum_{j<n} u^j (mod m)
    std::uint64_t norm = 0, term = 1 % m;
    for (std::uint64_t j = 0; j < M.n; ++j) {
        norm = (norm + term) % m;
        term = mulmod(term, u, m);
    }

    auto sigma = detail::enumerate_multiplication(sigma_minus_1, m);
    auto nmap = detail::enumerate_multiplication(norm, m);

    // M^G = ker(sigma - 1), N M = im(N); ker N, (sigma - 1) M = im(sigma - 1).
    // N M lies in M^G and (sigma - 1) M in ker N, so the quotients are exact.
    TateOrders out;
    out.h0 = sigma.kernel / nmap.image;
    out.hm1 = nmap.kernel / sigma.image;
    return out;
}

/// gcd(e, q^i - 1): the order of H^0-hat on Z/(q^{if} - 1) with the
/// decomposition group of order e*f acting through Frobenius q^i.
inline std::uint64_t lemma22_closed_form(std::uint64_t e, std::uint64_t q, std::uint64_t f, unsigned i)
{
    if (e == 0 || q == 0 || f == 0 || i == 0)
        fail("InvalidArgument", "all arguments must be >= 1");
    std::uint64_t qi = powmod(q, i, e);
    return gcd_u64(e, (qi + e - 1) % e);
}

/// The module the closed form is compared against; throws past the cap.
inline TateModule residual_module(std::uint64_t e, std::uint64_t q, std::uint64_t f, unsigned i)
{
    BigInt m = boost::multiprecision::pow(BigInt(q), i * static_cast<unsigned>(f)) - 1;
    if (m > tate_module_cap)
        fail("ModuleTooLarge", "q^(if) - 1 = " + m.str() + " exceeds the enumeration cap");
    TateModule M;
    M.m = static_cast<std::uint64_t>(m);
    M.n = e * f;
    M.u = M.m == 1 ? 0 : powmod(q, i, M.m);
    return M;
}

} // namespace ktame
