#include <gtest/gtest.h>

#include "ktame/kummer.hpp"

using namespace ktame;

namespace {

using T = RadicalTag;

std::vector<RadicalGenerator> gens(std::initializer_list<RadicalGenerator> g) { return g; }

bool trial_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::string error_name(auto && f)
{
    try {
        f();
    } catch (const Error & e) {
        return e.name();
    }
    return "";
}

} // namespace

TEST(Radical, ReferenceExamples)
{
    auto r = radical(2, 3, false);
    EXPECT_EQ(r.generators, gens({{T::MinusOne}, {T::Two}}));
    EXPECT_EQ(r.dim(), 2u);
    EXPECT_EQ(radical(3, 3, false).generators, gens({{T::PrimeP}}));
    auto xi = radical(5, 3, false);
    EXPECT_EQ(xi.generators, gens({{T::CyclotomicXi, -2}}));
    EXPECT_TRUE(xi.conditional_on_vandiver);
}

TEST(Radical, CaseTable)
{
    EXPECT_EQ(radical(2, 3, true).generators, gens({{T::Two}}));
    EXPECT_EQ(radical(2, 4, false).generators, gens({{T::Two}}));
    EXPECT_EQ(radical(2, 4, true).generators, gens({{T::Two}}));
    EXPECT_EQ(radical(3, 2, false).generators, gens({{T::ZetaP}}));
    EXPECT_EQ(radical(5, 4, false).generators, gens({{T::ZetaP}}));
    EXPECT_EQ(radical(5, 5, false).generators, gens({{T::PrimeP}}));
    auto empty = radical(5, 2, false);
    EXPECT_EQ(empty.dim(), 0u);
    EXPECT_TRUE(empty.conditional_on_vandiver);
    EXPECT_FALSE(radical(3, 3, false).conditional_on_vandiver);
    EXPECT_EQ(error_name([] { radical(4, 2, false); }), "NotPrime");
    EXPECT_EQ(error_name([] { radical(3, 1, false); }), "InvalidTwist");
}

TEST(Frobenius, ReferenceExamples)
{
    EXPECT_EQ(frobenius_vector(radical(2, 3, false), 5).components, (std::vector<unsigned>{0, 1}));
    EXPECT_EQ(frobenius_vector(radical(2, 3, false), 7).components, (std::vector<unsigned>{1, 0}));
    EXPECT_EQ(frobenius_vector(radical(3, 2, false), 19).components, (std::vector<unsigned>{0}));
}

TEST(Frobenius, Errors)
{
    EXPECT_EQ(error_name([] { frobenius_vector(radical(3, 2, false), 5); }), "NotOneModP");
    EXPECT_EQ(error_name([] { frobenius_vector(radical(2, 2, false), 2); }), "InvalidFrobeniusPrime");
    EXPECT_EQ(error_name([] { frobenius_vector(radical(3, 2, false), 3); }), "InvalidFrobeniusPrime");
    EXPECT_EQ(error_name([] { frobenius_vector(radical(3, 2, false), 21); }), "NotPrime");
}

TEST(Frobenius, TwoFastPathMatchesCharacter)
{
    auto rad = radical(2, 3, false);
    for (std::uint64_t ell = 3; ell <= 10000; ell += 2) {
        if (!trial_prime(ell))
            continue;
        auto v = frobenius_vector(rad, ell);
        ASSERT_EQ(v.components[0], power_residue_character(-1, ell, 2)) << ell;
        ASSERT_EQ(v.components[1], power_residue_character(2, ell, 2)) << ell;
        auto even = frobenius_vector(radical(2, 4, false), ell);
        ASSERT_EQ(even.components[0] == 1, ell % 8 == 3 || ell % 8 == 5);
    }
}

TEST(Frobenius, ZetaPathMatchesRootsOfUnity)
{
    // zeta_p is a p-th power in F_ell iff F_ell^* has p^2 roots of x^{p^2} = 1.
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto rad = radical(p, p - 1, false);
        ASSERT_EQ(rad.generators, gens({{T::ZetaP}}));
        for (std::uint64_t ell = p + 1; ell <= 10000; ++ell) {
            if (!trial_prime(ell) || (ell - 1) % p != 0)
                continue;
            std::uint64_t g = primitive_root(ell);
            std::uint64_t zeta = powmod(g, (ell - 1) / p, ell);
            bool pth_power = powmod(zeta, (ell - 1) / p, ell) == 1;  // Euler criterion
            auto v = frobenius_vector(rad, ell);
            ASSERT_EQ(v.components[0] == 0, pth_power) << p << " " << ell;
            ASSERT_EQ(v.components[0] == 0, (ell - 1) % (p * p) == 0);
        }
    }
}

TEST(Frobenius, PrimePMatchesPthPowerEnumeration)
{
    for (std::uint64_t p : {3u, 5u, 7u}) {
        auto rad = radical(p, 1 + (p - 1), false);
        for (std::uint64_t ell = p + 1; ell <= 2000; ++ell) {
            if (!trial_prime(ell) || (ell - 1) % p != 0)
                continue;
            bool found = false;
            for (std::uint64_t x = 1; x < ell && !found; ++x)
                found = powmod(x, p, ell) == p % ell;
            ASSERT_EQ(frobenius_vector(rad, ell).components[0] == 0, found) << p << " " << ell;
        }
    }
}

TEST(Primitivity, ReferenceExamples)
{
    auto rad = radical(2, 3, false);
    auto a = primitivity_rank(rad, {3, 5});
    EXPECT_EQ(a.t, 2u);
    EXPECT_TRUE(a.independent);
    auto b = primitivity_rank(rad, {7, 23});
    EXPECT_EQ(b.t, 1u);
    EXPECT_FALSE(b.independent);
    EXPECT_EQ(b.maximal_subset, (std::set<std::uint64_t>{7}));
    for (auto r : {radical(2, 3, false), radical(3, 2, false), radical(5, 2, false)}) {
        auto e = primitivity_rank(r, {});
        EXPECT_EQ(e.t, 0u);
        EXPECT_TRUE(e.independent);
    }
}

TEST(Primitivity, RankBoundedByDimAndSize)
{
    auto rad = radical(2, 3, false);
    std::set<std::uint64_t> primes;
    for (std::uint64_t ell = 3; ell < 200; ell += 2)
        if (trial_prime(ell)) {
            primes.insert(ell);
            auto r = primitivity_rank(rad, primes);
            ASSERT_LE(r.t, std::min<std::size_t>(rad.dim(), primes.size()));
            ASSERT_EQ(r.t, rank_mod_p([&] {
                          std::vector<std::vector<unsigned>> rows;
                          for (const auto & v : r.vectors)
                              rows.push_back(v.components);
                          return rows;
                      }(), 2));
        }
}

TEST(Primitivity, ScalingInvarianceUnderRootChoice)
{
    for (std::uint64_t p : {3u, 5u, 7u}) {
        for (unsigned i : {static_cast<unsigned>(p), 3u, 2u + static_cast<unsigned>(p - 1)}) {
            auto rad = radical(p, i, false);
            if (rad.dim() == 0)
                continue;
            std::set<std::uint64_t> primes;
            std::vector<std::uint64_t> all;
            for (std::uint64_t ell = p + 1; ell <= 500; ++ell) {
                if (!trial_prime(ell) || (ell - 1) % p != 0)
                    continue;
                all.push_back(ell);
                auto roots = primitive_roots(ell, 2);
                auto v1 = frobenius_vector(rad, ell);
                auto v2 = frobenius_vector(rad, ell, {roots[1]});
                // v2 = c * v1 for some c in F_p^*
                bool scaled = false;
                for (unsigned c = 1; c < p && !scaled; ++c) {
                    bool ok = true;
                    for (std::size_t k = 0; k < v1.components.size(); ++k)
                        ok &= (c * v1.components[k]) % p == v2.components[k];
                    scaled = ok;
                }
                ASSERT_TRUE(scaled) << "p=" << p << " i=" << i << " ell=" << ell;
            }
            // ranks over sliding windows are unchanged with the second-smallest roots
            for (std::size_t start = 0; start + 3 <= all.size(); start += 3) {
                std::set<std::uint64_t> s(all.begin() + start, all.begin() + start + 3);
                std::vector<std::vector<unsigned>> rows;
                for (auto ell : s)
                    rows.push_back(frobenius_vector(rad, ell, {primitive_roots(ell, 2)[1]}).components);
                auto a = primitivity_rank(rad, s);
                ASSERT_EQ(a.t, rank_mod_p(rows, p));
                ASSERT_EQ(a.independent, rank_mod_p(rows, p) == s.size());
            }
        }
    }
}

TEST(RankModP, Basics)
{
    EXPECT_EQ(rank_mod_p({{1, 1}, {0, 0}, {0, 1}}, 2), 2u);
    EXPECT_EQ(rank_mod_p({{1, 2}, {2, 4}}, 5), 1u);
    EXPECT_EQ(rank_mod_p({{1, 2}, {2, 4}}, 3), 1u);
    EXPECT_EQ(rank_mod_p({{1, 2}, {2, 1}}, 3), 1u);
    EXPECT_EQ(rank_mod_p({}, 3), 0u);
}
