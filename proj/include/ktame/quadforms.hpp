#pragma once

// Quadratic fields Q(sqrt d) through binary quadratic forms: narrow class
// numbers (reduced forms / rho-cycles), fundamental units by continued
// fractions, signatures of 2-units and the 2-regularity test.
//
// Sign evaluations compare a^2 with d*b^2 exactly; nothing here touches
// floating point.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ktame/exactnum.hpp"
#include "ktame/localdata.hpp"

namespace ktame {

// ---------------------------------------------------------------------------
// Forms

/// a x^2 + b x y + c y^2
struct Form
{
    std::int64_t a = 0, b = 0, c = 0;

    __int128 discriminant() const { return static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c; }

    auto operator<=>(const Form &) const = default;
};

inline bool primitive(const Form & f)
{
    return std::gcd(std::gcd(f.a, f.b), f.c) == 1;
}

/// floor(sqrt(n)) for n >= 0.
inline std::int64_t isqrt(std::int64_t n)
{
    if (n < 0)
        fail("InvalidArgument", "isqrt of a negative number");
    auto r = static_cast<std::int64_t>(boost::multiprecision::sqrt(BigInt(n)));
    return r;
}

inline BigInt isqrt(const BigInt & n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const BigInt & n, BigInt & root)
{
    if (n < 0)
        return false;
    root = isqrt(n);
    return root * root == n;
}

inline void require_fundamental_discriminant_input(std::int64_t d)
{
    // quadratic_extension checks squarefreeness and range
    (void)quadratic_extension(d);
}

// Definite forms -------------------------------------------------------------

/// Reduced positive definite form properly equivalent to f (D < 0, a > 0).
inline Form reduce_definite(Form f)
{
    if (f.discriminant() >= 0 || f.a <= 0)
        fail("InvalidForm", "reduce_definite needs a positive definite form");
    for (;;) {
        // b into (-a, a]
        std::int64_t two_a = 2 * f.a;
        std::int64_t k = (f.a - f.b) >= 0 ? (f.a - f.b) / two_a : -((f.b - f.a + two_a - 1) / two_a);
        // x -> x + k y: b' = b + 2ak, c' = a k^2 + b k + c
        if (k != 0) {
            f.c = f.a * k * k + f.b * k + f.c;
            f.b = f.b + two_a * k;
        }
        while (f.b <= -f.a) {
            f.c = f.a + f.b + f.c;
            f.b += two_a;
        }
        while (f.b > f.a) {
            f.c = f.a - f.b + f.c;
            f.b -= two_a;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

/// All reduced primitive positive definite forms of discriminant D < 0.
inline std::vector<Form> reduced_definite_forms(std::int64_t D)
{
    if (D >= 0 || (D % 4 != 0 && D % 4 != -3))
        fail("InvalidDiscriminant", "expected a negative discriminant = 0,1 mod 4");
    std::vector<Form> out;
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            std::int64_t c = num / (4 * a);
            if (c < a)
                continue;
            if (c == a && b < 0)
                continue;
            Form f{a, b, c};
            if (primitive(f))
                out.push_back(f);
        }
    }
    return out;
}

// Indefinite forms -----------------------------------------------------------

namespace detail {

/// Representative of r mod m (m > 0) in the window [lo, lo + m).
inline std::int64_t into_window(std::int64_t r, std::int64_t m, std::int64_t lo)
{
    std::int64_t k = r - lo;
    k %= m;
    if (k < 0)
        k += m;
    return lo + k;
}

} // namespace detail

/// sqrt(D) - 2|a| < b < sqrt(D) and |sqrt(D) - 2|a|| < b, i.e.
/// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
inline bool is_reduced_indefinite(const Form & f, std::int64_t D)
{
    std::int64_t s = isqrt(D);  // s < sqrt(D) < s + 1
    std::int64_t two_a = 2 * (f.a < 0 ? -f.a : f.a);
    return f.b > 0 && f.b <= s && two_a + f.b > s && two_a - f.b <= s;
}

/// Normalizing reduction step (c, b', a') with b' = -b mod 2c; maps reduced
/// forms to reduced forms and eventually reduces every form.
inline Form rho(const Form & f, std::int64_t D)
{
    if (f.c == 0)
        fail("InvalidForm", "rho needs c != 0");
    std::int64_t s = isqrt(D);
    std::int64_t two_c = 2 * (f.c < 0 ? -f.c : f.c);
    std::int64_t abs_c = two_c / 2;
    std::int64_t bp = 0;
    if (abs_c > s)  // |c| > sqrt(D): -|c| < b' <= |c|
        bp = detail::into_window(-f.b, two_c, -abs_c + 1);
    else  // sqrt(D) - 2|c| < b' < sqrt(D)
        bp = detail::into_window(-f.b, two_c, s - two_c + 1);
    __int128 num = static_cast<__int128>(bp) * bp - D;
    std::int64_t ap = static_cast<std::int64_t>(num / (4 * static_cast<__int128>(f.c)));
    return {f.c, bp, ap};
}

/// Reduced indefinite form properly equivalent to f.
inline Form reduce_indefinite(Form f, std::int64_t D)
{
    if (f.discriminant() != D || D <= 0)
        fail("InvalidForm", "form does not have the positive discriminant D");
    for (int guard = 0; !is_reduced_indefinite(f, D); ++guard) {
        if (guard > 10'000)
            fail("InternalError", "indefinite reduction did not terminate");
        if (f.c == 0)
            fail("InvalidForm", "D must not be a square");
        f = rho(f, D);
    }
    return f;
}

/// All reduced primitive indefinite forms of non-square discriminant D > 0.
inline std::vector<Form> reduced_indefinite_forms(std::int64_t D)
{
    if (D <= 0 || (D % 4 != 0 && D % 4 != 1))
        fail("InvalidDiscriminant", "expected a positive discriminant = 0,1 mod 4");
    std::int64_t s = isqrt(D);
    if (s * s == D)
        fail("InvalidDiscriminant", "square discriminant");
    std::vector<Form> out;
    for (std::int64_t b = (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
        std::int64_t N = (D - b * b) / 4;  // a * c = -N
        for (std::int64_t a = 1; a <= N; ++a) {
            if (N % a != 0)
                continue;
            for (std::int64_t sa : {a, -a}) {
                Form f{sa, b, -N / sa};
                if (is_reduced_indefinite(f, D) && primitive(f))
                    out.push_back(f);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The rho-cycles of reduced forms, each starting from its smallest member.
inline std::vector<std::vector<Form>> indefinite_cycles(std::int64_t D)
{
    auto forms = reduced_indefinite_forms(D);
    std::set<Form> unseen(forms.begin(), forms.end());
    std::vector<std::vector<Form>> cycles;
    for (const auto & start : forms) {
        if (!unseen.count(start))
            continue;
        std::vector<Form> cycle;
        Form f = start;
        do {
            if (!unseen.erase(f))
                fail("InternalError", "rho left the set of reduced forms");
            cycle.push_back(f);
            f = rho(f, D);
        } while (f != start);
        cycles.push_back(std::move(cycle));
    }
    return cycles;
}

/// Number of proper equivalence classes of primitive forms of discriminant D.
inline std::uint64_t form_class_number(std::int64_t D)
{
    if (D < 0)
        return reduced_definite_forms(D).size();
    return indefinite_cycles(D).size();
}

inline std::uint64_t narrow_class_number(std::int64_t d)
{
    require_fundamental_discriminant_input(d);
    return form_class_number(quadratic_discriminant(d));
}

/// Principal form x^2 + (D mod 2) xy + ... of discriminant D.
inline Form principal_form(std::int64_t D)
{
    std::int64_t b = D % 2 == 0 ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

/// True iff f is properly equivalent to the principal form.
inline bool is_principal_class(const Form & f)
{
    auto D128 = f.discriminant();
    auto D = static_cast<std::int64_t>(D128);
    if (D < 0)
        return reduce_definite(f) == reduce_definite(principal_form(D));
    Form g = reduce_indefinite(f, D);
    Form h = reduce_indefinite(principal_form(D), D);
    Form cur = h;
    do {
        if (cur == g)
            return true;
        cur = rho(cur, D);
    } while (cur != h);
    return false;
}

// ---------------------------------------------------------------------------
// Field elements and units

/// (a + b sqrt d) / (2 if halved else 1)
struct QuadraticNumber
{
    BigInt a = 0;
    BigInt b = 0;
    bool halved = false;

    std::string to_string() const
    {
        std::string s;
        if (b == 0)
            s = a.str();
        else {
            std::string bs = (b == 1 || b == -1) ? "" : BigInt(b < 0 ? BigInt(-b) : b).str() + "*";
            if (a != 0)
                s = a.str() + (b < 0 ? " - " : " + ") + bs + "sqrt(d)";
            else
                s = (b < 0 ? "-" : "") + bs + "sqrt(d)";
        }
        return halved ? "(" + s + ")/2" : s;
    }

    friend bool operator==(const QuadraticNumber &, const QuadraticNumber &) = default;
};

inline BigInt norm_numerator(const QuadraticNumber & x, std::int64_t d) { return x.a * x.a - BigInt(d) * x.b * x.b; }

/// Norm as an exact rational (integral for algebraic integers).
inline ExactRational norm(const QuadraticNumber & x, std::int64_t d)
{
    return ExactRational(norm_numerator(x, d)) / (x.halved ? 4 : 1);
}

/// 0 if a + s*b*sqrt(d) > 0, 1 if < 0, where s = +1 for the embedding
/// sqrt(d) -> +|sqrt(d)| and s = -1 for the other one.
inline unsigned sign_bit(const QuadraticNumber & x, std::int64_t d, int s)
{
    BigInt y = s > 0 ? x.b : BigInt(-x.b);
    const BigInt & a = x.a;
    if (a == 0 && y == 0)
        fail("ZeroElement", "sign of zero is undefined");
    if (a >= 0 && y >= 0)
        return 0;
    if (a <= 0 && y <= 0)
        return 1;
    BigInt lhs = a * a, rhs = BigInt(d) * y * y;
    if (a > 0)  // a > 0 > y
        return lhs > rhs ? 0 : 1;
    return rhs > lhs ? 0 : 1;  // y > 0 > a
}

struct FundamentalUnit
{
    QuadraticNumber unit;
    int norm = 1;
};

/// Smallest unit > 1 of the ring of integers of Q(sqrt d), d > 1, from the
/// continued fraction of omega = sqrt(d) or (1 + sqrt(d))/2: the first
/// convergent p/q with N(p - q omega) = +-1 gives eps = p - q * conj(omega).
inline FundamentalUnit fundamental_unit(std::int64_t d, std::size_t max_terms = 2'000'000)
{
    require_fundamental_discriminant_input(d);
    if (d <= 1)
        fail("InvalidDiscriminant", "fundamental_unit needs a real quadratic field, d > 1");
    const bool halved = reduce(d, 4) == 1;
    const BigInt D(d);
    const BigInt s = isqrt(D);
    // omega = (P + sqrt d) / Q
    BigInt P = halved ? 1 : 0, Q = halved ? 2 : 1;
    const BigInt trace = halved ? 1 : 0;                    // omega + conj(omega)
    const BigInt omega_norm = halved ? BigInt((1 - D) / 4) : BigInt(-D);  // omega * conj(omega)
    BigInt p_prev = 1, p_cur = 0, q_prev = 0, q_cur = 1;    // p_{k-1}, p_{k-2}, ...
    std::swap(p_prev, p_cur);                                // p_{-1} = 1, p_{-2} = 0
    p_prev = 0;
    p_cur = 1;
    q_prev = 1;
    q_cur = 0;
    for (std::size_t k = 0; k < max_terms; ++k) {
        BigInt a = (P + s) / Q;
        BigInt p_next = a * p_cur + p_prev;
        BigInt q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        p_cur = p_next;
        q_prev = q_cur;
        q_cur = q_next;
        BigInt n = p_cur * p_cur - p_cur * q_cur * trace + q_cur * q_cur * omega_norm;
        if (n == 1 || n == -1) {
            FundamentalUnit out;
            out.norm = n == 1 ? 1 : -1;
            if (halved) {
                out.unit = {2 * p_cur - q_cur, q_cur, true};
                if (out.unit.a % 2 == 0 && out.unit.b % 2 == 0)
                    out.unit = {out.unit.a / 2, out.unit.b / 2, false};
            } else {
                out.unit = {p_cur, q_cur, false};
            }
            return out;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
    fail("OutOfRange", "continued fraction period exceeds the term limit");
}

/// Ordinary class number: h = h+ for d < 0; for d > 0, h+ = h iff N(eps) = -1.
inline std::uint64_t class_number(std::int64_t d)
{
    auto h_plus = narrow_class_number(d);
    if (d < 0)
        return h_plus;
    return fundamental_unit(d).norm == -1 ? h_plus : h_plus / 2;
}

// ---------------------------------------------------------------------------
// Dyadic primes, 2-units and 2-regularity

enum class DyadicType { Ramified, Inert, Split };

inline std::string to_string(DyadicType t)
{
    switch (t) {
    case DyadicType::Ramified: return "ramified";
    case DyadicType::Inert: return "inert";
    case DyadicType::Split: return "split";
    }
    return "?";
}

inline DyadicType dyadic_type(std::int64_t d)
{
    switch (reduce(d, 8)) {
    case 1: return DyadicType::Split;
    case 5: return DyadicType::Inert;
    default: return DyadicType::Ramified;
    }
}

inline constexpr std::int64_t dyadic_search_bound = 10'000;

/// An integral element of norm +-2 with smallest positive b (then norm +2
/// first), or nothing within |a|, |b| <= dyadic_search_bound.
inline std::optional<QuadraticNumber> dyadic_generator(std::int64_t d)
{
    const bool halved = reduce(d, 4) == 1;
    const BigInt scale = halved ? 4 : 1;
    for (std::int64_t b = 1; b <= dyadic_search_bound; ++b) {
        for (int sgn : {1, -1}) {
            // a^2 - d b^2 = sgn * 2 * scale
            BigInt a2 = BigInt(d) * b * b + sgn * 2 * scale;
            BigInt a;
            if (!is_square(a2, a) || a > dyadic_search_bound)
                continue;
            if (halved && (a % 2) != (b % 2))
                continue;
            return QuadraticNumber{a, b, halved};
        }
    }
    return std::nullopt;
}

struct SignatureRow
{
    std::string label;
    QuadraticNumber element;
    std::array<unsigned, 2> signs{};
};

struct ReferenceClaim
{
    std::string source;
    std::vector<SignatureRow> rows;
    std::size_t rank = 0;
    unsigned computed_delta = 0;
    unsigned claimed_delta = 0;
    bool discrepancy = false;
};

struct TwoUnitSignatures
{
    bool supported = false;
    std::string reason;
    std::vector<SignatureRow> rows;  // generators of U'/U'^2 with sign vectors
    std::size_t rank = 0;
    unsigned delta = 0;  // corank of the signature map on U'/U'^2
    std::optional<ReferenceClaim> reference;
};

inline std::size_t signature_rank(const std::vector<SignatureRow> & rows)
{
    std::vector<std::vector<unsigned>> m;
    for (const auto & r : rows)
        m.push_back({r.signs[0], r.signs[1]});
    std::size_t rank = 0;
    // F_2 elimination on two columns
    for (std::size_t col = 0; col < 2; ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][col])
                for (std::size_t k = 0; k < 2; ++k)
                    m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

inline SignatureRow signature_row(std::string label, QuadraticNumber x, std::int64_t d)
{
    SignatureRow row{std::move(label), x, {}};
    row.signs = {sign_bit(x, d, +1), sign_bit(x, d, -1)};
    return row;
}

namespace detail {

struct PublishedSignatureClaim
{
    std::int64_t d;
    std::vector<std::pair<std::string, QuadraticNumber>> generators;
    unsigned claimed_delta;
    const char * source;
};

/// Published 2-unit generator sets with their stated signature cokernel rank.
inline const std::vector<PublishedSignatureClaim> & published_claims()
{
    static const std::vector<PublishedSignatureClaim> claims{
        {3,
         {{"-1", {-1, 0, false}}, {"2 - sqrt(3)", {2, -1, false}}, {"sqrt(3) - 1", {-1, 1, false}}},
         1,
         "published: 2-units of Q(sqrt 3) generated by -1, 2 - sqrt(3), sqrt(3) - 1 with cokernel Z/2"},
    };
    return claims;
}

} // namespace detail

inline TwoUnitSignatures two_unit_signatures(std::int64_t d)
{
    require_fundamental_discriminant_input(d);
    if (d <= 1)
        fail("InvalidDiscriminant", "two_unit_signatures needs d > 1");
    TwoUnitSignatures out;
    if (auto h = class_number(d); h > 1) {
        out.reason = "class number h = " + std::to_string(h) + " > 1";
        return out;
    }
    auto eps = fundamental_unit(d);
    out.rows.push_back(signature_row("-1", {-1, 0, false}, d));
    out.rows.push_back(signature_row("fundamental unit", eps.unit, d));
    switch (dyadic_type(d)) {
    case DyadicType::Inert:
        out.rows.push_back(signature_row("2", {2, 0, false}, d));
        break;
    case DyadicType::Ramified:
    case DyadicType::Split: {
        auto pi = dyadic_generator(d);
        if (!pi) {
            out.reason = "no element of norm +-2 with |a|, |b| <= " + std::to_string(dyadic_search_bound);
            out.rows.clear();
            return out;
        }
        out.rows.push_back(signature_row("dyadic generator", *pi, d));
        if (dyadic_type(d) == DyadicType::Split)
            out.rows.push_back(signature_row("conjugate dyadic generator", {pi->a, -pi->b, pi->halved}, d));
        break;
    }
    }
    out.supported = true;
    out.rank = signature_rank(out.rows);
    out.delta = static_cast<unsigned>(2 - out.rank);
    for (const auto & claim : detail::published_claims()) {
        if (claim.d != d)
            continue;
        ReferenceClaim ref;
        ref.source = claim.source;
        for (const auto & [label, x] : claim.generators)
            ref.rows.push_back(signature_row(label, x, d));
        ref.rank = signature_rank(ref.rows);
        ref.computed_delta = static_cast<unsigned>(2 - ref.rank);
        ref.claimed_delta = claim.claimed_delta;
        ref.discrepancy = ref.computed_delta != ref.claimed_delta;
        out.reference = std::move(ref);
    }
    return out;
}

/// Form of discriminant D representing the dyadic prime when 2 ramifies.
inline Form dyadic_form(std::int64_t D)
{
    if (reduce(D, 4) != 0)
        fail("InvalidDiscriminant", "2 does not ramify for this discriminant");
    std::int64_t b = reduce(D, 8) == 0 ? 0 : 2;
    return {2, b, (b * b - D) / 8};
}

/// One dyadic prime and trivial 2-part of the narrow class group of the
/// 2-integers, i.e. the narrow form class group modulo the dyadic class has
/// odd order.
inline bool is_2_regular(std::int64_t d)
{
    require_fundamental_discriminant_input(d);
    const auto type = dyadic_type(d);
    if (type == DyadicType::Split)
        return false;
    const auto D = quadratic_discriminant(d);
    const auto h_plus = form_class_number(D);
    if (h_plus % 2 == 1)
        return true;
    if (type == DyadicType::Inert || h_plus % 4 == 0)
        return false;
    // 2-Sylow is Z/2; it dies in the quotient iff the dyadic class is nontrivial.
    return !is_principal_class(dyadic_form(D));
}

// ---------------------------------------------------------------------------

struct QuadFieldData
{
    std::int64_t d = 0;
    std::int64_t disc = 0;
    DyadicType dyadic = DyadicType::Ramified;
    std::uint64_t h_plus = 1;
    std::uint64_t h = 1;
    std::optional<FundamentalUnit> fundamental_unit;  // d > 0 only
    std::optional<TwoUnitSignatures> two_units;       // d > 0 only
    bool two_regular = false;
};

inline QuadFieldData quad_field_data(std::int64_t d)
{
    QuadFieldData q;
    q.d = d;
    q.disc = (require_fundamental_discriminant_input(d), quadratic_discriminant(d));
    q.dyadic = dyadic_type(d);
    q.h_plus = narrow_class_number(d);
    q.h = class_number(d);
    if (d > 1) {
        q.fundamental_unit = fundamental_unit(d);
        q.two_units = two_unit_signatures(d);
    }
    q.two_regular = is_2_regular(d);
    return q;
}

} // namespace ktame
