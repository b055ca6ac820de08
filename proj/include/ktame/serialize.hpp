#pragma once

// JSON encodings of the library's reports. nlohmann::json keeps object keys
// sorted, so dumps are deterministic. Arbitrary-precision values are strings.

#include <json.hpp>

#include "ktame/ktame.hpp"

namespace ktame {

using Json = nlohmann::json;

inline Json big(const BigInt & n) { return n.str(); }

inline void to_json(Json & j, const FactoredInteger & f)
{
    Json factors = Json::array();
    for (const auto & pp : f.factors)
        factors.push_back({{"prime", big(pp.prime)}, {"exponent", pp.exponent}});
    j = {{"value", big(f.value())}, {"factors", factors}, {"text", f.to_string()}};
    if (!f.complete())
        j["unfactored_cofactor"] = big(f.cofactor);
}

inline Json assumptions_json(const std::set<Assumption> & as)
{
    Json out = Json::array();
    for (auto a : as)
        out.push_back(to_string(a));
    return out;
}

inline void to_json(Json & j, const CyclicExtensionOfQ & e)
{
    j = {{"p", e.p},
         {"tame_ramified", e.tame_ramified},
         {"wild_ramified", e.wild_ramified},
         {"infinity_ramified", e.infinity_ramified}};
}

inline void to_json(Json & j, const LocalData & d)
{
    j = {{"ell", d.ell}, {"q", d.q}, {"e", d.e}, {"f", d.f}, {"e_prime", d.e_prime}, {"e_i", d.e_i}};
}

inline void to_json(Json & j, const TateModule & m) { j = {{"m", m.m}, {"n", m.n}, {"u", m.u}}; }

inline void to_json(Json & j, const TateOrders & o) { j = {{"h0", o.h0}, {"hm1", o.hm1}}; }

inline void to_json(Json & j, const KummerRadical & rad)
{
    Json gens = Json::array();
    for (const auto & g : rad.generators)
        gens.push_back(g.name());
    j = {{"p", rad.p},
         {"i", rad.i},
         {"generators", gens},
         {"plus_variant", rad.plus_variant},
         {"conditional_on_vandiver", rad.conditional_on_vandiver}};
}

inline void to_json(Json & j, const FrobeniusVector & v) { j = {{"ell", v.ell}, {"components", v.components}}; }

inline void to_json(Json & j, const PrimitivityResult & r)
{
    j = {{"t", r.t}, {"independent", r.independent}, {"maximal_subset", r.maximal_subset}, {"vectors", r.vectors}};
}

inline void to_json(Json & j, const GenusReport & g)
{
    Json per = Json::object();
    for (const auto & [ell, c] : g.per_prime)
        per[std::to_string(ell)] = {{"e_i", c.e_i}, {"e_prime", c.e_prime}};
    j = {{"extension", g.ext},
         {"i", g.i},
         {"per_prime", per},
         {"t", g.t},
         {"r", g.r},
         {"s_i", g.s_i},
         {"delta_variant_used", g.delta_variant_used},
         {"exponent_low", g.exponent_low},
         {"exponent_high", g.exponent_high},
         {"exact", g.exact()},
         {"norm_index", big(g.norm_index)},
         {"assumptions", assumptions_json(g.assumptions)},
         {"primitive_subset", g.primitive_subset},
         {"formula", g.formula}};
    if (g.exact())
        j["exponent"] = g.exponent_low;
}

inline void to_json(Json & j, const AbelianGroupStructure & s)
{
    Json orders = Json::array();
    for (const auto & n : s.cyclic_orders)
        orders.push_back(big(n));
    j = {{"cyclic_orders", orders}, {"text", s.to_string()}};
}

inline void to_json(Json & j, const DescentBounds & b)
{
    j = {{"coker_product", big(b.coker_product)},
         {"coker_two_exponent", b.coker_two_exponent},
         {"ker_product", big(b.ker_product)},
         {"ker_two_exponent", b.ker_two_exponent},
         {"coker_lower", b.coker_lower},
         {"ker_lower", b.ker_lower},
         {"T_used", b.T_used},
         {"assumptions", assumptions_json(b.assumptions)}};
}

inline void to_json(Json & j, const ExactDescent & d)
{
    j = {{"applicable", d.applicable}, {"reason", d.reason}, {"assumptions", assumptions_json(d.assumptions)}};
    if (d.applicable)
        j["structure"] = d.structure;
}

inline void to_json(Json & j, const ExtensionShape & s)
{
    j = {{"p", s.p},
         {"ramified_tame", s.ramified_tame},
         {"wild", s.wild},
         {"real_type", to_string(s.real_type)},
         {"cyclic", s.cyclic}};
}

inline void to_json(Json & j, const Decision & d)
{
    j = {{"verdict", to_string(d.verdict)}, {"reason", d.reason}, {"assumed", assumptions_json(d.assumed)}};
    if (d.condition)
        j["condition"] = to_string(*d.condition);
    if (d.verdict_if_assumed)
        j["verdict_if_assumed"] = to_string(*d.verdict_if_assumed);
    if (d.k_theory_consequence)
        j["k_theory_consequence"] = *d.k_theory_consequence;
}

inline void to_json(Json & j, const EnumeratedSet & e) { j = {{"tame", e.tame}, {"decision", e.decision}}; }

inline void to_json(Json & j, const QuadraticNumber & x)
{
    j = {{"a", big(x.a)}, {"b", big(x.b)}, {"halved", x.halved}, {"text", x.to_string()}};
}

inline void to_json(Json & j, const SignatureRow & r)
{
    j = {{"label", r.label}, {"element", r.element}, {"signs", r.signs}};
}

inline void to_json(Json & j, const ReferenceClaim & c)
{
    j = {{"source", c.source},
         {"rows", c.rows},
         {"rank", c.rank},
         {"computed_delta", c.computed_delta},
         {"claimed_delta", c.claimed_delta},
         {"discrepancy", c.discrepancy}};
}

inline void to_json(Json & j, const TwoUnitSignatures & s)
{
    j = {{"supported", s.supported}};
    if (!s.supported) {
        j["reason"] = s.reason;
        return;
    }
    Json matrix = Json::array();
    for (const auto & r : s.rows)
        matrix.push_back(r.signs);
    j["generators"] = s.rows;
    j["signature_matrix"] = matrix;
    j["rank"] = s.rank;
    j["delta"] = s.delta;
    if (s.reference)
        j["reference_claim"] = *s.reference;
}

inline void to_json(Json & j, const QuadFieldData & q)
{
    j = {{"d", q.d},
         {"disc", q.disc},
         {"dyadic_type", to_string(q.dyadic)},
         {"h_plus", q.h_plus},
         {"h", q.h},
         {"two_regular", q.two_regular}};
    if (q.fundamental_unit) {
        j["fundamental_unit"] = q.fundamental_unit->unit;
        j["unit_norm"] = q.fundamental_unit->norm;
    }
    if (q.two_units) {
        j["two_units"] = *q.two_units;
        if (q.two_units->supported) {
            Json gens = Json::array(), matrix = Json::array();
            for (const auto & r : q.two_units->rows) {
                gens.push_back(r.element);
                matrix.push_back(r.signs);
            }
            j["two_unit_generators"] = gens;
            j["signature_matrix"] = matrix;
            j["delta"] = q.two_units->delta;
        }
    }
}

inline void to_json(Json & j, const BaseOrder & b)
{
    j = {{"i", b.i},
         {"h2_order", b.h2_order},
         {"k_order", b.k_order},
         {"conditional_on_vandiver", b.conditional_on_vandiver},
         {"vandiver_assumed", b.vandiver_assumed}};
}

inline Json error_json(const Error & e) { return {{"error", e.name()}, {"message", e.what()}}; }

} // namespace ktame
