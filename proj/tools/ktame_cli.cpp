// ktame: command-line front end. Parses flags, calls one library operation
// (or a documented pair of them) and prints the report.
//
// Exit status: 0 success, 1 domain error (JSON payload with the error name),
// 2 usage error.

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "ktame/serialize.hpp"

namespace {

using ktame::Json;

enum class Format { Json, Csv, Text };

// Flattening for csv/text: nested keys joined with '.', scalar lists joined with ';'.
void flatten(const Json & j, const std::string & prefix, std::vector<std::pair<std::string, std::string>> & out)
{
    auto scalar = [](const Json & v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json & v) { return v.is_primitive(); });
        if (flat) {
            std::string s;
            for (const auto & v : j)
                s += (s.empty() ? "" : ";") + scalar(v);
            out.emplace_back(prefix, s);
            return;
        }
        for (std::size_t k = 0; k < j.size(); ++k)
            flatten(j[k], prefix + "." + std::to_string(k), out);
        return;
    }
    out.emplace_back(prefix, scalar(j));
}

std::string csv_cell(const std::string & s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

/// `rows` is either a single report or, for table-valued commands, an array of them.
void emit(const Json & report, Format format, bool table)
{
    if (format == Format::Json) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::vector<Json> rows = table ? std::vector<Json>(report.begin(), report.end()) : std::vector<Json>{report};
    std::vector<std::vector<std::pair<std::string, std::string>>> flat;
    for (const auto & r : rows) {
        flat.emplace_back();
        flatten(r, "", flat.back());
    }
    if (format == Format::Text) {
        for (std::size_t k = 0; k < flat.size(); ++k) {
            if (k)
                std::cout << "\n";
            for (const auto & [key, value] : flat[k])
                std::cout << key << ": " << value << "\n";
        }
        return;
    }
    std::vector<std::string> columns;
    std::set<std::string> known;
    for (const auto & row : flat)
        for (const auto & kv : row)
            if (known.insert(kv.first).second)
                columns.push_back(kv.first);
    for (std::size_t c = 0; c < columns.size(); ++c)
        std::cout << (c ? "," : "") << csv_cell(columns[c]);
    std::cout << "\n";
    for (const auto & row : flat) {
        std::map<std::string, std::string> cells(row.begin(), row.end());
        for (std::size_t c = 0; c < columns.size(); ++c)
            std::cout << (c ? "," : "") << csv_cell(cells.count(columns[c]) ? cells[columns[c]] : "");
        std::cout << "\n";
    }
}

struct ExtFlags
{
    std::uint64_t p = 2;
    std::vector<std::uint64_t> tame;
    bool wild = false;
    bool infinity = false;

    ktame::CyclicExtensionOfQ ext() const
    {
        ktame::CyclicExtensionOfQ e;
        e.p = p;
        e.tame_ramified = {tame.begin(), tame.end()};
        e.wild_ramified = wild;
        e.infinity_ramified = infinity;
        return e;
    }
};

void add_ext_flags(CLI::App * cmd, ExtFlags & f)
{
    cmd->add_option("--p", f.p, "degree p of the cyclic extension")->required();
    cmd->add_option("--tame", f.tame, "tamely ramified primes, comma separated")->delimiter(',');
    cmd->add_flag("--wild", f.wild, "p ramifies");
    cmd->add_flag("--infinity", f.infinity, "the real place ramifies (p = 2)");
}

struct ShapeFlags
{
    bool imaginary = false;
    bool real = false;
    bool cyclic = false;
    bool no_wild = false;
};

void add_shape_flags(CLI::App * cmd, ShapeFlags & f)
{
    auto imag = cmd->add_flag("--imaginary", f.imaginary, "totally imaginary (p = 2)");
    auto real = cmd->add_flag("--real", f.real, "totally real (p = 2)");
    imag->excludes(real);
    cmd->add_flag("--cyclic", f.cyclic, "Galois group is cyclic (p = 2, real)");
    cmd->add_flag("--no-wild", f.no_wild, "p does not ramify (default: p ramifies)");
}

ktame::ExtensionShape make_shape(std::uint64_t p, const std::vector<std::uint64_t> & tame, const ShapeFlags & f)
{
    ktame::ExtensionShape s;
    s.p = p;
    s.ramified_tame = {tame.begin(), tame.end()};
    s.wild = !f.no_wild;
    if (p != 2) {
        s.real_type = ktame::RealType::NotApplicable;
        s.cyclic = true;
    } else {
        if (!f.imaginary && !f.real)
            throw CLI::ValidationError("--imaginary/--real", "p = 2 needs --imaginary or --real");
        s.real_type = f.real ? ktame::RealType::TotallyReal : ktame::RealType::TotallyImaginary;
        s.cyclic = f.imaginary || f.cyclic;
    }
    return s;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Genus formulas, descent bounds and vanishing criteria for tame kernels of cyclic extensions of Q"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format_name = "json";
    app.add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    Json report;
    bool table = false;
    std::function<void()> run;

    // local
    ExtFlags local_ext;
    std::uint64_t local_ell = 0;
    unsigned local_i = 2;
    auto local = app.add_subcommand("local", "local invariants e, f, e', e_i at one ramified prime");
    add_ext_flags(local, local_ext);
    local->add_option("--ell", local_ell, "ramified prime")->required();
    local->add_option("--i", local_i, "twist")->required();
    local->callback([&] { run = [&] { report = ktame::local_invariants(local_ext.ext(), local_ell, local_i); }; });

    // tate-oracle
    ktame::TateModule module;
    auto tate = app.add_subcommand("tate-oracle", "Tate cohomology orders of Z/m with a cyclic action by brute force");
    tate->add_option("--m", module.m, "module order")->required();
    tate->add_option("--n", module.n, "group order")->required();
    tate->add_option("--u", module.u, "generator acts by multiplication by u")->required();
    tate->callback([&] {
        run = [&] { report = {{"module", module}, {"orders", ktame::tate_orders(module)}}; };
    });

    // primitive
    std::uint64_t prim_p = 2;
    unsigned prim_i = 2;
    bool prim_plus = false;
    std::vector<std::uint64_t> prim_primes;
    auto primitive = app.add_subcommand("primitive", "Frobenius vectors and primitivity rank for a Kummer radical");
    primitive->add_option("--p", prim_p)->required();
    primitive->add_option("--i", prim_i)->required();
    primitive->add_flag("--plus", prim_plus, "use the totally positive radical");
    primitive->add_option("--primes", prim_primes)->delimiter(',')->required();
    primitive->callback([&] {
        run = [&] {
            auto rad = ktame::radical(prim_p, prim_i, prim_plus);
            report = {{"radical", rad},
                      {"result", ktame::primitivity_rank(rad, {prim_primes.begin(), prim_primes.end()})}};
        };
    });

    // genus / kgenus / bounds
    ExtFlags genus_ext, kgenus_ext, bounds_ext;
    unsigned genus_i = 2, kgenus_i = 2, bounds_i = 2;
    bool genus_hi = false, kgenus_hi = false, bounds_hi = false, bounds_vandiver = false;
    auto genus = app.add_subcommand("genus", "motivic genus exponent log_p |H^2_M(o_L,Z(i))_G| / |H^2_M(Z,Z(i))|");
    add_ext_flags(genus, genus_ext);
    genus->add_option("--i", genus_i)->required();
    genus->add_flag("--assume-hi", genus_hi, "assume hypothesis (H_i)");
    genus->callback([&] {
        run = [&] { report = ktame::genus_exponent(genus_ext.ext(), genus_i, {genus_hi}); };
    });
    auto kgenus = app.add_subcommand("kgenus", "genus exponent for K_{2i-2}");
    add_ext_flags(kgenus, kgenus_ext);
    kgenus->add_option("--i", kgenus_i)->required();
    kgenus->add_flag("--assume-hi", kgenus_hi, "assume hypothesis (H_i)");
    kgenus->callback([&] {
        run = [&] { report = ktame::k_genus_ratio(kgenus_ext.ext(), kgenus_i, {kgenus_hi}); };
    });
    auto bounds = app.add_subcommand("bounds", "lower bounds for ker/coker of the descent map, and the exact structure");
    add_ext_flags(bounds, bounds_ext);
    bounds->add_option("--i", bounds_i)->required();
    bounds->add_flag("--assume-hi", bounds_hi, "accepted for symmetry; the bounds do not use (H_i)");
    bounds->add_flag("--assume-vandiver", bounds_vandiver, "assume Vandiver's conjecture for the exact structure");
    bounds->callback([&] {
        run = [&] {
            auto ext = bounds_ext.ext();
            report = {{"bounds", ktame::descent_bounds(ext, bounds_i)},
                      {"exact", ktame::exact_descent_structure(ext, bounds_i, bounds_vandiver)}};
        };
    });

    // classify
    std::uint64_t cls_p = 2;
    unsigned cls_i = 2;
    std::vector<std::uint64_t> cls_tame;
    bool cls_vandiver = false;
    ShapeFlags cls_shape;
    auto classify = app.add_subcommand("classify", "decide vanishing of H^2(o_L[1/p], Z_p(i))");
    classify->add_option("--p", cls_p)->required();
    classify->add_option("--i", cls_i)->required();
    classify->add_option("--tame", cls_tame)->delimiter(',');
    classify->add_flag("--assume-vandiver", cls_vandiver);
    add_shape_flags(classify, cls_shape);
    classify->callback([&] {
        run = [&] {
            auto shape = make_shape(cls_p, cls_tame, cls_shape);
            report = {{"shape", shape}, {"i", cls_i}, {"decision", ktame::vanishing_decision(shape, cls_i, cls_vandiver)}};
            if (cls_p == 2)
                report["positive_decision"] = ktame::positive_vanishing_decision(shape, cls_i);
        };
    });

    // enumerate
    std::uint64_t en_p = 2, en_bound = 2;
    unsigned en_i = 2;
    ShapeFlags en_shape;
    auto enumerate = app.add_subcommand("enumerate", "tame sets below a bound with vanishing H^2");
    enumerate->add_option("--p", en_p)->required();
    enumerate->add_option("--i", en_i)->required();
    enumerate->add_option("--bound", en_bound)->required();
    add_shape_flags(enumerate, en_shape);
    enumerate->callback([&] {
        run = [&] {
            report = ktame::enumerate_vanishing(en_p, en_i, make_shape(en_p, {}, en_shape), en_bound);
            table = true;
        };
    });

    // quad
    std::int64_t quad_d = 0;
    auto quad = app.add_subcommand("quad", "class numbers, fundamental unit, 2-unit signatures of Q(sqrt d)");
    quad->add_option("--d", quad_d, "squarefree d")->required()->allow_extra_args(false);
    quad->callback([&] { run = [&] { report = ktame::quad_field_data(quad_d); }; });

    // ktable
    unsigned kt_max = 2;
    bool kt_vandiver = false;
    auto ktable = app.add_subcommand("ktable", "orders of H^2_M(Z,Z(i)) and K_{2i-2}(Z) for 2 <= i <= max");
    ktable->add_option("--max-i", kt_max)->required()->check(CLI::Range(2u, 400u));
    ktable->add_flag("--assume-vandiver", kt_vandiver);
    ktable->callback([&] {
        run = [&] {
            report = Json::array();
            for (unsigned i = 2; i <= kt_max; ++i)
                report.push_back(ktame::h2_order_Z(i, kt_vandiver));
            table = true;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const Format format = format_name == "csv" ? Format::Csv : format_name == "text" ? Format::Text : Format::Json;

    try {
        run();
    } catch (const CLI::Error & e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ktame::Error & e) {
        std::cout << ktame::error_json(e).dump(2) << "\n";
        return 1;
    }
    emit(report, format, table);
    return 0;
}
