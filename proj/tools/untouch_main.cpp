#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "untouch/untouch.hpp"

// Command-line front end. Standard output carries JSON only; logs and
// timings go to standard error. Output bytes are stable for fixed inputs.

namespace {

using namespace untouch;

struct FieldOpts {
    uint32_t q = 0;
    uint32_t p = 0;
    uint32_t k = 0;
};

void add_field_options(CLI::App* cmd, FieldOpts& o) {
    cmd->add_option("--q", o.q, "field order, a prime power");
    cmd->add_option("--p", o.p, "field characteristic (alternative to --q)");
    cmd->add_option("--k", o.k, "extension degree, default 1");
}

Field resolve_field(const FieldOpts& o) {
    if (o.q != 0 && (o.p != 0 || o.k != 0))
        throw std::invalid_argument("give either --q or --p/--k, not both");
    if (o.q != 0) {
        auto [p, k] = factor_prime_power(o.q);
        return Field::make(p, k);
    }
    if (o.p != 0) return Field::make(o.p, o.k == 0 ? 1 : o.k);
    throw std::invalid_argument("a field is required: pass --q or --p/--k");
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

// smallest a outside {0,1} whose cube is not 1
uint32_t default_multiplier(const Field& f) {
    for (uint32_t a = 2; a < f.q(); ++a)
        if (f.pow(a, 3) != f.one().enc()) return a;
    throw std::invalid_argument("no admissible parameter at this order");
}

// smallest primitive cube root of unity, or 2 so the family can explain
// its own admissibility error
uint32_t default_cube_root(const Field& f) {
    for (uint32_t r : f.cube_roots_of_unity())
        if (r != f.one().enc()) return r;
    return 2;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

int cmd_construct(const FieldOpts& fo, const std::string& family,
                  std::optional<uint32_t> a, std::optional<uint32_t> b) {
    Timer timer;
    Field f = resolve_field(fo);
    Plane pl(f);
    ConstructionResult r = [&] {
        // any a outside {0,1} gives a nondegenerate pencil-1 conic
        if (family == family_name(Family::hyperconic))
            return hyperconic(pl, pencil_conic(pl, Pencil::P1, a ? *a : 2));
        if (family == family_name(Family::even_2q_minus_1))
            return even_2q_minus_1(pl, a ? *a : default_multiplier(f));
        if (family == family_name(Family::even_2q_minus_2))
            return even_2q_minus_2(pl, a ? *a : default_cube_root(f));
        if (family == family_name(Family::even_2q_plus_1))
            return even_2q_plus_1(pl, a ? *a : 1, b ? *b : 2);
        if (family == family_name(Family::odd_2q_plus_1))
            return odd_2q_plus_1(pl, b ? *b : find_odd_parameter(f));
        throw std::invalid_argument("unknown family: " + family);
    }();
    std::cout << dump_json(to_json(r));
    std::fprintf(stderr, "[untouch] construct %s q=%u size=%zu (%.3fs)\n",
                 family.c_str(), f.q(), r.set.size(), timer.seconds());
    return 0;
}

int cmd_verify(const std::string& in_path, bool expect_untouchable) {
    Timer timer;
    PointSet s = point_set_from_json(read_json_file(in_path));
    SpectrumReport sp = spectrum(s);
    bool untouchable = is_untouchable(s);
    nlohmann::json out;
    out["spectrum"] = to_json(sp);
    out["untouchable"] = untouchable;
    out["even_type"] = is_even_type(s);
    std::cout << dump_json(out);
    std::fprintf(stderr, "[untouch] verify q=%u size=%zu (%.3fs)\n",
                 s.plane().q(), s.size(), timer.seconds());
    return expect_untouchable && !untouchable ? 1 : 0;
}

int cmd_spectrum(const std::string& in_path) {
    Timer timer;
    PointSet s = point_set_from_json(read_json_file(in_path));
    SpectrumReport sp = spectrum(s);
    nlohmann::json out;
    out["lines"] = sp.total_lines;
    out["size"] = s.size();
    out["spectrum"] = to_json(sp);
    std::cout << dump_json(out);
    std::fprintf(stderr, "[untouch] spectrum q=%u size=%zu (%.3fs)\n",
                 s.plane().q(), s.size(), timer.seconds());
    return 0;
}

int cmd_search(const FieldOpts& fo, uint32_t size, uint64_t max_nodes,
               double max_seconds, const std::string& witness_path,
               bool report_conic) {
    Timer timer;
    Field f = resolve_field(fo);
    Plane pl(f);
    SearchBudget budget;
    if (max_nodes != 0) budget.max_nodes = max_nodes;
    if (max_seconds > 0) budget.max_seconds = max_seconds;
    SearchOutcome o = exhaustive_exists(pl, size, budget);

    nlohmann::json out;
    out["q"] = f.q();
    out["size"] = size;
    out["nodes"] = o.nodes_explored;
    out["status"] = o.status == SearchStatus::exists ? "exists"
                    : o.status == SearchStatus::not_exists
                        ? "not-exists"
                        : "inconclusive";
    if (o.witness) {
        out["witness"] = to_json(*o.witness);
        if (report_conic) {
            std::optional<Quadratic> conic = set_contains_conic(*o.witness);
            out["witness_contains_conic"] = conic.has_value();
            if (conic) out["conic"] = to_json(*conic);
        }
        if (!witness_path.empty())
            write_text_file(witness_path, dump_json(to_json(*o.witness)));
    }
    std::cout << dump_json(out);
    std::fprintf(stderr,
                 "[untouch] search q=%u size=%u %s nodes=%llu (%.3fs)\n",
                 f.q(), size, out["status"].get<std::string>().c_str(),
                 static_cast<unsigned long long>(o.nodes_explored),
                 timer.seconds());
    switch (o.status) {
        case SearchStatus::exists: return 0;
        case SearchStatus::not_exists: return 3;
        case SearchStatus::inconclusive: return 4;
    }
    return 1;
}

int cmd_census(const FieldOpts& fo) {
    Timer timer;
    Field f = resolve_field(fo);
    Plane pl(f);
    const uint32_t q = f.q();

    auto entry = [](const ConstructionResult& r) {
        nlohmann::json e;
        e["params"] = r.params;
        e["size"] = r.set.size();
        e["pass"] = check_construction(r).pass();
        return e;
    };

    nlohmann::json families = nlohmann::json::array();
    auto family_block = [&](Family fam, auto&& fill) {
        nlohmann::json block;
        block["family"] = family_name(fam);
        block["entries"] = nlohmann::json::array();
        fill(block["entries"]);
        families.push_back(std::move(block));
    };

    if (q % 2 == 0) {
        family_block(Family::hyperconic, [&](nlohmann::json& es) {
            for (uint32_t a = 2; a < q; ++a)
                es.push_back(entry(hyperconic(pl, pencil_conic(pl, Pencil::P1, a))));
        });
        // the three theorem families need q >= 8 on top of their own
        // parameter conditions; below that the entry lists stay empty
        family_block(Family::even_2q_minus_1, [&](nlohmann::json& es) {
            if (q < 8) return;
            for (uint32_t a = 2; a < q; ++a)
                if (f.pow(a, 3) != f.one().enc())
                    es.push_back(entry(even_2q_minus_1(pl, a)));
        });
        family_block(Family::even_2q_minus_2, [&](nlohmann::json& es) {
            if (q < 8) return;
            for (uint32_t r : f.cube_roots_of_unity())
                if (r != f.one().enc())
                    es.push_back(entry(even_2q_minus_2(pl, r)));
        });
        family_block(Family::even_2q_plus_1, [&](nlohmann::json& es) {
            if (q < 8) return;
            for (uint32_t a = 1; a < q; ++a)
                for (uint32_t b = 1; b < q; ++b)
                    if (a != b) es.push_back(entry(even_2q_plus_1(pl, a, b)));
        });
    } else {
        family_block(Family::odd_2q_plus_1, [&](nlohmann::json& es) {
            if (q % 4 != 3 || q < 7) return;  // family hypothesis fails
            for (uint32_t b = 2; b < q; ++b)
                if (!f.is_square(b) && !f.is_square(f.sub(b, f.one().enc())))
                    es.push_back(entry(odd_2q_plus_1(pl, b)));
        });
    }

    nlohmann::json out;
    out["q"] = q;
    out["families"] = std::move(families);
    std::cout << dump_json(out);
    std::fprintf(stderr, "[untouch] census q=%u (%.3fs)\n", q, timer.seconds());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"untouchable point sets in small projective planes"};
    app.require_subcommand(1);

    FieldOpts construct_field;
    std::string family;
    uint32_t a_val = 0, b_val = 0;
    CLI::App* construct =
        app.add_subcommand("construct", "build a named family and self-check it");
    add_field_options(construct, construct_field);
    construct->add_option("--family", family, "family name")->required();
    CLI::Option* a_opt =
        construct->add_option("--a", a_val, "first parameter, family specific");
    CLI::Option* b_opt =
        construct->add_option("--b", b_val, "second parameter, family specific");

    std::string verify_in;
    bool expect_untouchable = false;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "recompute the line spectrum of a stored set");
    verify_cmd->add_option("--in", verify_in, "point set JSON file")->required();
    verify_cmd->add_flag("--expect-untouchable", expect_untouchable,
                         "exit nonzero unless the set is untouchable");

    std::string spectrum_in;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "print the line spectrum of a stored set");
    spectrum_cmd->add_option("--in", spectrum_in, "point set JSON file")
        ->required();

    FieldOpts search_field;
    uint32_t search_size = 0;
    uint64_t max_nodes = 0;
    double max_seconds = 0;
    std::string witness_path;
    bool report_conic = false;
    CLI::App* search_cmd = app.add_subcommand(
        "search", "exhaustive search for an untouchable set of a given size");
    add_field_options(search_cmd, search_field);
    search_cmd->add_option("--size", search_size, "target set size")->required();
    search_cmd->add_option("--max-nodes", max_nodes, "node budget, default 1e9");
    search_cmd->add_option("--max-seconds", max_seconds,
                           "time budget, default 600");
    search_cmd->add_option("--emit-witness", witness_path,
                           "write any witness to this file");
    search_cmd->add_flag("--report-conic", report_conic,
                         "report whether a witness contains a conic");

    FieldOpts census_field;
    CLI::App* census_cmd = app.add_subcommand(
        "census", "run every family at one order over all valid parameters");
    add_field_options(census_cmd, census_field);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (construct->parsed()) {
            std::optional<uint32_t> a, b;
            if (a_opt->count() > 0) a = a_val;
            if (b_opt->count() > 0) b = b_val;
            return cmd_construct(construct_field, family, a, b);
        }
        if (verify_cmd->parsed()) return cmd_verify(verify_in, expect_untouchable);
        if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_in);
        if (search_cmd->parsed())
            return cmd_search(search_field, search_size, max_nodes, max_seconds,
                              witness_path, report_conic);
        if (census_cmd->parsed()) return cmd_census(census_field);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 2;
}
