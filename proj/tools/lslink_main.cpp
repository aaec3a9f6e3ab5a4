// Command-line front end: parse link inputs, run the H-function pipeline and
// emit tables, classifications, HFL^- groups, oracle reports and
// quasi-positivity verdicts.
//
// Exit codes: 0 success, 2 schema violation, 3 input inconsistent with an
// L-space link, 4 box too small / not stabilized.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lslink/catalog.hpp"
#include "lslink/classify.hpp"
#include "lslink/cone.hpp"
#include "lslink/h_solver.hpp"
#include "lslink/hfl.hpp"
#include "lslink/json_io.hpp"

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBox = 4;

struct Options {
    std::string input;
    std::string box;
    std::string format = "ascii";
    std::string sign = "auto";
    int margin = 2;
};

lslink::SolveOptions solve_options(const Options& o) {
    lslink::SolveOptions opts;
    opts.margin = o.margin;
    if (o.sign == "auto") opts.sign = lslink::SignPolicy::Auto;
    else if (o.sign == "plus") opts.sign = lslink::SignPolicy::Plus;
    else if (o.sign == "minus") opts.sign = lslink::SignPolicy::Minus;
    else throw lslink::SchemaError("unknown sign policy: " + o.sign);
    return opts;
}

std::optional<lslink::Box> parse_box(const std::string& text, int n) {
    if (text.empty()) return std::nullopt;
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw lslink::SchemaError("box syntax is lo1,..,lon:hi1,..,hin (doubled integers)");
    auto parse_side = [&](const std::string& side) {
        std::vector<std::int64_t> vals;
        std::stringstream ss(side);
        std::string tok;
        while (std::getline(ss, tok, ','))
            try {
                vals.push_back(std::stoll(tok));
            } catch (...) {
                throw lslink::SchemaError("box coordinates must be integers (doubled)");
            }
        if (static_cast<int>(vals.size()) != n)
            throw lslink::SchemaError("box needs one coordinate per component");
        return vals;
    };
    auto lo = parse_side(text.substr(0, colon));
    auto hi = parse_side(text.substr(colon + 1));
    return lslink::Box(lslink::LatticePoint::from_doubled(lo),
                       lslink::LatticePoint::from_doubled(hi));
}

/// Loads a LinkInput from "catalog:NAME" or a JSON file path.
lslink::LinkInput load_link(const std::string& source) {
    if (source.rfind("catalog:", 0) == 0) {
        lslink::CatalogEntry e = lslink::get(source.substr(8));
        if (!e.link)
            throw lslink::SchemaError("catalog entry " + e.name + " has no link payload");
        return *e.link;
    }
    std::ifstream f(source);
    if (!f) throw lslink::SchemaError("cannot open input file: " + source);
    std::stringstream ss;
    ss << f.rdbuf();
    return lslink::parse_link_input(ss.str());
}

lslink::QPInput load_qp(const std::string& source) {
    if (source.rfind("catalog:", 0) == 0) {
        lslink::CatalogEntry e = lslink::get(source.substr(8));
        if (!e.qp) throw lslink::SchemaError("catalog entry " + e.name + " has no qp payload");
        return *e.qp;
    }
    std::ifstream f(source);
    if (!f) throw lslink::SchemaError("cannot open input file: " + source);
    lslink::json j;
    try {
        j = lslink::json::parse(f);
    } catch (const std::exception& e) {
        throw lslink::SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return lslink::parse_qp_input(j);
}

std::string display_name(const std::string& source, const lslink::LinkInput& in) {
    return in.name.empty() ? source : in.name;
}

void emit(const lslink::json& j) { std::cout << j.dump(2) << "\n"; }

int run_hfunc(const Options& o) {
    lslink::LinkInput in = load_link(o.input);
    auto box = parse_box(o.box, in.n);
    lslink::SolveResult res = lslink::solve_link(in, box, solve_options(o));
    if (o.format == "ascii")
        std::cout << lslink::grid_ascii(res.table, display_name(o.input, in));
    else if (o.format == "csv")
        std::cout << lslink::table_csv(res.table);
    else
        emit(lslink::table_json(res.table, display_name(o.input, in), res.sign));
    return 0;
}

int run_classify(const Options& o) {
    lslink::LinkInput in = load_link(o.input);
    auto box = parse_box(o.box, in.n);
    lslink::SolveResult res = lslink::solve_link(in, box, solve_options(o));
    lslink::Classification cls = lslink::classify_type(res.table);
    if (cls.kind == lslink::LinkKind::TypeB)
        cls = lslink::is_special(res.table, cls, in.component_genera);
    lslink::InvariantReport rep = lslink::invariants_from_classification(res.table, cls);
    lslink::json j = lslink::classification_json(display_name(o.input, in), res.table, cls, rep, res.sign);
    if (o.format == "ascii") {
        std::cout << "link: " << j["name"].get<std::string>() << "\n";
        std::cout << "kind: " << j["kind"].get<std::string>() << "\n";
        if (j.contains("corner2")) {
            std::cout << "corner: " << cls.corner->str() << "\n";
        }
        std::cout << "special: " << (cls.special ? "true" : "false") << " (on inspected box)\n";
        if (j.contains("eq_failures")) {
            std::cout << "failed equations:";
            for (int k : cls.eq_failures) std::cout << " (" << k << ")";
            std::cout << "\n";
        }
        std::cout << "fibered: " << tri_name(rep.fibered) << ", sqp: " << tri_name(rep.sqp)
                  << ", fibered&sqp: " << tri_name(rep.fibered_and_sqp) << "\n";
        if (rep.tau)
            std::cout << "tau = nu+ = " << *rep.tau << ", g3 = " << *rep.g3_link
                      << ", s_top = " << *rep.s_top << "\n";
    } else {
        emit(j);
    }
    return 0;
}

int run_hfl(const Options& o) {
    lslink::LinkInput in = load_link(o.input);
    if (in.n != 2)
        throw lslink::SchemaError("hfl computes two-component links only");
    auto box = parse_box(o.box, in.n);
    lslink::SolveResult res = lslink::solve_link(in, box, solve_options(o));
    auto hflm = lslink::hfl_minus_table(res.table);
    lslink::TopReport top = lslink::s_top_and_fibered(res.table, hflm);
    if (o.format == "ascii")
        std::cout << lslink::hfl_ascii(display_name(o.input, in), hflm, top);
    else if (o.format == "csv")
        std::cout << lslink::hfl_csv(hflm);
    else
        emit(lslink::hfl_json(display_name(o.input, in), hflm, top));
    return 0;
}

int run_oracle(const Options& o) {
    lslink::LinkInput in = load_link(o.input);
    if (in.n != 2)
        throw lslink::SchemaError("oracle-check handles two-component links only");
    auto box = parse_box(o.box, in.n);
    lslink::SolveResult res = lslink::solve_link(in, box, solve_options(o));
    lslink::OracleReport rep = lslink::oracle_check(res.table);
    if (o.format == "ascii") {
        std::cout << "oracle-check[" << display_name(o.input, in) << "]: " << rep.points_checked
                  << " points, " << rep.mismatches.size() << " mismatches -> "
                  << (rep.ok() ? "OK" : "FAIL") << "\n";
        for (const auto& m : rep.mismatches)
            std::cout << "  mismatch at " << m.point.str() << "\n";
    } else {
        emit(lslink::oracle_json(display_name(o.input, in), rep));
    }
    return rep.ok() ? 0 : kExitValidation;
}

int run_qp(const Options& o) {
    lslink::QPInput q = load_qp(o.input);
    lslink::QPVerdict v = lslink::qp_obstruction(q);
    if (o.format == "ascii") {
        std::cout << (v.obstructed ? "obstructed" : "not obstructed") << ": " << v.reason << "\n";
    } else {
        emit(lslink::qp_json(o.input, q, v));
    }
    return 0;
}

int run_catalog(const std::string& name) {
    if (name.empty()) {
        for (const auto& n : lslink::catalog_names()) std::cout << n << "\n";
        return 0;
    }
    lslink::CatalogEntry e = lslink::get(name);
    if (e.link) {
        emit(lslink::link_input_to_json(*e.link));
    } else if (e.qp) {
        lslink::json j;
        j["name"] = e.name;
        j["n"] = e.qp->n;
        j["tau"] = e.qp->tau;
        j["mirror_tau"] = e.qp->mirror_tau;
        j["components_unknotted"] = e.qp->components_unknotted;
        j["total_linking_zero"] = e.qp->total_linking_zero;
        emit(j);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"H-function, classification and link Floer computations for L-space links"};
    app.require_subcommand(1);

    Options opt;
    std::string catalog_name;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("input", opt.input, "input JSON file or catalog:NAME")->required();
        cmd->add_option("--box", opt.box, "lattice box lo1,..:hi1,.. in doubled coordinates");
        cmd->add_option("--format", opt.format, "output format: ascii|json|csv")
            ->check(CLI::IsMember({"ascii", "json", "csv"}));
        cmd->add_option("--sign", opt.sign, "Alexander sign policy: auto|plus|minus")
            ->check(CLI::IsMember({"auto", "plus", "minus"}));
        cmd->add_option("--margin", opt.margin, "stabilization margin in lattice units")
            ->check(CLI::Range(1, 16));
    };

    auto* hfunc = app.add_subcommand("hfunc", "solve and print the H-function table");
    add_common(hfunc, true);
    auto* classify = app.add_subcommand("classify", "type (A)/(B), special test and invariants");
    add_common(classify, true);
    auto* hfl = app.add_subcommand("hfl", "HFL^- groups via the six local cases");
    add_common(hfl, true);
    auto* oracle = app.add_subcommand("oracle-check", "compare the six-case table against cone homology");
    add_common(oracle, true);
    auto* qp = app.add_subcommand("qp", "quasi-positivity obstruction for two-component links");
    qp->add_option("input", opt.input, "qp JSON file or catalog:two_bridge_tau(k)")->required();
    qp->add_option("--format", opt.format, "output format: ascii|json")
        ->check(CLI::IsMember({"ascii", "json"}));
    auto* cat = app.add_subcommand("catalog", "list catalog entries or export one as JSON");
    cat->add_option("name", catalog_name, "entry name; omit to list all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (hfunc->parsed()) return run_hfunc(opt);
        if (classify->parsed()) return run_classify(opt);
        if (hfl->parsed()) return run_hfl(opt);
        if (oracle->parsed()) return run_oracle(opt);
        if (qp->parsed()) return run_qp(opt);
        if (cat->parsed()) return run_catalog(catalog_name);
    } catch (const lslink::SchemaError& e) {
        std::cerr << "error (schema): " << e.what() << "\n";
        return kExitSchema;
    } catch (const lslink::ValidationError& e) {
        std::cerr << "error (validation): " << e.what() << "\n";
        return kExitValidation;
    } catch (const lslink::BoxError& e) {
        std::cerr << "error (box): " << e.what() << "\n";
        return kExitBox;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
