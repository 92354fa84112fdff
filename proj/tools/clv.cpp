#include "clv/acceptance.hpp"
#include "clv/blcheck.hpp"
#include "clv/casework.hpp"
#include "clv/cusp.hpp"
#include "clv/igraph.hpp"
#include "clv/manetti.hpp"
#include "clv/markov.hpp"
#include "clv/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <list>
#include <sstream>
#include <thread>

#ifndef CLV_GOLDEN_DIR
#define CLV_GOLDEN_DIR "golden"
#endif

using namespace clv;
using report::FieldError;
using report::Json;

namespace {

enum Exit { kOk = 0, kDiscrepancy = 1, kInput = 2 };

struct Outcome {
    report::Report rep;
    int code = kOk;
};

std::string big(const BigInt& x) { return x.str(); }

std::string t_str(const std::vector<BigInt>& v) {
    return "(" + v[0].str() + "," + v[1].str() + "," + v[2].str() + ")";
}

Json big_list(const std::vector<BigInt>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(big(x));
    return a;
}

int threads_from_env() {
    int n = int(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* e = std::getenv("CLV_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(e, &end, 10);
        if (end == e || *end || v < 1) throw FieldError("CLV_THREADS", "expected a positive integer");
        n = int(std::min<long>(v, n));
    }
    return n;
}

const Json& arg(const Json& args, const char* key) { return args.at(key); }

BigInt parse_big(const Json& j, const std::string& ptr) {
    if (j.is_number_integer()) return BigInt(report::parse_int(j, ptr, 1, INT64_MAX));
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw FieldError(ptr, "expected a positive integer");
        BigInt v(s);
        if (v < 1) throw FieldError(ptr, "must be >= 1");
        return v;
    }
    throw FieldError(ptr, "expected a positive integer");
}

std::vector<BigInt> parse_big_list(const Json& j, const std::string& ptr) {
    if (!j.is_array()) throw FieldError(ptr, "expected an array");
    std::vector<BigInt> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_big(j[i], ptr + "/" + std::to_string(i)));
    return v;
}

markov::Triple parse_triple(const Json& j, const std::string& ptr) {
    auto v = parse_big_list(j, ptr);
    if (v.size() != 3) throw FieldError(ptr, "expected three entries");
    try {
        return markov::make_triple(v[0], v[1], v[2]);
    } catch (const InputError& e) {
        throw FieldError(ptr, e.what());
    }
}

Json pairs_json(const cusp::CuspType& c) {
    Json a = Json::array();
    for (const auto& p : c.pairs()) a.push_back({p.m, p.n});
    return a;
}

// ---------------------------------------------------------------- commands

Outcome cmd_markov(const Json& args, const std::string& ptr, const report::Bounds& b) {
    report::only_keys(args, ptr, {"max_entry", "check"});
    Outcome o;
    if (args.contains("check")) {
        const auto& j = arg(args, "check");
        auto v = parse_big_list(j, ptr + "/check");
        if (v.size() != 3) throw FieldError(ptr + "/check", "expected three entries");
        const bool ok = markov::is_markov_triple(v[0], v[1], v[2]);
        o.rep.payload = {{"triple", big_list(v)}, {"is_markov_triple", ok}};
        if (ok) {
            auto t = markov::make_triple(v[0], v[1], v[2]);
            o.rep.payload["descent_steps"] = markov::descent_steps(t);
            o.rep.payload["volume_check"] = to_string(manetti::volume_check(t));
        }
        o.rep.markdown_body = "# Markov check\n\n" + t_str(v) + (ok ? " is" : " is not") + " a Markov triple.\n";
        return o;
    }
    const BigInt max = args.contains("max_entry") ? parse_big(arg(args, "max_entry"), ptr + "/max_entry")
                                                  : BigInt(b.tree_max_entry);
    const auto tree = markov::markov_tree(max);
    Json triples = Json::array();
    bool nine = true;
    for (const auto& t : tree) {
        triples.push_back(t.str());
        nine = nine && manetti::volume_check(t) == 9;
    }
    const bool gap = markov::verify_gonality_gap(max);
    o.rep.payload = {{"max_entry", big(max)},
                     {"triple_count", tree.size()},
                     {"triples", triples},
                     {"markov_numbers", big_list(markov::markov_numbers(max))},
                     {"volume_check_all_9", nine},
                     {"gonality_gap", gap}};
    o.code = nine && gap ? kOk : kDiscrepancy;
    std::ostringstream md;
    md << "# Markov triples up to " << max << "\n\n" << tree.size() << " triples. Markov numbers:";
    for (const auto& n : markov::markov_numbers(max)) md << " " << n;
    md << ".\n\nVolume check on every triple: " << (nine ? "9" : "FAILED") << ". Gonality gap: "
       << (gap ? "holds" : "FAILS") << ".\n";
    o.rep.markdown_body = md.str();
    return o;
}

Outcome cmd_surface(const Json& args, const std::string& ptr, const report::Bounds&) {
    report::only_keys(args, ptr, {"triple", "keep", "n", "degree", "catalog"});
    Outcome o;
    std::ostringstream md;
    if (args.contains("catalog")) {
        const int d = int(report::parse_int(arg(args, "catalog"), ptr + "/catalog", 5, 7));
        if (d == 6) throw FieldError(ptr + "/catalog", "catalog exists for d = 5 and 7");
        Json a = Json::array();
        md << "# Surfaces for degree " << d << "\n\n";
        for (const auto& e : manetti::surface_catalog(d)) {
            a.push_back({{"name", e.name}, {"weights", big_list(e.weights)}});
            md << "- " << e.name << "\n";
        }
        o.rep.payload = {{"degree", d}, {"catalog", a}};
        o.rep.markdown_body = md.str();
        return o;
    }
    if (!args.contains("triple")) throw FieldError(ptr + "/triple", "missing field");
    const auto t = parse_triple(arg(args, "triple"), ptr + "/triple");
    manetti::Surface s = manetti::full(t);
    if (args.contains("keep")) {
        try {
            s = manetti::keeping(t, parse_big_list(arg(args, "keep"), ptr + "/keep"));
        } catch (const FieldError&) {
            throw;
        } catch (const InputError& e) {
            throw FieldError(ptr + "/keep", e.what());
        }
    }
    const BigInt n = args.contains("n") ? parse_big(arg(args, "n"), ptr + "/n") : BigInt(1);
    const auto g = manetti::gonality_certificate(t, n);
    const auto emb = manetti::ambient_embedding(t);
    Json w = Json::array();
    for (const auto& x : emb.weights) w.push_back(big(x));
    o.rep.payload = {{"triple", t.str()},
                     {"surface", s.name()},
                     {"picard_index", big(manetti::picard_index(s))},
                     {"local_class_orders", big_list(s.local_class_orders())},
                     {"self_intersection_O1", to_string(manetti::self_intersection({s, 1}))},
                     {"O1_cartier", manetti::DivisorClass{s, 1}.is_cartier()},
                     {"ambient_weights", w},
                     {"gonality", {{"n", big(n)},
                                   {"bound", big(g.bound)},
                                   {"plane_gonality", big(g.plane_gonality)},
                                   {"nonplanar", g.nonplanar}}}};
    md << "# " << s.name() << "\n\nPicard index " << manetti::picard_index(s) << ", O(1)^2 = "
       << to_string(manetti::self_intersection({s, 1})) << ".\n";
    if (args.contains("degree")) {
        const BigInt d = parse_big(arg(args, "degree"), ptr + "/degree");
        Json lim = Json::object();
        for (int i = 0; i < 3; ++i) {
            auto v = manetti::limit_degree_on_Mc(d, t[i]);
            lim[big(t[i])] = v ? Json(big(*v)) : Json(nullptr);
        }
        o.rep.payload["limit_degree_on_Mc"] = lim;
    }
    o.rep.markdown_body = md.str();
    return o;
}

Outcome cmd_cusp(const Json& args, const std::string& ptr, const report::Bounds&) {
    report::only_keys(args, ptr, {"pairs"});
    if (!args.contains("pairs")) throw FieldError(ptr + "/pairs", "missing field");
    const auto c = report::parse_cusp(arg(args, "pairs"), ptr + "/pairs");
    Outcome o;
    const auto delta = cusp::delta_from_pairs(c);
    const auto mult = cusp::multiplicity_sequence(c);
    const auto sg = cusp::semigroup(c, 2 * delta + 2);
    const auto dm = cusp::delta_from_multiplicities(mult);
    o.rep.payload = {{"pairs", pairs_json(c)},
                     {"delta", delta},
                     {"delta_from_multiplicities", dm},
                     {"multiplicity_sequence", mult},
                     {"lct", to_string(cusp::lct(c))},
                     {"semigroup_generators", c.generators()},
                     {"conductor", sg.conductor},
                     {"apery_set", cusp::apery_set(c)}};
    o.code = dm == delta ? kOk : kDiscrepancy;
    std::ostringstream md;
    md << "# Cusp " << c.str() << "\n\n| delta | lct | multiplicity sequence |\n|---|---|---|\n| " << delta << " | "
       << to_string(cusp::lct(c)) << " | " << cusp::to_string(mult) << " |\n";
    o.rep.markdown_body = md.str();
    return o;
}

Outcome cmd_bl(const Json& args, const std::string& ptr, const report::Bounds&) {
    report::only_keys(args, ptr, {"degree", "cusps"});
    if (!args.contains("degree")) throw FieldError(ptr + "/degree", "missing field");
    if (!args.contains("cusps")) throw FieldError(ptr + "/cusps", "missing field");
    const int d = int(report::parse_int(arg(args, "degree"), ptr + "/degree", 3, 200));
    const auto cs = report::parse_cusp_list(arg(args, "cusps"), ptr + "/cusps");
    bl::Verdict v;
    try {
        v = bl::bl_check(d, cs);
    } catch (const InputError& e) {
        throw FieldError(ptr + "/cusps", e.what());
    }
    Outcome o;
    Json cusps = Json::array(), table = Json::array();
    for (const auto& c : cs) cusps.push_back(pairs_json(c));
    for (const auto& row : v.table) {
        Json r = {{"j", row.j},
                  {"target", row.target},
                  {"required", row.required},
                  {"minimum", row.minimum},
                  {"argmin", row.argmin}};
        if (cs.size() == 2 && row.target > 0) {
            Json splits = Json::array();
            for (std::int64_t k = row.target; k >= 0; --k)
                splits.push_back({{"k", {k, row.target - k}},
                                  {"R", cusp::counting_R(cs[0], k) + cusp::counting_R(cs[1], row.target - k)}});
            r["splits"] = splits;
        }
        table.push_back(r);
    }
    o.rep.payload = {{"degree", d}, {"cusps", cusps}, {"pass", v.pass}, {"table", table}};
    Json cert = {{"rule", v.pass ? "BLPass" : "BLFail"}};
    if (!v.pass) cert.update({{"j", v.fail_j}, {"minimum", v.achieved_min}, {"required", v.required}});
    o.rep.certificates.push_back(cert);
    std::ostringstream md;
    md << "# BL check, degree " << d << "\n\n| j | target | minimum | required |\n|---|---|---|---|\n";
    for (const auto& row : v.table)
        md << "| " << row.j << " | " << row.target << " | " << row.minimum << " | " << row.required << " |\n";
    md << "\n" << (v.pass ? "Pass" : "Fail at j = " + std::to_string(v.fail_j)) << "\n";
    o.rep.markdown_body = md.str();
    return o;
}

Json graph_json(const igraph::Graph& g) {
    return {{"graph", g.str()}, {"greens", g.greens}, {"yellows", g.yellows}, {"euler", igraph::euler(g)}};
}

Outcome cmd_graphs(const Json& args, const std::string& ptr, const report::Bounds&) {
    report::only_keys(args, ptr, {"mode", "graph"});
    igraph::Mode mode = igraph::Mode::Deg7;
    if (args.contains("mode")) {
        const auto& m = arg(args, "mode");
        if (m == "deg7")
            mode = igraph::Mode::Deg7;
        else if (m == "deg5")
            mode = igraph::Mode::Deg5;
        else
            throw FieldError(ptr + "/mode", "expected \"deg7\" or \"deg5\"");
    }
    const char* mname = mode == igraph::Mode::Deg7 ? "deg7" : "deg5";
    Outcome o;
    if (args.contains("graph")) {
        const auto g = report::parse_graph(arg(args, "graph"), ptr + "/graph");
        const auto v = igraph::first_violation(g, mode);
        o.rep.payload = {{"mode", mname}, {"graph", graph_json(g)}, {"admissible", !v}};
        if (v) o.rep.payload["violation"] = *v;
        o.rep.markdown_body = "# " + g.str() + "\n\n" + (v ? "Rejected: " + *v : std::string("Admissible.")) + "\n";
        return o;
    }
    const auto e = igraph::enumerate_admissible(mode);
    Json adm = Json::array();
    std::ostringstream md;
    md << "# Admissible intersection graphs (" << mname << ")\n\n";
    for (const auto& g : e.admissible) {
        adm.push_back(graph_json(g));
        md << "- " << g.str() << "\n";
    }
    Json pruned = Json::object();
    for (const auto& [k, n] : e.pruned) pruned[k] = n;
    o.rep.payload = {{"mode", mname}, {"admissible", adm}, {"pruned", pruned}, {"leaves_checked", e.leaves_checked}};
    o.rep.markdown_body = md.str();
    return o;
}

casework::CaseworkReport casework_for(int d, int weight_cap) {
    return casework::run_casework(d, {threads_from_env(), weight_cap});
}

Outcome cmd_casework(const Json& args, const std::string& ptr, const report::Bounds& b) {
    report::only_keys(args, ptr, {"degree"});
    if (!args.contains("degree")) throw FieldError(ptr + "/degree", "missing field");
    const int d = int(report::parse_int(arg(args, "degree"), ptr + "/degree", 5, 7));
    if (d == 6) throw FieldError(ptr + "/degree", "expected 5 or 7");
    const auto r = casework_for(d, b.weight_cap);
    Outcome o;
    o.rep.payload = casework::to_json(r);
    for (const auto& s : r.surfaces)
        for (const auto& c : s.configs) {
            Json x = {{"surface", s.name}, {"geometry", c.geometry}, {"rule", casework::rule_name(c.cert.rule)}};
            if (c.cert.bound) x["bound"] = to_string(*c.cert.bound);
            o.rep.certificates.push_back(x);
        }
    o.rep.markdown_body = casework::to_markdown(r);
    o.code = r.verdict == "smooth-only" ? kOk : kDiscrepancy;
    return o;
}

// Golden payloads kept in the repository.
std::vector<std::pair<std::string, std::string>> golden_payloads() {
    std::vector<std::pair<std::string, std::string>> out;
    for (int d : {5, 7}) {
        const auto r = casework_for(d, 30);
        out.push_back({"casework_" + std::to_string(d) + ".json", casework::to_json(r).dump(2) + "\n"});
        out.push_back({"casework_" + std::to_string(d) + ".md", casework::to_markdown(r)});
    }
    for (auto m : {igraph::Mode::Deg7, igraph::Mode::Deg5}) {
        Json a = Json::array();
        for (const auto& g : igraph::enumerate_admissible(m).admissible) a.push_back(g.str());
        out.push_back({std::string("graphs_") + (m == igraph::Mode::Deg7 ? "deg7" : "deg5") + ".json",
                       a.dump(2) + "\n"});
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cmd_verify_all(const Json& args, const std::string& ptr, const report::Bounds&) {
    report::only_keys(args, ptr, {"golden", "write_golden"});
    std::string dir = CLV_GOLDEN_DIR;
    if (args.contains("golden")) {
        if (!args["golden"].is_string()) throw FieldError(ptr + "/golden", "expected a string");
        dir = args["golden"].get<std::string>();
    }
    const bool write = args.value("write_golden", false);
    Outcome o;
    Json crit = Json::array();
    std::ostringstream md;
    md << "# Acceptance\n\n";
    bool all = true;
    for (const auto& c : acceptance::run_all(threads_from_env())) {
        crit.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        md << "- [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << " " << c.name << ": " << c.detail << "\n";
        all = all && c.pass;
    }
    Json golden = Json::array();
    if (write) std::filesystem::create_directories(dir);
    for (const auto& [name, text] : golden_payloads()) {
        const auto path = std::filesystem::path(dir) / name;
        if (write) std::ofstream(path, std::ios::binary) << text;
        if (!std::filesystem::exists(path)) throw FieldError(ptr + "/golden", "missing golden file " + path.string());
        const bool same = slurp(path) == text;
        golden.push_back({{"file", name}, {"match", same}});
        md << "- [" << (same ? "PASS" : "FAIL") << "] golden " << name << "\n";
        all = all && same;
    }
    o.rep.payload = {{"criteria", crit}, {"golden", golden}, {"verified", all}};
    o.rep.markdown_body = md.str();
    o.code = all ? kOk : kDiscrepancy;
    return o;
}

Outcome dispatch(const std::string& command, const Json& args, const std::string& ptr, const report::Bounds& b) {
    if (command == "markov") return cmd_markov(args, ptr, b);
    if (command == "surface") return cmd_surface(args, ptr, b);
    if (command == "cusp") return cmd_cusp(args, ptr, b);
    if (command == "bl") return cmd_bl(args, ptr, b);
    if (command == "graphs") return cmd_graphs(args, ptr, b);
    if (command == "casework") return cmd_casework(args, ptr, b);
    if (command == "verify-all") return cmd_verify_all(args, ptr, b);
    throw FieldError("/command", "unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for Calabi-Yau limits of plane quintics and septics"};
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string out_path, format = "json", config_path;
    bool timing = false;
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));
    app.add_option("--config", config_path, "run from a RunConfig JSON file");
    app.add_flag("--timing", timing, "add wall-clock timing to the report");

    // option values are kept as raw text and parsed into the args object below
    struct RawOpt {
        CLI::App* sub;
        CLI::Option* opt;
        std::string key;
        std::string text;
    };
    std::list<RawOpt> raw;
    auto json_opt = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
        auto& r = raw.emplace_back(RawOpt{sub, nullptr, key, {}});
        r.opt = sub->add_option(flag, r.text, help);
    };
    auto* markov = app.add_subcommand("markov", "Markov triples up to a bound");
    json_opt(markov, "--max", "max_entry", "largest entry (integer)");
    json_opt(markov, "--check", "check", "triple to test, e.g. \"[1,5,13]\"");
    auto* surface = app.add_subcommand("surface", "Manetti surface invariants");
    json_opt(surface, "--triple", "triple", "Markov triple, e.g. \"[1,2,5]\"");
    json_opt(surface, "--keep", "keep", "entries keeping their singular point, e.g. \"[5]\"");
    json_opt(surface, "--n", "n", "multiple for the gonality certificate");
    json_opt(surface, "--degree", "degree", "plane degree for limit_degree_on_Mc");
    json_opt(surface, "--catalog", "catalog", "list admissible surfaces for degree 5 or 7");
    auto* cusp = app.add_subcommand("cusp", "invariants of a cusp");
    json_opt(cusp, "--pairs", "pairs", "Newton pairs, e.g. \"[[2,3],[2,5]]\"");
    auto* blc = app.add_subcommand("bl", "semigroup distribution check");
    json_opt(blc, "--degree", "degree", "plane degree");
    json_opt(blc, "--cusps", "cusps", "list of cusps, e.g. \"[[[2,19]],[[4,5]]]\"");
    auto* graphs = app.add_subcommand("graphs", "admissible intersection graphs");
    std::string mode;
    graphs->add_option("--mode", mode, "deg7 or deg5");
    json_opt(graphs, "--graph", "graph", "check one graph, e.g. {\"greens\":[1,1],\"yellows\":[[0,1]]}");
    auto* casew = app.add_subcommand("casework", "run the degree 5 or 7 casework");
    json_opt(casew, "--degree", "degree", "5 or 7");
    int weight_cap = 30;
    casew->add_option("--weight-cap", weight_cap, "weighted blow-up search range (>= 30)");
    auto* verify = app.add_subcommand("verify-all", "acceptance checks and golden comparison");
    std::string golden;
    bool write_golden = false;
    verify->add_option("--golden", golden, "golden directory");
    verify->add_flag("--write-golden", write_golden, "regenerate golden files before comparing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    const auto t0 = std::chrono::steady_clock::now();
    report::Format fmt = report::Format::Json;
    Outcome result;
    try {
        fmt = report::parse_format(format);
        std::string command;
        Json args = Json::object();
        report::Bounds bounds;
        std::string ptr;
        if (!config_path.empty()) {
            if (!app.get_subcommands().empty()) throw FieldError("--config", "cannot be combined with a subcommand");
            std::ifstream in(config_path);
            if (!in) throw FieldError("--config", "cannot read " + config_path);
            std::ostringstream s;
            s << in.rdbuf();
            const auto cfg = report::parse_run_config(report::parse_json(s.str()));
            command = cfg.command;
            args = cfg.args;
            bounds = cfg.bounds;
            if (!app.get_option("--format")->count()) fmt = cfg.format;
            ptr = "/args";
        } else {
            if (app.get_subcommands().empty()) {
                std::cerr << app.help();
                return kInput;
            }
            auto* sub = app.get_subcommands().front();
            command = sub->get_name();
            for (const auto& r : raw) {
                if (r.sub != sub || r.opt->count() == 0) continue;
                try {
                    args[r.key] = Json::parse(r.text);
                } catch (const nlohmann::json::parse_error& e) {
                    throw FieldError("/" + r.key, "malformed JSON at byte " + std::to_string(e.byte));
                }
            }
            if (command == "graphs" && !mode.empty()) args["mode"] = mode;
            if (command == "casework") {
                if (weight_cap < 30) throw FieldError("/weight_cap", "must be >= 30");
                bounds.weight_cap = weight_cap;
            }
            if (command == "verify-all") {
                if (!golden.empty()) args["golden"] = golden;
                if (write_golden) args["write_golden"] = true;
            }
        }
        result = dispatch(command, args, ptr, bounds);
        result.rep.command.push_back(command);
        for (int i = 1; i < argc; ++i)
            if (std::string(argv[i]) != command) result.rep.command.push_back(argv[i]);
    } catch (const FieldError& e) {
        std::cerr << "clv: input error at " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "clv: input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "clv: " << e.what() << "\n";
        return kDiscrepancy;
    }
    if (timing)
        result.rep.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

    const std::string text = report::emit(result.rep, fmt);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "clv: cannot write " << out_path << "\n";
            return kInput;
        }
        out << text;
    }
    return result.code;
}
