#include "clv/report.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace clv::report {

namespace {

constexpr const char* kDataOpen = "```json clv-report";
constexpr const char* kDataClose = "```";

}  // namespace

void only_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw FieldError(ptr, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw FieldError(ptr + "/" + k, "unknown field");
}

namespace {

const Json& need(const Json& j, const std::string& ptr, const char* key) {
    if (!j.contains(key)) throw FieldError(ptr + "/" + key, "missing field");
    return j.at(key);
}

std::string need_string(const Json& j, const std::string& ptr) {
    if (!j.is_string()) throw FieldError(ptr, "expected a string");
    return j.get<std::string>();
}

}  // namespace

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FieldError("", "malformed JSON at byte " + std::to_string(e.byte));
    }
}

std::int64_t parse_int(const Json& j, const std::string& ptr, std::int64_t lo, std::int64_t hi) {
    if (!j.is_number_integer()) throw FieldError(ptr, "expected an integer");
    // unsigned values above int64 range land here as well
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > std::uint64_t(hi))
        throw FieldError(ptr, "must be <= " + std::to_string(hi));
    const auto v = j.get<std::int64_t>();
    if (v < lo) throw FieldError(ptr, "must be >= " + std::to_string(lo));
    if (v > hi) throw FieldError(ptr, "must be <= " + std::to_string(hi));
    return v;
}

std::vector<cusp::NewtonPair> parse_pairs(const Json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) throw FieldError(ptr, "expected a non-empty array of [m, n] pairs");
    std::vector<cusp::NewtonPair> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = ptr + "/" + std::to_string(i);
        if (!j[i].is_array() || j[i].size() != 2) throw FieldError(p, "expected [m, n]");
        const auto m = parse_int(j[i][0], p + "/0", 2, 1'000'000);
        const auto n = parse_int(j[i][1], p + "/1", 1, 1'000'000);
        out.push_back({m, n});
    }
    return out;
}

cusp::CuspType parse_cusp(const Json& j, const std::string& ptr) {
    auto pairs = parse_pairs(j, ptr);
    try {
        return cusp::CuspType(pairs);
    } catch (const InputError& e) {
        throw FieldError(ptr, e.what());
    }
}

std::vector<cusp::CuspType> parse_cusp_list(const Json& j, const std::string& ptr) {
    if (!j.is_array() || j.empty()) throw FieldError(ptr, "expected a non-empty array of cusps");
    std::vector<cusp::CuspType> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_cusp(j[i], ptr + "/" + std::to_string(i)));
    return out;
}

igraph::Graph parse_graph(const Json& j, const std::string& ptr) {
    only_keys(j, ptr, {"greens", "yellows"});
    igraph::Graph g;
    const auto& greens = need(j, ptr, "greens");
    if (!greens.is_array()) throw FieldError(ptr + "/greens", "expected an array");
    for (std::size_t i = 0; i < greens.size(); ++i)
        g.greens.push_back(int(parse_int(greens[i], ptr + "/greens/" + std::to_string(i), 1, 64)));
    if (j.contains("yellows")) {
        const auto& ys = j["yellows"];
        if (!ys.is_array()) throw FieldError(ptr + "/yellows", "expected an array");
        for (std::size_t y = 0; y < ys.size(); ++y) {
            const std::string p = ptr + "/yellows/" + std::to_string(y);
            if (!ys[y].is_array()) throw FieldError(p, "expected an array of green indices");
            std::vector<int> e;
            for (std::size_t k = 0; k < ys[y].size(); ++k)
                e.push_back(int(parse_int(ys[y][k], p + "/" + std::to_string(k), 0,
                                          std::int64_t(g.greens.size()) - 1)));
            std::sort(e.begin(), e.end());
            g.yellows.push_back(e);
        }
    }
    try {
        igraph::validate(g);
    } catch (const InputError& e) {
        throw FieldError(ptr, e.what());
    }
    return g;
}

Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "md") return Format::Markdown;
    throw FieldError("/format", "expected \"json\" or \"md\"");
}

RunConfig parse_run_config(const Json& j) {
    only_keys(j, "", {"command", "args", "format", "seed", "bounds"});
    RunConfig c;
    c.command = need_string(need(j, "", "command"), "/command");
    static const std::set<std::string> commands{"markov", "surface", "cusp", "bl", "graphs", "casework", "verify-all"};
    if (!commands.count(c.command)) throw FieldError("/command", "unknown command '" + c.command + "'");
    if (j.contains("args")) {
        if (!j["args"].is_object()) throw FieldError("/args", "expected an object");
        c.args = j["args"];
    }
    if (j.contains("format")) c.format = parse_format(need_string(j["format"], "/format"));
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = parse_int(j["seed"], "/seed", 0, INT64_MAX);
    if (j.contains("bounds")) {
        const auto& b = j["bounds"];
        only_keys(b, "/bounds", {"tree_max_entry", "weight_cap"});
        if (b.contains("tree_max_entry"))
            c.bounds.tree_max_entry = parse_int(b["tree_max_entry"], "/bounds/tree_max_entry", 1, 1'000'000'000);
        if (b.contains("weight_cap"))
            c.bounds.weight_cap = int(parse_int(b["weight_cap"], "/bounds/weight_cap", 30, 200));
    }
    return c;
}

Json to_json(const RunConfig& c) {
    Json j = {{"command", c.command}, {"args", c.args}, {"format", c.format == Format::Json ? "json" : "md"}};
    j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    j["bounds"] = {{"tree_max_entry", c.bounds.tree_max_entry}, {"weight_cap", c.bounds.weight_cap}};
    return j;
}

Json to_json(const Report& r) {
    Json j = {{"schema", kSchema},
              {"tool_version", r.tool_version},
              {"command", r.command},
              {"payload", r.payload},
              {"certificates", r.certificates}};
    if (r.elapsed_ms) j["timing"] = {{"elapsed_ms", *r.elapsed_ms}};
    return j;
}

Report report_from_json(const Json& j) {
    only_keys(j, "", {"schema", "tool_version", "command", "payload", "certificates", "timing"});
    if (need_string(need(j, "", "schema"), "/schema") != kSchema)
        throw FieldError("/schema", std::string("expected ") + kSchema);
    Report r;
    r.tool_version = need_string(need(j, "", "tool_version"), "/tool_version");
    const auto& cmd = need(j, "", "command");
    if (!cmd.is_array()) throw FieldError("/command", "expected an array of strings");
    for (std::size_t i = 0; i < cmd.size(); ++i)
        r.command.push_back(need_string(cmd[i], "/command/" + std::to_string(i)));
    r.payload = need(j, "", "payload");
    r.certificates = need(j, "", "certificates");
    if (!r.certificates.is_array()) throw FieldError("/certificates", "expected an array");
    if (j.contains("timing")) {
        only_keys(j["timing"], "/timing", {"elapsed_ms"});
        r.elapsed_ms = parse_int(need(j["timing"], "/timing", "elapsed_ms"), "/timing/elapsed_ms", 0, INT64_MAX);
    }
    return r;
}

std::string emit(const Report& r, Format f) {
    const Json j = to_json(r);
    if (f == Format::Json) return j.dump(2) + "\n";
    std::ostringstream o;
    std::string cmd;
    for (const auto& a : r.command) cmd += (cmd.empty() ? "" : " ") + a;
    o << "<!-- clv " << r.tool_version << ": " << cmd << " -->\n\n";
    o << r.markdown_body;
    if (!r.markdown_body.empty() && r.markdown_body.back() != '\n') o << "\n";
    o << "\n## Data\n\n" << kDataOpen << "\n" << j.dump(1) << "\n" << kDataClose << "\n";
    return o.str();
}

Report parse_markdown(const std::string& md) {
    const auto open = md.rfind(std::string(kDataOpen) + "\n");
    if (open == std::string::npos) throw FieldError("", "no embedded data block");
    const auto start = open + std::string(kDataOpen).size() + 1;
    const auto close = md.find(std::string("\n") + kDataClose, start);
    if (close == std::string::npos) throw FieldError("", "unterminated data block");
    Report r = report_from_json(parse_json(md.substr(start, close - start)));
    // the rendered part is everything between the comment line and the data heading
    const auto body_start = md.find("\n\n");
    const auto body_end = md.rfind("\n## Data\n", open);
    if (body_start != std::string::npos && body_end != std::string::npos && body_end >= body_start + 2)
        r.markdown_body = md.substr(body_start + 2, body_end - body_start - 2);
    return r;
}

}  // namespace clv::report
