#pragma once

#include "clv/arith.hpp"
#include "clv/cusp.hpp"
#include "clv/igraph.hpp"

#include "json.hpp"

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace clv::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kSchema = "clv-report/1";

// Input error located by a JSON pointer ("" is the document root).
class FieldError : public InputError {
public:
    FieldError(std::string pointer, const std::string& msg)
        : InputError((pointer.empty() ? std::string("/") : pointer) + ": " + msg), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

Json parse_json(const std::string& text);
// Rejects any key outside `allowed`; also rejects non-objects.
void only_keys(const Json& j, const std::string& ptr, std::initializer_list<const char*> allowed);

std::vector<cusp::NewtonPair> parse_pairs(const Json& j, const std::string& ptr = "");
cusp::CuspType parse_cusp(const Json& j, const std::string& ptr = "");
std::vector<cusp::CuspType> parse_cusp_list(const Json& j, const std::string& ptr = "");
igraph::Graph parse_graph(const Json& j, const std::string& ptr = "");
std::int64_t parse_int(const Json& j, const std::string& ptr, std::int64_t lo, std::int64_t hi);

enum class Format { Json, Markdown };
Format parse_format(const std::string& s);

struct Bounds {
    std::int64_t tree_max_entry = 500;
    int weight_cap = 30;
};

// Whole-run description, the file form of a command line.
struct RunConfig {
    std::string command;
    Json args = Json::object();
    Format format = Format::Json;
    std::optional<std::int64_t> seed;  // reserved; every computation is exact
    Bounds bounds;
};

RunConfig parse_run_config(const Json& j);
Json to_json(const RunConfig& c);

struct Report {
    std::string tool_version = kToolVersion;
    std::vector<std::string> command;
    Json payload = Json::object();
    Json certificates = Json::array();
    std::optional<std::int64_t> elapsed_ms;  // only with --timing, so default output stays byte-stable
    std::string markdown_body;               // human rendering of the payload; not serialized to JSON
};

Json to_json(const Report& r);
Report report_from_json(const Json& j);

std::string emit(const Report& r, Format f);
// The data block embedded by emit(.., Markdown).
Report parse_markdown(const std::string& md);

}  // namespace clv::report
