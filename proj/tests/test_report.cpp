#include "clv/casework.hpp"
#include "clv/report.hpp"

#include "doctest.h"

#include <string>

using namespace clv;
using namespace clv::report;

namespace {

std::string pointer_of(const std::string& text, auto&& fn) {
    try {
        fn(parse_json(text));
    } catch (const FieldError& e) {
        return e.pointer();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("malformed input is located by pointer") {
    auto cusp = [](const Json& j) { parse_cusp(j); };
    CHECK(pointer_of("[[2,3],[2,0]]", cusp) == "/1/1");
    CHECK(pointer_of("[[1,3]]", cusp) == "/0/0");
    CHECK(pointer_of("[[2,3,4]]", cusp) == "/0");
    CHECK(pointer_of("[]", cusp) == "");
    CHECK(pointer_of("[[2,4]]", cusp) == "");  // not coprime
    CHECK(pointer_of("[[2,\"3\"]]", cusp) == "/0/1");
    CHECK(pointer_of("[[2,3],[2,5]]", cusp) == "<no error>");
    auto graph = [](const Json& j) { parse_graph(j); };
    CHECK(pointer_of(R"({"greens":[1,2],"yellows":[[0,2]]})", graph) == "/yellows/0/1");
    CHECK(pointer_of(R"({"greens":[1],"blues":[]})", graph) == "/blues");
    CHECK(pointer_of(R"({"yellows":[]})", graph) == "/greens");
    CHECK_THROWS_AS(parse_json("{\"a\":"), FieldError);
    CHECK_THROWS_AS(parse_int(parse_json("18446744073709551615"), "", 0, 10), FieldError);
}

TEST_CASE("run configs") {
    auto c = parse_run_config(parse_json(R"({"command":"casework","args":{"degree":7},"format":"md",
        "bounds":{"weight_cap":40}})"));
    CHECK(c.command == "casework");
    CHECK(c.format == Format::Markdown);
    CHECK(c.bounds.weight_cap == 40);
    CHECK(c.bounds.tree_max_entry == 500);
    CHECK(parse_run_config(to_json(c)).bounds.weight_cap == 40);
    auto bad = [](const char* s) {
        try {
            parse_run_config(parse_json(s));
        } catch (const FieldError& e) {
            return e.pointer();
        }
        return std::string("<no error>");
    };
    CHECK(bad(R"({"command":"casework","extra":1})") == "/extra");
    CHECK(bad(R"({"command":"nope"})") == "/command");
    CHECK(bad(R"({"args":{}})") == "/command");
    CHECK(bad(R"({"command":"cusp","bounds":{"weight_cap":29}})") == "/bounds/weight_cap");
    CHECK(bad(R"({"command":"cusp","bounds":{"depth":3}})") == "/bounds/depth");
    CHECK(bad(R"({"command":"cusp","format":"xml"})") == "/format");
    CHECK(bad(R"({"command":"cusp","args":[1]})") == "/args");
}

TEST_CASE("report envelopes round-trip through both formats") {
    Report r;
    r.command = {"cusp", "--pairs", "[[2,3]]"};
    r.payload = {{"delta", 1}, {"lct", "5/6"}};
    r.certificates = Json::array({{{"rule", "LctTooSmall"}, {"bound", "5/18"}}});
    r.markdown_body = "# Cusp\n\nbody text\n";
    const auto j = to_json(r);
    CHECK(j["schema"] == kSchema);
    CHECK_FALSE(j.contains("timing"));
    CHECK(to_json(report_from_json(j)) == j);
    const auto md = emit(r, Format::Markdown);
    const auto back = parse_markdown(md);
    CHECK(to_json(back) == j);
    CHECK(back.markdown_body == r.markdown_body);
    CHECK(emit(back, Format::Markdown) == md);
    r.elapsed_ms = 12;
    CHECK(to_json(report_from_json(to_json(r)))["timing"]["elapsed_ms"] == 12);

    auto wrong = j;
    wrong["schema"] = "clv-report/0";
    CHECK_THROWS_AS(report_from_json(wrong), FieldError);
    wrong = j;
    wrong["surprise"] = true;
    CHECK_THROWS_AS(report_from_json(wrong), FieldError);
    CHECK_THROWS_AS(parse_markdown("# no data here\n"), FieldError);
}

TEST_CASE("casework markdown") {
    casework::CaseworkReport empty;
    const auto e = casework::to_markdown(empty);
    CHECK(e.find("**Verdict:** ") != std::string::npos);
    CHECK(e.find("Manual flags") == std::string::npos);

    const auto r7 = casework::run_casework(7, {2});
    const auto md = casework::to_markdown(r7);
    CHECK(md.find("smooth-only") != std::string::npos);
    // surfaces appear in catalog order
    CHECK(md.find("P2") < md.find("P(1,1,4)"));
    CHECK(md.find("Manual flags") != std::string::npos);
    // nonreduced rows in the order of the published table
    std::size_t at = 0;
    for (const char* row : {"| P2 | 5 \\| 1 |", "| P2 | 3 \\| 2 |", "| P2 | 3 \\| 1+1 |", "| P2 | 1 \\| 3 |",
                            "| P2 | 1 \\| 2+1 |", "| P2 | 4+1 \\| 1 |", "| P2 | 3+2 \\| 1 |", "| P2 | 2+1 \\| 2 |",
                            "| P(1,1,4) | 12 \\| 1 |", "| P(1,1,4) | 6 \\| 4 |", "| P(1,1,4) | 4 \\| 5 |",
                            "| P(1,1,4) | 4 \\| 4+1 |", "| P(1,1,4) | 8+4 \\| 1 |"}) {
        CAPTURE(row);
        const auto pos = md.find(row, at);
        REQUIRE(pos != std::string::npos);
        at = pos + 1;
    }
    Report rep;
    rep.command = {"casework", "--degree", "7"};
    rep.payload = casework::to_json(r7);
    rep.markdown_body = md;
    CHECK(to_json(parse_markdown(emit(rep, Format::Markdown))) == to_json(rep));
}
