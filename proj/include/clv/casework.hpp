#pragma once

#include "clv/arith.hpp"
#include "clv/blcheck.hpp"
#include "clv/cusp.hpp"
#include "clv/igraph.hpp"

#include "json.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace clv::casework {

using Json = nlohmann::ordered_json;

// Requested shape is outside what lct_upper_bound can handle.
class NotSupported : public std::runtime_error {
public:
    explicit NotSupported(const std::string& what) : std::runtime_error(what) {}
};

// The constraints have no solution: the case is contradictory.
class NoSolution : public std::domain_error {
public:
    explicit NoSolution(const std::string& what) : std::domain_error(what) {}
};

enum class SurfaceKind { P2, P114, P1425, M5 };

// Cyclic quotient point 1/index(1,q).
struct SingularPoint {
    int index = 1;
    int q = 1;
    std::string name() const;
    bool is_11() const { return q == 1; }
};

struct SurfaceModel {
    SurfaceKind kind = SurfaceKind::P2;
    std::string name;
    std::array<int, 3> weights{1, 1, 1};
    std::vector<SingularPoint> points;
    int plane_degree = 0;
    int divisor_degree = 0;
    Rational threshold;
    int point_cap = 0;
    int component_cap = 0;
    int weight_cap = 30;  // w1, w2 range of the weighted blow-up search

    Rational intersection(int d1, int d2) const;  // d1 d2 / (w0 w1 w2)
    Rational adjunction(int d) const;              // (K + C).C for C of degree d
};

// Surfaces of the catalog for plane degree d, in catalog order.
std::vector<SurfaceModel> surface_models(int d);
SurfaceModel surface_model(SurfaceKind kind, int d);

// min{i + k : i + q k = r mod index, (i,k) != (0,0)}: least multiplicity in the orbifold chart.
int min_chart_multiplicity(const SingularPoint& p, int remainder);

enum class Sing { Smooth, Cusp, AnyCusp, Node };

// Passage of a component through a singular point of the surface.
struct Passage {
    int point = 0;
    int mult = 1;  // multiplicity in the orbifold chart; strict transform meets E with this length at 1/w(1,1)
    bool at_least = false;
};

struct Component {
    int m = 1;
    int degree = 0;
    Sing sing = Sing::Smooth;
    std::vector<cusp::NewtonPair> pairs;  // Cusp only; raw, possibly not coprime
    int cusp_point = -1;                  // shared point hosting the cusp
    std::vector<Passage> passes;
};

struct SharedPoint {
    std::vector<int> comps;
    int surface_point = -1;
};

struct CurveConfiguration {
    SurfaceModel surface;
    std::vector<Component> comps;
    std::vector<SharedPoint> points;

    bool reduced() const;
    igraph::Graph graph() const;
};

// Intersection length of two components at their common point (strict transforms at a 1/w(1,1) point).
std::optional<Rational> local_length(const CurveConfiguration& c, int i, int j);
// Arithmetic genus of the component (of its strict transform if it passes a 1/w(1,1) point with a > 0).
std::optional<Rational> arithmetic_genus(const CurveConfiguration& c, int i);

struct LctBound {
    Rational value;
    Json method;      // the method that achieved the minimum, with its inputs
    Json candidates;  // every method tried
};

LctBound lct_upper_bound(const CurveConfiguration& c);
Rational recompute_lct_method(const Json& method);

struct VertexComp {
    int m = 1;
    int degree = 0;
};
struct VertexBound {
    int lower_bound = 0;
    bool feasible = true;
    Json detail;
};
VertexBound vertex_congruence(const SurfaceModel& s, int point, const std::vector<VertexComp>& comps);

int hirzebruch_genus(int n, int coeff_E, int coeff_fiber);

struct StrictTransform {
    int a = 0;
    int coeff_E = 0;
    int coeff_fiber = 0;
};
StrictTransform strict_transform_class(const SurfaceModel& s, int divisor_degree, const Rational& threshold);

enum class Rule {
    CongruenceImpossible,
    MultiplicityExceeded,
    GenusMismatch,
    NotRationalAtDegree,
    ClassificationEmpty,
    LctTooSmall,
    GraphInadmissible,
    ManualGeometric,
    Unresolved,
};
const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& s);

struct Firing {
    Rule rule;
    std::optional<Rational> bound;  // LctTooSmall only
    Json witness;
};

struct Certificate {
    Rule rule = Rule::Unresolved;
    std::optional<Rational> bound;
    Json witness;
    std::vector<Firing> also;  // rules that fire later in the order
    std::vector<std::string> relies_on;
    std::string manual_lemma;
};

// Re-derive the elimination from the witness alone.
bool recheck(const Firing& f, const SurfaceModel& s);

struct ConfigResult {
    std::string surface;
    std::vector<std::pair<int, int>> shell;  // (m, degree), sorted
    std::string geometry;
    std::int64_t shell_count = 1;  // > 1 for aggregated rows
    Json components;
    Certificate cert;
};

struct SurfaceReport {
    std::string name;
    std::int64_t shells = 0;
    std::vector<ConfigResult> configs;
};

struct ManualFlag {
    std::string id;
    std::string lemma;
    std::string statement;
    std::vector<std::string> cited_by;
    std::vector<std::string> required_by;
    Json evidence;
};

struct RowCheck {
    std::string surface;
    std::string label;
    std::string published;
    std::vector<std::string> engine;  // distinct first rules, with bounds
    std::string status;                // agrees | agrees-secondary | differs | missing
    std::string note;                  // documented deviation
    std::size_t configs = 0;
};

struct CaseworkReport {
    int degree = 0;
    std::vector<SurfaceReport> surfaces;
    std::vector<ManualFlag> manual_flags;
    std::vector<RowCheck> rows;
    std::size_t unresolved = 0;
    std::string verdict;
};

struct CaseworkOptions {
    int threads = 1;
    int weight_cap = 30;
};

CaseworkReport run_casework(int d, const CaseworkOptions& opt = {});
std::vector<ManualFlag> manual_flags(int d);

// Independent counts for the completeness check: multisets of (m, degree) summing to the divisor degree.
std::int64_t shell_count(const SurfaceModel& s);

Json to_json(const CaseworkReport& r);
Json to_json(const Certificate& c);
std::string to_markdown(const CaseworkReport& r);

}  // namespace clv::casework
