#include <ihs/io.hpp>
#include <ihs/error.hpp>

#include <fstream>
#include <limits>
#include <sstream>

using namespace ihs;

using nlohmann::json;
using std::pair;
using std::size_t;
using std::string;
using std::string_view;
using std::to_string;
using std::vector;

namespace
{
    auto schema_error(const string & field, const string & what) -> Error
    {
        return Error(ErrorKind::Schema, "field " + field + ": " + what);
    }

    auto line_and_column(string_view text, size_t byte) -> pair<size_t, size_t>
    {
        size_t line = 1, column = 1;
        for (size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        return {line, column};
    }

    auto as_vertex(const json & j, const string & field, size_t n) -> Vertex
    {
        if (! j.is_number_unsigned())
            throw schema_error(field, "expected a non-negative integer");
        auto v = j.get<std::uint64_t>();
        if (v >= n)
            throw schema_error(field, "vertex " + to_string(v) + " out of range (n = " + to_string(n) + ")");
        return Vertex(v);
    }

    auto as_vertex_pair(const json & j, const string & field, size_t n) -> pair<Vertex, Vertex>
    {
        if (! j.is_array() || j.size() != 2)
            throw schema_error(field, "expected a pair [u, v]");
        return {as_vertex(j[0], field + "[0]", n), as_vertex(j[1], field + "[1]", n)};
    }

    auto edge_text(const Edge & e) -> string
    {
        return "[" + to_string(e.u) + ", " + to_string(e.v) + "]";
    }
}

auto ihs::parse_instance(string_view text) -> Instance
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error & e) {
        auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorKind::Schema, "syntax error at line " + to_string(line) + ", column " + to_string(column) +
                ": " + e.what());
    }

    if (! doc.is_object())
        throw schema_error("<root>", "expected an object");
    for (auto & [key, value] : doc.items())
        if (key != "format_version" && key != "n" && key != "edges" && key != "incompat" && key != "metadata")
            throw schema_error(key, "unknown field");

    if (! doc.contains("format_version") || ! doc["format_version"].is_number_integer()
            || doc["format_version"].get<int>() != instance_format_version)
        throw schema_error("format_version", "expected " + to_string(instance_format_version));
    if (! doc.contains("n") || ! doc["n"].is_number_unsigned())
        throw schema_error("n", "expected a non-negative integer");
    auto n64 = doc["n"].get<std::uint64_t>();
    if (n64 > 1u << 16)
        throw schema_error("n", "too many vertices");
    size_t n = size_t(n64);

    if (! doc.contains("edges") || ! doc["edges"].is_array())
        throw schema_error("edges", "expected an array");
    vector<pair<Vertex, Vertex>> edges;
    for (size_t i = 0; i < doc["edges"].size(); ++i) {
        auto field = "edges[" + to_string(i) + "]";
        auto [u, v] = as_vertex_pair(doc["edges"][i], field, n);
        if (u == v)
            throw schema_error(field, "loop");
        edges.emplace_back(u, v);
    }

    Instance result;
    result.graph = Graph(n, edges);
    result.system = IncompatibilitySystem(result.graph);
    auto & g = result.graph;

    if (doc.contains("incompat")) {
        auto & inc = doc["incompat"];
        if (! inc.is_object())
            throw schema_error("incompat", "expected an object keyed by vertex");
        for (auto & [key, pairs] : inc.items()) {
            auto field = "incompat[\"" + key + "\"]";
            size_t used = 0;
            unsigned long long vv = 0;
            try {
                vv = std::stoull(key, &used);
            }
            catch (const std::exception &) {
                used = 0;
            }
            if (used != key.size() || key.empty() || vv >= n)
                throw schema_error(field, "key is not a vertex id");
            auto v = Vertex(vv);
            if (! pairs.is_array())
                throw schema_error(field, "expected an array of edge pairs");
            for (size_t i = 0; i < pairs.size(); ++i) {
                auto pf = field + "[" + to_string(i) + "]";
                auto & pr = pairs[i];
                if (! pr.is_array() || pr.size() != 2)
                    throw schema_error(pf, "malformed pair: expected [[a, b], [c, d]]");
                EdgeId ids[2];
                for (size_t j = 0; j < 2; ++j) {
                    auto [a, b] = as_vertex_pair(pr[j], pf + "[" + to_string(j) + "]", n);
                    ids[j] = g.edge_id(a, b);
                    if (ids[j] == no_edge)
                        throw schema_error(pf + "[" + to_string(j) + "]", "edge not in graph");
                }
                try {
                    result.system.add_pair(g, v, ids[0], ids[1]);
                }
                catch (const Error & e) {
                    throw schema_error(pf, "pair does not meet exactly at vertex " + key);
                }
            }
        }
    }

    if (doc.contains("metadata")) {
        if (! doc["metadata"].is_object())
            throw schema_error("metadata", "expected an object");
        result.metadata = doc["metadata"];
    }
    return result;
}

auto ihs::emit_instance(const Instance & instance) -> string
{
    auto & g = instance.graph;
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": " << instance_format_version << ",\n";
    out << "  \"n\": " << g.order() << ",\n";

    if (g.size() == 0)
        out << "  \"edges\": [],\n";
    else {
        out << "  \"edges\": [\n";
        for (size_t i = 0; i < g.size(); ++i)
            out << "    " << edge_text(g.edges()[i]) << (i + 1 < g.size() ? ",\n" : "\n");
        out << "  ],\n";
    }

    vector<pair<Vertex, vector<EdgePair>>> families;
    for (Vertex v = 0; v < g.order(); ++v) {
        auto pairs = instance.system.pairs_at(g, v);
        if (! pairs.empty())
            families.emplace_back(v, std::move(pairs));
    }
    if (families.empty())
        out << "  \"incompat\": {},\n";
    else {
        out << "  \"incompat\": {\n";
        for (size_t f = 0; f < families.size(); ++f) {
            auto & [v, pairs] = families[f];
            out << "    \"" << v << "\": [\n";
            for (size_t i = 0; i < pairs.size(); ++i)
                out << "      [" << edge_text(g.edge(pairs[i].first)) << ", " << edge_text(g.edge(pairs[i].second)) << "]"
                    << (i + 1 < pairs.size() ? ",\n" : "\n");
            out << "    ]" << (f + 1 < families.size() ? ",\n" : "\n");
        }
        out << "  },\n";
    }

    auto metadata = instance.metadata.is_object() ? instance.metadata : json::object();
    out << "  \"metadata\": " << metadata.dump() << "\n";
    out << "}\n";
    return out.str();
}

auto ihs::read_instance_file(const string & path) -> Instance
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw Error(ErrorKind::Schema, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

auto ihs::to_json(const BaseSequence & seq) -> json
{
    return json{{"kind", seq.kind == SequenceKind::Cycle ? "cycle" : "path"}, {"vertices", seq.vertices}};
}

auto ihs::to_json(const SolveOutcome & outcome) -> json
{
    json j{{"status", to_string(outcome.status)}, {"nodes_expanded", outcome.nodes_expanded}};
    j["witness"] = outcome.witness ? to_json(*outcome.witness) : json(nullptr);
    return j;
}

auto ihs::to_json(const PipelineReport & report) -> json
{
    auto & p = report.params;
    json params{
        {"k", report.k},
        {"gamma", report.gamma},
        {"mu_bound", report.mu_bound},
        {"seed", report.seed},
        {"p", p.p},
        {"tau", p.tau},
        {"min_segment", p.min_segment ? json(*p.min_segment) : json(3 * (report.k + 1))},
        {"max_interior", p.max_interior ? json(*p.max_interior) : json(3 * report.k + 6)},
        {"beta", p.beta},
        {"reservoir_min_mates", p.reservoir_min_mates},
        {"max_retries", p.max_retries},
        {"greedy_restarts", p.greedy_restarts},
        {"min_clique_extensions", p.min_clique_extensions},
        {"enforce_avoid_guard", p.enforce_avoid_guard}
    };

    json stages = json::array();
    for (auto & s : report.stages)
        stages.push_back(json{{"stage", s.stage}, {"vertices", s.vertices}, {"detail", s.detail}});

    json outcome;
    if (report.certificate)
        outcome = json{{"result", "certificate"}, {"certificate", to_json(*report.certificate)}};
    else if (report.failure)
        outcome = json{{"result", "failure"}, {"stage", report.failure->stage}, {"reason", report.failure->reason}};

    return json{{"parameters", params}, {"stages", stages}, {"outcome", outcome}};
}
