#ifndef IHS_IO_HPP
#define IHS_IO_HPP 1

#include <ihs/graph.hpp>
#include <ihs/incompat.hpp>
#include <ihs/pipeline.hpp>
#include <ihs/solver.hpp>

#include <json.hpp>

#include <string>
#include <string_view>

namespace ihs
{
    inline constexpr int instance_format_version = 1;

    struct Instance
    {
        Graph graph;
        IncompatibilitySystem system;
        nlohmann::json metadata = nlohmann::json::object();
    };

    /// Reads the text instance format. Syntax errors report line and column,
    /// schema errors the offending field; both as Error(Schema). Edges in
    /// the file may come in any order; pairs must meet at their keyed vertex.
    auto parse_instance(std::string_view text) -> Instance;

    /// Canonical text form: edges ascending one per line, F_v listed by
    /// ascending v with pairs in edge-id order, metadata as one sorted line.
    /// parse_instance followed by emit_instance reproduces a canonical file
    /// byte for byte.
    auto emit_instance(const Instance & instance) -> std::string;

    auto read_instance_file(const std::string & path) -> Instance;

    auto to_json(const BaseSequence & seq) -> nlohmann::json;
    auto to_json(const SolveOutcome & outcome) -> nlohmann::json;
    auto to_json(const PipelineReport & report) -> nlohmann::json;
}

#endif
