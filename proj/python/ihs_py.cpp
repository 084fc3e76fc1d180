// Python bindings. Structured results (solver outcomes, pipeline reports) are
// handed over as the same JSON documents the command line tool prints.

#include <ihs/constructions.hpp>
#include <ihs/error.hpp>
#include <ihs/experiment.hpp>
#include <ihs/io.hpp>
#include <ihs/pipeline.hpp>
#include <ihs/solver.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;

using namespace ihs;

using nlohmann::json;
using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    auto to_python(const json & j) -> py::object
    {
        return py::module_::import("json").attr("loads")(j.dump());
    }

    auto options(std::uint64_t budget_nodes, double budget_secs, unsigned threads) -> SolveOptions
    {
        return SolveOptions{Budget{budget_nodes, budget_secs}, threads};
    }

    auto edge_ids(const Graph & g, const vector<pair<Vertex, Vertex>> & edges) -> vector<EdgeId>
    {
        vector<EdgeId> ids;
        for (auto & [a, b] : edges) {
            if (a >= g.order() || b >= g.order() || ! g.adjacent(a, b))
                throw Error(ErrorKind::InvalidEdge, "{" + std::to_string(a) + ", " + std::to_string(b) + "} is not an edge");
            ids.push_back(g.edge_id(a, b));
        }
        return ids;
    }

    auto sequence(const vector<Vertex> & vertices, bool cycle) -> BaseSequence
    {
        return BaseSequence{vertices, cycle ? SequenceKind::Cycle : SequenceKind::Path};
    }

    auto build(size_t n, const vector<pair<Vertex, Vertex>> & edges, const py::object & incompat,
            const py::object & metadata) -> Instance
    {
        auto dumps = py::module_::import("json").attr("dumps");
        json doc{{"format_version", instance_format_version}, {"n", n}, {"edges", edges}};
        doc["incompat"] = incompat.is_none() ? json::object() : json::parse(py::cast<string>(dumps(incompat)));
        if (! metadata.is_none())
            doc["metadata"] = json::parse(py::cast<string>(dumps(metadata)));
        return parse_instance(doc.dump());
    }
}

PYBIND11_MODULE(_ihs, m)
{
    m.doc() = "Compatible Hamilton powers under incompatibility systems";

    py::register_exception<Error>(m, "IhsError", PyExc_ValueError);

    py::class_<Instance>(m, "Instance")
        .def(py::init(&build), py::arg("n"), py::arg("edges"), py::arg("incompat") = py::none(),
                py::arg("metadata") = py::none(),
                "Build from an edge list and {vertex: [[[a, b], [c, d]], ...]} pairs")
        .def_static("from_json", [] (const string & text) { return parse_instance(text); })
        .def_static("read", &read_instance_file, py::arg("path"))
        .def_static("complete", [] (size_t n) {
            auto g = complete_graph(n);
            IncompatibilitySystem sys(g);
            return Instance{std::move(g), std::move(sys), json::object()};
        }, py::arg("n"))
        .def_static("random", &random_instance, py::arg("n"), py::arg("edge_probability"), py::arg("bound"),
                py::arg("seed"))
        .def_static("barrier", &barrier_instance, py::arg("k"), py::arg("n"))
        .def("to_json", &emit_instance)
        .def_property_readonly("n", [] (const Instance & i) { return i.graph.order(); })
        .def_property_readonly("edges", [] (const Instance & i) { return i.graph.edge_list(); })
        .def_property_readonly("min_degree", [] (const Instance & i) { return i.graph.min_degree(); })
        .def_property_readonly("boundedness", [] (const Instance & i) { return boundedness(i.system); })
        .def_property_readonly("pair_count", [] (const Instance & i) { return i.system.pair_count(); })
        .def_property_readonly("metadata", [] (const Instance & i) { return to_python(i.metadata); })
        .def("__repr__", [] (const Instance & i) {
            return "<ihs.Instance n=" + std::to_string(i.graph.order()) + " edges=" + std::to_string(i.graph.size()) +
                " pairs=" + std::to_string(i.system.pair_count()) + ">";
        });

    m.def("is_compatible", [] (const Instance & i, const vector<pair<Vertex, Vertex>> & edges) {
        auto ids = edge_ids(i.graph, edges);
        return is_compatible(i.graph, i.system, ids).compatible;
    }, py::arg("instance"), py::arg("edges"));

    m.def("check_power", [] (const Instance & i, const vector<Vertex> & vertices, size_t k, bool cycle, bool spanning) {
        auto base = sequence(vertices, cycle);
        auto verdict = spanning ? check_hamilton_power(i.graph, i.system, base, k)
            : check_power_witness(i.graph, i.system, base, k);
        return pair{verdict.valid, verdict.reason};
    }, py::arg("instance"), py::arg("vertices"), py::arg("k"), py::arg("cycle") = true, py::arg("spanning") = true,
    "Validate a power witness; returns (valid, reason)");

    m.def("solve_hamilton_power", [] (const Instance & i, size_t k, std::uint64_t budget_nodes, double budget_secs,
                unsigned threads) {
        return to_python(to_json(solve_power_hamilton(i.graph, i.system, k, options(budget_nodes, budget_secs, threads))));
    }, py::arg("instance"), py::arg("k"), py::arg("budget_nodes") = 0, py::arg("budget_secs") = 0.0,
    py::arg("threads") = 1);

    m.def("solve_clique_factor", [] (const Instance & i, size_t r, std::uint64_t budget_nodes, double budget_secs,
                unsigned threads) {
        return to_python(to_json(solve_clique_factor(i.graph, i.system, r, options(budget_nodes, budget_secs, threads))));
    }, py::arg("instance"), py::arg("r"), py::arg("budget_nodes") = 0, py::arg("budget_secs") = 0.0,
    py::arg("threads") = 1);

    m.def("connect_ends", [] (const Instance & i, const KTuple & e1, const KTuple & e2, const vector<Vertex> & avoid,
                size_t max_interior, std::uint64_t budget_nodes, double budget_secs) {
        return to_python(to_json(connect_ends(i.graph, i.system, e1, e2, avoid, max_interior,
                        Budget{budget_nodes, budget_secs})));
    }, py::arg("instance"), py::arg("e1"), py::arg("e2"), py::arg("avoid") = vector<Vertex>{},
    py::arg("max_interior") = 6, py::arg("budget_nodes") = 0, py::arg("budget_secs") = 0.0);

    m.def("count_mates", [] (const Instance & i, const KTuple & e) { return count_mates(i.graph, i.system, e); },
            py::arg("instance"), py::arg("e"));

    m.def("enumerate_mates", [] (const Instance & i, const KTuple & e, optional<size_t> limit) {
        return enumerate_mates(i.graph, i.system, e, limit);
    }, py::arg("instance"), py::arg("e"), py::arg("limit") = py::none());

    m.def("enumerate_absorbers", [] (const Instance & i, Vertex v, size_t k, double beta, optional<size_t> limit) {
        vector<vector<Vertex>> out;
        for (auto & a : enumerate_absorbers(i.graph, i.system, v, k, beta, limit))
            out.push_back(a.base.vertices);
        return out;
    }, py::arg("instance"), py::arg("v"), py::arg("k"), py::arg("beta") = 0.0, py::arg("limit") = py::none());

    m.def("count_copies", [] (const Instance & i, size_t pattern_n, const vector<pair<Vertex, Vertex>> & pattern_edges) {
        return count_compatible_copies(i.graph, i.system, Graph(pattern_n, pattern_edges));
    }, py::arg("instance"), py::arg("pattern_n"), py::arg("pattern_edges"));

    m.def("run_pipeline", [] (const Instance & i, size_t k, double gamma, std::uint64_t seed, double p, double tau,
                double beta, optional<size_t> min_segment, optional<size_t> max_interior, size_t max_retries) {
        PipelineParams params;
        params.p = p;
        params.tau = tau;
        params.beta = beta;
        params.min_segment = min_segment;
        params.max_interior = max_interior;
        params.max_retries = max_retries;
        return to_python(to_json(run_pipeline(i.graph, i.system, k, gamma, params, seed)));
    }, py::arg("instance"), py::arg("k"), py::arg("gamma") = 0.0, py::arg("seed") = 0,
    py::arg("p") = PipelineParams{}.p, py::arg("tau") = PipelineParams{}.tau, py::arg("beta") = PipelineParams{}.beta,
    py::arg("min_segment") = py::none(), py::arg("max_interior") = py::none(),
    py::arg("max_retries") = PipelineParams{}.max_retries);
}
