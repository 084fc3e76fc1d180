#include <ihs/error.hpp>

using namespace ihs;

auto ihs::to_string(ErrorKind kind) -> std::string_view
{
    switch (kind) {
        case ErrorKind::InvalidEdge: return "InvalidEdge";
        case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
        case ErrorKind::InvalidSequence: return "InvalidSequence";
        case ErrorKind::EdgeOutOfRange: return "EdgeOutOfRange";
        case ErrorKind::InvalidPair: return "InvalidPair";
        case ErrorKind::MissingColor: return "MissingColor";
        case ErrorKind::BadDivisibility: return "BadDivisibility";
        case ErrorKind::NotBipartite: return "NotBipartite";
        case ErrorKind::NotACompatibleClique: return "NotACompatibleClique";
        case ErrorKind::PatternTooLarge: return "PatternTooLarge";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::ReservoirFailure: return "ReservoirFailure";
        case ErrorKind::Schema: return "Schema";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string & message) :
    std::runtime_error(std::string(to_string(kind)) + ": " + message),
    _kind(kind)
{
}
