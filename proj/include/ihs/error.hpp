#ifndef IHS_ERROR_HPP
#define IHS_ERROR_HPP 1

#include <stdexcept>
#include <string>
#include <string_view>

namespace ihs
{
    enum class ErrorKind
    {
        InvalidEdge,
        VertexOutOfRange,
        InvalidSequence,
        EdgeOutOfRange,
        InvalidPair,
        MissingColor,
        BadDivisibility,
        NotBipartite,
        NotACompatibleClique,
        PatternTooLarge,
        BadParams,
        ReservoirFailure,
        Schema
    };

    using std::to_string;

    auto to_string(ErrorKind kind) -> std::string_view;

    /// All library failures that are not data (solver outcomes, pipeline stage
    /// failures) are reported through this exception.
    class Error : public std::runtime_error
    {
        public:
            Error(ErrorKind kind, const std::string & message);

            auto kind() const noexcept -> ErrorKind { return _kind; }

        private:
            ErrorKind _kind;
    };
}

#endif
