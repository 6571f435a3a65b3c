#pragma once

#include <stdexcept>
#include <string>

namespace eap {

    /// Base class of every error raised by the library.
    class Error : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Malformed input file. Carries the 1-based line and column of the offending field.
    class ParseError : public Error {
    public:
        ParseError(const std::string& msg, std::size_t line, std::size_t column)
            : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
              line_(line), column_(column) {}

        [[nodiscard]] std::size_t line() const noexcept { return line_; }
        [[nodiscard]] std::size_t column() const noexcept { return column_; }

    private:
        std::size_t line_;
        std::size_t column_;
    };

    class EmptyDatasetError : public Error { public: using Error::Error; };

    /// Input too short (or otherwise degenerate) for the requested transform.
    class DegenerateInputError : public Error { public: using Error::Error; };

    /// Invalid distance specification or unsupported configuration.
    class SpecError : public Error { public: using Error::Error; };

    /// Length mismatch between arguments.
    class DimensionError : public Error { public: using Error::Error; };

    class SearchError : public Error { public: using Error::Error; };

} // namespace eap
