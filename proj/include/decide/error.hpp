#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace decide {

enum class ErrorCode {
    EmptyQuery,
    SourceUnavailable,
    SchemaMismatch,
    ParseError,
    DuplicateId,
    UnsupportedLanguage,
    EmptyCorpus,
    EmptyPhrase,
    InvalidThreshold,
    TimestampBeforeEpoch,
    EmptyInput,
    NonpositiveCanvas,
    InvalidWeight,
    CannotFit,
    InvalidConfig,
    UnknownTopic,
    ExpiredQueryCache,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyPhrase: return "EmptyPhrase";
    case ErrorCode::InvalidThreshold: return "InvalidThreshold";
    case ErrorCode::TimestampBeforeEpoch: return "TimestampBeforeEpoch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonpositiveCanvas: return "NonpositiveCanvas";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::CannotFit: return "CannotFit";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownTopic: return "UnknownTopic";
    case ErrorCode::ExpiredQueryCache: return "ExpiredQueryCache";
    }
    return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
/// Record-level failures (corpus parsing) also carry the 1-based line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(format(code, message, line)), code_(code), line_(line)
    {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    static std::string format(ErrorCode code, const std::string& message, std::optional<std::size_t> line)
    {
        std::string out(to_string(code));
        if (line)
            out += "(line " + std::to_string(*line) + ")";
        if (!message.empty())
            out += ": " + message;
        return out;
    }

    ErrorCode code_;
    std::optional<std::size_t> line_;
};

} // namespace decide
