#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsusy {

enum class ErrorKind {
    ConstraintViolation,
    UnknownFamily,
    OutOfDomain,
    PoleEncountered,
    NotFlat,
    GridTooCoarse,
    ExplicitHbarModel,
    WrongModel,
    DivergentSeries,
    LevelOutOfRange,
    TableMismatch,
    TruncationUnsafe,
    NonConvergent,
    NonNormalizable,
    ConfigError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConstraintViolation: return "ConstraintViolation";
        case ErrorKind::UnknownFamily: return "UnknownFamily";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::PoleEncountered: return "PoleEncountered";
        case ErrorKind::NotFlat: return "NotFlat";
        case ErrorKind::GridTooCoarse: return "GridTooCoarse";
        case ErrorKind::ExplicitHbarModel: return "ExplicitHbarModel";
        case ErrorKind::WrongModel: return "WrongModel";
        case ErrorKind::DivergentSeries: return "DivergentSeries";
        case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
        case ErrorKind::TableMismatch: return "TableMismatch";
        case ErrorKind::TruncationUnsafe: return "TruncationUnsafe";
        case ErrorKind::NonConvergent: return "NonConvergent";
        case ErrorKind::NonNormalizable: return "NonNormalizable";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace dsusy
