#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gmr {

enum class ErrorKind {
    InvalidArgument,
    InvalidGraph,
    InvalidNumber,
    InvalidModel,
    MissingVertex,
    MissingEdge,
    LabelCollision,
    FingerprintMismatch,
    SequenceInvalid,
    CapExceeded,
    MemoryBudgetExceeded,
    ZeroPartition,
    BadState,
    BadEpsilon,
    DOutOfRange,
    WideClause,
    Malformed,
    InvalidChains,
    NotPlanar,
    GridEmbedNotFound,
    Io,
};

inline auto to_string(ErrorKind kind) -> std::string_view
{
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InvalidNumber: return "InvalidNumber";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::MissingVertex: return "MissingVertex";
        case ErrorKind::MissingEdge: return "MissingEdge";
        case ErrorKind::LabelCollision: return "LabelCollision";
        case ErrorKind::FingerprintMismatch: return "FingerprintMismatch";
        case ErrorKind::SequenceInvalid: return "SequenceInvalid";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::MemoryBudgetExceeded: return "MemoryBudgetExceeded";
        case ErrorKind::ZeroPartition: return "ZeroPartition";
        case ErrorKind::BadState: return "BadState";
        case ErrorKind::BadEpsilon: return "BadEpsilon";
        case ErrorKind::DOutOfRange: return "DOutOfRange";
        case ErrorKind::WideClause: return "WideClause";
        case ErrorKind::Malformed: return "Malformed";
        case ErrorKind::InvalidChains: return "InvalidChains";
        case ErrorKind::NotPlanar: return "NotPlanar";
        case ErrorKind::GridEmbedNotFound: return "GridEmbedNotFound";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure the library reports is an `Error` carrying a machine-checkable kind.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string & message) :
        std::runtime_error(std::string(to_string(kind)) + ": " + message),
        _kind(kind)
    {
    }

    auto kind() const noexcept -> ErrorKind { return _kind; }

  private:
    ErrorKind _kind;
};

/// A minor operation failed while replaying a sequence; `op_index` is zero-based.
class SequenceError : public Error
{
  public:
    SequenceError(ErrorKind kind, std::size_t op_index, const std::string & message) :
        Error(kind, "op " + std::to_string(op_index) + ": " + message),
        _op_index(op_index)
    {
    }

    auto op_index() const noexcept -> std::size_t { return _op_index; }

  private:
    std::size_t _op_index;
};

/// Failure of one named stage of the reduction pipeline.
class StageError : public Error
{
  public:
    StageError(ErrorKind kind, std::string stage, const std::string & message) :
        Error(kind, "stage " + stage + ": " + message),
        _stage(std::move(stage))
    {
    }

    auto stage() const noexcept -> const std::string & { return _stage; }

  private:
    std::string _stage;
};

} // namespace gmr
