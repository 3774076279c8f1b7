#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpw {

/// Failure categories raised by the library. The CLI maps each kind to an
/// exit code; see README for the table.
enum class ErrorKind {
  kSingularOnCircle,
  kZeroC,
  kSingularGauge,
  kBranchPointHit,
  kStepUnderflow,
  kPathTooClose,
  kOverflowOfLogPower,
  kNotPositive,
  kCellBoundary,
  kNotInBigCell,
  kNotUnitary,
  kSingular,
  kDegenerateMetric,
  kIo,
  kParse,
  kInvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSingularOnCircle: return "SingularOnCircle";
    case ErrorKind::kZeroC: return "ZeroC";
    case ErrorKind::kSingularGauge: return "SingularGauge";
    case ErrorKind::kBranchPointHit: return "BranchPointHit";
    case ErrorKind::kStepUnderflow: return "StepUnderflow";
    case ErrorKind::kPathTooClose: return "PathTooClose";
    case ErrorKind::kOverflowOfLogPower: return "OverflowOfLogPower";
    case ErrorKind::kNotPositive: return "NotPositive";
    case ErrorKind::kCellBoundary: return "CellBoundary";
    case ErrorKind::kNotInBigCell: return "NotInBigCell";
    case ErrorKind::kNotUnitary: return "NotUnitary";
    case ErrorKind::kSingular: return "Singular";
    case ErrorKind::kDegenerateMetric: return "DegenerateMetric";
    case ErrorKind::kIo: return "IO";
    case ErrorKind::kParse: return "Parse";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace dpw
