#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypertest {

enum class Errc {
  // hypercore
  RepeatedVertex,
  VertexOutOfRange,
  EdgeTooSmall,
  DuplicateEdge,
  // genmodel
  InvalidDistribution,
  InvalidWeightLaw,
  InvalidLayerSpec,
  ProbabilityOverflow,
  // motifs
  NotUniform,
  OverlapOutOfRange,
  LengthTooSmall,
  TooLargeForOracle,
  CountOverflow,
  // stats
  DegenerateDenominator,
  DegenerateRate,
  NegativeRadicand,
  InvalidOrder,
  DegenerateE,
  ZeroDensity,
  ZeroTriangles,
  WeightNormViolation,
  AllZeroDeltas,
  MissingKappa,
  AlphaOutOfRange,
  InvalidArgument,
  // simlab
  NoBracket,
  InvalidConfig,
  // ingest
  ParseError,
  EmptyFile,
  MissingLabels,
  UnknownLabel,
  IoError,
};

/// Stable identifier for an error code, e.g. "ZeroDensity".
std::string_view error_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can report the condition by name.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypertest
