#include "hypertest/error.hpp"

namespace hypertest {

std::string_view error_name(Errc code) noexcept {
  switch (code) {
    case Errc::RepeatedVertex: return "RepeatedVertex";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::EdgeTooSmall: return "EdgeTooSmall";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::InvalidWeightLaw: return "InvalidWeightLaw";
    case Errc::InvalidLayerSpec: return "InvalidLayerSpec";
    case Errc::ProbabilityOverflow: return "ProbabilityOverflow";
    case Errc::NotUniform: return "NotUniform";
    case Errc::OverlapOutOfRange: return "OverlapOutOfRange";
    case Errc::LengthTooSmall: return "LengthTooSmall";
    case Errc::TooLargeForOracle: return "TooLargeForOracle";
    case Errc::CountOverflow: return "CountOverflow";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::DegenerateRate: return "DegenerateRate";
    case Errc::NegativeRadicand: return "NegativeRadicand";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::DegenerateE: return "DegenerateE";
    case Errc::ZeroDensity: return "ZeroDensity";
    case Errc::ZeroTriangles: return "ZeroTriangles";
    case Errc::WeightNormViolation: return "WeightNormViolation";
    case Errc::AllZeroDeltas: return "AllZeroDeltas";
    case Errc::MissingKappa: return "MissingKappa";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NoBracket: return "NoBracket";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::MissingLabels: return "MissingLabels";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

}  // namespace hypertest
