#include "confrank/error.hpp"

namespace confrank {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedIssn: return "MalformedIssn";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::RowParseError: return "RowParseError";
    case Errc::UnknownEnumValue: return "UnknownEnumValue";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::DuplicateJoinKey: return "DuplicateJoinKey";
    case Errc::EmptyPopulation: return "EmptyPopulation";
    case Errc::PopulationTooSmall: return "PopulationTooSmall";
    case Errc::NoCategories: return "NoCategories";
    case Errc::NoPublications: return "NoPublications";
    case Errc::EmptyAssignments: return "EmptyAssignments";
    case Errc::EmptyAfterNormalization: return "EmptyAfterNormalization";
    case Errc::AmbiguousOverride: return "AmbiguousOverride";
    case Errc::UnknownReference: return "UnknownReference";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroScope: return "ZeroScope";
    case Errc::ZeroTotal: return "ZeroTotal";
    case Errc::CountExceedsTotal: return "CountExceedsTotal";
    case Errc::UnknownTrack: return "UnknownTrack";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace confrank
