#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace confrank {

enum class Errc {
  MalformedIssn,
  ChecksumMismatch,
  MissingColumn,
  RowParseError,
  UnknownEnumValue,
  EmptyFile,
  DuplicateJoinKey,
  EmptyPopulation,
  PopulationTooSmall,
  NoCategories,
  NoPublications,
  EmptyAssignments,
  EmptyAfterNormalization,
  AmbiguousOverride,
  UnknownReference,
  DegenerateInput,
  InvalidArgument,
  ZeroScope,
  ZeroTotal,
  CountExceedsTotal,
  UnknownTrack,
  EmptySeries,
  IoFailure,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure the library reports. I/O problems use Errc::IoFailure; all
// other codes are contract violations of the input data or arguments.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }
  bool is_io() const noexcept { return code_ == Errc::IoFailure; }

 private:
  Errc code_;
};

}  // namespace confrank
