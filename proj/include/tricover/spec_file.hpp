#pragma once

// Reader for the line-oriented construction spec format ("tricover-spec 1").
// The grammar is documented in docs/spec-format.md.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "tricover/constructions.hpp"

namespace tricover {

struct SpecFile {
  std::string name;
  BlowupSurface surface;
  /// Declared L classes (all eight when a branch is present).
  PerLabel<std::optional<DivisorClass>> L;
  /// Present when the file has a [branch] section.
  std::optional<ConstructionSpec> construction;
  std::optional<int> trials;
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> seed;

  /// Resolves L<chi> and D<sigma> (the branch class before resolutions).
  NameResolver resolver() const;
};

/// Throws InputError with the offending line number.
SpecFile parse_spec(std::string_view text, const std::string& origin = "<input>");

/// Reads and parses a file; unreadable files raise InputError.
SpecFile load_spec(const std::filesystem::path& path);

}  // namespace tricover
