#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ckeval/errors.hpp"
#include "ckeval/java_parser.hpp"
#include "ckeval/model.hpp"

namespace ckeval::java {

/// Warning codes emitted while lowering.
inline constexpr std::string_view kMergedOverload = "MERGED_OVERLOAD";

/// Builds a validated ClassModel from parsed units. Names in method bodies are
/// resolved as local variable types, own fields, same-package classes, then
/// single-type imports; anything else becomes the unresolved sentinel.
/// Superclasses and interfaces outside the sources become external stubs, as do
/// imported types that receive calls.
///
/// Throws InputError on a class declared in two units or an inheritance cycle.
/// Overloads sharing (name, arity) are merged; each merge is appended to
/// `warnings` when given.
ClassModel lower_to_model(std::span<const SourceUnit> units, std::string project_name = {},
                          std::vector<Diagnostic>* warnings = nullptr);

/// `.java` files under each root (or the root itself when it is a file),
/// sorted and de-duplicated. Throws InputError for a root that does not exist.
std::vector<std::filesystem::path> discover_sources(std::span<const std::filesystem::path> roots);

struct SourceAnalysis {
    ClassModel model;
    std::vector<std::filesystem::path> files;    // every discovered file
    std::vector<ParseDiagnostic> parse_errors;   // from skipped files
    std::vector<Diagnostic> warnings;
    std::size_t skipped_files = 0;
};

/// discover_sources + parse_source + lower_to_model. Files that fail to parse
/// are skipped and reported unless `strict`, in which case InputError is thrown
/// once every file has been parsed, carrying all parse diagnostics.
SourceAnalysis analyze_sources(std::span<const std::filesystem::path> roots, std::string project_name,
                               bool strict);

} // namespace ckeval::java
