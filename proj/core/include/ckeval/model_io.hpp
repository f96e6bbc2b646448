#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ckeval/model.hpp"

namespace ckeval {

/// Schema version written to and required from class-model documents.
inline constexpr int kClassModelSchemaVersion = 1;

/// Parses and validates a class-model JSON document.
///
/// Throws InputError when the document violates the schema (the message names
/// the offending JSON pointer), contains an inheritance cycle (the message lists
/// the cycle), repeats a class name, or otherwise fails validate_model.
///
/// Calls without an explicit "arity" are normalized: if the target class
/// declares exactly one method of that name, its arity is used, otherwise the
/// call keeps kUnknownArity.
ClassModel load_class_model(std::string_view document);

ClassModel load_class_model_file(const std::filesystem::path& path);

/// Normalized document form: class order preserved, member sets sorted,
/// every optional key written explicitly. Indented with two spaces.
std::string serialize_class_model(const ClassModel& model);

/// Cheap sniff used by loaders that accept several document kinds.
bool looks_like_class_model(std::string_view document);

} // namespace ckeval
