#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ckeval/errors.hpp"

namespace ckeval {

/// Class qualifier used for call targets the extractor could not resolve.
inline constexpr std::string_view kUnresolved = "<unresolved>";

/// Arity of a call whose argument count is unknown.
inline constexpr int kUnknownArity = -1;

struct FieldInfo {
    std::string name;
    std::optional<std::string> declared_type;
    bool is_static = false;

    bool operator==(const FieldInfo&) const = default;
};

/// A (class, method, arity) reference made from a method body.
struct MethodRef {
    std::string target_class;
    std::string method;
    int arity = kUnknownArity;

    bool resolved() const { return target_class != kUnresolved; }

    auto operator<=>(const MethodRef&) const = default;
    bool operator==(const MethodRef&) const = default;
};

struct MethodInfo {
    std::string name;
    int arity = 0;
    bool is_constructor = false;
    std::set<std::string> used_fields;
    std::set<MethodRef> called_methods;
    std::set<std::string> referenced_classes;

    bool operator==(const MethodInfo&) const = default;
};

struct ClassInfo {
    std::string qualified_name;
    std::optional<std::string> superclass;
    std::vector<std::string> interfaces;  // `implements` edges; never part of DIT/NOC
    std::vector<FieldInfo> fields;
    std::vector<MethodInfo> methods;
    bool is_external = false;
    bool is_interface = false;

    const FieldInfo* find_field(std::string_view name) const;
    bool declares_method(std::string_view name) const;

    bool operator==(const ClassInfo&) const = default;
};

/// Language-neutral project model. Immutable once constructed.
class ClassModel {
public:
    ClassModel() = default;
    ClassModel(std::string project_name, std::vector<ClassInfo> classes);

    const std::string& project_name() const noexcept { return project_name_; }
    std::span<const ClassInfo> classes() const noexcept { return classes_; }
    std::size_t size() const noexcept { return classes_.size(); }
    bool empty() const noexcept { return classes_.empty(); }

    /// First class with the given qualified name, or nullptr.
    const ClassInfo* find(std::string_view qualified_name) const;

    /// The superclass if it is a non-external class of this model.
    const ClassInfo* in_model_parent(const ClassInfo& c) const;

    /// True when `ancestor` is reachable from `c` by following extends edges.
    bool is_ancestor(const ClassInfo& ancestor, const ClassInfo& c) const;

    bool operator==(const ClassModel& other) const {
        return project_name_ == other.project_name_ && classes_ == other.classes_;
    }

private:
    std::string project_name_;
    std::vector<ClassInfo> classes_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Diagnostic codes produced by validate_model.
namespace diag {
inline constexpr std::string_view kDuplicateClass = "DUPLICATE_CLASS";
inline constexpr std::string_view kEmptyName = "EMPTY_NAME";
inline constexpr std::string_view kSelfSuperclass = "SELF_SUPERCLASS";
inline constexpr std::string_view kUnknownSuperclass = "UNKNOWN_SUPERCLASS";
inline constexpr std::string_view kUnknownInterface = "UNKNOWN_INTERFACE";
inline constexpr std::string_view kInheritanceCycle = "INHERITANCE_CYCLE";
inline constexpr std::string_view kExternalHasMembers = "EXTERNAL_HAS_MEMBERS";
inline constexpr std::string_view kExternalExtends = "EXTERNAL_EXTENDS";
inline constexpr std::string_view kDuplicateMethod = "DUPLICATE_METHOD";
inline constexpr std::string_view kDuplicateField = "DUPLICATE_FIELD";
inline constexpr std::string_view kUnknownField = "UNKNOWN_FIELD";
inline constexpr std::string_view kUnknownCallTarget = "UNKNOWN_CALL_TARGET";
inline constexpr std::string_view kUnknownReferencedClass = "UNKNOWN_REFERENCED_CLASS";
inline constexpr std::string_view kNegativeArity = "NEGATIVE_ARITY";
} // namespace diag

/// Checks every ClassModel invariant. Empty result means the model is valid.
/// Diagnostics are ordered by class position, then member position.
std::vector<Diagnostic> validate_model(const ClassModel& model);

/// Classes ordered so that every in-model superclass precedes its subclasses.
/// Ties keep model order. Throws InputError naming the cycle if one exists.
std::vector<const ClassInfo*> inheritance_order(const ClassModel& model);

/// Members of every inheritance cycle, each cycle listed from its smallest name.
std::vector<std::vector<std::string>> find_inheritance_cycles(const ClassModel& model);

} // namespace ckeval
