#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckeval/java_lexer.hpp"

namespace ckeval::java {

struct ParseDiagnostic {
    std::string path;
    int line = 1;
    int column = 1;
    std::string code;  // LEX_*, SYNTAX_ERROR, UNSUPPORTED
    std::string message;

    bool operator==(const ParseDiagnostic&) const = default;
};

std::string to_string(const ParseDiagnostic& d);

/// A type as written: dotted name with generic arguments and array dimensions
/// stripped. Primitive types and `void` keep their keyword.
struct TypeName {
    std::string name;
    int array_dims = 0;

    bool is_primitive() const { return is_primitive_type(name) || name == "void"; }
    bool operator==(const TypeName&) const = default;
};

struct ImportDecl {
    std::string name;  // without the trailing ".*"
    bool is_static = false;
    bool is_wildcard = false;

    bool operator==(const ImportDecl&) const = default;
};

struct FieldDecl {
    std::string name;
    TypeName type;
    bool is_static = false;
    int line = 1;

    bool operator==(const FieldDecl&) const = default;
};

struct Parameter {
    TypeName type;
    std::string name;

    bool operator==(const Parameter&) const = default;
};

struct MethodDecl {
    std::string name;
    bool is_constructor = false;
    bool is_static = false;
    std::vector<Parameter> parameters;
    std::optional<std::vector<Token>> body;  // tokens between the braces; nullopt when abstract
    int line = 1;

    bool operator==(const MethodDecl&) const = default;
};

struct ClassDecl {
    std::string name;
    bool is_interface = false;
    std::optional<TypeName> extends;  // classes only
    std::vector<TypeName> interfaces; // `implements` for classes, `extends` for interfaces
    std::vector<FieldDecl> fields;
    std::vector<MethodDecl> methods;
    int line = 1;
    int column = 1;

    bool operator==(const ClassDecl&) const = default;
};

struct SourceUnit {
    std::string path;
    std::string package_name;
    std::vector<ImportDecl> imports;
    std::vector<ClassDecl> classes;  // top-level declarations only

    std::string qualified_name(const ClassDecl& c) const {
        return package_name.empty() ? c.name : package_name + "." + c.name;
    }

    bool operator==(const SourceUnit&) const = default;
};

struct ParseResult {
    std::optional<SourceUnit> unit;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const noexcept { return unit.has_value(); }
};

/// Parses the supported Java subset. On failure `unit` is empty and the
/// diagnostics carry every lexical error, or the first syntax error.
/// Nested types and initializer blocks are parsed and dropped.
ParseResult parse_source(std::string_view text, std::string path);

} // namespace ckeval::java
