#pragma once

// Schema-checking helpers over nlohmann::json shared by the document loaders.
// Every failure throws InputError with the JSON pointer of the offending value.

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ckeval/errors.hpp"

namespace ckeval::detail {

using Json = nlohmann::ordered_json;

inline Json parse_json(std::string_view text, std::string_view what) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string(what) + ": malformed JSON: " + e.what());
    }
}

[[noreturn]] inline void schema_error(const std::string& path, const std::string& message) {
    throw InputError("schema violation at " + (path.empty() ? std::string("/") : path) + ": " + message,
                     {Diagnostic{"SCHEMA", path.empty() ? "/" : path, message}});
}

inline std::string child(const std::string& path, std::string_view key) {
    return path + "/" + std::string(key);
}

inline std::string child(const std::string& path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

inline const Json& expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    return j;
}

inline const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        schema_error(path, "expected an array");
    }
    return j;
}

/// Rejects keys outside `allowed`, catching misspelt optional fields.
inline void expect_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (auto a : allowed) {
            ok = ok || item.key() == a;
        }
        if (!ok) {
            schema_error(child(path, item.key()), "unknown key");
        }
    }
}

inline const Json* find_key(const Json& obj, std::string_view key) {
    auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

inline const Json& require_key(const Json& obj, std::string_view key, const std::string& path) {
    const Json* v = find_key(obj, key);
    if (v == nullptr) {
        schema_error(child(path, key), "required key missing");
    }
    return *v;
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) {
        schema_error(path, "expected a string");
    }
    return j.get<std::string>();
}

inline bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) {
        schema_error(path, "expected a boolean");
    }
    return j.get<bool>();
}

inline long long as_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) {
        return j.get<long long>();
    }
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (v == static_cast<double>(static_cast<long long>(v))) {
            return static_cast<long long>(v);
        }
    }
    schema_error(path, "expected an integer");
}

inline double as_number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    return j.get<double>();
}

inline void expect_schema_version(const Json& obj, int version, const std::string& path = "") {
    const Json& v = require_key(obj, "schemaVersion", path);
    if (as_integer(v, child(path, "schemaVersion")) != version) {
        schema_error(child(path, "schemaVersion"), "unsupported schema version (expected " +
                                                       std::to_string(version) + ")");
    }
}

inline std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

} // namespace ckeval::detail
