#include "ckeval/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json_util.hpp"

namespace ckeval {

using detail::Json;
using detail::child;

namespace {

struct RawCall {
    std::string target;
    std::string method;
    std::optional<int> arity;
};

std::set<std::string> read_string_set(const Json& j, const std::string& path) {
    detail::expect_array(j, path);
    std::set<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.insert(detail::as_string(j[i], child(path, i)));
    }
    return out;
}

FieldInfo read_field(const Json& j, const std::string& path) {
    detail::expect_object(j, path);
    detail::expect_keys(j, path, {"name", "type", "static"});
    FieldInfo f;
    f.name = detail::as_string(detail::require_key(j, "name", path), child(path, "name"));
    if (const Json* t = detail::find_key(j, "type"); t != nullptr && !t->is_null()) {
        f.declared_type = detail::as_string(*t, child(path, "type"));
    }
    if (const Json* s = detail::find_key(j, "static")) {
        f.is_static = detail::as_bool(*s, child(path, "static"));
    }
    return f;
}

MethodInfo read_method(const Json& j, const std::string& path, std::vector<RawCall>& raw_calls) {
    detail::expect_object(j, path);
    detail::expect_keys(j, path, {"name", "arity", "constructor", "usesFields", "calls", "touchesClasses"});
    MethodInfo m;
    m.name = detail::as_string(detail::require_key(j, "name", path), child(path, "name"));
    m.arity = static_cast<int>(detail::as_integer(detail::require_key(j, "arity", path), child(path, "arity")));
    if (m.arity < 0) {
        detail::schema_error(child(path, "arity"), "arity must be non-negative");
    }
    if (const Json* c = detail::find_key(j, "constructor")) {
        m.is_constructor = detail::as_bool(*c, child(path, "constructor"));
    }
    if (const Json* u = detail::find_key(j, "usesFields")) {
        m.used_fields = read_string_set(*u, child(path, "usesFields"));
    }
    if (const Json* t = detail::find_key(j, "touchesClasses")) {
        m.referenced_classes = read_string_set(*t, child(path, "touchesClasses"));
    }
    if (const Json* calls = detail::find_key(j, "calls")) {
        const std::string cpath = child(path, "calls");
        detail::expect_array(*calls, cpath);
        for (std::size_t i = 0; i < calls->size(); ++i) {
            const std::string p = child(cpath, i);
            const Json& cj = detail::expect_object((*calls)[i], p);
            detail::expect_keys(cj, p, {"class", "method", "arity"});
            RawCall rc;
            const Json& cls = detail::require_key(cj, "class", p);
            rc.target = cls.is_null() ? std::string(kUnresolved) : detail::as_string(cls, child(p, "class"));
            rc.method = detail::as_string(detail::require_key(cj, "method", p), child(p, "method"));
            if (const Json* a = detail::find_key(cj, "arity"); a != nullptr && !a->is_null()) {
                long long arity = detail::as_integer(*a, child(p, "arity"));
                if (arity < kUnknownArity) {
                    detail::schema_error(child(p, "arity"), "arity must be >= -1");
                }
                rc.arity = static_cast<int>(arity);
            }
            raw_calls.push_back(std::move(rc));
        }
    }
    return m;
}

} // namespace

bool looks_like_class_model(std::string_view document) {
    auto pos = document.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (pos == std::string_view::npos || document[pos] != '{') {
        return false;
    }
    try {
        Json j = Json::parse(document.begin(), document.end());
        return j.is_object() && j.contains("classes") && !j.contains("kind");
    } catch (const nlohmann::json::exception&) {
        return false;
    }
}

ClassModel load_class_model(std::string_view document) {
    const Json root = detail::parse_json(document, "class-model document");
    detail::expect_object(root, "");
    detail::expect_keys(root, "", {"schemaVersion", "project", "classes"});
    detail::expect_schema_version(root, kClassModelSchemaVersion);

    std::string project;
    if (const Json* p = detail::find_key(root, "project")) {
        project = detail::as_string(*p, "/project");
    }

    const Json& classes_json = detail::expect_array(detail::require_key(root, "classes", ""), "/classes");
    std::vector<ClassInfo> classes;
    // Calls are read raw first; arity normalization needs the whole model.
    std::vector<std::vector<std::vector<RawCall>>> raw(classes_json.size());
    for (std::size_t ci = 0; ci < classes_json.size(); ++ci) {
        const std::string path = child("/classes", ci);
        const Json& cj = detail::expect_object(classes_json[ci], path);
        detail::expect_keys(cj, path, {"name", "extends", "implements", "external", "interface", "fields", "methods"});
        ClassInfo c;
        c.qualified_name = detail::as_string(detail::require_key(cj, "name", path), child(path, "name"));
        if (const Json* e = detail::find_key(cj, "extends"); e != nullptr && !e->is_null()) {
            c.superclass = detail::as_string(*e, child(path, "extends"));
        }
        if (const Json* im = detail::find_key(cj, "implements")) {
            const std::string ipath = child(path, "implements");
            detail::expect_array(*im, ipath);
            for (std::size_t i = 0; i < im->size(); ++i) {
                c.interfaces.push_back(detail::as_string((*im)[i], child(ipath, i)));
            }
        }
        if (const Json* ex = detail::find_key(cj, "external")) {
            c.is_external = detail::as_bool(*ex, child(path, "external"));
        }
        if (const Json* in = detail::find_key(cj, "interface")) {
            c.is_interface = detail::as_bool(*in, child(path, "interface"));
        }
        if (const Json* fs = detail::find_key(cj, "fields")) {
            const std::string fpath = child(path, "fields");
            detail::expect_array(*fs, fpath);
            for (std::size_t i = 0; i < fs->size(); ++i) {
                c.fields.push_back(read_field((*fs)[i], child(fpath, i)));
            }
        }
        if (const Json* ms = detail::find_key(cj, "methods")) {
            const std::string mpath = child(path, "methods");
            detail::expect_array(*ms, mpath);
            raw[ci].resize(ms->size());
            for (std::size_t i = 0; i < ms->size(); ++i) {
                c.methods.push_back(read_method((*ms)[i], child(mpath, i), raw[ci][i]));
            }
        }
        classes.push_back(std::move(c));
    }

    // Arity normalization against the declared methods of in-document classes.
    std::map<std::string, std::map<std::string, std::set<int>>> declared;
    for (const auto& c : classes) {
        for (const auto& m : c.methods) {
            declared[c.qualified_name][m.name].insert(m.arity);
        }
    }
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        for (std::size_t mi = 0; mi < classes[ci].methods.size(); ++mi) {
            for (auto& rc : raw[ci][mi]) {
                int arity = kUnknownArity;
                if (rc.arity) {
                    arity = *rc.arity;
                } else if (auto cit = declared.find(rc.target); cit != declared.end()) {
                    if (auto mit = cit->second.find(rc.method); mit != cit->second.end() && mit->second.size() == 1) {
                        arity = *mit->second.begin();
                    }
                }
                classes[ci].methods[mi].called_methods.insert(MethodRef{rc.target, rc.method, arity});
            }
        }
    }

    ClassModel model(std::move(project), std::move(classes));
    auto diagnostics = validate_model(model);
    if (!diagnostics.empty()) {
        std::string summary;
        for (const auto& d : diagnostics) {
            if (d.code == diag::kInheritanceCycle) {
                summary = to_string(d);
                break;
            }
        }
        if (summary.empty()) {
            summary = to_string(diagnostics.front());
        }
        throw InputError("invalid class model: " + summary, std::move(diagnostics));
    }
    return model;
}

ClassModel load_class_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read class-model file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_class_model(buf.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what(), e.diagnostics());
    }
}

std::string serialize_class_model(const ClassModel& model) {
    Json root = Json::object();
    root["schemaVersion"] = kClassModelSchemaVersion;
    root["project"] = model.project_name();
    Json classes = Json::array();
    for (const auto& c : model.classes()) {
        Json cj = Json::object();
        cj["name"] = c.qualified_name;
        cj["extends"] = c.superclass ? Json(*c.superclass) : Json(nullptr);
        cj["implements"] = c.interfaces;
        cj["external"] = c.is_external;
        cj["interface"] = c.is_interface;
        Json fields = Json::array();
        for (const auto& f : c.fields) {
            Json fj = Json::object();
            fj["name"] = f.name;
            fj["type"] = f.declared_type ? Json(*f.declared_type) : Json(nullptr);
            fj["static"] = f.is_static;
            fields.push_back(std::move(fj));
        }
        cj["fields"] = std::move(fields);
        Json methods = Json::array();
        for (const auto& m : c.methods) {
            Json mj = Json::object();
            mj["name"] = m.name;
            mj["arity"] = m.arity;
            mj["constructor"] = m.is_constructor;
            mj["usesFields"] = m.used_fields;
            Json calls = Json::array();
            for (const auto& call : m.called_methods) {
                Json callj = Json::object();
                callj["class"] = call.resolved() ? Json(call.target_class) : Json(nullptr);
                callj["method"] = call.method;
                callj["arity"] = call.arity;
                calls.push_back(std::move(callj));
            }
            mj["calls"] = std::move(calls);
            mj["touchesClasses"] = m.referenced_classes;
            methods.push_back(std::move(mj));
        }
        cj["methods"] = std::move(methods);
        classes.push_back(std::move(cj));
    }
    root["classes"] = std::move(classes);
    return detail::dump(root);
}

} // namespace ckeval
