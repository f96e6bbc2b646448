#include "ckeval/java_lower.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ckeval::java {

namespace {

struct ClassEntry {
    const ClassDecl* decl = nullptr;
    const SourceUnit* unit = nullptr;
    std::string qualified_name;
};

std::string simple_name(std::string_view qualified) {
    auto dot = qualified.rfind('.');
    return std::string(dot == std::string_view::npos ? qualified : qualified.substr(dot + 1));
}

std::string written(const TypeName& t) {
    std::string s = t.name;
    for (int i = 0; i < t.array_dims; ++i) {
        s += "[]";
    }
    return s;
}

class Resolver {
public:
    explicit Resolver(std::span<const SourceUnit> units) {
        for (const auto& u : units) {
            for (const auto& c : u.classes) {
                std::string q = u.qualified_name(c);
                auto [it, inserted] = classes_.emplace(q, ClassEntry{&c, &u, q});
                if (!inserted) {
                    duplicates_.push_back(Diagnostic{std::string(diag::kDuplicateClass), q,
                                                     "declared in both " + it->second.unit->path + " and " +
                                                         u.path});
                }
            }
        }
    }

    const std::vector<Diagnostic>& duplicates() const { return duplicates_; }

    const ClassEntry* entry(std::string_view qualified) const {
        auto it = classes_.find(std::string(qualified));
        return it == classes_.end() ? nullptr : &it->second;
    }

    /// Qualified name for a type written in `unit`, or nullopt when unresolved.
    /// The result may name a type outside the sources (an imported one).
    std::optional<std::string> resolve(const SourceUnit& unit, std::string_view name) const {
        if (name.empty() || is_primitive_type(name) || name == "void" || name == "var") {
            return std::nullopt;
        }
        if (name.find('.') != std::string_view::npos) {
            if (entry(name) != nullptr) {
                return std::string(name);
            }
            return std::nullopt;
        }
        std::string same_package = unit.package_name.empty() ? std::string(name)
                                                             : unit.package_name + "." + std::string(name);
        if (entry(same_package) != nullptr) {
            return same_package;
        }
        for (const auto& imp : unit.imports) {
            if (!imp.is_static && !imp.is_wildcard && simple_name(imp.name) == name) {
                return imp.name;
            }
        }
        return std::nullopt;
    }

    /// Resolved superclass of a parsed class, possibly naming an external type.
    std::optional<std::string> superclass_of(const ClassEntry& c) const {
        if (!c.decl->extends) {
            return std::nullopt;
        }
        if (auto r = resolve(*c.unit, c.decl->extends->name)) {
            return r;
        }
        return c.decl->extends->name;
    }

    /// Nearest class starting at `start` (inclusive) that declares `method`.
    std::optional<std::string> declarer(const std::string& start, std::string_view method) const {
        std::string cur = start;
        for (std::size_t steps = 0; steps <= classes_.size(); ++steps) {
            const ClassEntry* e = entry(cur);
            if (e == nullptr) {
                return std::nullopt;
            }
            for (const auto& m : e->decl->methods) {
                if (m.name == method) {
                    return cur;
                }
            }
            auto sup = superclass_of(*e);
            if (!sup) {
                return std::nullopt;
            }
            cur = *sup;
        }
        return std::nullopt;
    }

    const std::map<std::string, ClassEntry>& classes() const { return classes_; }

private:
    std::map<std::string, ClassEntry> classes_;
    std::vector<Diagnostic> duplicates_;
};

/// Number of top-level comma-separated arguments in the call opening at `open`.
int argument_count(const std::vector<Token>& body, std::size_t open) {
    if (open + 1 < body.size() && body[open + 1].is_op(")")) {
        return 0;
    }
    int depth = 0;
    int commas = 0;
    for (std::size_t i = open; i < body.size(); ++i) {
        const Token& t = body[i];
        if (t.is_op("(") || t.is_op("[") || t.is_op("{")) {
            ++depth;
        } else if (t.is_op(")") || t.is_op("]") || t.is_op("}")) {
            if (--depth == 0) {
                break;
            }
        } else if (depth == 1 && t.is_op(",")) {
            ++commas;
        }
    }
    return commas + 1;
}

bool is_type_start(const Token& t) {
    return t.is_identifier() || (t.kind == TokenKind::Keyword && is_primitive_type(t.text));
}

class BodyScanner {
public:
    BodyScanner(const Resolver& resolver, const ClassEntry& self, const MethodDecl& method, MethodInfo& out,
                std::set<std::string>& stubs)
        : r_(resolver), self_(self), body_(*method.body), out_(out), stubs_(stubs) {
        for (const auto& p : method.parameters) {
            locals_[p.name] = p.type.array_dims > 0 ? std::string{} : p.type.name;
        }
        collect_lambda_parameters();
    }

    void run() {
        int depth = 0;
        int declaration_depth = -1;  // paren depth of the active local declaration
        for (std::size_t i = 0; i < body_.size();) {
            const Token& t = body_[i];
            const Token* prev = i > 0 ? &body_[i - 1] : nullptr;

            if (t.is_op("(") || t.is_op("[") || t.is_op("{")) {
                ++depth;
            } else if (t.is_op(")") || t.is_op("]") || t.is_op("}")) {
                --depth;
                if (depth < declaration_depth) {
                    declaration_depth = -1;
                }
            } else if (t.is_op(";") && depth <= declaration_depth) {
                declaration_depth = -1;
            }

            if (lambda_params_.contains(i)) {
                locals_[t.text] = {};
                ++i;
                continue;
            }
            if (prev != nullptr && (prev->is_op("@") || prev->is_op(".") || prev->is_op("::"))) {
                if (t.is_identifier() && prev->is_op(".") && i >= 2 &&
                    (body_[i - 2].is_op(")") || body_[i - 2].is_op("]")) && next_is(i, "(")) {
                    add_call(kUnresolved, t.text, argument_count(body_, i + 1));  // `).f(`
                }
                ++i;
                continue;
            }
            if (t.is_op(",") && declaration_depth >= 0 && depth == declaration_depth && i + 2 < body_.size() &&
                body_[i + 1].is_identifier() &&
                (body_[i + 2].is_op("=") || body_[i + 2].is_op(",") || body_[i + 2].is_op(";"))) {
                locals_[body_[i + 1].text] = declaration_type_;
                i += 2;
                continue;
            }
            if (auto after = local_declaration(i)) {
                declaration_depth = depth;
                i = *after;
                continue;
            }
            if (t.is_keyword("new")) {
                i = new_expression(i);
                continue;
            }
            if (t.is_keyword("this") || t.is_keyword("super")) {
                if (next_is(i, ".")) {
                    i = chain(i);
                } else {
                    ++i;  // `this(`/`super(` chaining and bare `this` are not recorded
                }
                continue;
            }
            if (t.is_identifier()) {
                if (next_is(i, "(")) {
                    bare_call(i);
                    ++i;
                } else if (next_is(i, ".")) {
                    i = chain(i);
                } else {
                    use_if_field(t.text);
                    ++i;
                }
                continue;
            }
            ++i;
        }
    }

private:
    bool next_is(std::size_t i, std::string_view op) const {
        return i + 1 < body_.size() && body_[i + 1].is_op(op);
    }

    bool is_local(const std::string& name) const { return locals_.contains(name); }

    const FieldDecl* own_field(const std::string& name) const {
        for (const auto& f : self_.decl->fields) {
            if (f.name == name) {
                return &f;
            }
        }
        return nullptr;
    }

    void use_if_field(const std::string& name) {
        if (!is_local(name) && own_field(name) != nullptr) {
            out_.used_fields.insert(name);
        }
    }

    void add_call(std::string_view target, const std::string& method, int arity) {
        std::string cls(target);
        if (cls != kUnresolved && r_.entry(cls) == nullptr) {
            stubs_.insert(cls);
        }
        out_.called_methods.insert(MethodRef{std::move(cls), method, arity});
    }

    void add_reference(const std::string& cls) {
        if (r_.entry(cls) != nullptr && cls != self_.qualified_name) {
            out_.referenced_classes.insert(cls);
        }
    }

    // `(a, b) ->` and `a ->`: parameters are locals from their position on.
    void collect_lambda_parameters() {
        for (std::size_t i = 1; i < body_.size(); ++i) {
            if (!body_[i].is_op("->")) {
                continue;
            }
            if (body_[i - 1].is_identifier()) {
                lambda_params_.insert(i - 1);
            } else if (body_[i - 1].is_op(")")) {
                int depth = 0;
                for (std::size_t j = i - 1; j-- > 0;) {
                    if (body_[j].is_op(")")) {
                        ++depth;
                    } else if (body_[j].is_op("(")) {
                        if (depth-- == 0) {
                            break;
                        }
                    } else if (depth == 0 && body_[j].is_identifier() &&
                               (body_[j + 1].is_op(",") || body_[j + 1].is_op(")"))) {
                        lambda_params_.insert(j);
                    }
                }
            }
        }
    }

    /// Reads a written type at `i`. Returns the index after it.
    std::optional<std::size_t> read_type(std::size_t i, std::string& name) const {
        if (i >= body_.size() || !is_type_start(body_[i])) {
            return std::nullopt;
        }
        name = body_[i].text;
        ++i;
        while (true) {
            if (i < body_.size() && body_[i].is_op("<")) {
                int depth = 0;
                for (; i < body_.size(); ++i) {
                    const Token& t = body_[i];
                    if (t.is_op("<")) {
                        ++depth;
                    } else if (t.is_op(">")) {
                        if (--depth == 0) {
                            break;
                        }
                    } else if (!(t.is_identifier() || t.is_op(",") || t.is_op(".") || t.is_op("?") ||
                                 t.is_op("[") || t.is_op("]") || t.is_op("&") || t.is_keyword("extends") ||
                                 t.is_keyword("super") ||
                                 (t.kind == TokenKind::Keyword && is_primitive_type(t.text)))) {
                        return std::nullopt;
                    }
                }
                if (i >= body_.size()) {
                    return std::nullopt;
                }
                ++i;
            }
            if (i + 1 < body_.size() && body_[i].is_op(".") && body_[i + 1].is_identifier()) {
                name += "." + body_[i + 1].text;
                i += 2;
                continue;
            }
            break;
        }
        while (i + 1 < body_.size() && body_[i].is_op("[") && body_[i + 1].is_op("]")) {
            name += "[]";
            i += 2;
        }
        return i;
    }

    // `Type name (=|;|,|:|))` declares a local. Returns the index after the name.
    std::optional<std::size_t> local_declaration(std::size_t i) {
        const Token& t = body_[i];
        if (!is_type_start(t) || t.text == "yield") {
            return std::nullopt;
        }
        std::string type;
        auto after = read_type(i, type);
        if (!after || *after >= body_.size() || !body_[*after].is_identifier()) {
            return std::nullopt;
        }
        std::size_t name_at = *after;
        std::size_t k = name_at + 1;
        while (k + 1 < body_.size() && body_[k].is_op("[") && body_[k + 1].is_op("]")) {
            k += 2;
        }
        if (k >= body_.size()) {
            return std::nullopt;
        }
        const Token& end = body_[k];
        if (!(end.is_op("=") || end.is_op(";") || end.is_op(",") || end.is_op(":") || end.is_op(")"))) {
            return std::nullopt;
        }
        declaration_type_ = type.find('[') == std::string::npos ? type : std::string{};
        locals_[body_[name_at].text] = declaration_type_;
        return name_at + 1;
    }

    std::size_t new_expression(std::size_t i) {
        std::size_t j = i + 1;
        if (j < body_.size() && body_[j].is_op("<")) {
            while (j < body_.size() && !body_[j].is_op(">")) {
                ++j;
            }
            ++j;
        }
        std::string type;
        auto after = read_type(j, type);
        if (!after) {
            return i + 1;
        }
        j = *after;
        if (j < body_.size() && body_[j].is_op("<")) {  // diamond
            j += body_[j + 1].is_op(">") ? 2 : 1;
        }
        if (type.find('[') != std::string::npos) {
            type.erase(type.find('['));
        }
        auto resolved = r_.resolve(*self_.unit, type);
        if (j < body_.size() && body_[j].is_op("(")) {
            if (resolved) {
                add_call(*resolved, simple_name(*resolved), argument_count(body_, j));
                add_reference(*resolved);
            } else {
                add_call(kUnresolved, simple_name(type), argument_count(body_, j));
            }
        } else if (resolved) {
            add_reference(*resolved);  // array creation
        }
        return j;
    }

    void bare_call(std::size_t i) {
        const std::string& name = body_[i].text;
        int arity = argument_count(body_, i + 1);
        if (auto owner = r_.declarer(self_.qualified_name, name)) {
            add_call(*owner, name, arity);
        } else {
            add_call(kUnresolved, name, arity);
        }
    }

    // Resolves the type a field of `cls` is declared with.
    std::optional<std::string> field_type(const std::string& cls, const std::string& field) const {
        const ClassEntry* e = r_.entry(cls);
        if (e == nullptr) {
            return std::nullopt;
        }
        for (const auto& f : e->decl->fields) {
            if (f.name == field && f.type.array_dims == 0) {
                return r_.resolve(*e->unit, f.type.name);
            }
        }
        return std::nullopt;
    }

    // Walks `head.a.b.f(` style chains. Returns the index after the last
    // identifier consumed.
    std::size_t chain(std::size_t i) {
        const Token& head = body_[i];
        std::optional<std::string> receiver;  // resolved type of the current receiver
        bool via_super = false;
        std::size_t j = i + 1;

        if (head.is_keyword("this")) {
            receiver = self_.qualified_name;
        } else if (head.is_keyword("super")) {
            via_super = true;
            if (self_.decl->extends) {
                receiver = r_.superclass_of(self_);
            }
        } else if (is_local(head.text)) {
            receiver = r_.resolve(*self_.unit, locals_.at(head.text));
        } else if (const FieldDecl* f = own_field(head.text)) {
            out_.used_fields.insert(head.text);
            if (f->type.array_dims == 0) {
                receiver = r_.resolve(*self_.unit, f->type.name);
            }
        } else if (auto t = r_.resolve(*self_.unit, head.text)) {
            receiver = t;
        } else {
            // Possibly a package-qualified class name: take the longest prefix
            // naming a parsed class.
            std::string name = head.text;
            std::size_t k = i + 1;
            while (k + 1 < body_.size() && body_[k].is_op(".") &&
                   body_[k + 1].is_identifier()) {
                name += "." + body_[k + 1].text;
                k += 2;
                if (r_.entry(name) != nullptr) {
                    receiver = name;
                    j = k;
                }
            }
        }

        while (j + 1 < body_.size() && body_[j].is_op(".") && body_[j + 1].is_identifier()) {
            const std::string& member = body_[j + 1].text;
            const std::size_t member_at = j + 1;
            if (next_is(member_at, "(")) {
                int arity = argument_count(body_, member_at + 1);
                if (!receiver) {
                    add_call(kUnresolved, member, arity);
                } else if (r_.entry(*receiver) == nullptr) {
                    add_call(*receiver, member, arity);  // external type
                } else if (auto owner = r_.declarer(*receiver, member)) {
                    add_call(*owner, member, arity);
                } else {
                    add_call(*receiver, member, arity);
                }
                if (receiver && !via_super) {
                    add_reference(*receiver);
                }
                return member_at + 1;
            }
            if (receiver && *receiver == self_.qualified_name && !via_super) {
                if (own_field(member) != nullptr) {
                    out_.used_fields.insert(member);
                }
            } else if (receiver && !via_super) {
                add_reference(*receiver);
            }
            receiver = receiver ? field_type(*receiver, member) : std::nullopt;
            via_super = false;
            j = member_at + 1;
        }
        return j;
    }

    const Resolver& r_;
    const ClassEntry& self_;
    const std::vector<Token>& body_;
    MethodInfo& out_;
    std::set<std::string>& stubs_;
    std::map<std::string, std::string> locals_;  // name -> written type ("" when unknown)
    std::string declaration_type_;
    std::unordered_set<std::size_t> lambda_params_;
};

void merge_into(MethodInfo& into, MethodInfo&& from) {
    into.used_fields.merge(from.used_fields);
    into.called_methods.merge(from.called_methods);
    into.referenced_classes.merge(from.referenced_classes);
}

} // namespace

ClassModel lower_to_model(std::span<const SourceUnit> units, std::string project_name,
                          std::vector<Diagnostic>* warnings) {
    Resolver resolver(units);
    if (!resolver.duplicates().empty()) {
        const auto& first = resolver.duplicates().front();
        throw InputError("class " + first.location + " " + first.message, resolver.duplicates());
    }

    std::set<std::string> stubs;
    std::vector<ClassInfo> classes;
    for (const auto& unit : units) {
        for (const auto& decl : unit.classes) {
            const ClassEntry& entry = *resolver.entry(unit.qualified_name(decl));
            ClassInfo info;
            info.qualified_name = entry.qualified_name;
            info.is_interface = decl.is_interface;
            if (auto sup = resolver.superclass_of(entry)) {
                info.superclass = *sup;
                if (resolver.entry(*sup) == nullptr) {
                    stubs.insert(*sup);
                }
            }
            for (const auto& iface : decl.interfaces) {
                std::string name = resolver.resolve(unit, iface.name).value_or(iface.name);
                if (resolver.entry(name) == nullptr) {
                    stubs.insert(name);
                }
                if (std::find(info.interfaces.begin(), info.interfaces.end(), name) == info.interfaces.end()) {
                    info.interfaces.push_back(std::move(name));
                }
            }
            for (const auto& f : decl.fields) {
                FieldInfo fi;
                fi.name = f.name;
                if (f.type.array_dims == 0) {
                    fi.declared_type = resolver.resolve(unit, f.type.name).value_or(f.type.name);
                } else {
                    fi.declared_type = written(f.type);
                }
                fi.is_static = f.is_static;
                info.fields.push_back(std::move(fi));
            }
            std::map<std::pair<std::string, int>, std::size_t> by_signature;
            for (const auto& m : decl.methods) {
                MethodInfo mi;
                mi.name = m.name;
                mi.arity = static_cast<int>(m.parameters.size());
                mi.is_constructor = m.is_constructor;
                if (m.body) {
                    BodyScanner(resolver, entry, m, mi, stubs).run();
                }
                auto key = std::make_pair(mi.name, mi.arity);
                if (auto it = by_signature.find(key); it != by_signature.end()) {
                    merge_into(info.methods[it->second], std::move(mi));
                    if (warnings != nullptr) {
                        warnings->push_back(Diagnostic{std::string(kMergedOverload),
                                                       unit.path + ":" + std::to_string(m.line),
                                                       "overloads of " + info.qualified_name + "." + m.name + "/" +
                                                           std::to_string(key.second) +
                                                           " share an arity and were merged"});
                    }
                    continue;
                }
                by_signature.emplace(key, info.methods.size());
                info.methods.push_back(std::move(mi));
            }
            classes.push_back(std::move(info));
        }
    }
    for (const auto& name : stubs) {
        ClassInfo stub;
        stub.qualified_name = name;
        stub.is_external = true;
        classes.push_back(std::move(stub));
    }

    ClassModel model(std::move(project_name), std::move(classes));
    if (auto problems = validate_model(model); !problems.empty()) {
        std::string summary = to_string(problems.front());
        throw InputError(summary, std::move(problems));
    }
    return model;
}

std::vector<std::filesystem::path> discover_sources(std::span<const std::filesystem::path> roots) {
    namespace fs = std::filesystem;
    std::set<fs::path> found;
    for (const auto& root : roots) {
        std::error_code ec;
        if (!fs::exists(root, ec)) {
            throw InputError("source root does not exist: " + root.string());
        }
        if (fs::is_regular_file(root, ec)) {
            found.insert(root.lexically_normal());
            continue;
        }
        for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
             it != fs::recursive_directory_iterator(); it.increment(ec)) {
            if (ec) {
                throw InputError("cannot scan " + root.string() + ": " + ec.message());
            }
            if (it->is_regular_file(ec) && it->path().extension() == ".java") {
                found.insert(it->path().lexically_normal());
            }
        }
        if (ec) {
            throw InputError("cannot scan " + root.string() + ": " + ec.message());
        }
    }
    return {found.begin(), found.end()};
}

SourceAnalysis analyze_sources(std::span<const std::filesystem::path> roots, std::string project_name,
                               bool strict) {
    SourceAnalysis out;
    out.files = discover_sources(roots);
    std::vector<SourceUnit> units;
    for (const auto& file : out.files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            throw InputError("cannot read " + file.string());
        }
        std::ostringstream text;
        text << in.rdbuf();
        ParseResult parsed = parse_source(text.str(), file.generic_string());
        if (parsed.ok()) {
            units.push_back(std::move(*parsed.unit));
        } else {
            ++out.skipped_files;
            out.parse_errors.insert(out.parse_errors.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
        }
    }
    if (strict && !out.parse_errors.empty()) {
        std::vector<Diagnostic> diags;
        for (const auto& d : out.parse_errors) {
            diags.push_back(Diagnostic{d.code, d.path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column),
                                       d.message});
        }
        throw InputError(to_string(out.parse_errors.front()), std::move(diags));
    }
    out.model = lower_to_model(units, std::move(project_name), &out.warnings);
    return out;
}

} // namespace ckeval::java
