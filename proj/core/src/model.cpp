#include "ckeval/model.hpp"

#include <algorithm>
#include <unordered_set>

namespace ckeval {

const FieldInfo* ClassInfo::find_field(std::string_view name) const {
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const FieldInfo& f) { return f.name == name; });
    return it == fields.end() ? nullptr : &*it;
}

bool ClassInfo::declares_method(std::string_view name) const {
    return std::any_of(methods.begin(), methods.end(),
                       [&](const MethodInfo& m) { return m.name == name; });
}

ClassModel::ClassModel(std::string project_name, std::vector<ClassInfo> classes)
    : project_name_(std::move(project_name)), classes_(std::move(classes)) {
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        index_.emplace(classes_[i].qualified_name, i);  // first wins on duplicates
    }
}

const ClassInfo* ClassModel::find(std::string_view qualified_name) const {
    auto it = index_.find(qualified_name);
    return it == index_.end() ? nullptr : &classes_[it->second];
}

const ClassInfo* ClassModel::in_model_parent(const ClassInfo& c) const {
    if (!c.superclass) {
        return nullptr;
    }
    const ClassInfo* parent = find(*c.superclass);
    if (parent == nullptr || parent->is_external || parent == &c) {
        return nullptr;
    }
    return parent;
}

bool ClassModel::is_ancestor(const ClassInfo& ancestor, const ClassInfo& c) const {
    // Bounded walk so a malformed (cyclic) model cannot loop forever.
    const ClassInfo* cur = in_model_parent(c);
    for (std::size_t steps = 0; cur != nullptr && steps <= classes_.size(); ++steps) {
        if (cur == &ancestor) {
            return true;
        }
        cur = in_model_parent(*cur);
    }
    return false;
}

namespace {

std::string class_location(const ClassInfo& c, std::size_t index) {
    return c.qualified_name.empty() ? "classes[" + std::to_string(index) + "]" : c.qualified_name;
}

void add(std::vector<Diagnostic>& out, std::string_view code, std::string location,
         std::string message) {
    out.push_back(Diagnostic{std::string(code), std::move(location), std::move(message)});
}

} // namespace

std::vector<std::vector<std::string>> find_inheritance_cycles(const ClassModel& model) {
    // Each class has at most one superclass, so following the chain from every
    // node with colouring finds each cycle exactly once.
    enum class Mark { White, Grey, Black };
    std::vector<Mark> mark(model.size(), Mark::White);
    auto classes = model.classes();
    auto index_of = [&](const ClassInfo* c) { return static_cast<std::size_t>(c - classes.data()); };

    std::vector<std::vector<std::string>> cycles;
    for (std::size_t start = 0; start < classes.size(); ++start) {
        if (mark[start] != Mark::White) {
            continue;
        }
        std::vector<std::size_t> path;
        const ClassInfo* cur = &classes[start];
        while (cur != nullptr && mark[index_of(cur)] == Mark::White) {
            mark[index_of(cur)] = Mark::Grey;
            path.push_back(index_of(cur));
            cur = cur->superclass ? model.find(*cur->superclass) : nullptr;
        }
        if (cur != nullptr && mark[index_of(cur)] == Mark::Grey) {
            auto begin = std::find(path.begin(), path.end(), index_of(cur));
            std::vector<std::string> cycle;
            for (auto it = begin; it != path.end(); ++it) {
                cycle.push_back(classes[*it].qualified_name);
            }
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            cycles.push_back(std::move(cycle));
        }
        for (std::size_t i : path) {
            mark[i] = Mark::Black;
        }
    }
    return cycles;
}

std::vector<Diagnostic> validate_model(const ClassModel& model) {
    std::vector<Diagnostic> out;
    std::unordered_set<std::string> seen;
    auto classes = model.classes();

    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const ClassInfo& c = classes[ci];
        const std::string where = class_location(c, ci);

        if (c.qualified_name.empty()) {
            add(out, diag::kEmptyName, where, "class has an empty qualified name");
        } else if (!seen.insert(c.qualified_name).second) {
            add(out, diag::kDuplicateClass, where, "qualified name declared more than once");
        }

        if (c.superclass) {
            if (*c.superclass == c.qualified_name) {
                add(out, diag::kSelfSuperclass, where, "class lists itself as its superclass");
            } else if (model.find(*c.superclass) == nullptr) {
                add(out, diag::kUnknownSuperclass, where,
                    "superclass '" + *c.superclass + "' is neither in the model nor an external stub");
            }
        }
        for (const auto& iface : c.interfaces) {
            if (model.find(iface) == nullptr) {
                add(out, diag::kUnknownInterface, where,
                    "interface '" + iface + "' is neither in the model nor an external stub");
            }
        }

        if (c.is_external) {
            if (!c.methods.empty() || !c.fields.empty()) {
                add(out, diag::kExternalHasMembers, where, "external stubs carry no methods or fields");
            }
            if (c.superclass) {
                add(out, diag::kExternalExtends, where, "external stubs carry no extends edge");
            }
        }

        std::set<std::string, std::less<>> field_names;
        for (const auto& f : c.fields) {
            if (f.name.empty()) {
                add(out, diag::kEmptyName, where, "field with empty name");
            } else if (!field_names.insert(f.name).second) {
                add(out, diag::kDuplicateField, where + "." + f.name, "field declared more than once");
            }
        }

        std::set<std::pair<std::string, int>> signatures;
        for (const auto& m : c.methods) {
            const std::string mloc = where + "." + m.name + "/" + std::to_string(m.arity);
            if (m.name.empty()) {
                add(out, diag::kEmptyName, where, "method with empty name");
            }
            if (m.arity < 0) {
                add(out, diag::kNegativeArity, mloc, "declared arity is negative");
            }
            if (!signatures.emplace(m.name, m.arity).second) {
                add(out, diag::kDuplicateMethod, mloc, "method signature (name, arity) repeated");
            }
            for (const auto& used : m.used_fields) {
                if (!field_names.contains(used)) {
                    add(out, diag::kUnknownField, mloc,
                        "uses field '" + used + "' not declared in " + c.qualified_name);
                }
            }
            for (const auto& call : m.called_methods) {
                if (call.resolved() && model.find(call.target_class) == nullptr) {
                    add(out, diag::kUnknownCallTarget, mloc,
                        "call target class '" + call.target_class +
                            "' is not in the model and not marked unresolved");
                }
                if (call.arity < kUnknownArity) {
                    add(out, diag::kNegativeArity, mloc, "call arity below the unknown sentinel");
                }
            }
            for (const auto& ref : m.referenced_classes) {
                if (model.find(ref) == nullptr) {
                    add(out, diag::kUnknownReferencedClass, mloc,
                        "referenced class '" + ref + "' is not in the model");
                }
            }
        }
    }

    for (const auto& cycle : find_inheritance_cycles(model)) {
        if (cycle.size() == 1 && model.find(cycle.front()) &&
            model.find(cycle.front())->superclass == cycle.front()) {
            continue;  // already reported as SELF_SUPERCLASS
        }
        std::string members;
        for (const auto& name : cycle) {
            members += members.empty() ? name : " -> " + name;
        }
        add(out, diag::kInheritanceCycle, cycle.front(), "inheritance cycle: " + members);
    }
    return out;
}

std::vector<const ClassInfo*> inheritance_order(const ClassModel& model) {
    auto cycles = find_inheritance_cycles(model);
    if (!cycles.empty()) {
        std::string members;
        for (const auto& name : cycles.front()) {
            members += members.empty() ? name : ", " + name;
        }
        throw InputError("inheritance cycle among {" + members + "}");
    }
    std::vector<const ClassInfo*> order;
    order.reserve(model.size());
    std::unordered_set<const ClassInfo*> placed;
    // Emit each chain root-first; chains are acyclic so recursion depth is bounded.
    auto place = [&](auto&& self, const ClassInfo* c) -> void {
        if (placed.contains(c)) {
            return;
        }
        if (c->superclass) {
            if (const ClassInfo* parent = model.find(*c->superclass); parent != nullptr && parent != c) {
                self(self, parent);
            }
        }
        placed.insert(c);
        order.push_back(c);
    };
    for (const auto& c : model.classes()) {
        place(place, &c);
    }
    return order;
}

} // namespace ckeval
