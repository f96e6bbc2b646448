#include "generators.hpp"

#include <algorithm>
#include <set>

namespace ckeval::testing {

namespace {

int uniform(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

} // namespace

ClassInfo random_cohesion_class(Rng& rng, int max_methods, int max_fields) {
    ClassInfo c;
    c.qualified_name = "gen.Cohesion";
    const int fields = uniform(rng, 0, max_fields);
    for (int f = 0; f < fields; ++f) {
        c.fields.push_back(FieldInfo{"f" + std::to_string(f), "int", chance(rng, 0.2)});
    }
    const int methods = uniform(rng, 0, max_methods);
    for (int m = 0; m < methods; ++m) {
        MethodInfo mi;
        mi.name = "m" + std::to_string(m);
        mi.arity = uniform(rng, 0, 2);
        for (const auto& f : c.fields) {
            if (chance(rng, 0.35)) {
                mi.used_fields.insert(f.name);
            }
        }
        c.methods.push_back(std::move(mi));
    }
    return c;
}

ClassModel random_model(Rng& rng, const ModelShape& shape) {
    std::vector<ClassInfo> classes;
    std::vector<std::string> stubs;
    for (int s = 0; s < shape.external_stubs; ++s) {
        stubs.push_back("ext.Base" + std::to_string(s));
    }
    const int n = uniform(rng, 0, shape.max_classes);
    for (int i = 0; i < n; ++i) {
        ClassInfo c;
        c.qualified_name = (i % 2 == 0 ? "gen.a.C" : "gen.b.C") + std::to_string(i);
        c.is_interface = i > 0 && chance(rng, 0.1);
        if (!c.is_interface) {
            const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
            std::vector<int> parents;
            for (int j = 0; j < i; ++j) {
                if (!classes[static_cast<std::size_t>(j)].is_interface) {
                    parents.push_back(j);
                }
            }
            if (roll < 0.55 && !parents.empty()) {
                c.superclass = classes[static_cast<std::size_t>(pick(rng, parents))].qualified_name;
            } else if (roll < 0.7 && !stubs.empty()) {
                c.superclass = pick(rng, stubs);
            }
            for (int j = 0; j < i; ++j) {
                const auto& other = classes[static_cast<std::size_t>(j)];
                if (other.is_interface && chance(rng, 0.3)) {
                    c.interfaces.push_back(other.qualified_name);
                }
            }
            const int fields = uniform(rng, 0, shape.max_fields);
            for (int f = 0; f < fields; ++f) {
                c.fields.push_back(FieldInfo{"f" + std::to_string(f), std::nullopt, chance(rng, 0.15)});
            }
        }
        const int methods = uniform(rng, 0, shape.max_methods);
        for (int m = 0; m < methods; ++m) {
            MethodInfo mi;
            mi.name = "m" + std::to_string(m);
            mi.arity = uniform(rng, 0, 3);
            mi.is_constructor = false;
            for (const auto& f : c.fields) {
                if (chance(rng, 0.4)) {
                    mi.used_fields.insert(f.name);
                }
            }
            c.methods.push_back(std::move(mi));
        }
        classes.push_back(std::move(c));
    }
    // Calls and references are added once every signature exists.
    for (auto& c : classes) {
        for (auto& m : c.methods) {
            const int calls = uniform(rng, 0, 4);
            for (int k = 0; k < calls; ++k) {
                if (classes.empty() || chance(rng, 0.15)) {
                    m.called_methods.insert(MethodRef{std::string(kUnresolved), "ext" + std::to_string(k), k % 3});
                    continue;
                }
                const auto& target = classes[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(classes.size()) - 1))];
                if (target.methods.empty()) {
                    continue;
                }
                const auto& tm = pick(rng, target.methods);
                m.called_methods.insert(MethodRef{target.qualified_name, tm.name, tm.arity});
            }
            if (!classes.empty() && chance(rng, 0.25)) {
                m.referenced_classes.insert(
                    classes[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(classes.size()) - 1))].qualified_name);
            }
            if (!stubs.empty() && chance(rng, 0.1)) {
                m.called_methods.insert(MethodRef{pick(rng, stubs), "lib", 0});
            }
        }
    }
    for (const auto& s : stubs) {
        ClassInfo stub;
        stub.qualified_name = s;
        stub.is_external = true;
        classes.push_back(std::move(stub));
    }
    return ClassModel("generated", std::move(classes));
}

ClassModel rename_classes(const ClassModel& model, const std::map<std::string, std::string>& rename) {
    auto map = [&](const std::string& name) {
        auto it = rename.find(name);
        return it == rename.end() ? name : it->second;
    };
    std::vector<ClassInfo> classes(model.classes().begin(), model.classes().end());
    for (auto& c : classes) {
        c.qualified_name = map(c.qualified_name);
        if (c.superclass) {
            c.superclass = map(*c.superclass);
        }
        for (auto& i : c.interfaces) {
            i = map(i);
        }
        for (auto& m : c.methods) {
            std::set<MethodRef> calls;
            for (auto call : m.called_methods) {
                if (call.resolved()) {
                    call.target_class = map(call.target_class);
                }
                calls.insert(std::move(call));
            }
            m.called_methods = std::move(calls);
            std::set<std::string> refs;
            for (const auto& r : m.referenced_classes) {
                refs.insert(map(r));
            }
            m.referenced_classes = std::move(refs);
        }
    }
    return ClassModel(model.project_name(), std::move(classes));
}

GeneratedProject random_java_project(Rng& rng, int max_classes) {
    struct Plan {
        std::string pkg;
        std::string name;
        std::optional<int> parent;
        std::vector<std::pair<std::string, std::optional<int>>> fields;  // name, class index or int
        std::vector<int> arities;                                       // methods m0..mk
    };
    const int n = uniform(rng, 1, max_classes);
    std::vector<Plan> plans;
    for (int i = 0; i < n; ++i) {
        Plan p;
        p.pkg = chance(rng, 0.5) ? "gen.a" : "gen.b";
        p.name = "K" + std::to_string(i);
        if (i > 0 && chance(rng, 0.5)) {
            p.parent = uniform(rng, 0, i - 1);
        }
        const int fields = uniform(rng, 0, 4);
        for (int f = 0; f < fields; ++f) {
            std::optional<int> type;
            if (chance(rng, 0.4)) {
                type = uniform(rng, 0, n - 1);
            }
            p.fields.emplace_back("f" + std::to_string(f), type);
        }
        const int methods = uniform(rng, 0, 4);
        for (int m = 0; m < methods; ++m) {
            p.arities.push_back(uniform(rng, 0, 2));
        }
        plans.push_back(std::move(p));
    }
    auto qualified = [&](int i) { return plans[static_cast<std::size_t>(i)].pkg + "." + plans[static_cast<std::size_t>(i)].name; };
    auto args = [](int arity) {
        std::string s;
        for (int a = 0; a < arity; ++a) {
            s += (a == 0 ? "" : ", ") + std::to_string(a + 1);
        }
        return s;
    };

    GeneratedProject out;
    std::vector<ClassInfo> expected;
    for (int i = 0; i < n; ++i) {
        const Plan& p = plans[static_cast<std::size_t>(i)];
        ClassInfo info;
        info.qualified_name = qualified(i);
        std::set<std::string> imports;
        auto mention = [&](int cls) {
            if (plans[static_cast<std::size_t>(cls)].pkg != p.pkg) {
                imports.insert(qualified(cls));
            }
            return plans[static_cast<std::size_t>(cls)].name;
        };

        std::string body;
        std::string header = "public class " + p.name;
        if (p.parent) {
            header += " extends " + mention(*p.parent);
            info.superclass = qualified(*p.parent);
        }
        for (const auto& [fname, type] : p.fields) {
            if (type) {
                body += "    private " + mention(*type) + " " + fname + ";\n";
                info.fields.push_back(FieldInfo{fname, qualified(*type), false});
            } else {
                body += "    protected int " + fname + " = 0;\n";
                info.fields.push_back(FieldInfo{fname, "int", false});
            }
        }

        auto method_body = [&](MethodInfo& mi, int own_methods) {
            std::string text;
            const int statements = uniform(rng, 0, 5);
            for (int s = 0; s < statements; ++s) {
                const int kind = uniform(rng, 0, 5);
                if (kind == 0 && !p.fields.empty()) {
                    const auto& [fname, type] = pick(rng, p.fields);
                    if (!type) {
                        text += "        this." + fname + " = " + std::to_string(s) + ";\n";
                        mi.used_fields.insert(fname);
                    }
                } else if (kind == 1 && !p.fields.empty()) {
                    const auto& [fname, type] = pick(rng, p.fields);
                    if (!type) {
                        text += "        int local" + std::to_string(s) + " = " + fname + " + 1;\n";
                        mi.used_fields.insert(fname);
                    }
                } else if (kind == 2 && !p.fields.empty()) {
                    const auto& [fname, type] = pick(rng, p.fields);
                    if (type && !plans[static_cast<std::size_t>(*type)].arities.empty()) {
                        const auto& target = plans[static_cast<std::size_t>(*type)];
                        const int m = uniform(rng, 0, static_cast<int>(target.arities.size()) - 1);
                        const int arity = target.arities[static_cast<std::size_t>(m)];
                        text += "        " + fname + ".m" + std::to_string(m) + "(" + args(arity) + ");\n";
                        mi.used_fields.insert(fname);
                        mi.called_methods.insert(MethodRef{qualified(*type), "m" + std::to_string(m), arity});
                        if (*type != i) {
                            mi.referenced_classes.insert(qualified(*type));
                        }
                    }
                } else if (kind == 3 && own_methods > 0) {
                    const int m = uniform(rng, 0, own_methods - 1);
                    const int arity = p.arities[static_cast<std::size_t>(m)];
                    text += "        m" + std::to_string(m) + "(" + args(arity) + ");\n";
                    mi.called_methods.insert(MethodRef{info.qualified_name, "m" + std::to_string(m), arity});
                } else if (kind == 4) {
                    const int cls = uniform(rng, 0, n - 1);
                    const std::string simple = mention(cls);
                    text += "        " + simple + " v" + std::to_string(s) + " = new " + simple + "();\n";
                    mi.called_methods.insert(MethodRef{qualified(cls), simple, 0});
                    if (cls != i) {
                        mi.referenced_classes.insert(qualified(cls));
                    }
                } else if (kind == 5) {
                    text += "        Helper.run(" + std::to_string(s) + ");\n";
                    mi.called_methods.insert(MethodRef{std::string(kUnresolved), "run", 1});
                }
            }
            return text;
        };

        MethodInfo ctor;
        ctor.name = p.name;
        ctor.arity = 0;
        ctor.is_constructor = true;
        const int own = static_cast<int>(p.arities.size());
        body += "\n    public " + p.name + "() {\n" + method_body(ctor, own) + "    }\n";
        info.methods.push_back(std::move(ctor));
        for (std::size_t m = 0; m < p.arities.size(); ++m) {
            MethodInfo mi;
            mi.name = "m" + std::to_string(m);
            mi.arity = p.arities[m];
            std::string params;
            for (int a = 0; a < mi.arity; ++a) {
                params += (a == 0 ? "" : ", ") + std::string("int p") + std::to_string(a);
            }
            std::string text = method_body(mi, own);
            body += "\n    public void " + mi.name + "(" + params + ") {\n" + text + "    }\n";
            info.methods.push_back(std::move(mi));
        }

        std::string source = "package " + p.pkg + ";\n\n";
        for (const auto& imp : imports) {
            source += "import " + imp + ";\n";
        }
        if (!imports.empty()) {
            source += "\n";
        }
        source += header + " {\n" + body + "}\n";
        std::string dir = p.pkg;
        std::replace(dir.begin(), dir.end(), '.', '/');
        std::string path = dir + "/" + p.name + ".java";
        out.sources.push_back(GeneratedSource{std::move(path), std::move(source)});
        expected.push_back(std::move(info));
    }
    out.expected = ClassModel("generated", std::move(expected));
    return out;
}

} // namespace ckeval::testing
