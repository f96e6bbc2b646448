#include "ckeval/java_parser.hpp"

#include <array>
#include <utility>

namespace ckeval::java {

std::string to_string(const ParseDiagnostic& d) {
    return d.path + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.code + ": " +
           d.message;
}

namespace {

struct SyntaxFailure {
    ParseDiagnostic diagnostic;
};

constexpr std::array<std::string_view, 12> kModifiers{
    "public", "protected", "private", "static",   "final",    "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default"};

std::string describe(const Token& t) {
    return t.kind == TokenKind::End ? "end of file" : "'" + t.text + "'";
}

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string path) : toks_(std::move(tokens)), path_(std::move(path)) {}

    SourceUnit parse_unit() {
        SourceUnit unit;
        unit.path = path_;
        skip_annotations();
        if (peek().is_keyword("package")) {
            next();
            unit.package_name = qualified_name();
            expect_op(";");
        }
        while (peek().is_keyword("import")) {
            next();
            ImportDecl imp;
            if (peek().is_keyword("static")) {
                next();
                imp.is_static = true;
            }
            imp.name = expect_identifier("imported name");
            while (peek().is_op(".")) {
                next();
                if (peek().is_op("*")) {
                    next();
                    imp.is_wildcard = true;
                    break;
                }
                imp.name += "." + expect_identifier("imported name");
            }
            expect_op(";");
            unit.imports.push_back(std::move(imp));
        }
        while (peek().kind != TokenKind::End) {
            if (peek().is_op(";")) {
                next();
                continue;
            }
            bool is_static = false;
            skip_modifiers(is_static);
            unit.classes.push_back(type_declaration(/*nested=*/false));
        }
        return unit;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }

    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) {
            ++pos_;
        }
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message,
                           std::string code = "SYNTAX_ERROR") const {
        throw SyntaxFailure{ParseDiagnostic{path_, at.line, at.column, std::move(code), message}};
    }

    [[noreturn]] void fail_expected(std::string_view what) const {
        fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
    }

    void expect_op(std::string_view op) {
        if (!peek().is_op(op)) {
            fail_expected("'" + std::string(op) + "'");
        }
        next();
    }

    std::string expect_identifier(std::string_view what) {
        if (!peek().is_identifier()) {
            fail_expected(what);
        }
        return next().text;
    }

    std::string qualified_name() {
        std::string name = expect_identifier("identifier");
        while (peek().is_op(".") && peek(1).is_identifier()) {
            next();
            name += "." + next().text;
        }
        return name;
    }

    // Skips a bracketed group starting at the current opening token.
    void skip_balanced(std::string_view open, std::string_view close) {
        const Token& start = peek();
        expect_op(open);
        int depth = 1;
        while (depth > 0) {
            const Token& t = next();
            if (t.kind == TokenKind::End) {
                fail(start, "unbalanced '" + std::string(open) + "'");
            }
            if (t.is_op(open)) {
                ++depth;
            } else if (t.is_op(close)) {
                --depth;
            }
        }
    }

    void skip_annotations() {
        while (peek().is_op("@") && !peek(1).is_keyword("interface")) {
            next();
            qualified_name();
            if (peek().is_op("(")) {
                skip_balanced("(", ")");
            }
        }
    }

    void skip_modifiers(bool& is_static) {
        while (true) {
            skip_annotations();
            const Token& t = peek();
            bool modifier = false;
            for (auto m : kModifiers) {
                modifier = modifier || t.is_keyword(m);
            }
            if (t.is_identifier() && (t.text == "sealed" || (t.text == "non" && peek(1).is_op("-")))) {
                modifier = true;
            }
            if (!modifier) {
                return;
            }
            if (t.is_keyword("static")) {
                is_static = true;
            }
            next();
            if (t.text == "non") {  // non-sealed
                next();
                next();
            }
        }
    }

    // Generic arguments/parameters. `>` is always a single token so nesting is
    // counted one bracket at a time.
    void skip_angle_group() {
        const Token& start = peek();
        expect_op("<");
        int depth = 1;
        while (depth > 0) {
            const Token& t = next();
            if (t.kind == TokenKind::End || t.is_op(";") || t.is_op("{") || t.is_op("}")) {
                fail(start, "unterminated type argument list");
            }
            if (t.is_op("<")) {
                ++depth;
            } else if (t.is_op(">")) {
                --depth;
            }
        }
    }

    TypeName type(std::string_view what) {
        TypeName t;
        skip_annotations();
        if (peek().kind == TokenKind::Keyword && (is_primitive_type(peek().text) || peek().text == "void")) {
            t.name = next().text;
        } else if (peek().is_identifier()) {
            t.name = next().text;
            if (peek().is_op("<")) {
                skip_angle_group();
            }
            while (peek().is_op(".") && peek(1).is_identifier()) {
                next();
                t.name += "." + next().text;
                if (peek().is_op("<")) {
                    skip_angle_group();
                }
            }
        } else {
            fail_expected(what);
        }
        while (peek().is_op("[") && peek(1).is_op("]")) {
            next();
            next();
            ++t.array_dims;
        }
        return t;
    }

    std::vector<TypeName> type_list() {
        std::vector<TypeName> out{type("type name")};
        while (peek().is_op(",")) {
            next();
            out.push_back(type("type name"));
        }
        return out;
    }

    ClassDecl type_declaration(bool nested) {
        const Token& kw = peek();
        if (kw.is_keyword("enum") || (kw.is_identifier() && kw.text == "record" && peek(1).is_identifier()) ||
            (kw.is_op("@") && peek(1).is_keyword("interface"))) {
            if (!nested) {
                fail(kw, "enum, record and annotation types are outside the supported subset", "UNSUPPORTED");
            }
            while (!peek().is_op("{")) {
                if (peek().kind == TokenKind::End) {
                    fail_expected("'{'");
                }
                next();
            }
            skip_balanced("{", "}");
            return {};
        }
        ClassDecl c;
        if (kw.is_keyword("class")) {
            c.is_interface = false;
        } else if (kw.is_keyword("interface")) {
            c.is_interface = true;
        } else {
            fail_expected("'class' or 'interface'");
        }
        next();
        c.line = peek().line;
        c.column = peek().column;
        c.name = expect_identifier("type name");
        if (peek().is_op("<")) {
            skip_angle_group();
        }
        if (peek().is_keyword("extends")) {
            next();
            if (c.is_interface) {
                c.interfaces = type_list();
            } else {
                c.extends = type("superclass name");
            }
        }
        if (!c.is_interface && peek().is_keyword("implements")) {
            next();
            auto more = type_list();
            c.interfaces.insert(c.interfaces.end(), more.begin(), more.end());
        }
        if (peek().is_identifier() && peek().text == "permits") {
            next();
            type_list();
        }
        class_body(c);
        return c;
    }

    void class_body(ClassDecl& c) {
        expect_op("{");
        while (!peek().is_op("}")) {
            if (peek().kind == TokenKind::End) {
                fail_expected("'}'");
            }
            member(c);
        }
        next();
    }

    void member(ClassDecl& c) {
        if (peek().is_op(";")) {
            next();
            return;
        }
        bool is_static = false;
        skip_modifiers(is_static);
        const Token& t = peek();
        if (t.is_op("{")) {
            skip_balanced("{", "}");  // initializer block
            return;
        }
        if (t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum") ||
            (t.is_identifier() && t.text == "record" && peek(1).is_identifier()) ||
            (t.is_op("@") && peek(1).is_keyword("interface"))) {
            type_declaration(/*nested=*/true);
            return;
        }
        if (t.is_op("<")) {
            skip_angle_group();
        }
        if (peek().is_identifier() && peek().text == c.name && peek(1).is_op("(")) {
            MethodDecl m;
            m.line = peek().line;
            m.name = next().text;
            m.is_constructor = true;
            m.is_static = is_static;
            method_rest(m);
            c.methods.push_back(std::move(m));
            return;
        }
        const int line = peek().line;
        TypeName ty = type("member type");
        std::string name = expect_identifier("member name");
        if (peek().is_op("(")) {
            MethodDecl m;
            m.line = line;
            m.name = std::move(name);
            m.is_static = is_static;
            method_rest(m);
            c.methods.push_back(std::move(m));
            return;
        }
        while (true) {
            FieldDecl f;
            f.name = name;
            f.type = ty;
            f.is_static = is_static || c.is_interface;  // interface fields are implicitly static
            f.line = line;
            while (peek().is_op("[") && peek(1).is_op("]")) {
                next();
                next();
                ++f.type.array_dims;
            }
            if (peek().is_op("=")) {
                next();
                skip_initializer();
            }
            c.fields.push_back(std::move(f));
            if (peek().is_op(",")) {
                next();
                name = expect_identifier("field name");
                continue;
            }
            expect_op(";");
            return;
        }
    }

    // Skips a field initializer up to the `,` or `;` that ends it.
    void skip_initializer() {
        int depth = 0;
        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::End) {
                fail_expected("';'");
            }
            if (depth == 0 && (t.is_op(",") || t.is_op(";"))) {
                return;
            }
            if (depth == 0 && t.is_op("}")) {
                fail_expected("';'");
            }
            if (t.is_keyword("new")) {
                next();
                if (peek().is_op("<")) {
                    skip_angle_group();
                }
                type("type after 'new'");
                if (peek().is_op("<")) {
                    skip_angle_group();  // diamond
                }
                continue;
            }
            if (t.is_op("(") || t.is_op("[") || t.is_op("{")) {
                ++depth;
            } else if (t.is_op(")") || t.is_op("]") || t.is_op("}")) {
                --depth;
            }
            next();
        }
    }

    void method_rest(MethodDecl& m) {
        expect_op("(");
        if (!peek().is_op(")")) {
            while (true) {
                bool ignored = false;
                skip_modifiers(ignored);
                Parameter p;
                p.type = type("parameter type");
                if (peek().is_op("...")) {
                    next();
                    ++p.type.array_dims;
                }
                if (peek().is_keyword("this")) {
                    next();  // receiver parameter, not a real argument
                    if (peek().is_op(",")) {
                        next();
                        continue;
                    }
                    break;
                }
                p.name = expect_identifier("parameter name");
                while (peek().is_op("[") && peek(1).is_op("]")) {
                    next();
                    next();
                    ++p.type.array_dims;
                }
                m.parameters.push_back(std::move(p));
                if (peek().is_op(",")) {
                    next();
                    continue;
                }
                break;
            }
        }
        expect_op(")");
        while (peek().is_op("[") && peek(1).is_op("]")) {
            next();
            next();
        }
        if (peek().is_keyword("throws")) {
            next();
            type_list();
        }
        if (peek().is_keyword("default")) {  // annotation element default
            next();
            skip_initializer();
        }
        if (peek().is_op(";")) {
            next();
            return;
        }
        if (!peek().is_op("{")) {
            fail_expected("'{' or ';'");
        }
        const Token& open = next();
        std::vector<Token> body;
        int depth = 1;
        while (true) {
            const Token& t = peek();
            if (t.kind == TokenKind::End) {
                fail(open, "unterminated method body");
            }
            if (t.is_op("{")) {
                ++depth;
            } else if (t.is_op("}") && --depth == 0) {
                next();
                break;
            }
            body.push_back(next());
        }
        m.body = std::move(body);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string path_;
};

} // namespace

ParseResult parse_source(std::string_view text, std::string path) {
    ParseResult result;
    LexResult lexed = lex(text);
    if (!lexed.errors.empty()) {
        for (auto& e : lexed.errors) {
            result.diagnostics.push_back(ParseDiagnostic{path, e.line, e.column, e.code, e.message});
        }
        return result;
    }
    try {
        result.unit = Parser(std::move(lexed.tokens), path).parse_unit();
    } catch (const SyntaxFailure& f) {
        result.diagnostics.push_back(f.diagnostic);
    }
    return result;
}

} // namespace ckeval::java
