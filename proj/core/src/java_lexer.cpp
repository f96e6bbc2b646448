#include "ckeval/java_lexer.hpp"

#include <algorithm>
#include <array>

namespace ckeval::java {

namespace {

constexpr std::array<std::string_view, 53> kKeywords{
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",         "catch",    "char",
    "class",    "const",      "continue",  "default",   "do",        "double",       "else",     "enum",
    "extends",  "final",      "finally",   "float",     "for",       "goto",         "if",       "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",       "new",      "package",
    "private",  "protected",  "public",    "return",    "short",     "static",       "strictfp", "super",
    "switch",   "synchronized", "this",    "throw",     "throws",    "transient",    "try",      "void",
    "volatile", "while",      "true",      "false",     "null"};

constexpr std::array<std::string_view, 8> kPrimitives{"boolean", "byte", "char", "short",
                                                      "int",     "long", "float", "double"};

// Longest first so greedy matching picks e.g. "<<=" over "<<".
constexpr std::array<std::string_view, 27> kMultiCharOps{
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", "+=", "-=", "*=",
    "/=",  "&=",  "|=", "^=", "%=", "<<", "(",  ")",  "{",  "}",  "[",  "]",  ";"};

constexpr std::string_view kSingleCharOps = "(){}[];,.@=><!~?:+-*/&|^%";

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {
        if (src_.starts_with("\xEF\xBB\xBF")) {
            pos_ = 3;
        }
    }

    LexResult run() {
        LexResult out;
        while (true) {
            skip_trivia(out);
            if (pos_ >= src_.size()) {
                break;
            }
            const int line = line_;
            const int col = col_;
            const unsigned char c = static_cast<unsigned char>(src_[pos_]);
            if (is_ident_start(c)) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_]))) {
                    advance_char(out);
                }
                std::string word(src_.substr(start, pos_ - start));
                TokenKind kind = is_java_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
                out.tokens.push_back(Token{kind, std::move(word), line, col});
            } else if ((c >= '0' && c <= '9') || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
                std::size_t start = pos_;
                lex_number(out);
                out.tokens.push_back(Token{TokenKind::Literal, std::string(src_.substr(start, pos_ - start)), line, col});
            } else if (c == '"' || c == '\'') {
                std::size_t start = pos_;
                if (lex_quoted(out, static_cast<char>(c), line, col)) {
                    out.tokens.push_back(
                        Token{TokenKind::Literal, std::string(src_.substr(start, pos_ - start)), line, col});
                }
            } else if (auto op = match_operator(); !op.empty()) {
                for (std::size_t i = 0; i < op.size(); ++i) {
                    advance_char(out);
                }
                out.tokens.push_back(Token{TokenKind::Operator, std::string(op), line, col});
            } else {
                std::string shown = c < 0x80 ? std::string(1, static_cast<char>(c)) : "non-ASCII byte";
                out.errors.push_back(LexError{line, col, "LEX_BAD_CHAR", "unexpected character '" + shown + "'"});
                advance_char(out);
            }
        }
        out.tokens.push_back(Token{TokenKind::End, "", line_, col_});
        return out;
    }

private:
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
    }
    static bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    // Moves over one UTF-8 code point, tracking line/column.
    void advance_char(LexResult& out) {
        const unsigned char c = static_cast<unsigned char>(src_[pos_]);
        std::size_t len = 1;
        if (c >= 0x80) {
            len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 0;
            bool valid = len != 0 && pos_ + len <= src_.size();
            for (std::size_t i = 1; valid && i < len; ++i) {
                valid = (static_cast<unsigned char>(src_[pos_ + i]) & 0xC0) == 0x80;
            }
            if (!valid) {
                out.errors.push_back(LexError{line_, col_, "LEX_INVALID_UTF8", "invalid UTF-8 sequence"});
                len = 1;
            }
        }
        pos_ += len;
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    void skip_trivia(LexResult& out) {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f') {
                advance_char(out);
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance_char(out);
                }
            } else if (src_.substr(pos_, 2) == "/*") {
                const int line = line_;
                const int col = col_;
                advance_char(out);
                advance_char(out);
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") {
                    advance_char(out);
                }
                if (pos_ >= src_.size()) {
                    out.errors.push_back(LexError{line, col, "LEX_UNTERMINATED", "unterminated block comment"});
                    return;
                }
                advance_char(out);
                advance_char(out);
            } else {
                return;
            }
        }
    }

    void lex_number(LexResult& out) {
        // Permissive: digits, letters (hex, suffixes, exponents), '_' and '.',
        // plus a sign directly after an exponent marker.
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            const bool exponent_sign = (c == '+' || c == '-') && pos_ > 0 &&
                                       (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E' || src_[pos_ - 1] == 'p' ||
                                        src_[pos_ - 1] == 'P') &&
                                       !(src_.size() > 1 && (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E') &&
                                         looks_hex_before());
            if (is_ident_part(static_cast<unsigned char>(c)) || c == '.' || exponent_sign) {
                if (c == '.' && pos_ + 1 < src_.size() && !is_digit(src_[pos_ + 1]) &&
                    is_ident_start(static_cast<unsigned char>(src_[pos_ + 1]))) {
                    break;  // 1.foo is not part of the literal
                }
                advance_char(out);
            } else {
                break;
            }
        }
    }

    bool looks_hex_before() const {
        // Scan back over the current literal for an 0x prefix; in hex literals
        // 'e' is a digit, not an exponent.
        std::size_t i = pos_;
        while (i > 0 && is_ident_part(static_cast<unsigned char>(src_[i - 1]))) {
            --i;
        }
        return src_.substr(i, 2) == "0x" || src_.substr(i, 2) == "0X";
    }

    bool lex_quoted(LexResult& out, char quote, int line, int col) {
        if (quote == '"' && src_.substr(pos_, 3) == "\"\"\"") {
            for (int i = 0; i < 3; ++i) {
                advance_char(out);
            }
            while (pos_ < src_.size() && src_.substr(pos_, 3) != "\"\"\"") {
                if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
                    advance_char(out);
                }
                advance_char(out);
            }
            if (pos_ >= src_.size()) {
                out.errors.push_back(LexError{line, col, "LEX_UNTERMINATED", "unterminated text block"});
                return false;
            }
            for (int i = 0; i < 3; ++i) {
                advance_char(out);
            }
            return true;
        }
        advance_char(out);
        while (pos_ < src_.size() && src_[pos_] != quote && src_[pos_] != '\n') {
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '\n') {
                advance_char(out);
            }
            advance_char(out);
        }
        if (pos_ >= src_.size() || src_[pos_] != quote) {
            out.errors.push_back(LexError{line, col, "LEX_UNTERMINATED",
                                          quote == '"' ? "unterminated string literal" : "unterminated char literal"});
            return false;
        }
        advance_char(out);
        return true;
    }

    std::string_view match_operator() const {
        for (auto op : kMultiCharOps) {
            if (src_.substr(pos_, op.size()) == op) {
                return op;
            }
        }
        if (kSingleCharOps.find(src_[pos_]) != std::string_view::npos) {
            return src_.substr(pos_, 1);
        }
        return {};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

bool is_java_keyword(std::string_view word) noexcept {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_primitive_type(std::string_view word) noexcept {
    return std::find(kPrimitives.begin(), kPrimitives.end(), word) != kPrimitives.end();
}

LexResult lex(std::string_view source) {
    return Lexer(source).run();
}

} // namespace ckeval::java
