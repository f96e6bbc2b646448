#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ckeval::java {

enum class TokenKind { Identifier, Keyword, Literal, Operator, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    int line = 1;    // 1-based
    int column = 1;  // 1-based, counted in code points

    bool is(TokenKind k, std::string_view t) const noexcept { return kind == k && text == t; }
    bool is_op(std::string_view t) const noexcept { return is(TokenKind::Operator, t); }
    bool is_keyword(std::string_view t) const noexcept { return is(TokenKind::Keyword, t); }
    bool is_identifier() const noexcept { return kind == TokenKind::Identifier; }

    bool operator==(const Token&) const = default;
};

struct LexError {
    int line = 1;
    int column = 1;
    std::string code;  // LEX_BAD_CHAR, LEX_UNTERMINATED, LEX_INVALID_UTF8
    std::string message;
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by an End token
    std::vector<LexError> errors;
};

/// Tokenizes Java source. Comments and whitespace are dropped. `>` is always a
/// single-character token so nested generic arguments close one at a time.
/// Lexing continues past bad characters so every one is reported.
LexResult lex(std::string_view source);

bool is_java_keyword(std::string_view word) noexcept;
bool is_primitive_type(std::string_view word) noexcept;

} // namespace ckeval::java
