#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qgcl::detail {

enum class TokenKind { Ident, Number, Imag, Punct, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    double number = 0.0; // value of Number and Imag tokens
    int line = 1;
    int column = 1;

    bool is(std::string_view punct) const { return kind == TokenKind::Punct && text == punct; }
    bool isWord(std::string_view word) const { return kind == TokenKind::Ident && text == word; }
};

// Splits program text into tokens.  Comments run from "//" or "#" to the
// end of the line.  Throws ParseError on characters outside the grammar.
std::vector<Token> tokenize(std::string_view source);

} // namespace qgcl::detail
