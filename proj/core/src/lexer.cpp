#include "lexer.hpp"

#include "qgcl/errors.hpp"

#include <cctype>
#include <charconv>

namespace qgcl::detail {

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && pos < src.size(); ++k, ++pos) {
            if (src[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto startsWith = [&](std::string_view s) { return src.substr(pos, s.size()) == s; };

    while (pos < src.size()) {
        const char ch = src[pos];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        if (ch == '#' || startsWith("//")) {
            while (pos < src.size() && src[pos] != '\n') advance(1);
            continue;
        }

        Token tok;
        tok.line = line;
        tok.column = col;

        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t end = pos;
            while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_' ||
                                        src[end] == '\'')) {
                ++end;
            }
            tok.kind = TokenKind::Ident;
            tok.text = std::string(src.substr(pos, end - pos));
            advance(end - pos);
            out.push_back(std::move(tok));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && pos + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            std::size_t end = pos;
            while (end < src.size() && (std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '.')) ++end;
            if (end < src.size() && (src[end] == 'e' || src[end] == 'E')) {
                std::size_t e = end + 1;
                if (e < src.size() && (src[e] == '+' || src[e] == '-')) ++e;
                if (e < src.size() && std::isdigit(static_cast<unsigned char>(src[e]))) {
                    end = e;
                    while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
                }
            }
            const std::string_view text = src.substr(pos, end - pos);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size()) {
                throw ParseError("malformed number '" + std::string(text) + "'", line, col);
            }
            tok.number = value;
            tok.text = std::string(text);
            tok.kind = TokenKind::Number;
            // An 'i' glued to a number makes it imaginary, unless it starts a word.
            if (end < src.size() && src[end] == 'i' &&
                !(end + 1 < src.size() && (std::isalnum(static_cast<unsigned char>(src[end + 1])) || src[end + 1] == '_'))) {
                tok.kind = TokenKind::Imag;
                tok.text += 'i';
                ++end;
            }
            advance(end - pos);
            out.push_back(std::move(tok));
            continue;
        }

        static constexpr std::string_view multi[] = {"(+)", "[]", "->", ":="};
        bool matched = false;
        for (std::string_view m : multi) {
            if (startsWith(m)) {
                tok.kind = TokenKind::Punct;
                tok.text = std::string(m);
                advance(m.size());
                matched = true;
                break;
            }
        }
        if (matched) {
            out.push_back(std::move(tok));
            continue;
        }

        static constexpr std::string_view single = ";,:[](){}|>=@+-*/<";
        if (single.find(ch) != std::string_view::npos) {
            tok.kind = TokenKind::Punct;
            tok.text = std::string(1, ch);
            advance(1);
            out.push_back(std::move(tok));
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

} // namespace qgcl::detail
