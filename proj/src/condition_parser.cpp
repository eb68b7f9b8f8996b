#include <cctype>
#include <string>
#include <vector>

#include "concord/document.hpp"
#include "concord/errors.hpp"

namespace concord {

namespace {

struct Token {
    enum class Kind { Ident, And, Or, Not, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    Lexer(std::string_view text, const std::string& path) : text_(text), path_(path) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        std::size_t i = 0;
        while (i < text_.size()) {
            const char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            if (c == '(') {
                tokens.push_back({Token::Kind::LParen, "(", i++});
                continue;
            }
            if (c == ')') {
                tokens.push_back({Token::Kind::RParen, ")", i++});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                const std::size_t start = i;
                while (i < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i])) ||
                                            text_[i] == '_' || text_[i] == '.'))
                    ++i;
                std::string word(text_.substr(start, i - start));
                Token::Kind kind = Token::Kind::Ident;
                if (word == "AND") kind = Token::Kind::And;
                else if (word == "OR") kind = Token::Kind::Or;
                else if (word == "NOT") kind = Token::Kind::Not;
                tokens.push_back({kind, std::move(word), start});
                continue;
            }
            throw ValidationError("unexpected character '" + std::string(1, c) +
                                      "' at offset " + std::to_string(i) + " in condition",
                                  path_);
        }
        tokens.push_back({Token::Kind::End, "", text_.size()});
        return tokens;
    }

private:
    std::string_view text_;
    const std::string& path_;
};

// Recursive descent honoring NOT > AND > OR.
class Parser {
public:
    Parser(std::vector<Token> tokens, const std::string& path)
        : tokens_(std::move(tokens)), path_(path) {}

    ConditionExpr run() {
        ConditionExpr expr = parse_or();
        expect(Token::Kind::End, "end of condition");
        return expr;
    }

private:
    ConditionExpr parse_or() {
        std::vector<ConditionExpr> terms;
        terms.push_back(parse_and());
        while (peek().kind == Token::Kind::Or) {
            advance();
            terms.push_back(parse_and());
        }
        if (terms.size() == 1) return std::move(terms.front());
        return ConditionExpr::make_or(std::move(terms));
    }

    ConditionExpr parse_and() {
        std::vector<ConditionExpr> terms;
        terms.push_back(parse_unary());
        while (peek().kind == Token::Kind::And) {
            advance();
            terms.push_back(parse_unary());
        }
        if (terms.size() == 1) return std::move(terms.front());
        return ConditionExpr::make_and(std::move(terms));
    }

    ConditionExpr parse_unary() {
        if (peek().kind == Token::Kind::Not) {
            advance();
            return ConditionExpr::make_not(parse_unary());
        }
        if (peek().kind == Token::Kind::LParen) {
            advance();
            ConditionExpr inner = parse_or();
            expect(Token::Kind::RParen, "')'");
            return inner;
        }
        if (peek().kind == Token::Kind::Ident) {
            Token t = advance();
            return ConditionExpr::make_ref(std::move(t.text));
        }
        throw ValidationError("expected predicate id, 'NOT', or '(' at offset " +
                                  std::to_string(peek().pos) + " in condition",
                              path_);
    }

    const Token& peek() const { return tokens_[index_]; }
    Token advance() { return tokens_[index_++]; }

    void expect(Token::Kind kind, std::string_view what) {
        if (peek().kind != kind)
            throw ValidationError("expected " + std::string(what) + " at offset " +
                                      std::to_string(peek().pos) + " in condition, got '" +
                                      peek().text + "'",
                                  path_);
        advance();
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    const std::string& path_;
};

} // namespace

ConditionExpr parse_condition_text(std::string_view text, const std::string& path) {
    Lexer lexer(text, path);
    Parser parser(lexer.run(), path);
    return parser.run().normalized();
}

} // namespace concord
