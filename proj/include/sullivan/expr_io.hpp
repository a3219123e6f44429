#pragma once

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sullivan/cdga.hpp"

namespace sullivan {

/// Syntax or semantic error in an expression, with a 0-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

namespace detail {

struct Token {
    enum Kind { Integer, Name, Plus, Minus, Star, Caret, Slash, LParen, RParen, End };
    Kind kind;
    std::string text;
    std::size_t position;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < src.size()) {
        char ch = src[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i])))
                ++i;
            tokens.push_back({Token::Integer, src.substr(start, i - start), start});
        } else if (std::isalpha(static_cast<unsigned char>(ch))) {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
                ++i;
            tokens.push_back({Token::Name, src.substr(start, i - start), start});
        } else {
            Token::Kind kind;
            switch (ch) {
                case '+': kind = Token::Plus; break;
                case '-': kind = Token::Minus; break;
                case '*': kind = Token::Star; break;
                case '^': kind = Token::Caret; break;
                case '/': kind = Token::Slash; break;
                case '(': kind = Token::LParen; break;
                case ')': kind = Token::RParen; break;
                default:
                    throw ParseError(std::string("unexpected character '") + ch + "'", start);
            }
            tokens.push_back({kind, std::string(1, ch), start});
            ++i;
        }
    }
    tokens.push_back({Token::End, "", src.size()});
    return tokens;
}

/// Recursive-descent parser for the element grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := '-' factor | power
///   power  := primary ('^' INT)?
///   primary:= INT ('/' INT)? | NAME | '(' expr ')'
/// No implicit multiplication; '/' only inside rational literals.
class ElementParser {
public:
    ElementParser(const std::string& src, const std::map<std::string, Generator>& generators)
        : tokens_(lex(src)), generators_(generators) {}

    Element parse() {
        Element e = parse_expr();
        expect(Token::End, "trailing input");
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    Token advance() { return tokens_[pos_++]; }

    void expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError("expected " + what, peek().position);
        advance();
    }

    Element parse_expr() {
        Element e = parse_term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            Token op = advance();
            Element rhs = parse_term();
            if (op.kind == Token::Plus)
                e += rhs;
            else
                e -= rhs;
        }
        return e;
    }

    Element parse_term() {
        Element e = parse_factor();
        while (peek().kind == Token::Star) {
            advance();
            e = mul(e, parse_factor());
        }
        return e;
    }

    Element parse_factor() {
        if (peek().kind == Token::Minus) {
            advance();
            return -parse_factor();
        }
        return parse_power();
    }

    Element parse_power() {
        Element base = parse_primary();
        if (peek().kind != Token::Caret)
            return base;
        advance();
        if (peek().kind == Token::Minus)
            throw ParseError("negative exponent", peek().position);
        if (peek().kind != Token::Integer)
            throw ParseError("expected integer exponent", peek().position);
        Token exp_token = advance();
        int exp = 0;
        try {
            exp = std::stoi(exp_token.text);
        } catch (const std::out_of_range&) {
            throw ParseError("exponent out of range", exp_token.position);
        }
        if (exp < 1)
            throw ParseError("exponent must be >= 1", exp_token.position);
        if (last_primary_odd_ && exp > 1)
            throw ParseError("odd generator '" + last_primary_name_ +
                                 "' raised to power " + std::to_string(exp) +
                                 " (an odd square is zero; write 0 explicitly)",
                             exp_token.position);
        return pow(base, exp);
    }

    Element parse_primary() {
        last_primary_odd_ = false;
        Token token = peek();
        switch (token.kind) {
            case Token::Integer: {
                advance();
                Integer num(token.text);
                if (peek().kind == Token::Slash) {
                    advance();
                    if (peek().kind != Token::Integer)
                        throw ParseError("expected integer denominator", peek().position);
                    Token den_token = advance();
                    Integer den(den_token.text);
                    if (den == 0)
                        throw ParseError("zero denominator", den_token.position);
                    return Element::constant(Rational(num) / Rational(den));
                }
                return Element::constant(Rational(num));
            }
            case Token::Name: {
                advance();
                auto it = generators_.find(token.text);
                if (it == generators_.end())
                    throw ParseError("unknown generator '" + token.text + "'",
                                     token.position);
                last_primary_odd_ = it->second.is_odd();
                last_primary_name_ = token.text;
                return Element::from_generator(it->second);
            }
            case Token::LParen: {
                advance();
                Element e = parse_expr();
                expect(Token::RParen, "')'");
                return e;
            }
            default:
                throw ParseError("expected a number, generator, or '('", token.position);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const std::map<std::string, Generator>& generators_;
    bool last_primary_odd_ = false;
    std::string last_primary_name_;
};

inline bool valid_identifier(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
        return false;
    for (char ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
            return false;
    return true;
}

}  // namespace detail

inline Element parse_element(const std::string& src,
                             const std::vector<Generator>& generators) {
    std::map<std::string, Generator> by_name;
    for (const auto& g : generators)
        by_name.emplace(g.name, g);
    return detail::ElementParser(src, by_name).parse();
}

inline std::string print_monomial(const Monomial& m) {
    if (m.is_one())
        return "1";
    std::string out;
    for (const auto& [g, e] : m.factors()) {
        if (!out.empty())
            out += "*";
        out += g.name;
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

/// Deterministic canonical printing: terms in canonical monomial order,
/// coefficients in lowest terms, no redundant 1*.
inline std::string print_element(const Element& e) {
    if (e.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        bool negative = c < 0;
        Rational magnitude = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (m.is_one())
            out += rational_to_string(magnitude);
        else if (magnitude == 1)
            out += print_monomial(m);
        else
            out += rational_to_string(magnitude) + "*" + print_monomial(m);
    }
    return out;
}

/// Serializable description of a free CDGA: generators with degrees,
/// differential expressions, and free-form metadata. Zero differentials
/// are omitted.
struct ModelDocument {
    std::vector<std::pair<std::string, int>> generators;
    std::map<std::string, std::string> differentials;
    std::map<std::string, std::string> metadata;
};

inline constexpr const char* kModelDocumentFormat = "cdga-model-v1";

inline ModelDocument save_model(const FreeCdga& c,
                                std::map<std::string, std::string> metadata = {}) {
    ModelDocument doc;
    doc.metadata = std::move(metadata);
    for (const auto& g : c.generators())
        doc.generators.emplace_back(g.name, g.degree);
    for (const auto& [name, image] : c.differentials())
        doc.differentials.emplace(name, print_element(image));
    return doc;
}

inline FreeCdga load_model(const ModelDocument& doc) {
    std::vector<Generator> gens;
    for (const auto& [name, degree] : doc.generators) {
        if (!detail::valid_identifier(name))
            throw ValidationError("model document: invalid generator name '" + name + "'");
        if (degree < 1)
            throw ValidationError("model document: generator '" + name +
                                  "' has degree " + std::to_string(degree) + " (must be >= 1)");
        gens.push_back({name, degree});
    }

    std::map<std::string, Element> diff;
    for (const auto& [name, expr] : doc.differentials) {
        Element image;
        try {
            image = parse_element(expr, gens);
        } catch (const ParseError& e) {
            throw ValidationError("model document: differential of '" + name + "': " +
                                  e.what());
        }
        diff.emplace(name, std::move(image));
    }

    FreeCdga unchecked = FreeCdga::make_unchecked(gens, diff);
    for (const auto& [name, expr] : doc.differentials) {
        if (!unchecked.has_generator(name))
            throw ValidationError("model document: differential assigned to unknown "
                                  "generator '" + name + "'");
        int expected = unchecked.generator(name).degree + 1;
        if (!unchecked.differential(name).is_homogeneous_of_degree(expected))
            throw ValidationError("model document: d(" + name +
                                  ") is not homogeneous of degree " +
                                  std::to_string(expected));
    }
    CheckReport d2 = check_d_squared(unchecked);
    if (!d2.pass)
        throw ValidationError("model document: d^2 != 0 (witness: " + d2.witnesses.front() +
                              ")");
    return unchecked;
}

inline nlohmann::json document_to_json(const ModelDocument& doc) {
    nlohmann::json j;
    j["format"] = kModelDocumentFormat;
    j["generators"] = nlohmann::json::array();
    for (const auto& [name, degree] : doc.generators)
        j["generators"].push_back({{"name", name}, {"degree", degree}});
    j["differentials"] = doc.differentials;
    j["metadata"] = doc.metadata;
    return j;
}

inline ModelDocument document_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw ValidationError("model document: expected a JSON object");
    if (j.contains("format") && j.at("format") != kModelDocumentFormat)
        throw ValidationError("model document: unsupported format '" +
                              j.at("format").dump() + "'");
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw ValidationError("model document: missing 'generators' array");

    ModelDocument doc;
    for (const auto& entry : j.at("generators")) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("degree") ||
            !entry.at("name").is_string() || !entry.at("degree").is_number_integer())
            throw ValidationError("model document: generators must be objects with a "
                                  "string 'name' and integer 'degree'");
        doc.generators.emplace_back(entry.at("name").get<std::string>(),
                                    entry.at("degree").get<int>());
    }
    if (j.contains("differentials")) {
        if (!j.at("differentials").is_object())
            throw ValidationError("model document: 'differentials' must be an object");
        for (const auto& [name, expr] : j.at("differentials").items()) {
            if (!expr.is_string())
                throw ValidationError("model document: differential of '" + name +
                                      "' must be a string expression");
            doc.differentials.emplace(name, expr.get<std::string>());
        }
    }
    if (j.contains("metadata")) {
        if (!j.at("metadata").is_object())
            throw ValidationError("model document: 'metadata' must be an object");
        for (const auto& [key, value] : j.at("metadata").items()) {
            if (!value.is_string())
                throw ValidationError("model document: metadata values must be strings");
            doc.metadata.emplace(key, value.get<std::string>());
        }
    }
    return doc;
}

inline FreeCdga load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return load_model(document_from_json(j));
}

inline void save_model_file(const FreeCdga& c, const std::string& path,
                            std::map<std::string, std::string> metadata = {}) {
    std::ofstream out(path);
    if (!out)
        throw ValidationError("cannot write model file '" + path + "'");
    out << document_to_json(save_model(c, std::move(metadata))).dump(2) << "\n";
}

}  // namespace sullivan
