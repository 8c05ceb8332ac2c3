#pragma once

#include "sullivan/algebra.hpp"
#include "sullivan/family.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Parse failure with a precise location and the tokens that would have been
/// accepted.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& message, std::string expected = "")
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) +
                             ": " + message +
                             (expected.empty() ? "" : " (expected " + expected + ")")),
          line(line), col(col), expected(std::move(expected)) {}
    int line, col;
    std::string expected;
};

namespace dsl_detail {

struct Token {
    enum Kind { Ident, Number, Colon, Equals, Caret, Star, Plus, Minus, Slash, End } kind;
    std::string text;
    int line, col;
};

inline const char* kind_name(Token::Kind k) {
    switch (k) {
        case Token::Ident: return "identifier";
        case Token::Number: return "integer";
        case Token::Colon: return "':'";
        case Token::Equals: return "'='";
        case Token::Caret: return "'^'";
        case Token::Star: return "'*'";
        case Token::Plus: return "'+'";
        case Token::Minus: return "'-'";
        case Token::Slash: return "'/'";
        case Token::End: return "end of line";
    }
    return "?";
}

inline std::vector<Token> lex_line(const std::string& text, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_'))
                ++j;
            out.push_back({Token::Ident, text.substr(i, j - i), line_no, col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Token::Number, text.substr(i, j - i), line_no, col});
            i = j;
        } else {
            Token::Kind k;
            switch (c) {
                case ':': k = Token::Colon; break;
                case '=': k = Token::Equals; break;
                case '^': k = Token::Caret; break;
                case '*': k = Token::Star; break;
                case '+': k = Token::Plus; break;
                case '-': k = Token::Minus; break;
                case '/': k = Token::Slash; break;
                default:
                    throw ParseError(line_no, col,
                                     std::string("unexpected character '") + c + "'");
            }
            out.push_back({Token::Kind(k), std::string(1, c), line_no, col});
            ++i;
        }
    }
    out.push_back({Token::End, "", line_no, static_cast<int>(text.size()) + 1});
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    bool at_end() const { return peek().kind == Token::End; }

    Token expect(Token::Kind kind, const std::string& expected) {
        if (peek().kind != kind)
            throw ParseError(peek().line, peek().col,
                             "unexpected " + std::string(kind_name(peek().kind)) +
                                 (peek().text.empty() ? "" : " '" + peek().text + "'"),
                             expected);
        return tokens_[pos_++];
    }

    bool accept(Token::Kind kind) {
        if (peek().kind != kind) return false;
        ++pos_;
        return true;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

struct RawTerm {
    Rational coeff = 1;
    std::vector<std::pair<std::string, std::uint32_t>> factors; // name, exponent
    int line = 0, col = 0;
};

inline Rational parse_number(LineParser& p) {
    Token num = p.expect(Token::Number, "integer");
    Rational value{Integer(num.text)};
    if (p.accept(Token::Slash)) {
        Token den = p.expect(Token::Number, "denominator");
        Integer d(den.text);
        if (d == 0) throw ParseError(den.line, den.col, "zero denominator");
        value /= Rational(d);
    }
    return value;
}

/// expression := ['-'] term (('+'|'-') term)*
/// term       := number ['*' factors] | factors
/// factors    := ident ['^' number] ('*' ident ['^' number])*
inline std::vector<RawTerm> parse_expression(LineParser& p) {
    std::vector<RawTerm> terms;
    bool negate = p.accept(Token::Minus);
    while (true) {
        RawTerm term;
        term.line = p.peek().line;
        term.col = p.peek().col;
        if (negate) term.coeff = -term.coeff;

        auto parse_factor = [&]() {
            Token id = p.expect(Token::Ident, "generator name");
            std::uint32_t exp = 1;
            if (p.accept(Token::Caret)) {
                Token e = p.expect(Token::Number, "exponent");
                long v = std::stol(e.text);
                if (v < 1) throw ParseError(e.line, e.col, "exponent must be positive");
                exp = static_cast<std::uint32_t>(v);
            }
            term.factors.push_back({id.text, exp});
        };

        if (p.peek().kind == Token::Number) term.coeff *= parse_number(p);
        else parse_factor();
        while (p.accept(Token::Star)) parse_factor();
        terms.push_back(std::move(term));

        if (p.accept(Token::Plus)) negate = false;
        else if (p.accept(Token::Minus)) negate = true;
        else break;
    }
    p.expect(Token::End, "'+', '-', '*' or end of line");
    return terms;
}

} // namespace dsl_detail

/// Parses the textual algebra format and returns a fully validated algebra:
/// degrees positive, differentials homogeneous of degree +1, d^2 = 0 and the
/// algebra minimal 1-connected.  All failures carry line/column locations.
inline std::shared_ptr<SullivanAlgebra> parse_dsl(const std::string& text) {
    using namespace dsl_detail;

    std::string name = "algebra";
    std::vector<GeneratorDecl> decls;
    std::map<std::string, int> decl_line;
    struct PendingDiff {
        std::vector<RawTerm> terms;
        int line, col;
    };
    std::map<std::string, PendingDiff> diffs;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        LineParser p(lex_line(line, line_no));
        if (p.at_end()) continue;
        Token head = p.expect(Token::Ident, "'algebra', 'generator' or 'd'");
        if (head.text == "algebra") {
            name = p.expect(Token::Ident, "algebra name").text;
            p.expect(Token::End, "end of line");
        } else if (head.text == "generator") {
            Token id = p.expect(Token::Ident, "generator name");
            p.expect(Token::Colon, "':'");
            Token deg = p.expect(Token::Number, "degree");
            p.expect(Token::End, "end of line");
            if (decl_line.count(id.text))
                throw ParseError(id.line, id.col, "generator '" + id.text +
                                                      "' already declared on line " +
                                                      std::to_string(decl_line[id.text]));
            long d = std::stol(deg.text);
            if (d < 1) throw ParseError(deg.line, deg.col, "degree must be a positive integer");
            decls.push_back({id.text, static_cast<int>(d), 0});
            decl_line.emplace(id.text, line_no);
        } else if (head.text == "d") {
            Token id = p.expect(Token::Ident, "generator name");
            if (!decl_line.count(id.text))
                throw ParseError(id.line, id.col, "unknown generator '" + id.text + "'");
            if (diffs.count(id.text))
                throw ParseError(id.line, id.col,
                                 "duplicate differential assignment for '" + id.text + "'");
            p.expect(Token::Equals, "'='");
            PendingDiff pd{parse_expression(p), head.line, head.col};
            diffs.emplace(id.text, std::move(pd));
        } else {
            throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'",
                             "'algebra', 'generator' or 'd'");
        }
    }

    if (decls.empty()) throw ParseError(line_no + 1, 1, "no generators declared");
    GeneratorTable staging(decls);

    std::vector<Element<Rational>> images;
    for (auto& decl : decls) {
        auto it = diffs.find(decl.name);
        if (it == diffs.end())
            throw ParseError(line_no + 1, 1,
                             "missing differential assignment for '" + decl.name + "'");
        Element<Rational> img(&staging);
        for (auto& term : it->second.terms) {
            if (term.factors.empty()) {
                if (!is_zero(term.coeff))
                    throw ParseError(term.line, term.col,
                                     "constant term in a differential must be 0");
                continue;
            }
            std::vector<Factor> fs;
            for (auto& [fname, exp] : term.factors) {
                if (!staging.contains(fname))
                    throw ParseError(term.line, term.col, "unknown generator '" + fname + "'");
                fs.push_back(Factor{staging.index_of(fname), exp});
            }
            img = add(img, normalize<Rational>(staging, std::move(fs), term.coeff));
        }
        if (!img.is_zero() && !img.is_homogeneous_of_degree(decl.degree + 1)) {
            auto& pd = it->second;
            throw ParseError(pd.line, pd.col,
                             "differential of '" + decl.name +
                                 "' is not homogeneous of degree " +
                                 std::to_string(decl.degree + 1));
        }
        images.push_back(std::move(img));
    }

    auto algebra = std::make_shared<SullivanAlgebra>(name, decls, images);

    GeneratorCheckReport minimal = check_minimal_1connected(*algebra);
    if (!minimal.ok()) {
        const auto& f = minimal.failures.front();
        const std::string& gname = algebra->table().name(f.generator);
        int at = diffs.count(gname) ? diffs[gname].line : decl_line[gname];
        throw ParseError(at, 1, "not a minimal 1-connected algebra: " + f.reason +
                                    " (generator '" + gname + "')");
    }
    GeneratorCheckReport dsq = check_d_squared(*algebra);
    if (!dsq.ok()) {
        const auto& f = dsq.failures.front();
        const std::string& gname = algebra->table().name(f.generator);
        throw ParseError(diffs[gname].line, 1,
                         "d^2 != 0 on generator '" + gname + "': " + f.reason);
    }
    return algebra;
}

/// Algebra names may come from file stems; emitted names must re-lex as one
/// identifier.
inline std::string sanitize_algebra_name(const std::string& raw) {
    std::string out;
    for (char c : raw)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "a_" + out;
    return out;
}

/// Canonical text form; parse(emit(a)) reconstructs an equal algebra and two
/// emissions of equal algebras are byte-identical.
inline std::string emit_dsl(const SullivanAlgebra& a) {
    std::string out = "algebra " + sanitize_algebra_name(a.name()) + "\n";
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        out += "generator " + a.table().name(g) + " : " +
               std::to_string(a.table().degree(g)) + "\n";
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        out += "d " + a.table().name(g) + " = " + a.diff(g).to_string() + "\n";
    return out;
}

inline bool algebras_equal(const SullivanAlgebra& a, const SullivanAlgebra& b) {
    if (!a.table().same_decls(b.table())) return false;
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        // rebuild b's image against a's table for comparison
        Element<Rational> img(&a.table());
        for (auto& [m, c] : b.diff(g).terms()) img.add_term(m, c);
        if (!(a.diff(g) == img)) return false;
    }
    return true;
}

} // namespace sullivan
