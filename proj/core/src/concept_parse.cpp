#include "prunecel/concept_expr.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace prunecel {

bool PrefixMap::expand(std::string_view prefix, std::string_view local, Iri& out) const {
    auto it = entries_.find(std::string(prefix));
    if (it == entries_.end()) return false;
    out = it->second + std::string(local);
    return true;
}

bool PrefixMap::compress(const Iri& iri, std::string& prefix, std::string& local) const {
    std::size_t best = 0;
    bool found = false;
    for (const auto& [p, ns] : entries_) {
        if (ns.empty() || ns.size() < best) continue;
        if (iri.size() >= ns.size() && iri.compare(0, ns.size(), ns) == 0) {
            prefix = p;
            local = iri.substr(ns.size());
            best = ns.size();
            found = true;
        }
    }
    return found;
}

ConceptParseError::ConceptParseError(std::size_t position, const std::string& message)
    : std::runtime_error("syntax error at " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

bool is_word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

enum class Tok { End, LParen, RParen, And, Or, Not, Some, Only, Top, Bottom, Name };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    Iri name;  // resolved IRI for Tok::Name
};

class Lexer {
  public:
    Lexer(std::string_view text, const PrefixMap& prefixes) : text_(text), prefixes_(prefixes) {
        advance();
    }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_ = Token{};
        current_.pos = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            current_.kind = Tok::LParen;
            return;
        }
        if (c == ')') {
            ++pos_;
            current_.kind = Tok::RParen;
            return;
        }
        if (c == '<') {
            std::size_t end = text_.find('>', pos_ + 1);
            if (end == std::string_view::npos)
                throw ConceptParseError(pos_, "unterminated IRI, missing '>'");
            if (end == pos_ + 1) throw ConceptParseError(pos_, "empty IRI");
            current_.kind = Tok::Name;
            current_.name = Iri(text_.substr(pos_ + 1, end - pos_ - 1));
            pos_ = end + 1;
            return;
        }
        if (is_word_start(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (is_word_char(text_[pos_]) || text_[pos_] == ':')) ++pos_;
            std::string_view word = text_.substr(start, pos_ - start);
            if (word == "and") current_.kind = Tok::And;
            else if (word == "or") current_.kind = Tok::Or;
            else if (word == "not") current_.kind = Tok::Not;
            else if (word == "some") current_.kind = Tok::Some;
            else if (word == "only") current_.kind = Tok::Only;
            else if (word == "Top") current_.kind = Tok::Top;
            else if (word == "Bottom") current_.kind = Tok::Bottom;
            else {
                current_.kind = Tok::Name;
                current_.name = resolve(word, start);
            }
            return;
        }
        throw ConceptParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Iri resolve(std::string_view word, std::size_t pos) const {
        std::size_t colon = word.find(':');
        if (colon == std::string_view::npos) {
            Iri out;
            if (prefixes_.expand("", word, out)) return out;
            return Iri(word);
        }
        Iri out;
        if (prefixes_.expand(word.substr(0, colon), word.substr(colon + 1), out)) return out;
        throw ConceptParseError(pos, "unknown prefix '" + std::string(word.substr(0, colon)) + "'");
    }

    std::string_view text_;
    const PrefixMap& prefixes_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
  public:
    Parser(std::string_view text, const PrefixMap& prefixes) : lex_(text, prefixes) {}

    ConceptRef parse() {
        ConceptRef c = parse_or();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ConceptParseError(t.pos, "unexpected trailing input");
        return c;
    }

  private:
    ConceptRef parse_or() {
        ConceptRef left = parse_and();
        while (lex_.peek().kind == Tok::Or) {
            lex_.take();
            left = Concept::disjunction(std::move(left), parse_and());
        }
        return left;
    }

    ConceptRef parse_and() {
        ConceptRef left = parse_unary();
        while (lex_.peek().kind == Tok::And) {
            lex_.take();
            left = Concept::conjunction(std::move(left), parse_unary());
        }
        return left;
    }

    ConceptRef parse_unary() {
        if (lex_.peek().kind == Tok::Not) {
            lex_.take();
            return Concept::negation(parse_unary());
        }
        return parse_primary();
    }

    ConceptRef parse_primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Top:
                return Concept::top();
            case Tok::Bottom:
                return Concept::bottom();
            case Tok::LParen: {
                ConceptRef inner = parse_or();
                Token close = lex_.take();
                if (close.kind != Tok::RParen)
                    throw ConceptParseError(close.pos, "expected ')'");
                return inner;
            }
            case Tok::Name: {
                // a name followed by 'some'/'only' is a restriction role
                if (lex_.peek().kind == Tok::Some) {
                    lex_.take();
                    return Concept::exists(std::move(t.name), parse_unary());
                }
                if (lex_.peek().kind == Tok::Only) {
                    lex_.take();
                    return Concept::for_all(std::move(t.name), parse_unary());
                }
                return Concept::named(std::move(t.name));
            }
            case Tok::End:
                throw ConceptParseError(t.pos, "unexpected end of input");
            default:
                throw ConceptParseError(t.pos, "expected a concept");
        }
    }

    Lexer lex_;
};

bool is_bare_word(std::string_view s) {
    if (s.empty() || !is_word_start(s[0])) return false;
    for (char c : s)
        if (!is_word_char(c)) return false;
    return s != "and" && s != "or" && s != "not" && s != "some" && s != "only" && s != "Top" &&
           s != "Bottom";
}

std::string render_name(const Iri& iri, const PrefixMap& prefixes) {
    std::string prefix, local;
    if (prefixes.compress(iri, prefix, local)) {
        if (prefix.empty() && is_bare_word(local)) return local;
        if (!prefix.empty() && is_bare_word(prefix) && is_bare_word(local))
            return prefix + ":" + local;
    }
    if (is_bare_word(iri)) return std::string(iri);
    return "<" + iri + ">";
}

// precedence: or = 1, and = 2, unary and restrictions = 3
std::string render(const ConceptRef& c, int min_prec, const PrefixMap& prefixes) {
    switch (c->kind()) {
        case ConceptKind::Top:
            return "Top";
        case ConceptKind::Bottom:
            return "Bottom";
        case ConceptKind::Marker:
            return "μ";
        case ConceptKind::Named:
            return render_name(c->name(), prefixes);
        case ConceptKind::Not:
            return "not " + render(c->child(), 3, prefixes);
        case ConceptKind::Exists:
            return render_name(c->role(), prefixes) + " some " + render(c->child(), 3, prefixes);
        case ConceptKind::ForAll:
            return render_name(c->role(), prefixes) + " only " + render(c->child(), 3, prefixes);
        case ConceptKind::And: {
            std::string s = render(c->left(), 2, prefixes) + " and " + render(c->right(), 2, prefixes);
            return min_prec > 2 ? "(" + s + ")" : s;
        }
        case ConceptKind::Or: {
            std::string s = render(c->left(), 1, prefixes) + " or " + render(c->right(), 1, prefixes);
            return min_prec > 1 ? "(" + s + ")" : s;
        }
    }
    return {};
}

}  // namespace

ConceptRef parse_concept(std::string_view text, const PrefixMap& prefixes) {
    return Parser(text, prefixes).parse();
}

std::string render_concept(const ConceptRef& c, const PrefixMap& prefixes) {
    return render(c, 0, prefixes);
}

}  // namespace prunecel
