#include "prunecel/ntriples.hpp"

#include <zlib.h>

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>

namespace prunecel {

NtriplesParseError::NtriplesParseError(std::size_t line, const std::string& message)
    : std::runtime_error("N-Triples parse error at line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7f) {
        out += static_cast<char>(cp);
    } else if (cp <= 0x7ff) {
        out += static_cast<char>(0xc0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else if (cp <= 0xffff) {
        out += static_cast<char>(0xe0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    } else {
        out += static_cast<char>(0xf0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3f));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (cp & 0x3f));
    }
}

class LineParser {
  public:
    LineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    // returns false for blank and comment-only lines
    bool parse(NtTerm& s, NtTerm& p, NtTerm& o) {
        skip_ws();
        if (at_end() || line_[pos_] == '#') return false;
        s = parse_subject();
        skip_ws();
        p = parse_predicate();
        skip_ws();
        o = parse_object();
        skip_ws();
        if (at_end() || line_[pos_] != '.') fail("expected '.' after object");
        ++pos_;
        skip_ws();
        if (!at_end() && line_[pos_] != '#') fail("unexpected content after '.'");
        return true;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw NtriplesParseError(line_no_, msg); }

    bool at_end() const { return pos_ >= line_.size(); }
    void skip_ws() {
        while (!at_end() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }

    NtTerm parse_subject() {
        if (at_end()) fail("missing subject");
        if (line_[pos_] == '<') return parse_iri();
        if (line_[pos_] == '_') return parse_blank_node();
        fail("subject must be an IRI or blank node");
    }

    NtTerm parse_predicate() {
        if (at_end() || line_[pos_] != '<') fail("predicate must be an IRI");
        return parse_iri();
    }

    NtTerm parse_object() {
        if (at_end()) fail("missing object");
        if (line_[pos_] == '<') return parse_iri();
        if (line_[pos_] == '_') return parse_blank_node();
        if (line_[pos_] == '"') return parse_literal();
        fail("object must be an IRI, blank node, or literal");
    }

    NtTerm parse_iri() {
        ++pos_;  // '<'
        NtTerm term;
        term.kind = NtTerm::Kind::Iri;
        while (true) {
            if (at_end()) fail("unterminated IRI");
            char c = line_[pos_];
            if (c == '>') {
                ++pos_;
                break;
            }
            if (c == '\\') {
                parse_unicode_escape(term.value);
                continue;
            }
            if (c == ' ' || c == '<' || c == '"' ||
                static_cast<unsigned char>(c) <= 0x20) fail("invalid character in IRI");
            term.value += c;
            ++pos_;
        }
        if (term.value.empty()) fail("empty IRI");
        return term;
    }

    NtTerm parse_blank_node() {
        if (pos_ + 1 >= line_.size() || line_[pos_ + 1] != ':') fail("expected '_:'");
        pos_ += 2;
        NtTerm term;
        term.kind = NtTerm::Kind::BlankNode;
        while (!at_end()) {
            char c = line_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
                term.value += c;
                ++pos_;
            } else {
                break;
            }
        }
        // a trailing '.' belongs to the statement, not the label
        while (!term.value.empty() && term.value.back() == '.') {
            term.value.pop_back();
            --pos_;
        }
        if (term.value.empty()) fail("empty blank node label");
        return term;
    }

    NtTerm parse_literal() {
        ++pos_;  // '"'
        NtTerm term;
        term.kind = NtTerm::Kind::Literal;
        while (true) {
            if (at_end()) fail("unterminated literal");
            char c = line_[pos_];
            if (c == '"') {
                ++pos_;
                break;
            }
            if (c == '\\') {
                parse_string_escape(term.value);
                continue;
            }
            term.value += c;
            ++pos_;
        }
        if (!at_end() && line_[pos_] == '@') {
            ++pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
                                 line_[pos_] == '-')) {
                term.lang += line_[pos_];
                ++pos_;
            }
            if (term.lang.empty()) fail("empty language tag");
        } else if (pos_ + 1 < line_.size() && line_[pos_] == '^' && line_[pos_ + 1] == '^') {
            pos_ += 2;
            if (at_end() || line_[pos_] != '<') fail("datatype must be an IRI");
            term.datatype = parse_iri().value;
        }
        return term;
    }

    void parse_string_escape(std::string& out) {
        ++pos_;  // '\'
        if (at_end()) fail("dangling escape");
        char c = line_[pos_];
        ++pos_;
        switch (c) {
            case 't': out += '\t'; return;
            case 'b': out += '\b'; return;
            case 'n': out += '\n'; return;
            case 'r': out += '\r'; return;
            case 'f': out += '\f'; return;
            case '"': out += '"'; return;
            case '\'': out += '\''; return;
            case '\\': out += '\\'; return;
            case 'u': append_utf8(out, parse_hex(4)); return;
            case 'U': append_utf8(out, parse_hex(8)); return;
            default: fail(std::string("unknown escape '\\") + c + "'");
        }
    }

    void parse_unicode_escape(std::string& out) {
        ++pos_;  // '\'
        if (at_end()) fail("dangling escape in IRI");
        char c = line_[pos_];
        ++pos_;
        if (c == 'u') {
            append_utf8(out, parse_hex(4));
        } else if (c == 'U') {
            append_utf8(out, parse_hex(8));
        } else {
            fail("only \\u and \\U escapes are allowed in IRIs");
        }
    }

    std::uint32_t parse_hex(int digits) {
        std::uint32_t cp = 0;
        for (int i = 0; i < digits; ++i) {
            if (at_end()) fail("truncated unicode escape");
            char c = line_[pos_];
            std::uint32_t v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
            else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
            else fail("invalid hex digit in unicode escape");
            cp = cp * 16 + v;
            ++pos_;
        }
        return cp;
    }

    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

constexpr std::string_view kSkolemPrefix = "urn:skolem:";

Iri term_to_individual(const NtTerm& term) {
    if (term.kind == NtTerm::Kind::BlankNode) return std::string(kSkolemPrefix) + term.value;
    return term.value;
}

std::string inflate_gzip(const std::string& compressed) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK)
        throw std::runtime_error("gzip: inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    zs.avail_in = static_cast<uInt>(compressed.size());

    std::string out;
    char buffer[1 << 16];
    int ret;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buffer);
        zs.avail_out = sizeof(buffer);
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("gzip: corrupt stream");
        }
        out.append(buffer, sizeof(buffer) - zs.avail_out);
    } while (ret != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

}  // namespace

void parse_ntriples(std::istream& in,
                    const std::function<void(const NtTerm&, const NtTerm&, const NtTerm&,
                                             std::size_t)>& on_triple) {
    std::string line;
    std::size_t line_no = 0;
    NtTerm s, p, o;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        LineParser parser(line, line_no);
        s = NtTerm{};
        p = NtTerm{};
        o = NtTerm{};
        if (parser.parse(s, p, o)) on_triple(s, p, o, line_no);
    }
}

KnowledgeBase load_ntriples(std::istream& in, const LoadOptions& options) {
    KnowledgeBase::Builder builder;
    parse_ntriples(in, [&](const NtTerm& s, const NtTerm& p, const NtTerm& o, std::size_t) {
        const Iri subject = term_to_individual(s);
        if (o.kind == NtTerm::Kind::Literal) {
            builder.add_membership(subject, p.value + "__hasLiteral");
        } else if (p.value == kRdfType) {
            builder.add_membership(subject, term_to_individual(o));
        } else if (p.value == kRdfsSubClassOf) {
            builder.add_subclass(subject, term_to_individual(o));
        } else {
            builder.add_edge(subject, p.value, term_to_individual(o));
        }
    });
    return builder.build(options.materialize_subclass_closure);
}

KnowledgeBase load_ntriples(std::string_view text, const LoadOptions& options) {
    std::istringstream in{std::string(text)};
    return load_ntriples(in, options);
}

KnowledgeBase load_ntriples_file(const std::string& path, const LoadOptions& options) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open file: " + path);
    std::string raw((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (raw.size() >= 2 && static_cast<unsigned char>(raw[0]) == 0x1f &&
        static_cast<unsigned char>(raw[1]) == 0x8b) {
        raw = inflate_gzip(raw);
    }
    std::istringstream in(std::move(raw));
    return load_ntriples(in, options);
}

std::string nt_iri(const Iri& iri) { return "<" + iri + ">"; }

std::string nt_literal(std::string_view lexical) {
    std::string out = "\"";
    for (char c : lexical) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

}  // namespace prunecel
