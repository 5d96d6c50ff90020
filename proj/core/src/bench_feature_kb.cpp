#include "prunecel/bench/feature_kb.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

#include "prunecel/ntriples.hpp"

namespace prunecel::bench {

using vocab::kLiteralNs;
using vocab::kQuestionNs;
using vocab::kValueNs;
using vocab::kVocabNs;
using vocab::kWordNs;

Iri question_iri(const std::string& record_id) { return kQuestionNs + "Q" + record_id; }

PrefixMap default_prefixes() {
    PrefixMap map;
    map.add("dqq", kQuestionNs);
    map.add("dqb", kVocabNs);
    map.add("dqw", kWordNs);
    map.add("dql", kLiteralNs);
    map.add("dqv", kValueNs);
    map.add("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    map.add("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    map.add("wd", "http://www.wikidata.org/entity/");
    map.add("wdt", "http://www.wikidata.org/prop/direct/");
    map.add("dbo", "http://dbpedia.org/ontology/");
    map.add("dbr", "http://dbpedia.org/resource/");
    map.add("dbp", "http://dbpedia.org/property/");
    return map;
}

namespace {

const std::set<std::string>& question_words() {
    static const std::set<std::string> words = {
        "who", "what",  "where", "when", "which", "how",  "why",  "whom", "whose",
        "is",  "are",   "does",  "do",   "did",   "give", "list", "show"};
    return words;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

std::string first_word_lower(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return "";
    std::string w;
    for (char c : tokens.front()) {
        if (std::isalpha(static_cast<unsigned char>(c)))
            w += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return w;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

struct TripleSink {
    std::set<std::string> lines;
    void type(const Iri& subject, const Iri& concept_iri) {
        lines.insert(nt_iri(subject) + " " + nt_iri(Iri(kRdfType)) + " " + nt_iri(concept_iri) +
                     " .");
    }
    void edge(const Iri& subject, const Iri& role, const Iri& object) {
        lines.insert(nt_iri(subject) + " " + nt_iri(role) + " " + nt_iri(object) + " .");
    }
    void literal(const Iri& subject, const Iri& predicate, const std::string& value) {
        lines.insert(nt_iri(subject) + " " + nt_iri(predicate) + " " + nt_literal(value) + " .");
    }
};

// --- lexical SPARQL feature scan ---------------------------------------------

// masks <...> IRIs and "..." strings so token scans cannot fire inside them
std::string mask_spans(const std::string& query, std::vector<std::string>* iris) {
    std::string masked = query;
    for (std::size_t i = 0; i < masked.size(); ++i) {
        if (masked[i] == '<') {
            std::size_t end = masked.find('>', i + 1);
            if (end == std::string::npos) break;
            if (iris && end > i + 1) iris->push_back(masked.substr(i + 1, end - i - 1));
            for (std::size_t j = i; j <= end; ++j) masked[j] = ' ';
            i = end;
        } else if (masked[i] == '"') {
            std::size_t j = i + 1;
            while (j < masked.size() && masked[j] != '"') {
                if (masked[j] == '\\') ++j;
                ++j;
            }
            for (std::size_t k = i; k < std::min(j + 1, masked.size()); ++k) masked[k] = ' ';
            i = j;
        }
    }
    return masked;
}

bool word_boundary_find(const std::string& haystack, const std::string& needle,
                        std::size_t& out_pos) {
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        const bool left_ok =
            pos == 0 || !std::isalnum(static_cast<unsigned char>(haystack[pos - 1]));
        const std::size_t after = pos + needle.size();
        const bool right_ok =
            after >= haystack.size() || !std::isalnum(static_cast<unsigned char>(haystack[after]));
        if (left_ok && right_ok) {
            out_pos = pos;
            return true;
        }
        ++pos;
    }
    return false;
}

std::string to_upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// prefixes declared in the query plus a table of well-known ones
std::map<std::string, std::string> collect_prefixes(const std::string& masked_no_iris,
                                                    const std::string& original) {
    std::map<std::string, std::string> prefixes = {
        {"wd", "http://www.wikidata.org/entity/"},
        {"wdt", "http://www.wikidata.org/prop/direct/"},
        {"p", "http://www.wikidata.org/prop/"},
        {"ps", "http://www.wikidata.org/prop/statement/"},
        {"pq", "http://www.wikidata.org/prop/qualifier/"},
        {"dbo", "http://dbpedia.org/ontology/"},
        {"dbr", "http://dbpedia.org/resource/"},
        {"dbp", "http://dbpedia.org/property/"},
        {"res", "http://dbpedia.org/resource/"},
        {"onto", "http://dbpedia.org/ontology/"},
        {"foaf", "http://xmlns.com/foaf/0.1/"},
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"rdfs", "http://www.w3.org/2000/01/rdf-schema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
        {"xsd", "http://www.w3.org/2001/XMLSchema#"},
    };
    const std::string upper = to_upper(masked_no_iris);
    std::size_t pos = 0;
    while ((pos = upper.find("PREFIX", pos)) != std::string::npos) {
        std::size_t cur = pos + 6;
        pos = cur;
        while (cur < masked_no_iris.size() &&
               std::isspace(static_cast<unsigned char>(masked_no_iris[cur])))
            ++cur;
        std::size_t colon = masked_no_iris.find(':', cur);
        if (colon == std::string::npos) continue;
        std::string name = masked_no_iris.substr(cur, colon - cur);
        // the IRI itself was masked out; read it from the original text
        std::size_t lt = original.find('<', colon);
        if (lt == std::string::npos) continue;
        std::size_t gt = original.find('>', lt);
        if (gt == std::string::npos) continue;
        prefixes[name] = original.substr(lt + 1, gt - lt - 1);
    }
    return prefixes;
}

bool is_pname_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

// expands prefixed names like wdt:P131 occurring outside IRIs and strings
std::vector<Iri> scan_prefixed_names(const std::string& masked,
                                     const std::map<std::string, std::string>& prefixes) {
    std::vector<Iri> out;
    for (std::size_t i = 0; i < masked.size(); ++i) {
        if (!std::isalpha(static_cast<unsigned char>(masked[i]))) continue;
        std::size_t start = i;
        while (i < masked.size() && is_pname_char(masked[i])) ++i;
        if (i >= masked.size() || masked[i] != ':') continue;
        std::string prefix = masked.substr(start, i - start);
        std::size_t local_start = ++i;
        while (i < masked.size() && is_pname_char(masked[i])) ++i;
        if (i == local_start) continue;
        std::string local = masked.substr(local_start, i - local_start);
        while (!local.empty() && local.back() == '.') {  // statement dot
            local.pop_back();
            --i;
        }
        if (local.empty()) continue;
        auto it = prefixes.find(prefix);
        if (it != prefixes.end()) out.push_back(it->second + local);
        --i;  // resume after the token
    }
    return out;
}

bool in_skipped_namespace(const Iri& iri) {
    static const std::array<std::string, 4> skipped = {
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
        "http://www.w3.org/2000/01/rdf-schema#",
        "http://www.w3.org/2002/07/owl#",
        "http://www.w3.org/2001/XMLSchema#",
    };
    for (const auto& ns : skipped)
        if (iri.rfind(ns, 0) == 0) return true;
    return false;
}

bool is_property_iri(const Iri& iri) {
    static const std::array<std::string, 3> property_ns = {
        "http://www.wikidata.org/prop",
        "http://dbpedia.org/ontology/",
        "http://dbpedia.org/property/",
    };
    for (const auto& ns : property_ns)
        if (iri.rfind(ns, 0) == 0) return true;
    return iri.find("/prop/") != std::string::npos;
}

// segments inside the outermost braces, split at '.' and ';'
std::size_t count_triple_patterns(const std::string& masked) {
    std::size_t open = masked.find('{');
    std::size_t close = masked.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close <= open) return 0;
    std::string body = masked.substr(open + 1, close - open - 1);
    std::size_t count = 0;
    bool segment_has_content = false;
    for (char c : body) {
        if (c == '.' || c == ';') {
            if (segment_has_content) ++count;
            segment_has_content = false;
        } else if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') {
            segment_has_content = true;
        }
    }
    if (segment_has_content) ++count;
    return count;
}

void emit_query_features(TripleSink& sink, const Iri& query_node, const std::string& query) {
    std::vector<std::string> iris;
    const std::string masked = mask_spans(query, &iris);

    bool parsed_something = false;
    std::size_t found;
    const std::string upper = to_upper(masked);
    if (word_boundary_find(upper, "SELECT", found)) {
        sink.type(query_node, kVocabNs + "SelectQuery");
        parsed_something = true;
    } else if (word_boundary_find(upper, "ASK", found)) {
        sink.type(query_node, kVocabNs + "AskQuery");
        parsed_something = true;
    }

    const auto prefixes = collect_prefixes(masked, query);
    auto expanded = scan_prefixed_names(masked, prefixes);
    // drop the IRIs of PREFIX declarations themselves: they appear in
    // `iris` as namespace IRIs ending in a separator with empty remainder
    for (const auto& iri : iris) {
        if (!iri.empty() && iri.back() != '/' && iri.back() != '#') expanded.push_back(iri);
    }
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    for (const auto& iri : expanded) {
        if (in_skipped_namespace(iri)) continue;
        sink.edge(query_node, kVocabNs + (is_property_iri(iri) ? "hasProperty" : "hasEntity"),
                  iri);
        parsed_something = true;
    }

    const std::size_t patterns = count_triple_patterns(masked);
    if (patterns == 1) {
        sink.type(query_node, kVocabNs + "OneTriplePattern");
    } else if (patterns == 2) {
        sink.type(query_node, kVocabNs + "TwoTriplePatterns");
    } else if (patterns >= 3) {
        sink.type(query_node, kVocabNs + "ManyTriplePatterns");
    }
    if (patterns == 0 || !parsed_something) sink.type(query_node, kVocabNs + "UnparsedQuery");
}

}  // namespace

std::string build_kb(const std::vector<BenchmarkRecord>& records) {
    TripleSink sink;
    for (const auto& rec : records) {
        const Iri q = question_iri(rec.id);
        sink.type(q, kVocabNs + "Question");
        sink.literal(q, Iri(kRdfValue), rec.question_text);

        const auto tokens = tokenize(rec.question_text);
        const std::string word = first_word_lower(tokens);
        if (question_words().count(word)) {
            const Iri word_node = kWordNs + word;
            sink.edge(q, kVocabNs + "hasQuestionWord", word_node);
            sink.type(word_node, kVocabNs + "QuestionWord");
            sink.type(word_node, kVocabNs + "Word_" + word);
        }

        const std::size_t n = tokens.size();
        if (n <= 5)
            sink.type(q, kVocabNs + "ShortQuestion");
        else if (n <= 10)
            sink.type(q, kVocabNs + "MediumQuestion");
        else
            sink.type(q, kVocabNs + "LongQuestion");

        for (const auto& ans : rec.answers) {
            switch (ans.kind) {
                case AnswerValue::Kind::Iri:
                    sink.edge(q, kVocabNs + "hasIriAnswer", ans.text);
                    sink.edge(q, kVocabNs + "hasEntityAnswer", ans.text);
                    break;
                case AnswerValue::Kind::Literal: {
                    const Iri value_node = kLiteralNs + "v" + hex64(fnv1a64(ans.text));
                    sink.edge(q, kVocabNs + "hasLiteralAnswer", value_node);
                    sink.type(value_node, kVocabNs + "LiteralValue");
                    break;
                }
                case AnswerValue::Kind::Boolean: {
                    const Iri value_node = kValueNs + (ans.boolean ? "true" : "false");
                    sink.edge(q, kVocabNs + "hasBooleanAnswer", value_node);
                    sink.type(value_node, kVocabNs + "BooleanValue");
                    break;
                }
            }
        }

        const Iri query_node = q + "_query";
        sink.edge(q, kVocabNs + "hasQuery", query_node);
        sink.type(query_node, kVocabNs + "Query");
        emit_query_features(sink, query_node, rec.query_sparql);
    }

    std::string out;
    for (const auto& line : sink.lines) {
        out += line;
        out += '\n';
    }
    return out;
}

std::vector<Iri> answer_entities(const std::vector<BenchmarkRecord>& records) {
    std::set<Iri> entities;
    for (const auto& rec : records)
        for (const auto& ans : rec.answers)
            if (ans.kind == AnswerValue::Kind::Iri) entities.insert(ans.text);
    return {entities.begin(), entities.end()};
}

}  // namespace prunecel::bench
