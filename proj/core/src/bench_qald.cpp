#include "prunecel/bench/qald.hpp"

#include <cctype>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace prunecel::bench {

namespace {

using nlohmann::json;

std::string sanitize_id(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
            c == '~')
            out += c;
        else
            out += '_';
    }
    return out;
}

void collect_bindings(const json& results, std::vector<AnswerValue>& answers) {
    if (!results.contains("bindings") || !results["bindings"].is_array()) return;
    for (const auto& binding : results["bindings"]) {
        for (const auto& [var, value] : binding.items()) {
            if (!value.is_object() || !value.contains("type") || !value.contains("value")) continue;
            const std::string type = value["type"].get<std::string>();
            if (type == "uri") {
                answers.push_back({AnswerValue::Kind::Iri, value["value"].get<std::string>(), false});
            } else if (type == "literal" || type == "typed-literal") {
                answers.push_back(
                    {AnswerValue::Kind::Literal, value["value"].get<std::string>(), false});
            }
            // bnodes carry no stable identity, skipped
        }
    }
}

}  // namespace

std::vector<BenchmarkRecord> ingest_qald(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw IngestError(std::string("dataset is not valid JSON: ") + e.what());
    }
    if (!doc.contains("questions") || !doc["questions"].is_array())
        throw IngestError("dataset has no top-level 'questions' array");

    std::vector<BenchmarkRecord> records;
    std::size_t index = 0;
    for (const auto& q : doc["questions"]) {
        const std::string where = "question #" + std::to_string(index);
        ++index;

        BenchmarkRecord rec;
        if (q.contains("id")) {
            rec.id = q["id"].is_string() ? q["id"].get<std::string>() : q["id"].dump();
        } else {
            throw IngestError(where + ": missing 'id'");
        }
        rec.id = sanitize_id(rec.id);

        if (!q.contains("question") || !q["question"].is_array() || q["question"].empty())
            throw IngestError(where + ": missing 'question' entries");
        bool got_text = false;
        for (const auto& entry : q["question"]) {
            if (!entry.contains("string")) continue;
            const std::string lang =
                entry.contains("language") ? entry["language"].get<std::string>() : "";
            if (!got_text || lang == "en") {
                rec.question_text = entry["string"].get<std::string>();
                rec.language = lang;
                got_text = true;
                if (lang == "en") break;
            }
        }
        if (!got_text) throw IngestError(where + ": no 'question[].string' present");

        if (!q.contains("query") || !q["query"].is_object() || !q["query"].contains("sparql"))
            throw IngestError(where + ": missing 'query.sparql'");
        rec.query_sparql = q["query"]["sparql"].get<std::string>();

        if (q.contains("answers") && q["answers"].is_array()) {
            for (const auto& ans : q["answers"]) {
                if (!ans.is_object()) continue;
                if (ans.contains("boolean")) {
                    AnswerValue v;
                    v.kind = AnswerValue::Kind::Boolean;
                    v.boolean = ans["boolean"].is_boolean()
                                    ? ans["boolean"].get<bool>()
                                    : ans["boolean"].dump() == "\"true\"";
                    rec.answers.push_back(v);
                } else if (ans.contains("results")) {
                    collect_bindings(ans["results"], rec.answers);
                }
            }
        }
        // empty ground-truth answer sets are removed from the benchmark
        if (rec.answers.empty()) continue;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<BenchmarkRecord> ingest_qald(const std::string& text) {
    std::istringstream in(text);
    return ingest_qald(in);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, double> read_scores_csv(std::istream& in) {
    std::map<std::string, double> scores;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        if (!header_seen) {
            // tolerate a UTF-8 BOM
            if (t.rfind("\xef\xbb\xbf", 0) == 0) t = t.substr(3);
            if (t != "question_id,f1")
                throw std::invalid_argument("scores CSV line 1: expected header 'question_id,f1'");
            header_seen = true;
            continue;
        }
        std::size_t comma = t.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("scores CSV line " + std::to_string(line_no) +
                                        ": expected 'id,value'");
        std::string id = trim(t.substr(0, comma));
        std::string value = trim(t.substr(comma + 1));
        double f1;
        try {
            std::size_t used = 0;
            f1 = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("scores CSV line " + std::to_string(line_no) +
                                        ": bad F1 value '" + value + "'");
        }
        if (f1 < 0.0 || f1 > 1.0)
            throw std::invalid_argument("scores CSV line " + std::to_string(line_no) +
                                        ": F1 out of [0,1]");
        scores[id] = f1;
    }
    if (!header_seen) throw std::invalid_argument("scores CSV is empty");
    return scores;
}

std::map<std::string, double> read_scores_csv(const std::string& text) {
    std::istringstream in(text);
    return read_scores_csv(in);
}

GroupingResult group(const std::vector<BenchmarkRecord>& records,
                     const std::map<std::string, double>& scores, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("group: threshold must be in [0,1]");
    std::string missing;
    GroupingResult out;
    out.threshold = threshold;
    for (const auto& rec : records) {
        auto it = scores.find(rec.id);
        if (it == scores.end()) {
            if (!missing.empty()) missing += ", ";
            missing += rec.id;
            continue;
        }
        if (it->second >= threshold)
            out.positives.push_back(rec.id);
        else
            out.negatives.push_back(rec.id);
    }
    if (!missing.empty())
        throw std::invalid_argument("group: records without a score: " + missing);
    return out;
}

}  // namespace prunecel::bench
