#ifndef PRUNECEL_BENCH_QALD_HPP
#define PRUNECEL_BENCH_QALD_HPP

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace prunecel::bench {

struct AnswerValue {
    enum class Kind { Iri, Literal, Boolean };
    Kind kind = Kind::Iri;
    std::string text;      // IRI or literal lexical form
    bool boolean = false;  // Kind::Boolean only
};

struct BenchmarkRecord {
    std::string id;  // sanitized, IRI-safe
    std::string question_text;
    std::string language;
    std::string query_sparql;
    std::vector<AnswerValue> answers;
};

class IngestError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// QALD-JSON: top-level `questions` array; per question `question[]`
// language/string pairs, `query.sparql`, and `answers` in SPARQL-results
// form. English is preferred, else the first available language.
// Questions with an empty ground-truth answer set are dropped. A missing
// required field raises IngestError naming the question index.
std::vector<BenchmarkRecord> ingest_qald(std::istream& in);
std::vector<BenchmarkRecord> ingest_qald(const std::string& text);

// CSV with header `question_id,f1`.
std::map<std::string, double> read_scores_csv(std::istream& in);
std::map<std::string, double> read_scores_csv(const std::string& text);

struct GroupingResult {
    std::vector<std::string> positives;  // record ids, input order
    std::vector<std::string> negatives;
    double threshold = 0.5;
};

// Positives are the records with score >= threshold ("0.5 or higher").
// A record without a score is an error listing the missing ids.
GroupingResult group(const std::vector<BenchmarkRecord>& records,
                     const std::map<std::string, double>& scores, double threshold = 0.5);

}  // namespace prunecel::bench

#endif
