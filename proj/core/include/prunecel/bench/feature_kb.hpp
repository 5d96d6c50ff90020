#ifndef PRUNECEL_BENCH_FEATURE_KB_HPP
#define PRUNECEL_BENCH_FEATURE_KB_HPP

#include <string>
#include <vector>

#include "prunecel/bench/qald.hpp"
#include "prunecel/concept_expr.hpp"

namespace prunecel::bench {

// Feature vocabulary. Question individuals live under dqq:, vocabulary
// terms under dqb:, question-word individuals under dqw:, literal-value
// individuals under dql:, boolean values under dqv:.
namespace vocab {
inline const std::string kQuestionNs = "urn:dqq:";
inline const std::string kVocabNs = "urn:dqb:";
inline const std::string kWordNs = "urn:dqw:";
inline const std::string kLiteralNs = "urn:dql:";
inline const std::string kValueNs = "urn:dqv:";
}  // namespace vocab

// "Q" + sanitized record id, in the question namespace.
Iri question_iri(const std::string& record_id);

// dqq/dqb/dqw/dql/dqv plus rdf, rdfs, wd, wdt, dbo, dbr, dbp.
PrefixMap default_prefixes();

// Emits the feature knowledge base as sorted, deduplicated N-Triples.
// Per question: a Question type plus its text, the leading question
// word, a token-count length bin, answer-shape edges to the answer
// individuals, and a query individual carrying the query form, a
// triple-pattern count bin, and hasProperty/hasEntity edges for every
// IRI scanned from the query text. Deterministic and idempotent.
std::string build_kb(const std::vector<BenchmarkRecord>& records);

// IRI answers of the given records, sorted and deduplicated; the
// entity set that CBD enrichment fetches descriptions for.
std::vector<Iri> answer_entities(const std::vector<BenchmarkRecord>& records);

}  // namespace prunecel::bench

#endif
