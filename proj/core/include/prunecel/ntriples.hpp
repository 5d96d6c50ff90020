#ifndef PRUNECEL_NTRIPLES_HPP
#define PRUNECEL_NTRIPLES_HPP

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "prunecel/knowledge_base.hpp"

namespace prunecel {

class NtriplesParseError : public std::runtime_error {
  public:
    NtriplesParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

struct NtTerm {
    enum class Kind { Iri, BlankNode, Literal };
    Kind kind = Kind::Iri;
    std::string value;     // IRI, blank-node label, or literal lexical form
    std::string datatype;  // literals only
    std::string lang;      // literals only
};

// Line-oriented W3C N-Triples parser. Invokes the callback with
// (subject, predicate, object, line number). Malformed input raises
// NtriplesParseError carrying the offending line.
void parse_ntriples(std::istream& in,
                    const std::function<void(const NtTerm&, const NtTerm&, const NtTerm&,
                                             std::size_t)>& on_triple);

struct LoadOptions {
    // apply rdfs:subClassOf axioms as a transitive membership closure
    bool materialize_subclass_closure = false;
};

// Loading rules: rdf:type with an IRI object asserts a concept
// membership; other predicates with IRI (or blank node) objects assert
// role edges; literal objects assert membership in the synthetic concept
// `<predicate>__hasLiteral`; blank nodes are skolemized to urn:skolem:
// IRIs; rdfs:subClassOf triples are kept as schema and never become
// edges or individuals. Duplicate triples are idempotent.
KnowledgeBase load_ntriples(std::istream& in, const LoadOptions& options = {});
KnowledgeBase load_ntriples(std::string_view text, const LoadOptions& options = {});

// Accepts plain or gzip-compressed files (sniffed by magic bytes).
KnowledgeBase load_ntriples_file(const std::string& path, const LoadOptions& options = {});

// serialization helpers for N-Triples emitters
std::string nt_iri(const Iri& iri);
std::string nt_literal(std::string_view lexical);

inline constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view kRdfValue = "http://www.w3.org/1999/02/22-rdf-syntax-ns#value";
inline constexpr std::string_view kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

}  // namespace prunecel

#endif
