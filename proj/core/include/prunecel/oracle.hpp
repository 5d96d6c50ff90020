#ifndef PRUNECEL_ORACLE_HPP
#define PRUNECEL_ORACLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prunecel/concept_expr.hpp"
#include "prunecel/evaluator.hpp"
#include "prunecel/individual_set.hpp"
#include "prunecel/knowledge_base.hpp"

namespace prunecel {

// How a candidate concept was produced.
enum class Provenance : std::uint8_t {
    ConceptFiller,    // marker replaced by a named concept
    NegatedFiller,    // marker replaced by a negated named concept
    RoleFiller,       // marker replaced by ∃r.Top
    ForallSwap,       // ∃r.X rewritten to ∀r.X
    NegationWrapper,  // negation of another candidate
    RCombination,     // disjunction built by the recursive extension
};

struct RefinementCandidate {
    ConceptRef expr;
    std::uint32_t cp = 0;  // covered positives
    std::uint32_t cn = 0;  // covered negatives
    Provenance provenance = Provenance::ConceptFiller;
};

struct FillerHit {
    Iri iri;
    std::uint32_t cp = 0;
    std::uint32_t cn = 0;
};

struct OracleOptions {
    unsigned threads = 1;
    // when set, receives the SELECT query an endpoint-backed oracle
    // would issue for each evaluated template (audit only)
    std::ostream* sparql_audit = nullptr;
};

// The three oracle functions: enumerate exactly the named concepts /
// negated named concepts / roles that, substituted for the marker, yield
// a concept covering at least one example, together with its positive
// and negative coverage counts. The template is evaluated once against
// the examples' neighborhood; each filler then only pays for the marker
// path, not for a full retrieval. Results are sorted by IRI.
std::vector<FillerHit> concept_fillers(const Template& t, const IndividualSet& pos,
                                       const IndividualSet& neg, const KnowledgeBase& kb,
                                       const OracleOptions& options = {});
std::vector<FillerHit> negated_concept_fillers(const Template& t, const IndividualSet& pos,
                                               const IndividualSet& neg, const KnowledgeBase& kb,
                                               const OracleOptions& options = {});
std::vector<FillerHit> role_fillers(const Template& t, const IndividualSet& pos,
                                    const IndividualSet& neg, const KnowledgeBase& kb,
                                    const OracleOptions& options = {});

// Instantiates the template with every surviving filler: named concepts,
// their negations, and ∃r.Top role atoms, each candidate tagged with its
// provenance and counts. Every returned candidate covers >= 1 example.
std::vector<RefinementCandidate> generate(const Template& t, const IndividualSet& pos,
                                          const IndividualSet& neg, const KnowledgeBase& kb,
                                          const OracleOptions& options = {});

enum class OracleKind { ConceptFillers, NegatedConceptFillers, RoleFillers };

// The SELECT query an endpoint-backed oracle would issue for this
// template — audit text only, never executed here.
std::string oracle_sparql_query(const Template& t, OracleKind kind, const IndividualSet& pos,
                                const IndividualSet& neg, const KnowledgeBase& kb);

}  // namespace prunecel

#endif
