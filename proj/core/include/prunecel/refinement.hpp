#ifndef PRUNECEL_REFINEMENT_HPP
#define PRUNECEL_REFINEMENT_HPP

#include <iosfwd>
#include <unordered_set>
#include <vector>

#include "prunecel/oracle.hpp"

namespace prunecel {

struct RefinementOptions {
    unsigned threads = 1;
    std::ostream* sparql_audit = nullptr;  // forwarded to the oracle
};

// The recursive template builder. Walks the concept, accumulating the
// surrounding context in the template, and emits oracle-backed
// candidates at the base cases. All matching cases contribute:
//   ∃r.X  -> recurse into X under ∃r.μ, plus the ∀r.X rewrite
//   ∀r.X  -> recurse into X under ∀r.μ
//   ¬X    -> recurse into X under ¬μ (only for non-atomic X)
//   X⊓Y   -> recurse into each side with the other fixed
//   X⊔Y   -> likewise
//   any C other than Top/Bottom -> oracle on C⊓μ and C⊔μ
//   Top   -> oracle on the template itself
// Every returned candidate covers at least one example.
std::vector<RefinementCandidate> rho_star(const ConceptRef& c, const Template& t,
                                          const IndividualSet& pos, const IndividualSet& neg,
                                          const KnowledgeBase& kb,
                                          const RefinementOptions& options = {});

// The full operator: rho_star under the bare-marker template, plus the
// negation of every rho_star result. Negation-wrapped candidates carry
// complemented counts and may cover zero examples. Within one call the
// result is deduplicated by canonical key (first occurrence wins);
// l(D) >= l(C) holds for every returned D.
std::vector<RefinementCandidate> rho(const ConceptRef& c, const IndividualSet& pos,
                                     const IndividualSet& neg, const KnowledgeBase& kb,
                                     const RefinementOptions& options = {});

// Drops candidates whose canonical key is already in `seen` and records
// the survivors' keys. The caller owns `seen` across search iterations.
std::vector<RefinementCandidate> dedupe_candidates(std::vector<RefinementCandidate> batch,
                                                   std::unordered_set<ConceptKey>& seen);

}  // namespace prunecel

#endif
