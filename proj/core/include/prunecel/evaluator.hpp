#ifndef PRUNECEL_EVALUATOR_HPP
#define PRUNECEL_EVALUATOR_HPP

#include "prunecel/concept_expr.hpp"
#include "prunecel/individual_set.hpp"
#include "prunecel/knowledge_base.hpp"

namespace prunecel {

// Closed-world instance retrieval by structural recursion over the
// indexes. Unknown concept and role names denote the empty set; the
// result is always a subset of the domain. Throws std::logic_error if
// the expression contains a marker.
IndividualSet instances(const ConceptRef& c, const KnowledgeBase& kb);

struct Coverage {
    std::uint32_t positives = 0;  // |C^I ∩ E+|
    std::uint32_t negatives = 0;  // |C^I ∩ E-|
};

Coverage coverage(const ConceptRef& c, const IndividualSet& pos, const IndividualSet& neg,
                  const KnowledgeBase& kb);

}  // namespace prunecel

#endif
