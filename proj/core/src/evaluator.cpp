#include "prunecel/evaluator.hpp"

#include <stdexcept>

namespace prunecel {

IndividualSet instances(const ConceptRef& c, const KnowledgeBase& kb) {
    switch (c->kind()) {
        case ConceptKind::Top:
            return kb.domain_set();
        case ConceptKind::Bottom:
            return kb.empty_set();
        case ConceptKind::Marker:
            throw std::logic_error("instances: expression contains a template marker");
        case ConceptKind::Named: {
            const IndividualSet* members = kb.concept_members(c->name());
            return members ? *members : kb.empty_set();
        }
        case ConceptKind::Not:
            return kb.domain_set() - instances(c->child(), kb);
        case ConceptKind::And:
            return instances(c->left(), kb) & instances(c->right(), kb);
        case ConceptKind::Or:
            return instances(c->left(), kb) | instances(c->right(), kb);
        case ConceptKind::Exists: {
            auto role = kb.find_role(c->role());
            if (!role) return kb.empty_set();
            return kb.predecessors_of(*role, instances(c->child(), kb));
        }
        case ConceptKind::ForAll: {
            // {a | all r-successors in C}; individuals without successors
            // satisfy vacuously, so an unknown role denotes the full domain
            auto role = kb.find_role(c->role());
            if (!role) return kb.domain_set();
            IndividualSet violating = kb.domain_set() - instances(c->child(), kb);
            return kb.domain_set() - kb.predecessors_of(*role, violating);
        }
    }
    return kb.empty_set();
}

Coverage coverage(const ConceptRef& c, const IndividualSet& pos, const IndividualSet& neg,
                  const KnowledgeBase& kb) {
    IndividualSet ext = instances(c, kb);
    Coverage cov;
    cov.positives = static_cast<std::uint32_t>(ext.count_intersection(pos));
    cov.negatives = static_cast<std::uint32_t>(ext.count_intersection(neg));
    return cov;
}

}  // namespace prunecel
