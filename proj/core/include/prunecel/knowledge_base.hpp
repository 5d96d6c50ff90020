#ifndef PRUNECEL_KNOWLEDGE_BASE_HPP
#define PRUNECEL_KNOWLEDGE_BASE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "prunecel/concept_expr.hpp"
#include "prunecel/individual_set.hpp"

namespace prunecel {

struct KbStats {
    std::uint64_t triple_count = 0;   // distinct stored assertions
    std::size_t concept_count = 0;    // named concepts present in the A-Box
    std::size_t role_count = 0;       // roles present in the A-Box
};

// Immutable indexed A-Box over a finite individual set. The domain is
// exactly the set of individuals occurring in at least one assertion.
// Safe for concurrent reads once built.
class KnowledgeBase {
  public:
    class Builder;

    // default-constructed = the empty knowledge base (empty domain)
    KnowledgeBase() = default;

    std::size_t individual_count() const { return individual_iris_.size(); }
    const std::vector<Iri>& individual_iris() const { return individual_iris_; }
    const Iri& individual_iri(IndividualId id) const { return individual_iris_[id]; }
    std::optional<IndividualId> find_individual(const Iri& iri) const;

    // named concepts, sorted by IRI
    const std::vector<Iri>& concept_iris() const { return concept_iris_; }
    std::optional<std::uint32_t> find_concept(const Iri& iri) const;
    const IndividualSet& concept_members(std::uint32_t concept_id) const {
        return concept_members_[concept_id];
    }
    // nullptr when the name does not occur in this A-Box
    const IndividualSet* concept_members(const Iri& iri) const;
    std::span<const std::uint32_t> types_of(IndividualId id) const;

    // roles, sorted by IRI
    const std::vector<Iri>& role_iris() const { return role_iris_; }
    std::optional<std::uint32_t> find_role(const Iri& iri) const;
    std::span<const IndividualId> successors(std::uint32_t role_id, IndividualId id) const;
    std::span<const IndividualId> predecessors(std::uint32_t role_id, IndividualId id) const;
    // individuals with at least one successor under the role
    const IndividualSet& role_domain(std::uint32_t role_id) const {
        return roles_[role_id].domain;
    }

    IndividualSet successors_of(std::uint32_t role_id, const IndividualSet& sources) const;
    IndividualSet predecessors_of(std::uint32_t role_id, const IndividualSet& targets) const;

    IndividualSet empty_set() const { return IndividualSet(individual_count()); }
    IndividualSet domain_set() const { return IndividualSet::full(individual_count()); }

    const KbStats& stats() const { return stats_; }

    struct TypeAssertion {
        Iri individual;
        Iri concept_iri;
    };
    struct EdgeAssertion {
        Iri subject;
        Iri role;
        Iri object;
    };
    // flat dumps in deterministic order, for audits and re-serialization
    std::vector<TypeAssertion> type_assertions() const;
    std::vector<EdgeAssertion> edge_assertions() const;

  private:
    struct Csr {
        std::vector<std::size_t> offsets;  // individual_count + 1
        std::vector<IndividualId> targets;
        std::span<const IndividualId> row(IndividualId id) const {
            return {targets.data() + offsets[id], targets.data() + offsets[id + 1]};
        }
    };
    struct RoleIndex {
        Csr fwd;
        Csr bwd;
        IndividualSet domain;
    };

    std::vector<Iri> individual_iris_;
    std::unordered_map<Iri, IndividualId> individual_ids_;

    std::vector<Iri> concept_iris_;
    std::unordered_map<Iri, std::uint32_t> concept_ids_;
    std::vector<IndividualSet> concept_members_;
    Csr types_;  // individual -> sorted concept ids

    std::vector<Iri> role_iris_;
    std::unordered_map<Iri, std::uint32_t> role_ids_;
    std::vector<RoleIndex> roles_;

    KbStats stats_;
};

class KnowledgeBase::Builder {
  public:
    // C(a): registers the individual, ignores exact duplicates
    void add_membership(const Iri& individual, const Iri& concept_iri);
    // r(a,b): registers both individuals
    void add_edge(const Iri& subject, const Iri& role, const Iri& object);
    // schema axiom; applied only when the closure flag is set at build time.
    // Subjects/objects of these axioms are concept names, not individuals.
    void add_subclass(const Iri& sub, const Iri& super);

    KnowledgeBase build(bool materialize_subclass_closure = false) const;

  private:
    IndividualId intern(const Iri& iri);

    std::vector<Iri> individual_iris_;
    std::unordered_map<Iri, IndividualId> individual_ids_;
    std::unordered_map<Iri, std::vector<IndividualId>> memberships_;
    std::unordered_map<Iri, std::vector<std::pair<IndividualId, IndividualId>>> edges_;
    std::unordered_map<Iri, std::unordered_set<Iri>> subclass_;
};

}  // namespace prunecel

#endif
