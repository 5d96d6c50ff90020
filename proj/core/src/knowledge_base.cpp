#include "prunecel/knowledge_base.hpp"

#include <algorithm>
#include <utility>

namespace prunecel {

std::optional<IndividualId> KnowledgeBase::find_individual(const Iri& iri) const {
    auto it = individual_ids_.find(iri);
    if (it == individual_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::uint32_t> KnowledgeBase::find_concept(const Iri& iri) const {
    auto it = concept_ids_.find(iri);
    if (it == concept_ids_.end()) return std::nullopt;
    return it->second;
}

const IndividualSet* KnowledgeBase::concept_members(const Iri& iri) const {
    auto id = find_concept(iri);
    return id ? &concept_members_[*id] : nullptr;
}

std::span<const std::uint32_t> KnowledgeBase::types_of(IndividualId id) const {
    return {types_.targets.data() + types_.offsets[id],
            types_.targets.data() + types_.offsets[id + 1]};
}

std::optional<std::uint32_t> KnowledgeBase::find_role(const Iri& iri) const {
    auto it = role_ids_.find(iri);
    if (it == role_ids_.end()) return std::nullopt;
    return it->second;
}

std::span<const IndividualId> KnowledgeBase::successors(std::uint32_t role_id,
                                                        IndividualId id) const {
    return roles_[role_id].fwd.row(id);
}

std::span<const IndividualId> KnowledgeBase::predecessors(std::uint32_t role_id,
                                                          IndividualId id) const {
    return roles_[role_id].bwd.row(id);
}

IndividualSet KnowledgeBase::successors_of(std::uint32_t role_id,
                                           const IndividualSet& sources) const {
    IndividualSet out = empty_set();
    const Csr& fwd = roles_[role_id].fwd;
    sources.for_each([&](IndividualId src) {
        for (IndividualId dst : fwd.row(src)) out.add(dst);
    });
    return out;
}

IndividualSet KnowledgeBase::predecessors_of(std::uint32_t role_id,
                                             const IndividualSet& targets) const {
    IndividualSet out = empty_set();
    const Csr& bwd = roles_[role_id].bwd;
    targets.for_each([&](IndividualId dst) {
        for (IndividualId src : bwd.row(dst)) out.add(src);
    });
    return out;
}

std::vector<KnowledgeBase::TypeAssertion> KnowledgeBase::type_assertions() const {
    std::vector<TypeAssertion> out;
    for (std::uint32_t cid = 0; cid < concept_iris_.size(); ++cid) {
        concept_members_[cid].for_each([&](IndividualId id) {
            out.push_back({individual_iris_[id], concept_iris_[cid]});
        });
    }
    return out;
}

std::vector<KnowledgeBase::EdgeAssertion> KnowledgeBase::edge_assertions() const {
    std::vector<EdgeAssertion> out;
    for (std::uint32_t rid = 0; rid < role_iris_.size(); ++rid) {
        const Csr& fwd = roles_[rid].fwd;
        for (IndividualId src = 0; src < individual_iris_.size(); ++src) {
            for (IndividualId dst : fwd.row(src))
                out.push_back({individual_iris_[src], role_iris_[rid], individual_iris_[dst]});
        }
    }
    return out;
}

// --- builder ----------------------------------------------------------------

IndividualId KnowledgeBase::Builder::intern(const Iri& iri) {
    auto [it, inserted] = individual_ids_.try_emplace(iri,
                                                      static_cast<IndividualId>(individual_iris_.size()));
    if (inserted) individual_iris_.push_back(iri);
    return it->second;
}

void KnowledgeBase::Builder::add_membership(const Iri& individual, const Iri& concept_iri) {
    memberships_[concept_iri].push_back(intern(individual));
}

void KnowledgeBase::Builder::add_edge(const Iri& subject, const Iri& role, const Iri& object) {
    IndividualId s = intern(subject);
    IndividualId o = intern(object);
    edges_[role].emplace_back(s, o);
}

void KnowledgeBase::Builder::add_subclass(const Iri& sub, const Iri& super) {
    subclass_[sub].insert(super);
}

namespace {

void build_csr(std::size_t n, std::vector<std::pair<IndividualId, IndividualId>> pairs,
               std::vector<std::size_t>& offsets, std::vector<IndividualId>& targets) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    offsets.assign(n + 1, 0);
    for (const auto& [src, dst] : pairs) offsets[src + 1]++;
    for (std::size_t i = 1; i <= n; ++i) offsets[i] += offsets[i - 1];
    targets.resize(pairs.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [src, dst] : pairs) targets[cursor[src]++] = dst;
}

}  // namespace

KnowledgeBase KnowledgeBase::Builder::build(bool materialize_subclass_closure) const {
    KnowledgeBase kb;
    kb.individual_iris_ = individual_iris_;
    kb.individual_ids_ = individual_ids_;
    const std::size_t n = individual_iris_.size();

    // memberships, optionally closed over the subclass hierarchy
    std::unordered_map<Iri, std::vector<IndividualId>> members = memberships_;
    if (materialize_subclass_closure && !subclass_.empty()) {
        for (const auto& [concept_iri, direct] : memberships_) {
            // collect transitive superclasses of concept_iri
            std::vector<Iri> stack{concept_iri};
            std::unordered_set<Iri> visited{concept_iri};
            while (!stack.empty()) {
                Iri cur = std::move(stack.back());
                stack.pop_back();
                auto it = subclass_.find(cur);
                if (it == subclass_.end()) continue;
                for (const Iri& super : it->second) {
                    if (visited.insert(super).second) {
                        auto& bucket = members[super];
                        bucket.insert(bucket.end(), direct.begin(), direct.end());
                        stack.push_back(super);
                    }
                }
            }
        }
    }

    kb.concept_iris_.reserve(members.size());
    for (const auto& [iri, ids] : members) kb.concept_iris_.push_back(iri);
    std::sort(kb.concept_iris_.begin(), kb.concept_iris_.end());
    std::uint64_t membership_count = 0;
    std::vector<std::vector<std::uint32_t>> types_per_individual(n);
    for (std::uint32_t cid = 0; cid < kb.concept_iris_.size(); ++cid) {
        const Iri& iri = kb.concept_iris_[cid];
        kb.concept_ids_[iri] = cid;
        IndividualSet set(n);
        for (IndividualId id : members.at(iri)) set.add(id);
        membership_count += set.count();
        set.for_each([&](IndividualId id) { types_per_individual[id].push_back(cid); });
        kb.concept_members_.push_back(std::move(set));
    }
    kb.types_.offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        kb.types_.offsets[i + 1] = kb.types_.offsets[i] + types_per_individual[i].size();
    kb.types_.targets.reserve(membership_count);
    for (auto& ts : types_per_individual)
        kb.types_.targets.insert(kb.types_.targets.end(), ts.begin(), ts.end());

    // roles
    kb.role_iris_.reserve(edges_.size());
    for (const auto& [iri, pairs] : edges_) kb.role_iris_.push_back(iri);
    std::sort(kb.role_iris_.begin(), kb.role_iris_.end());
    std::uint64_t edge_count = 0;
    for (std::uint32_t rid = 0; rid < kb.role_iris_.size(); ++rid) {
        const Iri& iri = kb.role_iris_[rid];
        kb.role_ids_[iri] = rid;
        RoleIndex idx;
        idx.domain = IndividualSet(n);
        build_csr(n, edges_.at(iri), idx.fwd.offsets, idx.fwd.targets);
        auto swapped = edges_.at(iri);
        for (auto& [s, o] : swapped) std::swap(s, o);
        build_csr(n, std::move(swapped), idx.bwd.offsets, idx.bwd.targets);
        for (IndividualId id = 0; id < n; ++id)
            if (idx.fwd.offsets[id + 1] > idx.fwd.offsets[id]) idx.domain.add(id);
        edge_count += idx.fwd.targets.size();
        kb.roles_.push_back(std::move(idx));
    }

    std::uint64_t subclass_count = 0;
    for (const auto& [sub, supers] : subclass_) subclass_count += supers.size();

    kb.stats_.triple_count = membership_count + edge_count + subclass_count;
    kb.stats_.concept_count = kb.concept_iris_.size();
    kb.stats_.role_count = kb.role_iris_.size();
    return kb;
}

}  // namespace prunecel
