#include "raw_kb.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "prunecel/ntriples.hpp"

namespace testsupport {

using prunecel::Concept;
using prunecel::ConceptKind;
using prunecel::ConceptRef;
using prunecel::IndividualSet;
using prunecel::KnowledgeBase;
using prunecel::Template;

std::vector<std::string> RawKb::individuals() const {
    std::set<std::string> names;
    for (const auto& t : types) names.insert(t.individual);
    for (const auto& e : edges) {
        names.insert(e.subject);
        names.insert(e.object);
    }
    return {names.begin(), names.end()};
}

KnowledgeBase RawKb::build() const {
    KnowledgeBase::Builder builder;
    for (const auto& t : types) builder.add_membership(t.individual, t.concept_iri);
    for (const auto& e : edges) builder.add_edge(e.subject, e.role, e.object);
    return builder.build();
}

std::string RawKb::to_ntriples() const {
    std::set<std::string> lines;
    for (const auto& t : types)
        lines.insert(prunecel::nt_iri(t.individual) + " " + prunecel::nt_iri(std::string(prunecel::kRdfType)) +
                     " " + prunecel::nt_iri(t.concept_iri) + " .");
    for (const auto& e : edges)
        lines.insert(prunecel::nt_iri(e.subject) + " " + prunecel::nt_iri(e.role) + " " +
                     prunecel::nt_iri(e.object) + " .");
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

bool RawKb::member(const std::string& individual, const ConceptRef& c) const {
    switch (c->kind()) {
        case ConceptKind::Top:
            return true;
        case ConceptKind::Bottom:
            return false;
        case ConceptKind::Marker:
            throw std::logic_error("reference evaluator got a marker");
        case ConceptKind::Named:
            for (const auto& t : types)
                if (t.individual == individual && t.concept_iri == c->name()) return true;
            return false;
        case ConceptKind::Not:
            return !member(individual, c->child());
        case ConceptKind::And:
            return member(individual, c->left()) && member(individual, c->right());
        case ConceptKind::Or:
            return member(individual, c->left()) || member(individual, c->right());
        case ConceptKind::Exists:
            for (const auto& e : edges)
                if (e.subject == individual && e.role == c->role() && member(e.object, c->child()))
                    return true;
            return false;
        case ConceptKind::ForAll:
            for (const auto& e : edges)
                if (e.subject == individual && e.role == c->role() && !member(e.object, c->child()))
                    return false;
            return true;
    }
    return false;
}

IndividualSet RawKb::instances_reference(const ConceptRef& c, const KnowledgeBase& kb) const {
    IndividualSet out = kb.empty_set();
    for (const auto& name : individuals()) {
        if (member(name, c)) {
            auto id = kb.find_individual(name);
            if (!id) throw std::logic_error("reference KB and store disagree on the domain");
            out.add(*id);
        }
    }
    return out;
}

RawKb random_kb(Rng& rng, const RandomKbOptions& options) {
    RawKb kb;
    const std::uint32_t n_ind = 1 + rng.below(options.max_individuals);
    const std::uint32_t n_concepts = rng.below(options.max_concepts + 1);
    const std::uint32_t n_roles = rng.below(options.max_roles + 1);
    const std::uint32_t n_triples = rng.below(options.max_triples + 1);

    auto ind = [&] { return "i" + std::to_string(rng.below(n_ind)); };
    for (std::uint32_t k = 0; k < n_triples; ++k) {
        const bool want_type = n_concepts > 0 && (n_roles == 0 || rng.chance(0.5));
        if (want_type) {
            kb.types.push_back({ind(), "C" + std::to_string(rng.below(n_concepts))});
        } else if (n_roles > 0) {
            kb.edges.push_back({ind(), "r" + std::to_string(rng.below(n_roles)), ind()});
        }
    }
    return kb;
}

ConceptRef random_concept(Rng& rng, const std::vector<std::string>& concepts,
                          const std::vector<std::string>& roles, int max_depth) {
    auto leaf = [&]() -> ConceptRef {
        const std::uint32_t pick = rng.below(10);
        if (pick == 0) return Concept::top();
        if (pick == 1) return Concept::bottom();
        if (pick == 2 || concepts.empty()) return Concept::named("Unknown" + std::to_string(rng.below(3)));
        return Concept::named(concepts[rng.below(static_cast<std::uint32_t>(concepts.size()))]);
    };
    if (max_depth <= 0) return leaf();
    switch (rng.below(12)) {
        case 0:
        case 1:
        case 2:
            return leaf();
        case 3:
        case 4:
            return Concept::negation(random_concept(rng, concepts, roles, max_depth - 1));
        case 5:
        case 6:
            return Concept::conjunction(random_concept(rng, concepts, roles, max_depth - 1),
                                        random_concept(rng, concepts, roles, max_depth - 1));
        case 7:
        case 8:
            return Concept::disjunction(random_concept(rng, concepts, roles, max_depth - 1),
                                        random_concept(rng, concepts, roles, max_depth - 1));
        default: {
            // mostly KB roles, occasionally an unknown one (empty relation)
            std::string role;
            if (roles.empty() || rng.below(10) == 0) {
                role = "unknownRole" + std::to_string(rng.below(2));
            } else {
                role = roles[rng.below(static_cast<std::uint32_t>(roles.size()))];
            }
            ConceptRef filler = random_concept(rng, concepts, roles, max_depth - 1);
            return rng.chance(0.5) ? Concept::exists(role, std::move(filler))
                                   : Concept::for_all(role, std::move(filler));
        }
    }
}

int count_nodes(const ConceptRef& c) {
    switch (c->kind()) {
        case ConceptKind::Not:
        case ConceptKind::Exists:
        case ConceptKind::ForAll:
            return 1 + count_nodes(c->child());
        case ConceptKind::And:
        case ConceptKind::Or:
            return 1 + count_nodes(c->left()) + count_nodes(c->right());
        default:
            return 1;
    }
}

namespace {

ConceptRef replace_walk(const ConceptRef& c, int& counter, int index,
                        const ConceptRef& replacement) {
    if (counter++ == index) return replacement;
    switch (c->kind()) {
        case ConceptKind::Not:
            return Concept::negation(replace_walk(c->child(), counter, index, replacement));
        case ConceptKind::Exists:
            return Concept::exists(c->role(), replace_walk(c->child(), counter, index, replacement));
        case ConceptKind::ForAll:
            return Concept::for_all(c->role(), replace_walk(c->child(), counter, index, replacement));
        case ConceptKind::And: {
            ConceptRef left = replace_walk(c->left(), counter, index, replacement);
            return Concept::conjunction(std::move(left),
                                        replace_walk(c->right(), counter, index, replacement));
        }
        case ConceptKind::Or: {
            ConceptRef left = replace_walk(c->left(), counter, index, replacement);
            return Concept::disjunction(std::move(left),
                                        replace_walk(c->right(), counter, index, replacement));
        }
        default:
            return c;
    }
}

}  // namespace

ConceptRef replace_preorder_node(const ConceptRef& c, int index, const ConceptRef& replacement) {
    int counter = 0;
    return replace_walk(c, counter, index, replacement);
}

Template random_template(Rng& rng, const std::vector<std::string>& concepts,
                         const std::vector<std::string>& roles, int max_depth) {
    ConceptRef c = random_concept(rng, concepts, roles, max_depth);
    const int index = static_cast<int>(rng.below(static_cast<std::uint32_t>(count_nodes(c))));
    return Template(replace_preorder_node(c, index, Concept::marker()));
}

ExampleSplit random_examples(Rng& rng, const KnowledgeBase& kb) {
    ExampleSplit split{kb.empty_set(), kb.empty_set()};
    const auto n = static_cast<std::uint32_t>(kb.individual_count());
    if (n < 2) return split;
    for (std::uint32_t id = 0; id < n; ++id) {
        const std::uint32_t pick = rng.below(3);
        if (pick == 0) split.positives.add(id);
        else if (pick == 1) split.negatives.add(id);
    }
    // both sides must be populated for learning problems
    auto fill = [n](IndividualSet& empty_side, IndividualSet& other_side) {
        for (std::uint32_t id = 0; id < n; ++id) {
            if (!other_side.contains(id)) {
                empty_side.add(id);
                return;
            }
        }
        // the other side holds the whole domain; move one over
        std::uint32_t id = *other_side.to_vector().begin();
        other_side.remove(id);
        empty_side.add(id);
    };
    if (split.positives.empty()) fill(split.positives, split.negatives);
    if (split.negatives.empty()) fill(split.negatives, split.positives);
    return split;
}

std::vector<std::string> concept_vocab(const KnowledgeBase& kb) { return kb.concept_iris(); }
std::vector<std::string> role_vocab(const KnowledgeBase& kb) { return kb.role_iris(); }

}  // namespace testsupport
