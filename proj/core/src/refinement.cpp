#include "prunecel/refinement.hpp"

#include <utility>

namespace prunecel {

namespace {

void rho_star_into(const ConceptRef& c, const Template& t, const IndividualSet& pos,
                   const IndividualSet& neg, const KnowledgeBase& kb,
                   const RefinementOptions& options, std::vector<RefinementCandidate>& out) {
    const OracleOptions oracle_opts{options.threads, options.sparql_audit};

    switch (c->kind()) {
        case ConceptKind::Exists: {
            rho_star_into(c->child(), t.merge(Template(Concept::exists(c->role(), Concept::marker()))),
                          pos, neg, kb, options, out);
            // the ∃ -> ∀ rewrite keeps the length; drop it if it covers nothing
            ConceptRef swapped = t.instantiate(Concept::for_all(c->role(), c->child()));
            Coverage cov = coverage(swapped, pos, neg, kb);
            if (cov.positives + cov.negatives >= 1)
                out.push_back({std::move(swapped), cov.positives, cov.negatives,
                               Provenance::ForallSwap});
            break;
        }
        case ConceptKind::ForAll:
            rho_star_into(c->child(), t.merge(Template(Concept::for_all(c->role(), Concept::marker()))),
                          pos, neg, kb, options, out);
            break;
        case ConceptKind::Not:
            if (c->child()->kind() != ConceptKind::Named) {
                rho_star_into(c->child(), t.merge(Template(Concept::negation(Concept::marker()))),
                              pos, neg, kb, options, out);
            }
            break;
        case ConceptKind::And:
            rho_star_into(c->left(),
                          t.merge(Template(Concept::conjunction(Concept::marker(), c->right()))),
                          pos, neg, kb, options, out);
            rho_star_into(c->right(),
                          t.merge(Template(Concept::conjunction(c->left(), Concept::marker()))),
                          pos, neg, kb, options, out);
            break;
        case ConceptKind::Or:
            rho_star_into(c->left(),
                          t.merge(Template(Concept::disjunction(Concept::marker(), c->right()))),
                          pos, neg, kb, options, out);
            rho_star_into(c->right(),
                          t.merge(Template(Concept::disjunction(c->left(), Concept::marker()))),
                          pos, neg, kb, options, out);
            break;
        default:
            break;
    }

    if (c->kind() == ConceptKind::Top) {
        auto generated = generate(t, pos, neg, kb, oracle_opts);
        out.insert(out.end(), std::make_move_iterator(generated.begin()),
                   std::make_move_iterator(generated.end()));
    } else if (c->kind() != ConceptKind::Bottom) {
        auto conj = generate(t.merge(Template(Concept::conjunction(c, Concept::marker()))), pos,
                             neg, kb, oracle_opts);
        out.insert(out.end(), std::make_move_iterator(conj.begin()),
                   std::make_move_iterator(conj.end()));
        auto disj = generate(t.merge(Template(Concept::disjunction(c, Concept::marker()))), pos,
                             neg, kb, oracle_opts);
        out.insert(out.end(), std::make_move_iterator(disj.begin()),
                   std::make_move_iterator(disj.end()));
    }
}

std::vector<RefinementCandidate> dedupe_by_key(std::vector<RefinementCandidate> batch) {
    std::unordered_set<ConceptKey> keys;
    std::vector<RefinementCandidate> out;
    out.reserve(batch.size());
    for (auto& cand : batch) {
        if (keys.insert(canonical_key(cand.expr)).second) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace

std::vector<RefinementCandidate> rho_star(const ConceptRef& c, const Template& t,
                                          const IndividualSet& pos, const IndividualSet& neg,
                                          const KnowledgeBase& kb,
                                          const RefinementOptions& options) {
    std::vector<RefinementCandidate> out;
    rho_star_into(c, t, pos, neg, kb, options, out);
    return out;
}

std::vector<RefinementCandidate> rho(const ConceptRef& c, const IndividualSet& pos,
                                     const IndividualSet& neg, const KnowledgeBase& kb,
                                     const RefinementOptions& options) {
    std::vector<RefinementCandidate> base =
        dedupe_by_key(rho_star(c, Template::hole(), pos, neg, kb, options));

    const auto total_pos = static_cast<std::uint32_t>(pos.count());
    const auto total_neg = static_cast<std::uint32_t>(neg.count());

    std::vector<RefinementCandidate> out = base;
    for (const auto& cand : base) {
        // (¬D)^I = Δ \ D^I, so the counts are exact complements
        out.push_back({Concept::negation(cand.expr), total_pos - cand.cp, total_neg - cand.cn,
                       Provenance::NegationWrapper});
    }
    return dedupe_by_key(std::move(out));
}

std::vector<RefinementCandidate> dedupe_candidates(std::vector<RefinementCandidate> batch,
                                                   std::unordered_set<ConceptKey>& seen) {
    std::vector<RefinementCandidate> out;
    out.reserve(batch.size());
    for (auto& cand : batch) {
        if (seen.insert(canonical_key(cand.expr)).second) out.push_back(std::move(cand));
    }
    return out;
}

}  // namespace prunecel
