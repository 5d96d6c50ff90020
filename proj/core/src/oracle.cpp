#include "prunecel/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <thread>

#include "prunecel/ntriples.hpp"

namespace prunecel {

namespace {

// One node on the unique root-to-marker path, with everything the upward
// inversion needs precomputed: the focus (the individuals whose
// membership matters at this depth) and, for junctions, the marker-free
// side restricted to the focus.
struct PathStep {
    const Concept* node;
    IndividualSet focus;
    IndividualSet sibling;              // And/Or only: focus ∩ instances(other side)
    std::optional<std::uint32_t> role;  // Exists/ForAll only; nullopt = role absent from KB
};

struct TemplateContext {
    std::vector<PathStep> steps;  // root first, marker last

    const IndividualSet& marker_focus() const { return steps.back().focus; }

    // Membership of the examples in t[ext], given the filler extension at
    // the marker (only its intersection with the marker focus matters).
    IndividualSet invert(IndividualSet at_marker, const KnowledgeBase& kb) const {
        IndividualSet v = std::move(at_marker);
        for (std::size_t i = steps.size() - 1; i-- > 0;) {
            const PathStep& step = steps[i];
            switch (step.node->kind()) {
                case ConceptKind::Not:
                    v = step.focus - v;
                    break;
                case ConceptKind::And:
                    v &= step.sibling;
                    break;
                case ConceptKind::Or:
                    v |= step.sibling;
                    break;
                case ConceptKind::Exists:
                    if (!step.role) {
                        v = IndividualSet(v.universe_size());
                    } else {
                        v = kb.predecessors_of(*step.role, v) & step.focus;
                    }
                    break;
                case ConceptKind::ForAll: {
                    if (!step.role) {
                        v = step.focus;  // no edges, vacuously satisfied
                        break;
                    }
                    // violators have a successor outside v
                    IndividualSet outside = steps[i + 1].focus - v;
                    v = step.focus - kb.predecessors_of(*step.role, outside);
                    break;
                }
                default:
                    assert(false && "marker path through a leaf");
            }
        }
        return v;
    }
};

TemplateContext build_context(const Template& t, const IndividualSet& examples,
                              const KnowledgeBase& kb) {
    TemplateContext ctx;
    const Concept* cur = t.expr().get();
    IndividualSet focus = examples;
    while (true) {
        PathStep step;
        step.node = cur;
        step.focus = focus;
        switch (cur->kind()) {
            case ConceptKind::Marker:
                ctx.steps.push_back(std::move(step));
                return ctx;
            case ConceptKind::Not:
                ctx.steps.push_back(std::move(step));
                cur = cur->child().get();
                break;
            case ConceptKind::And:
            case ConceptKind::Or: {
                const bool marker_left = cur->left()->marker_count() == 1;
                const ConceptRef& marker_side = marker_left ? cur->left() : cur->right();
                const ConceptRef& plain_side = marker_left ? cur->right() : cur->left();
                step.sibling = instances(plain_side, kb) & focus;
                ctx.steps.push_back(std::move(step));
                cur = marker_side.get();
                break;
            }
            case ConceptKind::Exists:
            case ConceptKind::ForAll: {
                step.role = kb.find_role(cur->role());
                IndividualSet next =
                    step.role ? kb.successors_of(*step.role, focus) : kb.empty_set();
                ctx.steps.push_back(std::move(step));
                cur = cur->child().get();
                focus = std::move(next);
                break;
            }
            default:
                assert(false && "template without a marker on the path");
                return ctx;
        }
    }
}

struct AtomResult {
    std::uint32_t cp = 0;
    std::uint32_t cn = 0;
};

AtomResult count_for(const TemplateContext& ctx, IndividualSet ext_at_marker,
                     const IndividualSet& pos, const IndividualSet& neg,
                     const KnowledgeBase& kb) {
    IndividualSet covered = ctx.invert(std::move(ext_at_marker), kb);
    AtomResult r;
    r.cp = static_cast<std::uint32_t>(covered.count_intersection(pos));
    r.cn = static_cast<std::uint32_t>(covered.count_intersection(neg));
    return r;
}

enum class AtomSource { Named, NegatedNamed, Role };

// Evaluates all atoms of one source through the shared context. Atoms
// whose marker extension is empty share one inversion (the result no
// longer depends on the filler). For named atoms the extensions are
// gathered sparsely from the focus members' type lists, so concepts not
// touching the focus cost nothing per atom.
std::vector<AtomResult> run_atoms(const TemplateContext& ctx, AtomSource source,
                                  const IndividualSet& pos, const IndividualSet& neg,
                                  const KnowledgeBase& kb, unsigned threads) {
    const std::size_t count =
        source == AtomSource::Role ? kb.role_iris().size() : kb.concept_iris().size();
    std::vector<AtomResult> results(count);
    if (count == 0) return results;

    const IndividualSet& focus = ctx.marker_focus();
    std::optional<AtomResult> empty_ext_result;
    auto result_for_empty = [&]() -> AtomResult {
        if (!empty_ext_result)
            empty_ext_result = count_for(ctx, IndividualSet(focus.universe_size()), pos, neg, kb);
        return *empty_ext_result;
    };
    // the empty-extension case is shared, so resolve it up front when
    // several workers might race to fill the cache
    if (threads > 1) result_for_empty();

    // focus members per concept, only for concepts that intersect the focus
    std::vector<std::vector<IndividualId>> touching;
    if (source == AtomSource::Named || source == AtomSource::NegatedNamed) {
        touching.resize(count);
        focus.for_each([&](IndividualId id) {
            for (std::uint32_t cid : kb.types_of(id)) touching[cid].push_back(id);
        });
    }

    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            IndividualSet ext;
            switch (source) {
                case AtomSource::Named: {
                    if (touching[i].empty()) {
                        results[i] = result_for_empty();
                        continue;
                    }
                    ext = IndividualSet(focus.universe_size());
                    for (IndividualId id : touching[i]) ext.add(id);
                    break;
                }
                case AtomSource::NegatedNamed:
                    ext = focus;
                    for (IndividualId id : touching[i]) ext.remove(id);
                    break;
                case AtomSource::Role:
                    ext = focus;
                    ext &= kb.role_domain(static_cast<std::uint32_t>(i));
                    break;
            }
            results[i] = ext.empty() ? result_for_empty() : count_for(ctx, std::move(ext), pos, neg, kb);
        }
    };

    if (threads <= 1 || count < 2 * threads) {
        eval_range(0, count);
    } else {
        std::vector<std::thread> workers;
        const std::size_t per = (count + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            std::size_t begin = w * per;
            std::size_t end = std::min(count, begin + per);
            if (begin >= end) break;
            workers.emplace_back(eval_range, begin, end);
        }
        for (auto& th : workers) th.join();
    }
    return results;
}

std::vector<FillerHit> collect_hits(const std::vector<AtomResult>& results,
                                    const std::vector<Iri>& iris) {
    std::vector<FillerHit> hits;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].cp + results[i].cn >= 1)
            hits.push_back({iris[i], results[i].cp, results[i].cn});
    }
    return hits;  // iris are stored sorted, so hits are sorted
}

OracleKind kind_of(AtomSource source) {
    switch (source) {
        case AtomSource::Named: return OracleKind::ConceptFillers;
        case AtomSource::NegatedNamed: return OracleKind::NegatedConceptFillers;
        case AtomSource::Role: return OracleKind::RoleFillers;
    }
    return OracleKind::ConceptFillers;
}

void audit(const Template& t, AtomSource source, const IndividualSet& pos,
           const IndividualSet& neg, const KnowledgeBase& kb, const OracleOptions& options) {
    if (options.sparql_audit)
        *options.sparql_audit << oracle_sparql_query(t, kind_of(source), pos, neg, kb) << "\n";
}

std::vector<FillerHit> fillers_impl(const Template& t, AtomSource source,
                                    const IndividualSet& pos, const IndividualSet& neg,
                                    const KnowledgeBase& kb, const OracleOptions& options) {
    audit(t, source, pos, neg, kb, options);
    TemplateContext ctx = build_context(t, pos | neg, kb);
    auto results = run_atoms(ctx, source, pos, neg, kb, options.threads);
    return collect_hits(results,
                        source == AtomSource::Role ? kb.role_iris() : kb.concept_iris());
}

}  // namespace

std::vector<FillerHit> concept_fillers(const Template& t, const IndividualSet& pos,
                                       const IndividualSet& neg, const KnowledgeBase& kb,
                                       const OracleOptions& options) {
    return fillers_impl(t, AtomSource::Named, pos, neg, kb, options);
}

std::vector<FillerHit> negated_concept_fillers(const Template& t, const IndividualSet& pos,
                                               const IndividualSet& neg, const KnowledgeBase& kb,
                                               const OracleOptions& options) {
    return fillers_impl(t, AtomSource::NegatedNamed, pos, neg, kb, options);
}

std::vector<FillerHit> role_fillers(const Template& t, const IndividualSet& pos,
                                    const IndividualSet& neg, const KnowledgeBase& kb,
                                    const OracleOptions& options) {
    return fillers_impl(t, AtomSource::Role, pos, neg, kb, options);
}

std::vector<RefinementCandidate> generate(const Template& t, const IndividualSet& pos,
                                          const IndividualSet& neg, const KnowledgeBase& kb,
                                          const OracleOptions& options) {
    TemplateContext ctx = build_context(t, pos | neg, kb);
    std::vector<RefinementCandidate> out;

    auto emit = [&](AtomSource source, Provenance provenance) {
        audit(t, source, pos, neg, kb, options);
        auto results = run_atoms(ctx, source, pos, neg, kb, options.threads);
        const auto& iris = source == AtomSource::Role ? kb.role_iris() : kb.concept_iris();
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (results[i].cp + results[i].cn < 1) continue;
            ConceptRef filler;
            switch (source) {
                case AtomSource::Named:
                    filler = Concept::named(iris[i]);
                    break;
                case AtomSource::NegatedNamed:
                    filler = Concept::negation(Concept::named(iris[i]));
                    break;
                case AtomSource::Role:
                    filler = Concept::exists(iris[i], Concept::top());
                    break;
            }
            out.push_back({t.instantiate(filler), results[i].cp, results[i].cn, provenance});
        }
    };

    emit(AtomSource::Named, Provenance::ConceptFiller);
    emit(AtomSource::NegatedNamed, Provenance::NegatedFiller);
    emit(AtomSource::Role, Provenance::RoleFiller);
    return out;
}

// --- audit-only SPARQL rendering ---------------------------------------------

namespace {

struct SparqlBuilder {
    std::string out;
    int var_counter = 0;
    OracleKind kind;

    std::string fresh_var() { return "?v" + std::to_string(var_counter++); }

    void indent(int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

    void pattern(const ConceptRef& c, const std::string& var, int depth) {
        switch (c->kind()) {
            case ConceptKind::Top:
                indent(depth);
                out += "# " + var + " unconstrained\n";
                break;
            case ConceptKind::Bottom:
                indent(depth);
                out += "FILTER(false)\n";
                break;
            case ConceptKind::Named:
                indent(depth);
                out += var + " a " + nt_iri(c->name()) + " .\n";
                break;
            case ConceptKind::Marker:
                indent(depth);
                switch (kind) {
                    case OracleKind::ConceptFillers:
                        out += var + " a ?f .\n";
                        break;
                    case OracleKind::NegatedConceptFillers:
                        out += "?anyInst a ?f . FILTER NOT EXISTS { " + var + " a ?f }\n";
                        break;
                    case OracleKind::RoleFillers:
                        out += var + " ?f " + fresh_var() + " .\n";
                        break;
                }
                break;
            case ConceptKind::Not:
                indent(depth);
                out += "FILTER NOT EXISTS {\n";
                pattern(c->child(), var, depth + 1);
                indent(depth);
                out += "}\n";
                break;
            case ConceptKind::And:
                pattern(c->left(), var, depth);
                pattern(c->right(), var, depth);
                break;
            case ConceptKind::Or:
                indent(depth);
                out += "{\n";
                pattern(c->left(), var, depth + 1);
                indent(depth);
                out += "} UNION {\n";
                pattern(c->right(), var, depth + 1);
                indent(depth);
                out += "}\n";
                break;
            case ConceptKind::Exists: {
                std::string succ = fresh_var();
                indent(depth);
                out += var + " " + nt_iri(c->role()) + " " + succ + " .\n";
                pattern(c->child(), succ, depth);
                break;
            }
            case ConceptKind::ForAll: {
                std::string succ = fresh_var();
                indent(depth);
                out += "FILTER NOT EXISTS {\n";
                indent(depth + 1);
                out += var + " " + nt_iri(c->role()) + " " + succ + " .\n";
                indent(depth + 1);
                out += "FILTER NOT EXISTS {\n";
                pattern(c->child(), succ, depth + 2);
                indent(depth + 1);
                out += "}\n";
                indent(depth);
                out += "}\n";
                break;
            }
        }
    }
};

}  // namespace

std::string oracle_sparql_query(const Template& t, OracleKind kind, const IndividualSet& pos,
                                const IndividualSet& neg, const KnowledgeBase& kb) {
    SparqlBuilder b;
    b.kind = kind;
    b.out += "SELECT ?f (SUM(?isPos) AS ?cp) (SUM(?isNeg) AS ?cn) WHERE {\n";
    b.out += "  VALUES (?x ?isPos ?isNeg) {\n";
    pos.for_each([&](IndividualId id) {
        b.out += "    (" + nt_iri(kb.individual_iri(id)) + " 1 0)\n";
    });
    neg.for_each([&](IndividualId id) {
        b.out += "    (" + nt_iri(kb.individual_iri(id)) + " 0 1)\n";
    });
    b.out += "  }\n";
    b.pattern(t.expr(), "?x", 1);
    b.out += "}\nGROUP BY ?f\nORDER BY ?f\n";
    return b.out;
}

}  // namespace prunecel
