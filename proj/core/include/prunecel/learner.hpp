#ifndef PRUNECEL_LEARNER_HPP
#define PRUNECEL_LEARNER_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "prunecel/individual_set.hpp"
#include "prunecel/knowledge_base.hpp"
#include "prunecel/oracle.hpp"
#include "prunecel/scoring.hpp"

namespace prunecel {

struct LearningProblem {
    IndividualSet positives;
    IndividualSet negatives;
};

struct SearchConfig {
    QualityKind quality = QualityKind::F1;
    double eta = 0.01;
    std::uint64_t max_iterations = 10000;
    double max_seconds = 600.0;
    bool s_mode = false;
    bool r_mode = false;
    // iteration cap for recursive sub-searches; 0 derives 10% of max_iterations
    std::uint64_t r_iteration_budget = 0;
    std::size_t top_k = 5;
    // compare heuristics instead of qualities in the S-mode admission test
    bool s_compare_heuristic = false;
    unsigned threads = 1;
    // populate LearnResult::trace and LearnResult::nodes for replay checks
    bool record_trace = false;
    // audit stream for the per-template oracle queries
    std::ostream* sparql_audit = nullptr;
};

struct SearchNode {
    std::uint64_t id = 0;
    std::uint64_t parent_id = 0;
    ConceptRef expr;
    std::uint32_t cp = 0;
    std::uint32_t cn = 0;
    double q = 0.0;
    double h = 0.0;
    int length = 0;
    Provenance provenance = Provenance::ConceptFiller;
    bool refined = false;
    bool frozen = false;  // never selected for expansion, still reportable
    std::uint64_t created_at = 0;   // iteration that inserted the node
    std::uint64_t refined_at = 0;   // iteration that expanded it, 0 = never
};

// S-mode admission: the child stays expandable iff it scored strictly
// better than its parent or was derived by adding a role (role fillers
// and the ∃->∀ rewrite).
bool s_mode_admit(const SearchNode& parent, const SearchNode& child, bool compare_heuristic);

enum class Termination { Perfect, IterationBudget, TimeBudget, Exhausted };
const char* termination_name(Termination t);

struct ScoredConcept {
    ConceptRef expr;
    double quality = 0.0;
    std::uint32_t cp = 0;
    std::uint32_t cn = 0;
    int length = 0;
    double heuristic = 0.0;
};

struct ExpansionRecord {
    std::uint64_t iteration = 0;
    std::uint64_t node_id = 0;
};

struct LearnResult {
    std::vector<ScoredConcept> best;  // top-k by quality, ties by shorter length
    std::uint64_t iterations = 0;
    double wall_seconds = 0.0;
    Termination termination = Termination::IterationBudget;
    // filled only when record_trace is set
    std::vector<ExpansionRecord> trace;
    std::vector<SearchNode> nodes;
};

// The search loop: starts from Top, repeatedly expands the best-scoring
// unrefined, unfrozen node via rho, dedupes by canonical key, scores and
// inserts; stops on a perfect concept or an exhausted budget. Both
// example sets must be non-empty, disjoint subsets of the KB domain
// (std::invalid_argument otherwise). Deterministic for fixed inputs.
LearnResult learn(const KnowledgeBase& kb, const LearningProblem& problem,
                  const SearchConfig& config);

}  // namespace prunecel

#endif
