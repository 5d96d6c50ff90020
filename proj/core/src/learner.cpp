#include "prunecel/learner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "prunecel/evaluator.hpp"
#include "prunecel/refinement.hpp"

namespace prunecel {

const char* quality_name(QualityKind kind) {
    switch (kind) {
        case QualityKind::Accuracy: return "accuracy";
        case QualityKind::BalancedAccuracy: return "balanced-accuracy";
        case QualityKind::F1: return "f1";
    }
    return "?";
}

QualityKind parse_quality_kind(const std::string& name) {
    if (name == "f1") return QualityKind::F1;
    if (name == "acc" || name == "accuracy") return QualityKind::Accuracy;
    if (name == "bacc" || name == "balanced-accuracy") return QualityKind::BalancedAccuracy;
    throw std::invalid_argument("unknown quality function: " + name);
}

double quality(QualityKind kind, std::uint32_t cp, std::uint32_t cn, std::uint32_t total_pos,
               std::uint32_t total_neg) {
    if (total_pos == 0 || total_neg == 0)
        throw std::invalid_argument("quality: example sets must be non-empty");
    if (cp > total_pos || cn > total_neg)
        throw std::invalid_argument("quality: coverage counts exceed example counts");
    const double tp = cp;
    const double fp = cn;
    const double fn = total_pos - cp;
    const double tn = total_neg - cn;
    switch (kind) {
        case QualityKind::Accuracy:
            return (tp + tn) / static_cast<double>(total_pos + total_neg);
        case QualityKind::BalancedAccuracy:
            return (tp / total_pos + tn / total_neg) / 2.0;
        case QualityKind::F1:
            if (cp == 0) return 0.0;
            return 2.0 * tp / (2.0 * tp + fp + fn);
    }
    return 0.0;
}

double heuristic(double q, const ConceptRef& c, double eta) {
    return q - eta * static_cast<double>(c->length());
}

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Perfect: return "perfect";
        case Termination::IterationBudget: return "iteration-budget";
        case Termination::TimeBudget: return "time-budget";
        case Termination::Exhausted: return "exhausted";
    }
    return "?";
}

bool s_mode_admit(const SearchNode& parent, const SearchNode& child, bool compare_heuristic) {
    if (child.provenance == Provenance::RoleFiller ||
        child.provenance == Provenance::ForallSwap)
        return true;
    return compare_heuristic ? child.h > parent.h : child.q > parent.q;
}

namespace {

using Clock = std::chrono::steady_clock;

// selection order: best heuristic, then shorter, then earlier insertion
struct SelKey {
    double h;
    int length;
    std::uint64_t id;
    bool operator<(const SelKey& other) const {
        if (h != other.h) return h > other.h;
        if (length != other.length) return length < other.length;
        return id < other.id;
    }
};

class Search {
  public:
    Search(const KnowledgeBase& kb, const LearningProblem& problem, const SearchConfig& config,
           Clock::time_point deadline)
        : kb_(kb),
          pos_(problem.positives),
          neg_(problem.negatives),
          cfg_(config),
          deadline_(deadline),
          total_pos_(static_cast<std::uint32_t>(pos_.count())),
          total_neg_(static_cast<std::uint32_t>(neg_.count())) {}

    LearnResult run() {
        const auto start = Clock::now();
        insert_node(Concept::top(), coverage(Concept::top(), pos_, neg_, kb_),
                    Provenance::ConceptFiller, /*parent=*/0, /*frozen=*/false);
        seen_.insert(canonical_key(Concept::top()));

        Termination termination = Termination::Exhausted;
        while (true) {
            if (found_exact_) {
                termination = Termination::Perfect;
                break;
            }
            if (iteration_ >= cfg_.max_iterations) {
                termination = Termination::IterationBudget;
                break;
            }
            if (Clock::now() >= deadline_) {
                termination = Termination::TimeBudget;
                break;
            }
            if (queue_.empty()) {
                termination = Termination::Exhausted;
                break;
            }
            expand_best();
        }

        LearnResult result;
        result.iterations = iteration_;
        result.termination = termination;
        result.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        result.best = collect_best();
        if (cfg_.record_trace) {
            result.trace = trace_;
            result.nodes = nodes_;
        }
        return result;
    }

  private:
    void expand_best() {
        ++iteration_;
        auto it = queue_.begin();
        SearchNode& node = nodes_[it->id];
        queue_.erase(it);
        node.refined = true;
        node.refined_at = iteration_;
        if (cfg_.record_trace) trace_.push_back({iteration_, node.id});

        RefinementOptions opts{cfg_.threads, cfg_.sparql_audit};
        auto candidates = dedupe_candidates(rho(node.expr, pos_, neg_, kb_, opts), seen_);

        const std::uint64_t parent_id = node.id;
        for (auto& cand : candidates) {
            bool frozen = false;
            // a zero-coverage candidate (only negation wrappers can produce
            // one) is scored and reportable but never refined further
            if (cand.cp + cand.cn == 0) frozen = true;
            std::uint64_t child_id =
                insert_node(cand.expr, Coverage{cand.cp, cand.cn}, cand.provenance, parent_id,
                            frozen);
            SearchNode& child = nodes_[child_id];
            if (!child.frozen && cfg_.s_mode &&
                !s_mode_admit(nodes_[parent_id], child, cfg_.s_compare_heuristic)) {
                freeze(child_id);
            }
            if (cfg_.r_mode) maybe_recurse(child_id);
        }
    }

    std::uint64_t insert_node(const ConceptRef& expr, Coverage cov, Provenance provenance,
                              std::uint64_t parent_id, bool frozen) {
        SearchNode node;
        node.id = nodes_.size();
        node.parent_id = parent_id;
        node.expr = expr;
        node.cp = cov.positives;
        node.cn = cov.negatives;
        node.q = quality(cfg_.quality, node.cp, node.cn, total_pos_, total_neg_);
        node.h = heuristic(node.q, expr, cfg_.eta);
        node.length = expr->length();
        node.provenance = provenance;
        node.frozen = frozen;
        node.created_at = iteration_;
        nodes_.push_back(node);
        if (!frozen) queue_.insert({node.h, node.length, node.id});
        if (node.cp == total_pos_ && node.cn == 0) found_exact_ = true;
        return node.id;
    }

    void freeze(std::uint64_t id) {
        SearchNode& node = nodes_[id];
        if (!node.frozen) {
            queue_.erase({node.h, node.length, node.id});
            node.frozen = true;
        }
    }

    // R-mode: an exact solution for a covered-positive subset E+' spawns a
    // bounded sub-search on (E+ \ E+', E-); its best concepts come back as
    // disjunctions with the exact node, refinable like any other node.
    void maybe_recurse(std::uint64_t node_id) {
        if (found_exact_) return;
        const SearchNode& node = nodes_[node_id];
        if (node.cn != 0 || node.cp < 2 || node.cp >= total_pos_) return;

        IndividualSet covered = instances(node.expr, kb_) & pos_;
        if (!recursed_covers_.insert(covered.words()).second) return;

        SearchConfig sub_cfg = cfg_;
        sub_cfg.max_iterations = r_budget();
        sub_cfg.r_iteration_budget = 0;  // re-derived for the sub-search
        sub_cfg.record_trace = false;

        LearningProblem sub_problem{pos_ - covered, neg_};
        Search sub(kb_, sub_problem, sub_cfg, deadline_);
        LearnResult sub_result = sub.run();

        const ConceptRef base = node.expr;
        for (const auto& partial : sub_result.best) {
            ConceptRef combined = Concept::disjunction(base, partial.expr);
            if (!seen_.insert(canonical_key(combined)).second) continue;
            Coverage cov = coverage(combined, pos_, neg_, kb_);
            insert_node(combined, cov, Provenance::RCombination, node_id, /*frozen=*/false);
        }
    }

    std::uint64_t r_budget() const {
        if (cfg_.r_iteration_budget > 0) return cfg_.r_iteration_budget;
        return std::max<std::uint64_t>(1, cfg_.max_iterations / 10);
    }

    std::vector<ScoredConcept> collect_best() const {
        std::vector<const SearchNode*> ranked;
        ranked.reserve(nodes_.size());
        for (const auto& node : nodes_) ranked.push_back(&node);
        std::sort(ranked.begin(), ranked.end(), [](const SearchNode* a, const SearchNode* b) {
            if (a->q != b->q) return a->q > b->q;
            if (a->length != b->length) return a->length < b->length;
            return a->id < b->id;
        });
        std::vector<ScoredConcept> best;
        const std::size_t k = std::min(cfg_.top_k, ranked.size());
        best.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            const SearchNode* n = ranked[i];
            best.push_back({n->expr, n->q, n->cp, n->cn, n->length, n->h});
        }
        return best;
    }

    const KnowledgeBase& kb_;
    IndividualSet pos_;
    IndividualSet neg_;
    SearchConfig cfg_;
    Clock::time_point deadline_;
    std::uint32_t total_pos_;
    std::uint32_t total_neg_;

    std::vector<SearchNode> nodes_;
    std::set<SelKey> queue_;
    std::unordered_set<ConceptKey> seen_;
    std::set<std::vector<std::uint64_t>> recursed_covers_;
    std::vector<ExpansionRecord> trace_;
    std::uint64_t iteration_ = 0;
    bool found_exact_ = false;
};

}  // namespace

LearnResult learn(const KnowledgeBase& kb, const LearningProblem& problem,
                  const SearchConfig& config) {
    if (problem.positives.universe_size() != kb.individual_count() ||
        problem.negatives.universe_size() != kb.individual_count())
        throw std::invalid_argument("learn: example sets must range over the KB domain");
    if (problem.positives.empty() || problem.negatives.empty())
        throw std::invalid_argument("learn: both example sets must be non-empty");
    if (problem.positives.intersects(problem.negatives))
        throw std::invalid_argument("learn: example sets must be disjoint");
    if (config.eta < 0) throw std::invalid_argument("learn: eta must be non-negative");
    if (config.max_seconds <= 0) throw std::invalid_argument("learn: time budget must be positive");

    const auto deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(config.max_seconds));
    Search search(kb, problem, config, deadline);
    return search.run();
}

}  // namespace prunecel
