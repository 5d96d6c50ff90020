// prunecel: learn human-readable ALC concepts that separate correctly
// answered benchmark questions from faulty ones.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prunecel/bench/enrich.hpp"
#include "prunecel/bench/feature_kb.hpp"
#include "prunecel/bench/qald.hpp"
#include "prunecel/concept_expr.hpp"
#include "prunecel/evaluator.hpp"
#include "prunecel/learner.hpp"
#include "prunecel/ntriples.hpp"

namespace {

using nlohmann::json;
using namespace prunecel;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitDegenerate = 3;

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class DegenerateProblem : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// JSON config files: top-level keys preset global options, one nested
// object per subcommand presets its options.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json doc = json::parse(input);
        std::vector<CLI::ConfigItem> items;
        append(doc, {}, items);
        return items;
    }

  private:
    static void append(const json& node, const std::vector<std::string>& parents,
                       std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : node.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                append(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value)
                    item.inputs.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            } else {
                item.inputs.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
            items.push_back(std::move(item));
        }
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

PrefixMap load_prefixes(const std::string& path) {
    PrefixMap map = bench::default_prefixes();
    if (path.empty()) return map;
    json doc = json::parse(read_file(path));
    for (const auto& [prefix, iri] : doc.items()) map.add(prefix, iri.get<std::string>());
    return map;
}

std::map<Iri, std::string> load_labels(const std::string& path) {
    std::map<Iri, std::string> labels;
    if (path.empty()) return labels;
    std::ifstream in(path);
    if (!in) {
        std::cerr << "warning: labels file not found, falling back to IRI local names\n";
        return labels;
    }
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
        std::cerr << "warning: labels file is not a JSON object, ignoring it\n";
        return labels;
    }
    for (const auto& [iri, label] : doc.items())
        if (label.is_string()) labels[iri] = label.get<std::string>();
    return labels;
}

// --- build-kb ----------------------------------------------------------------

struct BuildKbArgs {
    std::string dataset;
    std::string scores;
    std::string out_kb = "kb.nt";
    std::string out_problem = "problem.json";
    double threshold = 0.5;
    std::string endpoint;
    std::size_t max_cbd_triples = 1000;
    unsigned concurrency = 4;
};

int run_build_kb(const BuildKbArgs& args) {
    std::vector<bench::BenchmarkRecord> records;
    std::map<std::string, double> scores;
    try {
        records = bench::ingest_qald(read_file(args.dataset));
        scores = bench::read_scores_csv(read_file(args.scores));
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }

    bench::GroupingResult grouping;
    try {
        grouping = bench::group(records, scores, args.threshold);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }

    std::string kb_text = bench::build_kb(records);

    if (!args.endpoint.empty()) {
        bench::EnrichOptions opts;
        opts.endpoint = args.endpoint;
        opts.max_cbd_triples = args.max_cbd_triples;
        opts.concurrency = args.concurrency;
        if (const char* auth = std::getenv("PRUNECEL_ENDPOINT_AUTH")) opts.authorization = auth;
        auto enriched = bench::enrich_entities(bench::answer_entities(records), opts);
        if (enriched.warnings > 0)
            std::cerr << "warning: enrichment skipped " << enriched.warnings << " entities\n";
        if (!enriched.ntriples.empty()) {
            // merge and re-sort so output stays deterministic
            std::set<std::string> lines;
            std::istringstream all(kb_text + enriched.ntriples);
            std::string line;
            while (std::getline(all, line))
                if (!line.empty()) lines.insert(line);
            kb_text.clear();
            for (const auto& l : lines) {
                kb_text += l;
                kb_text += '\n';
            }
        }
    }

    write_file(args.out_kb, kb_text);

    json problem;
    problem["schema"] = 1;
    problem["threshold"] = grouping.threshold;
    json pos = json::array(), neg = json::array();
    for (const auto& id : grouping.positives) pos.push_back(bench::question_iri(id));
    for (const auto& id : grouping.negatives) neg.push_back(bench::question_iri(id));
    problem["positives"] = pos;
    problem["negatives"] = neg;
    write_file(args.out_problem, problem.dump(2) + "\n");

    std::cerr << "wrote " << args.out_kb << " (" << records.size() << " questions) and "
              << args.out_problem << " (" << grouping.positives.size() << " positive / "
              << grouping.negatives.size() << " negative)\n";
    return kExitOk;
}

// --- shared problem loading ----------------------------------------------------

struct ResolvedProblem {
    LearningProblem problem;
    std::vector<std::string> dropped;
};

ResolvedProblem load_problem(const std::string& path, const KnowledgeBase& kb) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.contains("positives") || !doc.contains("negatives"))
        throw InputError("problem file must contain 'positives' and 'negatives' arrays");

    ResolvedProblem out{{kb.empty_set(), kb.empty_set()}, {}};
    auto resolve = [&](const json& ids, IndividualSet& target) {
        for (const auto& id : ids) {
            const std::string iri = id.get<std::string>();
            if (auto individual = kb.find_individual(iri)) {
                target.add(*individual);
            } else {
                out.dropped.push_back(iri);
                std::cerr << "warning: dropping unresolvable id " << iri << "\n";
            }
        }
    };
    resolve(doc["positives"], out.problem.positives);
    resolve(doc["negatives"], out.problem.negatives);

    if (out.problem.positives.empty())
        throw DegenerateProblem("no positive examples resolve to KB individuals");
    if (out.problem.negatives.empty())
        throw DegenerateProblem("no negative examples resolve to KB individuals");
    return out;
}

KnowledgeBase load_kb(const std::string& path, bool subclass_closure) {
    try {
        LoadOptions opts;
        opts.materialize_subclass_closure = subclass_closure;
        return load_ntriples_file(path, opts);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

// --- learn ---------------------------------------------------------------------

struct LearnArgs {
    std::string kb;
    std::string problem;
    std::string quality = "f1";
    double eta = 0.01;
    std::uint64_t max_iterations = 10000;
    double max_seconds = 600.0;
    bool prune_s = false;
    bool recursive = false;
    std::uint64_t r_iterations = 0;
    std::size_t top_k = 5;
    std::string format = "json";
    std::string out;
    unsigned threads = 1;
    bool timings = false;
    bool subclass_closure = false;
    std::string labels;
    std::string prefixes;
    std::string sparql_audit;
    std::uint64_t seed = 0;  // reserved; the search is deterministic
};

json concept_entry(const ScoredConcept& sc, const PrefixMap& prefixes,
                   const std::map<Iri, std::string>& labels) {
    json entry;
    entry["concept"] = render_concept(sc.expr, prefixes);
    entry["verbalization"] = verbalize(sc.expr, labels);
    entry["quality"] = sc.quality;
    entry["cp"] = sc.cp;
    entry["cn"] = sc.cn;
    entry["length"] = sc.length;
    entry["heuristic"] = sc.heuristic;
    return entry;
}

int run_learn(const LearnArgs& args) {
    KnowledgeBase kb = load_kb(args.kb, args.subclass_closure);
    ResolvedProblem resolved = load_problem(args.problem, kb);

    SearchConfig config;
    try {
        config.quality = parse_quality_kind(args.quality);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
    config.eta = args.eta;
    config.max_iterations = args.max_iterations;
    config.max_seconds = args.max_seconds;
    config.s_mode = args.prune_s;
    config.r_mode = args.recursive;
    config.r_iteration_budget = args.r_iterations;
    config.top_k = args.top_k;
    config.threads = args.threads;

    std::ofstream audit_stream;
    if (!args.sparql_audit.empty()) {
        audit_stream.open(args.sparql_audit);
        if (!audit_stream) throw InputError("cannot write file: " + args.sparql_audit);
        config.sparql_audit = &audit_stream;
    }

    LearnResult result;
    try {
        result = learn(kb, resolved.problem, config);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }

    const PrefixMap prefixes = load_prefixes(args.prefixes);
    const auto labels = load_labels(args.labels);

    json doc;
    doc["schema"] = 1;
    doc["command"] = "learn";
    doc["config"] = {{"quality", quality_name(config.quality)},
                     {"eta", config.eta},
                     {"max_iterations", config.max_iterations},
                     {"max_seconds", config.max_seconds},
                     {"s_mode", config.s_mode},
                     {"r_mode", config.r_mode},
                     {"r_iteration_budget", config.r_iteration_budget},
                     {"top_k", config.top_k},
                     {"threads", config.threads}};
    doc["problem"] = {{"positives", resolved.problem.positives.count()},
                      {"negatives", resolved.problem.negatives.count()},
                      {"dropped_ids", resolved.dropped}};
    doc["iterations"] = result.iterations;
    doc["termination"] = termination_name(result.termination);
    json concepts = json::array();
    for (const auto& sc : result.best) concepts.push_back(concept_entry(sc, prefixes, labels));
    doc["concepts"] = concepts;
    // timings vary between runs, so the deterministic output omits them
    if (args.timings) doc["seconds"] = result.wall_seconds;

    std::string rendered;
    if (args.format == "json") {
        rendered = doc.dump(2) + "\n";
    } else if (args.format == "text") {
        std::ostringstream text;
        text << "termination: " << termination_name(result.termination)
             << "  iterations: " << result.iterations;
        if (args.timings) text << "  seconds: " << result.wall_seconds;
        text << "\n";
        for (std::size_t i = 0; i < result.best.size(); ++i) {
            const auto& sc = result.best[i];
            text << (i + 1) << ". q=" << sc.quality << " cp=" << sc.cp << " cn=" << sc.cn
                 << " l=" << sc.length << "  " << render_concept(sc.expr, prefixes) << "\n";
        }
        if (!result.best.empty()) {
            text << "\nbest concept: " << render_concept(result.best.front().expr, prefixes)
                 << "\nin words: the system answered questions correctly if the question "
                 << verbalize(result.best.front().expr, labels) << "\n";
        }
        rendered = text.str();
    } else {
        throw InputError("unknown --format: " + args.format);
    }

    if (!args.out.empty())
        write_file(args.out, rendered);
    else
        std::cout << rendered;
    return kExitOk;
}

// --- eval-concept ----------------------------------------------------------------

struct EvalArgs {
    std::string kb;
    std::string concept_text;
    std::string problem;
    std::string prefixes;
    std::string format = "json";
    bool subclass_closure = false;
};

int run_eval_concept(const EvalArgs& args) {
    KnowledgeBase kb = load_kb(args.kb, args.subclass_closure);
    ResolvedProblem resolved = load_problem(args.problem, kb);
    const PrefixMap prefixes = load_prefixes(args.prefixes);

    ConceptRef expr;
    try {
        expr = parse_concept(args.concept_text, prefixes);
    } catch (const ConceptParseError& e) {
        throw InputError(e.what());
    }

    // names absent from the KB evaluate to the empty set; surface them
    std::vector<const Concept*> stack{expr.get()};
    while (!stack.empty()) {
        const Concept* node = stack.back();
        stack.pop_back();
        if (node->kind() == ConceptKind::Named && !kb.find_concept(node->name()))
            std::cerr << "warning: concept name not in KB: " << node->name() << "\n";
        if ((node->kind() == ConceptKind::Exists || node->kind() == ConceptKind::ForAll) &&
            !kb.find_role(node->role()))
            std::cerr << "warning: role name not in KB: " << node->role() << "\n";
        if (node->left()) stack.push_back(node->left().get());
        if (node->right()) stack.push_back(node->right().get());
    }

    const auto cov = coverage(expr, resolved.problem.positives, resolved.problem.negatives, kb);
    const auto total_pos = static_cast<std::uint32_t>(resolved.problem.positives.count());
    const auto total_neg = static_cast<std::uint32_t>(resolved.problem.negatives.count());

    json doc;
    doc["schema"] = 1;
    doc["command"] = "eval-concept";
    doc["concept"] = render_concept(expr, prefixes);
    doc["cp"] = cov.positives;
    doc["cn"] = cov.negatives;
    doc["length"] = expr->length();
    doc["accuracy"] = quality(QualityKind::Accuracy, cov.positives, cov.negatives, total_pos, total_neg);
    doc["balanced_accuracy"] =
        quality(QualityKind::BalancedAccuracy, cov.positives, cov.negatives, total_pos, total_neg);
    doc["f1"] = quality(QualityKind::F1, cov.positives, cov.negatives, total_pos, total_neg);

    if (args.format == "text") {
        std::cout << "concept: " << doc["concept"].get<std::string>() << "\ncp=" << cov.positives
                  << " cn=" << cov.negatives << " length=" << expr->length()
                  << "\naccuracy=" << doc["accuracy"].get<double>()
                  << " balanced_accuracy=" << doc["balanced_accuracy"].get<double>()
                  << " f1=" << doc["f1"].get<double>() << "\n";
    } else if (args.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        throw InputError("unknown --format: " + args.format);
    }
    return kExitOk;
}

// --- verbalize -------------------------------------------------------------------

struct VerbalizeArgs {
    std::string concept_text;
    std::string labels;
    std::string prefixes;
};

int run_verbalize(const VerbalizeArgs& args) {
    const PrefixMap prefixes = load_prefixes(args.prefixes);
    ConceptRef expr;
    try {
        expr = parse_concept(args.concept_text, prefixes);
    } catch (const ConceptParseError& e) {
        throw InputError(e.what());
    }
    std::cout << verbalize(expr, load_labels(args.labels)) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PruneCEL: explainable benchmarking through concept learning"};
    app.require_subcommand(1);
    app.set_config("--config")->description("JSON file presetting any flag");
    app.config_formatter(std::make_shared<JsonConfig>());

    BuildKbArgs build_args;
    auto* build = app.add_subcommand(
        "build-kb", "Generate a feature KB and learning problem from benchmark results");
    build->add_option("--dataset", build_args.dataset, "QALD-JSON dataset")->required();
    build->add_option("--scores", build_args.scores, "per-question scores CSV (question_id,f1)")
        ->required();
    build->add_option("--out-kb", build_args.out_kb, "output N-Triples path");
    build->add_option("--out-problem", build_args.out_problem, "output problem JSON path");
    build->add_option("--threshold", build_args.threshold,
                      "F1 at or above this counts as correctly answered");
    build->add_option("--endpoint", build_args.endpoint, "SPARQL endpoint for CBD enrichment");
    build->add_option("--max-cbd-triples", build_args.max_cbd_triples,
                      "per-entity cap on enrichment triples");
    build->add_option("--concurrency", build_args.concurrency, "concurrent endpoint requests");

    LearnArgs learn_args;
    auto* learn_cmd = app.add_subcommand("learn", "Run the concept search on a KB and problem");
    learn_cmd->add_option("--kb", learn_args.kb, "N-Triples KB (plain or .gz)")->required();
    learn_cmd->add_option("--problem", learn_args.problem, "problem JSON")->required();
    learn_cmd->add_option("--quality", learn_args.quality, "f1 | acc | bacc");
    learn_cmd->add_option("--eta", learn_args.eta, "length penalty");
    learn_cmd->add_option("--max-iterations", learn_args.max_iterations, "iteration budget");
    learn_cmd->add_option("--max-seconds", learn_args.max_seconds, "wall-clock budget");
    learn_cmd->add_flag("--prune-s", learn_args.prune_s, "S extension: freeze non-improving children");
    learn_cmd->add_flag("--recursive", learn_args.recursive, "R extension: recurse on exact sub-solutions");
    learn_cmd->add_option("--r-iterations", learn_args.r_iterations,
                          "iteration cap per recursive sub-search (0 = 10% of budget)");
    learn_cmd->add_option("--top-k", learn_args.top_k, "number of ranked concepts to report");
    learn_cmd->add_option("--format", learn_args.format, "json | text");
    learn_cmd->add_option("--out", learn_args.out, "write the report to a file");
    learn_cmd->add_option("--threads", learn_args.threads, "worker cap for candidate scoring");
    learn_cmd->add_flag("--timings", learn_args.timings, "include wall-clock seconds in the report");
    learn_cmd->add_flag("--subclass-closure", learn_args.subclass_closure,
                        "materialize rdfs:subClassOf closure at load");
    learn_cmd->add_option("--labels", learn_args.labels, "labels JSON for verbalization");
    learn_cmd->add_option("--prefixes", learn_args.prefixes, "prefix map JSON for rendering");
    learn_cmd->add_option("--sparql-audit", learn_args.sparql_audit,
                          "dump the per-template oracle SELECT queries to a file");
    learn_cmd->add_option("--seed", learn_args.seed, "reserved; the search is deterministic");

    EvalArgs eval_args;
    auto* eval_cmd = app.add_subcommand("eval-concept", "Score a concept against a problem");
    eval_cmd->add_option("--kb", eval_args.kb, "N-Triples KB")->required();
    eval_cmd->add_option("--concept", eval_args.concept_text, "concept text")->required();
    eval_cmd->add_option("--problem", eval_args.problem, "problem JSON")->required();
    eval_cmd->add_option("--prefixes", eval_args.prefixes, "prefix map JSON");
    eval_cmd->add_option("--format", eval_args.format, "json | text");
    eval_cmd->add_flag("--subclass-closure", eval_args.subclass_closure,
                       "materialize rdfs:subClassOf closure at load");

    VerbalizeArgs verb_args;
    auto* verb_cmd = app.add_subcommand("verbalize", "Render a concept as English text");
    verb_cmd->add_option("--concept", verb_args.concept_text, "concept text")->required();
    verb_cmd->add_option("--labels", verb_args.labels, "labels JSON");
    verb_cmd->add_option("--prefixes", verb_args.prefixes, "prefix map JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (build->parsed()) return run_build_kb(build_args);
        if (learn_cmd->parsed()) return run_learn(learn_args);
        if (eval_cmd->parsed()) return run_eval_concept(eval_args);
        if (verb_cmd->parsed()) return run_verbalize(verb_args);
    } catch (const DegenerateProblem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
