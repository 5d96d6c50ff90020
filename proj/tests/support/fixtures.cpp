#include "fixtures.hpp"

#include <stdexcept>

#include "prunecel/concept_expr.hpp"
#include "prunecel/evaluator.hpp"

namespace testsupport {

using prunecel::Concept;
using prunecel::ConceptRef;
using prunecel::IndividualSet;

namespace {

IndividualSet ids_of(const prunecel::KnowledgeBase& kb, const std::vector<std::string>& names) {
    IndividualSet out = kb.empty_set();
    for (const auto& name : names) {
        auto id = kb.find_individual(name);
        if (!id) throw std::logic_error("fixture individual missing: " + name);
        out.add(*id);
    }
    return out;
}

}  // namespace

Fixture running_example() {
    Fixture f;
    f.raw.types = {
        {"q1", "Question"},
        {"q2", "Question"},
        {"java", "Place"},
        {"alice", "Person"},
        {"acme", "Organization"},
    };
    f.raw.edges = {
        {"q1", "hasIriAnswer", "java"},
    };
    f.kb = f.raw.build();
    f.positives = ids_of(f.kb, {"q1"});
    f.negatives = ids_of(f.kb, {"q2"});
    return f;
}

Fixture planted_fixture() {
    Fixture f;
    std::vector<std::string> pos_names, neg_names;
    // positives: three r-edges into A-typed answers, three into B-typed
    for (int i = 1; i <= 3; ++i) {
        std::string p = "p" + std::to_string(i);
        std::string a = "a" + std::to_string(i);
        f.raw.types.push_back({p, "Question"});
        f.raw.types.push_back({a, "A"});
        f.raw.edges.push_back({p, "r", a});
        pos_names.push_back(p);
    }
    for (int i = 4; i <= 6; ++i) {
        std::string p = "p" + std::to_string(i);
        std::string b = "b" + std::to_string(i);
        f.raw.types.push_back({p, "Question"});
        f.raw.types.push_back({b, "B"});
        f.raw.edges.push_back({p, "r", b});
        pos_names.push_back(p);
    }
    // negatives: four with r-edges into C-typed answers, four bare
    for (int i = 1; i <= 4; ++i) {
        std::string n = "n" + std::to_string(i);
        std::string c = "c" + std::to_string(i);
        f.raw.types.push_back({n, "Question"});
        f.raw.types.push_back({c, "C"});
        f.raw.edges.push_back({n, "r", c});
        neg_names.push_back(n);
    }
    for (int i = 5; i <= 8; ++i) {
        std::string n = "n" + std::to_string(i);
        f.raw.types.push_back({n, "Question"});
        neg_names.push_back(n);
    }
    f.kb = f.raw.build();
    f.positives = ids_of(f.kb, pos_names);
    f.negatives = ids_of(f.kb, neg_names);

    // separability check against the reference evaluator
    ConceptRef target = Concept::exists(
        "r", Concept::disjunction(Concept::named("A"), Concept::named("B")));
    for (const auto& p : pos_names)
        if (!f.raw.member(p, target)) throw std::logic_error("planted fixture: positive not covered");
    for (const auto& n : neg_names)
        if (f.raw.member(n, target)) throw std::logic_error("planted fixture: negative covered");
    return f;
}

Fixture two_cluster_fixture() {
    Fixture f;
    std::vector<std::string> pos_names, neg_names;

    for (int i = 1; i <= 3; ++i) {
        std::string p = "p" + std::to_string(i);
        std::string a = "ta" + std::to_string(i);
        f.raw.types.push_back({p, "Q"});
        f.raw.types.push_back({a, "A"});
        f.raw.edges.push_back({p, "r", a});
        pos_names.push_back(p);
    }
    for (int i = 4; i <= 6; ++i) {
        std::string p = "p" + std::to_string(i);
        std::string b = "tb" + std::to_string(i);
        f.raw.types.push_back({p, "Q"});
        f.raw.types.push_back({b, "B"});
        f.raw.edges.push_back({p, "s", b});
        pos_names.push_back(p);
    }

    // n0 is the shared near-miss negative: every NearMiss_* concept
    // covers all positives plus n0, so boolean combinations of the
    // plateau never separate
    f.raw.types.push_back({"n0", "Q"});
    neg_names.push_back("n0");
    for (int i = 1; i <= 7; ++i) {
        std::string n = "n" + std::to_string(i);
        f.raw.types.push_back({n, "Q"});
        neg_names.push_back(n);
    }

    const int near_miss_count = 30;
    for (int i = 1; i <= near_miss_count; ++i) {
        std::string concept_iri = "NearMiss" + std::to_string(i);
        for (const auto& p : pos_names) f.raw.types.push_back({p, concept_iri});
        f.raw.types.push_back({"n0", concept_iri});
    }

    // groups over n1..n7 only; their complements still cover n0
    const std::vector<std::vector<int>> groups = {
        {1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {1, 4, 7}, {2, 5}, {3, 6}, {1, 6, 7}, {2, 4}};
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::string concept_iri = "NegGroup" + std::to_string(g);
        for (int i : groups[g])
            f.raw.types.push_back({"n" + std::to_string(i), concept_iri});
    }

    f.kb = f.raw.build();
    f.positives = ids_of(f.kb, pos_names);
    f.negatives = ids_of(f.kb, neg_names);

    ConceptRef target = Concept::disjunction(Concept::exists("r", Concept::top()),
                                             Concept::exists("s", Concept::top()));
    for (const auto& p : pos_names)
        if (!f.raw.member(p, target)) throw std::logic_error("two-cluster fixture: positive missed");
    for (const auto& n : neg_names)
        if (f.raw.member(n, target)) throw std::logic_error("two-cluster fixture: negative covered");
    return f;
}

std::string qald_fixture_json() {
    // ten ASK questions (answered correctly) and ten entity questions
    // (answered wrong); queries carry realistic prefixed IRIs
    std::string questions;
    const char* bool_texts[] = {
        "Is the Danube longer than the Rhine river in Europe",
        "Does the Amazon river cross more than three countries",
        "Is Mount Everest taller than K2",
        "Was Marie Curie born in Warsaw",
        "Is the Pacific the largest ocean on Earth",
        "Does Iceland have an army of its own",
        "Is the Sahara the largest hot desert",
        "Was the Eiffel Tower built before 1900",
        "Is Canberra the capital of Australia",
        "Does the Nile flow through Egypt",
    };
    const char* entity_texts[] = {
        "Which island hosts the Indonesian capital city of the country",
        "What is the highest mountain in the Andes range",
        "Who wrote the novel about the white whale at sea",
        "Which river flows through the capital of Austria",
        "What company produced the first mass market automobile",
        "Which painter created the ceiling of the Sistine Chapel",
        "What is the largest lake located in the Alps",
        "Which scientist proposed the theory of general relativity",
        "What city hosted the first modern Olympic games",
        "Which element has the highest melting point of all",
    };
    int id = 1;
    for (int i = 0; i < 10; ++i, ++id) {
        if (!questions.empty()) questions += ",\n";
        questions += R"({"id": ")" + std::to_string(id) + R"(", "question": [{"language": "en", "string": ")" +
                     bool_texts[i] + R"(?"}], "query": {"sparql": "PREFIX wd: <http://www.wikidata.org/entity/> PREFIX wdt: <http://www.wikidata.org/prop/direct/> ASK { wd:Q)" +
                     std::to_string(100 + i) + R"( wdt:P)" + std::to_string(30 + i) +
                     R"( wd:Q)" + std::to_string(200 + i) + R"( }"}, "answers": [{"boolean": true}]})";
    }
    for (int i = 0; i < 10; ++i, ++id) {
        if (!questions.empty()) questions += ",\n";
        questions += R"({"id": ")" + std::to_string(id) + R"(", "question": [{"language": "en", "string": ")" +
                     entity_texts[i] + R"(?"}], "query": {"sparql": "PREFIX wd: <http://www.wikidata.org/entity/> PREFIX wdt: <http://www.wikidata.org/prop/direct/> SELECT ?x WHERE { wd:Q)" +
                     std::to_string(300 + i) + R"( wdt:P)" + std::to_string(50 + i) +
                     R"( ?x . ?x wdt:P31 wd:Q)" + std::to_string(400 + i) +
                     R"( }"}, "answers": [{"head": {"vars": ["x"]}, "results": {"bindings": [{"x": {"type": "uri", "value": "http://www.wikidata.org/entity/Q)" +
                     std::to_string(500 + i) + R"("}}]}}]})";
    }
    return "{\"questions\": [\n" + questions + "\n]}\n";
}

std::string qald_fixture_scores_csv() {
    std::string csv = "question_id,f1\n";
    for (int id = 1; id <= 10; ++id) csv += std::to_string(id) + ",1.0\n";
    for (int id = 11; id <= 20; ++id) csv += std::to_string(id) + ",0.0\n";
    return csv;
}

}  // namespace testsupport
