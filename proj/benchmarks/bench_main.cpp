#include <benchmark/benchmark.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "prunecel/evaluator.hpp"
#include "prunecel/learner.hpp"
#include "prunecel/ntriples.hpp"
#include "prunecel/oracle.hpp"
#include "prunecel/refinement.hpp"

using namespace prunecel;

namespace {

// synthetic star-shaped QA-style KB: questions with typed answers
struct SyntheticKb {
    KnowledgeBase kb;
    IndividualSet positives;
    IndividualSet negatives;
    std::string ntriples;
};

SyntheticKb make_synthetic(std::size_t questions, std::size_t concepts, std::size_t roles) {
    std::mt19937_64 rng(42);
    KnowledgeBase::Builder builder;
    std::ostringstream nt;
    auto type_of = [&](std::size_t k) { return "Type" + std::to_string(k % concepts); };
    auto role_of = [&](std::size_t k) { return "role" + std::to_string(k % roles); };
    for (std::size_t i = 0; i < questions; ++i) {
        std::string q = "q" + std::to_string(i);
        builder.add_membership(q, "Question");
        nt << "<" << q << "> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <Question> .\n";
        const std::size_t fanout = 1 + rng() % 4;
        for (std::size_t e = 0; e < fanout; ++e) {
            std::string target = "t" + std::to_string(rng() % (questions * 2));
            std::string role = role_of(rng());
            builder.add_edge(q, role, target);
            builder.add_membership(target, type_of(rng()));
            nt << "<" << q << "> <" << role << "> <" << target << "> .\n";
            nt << "<" << target << "> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <"
               << type_of(rng()) << "> .\n";
        }
    }
    SyntheticKb out;
    out.ntriples = nt.str();
    out.kb = builder.build();
    out.positives = out.kb.empty_set();
    out.negatives = out.kb.empty_set();
    for (std::size_t i = 0; i < questions; ++i) {
        auto id = *out.kb.find_individual("q" + std::to_string(i));
        if (i % 3 == 0) out.positives.add(id);
        else out.negatives.add(id);
    }
    return out;
}

void BM_LoadNtriples(benchmark::State& state) {
    auto data = make_synthetic(static_cast<std::size_t>(state.range(0)), 20, 6);
    for (auto _ : state) {
        auto kb = load_ntriples(data.ntriples);
        benchmark::DoNotOptimize(kb.individual_count());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(state.range(0)));
}
BENCHMARK(BM_LoadNtriples)->Arg(1000)->Arg(10000);

void BM_Instances(benchmark::State& state) {
    auto data = make_synthetic(static_cast<std::size_t>(state.range(0)), 20, 6);
    auto c = parse_concept("role0 some (Type0 or Type1) and not Type2 or role1 only Type3");
    for (auto _ : state) {
        benchmark::DoNotOptimize(instances(c, data.kb).count());
    }
}
BENCHMARK(BM_Instances)->Arg(1000)->Arg(10000);

// the motivating shape: a large KB with a small example set; the
// single-pass oracle restricts evaluation to the examples' neighborhood
// while per-filler retrieval pays a full pass for every candidate
SyntheticKb oracle_shape(std::size_t concepts) {
    auto data = make_synthetic(20000, concepts, 6);
    IndividualSet pos = data.kb.empty_set(), neg = data.kb.empty_set();
    for (std::size_t i = 0; i < 100; ++i) pos.add(*data.kb.find_individual("q" + std::to_string(i)));
    for (std::size_t i = 100; i < 300; ++i)
        neg.add(*data.kb.find_individual("q" + std::to_string(i)));
    data.positives = std::move(pos);
    data.negatives = std::move(neg);
    return data;
}

void BM_OracleFillers(benchmark::State& state) {
    auto data = oracle_shape(static_cast<std::size_t>(state.range(0)));
    Template t(Concept::exists("role0", Concept::marker()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            concept_fillers(t, data.positives, data.negatives, data.kb).size());
    }
}
BENCHMARK(BM_OracleFillers)->Arg(20)->Arg(200);

void BM_OracleBruteForce(benchmark::State& state) {
    auto data = oracle_shape(static_cast<std::size_t>(state.range(0)));
    Template t(Concept::exists("role0", Concept::marker()));
    for (auto _ : state) {
        std::size_t hits = 0;
        for (const auto& iri : data.kb.concept_iris()) {
            auto cov = coverage(t.instantiate(Concept::named(iri)), data.positives,
                                data.negatives, data.kb);
            if (cov.positives + cov.negatives >= 1) ++hits;
        }
        benchmark::DoNotOptimize(hits);
    }
}
BENCHMARK(BM_OracleBruteForce)->Arg(20)->Arg(200);

void BM_RhoExpansion(benchmark::State& state) {
    auto data = make_synthetic(1000, 20, 6);
    auto c = Concept::exists("role0", Concept::top());
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho(c, data.positives, data.negatives, data.kb).size());
    }
}
BENCHMARK(BM_RhoExpansion);

void BM_LearnBudget(benchmark::State& state) {
    auto data = make_synthetic(500, 12, 4);
    SearchConfig cfg;
    cfg.max_iterations = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto result = learn(data.kb, {data.positives, data.negatives}, cfg);
        benchmark::DoNotOptimize(result.iterations);
    }
}
BENCHMARK(BM_LearnBudget)->Arg(5)->Arg(25);

}  // namespace

BENCHMARK_MAIN();
