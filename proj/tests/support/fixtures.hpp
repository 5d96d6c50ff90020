#ifndef PRUNECEL_TESTS_FIXTURES_HPP
#define PRUNECEL_TESTS_FIXTURES_HPP

#include <string>

#include "prunecel/individual_set.hpp"
#include "prunecel/knowledge_base.hpp"

#include "raw_kb.hpp"

namespace testsupport {

struct Fixture {
    RawKb raw;
    prunecel::KnowledgeBase kb;
    prunecel::IndividualSet positives;
    prunecel::IndividualSet negatives;
};

// The question/answer running example: q1 has an IRI answer typed Place,
// q2 has nothing, plus a few off-example individuals.
Fixture running_example();

// Planted target exists r.(A or B): six positives split between A- and
// B-shaped answers, eight negatives, perfectly separable. The builder
// asserts separability with the reference evaluator before returning.
Fixture planted_fixture();
inline const char* planted_target_text() { return "r some (A or B)"; }

// Two positive clusters (r-edges vs s-edges) plus a plateau of near-miss
// concepts that all cover one shared negative. No concept of length <= 5
// separates; exists r.Top | exists s.Top does. Built for the recursive
// extension: exists r.Top is an exact sub-solution.
Fixture two_cluster_fixture();

// 20-question QALD-style dataset: ten boolean questions the system gets
// right, ten entity questions it gets wrong.
std::string qald_fixture_json();
std::string qald_fixture_scores_csv();

}  // namespace testsupport

#endif
