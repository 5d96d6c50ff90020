#ifndef PRUNECEL_SCORING_HPP
#define PRUNECEL_SCORING_HPP

#include <cstdint>
#include <string>

#include "prunecel/concept_expr.hpp"

namespace prunecel {

enum class QualityKind { Accuracy, BalancedAccuracy, F1 };

const char* quality_name(QualityKind kind);
// accepts "f1", "acc"/"accuracy", "bacc"/"balanced-accuracy"
QualityKind parse_quality_kind(const std::string& name);

// Standard confusion-matrix scores over coverage counts, with tp = cp,
// fp = cn, fn = P - cp, tn = N - cn. All three return exactly 1 iff
// cp = P and cn = 0. F1 is defined as 0 when tp = 0. Preconditions
// (cp <= P, cn <= N, P > 0, N > 0) raise std::invalid_argument.
double quality(QualityKind kind, std::uint32_t cp, std::uint32_t cn, std::uint32_t total_pos,
               std::uint32_t total_neg);

// q - eta * l(c)
double heuristic(double q, const ConceptRef& c, double eta);

}  // namespace prunecel

#endif
