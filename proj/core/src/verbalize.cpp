#include "prunecel/concept_expr.hpp"

namespace prunecel {

namespace {

std::string label_of(const Iri& iri, const std::map<Iri, std::string>& labels) {
    auto it = labels.find(iri);
    if (it != labels.end()) return it->second;
    return iri_local_name(iri);
}

bool is_junction(const ConceptRef& c) {
    return c->kind() == ConceptKind::And || c->kind() == ConceptKind::Or;
}

std::string phrase(const ConceptRef& c, const std::map<Iri, std::string>& labels);

// sub-phrase used after "that" / "is not"; junctions get parentheses
std::string sub_phrase(const ConceptRef& c, const std::map<Iri, std::string>& labels) {
    std::string p = phrase(c, labels);
    if (is_junction(c)) return "(" + p + ")";
    return p;
}

std::string phrase(const ConceptRef& c, const std::map<Iri, std::string>& labels) {
    switch (c->kind()) {
        case ConceptKind::Top:
            return "anything";
        case ConceptKind::Bottom:
            return "nothing";
        case ConceptKind::Marker:
            return "something";
        case ConceptKind::Named:
            return "is a " + label_of(c->name(), labels);
        case ConceptKind::Not: {
            std::string inner = sub_phrase(c->child(), labels);
            // "is a X" -> "is not a X", "has some r" -> "does not have some r"
            if (inner.rfind("is ", 0) == 0) return "is not " + inner.substr(3);
            if (inner.rfind("has ", 0) == 0) return "does not have " + inner.substr(4);
            return "is not " + inner;
        }
        case ConceptKind::And:
            return phrase(c->left(), labels) + " and " + phrase(c->right(), labels);
        case ConceptKind::Or:
            return phrase(c->left(), labels) + " or " + phrase(c->right(), labels);
        case ConceptKind::Exists: {
            std::string role = label_of(c->role(), labels);
            if (c->child()->kind() == ConceptKind::Top) return "has some " + role;
            return "has some " + role + " that " + sub_phrase(c->child(), labels);
        }
        case ConceptKind::ForAll: {
            std::string role = label_of(c->role(), labels);
            if (c->child()->kind() == ConceptKind::Top) return "has only " + role;
            return "has only " + role + " that " + sub_phrase(c->child(), labels);
        }
    }
    return {};
}

}  // namespace

std::string verbalize(const ConceptRef& c, const std::map<Iri, std::string>& labels) {
    return phrase(c, labels);
}

}  // namespace prunecel
