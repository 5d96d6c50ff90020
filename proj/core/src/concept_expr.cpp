#include "prunecel/concept_expr.hpp"

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

namespace prunecel {

Concept::Concept(ConceptKind kind, Iri name, ConceptRef left, ConceptRef right)
    : kind_(kind), name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {
    switch (kind_) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Named:
            length_ = 1;
            markers_ = 0;
            break;
        case ConceptKind::Marker:
            // handled like a named concept
            length_ = 1;
            markers_ = 1;
            break;
        case ConceptKind::Not:
            length_ = 1 + left_->length_;
            markers_ = left_->markers_;
            break;
        case ConceptKind::Exists:
        case ConceptKind::ForAll:
            length_ = 2 + left_->length_;
            markers_ = left_->markers_;
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            length_ = 1 + left_->length_ + right_->length_;
            markers_ = left_->markers_ + right_->markers_;
            break;
    }
}

ConceptRef Concept::top() {
    static const ConceptRef instance = std::make_shared<Concept>(ConceptKind::Top, Iri{}, nullptr, nullptr);
    return instance;
}

ConceptRef Concept::bottom() {
    static const ConceptRef instance = std::make_shared<Concept>(ConceptKind::Bottom, Iri{}, nullptr, nullptr);
    return instance;
}

ConceptRef Concept::marker() {
    static const ConceptRef instance = std::make_shared<Concept>(ConceptKind::Marker, Iri{}, nullptr, nullptr);
    return instance;
}

ConceptRef Concept::named(Iri name) {
    assert(!name.empty());
    return std::make_shared<Concept>(ConceptKind::Named, std::move(name), nullptr, nullptr);
}

ConceptRef Concept::negation(ConceptRef x) {
    assert(x);
    return std::make_shared<Concept>(ConceptKind::Not, Iri{}, std::move(x), nullptr);
}

ConceptRef Concept::conjunction(ConceptRef left, ConceptRef right) {
    assert(left && right);
    return std::make_shared<Concept>(ConceptKind::And, Iri{}, std::move(left), std::move(right));
}

ConceptRef Concept::disjunction(ConceptRef left, ConceptRef right) {
    assert(left && right);
    return std::make_shared<Concept>(ConceptKind::Or, Iri{}, std::move(left), std::move(right));
}

ConceptRef Concept::exists(Iri role, ConceptRef filler) {
    assert(!role.empty() && filler);
    return std::make_shared<Concept>(ConceptKind::Exists, std::move(role), std::move(filler), nullptr);
}

ConceptRef Concept::for_all(Iri role, ConceptRef filler) {
    assert(!role.empty() && filler);
    return std::make_shared<Concept>(ConceptKind::ForAll, std::move(role), std::move(filler), nullptr);
}

// --- templates --------------------------------------------------------------

namespace {

ConceptRef replace_marker(const ConceptRef& tree, const ConceptRef& replacement) {
    if (tree->marker_count() == 0) return tree;
    switch (tree->kind()) {
        case ConceptKind::Marker:
            return replacement;
        case ConceptKind::Not:
            return Concept::negation(replace_marker(tree->child(), replacement));
        case ConceptKind::Exists:
            return Concept::exists(tree->role(), replace_marker(tree->child(), replacement));
        case ConceptKind::ForAll:
            return Concept::for_all(tree->role(), replace_marker(tree->child(), replacement));
        case ConceptKind::And:
            return Concept::conjunction(replace_marker(tree->left(), replacement),
                                        replace_marker(tree->right(), replacement));
        case ConceptKind::Or:
            return Concept::disjunction(replace_marker(tree->left(), replacement),
                                        replace_marker(tree->right(), replacement));
        default:
            return tree;
    }
}

}  // namespace

Template::Template(ConceptRef expr) : expr_(std::move(expr)) {
    if (!expr_ || expr_->marker_count() != 1)
        throw std::invalid_argument("template must contain the marker exactly once");
}

Template Template::hole() { return Template(Concept::marker()); }

Template Template::merge(const Template& inner) const {
    return Template(replace_marker(expr_, inner.expr_));
}

ConceptRef Template::instantiate(const ConceptRef& filler) const {
    if (!filler || filler->marker_count() != 0)
        throw std::invalid_argument("instantiate: filler must be marker-free");
    return replace_marker(expr_, filler);
}

// --- canonical keys ---------------------------------------------------------

namespace {

// Structural serialization, no rewrites. Names are wrapped in <> (IRIs
// cannot contain '>'), so the encoding is unambiguous.
std::string serialize(const ConceptRef& c) {
    switch (c->kind()) {
        case ConceptKind::Top:
            return "#t";
        case ConceptKind::Bottom:
            return "#f";
        case ConceptKind::Marker:
            return "#m";
        case ConceptKind::Named:
            return "<" + c->name() + ">";
        case ConceptKind::Not:
            return "~" + serialize(c->child());
        case ConceptKind::Exists:
            return "E<" + c->role() + ">." + serialize(c->child());
        case ConceptKind::ForAll:
            return "A<" + c->role() + ">." + serialize(c->child());
        case ConceptKind::And:
            return "&(" + serialize(c->left()) + "," + serialize(c->right()) + ")";
        case ConceptKind::Or:
            return "|(" + serialize(c->left()) + "," + serialize(c->right()) + ")";
    }
    return {};
}

void collect_operands(const ConceptRef& node, ConceptKind kind, std::vector<ConceptRef>& out) {
    if (node->kind() == kind) {
        collect_operands(node->left(), kind, out);
        collect_operands(node->right(), kind, out);
    } else {
        out.push_back(node);
    }
}

// Rewrites to a canonical tree: double negation removed, And/Or chains
// flattened with operands sorted and deduped, single-operand chains
// collapsed. The rebuilt chain is right-nested.
ConceptRef canonical_tree(const ConceptRef& c) {
    switch (c->kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
        case ConceptKind::Marker:
        case ConceptKind::Named:
            return c;
        case ConceptKind::Not: {
            ConceptRef inner = canonical_tree(c->child());
            if (inner->kind() == ConceptKind::Not) return inner->child();
            return Concept::negation(std::move(inner));
        }
        case ConceptKind::Exists:
            return Concept::exists(c->role(), canonical_tree(c->child()));
        case ConceptKind::ForAll:
            return Concept::for_all(c->role(), canonical_tree(c->child()));
        case ConceptKind::And:
        case ConceptKind::Or: {
            const ConceptKind kind = c->kind();
            std::vector<ConceptRef> raw;
            collect_operands(c, kind, raw);
            // canonicalizing an operand can expose further chains of the
            // same connective (e.g. via double-negation removal)
            std::vector<ConceptRef> ops;
            for (const auto& op : raw) collect_operands(canonical_tree(op), kind, ops);
            std::vector<std::pair<std::string, ConceptRef>> keyed;
            keyed.reserve(ops.size());
            for (auto& op : ops) keyed.emplace_back(serialize(op), std::move(op));
            std::sort(keyed.begin(), keyed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            keyed.erase(std::unique(keyed.begin(), keyed.end(),
                                    [](const auto& a, const auto& b) { return a.first == b.first; }),
                        keyed.end());
            if (keyed.size() == 1) return keyed.front().second;
            ConceptRef acc = keyed.back().second;
            for (std::size_t i = keyed.size() - 1; i-- > 0;) {
                acc = kind == ConceptKind::And ? Concept::conjunction(keyed[i].second, std::move(acc))
                                               : Concept::disjunction(keyed[i].second, std::move(acc));
            }
            return acc;
        }
    }
    return c;
}

}  // namespace

ConceptKey canonical_key(const ConceptRef& c) { return serialize(canonical_tree(c)); }

ConceptRef canonical_form(const ConceptRef& c) { return canonical_tree(c); }

std::string iri_local_name(const Iri& iri) {
    std::size_t pos = iri.find_last_of("#/:");
    if (pos == std::string::npos || pos + 1 >= iri.size()) return iri;
    return iri.substr(pos + 1);
}

}  // namespace prunecel
