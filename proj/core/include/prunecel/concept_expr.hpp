#ifndef PRUNECEL_CONCEPT_EXPR_HPP
#define PRUNECEL_CONCEPT_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prunecel {

using Iri = std::string;

class Concept;
using ConceptRef = std::shared_ptr<const Concept>;

enum class ConceptKind : std::uint8_t {
    Top,
    Bottom,
    Named,
    Marker,  // the template hole; never occurs in a learnable concept
    Not,
    And,
    Or,
    Exists,
    ForAll,
};

// An ALC expression tree. Nodes are immutable and shared; And/Or are
// stored binary. The recursive length and the marker count are computed
// at construction, so both are O(1) on every node.
class Concept {
  public:
    static ConceptRef top();
    static ConceptRef bottom();
    static ConceptRef marker();
    static ConceptRef named(Iri name);
    static ConceptRef negation(ConceptRef x);
    static ConceptRef conjunction(ConceptRef left, ConceptRef right);
    static ConceptRef disjunction(ConceptRef left, ConceptRef right);
    static ConceptRef exists(Iri role, ConceptRef filler);
    static ConceptRef for_all(Iri role, ConceptRef filler);

    ConceptKind kind() const { return kind_; }

    // Named concept IRI (Named), or role IRI (Exists/ForAll).
    const Iri& name() const { return name_; }
    const Iri& role() const { return name_; }

    // Child of Not, or the filler of Exists/ForAll.
    const ConceptRef& child() const { return left_; }
    const ConceptRef& left() const { return left_; }
    const ConceptRef& right() const { return right_; }

    int length() const { return length_; }
    int marker_count() const { return markers_; }

    Concept(ConceptKind kind, Iri name, ConceptRef left, ConceptRef right);

  private:
    ConceptKind kind_;
    Iri name_;
    ConceptRef left_;
    ConceptRef right_;
    int length_;
    int markers_;
};

inline int length(const ConceptRef& c) { return c->length(); }

// A concept expression containing the marker exactly once.
class Template {
  public:
    explicit Template(ConceptRef expr);

    // The bare marker: the template of rho's outermost call.
    static Template hole();

    const ConceptRef& expr() const { return expr_; }

    // Replaces the marker in *this* with the other template's tree.
    Template merge(const Template& inner) const;

    // Replaces the marker with a marker-free concept.
    ConceptRef instantiate(const ConceptRef& filler) const;

  private:
    ConceptRef expr_;
};

// Canonical string form: And/Or flattened, operands sorted and deduped,
// double negation removed. Concepts with equal keys denote equal sets.
// The input tree is never altered.
using ConceptKey = std::string;
ConceptKey canonical_key(const ConceptRef& c);

// The rewritten tree the key serializes; canonical_form is idempotent.
ConceptRef canonical_form(const ConceptRef& c);

// --- concrete text syntax -------------------------------------------------
//
//   or_expr  := and_expr ('or' and_expr)*
//   and_expr := unary ('and' unary)*
//   unary    := 'not' unary | restriction
//   restr.   := name 'some' unary | name 'only' unary | primary
//   primary  := 'Top' | 'Bottom' | '(' or_expr ')' | name
//   name     := <absolute-iri> | prefix:local | bare-word
//
// 'and' binds tighter than 'or'. Bare words and prefixed names resolve
// through the prefix map; a bare word with no matching prefix entry is
// taken verbatim as the IRI.

class PrefixMap {
  public:
    PrefixMap() = default;
    void add(std::string prefix, Iri iri) { entries_[std::move(prefix)] = std::move(iri); }
    const std::map<std::string, Iri>& entries() const { return entries_; }

    // prefix:local -> IRI, if the prefix is known.
    bool expand(std::string_view prefix, std::string_view local, Iri& out) const;
    // Longest-namespace match; false if no entry's IRI prefixes the input.
    bool compress(const Iri& iri, std::string& prefix, std::string& local) const;

  private:
    std::map<std::string, Iri> entries_;
};

class ConceptParseError : public std::runtime_error {
  public:
    ConceptParseError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

ConceptRef parse_concept(std::string_view text, const PrefixMap& prefixes = {});
std::string render_concept(const ConceptRef& c, const PrefixMap& prefixes = {});

// Deterministic rule-based English rendering. Labels substitute for IRIs;
// absent entries fall back to the IRI's local name.
std::string verbalize(const ConceptRef& c, const std::map<Iri, std::string>& labels = {});

// Local name of an IRI: the part after the last '#', '/' or ':'.
std::string iri_local_name(const Iri& iri);

}  // namespace prunecel

#endif
