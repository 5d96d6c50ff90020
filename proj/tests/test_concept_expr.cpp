#include "doctest.h"

#include "prunecel/concept_expr.hpp"
#include "prunecel/evaluator.hpp"

#include "support/raw_kb.hpp"
#include "support/rng.hpp"

using namespace prunecel;
using testsupport::Rng;

namespace {

ConceptRef N(const char* name) { return Concept::named(name); }

}  // namespace

TEST_CASE("length follows the recursive definition") {
    CHECK(Concept::top()->length() == 1);
    CHECK(Concept::bottom()->length() == 1);
    CHECK(N("A")->length() == 1);
    CHECK(Concept::marker()->length() == 1);

    // exists hasIriAnswer.Place
    CHECK(Concept::exists("hasIriAnswer", N("Place"))->length() == 3);

    // not A and (r some Top): 1 + (1+1) + (2+1)
    auto c = Concept::conjunction(Concept::negation(N("A")),
                                  Concept::exists("r", Concept::top()));
    CHECK(c->length() == 6);

    CHECK(Concept::negation(N("A"))->length() == 2);
    CHECK(Concept::for_all("r", N("A"))->length() == 3);
    CHECK(Concept::disjunction(N("A"), N("B"))->length() == 3);
}

TEST_CASE("template invariant is enforced") {
    CHECK_THROWS_AS(Template(N("A")), std::invalid_argument);
    CHECK_THROWS_AS(Template(Concept::conjunction(Concept::marker(), Concept::marker())),
                    std::invalid_argument);
    CHECK_NOTHROW(Template(Concept::exists("r", Concept::marker())));
}

TEST_CASE("merge substitutes the inner template for the marker") {
    Template hole = Template::hole();
    Template exists_r(Concept::exists("r", Concept::marker()));

    // merge(mu, r some mu) = r some mu
    CHECK(canonical_key(hole.merge(exists_r).expr()) == canonical_key(exists_r.expr()));

    // merge(r some mu, mu and B) = r some (mu and B)
    Template and_b(Concept::conjunction(Concept::marker(), N("B")));
    auto merged = exists_r.merge(and_b);
    CHECK(canonical_key(merged.expr()) ==
          canonical_key(Concept::exists("r", Concept::conjunction(Concept::marker(), N("B")))));

    // merge(A or mu, not mu) = A or not mu
    Template a_or(Concept::disjunction(N("A"), Concept::marker()));
    Template not_mu(Concept::negation(Concept::marker()));
    CHECK(canonical_key(a_or.merge(not_mu).expr()) ==
          canonical_key(Concept::disjunction(N("A"), Concept::negation(Concept::marker()))));
}

TEST_CASE("instantiate replaces the marker with a concept") {
    CHECK(canonical_key(Template::hole().instantiate(N("Place"))) == canonical_key(N("Place")));

    Template t(Concept::exists("hasIriAnswer", Concept::marker()));
    CHECK(canonical_key(t.instantiate(N("Place"))) ==
          canonical_key(Concept::exists("hasIriAnswer", N("Place"))));

    Template t2(Concept::conjunction(Concept::marker(),
                                     Concept::exists("hasIriAnswer", Concept::top())));
    CHECK(canonical_key(t2.instantiate(N("Question"))) ==
          canonical_key(Concept::conjunction(
              N("Question"), Concept::exists("hasIriAnswer", Concept::top()))));

    CHECK_THROWS_AS(Template::hole().instantiate(Concept::marker()), std::invalid_argument);
}

TEST_CASE("canonical keys identify equivalent shapes") {
    CHECK(canonical_key(Concept::conjunction(N("A"), N("B"))) ==
          canonical_key(Concept::conjunction(N("B"), N("A"))));

    CHECK(canonical_key(Concept::negation(Concept::negation(N("A")))) == canonical_key(N("A")));

    // (A and B) and A -> A and B
    CHECK(canonical_key(Concept::conjunction(Concept::conjunction(N("A"), N("B")), N("A"))) ==
          canonical_key(Concept::conjunction(N("A"), N("B"))));

    // double negation inside a chain still flattens
    auto inner = Concept::negation(Concept::negation(Concept::conjunction(N("A"), N("B"))));
    CHECK(canonical_key(Concept::conjunction(inner, N("C"))) ==
          canonical_key(Concept::conjunction(N("A"), Concept::conjunction(N("B"), N("C")))));

    CHECK(canonical_key(Concept::conjunction(N("A"), N("B"))) !=
          canonical_key(Concept::disjunction(N("A"), N("B"))));
    CHECK(canonical_key(Concept::exists("r", N("A"))) !=
          canonical_key(Concept::for_all("r", N("A"))));
}

TEST_CASE("parse handles the grammar and precedence") {
    auto c = parse_concept("hasIriAnswer some Place");
    CHECK(c->kind() == ConceptKind::Exists);
    CHECK(c->role() == "hasIriAnswer");
    CHECK(c->child()->name() == "Place");

    // 'and' binds tighter than 'or'; 'not' applies to the restriction
    auto d = parse_concept("not agent and parentMountainPeak some Top");
    CHECK(d->kind() == ConceptKind::And);
    CHECK(d->left()->kind() == ConceptKind::Not);
    CHECK(d->left()->child()->name() == "agent");
    CHECK(d->right()->kind() == ConceptKind::Exists);
    CHECK(d->right()->role() == "parentMountainPeak");
    CHECK(d->right()->child()->kind() == ConceptKind::Top);

    auto e = parse_concept("A and B or C");
    CHECK(e->kind() == ConceptKind::Or);
    CHECK(e->left()->kind() == ConceptKind::And);

    auto f = parse_concept("A and (B or C)");
    CHECK(f->kind() == ConceptKind::And);

    auto g = parse_concept("r only (A or B)");
    CHECK(g->kind() == ConceptKind::ForAll);

    auto h = parse_concept("<http://example.org/x,y> and Top");
    CHECK(h->left()->name() == "http://example.org/x,y");

    CHECK_THROWS_AS(parse_concept("A or"), ConceptParseError);
    CHECK_THROWS_AS(parse_concept("(A"), ConceptParseError);
    CHECK_THROWS_AS(parse_concept("some A"), ConceptParseError);
    CHECK_THROWS_AS(parse_concept(""), ConceptParseError);
    try {
        parse_concept("A or");
    } catch (const ConceptParseError& err) {
        CHECK(err.position() == 4);
    }
}

TEST_CASE("prefixed names expand and compress") {
    PrefixMap prefixes;
    prefixes.add("dbo", "http://dbpedia.org/ontology/");
    auto c = parse_concept("dbo:Place", prefixes);
    CHECK(c->name() == "http://dbpedia.org/ontology/Place");
    CHECK(render_concept(c, prefixes) == "dbo:Place");
    CHECK(render_concept(c) == "<http://dbpedia.org/ontology/Place>");

    CHECK_THROWS_AS(parse_concept("nope:Thing", prefixes), ConceptParseError);
}

TEST_CASE("render round-trips on canonical text") {
    const char* cases[] = {
        "hasIriAnswer some Place",
        "not agent and parentMountainPeak some Top",
        "A and B or C",
        "A and (B or C)",
        "r some not A",
        "r only (A or B and C)",
        "not (A or B)",
        "Top",
        "Bottom",
        "r some s only Top",
    };
    for (const char* text : cases) {
        auto c = parse_concept(text);
        std::string rendered = render_concept(c);
        CHECK(rendered == text);
        CHECK(canonical_key(parse_concept(rendered)) == canonical_key(c));
    }
}

TEST_CASE("property: random concepts survive render/parse") {
    Rng rng(0x5eed0005);
    // vocabulary that exercises bare words, prefixed forms, and raw IRIs
    std::vector<std::string> concepts{
        "A", "B-2", "http://dbpedia.org/ontology/Place", "urn:dqb:Question",
        "name.with.dots", "and"};  // the keyword must render bracketed
    std::vector<std::string> roles{"r", "http://www.wikidata.org/prop/direct/P131", "or"};
    PrefixMap prefixes;
    prefixes.add("dbo", "http://dbpedia.org/ontology/");
    prefixes.add("wdt", "http://www.wikidata.org/prop/direct/");
    prefixes.add("dqb", "urn:dqb:");

    for (int i = 0; i < 500; ++i) {
        auto c = testsupport::random_concept(rng, concepts, roles, 4);
        std::string text = render_concept(c, prefixes);
        auto reparsed = parse_concept(text, prefixes);
        CHECK(canonical_key(reparsed) == canonical_key(c));
        // rendering is stable on the second pass
        CHECK(render_concept(reparsed, prefixes) == text);
    }
}

TEST_CASE("verbalize produces the documented phrases") {
    CHECK(verbalize(Concept::exists("hasIriAnswer", N("Place"))) ==
          "has some hasIriAnswer that is a Place");
    CHECK(verbalize(Concept::top()) == "anything");
    CHECK(verbalize(Concept::disjunction(N("A"), N("B"))) == "is a A or is a B");
    CHECK(verbalize(Concept::negation(N("A"))) == "is not a A");
    CHECK(verbalize(Concept::exists("r", Concept::top())) == "has some r");
    CHECK(verbalize(Concept::negation(Concept::exists("r", Concept::top()))) ==
          "does not have some r");
    CHECK(verbalize(Concept::negation(Concept::top())) == "is not anything");

    std::map<Iri, std::string> labels{{"hasIriAnswer", "answer IRI"}};
    CHECK(verbalize(Concept::exists("hasIriAnswer", N("Place")), labels) ==
          "has some answer IRI that is a Place");

    // local-name fallback
    CHECK(verbalize(N("http://dbpedia.org/ontology/Place")) == "is a Place");
}

TEST_CASE("verbalize keeps long nested concepts in a single paragraph") {
    auto c = parse_concept(
        "hasEntityAnswer some (Album or inception some Top or Occupation or "
        "located some not Country or kindOf some Top) or hasBooleanAnswer some Top or Famous");
    CHECK(c->length() == 24);
    auto text = verbalize(c);
    CHECK_FALSE(text.empty());
    CHECK(text.find('\n') == std::string::npos);
    CHECK(text.find("has some hasEntityAnswer that") != std::string::npos);
    CHECK(text.find("has some hasBooleanAnswer") != std::string::npos);
}

TEST_CASE("property: one-marker invariant survives merge") {
    Rng rng(0x5eed0001);
    std::vector<std::string> concepts{"A", "B", "C"};
    std::vector<std::string> roles{"r", "s"};
    for (int i = 0; i < 300; ++i) {
        auto t1 = testsupport::random_template(rng, concepts, roles, 3);
        auto t2 = testsupport::random_template(rng, concepts, roles, 3);
        auto merged = t1.merge(t2);
        CHECK(merged.expr()->marker_count() == 1);
    }
}

TEST_CASE("property: merge composes with instantiate") {
    Rng rng(0x5eed0002);
    std::vector<std::string> concepts{"A", "B", "C"};
    std::vector<std::string> roles{"r", "s"};
    for (int i = 0; i < 300; ++i) {
        auto t1 = testsupport::random_template(rng, concepts, roles, 3);
        auto t2 = testsupport::random_template(rng, concepts, roles, 3);
        auto c = testsupport::random_concept(rng, concepts, roles, 2);
        auto lhs = t1.merge(t2).instantiate(c);
        auto rhs = t1.instantiate(t2.instantiate(c));
        CHECK(canonical_key(lhs) == canonical_key(rhs));
    }
}

TEST_CASE("property: instantiation length identity") {
    Rng rng(0x5eed0003);
    std::vector<std::string> concepts{"A", "B", "C"};
    std::vector<std::string> roles{"r", "s"};
    for (int i = 0; i < 300; ++i) {
        auto t = testsupport::random_template(rng, concepts, roles, 3);
        auto c = testsupport::random_concept(rng, concepts, roles, 2);
        const int expected = t.instantiate(Concept::top())->length() - 1 + c->length();
        CHECK(t.instantiate(c)->length() == expected);
    }
}

TEST_CASE("property: canonicalize is idempotent and meaning-preserving") {
    Rng rng(0x5eed0004);
    for (int round = 0; round < 60; ++round) {
        auto raw = testsupport::random_kb(rng, {20, 4, 2, 60});
        auto kb = raw.build();
        auto concepts = testsupport::concept_vocab(kb);
        auto roles = testsupport::role_vocab(kb);
        for (int i = 0; i < 10; ++i) {
            auto c = testsupport::random_concept(rng, concepts, roles, 4);
            auto key = canonical_key(c);
            auto canon = canonical_form(c);
            CHECK(canonical_key(canon) == key);
            CHECK(canonical_key(canonical_form(canon)) == key);
            // the rewrite preserves meaning
            CHECK(instances(canon, kb) == instances(c, kb));
            // algebraic shuffles keep the key and the instances
            auto shuffled = Concept::conjunction(c, c);
            CHECK(canonical_key(shuffled) == key);
            CHECK(instances(shuffled, kb) == instances(c, kb));
            auto doubled = Concept::negation(Concept::negation(c));
            CHECK(canonical_key(doubled) == key);
            CHECK(instances(doubled, kb) == instances(c, kb));
        }
    }
}
