#include <gtest/gtest.h>

#include <algorithm>
#include <iterator>
#include <random>

#include "ccv/error.hpp"
#include "ccv/rdf/graph.hpp"
#include "ccv/rdf/literal.hpp"
#include "ccv/rdf/turtle.hpp"
#include "fixtures.hpp"

namespace ccv::rdf {
namespace {

using testing::core;
using testing::date;
using testing::ex;
using testing::triple;

TEST(TurtleParse, ContractGraphHasEightTriples) {
  Graph g = testing::load("examples/contract-graph.ttl");
  EXPECT_EQ(g.size(), 8u);
  EXPECT_TRUE(g.contains(triple(ex("contb2"), vocab::rdf_type, Term::iri(vocab::contract_class))));
  EXPECT_TRUE(g.contains(triple(ex("contb2"), vocab::has_obligations, ex("ob_2"))));
  EXPECT_TRUE(g.contains(triple(ex("ob_2"), vocab::has_state, core("FulfilledState"))));
}

TEST(TurtleParse, EmptyInput) {
  EXPECT_TRUE(parse_turtle("").empty());
  EXPECT_TRUE(parse_turtle("  # only a comment\n").empty());
}

TEST(TurtleParse, CollectionExpandsToFirstRestChain) {
  Graph g = parse_turtle(":s sh:in ( :a :b ) .");
  Term c0 = Term::blank("genid0"), c1 = Term::blank("genid1");
  Graph expected;
  expected.insert(ex("s"), Term::iri(vocab::sh("in")), c0);
  expected.insert(c0, Term::iri(vocab::rdf_first), ex("a"));
  expected.insert(c0, Term::iri(vocab::rdf_rest), c1);
  expected.insert(c1, Term::iri(vocab::rdf_first), ex("b"));
  expected.insert(c1, Term::iri(vocab::rdf_rest), Term::iri(vocab::rdf_nil));
  EXPECT_EQ(g, expected);
}

TEST(TurtleParse, EmptyCollectionIsNil) {
  Graph g = parse_turtle(":s :p () .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.begin()->object, Term::iri(vocab::rdf_nil));
}

TEST(TurtleParse, LiteralForms) {
  Graph g = parse_turtle(R"(@prefix x: <http://x.org/> .
PREFIX y: <http://y.org/>
x:s x:int 42 ; x:neg -7 ; x:dec 3.25 ; x:dbl 1e3 ; x:bool true ;
    x:str "a \"quoted\"\nline" ; x:single 'single' ; x:long """multi
line""" ; x:lang "hi"@en ; x:typed "2022-09-07"^^xsd:dateTime ; y:p y:o .)");
  auto value = [&](const std::string& p) {
    auto objs = g.objects(Term::iri("http://x.org/s"), Term::iri("http://x.org/" + p));
    EXPECT_EQ(objs.size(), 1u) << p;
    return objs.front();
  };
  EXPECT_EQ(value("int"), Term::literal("42", vocab::xsd_integer));
  EXPECT_EQ(value("neg"), Term::literal("-7", vocab::xsd_integer));
  EXPECT_EQ(value("dec"), Term::literal("3.25", vocab::xsd_decimal));
  EXPECT_EQ(value("dbl"), Term::literal("1e3", vocab::xsd_double));
  EXPECT_EQ(value("bool"), Term::literal("true", vocab::xsd_boolean));
  EXPECT_EQ(value("str"), Term::string_literal("a \"quoted\"\nline"));
  EXPECT_EQ(value("single"), Term::string_literal("single"));
  EXPECT_EQ(value("long"), Term::string_literal("multi\nline"));
  EXPECT_EQ(value("typed").value(), "2022-09-07T00:00:00");
  EXPECT_EQ(value("lang").value(), "hi");
  EXPECT_EQ(g.size(), 11u);
}

TEST(TurtleParse, BlankNodes) {
  Graph g = parse_turtle("_:x :p [ :q 1 ] . [ :r 2 ] . :s :p [] .");
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.objects(Term::blank("x"), ex("p")), std::vector<Term>{Term::blank("genid0")});
  EXPECT_EQ(g.objects(Term::blank("genid1"), ex("r")), std::vector<Term>{Term::integer(2)});
}

TEST(TurtleParse, ErrorsCarryPosition) {
  try {
    parse_turtle(":a :b :c .\n:d :e \n  \"unterminated .");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_turtle(":a :b :c ;\n  nope:x :d .");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find("undefined prefix 'nope:'"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_turtle("<rel> :p :o ."), ParseError);
  EXPECT_THROW(parse_turtle(":a :b :c"), ParseError);
  EXPECT_THROW(parse_turtle(":a :b ( :c ; ) ."), ParseError);
}

TEST(TurtleParse, BaseResolvesRelativeIris) {
  Graph g = parse_turtle("@base <http://example.org/dir/doc> . <rel> <#p> </abs> .");
  ASSERT_EQ(g.size(), 1u);
  const Triple& t = *g.begin();
  EXPECT_EQ(t.subject.value(), "http://example.org/dir/rel");
  EXPECT_EQ(t.predicate.value(), "http://example.org/dir/doc#p");
  EXPECT_EQ(t.object.value(), "http://example.org/abs");
  TurtleOptions options;
  options.base = "http://base.org/";
  EXPECT_EQ(parse_turtle("<x> <y> <z> .", options).begin()->subject.value(), "http://base.org/x");
}

TEST(TurtleParse, LenientCollectionsSkipStraySeparators) {
  TurtleOptions lenient;
  lenient.lenient_collections = true;
  Graph g = parse_turtle(":s :p ( :a; ) .", lenient);
  EXPECT_EQ(g.size(), 3u);
}

TEST(TurtleSerialize, EmptyGraphIsPrefixesOnly) {
  EXPECT_EQ(serialize_turtle(Graph{}),
            "@prefix : <http://example.org/ccv#> .\n"
            "@prefix fibo: <https://spec.edmcouncil.org/fibo/ontology/FND/Agreements/Contracts/> .\n"
            "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
            "@prefix sh: <http://www.w3.org/ns/shacl#> .\n"
            "@prefix shr: <https://www.w3.org/ns/shacl/repairs#> .\n"
            "@prefix smashHitCore: <http://ontologies.atb-bremen.de/smashHitCore#> .\n"
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n");
}

TEST(TurtleSerialize, SingleTripleIsOneStatement) {
  Graph g;
  g.insert(ex("ob_1"), Term::iri(vocab::has_end_date), date("2020-09-07"));
  std::string text = serialize_turtle(g);
  std::string prefixes = serialize_turtle(Graph{});
  ASSERT_TRUE(text.starts_with(prefixes));
  EXPECT_EQ(text.substr(prefixes.size()),
            "\n:ob_1 smashHitCore:hasEndDate \"2020-09-07T00:00:00\"^^xsd:dateTime .\n");
}

TEST(TurtleSerialize, ContractGraphGolden) {
  Graph g = testing::load("examples/contract-graph.ttl");
  std::string prefixes = serialize_turtle(Graph{});
  EXPECT_EQ(serialize_turtle(g).substr(prefixes.size()),
            "\n"
            ":contb2 smashHitCore:hasContractStatus smashHitCore:statusPending ;\n"
            "    smashHitCore:hasObligations :ob_1, :ob_2 ;\n"
            "    a fibo:Contract .\n"
            ":ob_1 smashHitCore:hasState smashHitCore:PendingState ;\n"
            "    a smashHitCore:Obligation .\n"
            ":ob_2 smashHitCore:hasState smashHitCore:FulfilledState ;\n"
            "    a smashHitCore:Obligation .\n");
  EXPECT_EQ(parse_turtle(serialize_turtle(g)), g);
}

TEST(TurtleSerialize, UnprefixableIrisAndEscapes) {
  Graph g;
  g.insert(Term::iri("http://other.org/a b"), ex("p"), Term::string_literal("tab\there \"q\""));
  g.insert(ex("s"), ex("p"), Term::iri(vocab::ex("bad/local")));
  std::string text = serialize_turtle(g);
  EXPECT_NE(text.find("<http://example.org/ccv#bad/local>"), std::string::npos);
  EXPECT_NE(text.find("\"tab\\there \\\"q\\\"\""), std::string::npos);
}

TEST(LiteralOrder, ObligationEndDates) {
  auto c = compare_literals(date("2021-09-07"), date("2022-09-07"));
  EXPECT_EQ(c.order, LiteralOrder::less);
  EXPECT_FALSE(c.malformed);
  EXPECT_EQ(compare_literals(date("2020-09-07"), date("2021-09-07")).order, LiteralOrder::less);
  EXPECT_EQ(compare_literals(date("2022-09-07"), date("2022-09-07")).order, LiteralOrder::equal);
}

TEST(LiteralOrder, TimezonesNormalizeToUtc) {
  Term a = date("2022-09-07T02:00:00+02:00");
  Term b = date("2022-09-07T00:00:00Z");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.value(), "2022-09-07T00:00:00");
  EXPECT_EQ(date("2022-09-07T00:00:00.500").value(), "2022-09-07T00:00:00.5");
  EXPECT_EQ(date("2022-01-01T00:30:00+01:00").value(), "2021-12-31T23:30:00");
}

TEST(LiteralOrder, FamiliesAndMalformed) {
  EXPECT_EQ(compare_literals(Term::integer(10), Term::literal("9.5", vocab::xsd_decimal)).order,
            LiteralOrder::greater);
  EXPECT_EQ(compare_literals(Term::literal("-0.50", vocab::xsd_decimal),
                             Term::literal("-.5", vocab::xsd_decimal)).order,
            LiteralOrder::equal);
  EXPECT_EQ(compare_literals(Term::string_literal("abc"), Term::string_literal("abd")).order,
            LiteralOrder::less);
  EXPECT_EQ(compare_literals(Term::integer(1), date("2022-09-07")).order, LiteralOrder::incomparable);
  EXPECT_EQ(compare_literals(Term::iri("http://x"), Term::integer(1)).order, LiteralOrder::incomparable);
  EXPECT_EQ(compare_literals(Term::literal("1.0", vocab::xsd_double), Term::literal("1.0", vocab::xsd_double)).order,
            LiteralOrder::incomparable);
  auto bad = compare_literals(date("2022-13-07"), date("2022-09-07"));
  EXPECT_EQ(bad.order, LiteralOrder::incomparable);
  EXPECT_TRUE(bad.malformed);
  EXPECT_EQ(date("2022-13-07").value(), "2022-13-07");
  EXPECT_TRUE(compare_literals(Term::literal("x1", vocab::xsd_integer), Term::integer(1)).malformed);
  EXPECT_EQ(compare_literals(Term::literal("2022-09-07", vocab::xsd_date), date("2022-09-07T00:00:00")).order,
            LiteralOrder::equal);
}

// ---- property tests -------------------------------------------------------

Term random_term(std::mt19937& rng, bool allow_literal) {
  std::uniform_int_distribution<int> kind(0, allow_literal ? 6 : 2);
  std::uniform_int_distribution<int> small(0, 5);
  switch (kind(rng)) {
    case 0: return ex("n" + std::to_string(small(rng)));
    case 1: return Term::iri("http://other.org/x/" + std::to_string(small(rng)) + "-y");
    case 2: return Term::blank("b" + std::to_string(small(rng)));
    case 3: return Term::integer(small(rng) - 2);
    case 4: return date("202" + std::to_string(small(rng)) + "-0" + std::to_string(1 + small(rng)) + "-15");
    case 5: {
      const char* texts[] = {"plain", "with \"quotes\"", "tab\tnew\nline", "back\\slash", "", "ünï"};
      return Term::string_literal(texts[small(rng)]);
    }
    default: return Term::literal("v" + std::to_string(small(rng)), "http://other.org/dt");
  }
}

Graph random_graph(std::mt19937& rng, std::size_t max_triples) {
  Graph g;
  std::uniform_int_distribution<std::size_t> count(0, max_triples);
  std::uniform_int_distribution<int> pred(0, 3);
  for (std::size_t i = 0, n = count(rng); i < n; ++i) {
    Term p = pred(rng) == 0 ? Term::iri(vocab::rdf_type) : ex("p" + std::to_string(pred(rng)));
    g.insert(random_term(rng, false), p, random_term(rng, true));
  }
  return g;
}

TEST(TurtleProperty, RoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(rng, 25);
    std::string text = serialize_turtle(g);
    Graph back = parse_turtle(text);
    ASSERT_EQ(back, g) << text;
    EXPECT_EQ(serialize_turtle(back), text);
  }
}

std::set<Triple> set_of(const Graph& g) { return {g.begin(), g.end()}; }

TEST(PatchProperty, MatchesSetArithmetic) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(rng, 15);
    Graph a = random_graph(rng, 6), d = random_graph(rng, 6);
    std::vector<Triple> pool(g.begin(), g.end());
    for (std::size_t k = 0; k < pool.size(); k += 3) d.insert(pool[k]);
    std::set<Triple> adds = set_of(a), dels = set_of(d);

    std::set<Triple> expected;
    std::set<Triple> base = set_of(g);
    std::set_difference(base.begin(), base.end(), dels.begin(), dels.end(),
                        std::inserter(expected, expected.end()));
    expected.insert(adds.begin(), adds.end());

    Graph patched = apply_patch(g, adds, dels);
    EXPECT_EQ(set_of(patched), expected);
    EXPECT_EQ(set_of(g), base);  // original untouched
  }
}

TEST(PatchProperty, ReversibleUnderDisjointness) {
  std::mt19937 rng(13);
  for (int i = 0; i < 300; ++i) {
    Graph g = random_graph(rng, 15);
    std::set<Triple> adds, dels;
    for (const auto& t : random_graph(rng, 6))
      if (!g.contains(t)) adds.insert(t);
    std::size_t k = 0;
    for (const auto& t : g)
      if (k++ % 2 == 0) dels.insert(t);
    Graph forward = apply_patch(g, adds, dels);
    Graph back = apply_patch(apply_patch(forward, {}, adds), dels, {});
    EXPECT_EQ(back, g);
  }
}

TEST(PatchProperty, IdentityAndIdempotence) {
  Graph g = testing::load("examples/contract-graph.ttl");
  EXPECT_EQ(apply_patch(g, {}, {}), g);
  std::set<Triple> absent{triple(ex("x"), vocab::has_state, ex("y"))};
  EXPECT_EQ(apply_patch(g, {}, absent), g);
  std::set<Triple> some{*g.begin()};
  EXPECT_EQ(apply_patch(apply_patch(g, {}, some), {}, some), apply_patch(g, {}, some));
}

TEST(PatchProperty, ViolatedContractPatch) {
  Graph g = testing::load("examples/cr3-violated-obligation.ttl");
  Graph out = apply_patch(g, {triple(ex("contb2b"), vocab::has_contract_status, core("statusViolated"))},
                          {triple(ex("contb2b"), vocab::has_contract_status, core("statusFulfilled"))});
  EXPECT_EQ(out.objects(ex("contb2b"), Term::iri(vocab::has_contract_status)),
            std::vector<Term>{core("statusViolated")});
}

TEST(LiteralProperty, TotalOrderWithinFamilies) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> year(1999, 2003), month(1, 12), day(1, 28), hour(0, 23),
      offset(-3, 3), number(-50, 50);
  std::vector<Term> dates, numbers;
  for (int i = 0; i < 40; ++i) {
    char buf[64];
    int off = offset(rng);
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00%s%02d:00", year(rng), month(rng),
                  day(rng), hour(rng), off < 0 ? "-" : "+", off < 0 ? -off : off);
    dates.push_back(date(buf));
    numbers.push_back(number(rng) % 3 == 0
                          ? Term::literal(std::to_string(number(rng)) + ".5", vocab::xsd_decimal)
                          : Term::integer(number(rng)));
  }
  for (const auto* family : {&dates, &numbers}) {
    const auto& xs = *family;
    for (const auto& a : xs) {
      EXPECT_EQ(compare_literals(a, a).order, LiteralOrder::equal);
      for (const auto& b : xs) {
        auto ab = compare_literals(a, b).order, ba = compare_literals(b, a).order;
        ASSERT_NE(ab, LiteralOrder::incomparable);
        if (ab == LiteralOrder::less) EXPECT_EQ(ba, LiteralOrder::greater);
        if (ab == LiteralOrder::equal) EXPECT_EQ(ba, LiteralOrder::equal);
        for (const auto& c : xs) {
          if (literal_less_or_equal(a, b) && literal_less_or_equal(b, c))
            EXPECT_TRUE(literal_less_or_equal(a, c));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ccv::rdf
