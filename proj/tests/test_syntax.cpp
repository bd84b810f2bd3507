#include <gtest/gtest.h>

#include "fpl/syntax.hpp"
#include "support.hpp"

namespace fpl {
namespace {

std::string clause_text(const Clause& c) {
  if (const auto* f = std::get_if<FuzzyFact>(&c)) {
    return "fact " + to_string(f->head) + " " + to_string(f->truth);
  }
  if (const auto* r = std::get_if<FuzzyClause>(&c)) {
    std::string s = "rule " + to_string(r->head) + " " + r->aggregator;
    for (const auto& b : r->body) s += " " + to_string(b);
    return s;
  }
  const auto& k = std::get<CrispClause>(c);
  std::string s = "crisp " + to_string(k.head);
  for (const auto& b : k.body) s += " " + to_string(b);
  return s;
}

// Structural identity up to variable numbering and source positions.
void expect_same(const Program& a, const Program& b) {
  ASSERT_EQ(a.predicates(), b.predicates());
  for (const PredicateKey& k : a.predicates()) {
    ASSERT_EQ(a.clauses(k).size(), b.clauses(k).size()) << k.str();
    for (std::size_t i = 0; i < a.clauses(k).size(); ++i) {
      EXPECT_EQ(clause_text(a.clauses(k)[i]), clause_text(b.clauses(k)[i]));
    }
  }
  ASSERT_EQ(a.piecewise_decls().size(), b.piecewise_decls().size());
  for (const auto& [name, d] : a.piecewise_decls()) {
    ASSERT_NE(b.piecewise(name), nullptr);
    EXPECT_EQ(d.points, b.piecewise(name)->points);
  }
  ASSERT_EQ(a.default_decls().size(), b.default_decls().size());
  for (std::size_t i = 0; i < a.default_decls().size(); ++i) {
    EXPECT_EQ(a.default_decls()[i].declared, b.default_decls()[i].declared);
    EXPECT_EQ(a.default_decls()[i].value, b.default_decls()[i].value);
  }
  ASSERT_EQ(a.fuzzify_decls().size(), b.fuzzify_decls().size());
  for (const auto& [w, d] : a.fuzzify_decls()) {
    ASSERT_TRUE(b.fuzzify_decls().count(w));
    EXPECT_EQ(d.crisp, b.fuzzify_decls().at(w).crisp);
  }
}

bool has_error(const LoadResult& r, const std::string& needle) {
  for (const Diagnostic& d : r.diagnostics) {
    if (d.is_error() && d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

TEST(ParseProgram, FuzzyFact) {
  LoadResult r = parse_program("tall(john):~ 0.7.");
  ASSERT_TRUE(r.ok());
  const auto& cs = r.program.clauses({"tall", 1});
  ASSERT_EQ(cs.size(), 1u);
  const auto& f = std::get<FuzzyFact>(cs[0]);
  EXPECT_EQ(to_string(f.head), "tall(john)");
  EXPECT_EQ(f.truth, BorelSet::point(0.7));
}

TEST(ParseProgram, FuzzyClause) {
  LoadResult r = parse_program("good_player(X):~min tall(X),swift(X).");
  ASSERT_TRUE(r.ok());
  const auto& c = std::get<FuzzyClause>(r.program.clauses({"good_player", 1})[0]);
  EXPECT_EQ(to_string(c.head), "good_player(X)");
  EXPECT_EQ(c.aggregator, "min");
  ASSERT_EQ(c.body.size(), 2u);
  EXPECT_EQ(to_string(c.body[0]), "tall(X)");
  EXPECT_EQ(to_string(c.body[1]), "swift(X)");
}

TEST(ParseProgram, Empty) {
  LoadResult r = parse_program("");
  EXPECT_TRUE(r.program.empty());
  EXPECT_TRUE(r.diagnostics.empty());
}

TEST(ParseProgram, UnionTruth) {
  LoadResult r = parse_program("youth(45):~ [0.2,0.5]v[0.8,1].");
  ASSERT_TRUE(r.ok());
  const auto& f = std::get<FuzzyFact>(r.program.clauses({"youth", 1})[0]);
  EXPECT_EQ(f.truth, BorelSet::canonicalize({Interval::make(0.2, 0.5), Interval::make(0.8, 1)}));
}

TEST(ParseProgram, TeenagerListingIsValid) {
  LoadResult r = parse_program(testing::read_data("teenager.fpl"));
  for (const auto& d : r.diagnostics) ADD_FAILURE() << d.str();
  const Program& p = r.program;
  EXPECT_EQ(p.kind({"student", 1}), PredicateKind::Crisp);
  EXPECT_EQ(p.kind({"f_student", 1}), PredicateKind::Fuzzified);
  EXPECT_EQ(p.kind({"teenager_student", 1}), PredicateKind::Fuzzy);
  EXPECT_EQ(p.default_for({"f_student", 1}), BorelSet::point(0));
  EXPECT_EQ(p.default_for({"age_about_15", 1}), BorelSet::unit());
  const auto& rule = std::get<FuzzyClause>(p.clauses({"teenager_student", 1})[0]);
  EXPECT_EQ(rule.aggregator, "min");
  EXPECT_EQ(to_string(rule.body[0]), "f_student(X)");
  EXPECT_EQ(to_string(rule.body[1]), "age_about_15(X)");
  const auto& fact = std::get<FuzzyFact>(p.clauses({"age_about_15", 1})[1]);
  EXPECT_EQ(to_string(fact.head), "age_about_15(susan)");
  EXPECT_EQ(fact.truth, BorelSet::point(0.7));
}

TEST(ParseProgram, Piecewise) {
  LoadResult r = parse_program(
      "few_days :# fuzzy_predicate([(0,1),(1,0.8),(2,0.6),(3,0.4),(4,0.2),(5,0)]).");
  ASSERT_TRUE(r.ok());
  const PiecewiseDecl* d = r.program.piecewise("few_days");
  ASSERT_NE(d, nullptr);
  ASSERT_EQ(d->points.size(), 6u);
  EXPECT_EQ(d->points[2], (std::pair<double, double>{2, 0.6}));
  EXPECT_EQ(r.program.kind({"few_days", 1}), PredicateKind::Piecewise);
}

TEST(ParseProgram, DefaultArity) {
  LoadResult r = parse_program("r(a):~0.5.\n:- default(r/1, 0).\ns(a):~0.5.\n:- default(s/2, 0).");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.program.default_for({"r", 1}), BorelSet::point(0));
  EXPECT_EQ(r.program.default_for({"s", 1}), BorelSet::point(0));
}

TEST(ParseProgram, DiagnosticsCarryPosition) {
  LoadResult r = parse_program("p(a).\nq(b :- c.\nr(c).");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].pos.line, 2u);
  EXPECT_GT(r.diagnostics[0].pos.column, 0u);
  EXPECT_EQ(r.program.clauses({"r", 1}).size(), 1u);
  EXPECT_NE(r.diagnostics[0].str().find("2:"), std::string::npos);
}

TEST(Validate, Errors) {
  EXPECT_TRUE(has_error(parse_program("p(a):~0.5.\np(a)."), "p/1 both crisp and fuzzy"));
  EXPECT_TRUE(has_error(parse_program("f :# fuzzy_predicate([(0,1),(0,0.5)])."),
                        "x not strictly increasing"));
  EXPECT_TRUE(has_error(parse_program("f :# fuzzy_predicate([(0,1)])."), "at least 2 points"));
  EXPECT_TRUE(has_error(parse_program("f :# fuzzy_predicate([(0,1),(1,1.5)])."), "outside"));
  EXPECT_TRUE(has_error(parse_program("p(X):~median q(X), r(X)."), "unknown aggregator"));
  EXPECT_TRUE(has_error(parse_program("p(a):~0.5.\n:- default(p/1,0).\n:- default(p/1,1)."),
                        "duplicate default"));
  EXPECT_TRUE(has_error(parse_program("q(a).\n:- default(q/1,0)."), "crisp predicate"));
  EXPECT_FALSE(parse_program("p(a):~ 1.5.").ok());
}

TEST(Validate, MissingDefaultWarns) {
  LoadResult r = parse_program("p(a):~0.5.");
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_FALSE(r.diagnostics[0].is_error());
}

TEST(ParseQuery, Forms) {
  EXPECT_EQ(to_string(parse_query("age_about_15(peter,X).")), "age_about_15(peter,X)");
  EXPECT_EQ(to_string(parse_query("?- student(nick).")), "student(nick)");
  TermPtr q = parse_query("compatible(T1,T2,V), V .>. 0.7.");
  auto goals = conjuncts(q);
  ASSERT_EQ(goals.size(), 2u);
  EXPECT_EQ(goals[1]->name(), ".>.");
  EXPECT_EQ(goals[1]->arg(1)->value(), 0.7);
  EXPECT_THROW(parse_query("p(X"), ParseError);
}

TEST(ParseTerm, ListsAndOperators) {
  EXPECT_EQ(to_string(parse_term("[a,b|T]")), "[a,b|T]");
  EXPECT_EQ(to_string(parse_term("X is 1+2*3")), "X is 1 + 2 * 3");
  EXPECT_EQ(to_string(parse_term("(1+2)*3")), "(1 + 2) * 3");
  EXPECT_EQ(to_string(parse_term("f((a,b))")), "f((a,b))");
  EXPECT_EQ(to_string(parse_term("X - -1")), "X - -1");
  EXPECT_EQ(to_string(parse_term("'hello world'")), "'hello world'");
}

TEST(TruthLiteral, Grammar) {
  EXPECT_EQ(truth_from_term(parse_term("[0.2,0.5]v[0.8,1]")),
            BorelSet::canonicalize({Interval::make(0.2, 0.5), Interval::make(0.8, 1)}));
  EXPECT_EQ(truth_from_term(parse_term("0.3")), BorelSet::point(0.3));
  EXPECT_EQ(truth_from_term(parse_term("0.1v[0.5,0.6]v1")).size(), 3u);
  EXPECT_THROW(truth_from_term(parse_term("[0.6,0.2]")), DomainError);
}

class RoundTrip : public ::testing::TestWithParam<std::string> {};

TEST_P(RoundTrip, RenderParsesBackIdentically) {
  LoadResult a = parse_program(testing::read_data(GetParam()));
  ASSERT_TRUE(a.ok());
  const std::string text = render_program(a.program);
  LoadResult b = parse_program(text);
  ASSERT_TRUE(b.ok()) << text;
  expect_same(a.program, b.program);
  EXPECT_EQ(render_program(b.program), text);
}

INSTANTIATE_TEST_SUITE_P(Corpus, RoundTrip,
                         ::testing::Values("teenager.fpl", "players.fpl", "timetable.fpl",
                                           "operators.fpl"));

}  // namespace
}  // namespace fpl
