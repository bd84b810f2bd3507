#include <gtest/gtest.h>

#include <sstream>

#include "fpl/engine.hpp"
#include "fpl/syntax.hpp"
#include "support.hpp"

namespace fpl {
namespace {

Program load(const std::string& src) {
  LoadResult r = parse_program(src);
  for (const auto& d : r.diagnostics) {
    if (d.is_error()) ADD_FAILURE() << d.str();
  }
  return std::move(r.program);
}

Program load_file(const std::string& name) { return load(testing::read_data(name)); }

std::vector<std::string> answers(const Program& p, const std::string& q,
                                 EngineOptions o = {}) {
  std::vector<std::string> out;
  AnswerStream s = solve(p, parse_query(q), o);
  while (auto a = s.next()) out.push_back(render_answer(*a));
  return out;
}

BorelSet only_truth(const Program& p, const std::string& q, EngineOptions o = {}) {
  auto set = success_set(p, parse_query(q), o);
  EXPECT_EQ(set.size(), 1u) << q;
  return set.empty() ? BorelSet() : set[0].truth();
}

using Strings = std::vector<std::string>;

// Both sides parsed together so they share one variable scope.
std::pair<TermPtr, TermPtr> pair_of(const std::string& lhs, const std::string& rhs) {
  TermPtr eq = parse_term(lhs + " = " + rhs);
  return {eq->arg(0), eq->arg(1)};
}

TEST(Mgu, Examples) {
  auto [t1, t2] = pair_of("tall(X)", "tall(john)");
  auto s = mgu(t1, t2);
  ASSERT_TRUE(s);
  EXPECT_EQ(to_string(*s), "{X=john}");
  auto [f1, f2] = pair_of("f(X,X)", "f(a,b)");
  EXPECT_FALSE(mgu(f1, f2));
  auto [a, b] = pair_of("p(X,g(Y))", "p(g(a),Z)");
  s = mgu(a, b);
  ASSERT_TRUE(s);
  EXPECT_EQ(to_string(s->apply(a)), "p(g(a),g(Y))");
  EXPECT_EQ(to_string(s->apply(b)), "p(g(a),g(Y))");
  EXPECT_EQ(s->size(), 2u);
}

TEST(Mgu, OccursCheck) {
  auto [a, b] = pair_of("f(X)", "f(g(X))");
  EXPECT_FALSE(mgu(a, b));
}

TEST(Mgu, IdempotentOnRandomChains) {
  // Chains X0 = f(X1), X1 = f(X2), ... resolve to a fully applied form.
  std::mt19937 rng(3);
  for (int n = 0; n < 200; ++n) {
    const int len = 1 + static_cast<int>(rng() % 6);
    std::string lhs = "t(", rhs = "t(";
    for (int k = 0; k < len; ++k) {
      lhs += (k ? "," : "") + std::string("X") + std::to_string(k);
      rhs += (k ? "," : "") + std::string("f(X") + std::to_string(k + 1) + ")";
    }
    auto [a, b] = pair_of(lhs + ")", rhs + ")");
    auto s = mgu(a, b);
    ASSERT_TRUE(s);
    ASSERT_TRUE(equal(s->apply(a), s->apply(b)));
    for (const auto& [id, bind] : s->bindings()) {
      ASSERT_TRUE(equal(s->apply(bind.value), bind.value));
    }
  }
}

TEST(Solve, GoodPlayer) {
  Program p = load_file("players.fpl");
  for (Strategy st : {Strategy::DepthFirst, Strategy::BreadthFirst}) {
    EngineOptions o;
    o.strategy = st;
    EXPECT_EQ(answers(p, "good_player(john,V)", o), Strings{"V = [0.6,0.7]"});
  }
}

TEST(Solve, TeenagerTranscript) {
  Program p = load_file("teenager.fpl");
  EXPECT_EQ(answers(p, "age_about_15(john,X)"), Strings{"X = 1"});
  EXPECT_EQ(answers(p, "age_about_15(nick,X)"), Strings{"X = 0"});
  EXPECT_EQ(answers(p, "age_about_15(peter,X)"), Strings{"X = [0,1]"});
  EXPECT_EQ(answers(p, "teenager_student(john,V)"), Strings{"V = 1"});
  EXPECT_EQ(answers(p, "teenager_student(susan,V)"), Strings{"V = 0"});
  EXPECT_EQ(answers(p, "teenager_student(peter,V)"), Strings{"V = [0,1]"});
  EXPECT_EQ(answers(p, "age_about_15(X,V)"),
            (Strings{"X = john, V = 1", "X = susan, V = 0.7", "X = nick, V = 0"}));
}

TEST(Solve, DefaultOnly) {
  Program p = load(":-default(r/1,[0.3,0.4]).");
  EXPECT_EQ(only_truth(p, "r(a,V)"), BorelSet::interval(0.3, 0.4));
}

TEST(Solve, NonGroundDefaultKeepsVariables) {
  Program p = load(":-default(r/1,0).");
  EXPECT_EQ(answers(p, "r(X,V)"), Strings{"V = 0"});
}

TEST(Solve, PartialHeadOverlapBlocksDefault) {
  // r(a) unifies with a head whose derivation fails (empty aggregation never
  // happens, so use a crisp failure through fuzzify with an empty bound).
  Program p = load("q(b):~0.5.\n:- default(q/1,0).\nr(a):~min q(a).\nr(b):~0.9.\n"
                   ":- default(r/1,[0.3,0.4]).");
  EXPECT_EQ(answers(p, "r(a,V)"), Strings{"V = 0"});
  EXPECT_EQ(answers(p, "r(c,V)"), Strings{"V = [0.3,0.4]"});
  EXPECT_EQ(answers(p, "r(a,V), V .>. 0.5"), Strings{});
}

TEST(SuccessSet, UnionOverDerivations) {
  Program p = load("p(a):~[0.1,0.2].\np(a):~[0.6,0.7].");
  auto set = success_set(p, parse_query("p(a,V)"));
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(to_string(set[0].truth()), "[0.1,0.2]v[0.6,0.7]");
  EXPECT_EQ(answers(p, "p(a,V)").size(), 2u);
}

TEST(SuccessSet, GroupsByBindings) {
  Program p = load("p(a):~0.1.\np(b):~0.2.\np(a):~0.3.\np(X):~0.9.");
  auto set = success_set(p, parse_query("p(Y,V)"));
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(render_answer(set[0]), "Y = a, V = 0.1v0.3");
  EXPECT_EQ(render_answer(set[1]), "Y = b, V = 0.2");
  EXPECT_EQ(render_answer(set[2]), "V = 0.9");
}

TEST(SuccessSet, UnionAggregationWithinDerivation) {
  Program p = load("a:~[0.2,0.3]v[0.7,0.8].\nb:~1.\nc:~min a, b.");
  EXPECT_EQ(to_string(only_truth(p, "c(V)")), "[0.2,0.3]v[0.7,0.8]");
  EXPECT_EQ(answers(p, "c(V)").size(), 1u);
}

TEST(SolveCrisp, Students) {
  Program p = load_file("teenager.fpl");
  EXPECT_EQ(solve_crisp(p, parse_query("student(john)")).size(), 1u);
  EXPECT_TRUE(solve_crisp(p, parse_query("student(john)"))[0].empty());
  EXPECT_TRUE(solve_crisp(p, parse_query("student(nick)")).empty());
  auto xs = solve_crisp(p, parse_query("student(X)"));
  ASSERT_EQ(xs.size(), 2u);
  EXPECT_EQ(to_string(xs[0]), "{X=john}");
  EXPECT_EQ(to_string(xs[1]), "{X=peter}");
  EXPECT_EQ(answers(p, "student(john)"), Strings{"yes"});
  EXPECT_EQ(answers(p, "student(nick)"), Strings{});
}

TEST(SolveCrisp, ArithmeticAndLists) {
  Program p = load_file("timetable.fpl");
  EXPECT_EQ(answers(p, "len([a,b,c],N)"), Strings{"N = 3"});
  EXPECT_EQ(answers(p, "append(X,Y,[1,2])"),
            (Strings{"X = [], Y = [1,2]", "X = [1], Y = [2]", "X = [1,2], Y = []"}));
  EXPECT_EQ(answers(p, "number_of_free_hours([(mo,9),(mo,12),(tu,8)],G)"), Strings{"G = 2"});
  EXPECT_EQ(answers(p, "number_of_days([(mo,9),(mo,12),(tu,8)],N)"), Strings{"N = 2"});
  EXPECT_EQ(answers(p, "X is 7 mod 3, Y is 7 // 2, Z is 2 * (1 + 0.5)"),
            Strings{"X = 1, Y = 3, Z = 3"});
  EXPECT_EQ(answers(p, "1 < 2, 2 =< 2, 3 >= 2, 3 > 2, 2 =:= 2.0, 1 =\\= 2"), Strings{"yes"});
  EXPECT_EQ(answers(p, "a == a, a \\== b, f(X) = f(1), X \\= 2"), Strings{"X = 1"});
}

TEST(Fuzzify, StudentWrapper) {
  Program p = load_file("teenager.fpl");
  EXPECT_EQ(answers(p, "f_student(peter,V)"), Strings{"V = 1"});
  EXPECT_EQ(answers(p, "f_student(susan,V)"), Strings{"V = 0"});
  EXPECT_EQ(answers(p, "f_student(X,V)"), (Strings{"X = john, V = 1", "X = peter, V = 1"}));
}

TEST(Fuzzify, EmptyCrispDefinition) {
  Program p = load("f_nobody(X,1) :- nobody(X).");
  EXPECT_EQ(answers(p, "f_nobody(ann,V)"), Strings{"V = 0"});
}

TEST(Fuzzify, ApiRejectsFuzzy) {
  Program p = load("t(a):~0.5.\ns(a).");
  EXPECT_THROW(p.fuzzify({"t", 1}), Error);
  EXPECT_EQ(p.fuzzify({"s", 1}), (PredicateKey{"f_s", 1}));
  EXPECT_EQ(answers(p, "f_s(a,V)"), Strings{"V = 1"});
  EXPECT_EQ(answers(p, "f_s(b,V)"), Strings{"V = 0"});
}

TEST(Piecewise, Values) {
  Program p = load_file("timetable.fpl");
  const PiecewiseDecl& few = *p.piecewise("few_days");
  const PiecewiseDecl& gaps = *p.piecewise("without_gaps");
  EXPECT_EQ(eval_piecewise(few, 2), 0.6);
  EXPECT_EQ(eval_piecewise(gaps, 5), 0.3);
  EXPECT_NEAR(eval_piecewise(gaps, 6), 0.2, 1e-12);
  EXPECT_NEAR(eval_piecewise(few, 2.5), 0.5, 1e-12);
  EXPECT_NEAR(eval_piecewise(gaps, 3), 0.55, 1e-12);
  EXPECT_EQ(eval_piecewise(few, -3), 1.0);
  EXPECT_EQ(eval_piecewise(gaps, 40), 0.0);
  EXPECT_THROW(eval_piecewise(few, parse_term("john")), TypeError);
  EXPECT_THROW(eval_piecewise(few, parse_term("X")), InstantiationError);
  EXPECT_EQ(answers(p, "few_days(3,V)"), Strings{"V = 0.4"});
  EXPECT_THROW(answers(p, "few_days(X,V)"), InstantiationError);
}

TEST(Bounds, Filters) {
  Program p = load_file("players.fpl");
  EXPECT_EQ(answers(p, "youth(45,V), V .>. 0.5"), Strings{"V = [0.8,1]"});
  EXPECT_EQ(answers(p, "youth(45,V), V .<. 0.2"), Strings{});
  EXPECT_EQ(answers(p, "youth(45,V), V .=<. 0.3"), Strings{"V = [0.2,0.3]"});
  EXPECT_EQ(answers(p, "youth(45,V), V .>=. 0.5"), Strings{"V = 0.5v[0.8,1]"});
  EXPECT_EQ(answers(p, "youth(45,V), V .=. 0.9"), Strings{"V = 0.9"});
  EXPECT_EQ(answers(p, "youth(45,V), 0.3 .>. V"), Strings{"V = [0.2,0.3]"});
  EXPECT_EQ(answers(p, "tall(john,0.7)"), Strings{"yes"});
  EXPECT_EQ(answers(p, "tall(john,0.5)"), Strings{});
  EXPECT_THROW(answers(p, "tall(john,V), W .>. 0.5"), TypeError);
}

TEST(Errors, Kinds) {
  Program p = load_file("teenager.fpl");
  EXPECT_THROW(answers(p, "nosuch(a)"), ExistenceError);
  EXPECT_THROW(answers(p, "teenager_student(john)"), TypeError);
  Program loop = load("loop(X) :- loop(X).");
  EngineOptions o;
  o.depth_limit = 500;
  EXPECT_THROW(answers(loop, "loop(a)", o), ResourceError);
  Program deep = load("n(z).\nn(s(X)) :- n(X).");
  EXPECT_THROW(answers(deep, "n(X), X = a", o), ResourceError);
  Program rec = load("p:~min p.");
  EXPECT_THROW(answers(rec, "p(V)", o), ResourceError);
  EXPECT_THROW(answers(p, "X is foo + 1"), TypeError);
  EXPECT_THROW(answers(p, "X is Y + 1"), InstantiationError);
}

TEST(Trace, GoldenLines) {
  Program p = load_file("players.fpl");
  std::ostringstream out;
  EngineOptions o;
  o.trace = &out;
  answers(p, "good_player(X,V)", o);
  EXPECT_EQ(out.str(),
            "rule1 tall(john) {X=john} 0.7\n"
            "rule1 swift(john) {} [0.6,0.8]\n"
            "rule2 good_player(john) {} [0.6,0.7]\n");
  Program t = load_file("teenager.fpl");
  out.str("");
  answers(t, "teenager_student(peter,V)", o);
  EXPECT_EQ(out.str(),
            "rule1 f_student(peter) {} 1\n"
            "rule3 age_about_15(peter) {} [0,1]\n"
            "rule2 teenager_student(peter) {} [0,1]\n");
  out.str("");
  answers(t, "student(X)", o);
  EXPECT_EQ(out.str(), "sld student(X) {X=john}\nsld student(X) {X=peter}\n");
}

TEST(Strategy, BreadthFirstMatchesDepthFirstOnCorpus) {
  struct Case {
    const char* file;
    const char* query;
  };
  const Case cases[] = {
      {"teenager.fpl", "teenager_student(X,V)"},
      {"teenager.fpl", "age_about_15(X,V)"},
      {"players.fpl", "good_player(X,V)"},
      {"operators.fpl", "m(a,V)"},
      {"timetable.fpl",
       "compatible([(mo,9),(tu,10),(we,8),(we,9)],[(mo,8),(we,11),(we,12),(D,H)],V)"},
  };
  for (const Case& c : cases) {
    Program p = load_file(c.file);
    EngineOptions bf;
    bf.strategy = Strategy::BreadthFirst;
    auto a = answers(p, c.query);
    auto b = answers(p, c.query, bf);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b) << c.query;
  }
}

TEST(Timetable, FourthTimetable) {
  Program p = load_file("timetable.fpl");
  const std::string q =
      "compatible([(mo,9),(tu,10),(we,8),(we,9)],[(mo,8),(we,11),(we,12),(D,H)],V)";
  auto all = answers(p, q);
  EXPECT_EQ(all.size(), 47u);
  EXPECT_EQ(answers(p, q + ", V .>. 0.7"), Strings{});
  EXPECT_EQ(answers(p, q + ", D = we, H = 10"), Strings{"D = we, H = 10, V = 0.4"});
  EXPECT_EQ(answers(p, q + ", D = we, H = 8"), Strings{"D = we, H = 8, V = 0"});
}

}  // namespace
}  // namespace fpl
