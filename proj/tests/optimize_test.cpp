#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "primo/extensions.hpp"
#include "primo/optimize.hpp"

namespace primo {
namespace {

using testing::tweety;

BoundsState stable(const PrimoGraph& g, TNormFamily f = TNormFamily::ProductProbSum) {
  auto s = initialize(g, f);
  if (propagate(s)) throw std::runtime_error("inconsistent");
  return s;
}

WcnfInstance one_variable(double w_pos, double w_neg) {
  WcnfInstance inst;
  inst.variables.push_back({"P", 0.5, std::nullopt, 0.0});
  inst.soft.push_back({{1}, Weight::soft(w_pos), ""});
  inst.soft.push_back({{-1}, Weight::soft(w_neg), ""});
  return inst;
}

TEST(Ic, TweetyMidpoints) {
  auto g = tweety();
  auto s = stable(g);
  EXPECT_NEAR(ic(s, Literal{"FLIES"}), 0.4, 1e-9);
  EXPECT_NEAR(ic(s, Literal{"HOPS"}), 0.45, 1e-9);
  EXPECT_NEAR(ic(s, Literal("FLIES", true)), 0.0, 1e-9);
  EXPECT_NEAR(ic(s, Literal("HOPS", true)), 0.0, 1e-9);
  EXPECT_NEAR(ic(s, Literal{"BIRD"}), 1.0, 1e-9);
}

TEST(WeightW, TweetyWeights) {
  auto g = tweety();
  auto s = stable(g);
  EXPECT_NEAR(weight_w(s, Literal{"FLIES"}), 1.4, 1e-9);
  EXPECT_NEAR(weight_w(s, Literal("FLIES", true)), 0.6, 1e-9);
  EXPECT_NEAR(weight_w(s, Literal{"HOPS"}), 1.45, 1e-9);
  EXPECT_NEAR(weight_w(s, Literal("HOPS", true)), 0.55, 1e-9);
}

TEST(WeightW, SymmetricIgnoranceIsOne) {
  PrimoGraph g;
  g.add_literal(Literal{"P"});
  BoundsState s(g, TNormFamily::ProductProbSum);  // every vertex [0,1]
  EXPECT_NEAR(weight_w(s, Literal{"P"}), 1.0, 1e-12);
}

TEST(WeightW, PairSumsToTwo) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    auto g = testing::random_graph(rng, {6, 9, 2, 2, 0.4, 0.3});
    auto s = stable(g);
    for (LiteralId p = 0; p < g.num_literals(); ++p)
      EXPECT_NEAR(weight_w(s, p) + weight_w(s, g.complement(p)), 2.0, 1e-12);
  }
}

TEST(Encode, TweetyClauseTable) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = encode(g, s);
  ASSERT_TRUE(inst);
  ASSERT_EQ(inst->num_vars(), 2u);
  EXPECT_EQ(inst->variables[0].name, "FLIES");
  EXPECT_EQ(inst->variables[1].name, "HOPS");
  ASSERT_EQ(inst->hard.size(), 2u);
  EXPECT_EQ(inst->hard[0].literals, (std::vector<int>{1, 2}));
  EXPECT_EQ(inst->hard[1].literals, (std::vector<int>{-1, -2}));
  ASSERT_EQ(inst->soft.size(), 4u);
  const std::vector<int> lits[] = {{1}, {-1}, {2}, {-2}};
  const double weights[] = {1.4, 0.6, 1.45, 0.55};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(inst->soft[i].literals, lits[i]);
    EXPECT_NEAR(inst->soft[i].weight.value(), weights[i], 1e-9);
  }
  EXPECT_EQ(to_wcnf(*inst),
            "c var 1 = FLIES\n"
            "c var 2 = HOPS\n"
            "h 1 2 0\n"
            "h -1 -2 0\n"
            "1.400000 1 0\n"
            "0.600000 -1 0\n"
            "1.450000 2 0\n"
            "0.550000 -2 0\n");
}

TEST(Encode, ExactStateNeedsNoInstance) {
  PrimoGraph g;
  g.set_input(Literal{"A"}, 1.0);
  g.add_justification({"r", {Literal{"A"}}, {{Literal{"B"}, 0.5}}, 0.7, Literal{"C"}});
  auto s = stable(g);
  EXPECT_FALSE(encode(g, s));
}

TEST(Encode, SelfDefeatIsOneVariableWithContradictoryStructure) {
  auto g = testing::liar();
  auto s = stable(g);
  auto inst = encode(g, s);
  ASSERT_TRUE(inst);
  EXPECT_EQ(inst->num_vars(), 1u);
  EXPECT_EQ(inst->soft.size(), 2u);
  // x_P <=> not x_P leaves no finite assignment.
  EXPECT_FALSE(testing::exhaustive_minimum(*inst));
}

TEST(Encode, TwoThresholdsOnOneAmbiguousLiteralAreRejected) {
  PrimoGraph g;
  g.set_input(Literal{"A"}, 1.0);
  g.add_justification({"x", {Literal{"A"}}, {{Literal{"Y"}, 0.3}}, 1.0, Literal{"X"}});
  g.add_justification({"y", {Literal{"A"}}, {{Literal{"X"}, 0.3}}, 1.0, Literal{"Y"}});
  g.add_justification({"z", {Literal{"A"}}, {{Literal{"X"}, 0.6}}, 1.0, Literal{"Z"}});
  auto s = stable(g);
  EXPECT_THROW(encode(g, s), EncodingError);
}

TEST(Encode, FiniteAssignmentsAreExactlyTheAdmissibleLabelings) {
  std::mt19937_64 rng(43);
  int instances = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = testing::random_graph(rng, testing::mixed_shape(i));
    for (auto f : {TNormFamily::MinMax, TNormFamily::ProductProbSum, TNormFamily::Lukasiewicz}) {
      auto s = stable(g, f);
      auto inst = encode(g, s);
      auto oracle = testing::brute_force_labelings(g, f);
      if (!inst) {
        ASSERT_EQ(oracle.size(), 1u);
        EXPECT_TRUE(testing::same_labeling(oracle[0], labeling_from(s)));
        continue;
      }
      ++instances;
      std::vector<Labeling> decoded;
      for (const auto& a : testing::all_assignments(inst->num_vars())) {
        auto w = testing::clause_weight(*inst, a);
        if (!w) {
          EXPECT_THROW(decode(g, s, *inst, a), EncodingError);
          continue;
        }
        Labeling lab = decode(g, s, *inst, a);
        EXPECT_TRUE(check_admissible(g, f, lab).ok);
        EXPECT_EQ(assignment_from(g, *inst, lab), a);
        EXPECT_NEAR(objective(s, *inst, a), *w, 1e-9);
        decoded.push_back(lab);
      }
      EXPECT_TRUE(testing::same_labeling_sets(decoded, oracle)) << "graph " << i << " " << to_string(f);
    }
  }
  EXPECT_GT(instances, 20);
}

TEST(SolveExact, TweetyOptimum) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = *encode(g, s);
  auto r = solve_exact(inst);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.assignment, (Assignment{false, true}));
  EXPECT_NEAR(r.weight, 1.95, 1e-9);
  auto second = solve_exact(inst, {r.assignment});
  ASSERT_TRUE(second.found());
  EXPECT_EQ(second.assignment, (Assignment{true, false}));
  EXPECT_NEAR(second.weight, 2.05, 1e-9);
  EXPECT_EQ(solve_exact(inst, {r.assignment, second.assignment}).status, SolveStatus::Unsatisfiable);
}

TEST(SolveExact, OneFreeVariablePicksCheaperFalsification) {
  auto r = solve_exact(one_variable(1.4, 0.6));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.assignment, Assignment{true});
  EXPECT_NEAR(r.weight, 0.6, 1e-12);
}

TEST(SolveExact, TiePrefersFewerTrueVariables) {
  auto r = solve_exact(one_variable(1.0, 1.0));
  EXPECT_EQ(r.assignment, Assignment{false});
}

TEST(SolveExact, EmptyInstance) {
  auto r = solve_exact(WcnfInstance{});
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.weight, 0.0);
}

TEST(SolveExact, MatchesExhaustiveMinimum) {
  std::mt19937_64 rng(47);
  int unsat = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + i % 12;
    auto inst = testing::random_instance(rng, n, i % 3 == 0 ? 0 : n + i % 7);
    auto oracle = testing::exhaustive_minimum(inst);
    auto r = solve_exact(inst);
    ASSERT_EQ(r.found(), oracle.has_value()) << "instance " << i;
    if (!oracle) {
      ++unsat;
      EXPECT_EQ(r.status, SolveStatus::Unsatisfiable);
      continue;
    }
    EXPECT_NEAR(r.weight, *oracle, 1e-9) << "instance " << i;
    ASSERT_TRUE(testing::clause_weight(inst, r.assignment));
    EXPECT_NEAR(*testing::clause_weight(inst, r.assignment), r.weight, 1e-9);
    EXPECT_LE(lower_bound(inst, std::vector<signed char>(n, -1)), *oracle + 1e-9);
  }
  EXPECT_GT(unsat, 0);
}

TEST(SolveExact, AssignmentWeightAgreesWithOracle) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    auto inst = testing::random_instance(rng, 6, 5);
    for (const auto& a : testing::all_assignments(6)) {
      auto x = assignment_weight(inst, a), y = testing::clause_weight(inst, a);
      ASSERT_EQ(x.has_value(), y.has_value());
      if (x) {
        EXPECT_NEAR(*x, *y, 1e-12);
      }
    }
  }
}

TEST(Heuristic, TweetyGreedyIsFinite) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = *encode(g, s);
  for (auto m : {HeuristicMethod::Greedy, HeuristicMethod::Beam}) {
    auto r = solve_heuristic(inst, {m, 4});
    ASSERT_EQ(r.status, SolveStatus::Feasible);
    EXPECT_TRUE(nearly_equal(r.weight, 1.95) || nearly_equal(r.weight, 2.05)) << r.weight;
  }
}

TEST(Heuristic, NeverBeatsExact) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + i % 12;
    auto inst = testing::random_instance(rng, n, i % 2 ? n : 0);
    auto exact = solve_exact(inst);
    for (auto m : {HeuristicMethod::Greedy, HeuristicMethod::Beam}) {
      auto h = solve_heuristic(inst, {m, 3});
      if (!h.found()) {
        EXPECT_EQ(h.status, SolveStatus::NoSolutionFound);
        continue;
      }
      ASSERT_TRUE(exact.found());
      EXPECT_GE(h.weight, exact.weight - 1e-9);
      EXPECT_NEAR(*testing::clause_weight(inst, h.assignment), h.weight, 1e-9);
    }
  }
}

TEST(Heuristic, GreedyIsOptimalWithoutHardClauses) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 200; ++i) {
    auto inst = testing::random_instance(rng, 1 + i % 12, 0);
    auto h = solve_heuristic(inst);
    ASSERT_TRUE(h.found());
    EXPECT_NEAR(h.weight, *testing::exhaustive_minimum(inst), 1e-9);
  }
}

TEST(Heuristic, BeamWidthMustBePositive) {
  EXPECT_THROW(solve_heuristic(one_variable(1, 1), {HeuristicMethod::Beam, 0}), std::invalid_argument);
}

TEST(Decode, TweetyOptimum) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = *encode(g, s);
  auto lab = decode(g, s, inst, Assignment{false, true});
  EXPECT_NEAR(lab.of(g, Literal{"FLIES"}), 0.0, 1e-9);
  EXPECT_NEAR(lab.of(g, Literal{"HOPS"}), 0.9, 1e-9);
}

TEST(Decode, EmuVariantPrefersFlying) {
  auto g = tweety(0.8);
  auto s = stable(g);
  auto inst = *encode(g, s);
  auto r = solve_exact(inst);
  ASSERT_TRUE(r.found());
  auto lab = decode(g, s, inst, r.assignment);
  EXPECT_NEAR(lab.of(g, Literal{"FLIES"}), 0.8, 1e-9);
  EXPECT_NEAR(lab.of(g, Literal{"HOPS"}), 0.0, 1e-9);
  EXPECT_NEAR(lab.of(g, Literal{"BIRD"}), 1.0, 1e-9);
}

TEST(Decode, EmuVariantWeightsAgreeWithLabelingOracle) {
  // Oracle: admissible labelings by exhaustive forcing; each literal's IC is
  // the midpoint of its extreme values across them; the objective is then
  // summed directly.
  auto g = tweety(0.8);
  auto labs = testing::brute_force_labelings(g, TNormFamily::ProductProbSum);
  ASSERT_EQ(labs.size(), 2u);
  auto mid = [&](const Literal& l) {
    VertexId v = g.literal_vertex(g.literal_id(l));
    double lo = 1.0, hi = 0.0;
    for (const auto& lab : labs) {
      lo = std::min(lo, lab[v]);
      hi = std::max(hi, lab[v]);
    }
    return (lo + hi) / 2.0;
  };
  std::vector<double> oracle;
  for (const auto& lab : labs) {
    double total = 0.0;
    for (const char* n : {"FLIES", "HOPS"}) {
      double fpv = lab.of(g, Literal{n}) >= 0.2 ? 1.0 : 0.0;
      total += std::fabs(mid(Literal{n}) - fpv) + std::fabs(mid(Literal(n, true)) - (1.0 - fpv));
    }
    oracle.push_back(total);
  }
  std::sort(oracle.begin(), oracle.end());
  EXPECT_NEAR(oracle[0], 1.96, 1e-9);
  EXPECT_NEAR(oracle[1], 2.04, 1e-9);

  auto s = stable(g);
  auto inst = *encode(g, s);
  EXPECT_NEAR(*assignment_weight(inst, {true, false}), 1.96, 1e-9);
  EXPECT_NEAR(*assignment_weight(inst, {false, true}), 2.04, 1e-9);
  EXPECT_FALSE(assignment_weight(inst, {true, true}));
  EXPECT_FALSE(assignment_weight(inst, {false, false}));
}

TEST(Decode, InconsistentAssignmentIsRejected) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = *encode(g, s);
  EXPECT_THROW(decode(g, s, inst, Assignment{true, true}), EncodingError);
}

TEST(Objective, TweetyOptimumEqualsItsWeight) {
  auto g = tweety();
  auto s = stable(g);
  auto inst = *encode(g, s);
  EXPECT_NEAR(objective(s, inst, {false, true}), 1.95, 1e-9);
  EXPECT_NEAR(objective(s, inst, {true, false}), 2.05, 1e-9);
}

TEST(Objective, ZeroInformationCostsOnePerVariable) {
  PrimoGraph g;
  for (const char* n : {"A", "B", "C"}) g.add_literal(Literal{n});
  BoundsState s(g, TNormFamily::ProductProbSum);
  for (VertexId v = 0; v < g.num_vertices(); ++v) s.set(v, {0.0, 0.0});
  WcnfInstance inst;
  for (const char* n : {"A", "B", "C"}) inst.variables.push_back({n, 0.0, g.literal_id(Literal{n}), 0.5});
  EXPECT_NEAR(objective(s, inst, {false, false, false}), 3.0, 1e-12);
}

TEST(Wcnf, OutputIsDeterministic) {
  auto g = tweety(0.8);
  auto a = to_wcnf(*encode(g, stable(g)));
  auto b = to_wcnf(*encode(g, stable(g)));
  EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace primo
