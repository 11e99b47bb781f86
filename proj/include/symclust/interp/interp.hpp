#pragma once

#include <vector>

#include "symclust/interp/value.hpp"

namespace symclust::interp {

constexpr long long kDefaultStepBudget = 1'000'000;

// Deterministic big-step evaluation. One step is charged per AST node
// evaluated; once the budget is exhausted the outcome is BudgetExceeded.
// Outcomes are monotone in the budget: a Return/Error produced at budget B
// is produced at every budget >= B.
Outcome evaluate(const lang::Program& p, const std::vector<Value>& inputs,
                 long long step_budget = kDefaultStepBudget);

// Fraction of tests whose outcome is Return(expected). Error and
// BudgetExceeded outcomes count as failures.
double correctness_score(const lang::Program& p, const std::vector<TestCase>& tests,
                         long long step_budget = kDefaultStepBudget);

}  // namespace symclust::interp
