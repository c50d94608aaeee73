#pragma once

#include <string>
#include <vector>

#include "surreal/surreal.hpp"

namespace surreal {

/// Rational span of finite-form exponents.
struct SubspaceSpec {
  std::vector<Surreal> basis;
};

/// Whether e lies in the rational span. Throws Indeterminate on
/// non-finite-form or refinable-coefficient input.
[[nodiscard]] bool in_span(const Surreal& e, const SubspaceSpec& delta, const Budget& b);
/// Rational linear independence of the given finite forms.
[[nodiscard]] bool independent(const std::vector<Surreal>& xs, const Budget& b);

/// Longest prefix of y whose exponents all lie in the span (lazy).
[[nodiscard]] Surreal development(const Surreal& y, const SubspaceSpec& delta, const Budget& b);

struct PathStep {
  Surreal y;
  Surreal d;  // development of log y
  int sign;   // sign of log y - d
  Surreal v;  // valuation of y
};

enum class PathEnd { Budget, Cycle, AtomicConfirmed };

struct PathTrace {
  std::vector<PathStep> steps;
  PathEnd terminated = PathEnd::Budget;
};

/// y_0 = y, y_(n+1) = |log y_n - development(log y_n)|, recording n_max + 1 steps.
[[nodiscard]] PathTrace delta_path(const Surreal& y, const SubspaceSpec& delta, std::size_t n_max,
                                   const Budget& b);
/// Recomputes every step of the recurrence.
[[nodiscard]] bool verify_path(const PathTrace& t, const SubspaceSpec& delta, const Budget& b);
/// Each y_n is w^(v_n) exactly.
[[nodiscard]] bool is_atomic(const PathTrace& t, const Budget& b);
/// Index of the first non-leader step.
[[nodiscard]] std::optional<std::size_t> first_non_atomic(const PathTrace& t, const Budget& b);
/// {v_n} together with the basis is rationally independent.
[[nodiscard]] bool check_independence(const PathTrace& t, const SubspaceSpec& delta, const Budget& b);

/// Adds sampled valuations g whose log(w^g) has support in the span, for
/// at most `iters` rounds.
[[nodiscard]] SubspaceSpec log_exp_closure(const SubspaceSpec& delta, const std::vector<Surreal>& sample,
                                           std::size_t iters, const Budget& b);

enum class Verdict { Pass, Fail, Indeterminate };
[[nodiscard]] const char* to_string(Verdict v);

struct ConditionResult {
  std::string condition;
  Verdict status;
  std::string detail;
};

struct T1Report {
  std::vector<ConditionResult> conditions;
  [[nodiscard]] bool all_pass() const;
};

[[nodiscard]] T1Report check_T1_conditions(const std::vector<Surreal>& sample, const Budget& b);

enum class TowerKind { OmegaSeries, LE, EL };

struct TowerSpec {
  TowerKind kind = TowerKind::LE;
  std::size_t depth = 1;
  std::size_t size_bound = 16;
};

struct TowerResult {
  std::vector<Surreal> elements;
  /// Pairs whose equality could not be decided; both are kept.
  std::vector<std::pair<std::size_t, std::size_t>> undecided;
};

[[nodiscard]] TowerResult tower_generate(const TowerSpec& spec, const Budget& b);

[[nodiscard]] std::string path_json(const PathTrace& t, const Budget& b);
[[nodiscard]] std::string t1_json(const T1Report& r);

}  // namespace surreal
