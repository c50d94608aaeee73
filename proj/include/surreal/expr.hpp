#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "surreal/embeddings.hpp"
#include "surreal/trig.hpp"

namespace surreal {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Abstract syntax. `w^(e)` is Pow with args {e}; calls keep their
/// semicolon-separated argument groups.
struct Expr {
  enum class Kind { Num, Name, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Num;
  Int num;
  std::string name;
  std::vector<ExprPtr> args;
  std::vector<std::vector<ExprPtr>> groups;
};

[[nodiscard]] bool operator==(const Expr& a, const Expr& b);

/// Syntax error with 1-based position and the token kinds that would have
/// been accepted there.
class SyntaxError : public KernelError {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::vector<std::string> expected, const std::string& found);
  std::size_t line;
  std::size_t column;
  std::vector<std::string> expected;
};

/// Parses one whole expression. `line` is used in error positions.
[[nodiscard]] ExprPtr parse_expr(const std::string& src, std::size_t line = 1);
/// Parses consecutive expressions until the end of input (for `:cmp`).
[[nodiscard]] std::vector<ExprPtr> parse_exprs(const std::string& src, std::size_t line = 1,
                                               std::size_t column_offset = 0);
/// Minimal-parenthesis text; parse_expr(print_expr(e)) == e.
[[nodiscard]] std::string print_expr(const Expr& e);

struct Signs {
  std::string text;
};

using Value = std::variant<Surreal, SurComplex, PathTrace, Signs>;

struct Session {
  std::map<std::string, Value> bindings;
  Budget budget;
  bool json = false;
};

/// Kernel errors are rethrown with the failing operation prefixed.
[[nodiscard]] Value eval(const Expr& e, const Session& s);
[[nodiscard]] std::string value_text(const Value& v, const Budget& b);
[[nodiscard]] nlohmann::json value_json(const Value& v, const Budget& b);

enum class LineStatus { Ok, Warning, Error };

/// Runs one REPL/batch line, writing its output (if any) to `out`.
LineStatus run_line(const std::string& line, std::size_t line_no, Session& s, std::ostream& out);

/// Runs each file in its own session, in parallel; output is written in
/// file order. Returns 0 iff no line produced an error.
int run_batch(const std::vector<std::string>& files, const Budget& b, bool json, std::ostream& out);

}  // namespace surreal
