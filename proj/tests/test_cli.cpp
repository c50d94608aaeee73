#include <fstream>
#include <sstream>

#include "cli_gen.hpp"
#include "doctest.h"
#include "surreal/json_io.hpp"

using namespace surreal;
using namespace th;

namespace {
const Budget B{};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string run(const std::string& src, Session& s) {
  std::ostringstream out;
  std::istringstream in(src);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) (void)run_line(line, n, s, out);
  return out.str();
}

std::string run(const std::string& src) {
  Session s;
  return run(src, s);
}

SyntaxError syntax_error(const std::string& src) {
  try {
    (void)parse_expr(src);
  } catch (const SyntaxError& e) {
    return e;
  }
  FAIL("no syntax error for " << src);
  return SyntaxError(0, 0, {}, "");
}

// Structural check against the shipped schema's surreal definition.
bool valid_surreal(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 2 || !j.contains("terms") || !j.contains("truncated")) return false;
  if (!j["terms"].is_array() || !j["truncated"].is_boolean()) return false;
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || t.size() != 2 || !t.contains("coeff") || !t.contains("exp")) return false;
    const auto& c = t["coeff"];
    const bool rat = c.size() == 2 && c.contains("num") && c.contains("den") && c["num"].is_string() &&
                     c["den"].is_string();
    const bool rr = c.size() == 2 && c.contains("rreal") && c.contains("interval") && c["interval"].is_array() &&
                    c["interval"].size() == 2 && c["interval"][0].is_string();
    if (!(rat || rr) || !valid_surreal(t["exp"])) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("parse examples") {
  ExprPtr a = parse_expr("w + 1/2");
  REQUIRE(a->kind == Expr::Kind::Add);
  CHECK(a->args[0]->name == "w");
  CHECK(a->args[1]->kind == Expr::Kind::Div);
  ExprPtr b = parse_expr("exp(w) - w^(w)");
  REQUIRE(b->kind == Expr::Kind::Sub);
  CHECK(b->args[0]->kind == Expr::Kind::Call);
  CHECK(b->args[1]->kind == Expr::Kind::Pow);
  CHECK(*parse_expr("ω^(1/2)") == *parse_expr("w^(1/2)"));
  CHECK(*parse_expr("w^(2)") == *parse_expr("w^2"));
  CHECK(*parse_expr("1 - 2 - 3") == *parse_expr("(1 - 2) - 3"));
  CHECK(*parse_expr("1 + 2*3") == *parse_expr("1 + (2*3)"));
  CHECK(*parse_expr("-w^2") == *parse_expr("-(w^2)"));
  CHECK(*parse_expr("-2*w") == *parse_expr("(-2)*w"));
  ExprPtr p = parse_expr("path(w; ; 3)");
  REQUIRE(p->groups.size() == 3);
  CHECK(p->groups[1].empty());
}

TEST_CASE("syntax errors carry position and expectations") {
  SyntaxError e = syntax_error("w^w");
  CHECK(e.line == 1);
  CHECK(e.column == 3);
  CHECK(e.expected == std::vector<std::string>{"'('", "integer"});
  SyntaxError e2 = syntax_error("(1 + 2");
  CHECK(e2.column == 7);
  CHECK(std::find(e2.expected.begin(), e2.expected.end(), "')'") != e2.expected.end());
  CHECK(syntax_error("1 $ 2").column == 3);
  CHECK(syntax_error("exp w").expected == std::vector<std::string>{"'('"});
  CHECK(syntax_error("1 2").column == 3);
  try {
    (void)parse_expr("  w^w", 7);
  } catch (const SyntaxError& se) {
    CHECK(se.line == 7);
    CHECK(se.column == 5);
  }
}

TEST_CASE("syntax tree round trip") {
  std::mt19937 rng(81);
  for (int trial = 0; trial < 1000; ++trial) {
    ExprPtr e = random_expr(rng, 4);
    const std::string s = print_expr(*e);
    ExprPtr back = parse_expr(s);
    CHECK_MESSAGE(*back == *e, s);
    CHECK(print_expr(*back) == s);
  }
}

TEST_CASE("printed normal forms parse back to themselves") {
  std::mt19937 rng(83);
  Session s;
  for (int trial = 0; trial < 300; ++trial) {
    Surreal x = random_printable(rng);
    const std::string t = to_text(x, B);
    Value v = eval(*parse_expr(t), s);
    REQUIRE(std::holds_alternative<Surreal>(v));
    CHECK(equal(std::get<Surreal>(v), x));
    CHECK(to_text(std::get<Surreal>(v), B) == t);
  }
}

TEST_CASE("evaluation examples") {
  CHECK(run("exp(w)") == "w^(w)\n");
  CHECK(run("sin(w)") == "0\n");
  CHECK(run(":cmp w^(1/2) w/2") == "Less\n");
  CHECK(run(":nf 1/(1+w^(-1))").rfind("1 - w^(-1) + w^(-2) - w^(-3)", 0) == 0);
  CHECK(run(":budget terms=5\n:nf exp(1/w)") ==
        "budget terms=5 prec=64 depth=16\n1 + w^(-1) + 1/2*w^(-2) + 1/6*w^(-3) + 1/24*w^(-4) + ...[truncated@5]\n");
  auto j = nlohmann::json::parse(run("path(w; ; 3)"));
  CHECK(j["steps"].size() == 4);
  CHECK(run("let x = w + 1\nx*x") == "x = w + 1\nw^2 + 2*w + 1\n");
  CHECK(run("exp(i*pi)") == "-1\n");
  CHECK(run("i*i") == "-1\n");
  CHECK(run("1/i") == "0 + (-1)i\n");
}

TEST_CASE("errors and warnings") {
  Session s;
  std::ostringstream out;
  CHECK(run_line("w^w", 1, s, out) == LineStatus::Error);
  CHECK(run_line("log(0)", 2, s, out) == LineStatus::Error);
  CHECK(run_line("let w = 2", 3, s, out) == LineStatus::Error);
  CHECK(run_line("nope(1)", 4, s, out) == LineStatus::Error);
  CHECK(run_line("", 5, s, out) == LineStatus::Ok);
  CHECK(run_line("# note", 6, s, out) == LineStatus::Ok);
  CHECK(out.str().find("log: ") != std::string::npos);
  Session js;
  js.json = true;
  auto j = nlohmann::json::parse(run("w^w", js));
  CHECK(j["error"]["kind"] == "SyntaxError");
  CHECK(j["error"]["column"] == 3);
  // An undecidable comparison is reported, not failed.
  std::ostringstream o2;
  Session s2;
  CHECK(run_line(":cmp sin(1) sin(1) + 0", 1, s2, o2) == LineStatus::Ok);
}

TEST_CASE("json output matches the schema and the text prefix") {
  std::mt19937 rng(85);
  for (int trial = 0; trial < 100; ++trial) {
    Surreal x = trial % 3 == 0 ? inv(add(R(1), random_printable(rng)), B) : random_printable(rng);
    nlohmann::json j = surreal_json(x, B);
    CHECK(valid_surreal(j));
    CHECK(j["terms"].size() == force_for_print(x, B).terms.size());
    CHECK(j["truncated"] == is_truncated(x, B));
  }
  auto schema = nlohmann::json::parse(slurp(std::string(SURREAL_SOURCE_DIR) + "/schema/surreal.schema.json"));
  CHECK(schema["$defs"]["surreal"]["required"] == nlohmann::json::array({"terms", "truncated"}));
}

TEST_CASE("batch goldens are byte-identical") {
  const std::string dir = std::string(SURREAL_SOURCE_DIR) + "/tests/golden/";
  for (const char* name : {"session", "errors"}) {
    std::ostringstream a, b;
    const int ca = run_batch({dir + name + ".txt"}, B, false, a);
    const int cb = run_batch({dir + name + ".txt"}, B, false, b);
    CHECK(a.str() == b.str());
    CHECK(ca == cb);
    CHECK(ca == (std::string(name) == "errors" ? 1 : 0));
    CHECK(a.str() == slurp(dir + name + ".out"));
  }
  std::ostringstream both;
  CHECK(run_batch({dir + "session.txt", dir + "errors.txt"}, B, false, both) == 1);
  CHECK(both.str().find("==> " + dir + "errors.txt <==") != std::string::npos);
}
