#include "surreal/expr.hpp"

#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>

#include "surreal/exp_log.hpp"
#include "surreal/json_io.hpp"
#include "surreal/simplicity.hpp"

namespace surreal {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.num != b.num || a.name != b.name) return false;
  if (a.args.size() != b.args.size() || a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!(*a.args[i] == *b.args[i])) return false;
  }
  for (std::size_t g = 0; g < a.groups.size(); ++g) {
    if (a.groups[g].size() != b.groups[g].size()) return false;
    for (std::size_t i = 0; i < a.groups[g].size(); ++i) {
      if (!(*a.groups[g][i] == *b.groups[g][i])) return false;
    }
  }
  return true;
}

namespace {

std::string syntax_message(std::size_t line, std::size_t column, const std::vector<std::string>& expected,
                           const std::string& found) {
  std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
  if (expected.size() > 1) msg += "one of ";
  for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
  return msg + "; found " + found;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t l, std::size_t c, std::vector<std::string> exp, const std::string& found)
    : KernelError(ErrorKind::Syntax, syntax_message(l, c, exp, found)), line(l), column(c), expected(std::move(exp)) {}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Num, Ident, Op, End };
  Kind kind;
  std::string text;
  std::size_t column;
};

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of input";
  if (t.kind == Token::Kind::Num) return "number " + t.text;
  return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& src, std::size_t line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0, col = offset + 1;
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i, ++col;
    } else if (src.compare(i, 2, "\xCF\x89") == 0) {
      out.push_back({Token::Kind::Ident, "w", col});
      i += 2, ++col;
    } else if (is_digit(c)) {
      std::size_t j = i;
      while (j < src.size() && is_digit(src[j])) ++j;
      out.push_back({Token::Kind::Num, src.substr(i, j - i), col});
      col += j - i, i = j;
    } else if (is_alpha(c)) {
      std::size_t j = i;
      while (j < src.size() && (is_alpha(src[j]) || is_digit(src[j]))) ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), col});
      col += j - i, i = j;
    } else if (std::string("+-*/^(),;").find(c) != std::string::npos) {
      out.push_back({Token::Kind::Op, std::string(1, c), col});
      ++i, ++col;
    } else {
      std::size_t len = 1;
      if ((static_cast<unsigned char>(c) & 0xE0) == 0xC0) len = 2;
      else if ((static_cast<unsigned char>(c) & 0xF0) == 0xE0) len = 3;
      else if ((static_cast<unsigned char>(c) & 0xF8) == 0xF0) len = 4;
      throw SyntaxError(line, col, {"number", "name", "operator"}, "'" + src.substr(i, len) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

const std::set<std::string>& functions() {
  static const std::set<std::string> f{"exp", "log", "sin", "cos", "h", "g", "floorOz", "nf", "signexp", "dev", "path"};
  return f;
}

const std::vector<std::string> kOperators{"'+'", "'-'", "'*'", "'/'"};
const std::vector<std::string> kPrimary{"number", "name", "'('", "'-'"};

ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  Parser(const std::string& src, std::size_t line, std::size_t offset) : toks_(lex(src, line, offset)), line_(line) {}

  ExprPtr expr() {
    ExprPtr l = term();
    while (is_op("+") || is_op("-")) {
      const Expr::Kind k = peek().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
      ++pos_;
      l = node(k, {l, term()});
    }
    return l;
  }

  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(line_, peek().column, std::move(expected), describe(peek()));
  }

  void expect_end(std::vector<std::string> extra) const {
    if (at_end()) return;
    std::vector<std::string> exp = kOperators;
    exp.insert(exp.end(), extra.begin(), extra.end());
    fail(exp);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool is_op(const char* s) const { return peek().kind == Token::Kind::Op && peek().text == s; }

  void expect_op(const char* s, std::vector<std::string> expected) {
    if (!is_op(s)) fail(std::move(expected));
    ++pos_;
  }

  ExprPtr term() {
    ExprPtr l = unary();
    while (is_op("*") || is_op("/")) {
      const Expr::Kind k = peek().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
      ++pos_;
      l = node(k, {l, unary()});
    }
    return l;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      ++pos_;
      return node(Expr::Kind::Neg, {unary()});
    }
    return primary();
  }

  ExprPtr primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::Num) {
      ++pos_;
      auto e = std::make_shared<Expr>();
      e->num = Int(t.text);
      return e;
    }
    if (is_op("(")) {
      ++pos_;
      ExprPtr e = expr();
      std::vector<std::string> exp = kOperators;
      exp.push_back("')'");
      expect_op(")", exp);
      return e;
    }
    if (t.kind != Token::Kind::Ident) fail(kPrimary);
    ++pos_;
    if (t.text == "w" && is_op("^")) {
      ++pos_;
      if (peek().kind == Token::Kind::Num) {
        auto n = std::make_shared<Expr>();
        n->num = Int(peek().text);
        ++pos_;
        return node(Expr::Kind::Pow, {n});
      }
      expect_op("(", {"'('", "integer"});
      ExprPtr ex = expr();
      std::vector<std::string> exp = kOperators;
      exp.push_back("')'");
      expect_op(")", exp);
      return node(Expr::Kind::Pow, {ex});
    }
    if (functions().count(t.text)) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Call;
      e->name = t.text;
      expect_op("(", {"'('"});
      e->groups.emplace_back();
      while (true) {
        if (is_op(";")) {
          ++pos_;
          e->groups.emplace_back();
          continue;
        }
        if (is_op(")")) {
          ++pos_;
          break;
        }
        if (!e->groups.back().empty()) {
          std::vector<std::string> exp = kOperators;
          exp.insert(exp.end(), {"','", "';'", "')'"});
          expect_op(",", exp);
        }
        e->groups.back().push_back(expr());
      }
      return e;
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Name;
    e->name = t.text;
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    default: return 4;
  }
}

std::string wrap(const Expr& e, int p) {
  return prec(e) < p ? "(" + print_expr(e) + ")" : print_expr(e);
}

}  // namespace

ExprPtr parse_expr(const std::string& src, std::size_t line) {
  Parser p(src, line, 0);
  ExprPtr e = p.expr();
  p.expect_end({"end of input"});
  return e;
}

std::vector<ExprPtr> parse_exprs(const std::string& src, std::size_t line, std::size_t column_offset) {
  Parser p(src, line, column_offset);
  std::vector<ExprPtr> out;
  while (!p.at_end()) out.push_back(p.expr());
  return out;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Num: return e.num.get_str();
    case Expr::Kind::Name: return e.name;
    case Expr::Kind::Neg: return "-" + wrap(*e.args[0], 3);
    case Expr::Kind::Add: return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case Expr::Kind::Sub: return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case Expr::Kind::Mul: return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case Expr::Kind::Div: return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case Expr::Kind::Pow:
      if (e.args[0]->kind == Expr::Kind::Num) return "w^" + e.args[0]->num.get_str();
      return "w^(" + print_expr(*e.args[0]) + ")";
    case Expr::Kind::Call: {
      std::string out = e.name + "(";
      for (std::size_t g = 0; g < e.groups.size(); ++g) {
        if (g) out += e.groups[g].empty() ? ";" : "; ";
        for (std::size_t i = 0; i < e.groups[g].size(); ++i) out += (i ? ", " : "") + print_expr(*e.groups[g][i]);
      }
      return out + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

const char* value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return "surreal";
    case 1: return "surcomplex";
    case 2: return "path";
    default: return "sign expansion";
  }
}

Surreal as_real(const Value& v, const std::string& op) {
  if (const auto* x = std::get_if<Surreal>(&v)) return *x;
  throw KernelError(ErrorKind::DomainError, op + ": expected a surreal, got a " + value_kind(v));
}

SurComplex as_complex(const Value& v, const std::string& op) {
  if (const auto* z = std::get_if<SurComplex>(&v)) return *z;
  return SurComplex{as_real(v, op), Surreal()};
}

bool is_complex(const Value& v) { return std::holds_alternative<SurComplex>(v); }

Value settle(const SurComplex& z, const Budget& b) {
  try {
    if (z.im.is_zero(b)) return z.re;
  } catch (const KernelError&) {
  }
  return z;
}

Value arith(Expr::Kind k, const Value& l, const Value& r, const Budget& b) {
  const char* op = k == Expr::Kind::Add ? "add" : k == Expr::Kind::Sub ? "sub" : k == Expr::Kind::Mul ? "mul" : "div";
  if (!is_complex(l) && !is_complex(r)) {
    const Surreal x = as_real(l, op), y = as_real(r, op);
    switch (k) {
      case Expr::Kind::Add: return add(x, y);
      case Expr::Kind::Sub: return sub(x, y);
      case Expr::Kind::Mul: return mul(x, y);
      default: return div(x, y, b);
    }
  }
  const SurComplex z = as_complex(l, op), w = as_complex(r, op);
  switch (k) {
    case Expr::Kind::Add: return settle(cadd(z, w), b);
    case Expr::Kind::Sub: return settle(SurComplex{sub(z.re, w.re), sub(z.im, w.im)}, b);
    case Expr::Kind::Mul: return settle(cmul(z, w), b);
    default: {
      const Surreal n = add(mul(w.re, w.re), mul(w.im, w.im));
      const SurComplex p = cmul(z, SurComplex{w.re, neg(w.im)});
      return settle(SurComplex{div(p.re, n, b), div(p.im, n, b)}, b);
    }
  }
}

SubspaceSpec basis_of(const std::vector<ExprPtr>& g, const Session& s, const std::string& op) {
  SubspaceSpec d;
  for (const auto& e : g) d.basis.push_back(as_real(eval(*e, s), op));
  return d;
}

void check_arity(const Expr& e) {
  const std::string& f = e.name;
  std::string want;
  bool ok;
  if (f == "dev") {
    ok = e.groups.size() == 2 && e.groups[0].size() == 1;
    want = "dev(y; basis...)";
  } else if (f == "path") {
    ok = e.groups.size() == 3 && e.groups[0].size() == 1 && e.groups[2].size() == 1;
    want = "path(y; basis...; n)";
  } else {
    ok = e.groups.size() == 1 && e.groups[0].size() == 1;
    want = f + "(x)";
  }
  if (!ok) throw KernelError(ErrorKind::DomainError, f + ": wrong arguments, expected " + want);
}

Value call(const Expr& e, const Session& s) {
  check_arity(e);
  const Budget& b = s.budget;
  const std::string& f = e.name;
  const Value arg = eval(*e.groups[0][0], s);
  if (f == "exp" && is_complex(arg)) return settle(cexp(std::get<SurComplex>(arg), b), b);
  if (f == "nf") return arg;
  const Surreal x = as_real(arg, f);
  if (f == "exp") return exp(x, b);
  if (f == "log") return log(x, b);
  if (f == "sin") return sin(x, b);
  if (f == "cos") return cos(x, b);
  if (f == "h") return h(x, b);
  if (f == "g") return g(x, b);
  if (f == "floorOz") return oz_floor(x, b);
  if (f == "signexp") {
    auto seq = sign_expansion(x, b);
    if (!seq) throw KernelError(ErrorKind::FragmentExhausted, "no sign expansion within the supported fragment");
    return Signs{seq->text()};
  }
  if (f == "dev") return development(x, basis_of(e.groups[1], s, f), b);
  const Surreal n = as_real(eval(*e.groups[2][0], s), f);
  auto q = n.as_rat(b);
  if (!q || !is_integer(*q) || *q < 0 || *q > 10000) {
    throw KernelError(ErrorKind::DomainError, "path: step count must be an integer in [0, 10000]");
  }
  return delta_path(x, basis_of(e.groups[1], s, f), q->get_num().get_ui(), b);
}

}  // namespace

Value eval(const Expr& e, const Session& s) {
  const Budget& b = s.budget;
  switch (e.kind) {
    case Expr::Kind::Num: return Surreal::from_rat(Rat(e.num));
    case Expr::Kind::Name: {
      if (e.name == "w") return Surreal::omega();
      if (e.name == "pi") return Surreal::from_coeff(coeff_pi());
      if (e.name == "e") return Surreal::from_coeff(coeff_exp(Coeff(1)));
      if (e.name == "i") return SurComplex{Surreal(), Surreal::from_rat(1)};
      auto it = s.bindings.find(e.name);
      if (it == s.bindings.end()) throw KernelError(ErrorKind::DomainError, "unknown name '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Neg: {
      const Value v = eval(*e.args[0], s);
      if (is_complex(v)) {
        const auto& z = std::get<SurComplex>(v);
        return SurComplex{neg(z.re), neg(z.im)};
      }
      return neg(as_real(v, "neg"));
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul:
    case Expr::Kind::Div: {
      const Value l = eval(*e.args[0], s), r = eval(*e.args[1], s);
      try {
        return arith(e.kind, l, r, b);
      } catch (const KernelError& err) {
        if (e.kind != Expr::Kind::Div) throw;
        throw KernelError(err.kind(), std::string("div: ") + err.what());
      }
    }
    case Expr::Kind::Pow:
      return Surreal::omega_pow(as_real(eval(*e.args[0], s), "w^"));
    case Expr::Kind::Call:
      try {
        return call(e, s);
      } catch (const SyntaxError&) {
        throw;
      } catch (const KernelError& err) {
        const std::string what = err.what();
        if (what.rfind(e.name + ":", 0) == 0) throw;
        throw KernelError(err.kind(), e.name + ": " + what);
      }
  }
  throw KernelError(ErrorKind::DomainError, "bad expression");
}

std::string value_text(const Value& v, const Budget& b) {
  if (const auto* x = std::get_if<Surreal>(&v)) return to_text(*x, b);
  if (const auto* z = std::get_if<SurComplex>(&v)) return to_text(*z, b);
  if (const auto* p = std::get_if<PathTrace>(&v)) return path_json(*p, b);
  return std::get<Signs>(v).text;
}

nlohmann::json value_json(const Value& v, const Budget& b) {
  if (const auto* x = std::get_if<Surreal>(&v)) return surreal_json(*x, b);
  if (const auto* z = std::get_if<SurComplex>(&v)) return complex_json(*z, b);
  if (const auto* p = std::get_if<PathTrace>(&v)) return nlohmann::json::parse(path_json(*p, b));
  return {{"signexp", std::get<Signs>(v).text}};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::Less: return "Less";
    case Cmp::Equal: return "Equal";
    case Cmp::Greater: return "Greater";
    default: return "Indeterminate";
  }
}

bool reserved(const std::string& n) {
  return n == "w" || n == "pi" || n == "e" || n == "i" || functions().count(n) > 0;
}

void set_budget(const std::string& args, Session& s, std::size_t line_no, std::size_t col0) {
  Budget nb = s.budget;
  std::istringstream in(args);
  std::string item;
  while (in >> item) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    unsigned long v = 0;
    bool ok = eq != std::string::npos && eq + 1 < item.size() &&
              item.find_first_not_of("0123456789", eq + 1) == std::string::npos && item.size() - eq - 1 <= 9;
    if (ok) v = std::stoul(item.substr(eq + 1));
    ok = ok && v >= 1;
    if (!ok || (key != "terms" && key != "prec" && key != "depth")) {
      throw SyntaxError(line_no, col0 + args.find(item) + 1, {"terms=N", "prec=K", "depth=D"}, "'" + item + "'");
    }
    if (key == "terms") nb.max_terms = v;
    if (key == "prec") nb.prec = static_cast<unsigned>(v);
    if (key == "depth") nb.depth = static_cast<unsigned>(v);
  }
  s.budget = nb;
}

void emit(std::ostream& out, const Session& s, const std::string& text, const nlohmann::json& j) {
  out << (s.json ? j.dump() : text) << '\n';
}

LineStatus report(std::ostream& out, const Session& s, const KernelError& e) {
  const bool warn = e.kind() == ErrorKind::Indeterminate || e.kind() == ErrorKind::BudgetExhausted;
  const char* tag = warn ? "warning" : "error";
  nlohmann::json j{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
    j["line"] = se->line;
    j["column"] = se->column;
    j["expected"] = se->expected;
  }
  emit(out, s, std::string(tag) + ": " + to_string(e.kind()) + ": " + e.what(), {{tag, j}});
  return warn ? LineStatus::Warning : LineStatus::Error;
}

}  // namespace

LineStatus run_line(const std::string& raw, std::size_t line_no, Session& s, std::ostream& out) {
  const std::string line = trim(raw);
  if (line.empty() || line[0] == '#') return LineStatus::Ok;
  const std::size_t lead = raw.find_first_not_of(" \t");
  auto rest_after = [&](std::size_t n) { return std::make_pair(line.substr(n), lead + n); };
  try {
    if (line.rfind("let ", 0) == 0) {
      const auto eq = line.find('=');
      const std::string name = trim(line.substr(4, eq == std::string::npos ? std::string::npos : eq - 4));
      const bool ident = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                         name.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") ==
                             std::string::npos;
      if (!ident || reserved(name)) throw SyntaxError(line_no, lead + 5, {"name"}, "'" + name + "'");
      if (eq == std::string::npos) throw SyntaxError(line_no, lead + line.size() + 1, {"'='"}, "end of input");
      auto [src, off] = rest_after(eq + 1);
      auto es = parse_exprs(src, line_no, off);
      if (es.size() != 1) throw SyntaxError(line_no, off + src.size() + 1, {"expression"}, "end of input");
      const Value v = eval(*es[0], s);
      emit(out, s, name + " = " + value_text(v, s.budget), {{"let", name}, {"value", value_json(v, s.budget)}});
      s.bindings[name] = v;
      return LineStatus::Ok;
    }
    if (line[0] == ':') {
      const auto sp = line.find_first_of(" \t");
      const std::string cmd = line.substr(0, sp);
      auto [src, off] = rest_after(sp == std::string::npos ? line.size() : sp);
      if (cmd == ":nf") {
        const Value v = eval(*parse_expr(std::string(off, ' ') + src, line_no), s);
        emit(out, s, value_text(v, s.budget), value_json(v, s.budget));
      } else if (cmd == ":cmp") {
        auto es = parse_exprs(src, line_no, off);
        if (es.size() != 2) {
          throw KernelError(ErrorKind::Syntax, ":cmp takes two expressions, got " + std::to_string(es.size()));
        }
        const Cmp c = compare(as_real(eval(*es[0], s), ":cmp"), as_real(eval(*es[1], s), ":cmp"), s.budget);
        emit(out, s, cmp_text(c), {{"cmp", cmp_text(c)}});
      } else if (cmd == ":budget") {
        set_budget(src, s, line_no, off);
        const Budget& b = s.budget;
        emit(out, s,
             "budget terms=" + std::to_string(b.max_terms) + " prec=" + std::to_string(b.prec) +
                 " depth=" + std::to_string(b.depth),
             {{"budget", {{"terms", b.max_terms}, {"prec", b.prec}, {"depth", b.depth}}}});
      } else if (cmd == ":json") {
        const std::string arg = trim(src);
        if (arg != "on" && arg != "off") throw SyntaxError(line_no, off + 2, {"on", "off"}, "'" + arg + "'");
        s.json = arg == "on";
        emit(out, s, "json " + arg, {{"json", s.json}});
      } else {
        throw SyntaxError(line_no, lead + 1, {":nf", ":cmp", ":budget", ":json"}, "'" + cmd + "'");
      }
      return LineStatus::Ok;
    }
    auto [src, off] = rest_after(0);
    const Value v = eval(*parse_expr(std::string(lead, ' ') + src, line_no), s);
    emit(out, s, value_text(v, s.budget), value_json(v, s.budget));
    return LineStatus::Ok;
  } catch (const KernelError& e) {
    return report(out, s, e);
  } catch (const std::exception& e) {
    return report(out, s, KernelError(ErrorKind::DomainError, e.what()));
  }
}

int run_batch(const std::vector<std::string>& files, const Budget& b, bool json, std::ostream& out) {
  struct Result {
    std::string text;
    bool failed = false;
  };
  std::vector<std::future<Result>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, b, json] {
      Result r;
      std::ostringstream os;
      Session s;
      s.budget = b;
      s.json = json;
      std::ifstream in(f);
      if (!in) {
        r.failed = report(os, s, KernelError(ErrorKind::DomainError, "cannot read " + f)) == LineStatus::Error;
      }
      std::string line;
      for (std::size_t n = 1; in && std::getline(in, line); ++n) {
        if (run_line(line, n, s, os) == LineStatus::Error) r.failed = true;
      }
      r.text = os.str();
      return r;
    }));
  }
  bool failed = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Result r = jobs[i].get();
    if (files.size() > 1) out << "==> " << files[i] << " <==\n";
    out << r.text;
    failed = failed || r.failed;
  }
  return failed ? 1 : 0;
}

}  // namespace surreal
