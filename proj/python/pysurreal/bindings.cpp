#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "surreal/embeddings.hpp"
#include "surreal/exp_log.hpp"
#include "surreal/expr.hpp"
#include "surreal/json_io.hpp"
#include "surreal/simplicity.hpp"
#include "surreal/trig.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using surreal::Budget;
using surreal::Surreal;

namespace {

const char* cmp_name(surreal::Cmp c) {
  switch (c) {
    case surreal::Cmp::Less: return "Less";
    case surreal::Cmp::Equal: return "Equal";
    case surreal::Cmp::Greater: return "Greater";
    default: return "Indeterminate";
  }
}

Surreal parse(const std::string& src, const Budget& b) {
  surreal::Session s;
  s.budget = b;
  surreal::Value v = surreal::eval(*surreal::parse_expr(src), s);
  if (auto* x = std::get_if<Surreal>(&v)) return *x;
  throw surreal::KernelError(surreal::ErrorKind::DomainError, "expression is not a surreal");
}

surreal::SubspaceSpec span(const std::vector<Surreal>& basis) { return surreal::SubspaceSpec{basis}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact surreal-number kernel";

  static py::exception<surreal::KernelError> err(m, "KernelError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const surreal::KernelError& e) {
      err((std::string(surreal::to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Budget>(m, "Budget")
      .def(py::init([](std::size_t terms, unsigned prec, unsigned depth) { return Budget{terms, prec, depth}; }),
           "terms"_a = 12, "prec"_a = 64, "depth"_a = 16)
      .def_readwrite("terms", &Budget::max_terms)
      .def_readwrite("prec", &Budget::prec)
      .def_readwrite("depth", &Budget::depth)
      .def("__repr__", [](const Budget& b) {
        return "Budget(terms=" + std::to_string(b.max_terms) + ", prec=" + std::to_string(b.prec) +
               ", depth=" + std::to_string(b.depth) + ")";
      });

  const Budget def{};

  py::class_<Surreal>(m, "Surreal")
      .def(py::init([](long num, long den) { return Surreal::from_rat(surreal::make_rat(num, den)); }), "num"_a = 0,
           "den"_a = 1)
      .def_static("omega", &Surreal::omega)
      .def_static("omega_pow", &Surreal::omega_pow, "y"_a)
      .def_static("parse", &parse, "text"_a, "budget"_a = def)
      .def("text", [](const Surreal& x, const Budget& b) { return surreal::to_text(x, b); }, "budget"_a = def)
      .def("json", [](const Surreal& x, const Budget& b) { return surreal::surreal_json(x, b).dump(); },
           "budget"_a = def)
      .def("is_zero", [](const Surreal& x, const Budget& b) { return x.is_zero(b); }, "budget"_a = def)
      .def("compare", [](const Surreal& x, const Surreal& y, const Budget& b) {
        return cmp_name(surreal::compare(x, y, b));
      }, "other"_a, "budget"_a = def)
      .def("__add__", [](const Surreal& x, const Surreal& y) { return surreal::add(x, y); })
      .def("__sub__", [](const Surreal& x, const Surreal& y) { return surreal::sub(x, y); })
      .def("__mul__", [](const Surreal& x, const Surreal& y) { return surreal::mul(x, y); })
      .def("__truediv__", [](const Surreal& x, const Surreal& y) { return surreal::div(x, y, Budget{}); })
      .def("__neg__", [](const Surreal& x) { return surreal::neg(x); })
      .def("__eq__", [](const Surreal& x, const Surreal& y) {
        return surreal::compare(x, y, Budget{}) == surreal::Cmp::Equal;
      })
      .def("__lt__", [](const Surreal& x, const Surreal& y) {
        return surreal::compare(x, y, Budget{}) == surreal::Cmp::Less;
      })
      .def("__str__", [](const Surreal& x) { return surreal::to_text(x, Budget{}); })
      .def("__repr__", [](const Surreal& x) { return "Surreal('" + surreal::to_text(x, Budget{}) + "')"; });

  m.def("exp", &surreal::exp, "x"_a, "budget"_a = def);
  m.def("log", &surreal::log, "x"_a, "budget"_a = def);
  m.def("h", &surreal::h, "s"_a, "budget"_a = def);
  m.def("g", &surreal::g, "x"_a, "budget"_a = def);
  m.def("sin", &surreal::sin, "x"_a, "budget"_a = def);
  m.def("cos", &surreal::cos, "x"_a, "budget"_a = def);
  m.def("oz_floor", &surreal::oz_floor, "x"_a, "budget"_a = def);
  m.def("sign_expansion", [](const Surreal& x, const Budget& b) -> std::optional<std::string> {
    auto s = surreal::sign_expansion(x, b);
    if (!s) return std::nullopt;
    return s->text();
  }, "x"_a, "budget"_a = def);
  m.def("simplest_dyadic_between", [](const std::string& lo, const std::string& hi) {
    return surreal::rat_text(surreal::simplest_dyadic_between({surreal::Rat(lo)}, {surreal::Rat(hi)}));
  }, "lo"_a, "hi"_a);
  m.def("development", [](const Surreal& y, const std::vector<Surreal>& basis, const Budget& b) {
    return surreal::development(y, span(basis), b);
  }, "y"_a, "basis"_a, "budget"_a = def);
  m.def("delta_path", [](const Surreal& y, const std::vector<Surreal>& basis, std::size_t n, const Budget& b) {
    return surreal::path_json(surreal::delta_path(y, span(basis), n, b), b);
  }, "y"_a, "basis"_a, "n"_a, "budget"_a = def);
  m.def("check_t1", [](const std::vector<Surreal>& sample, const Budget& b) {
    return surreal::t1_json(surreal::check_T1_conditions(sample, b));
  }, "sample"_a, "budget"_a = def);

  py::class_<surreal::Session>(m, "Session")
      .def(py::init([](const Budget& b, bool json) {
        surreal::Session s;
        s.budget = b;
        s.json = json;
        return s;
      }), "budget"_a = def, "json"_a = false)
      .def("run", [](surreal::Session& s, const std::string& line) {
        std::ostringstream out;
        const auto st = surreal::run_line(line, 1, s, out);
        std::string text = out.str();
        if (!text.empty() && text.back() == '\n') text.pop_back();
        const char* status = st == surreal::LineStatus::Ok ? "ok" : st == surreal::LineStatus::Warning ? "warning" : "error";
        return py::make_tuple(status, text);
      }, "line"_a);
}
