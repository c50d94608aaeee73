#include "surreal/json_io.hpp"

namespace surreal {

nlohmann::json coeff_json(const Coeff& c, const Budget& b) {
  if (c.is_exact()) return {{"num", c.rat().get_num().get_str()}, {"den", c.rat().get_den().get_str()}};
  const Interval iv = c.approx(b.prec);
  return {{"rreal", c.text()}, {"interval", {rat_text(iv.lo), rat_text(iv.hi)}}};
}

nlohmann::json surreal_json(const Surreal& x, const Budget& b) {
  const ForcedPrefix f = force_for_print(x, b);
  nlohmann::json terms = nlohmann::json::array();
  for (const Term& t : f.terms) {
    if (!t.exp.known_zero() && b.depth == 0) {
      throw KernelError(ErrorKind::BudgetExhausted, "json: exponent nesting exceeds depth");
    }
    terms.push_back({{"coeff", coeff_json(t.coeff, b)}, {"exp", surreal_json(t.exp, b.deeper())}});
  }
  return {{"terms", terms}, {"truncated", f.truncated}};
}

nlohmann::json complex_json(const SurComplex& z, const Budget& b) {
  return {{"re", surreal_json(z.re, b)}, {"im", surreal_json(z.im, b)}};
}

}  // namespace surreal
