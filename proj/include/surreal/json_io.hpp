#pragma once

#include "json.hpp"
#include "surreal/surreal.hpp"
#include "surreal/trig.hpp"

namespace surreal {

/// {"num", "den"} or {"rreal", "interval"} at b.prec bits.
[[nodiscard]] nlohmann::json coeff_json(const Coeff& c, const Budget& b);
/// {"terms": [{"coeff", "exp"}], "truncated"} over the printed prefix.
[[nodiscard]] nlohmann::json surreal_json(const Surreal& x, const Budget& b);
[[nodiscard]] nlohmann::json complex_json(const SurComplex& z, const Budget& b);

}  // namespace surreal
