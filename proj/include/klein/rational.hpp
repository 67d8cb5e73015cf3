#pragma once

#include <gmpxx.h>

namespace klein {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace klein
