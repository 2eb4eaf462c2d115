#pragma once

#include "equidef/space.hpp"

#include <gtest/gtest.h>

namespace equidef::testing {

inline Space l1() { return Space::exact(NormSpec::l1()); }
inline Space l2() { return Space::exact(NormSpec::l2()); }
inline Space linf() { return Space::exact(NormSpec::linf()); }
inline Space l2f() { return Space::floating(NormSpec::l2()); }

inline Point P(long x, long y) { return Point::exact(x, y); }
inline Point Q(const char* x, const char* y) { return Point::exact(parse_rational(x), parse_rational(y)); }

}  // namespace equidef::testing
