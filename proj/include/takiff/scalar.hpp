#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace takiff {

// Exact rational; mpq_class keeps values canonical after every arithmetic
// operation. Values built from text must go through parse_scalar.
using Scalar = mpq_class;

// Accepts "p" or "p/q" with optional sign; rejects q == 0.
Scalar parse_scalar(std::string_view text);

// "p" for integers, "p/q" otherwise, always in lowest terms.
std::string format_scalar(const Scalar& s);

}  // namespace takiff
