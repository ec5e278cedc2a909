#pragma once
#include "sv/kform.hpp"
#include <string>

namespace sv {

// Parses an exterior-form expression over a fixed basis. Atoms are rational
// literals, the imaginary unit i, declared parameters, conj(p), and basis
// elements: e^{135} or e135 over the real basis, w12 / w1c3 over the complex
// basis ('c' marks a conjugated index). '*' and juxtaposition wedge factors
// together, '/' divides by a rational literal, '^' raises a scalar to an
// integer power. Throws ParseError with the offending position.
KForm parse_form(const std::string& text, ParamTablePtr ctx, int n = 6,
                 BasisKind basis = BasisKind::Real);

} // namespace sv
