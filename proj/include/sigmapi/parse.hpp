#pragma once

#include <string>
#include <string_view>

#include "sigmapi/frame.hpp"
#include "sigmapi/ode.hpp"

namespace sigmapi {

/// Parses the .spode format:
///
///   x1' = 1*x2^(1/3)*x3 + poly(0,2)*x2*x1^(-1/5)
///   x2' = 0
///
/// Coefficients are NUMBER, (p/q), poly(c0,c1,...) for exact polynomials in
/// t, or jet(c0,...,cM) for the first M+1 Taylor coefficients of an analytic
/// coefficient. Exponents written as integers or (p/q) are exact rationals;
/// decimal exponents are classified as irrational. `#` starts a comment.
/// Throws ParseError (SyntaxError, DuplicateEquation, BadExponent).
SigmaPiOde parse_ode(std::string_view text);

/// Canonical text; parse_ode(serialize_ode(ode)) == ode.
std::string serialize_ode(const SigmaPiOde& ode);

/// Whitespace- or comma-separated square matrix of NUMBER, (p/q), poly(...)
/// or jet(...) entries, one row per line. Throws ParseError (NonSquare,
/// SyntaxError).
QuadraticFrame parse_frame(std::string_view text);

std::string serialize_frame(const QuadraticFrame& frame);

/// Shortest decimal that reads back to the same double.
std::string format_real(double v);

std::string format_jet(const TimeJet& jet);
std::string format_exponent(const Exponent& p);
/// "x1*x2^(-1/3)", or "1" for the constant monomial.
std::string format_monomial(const Monomial& m, std::string_view symbol = "x");

}  // namespace sigmapi
