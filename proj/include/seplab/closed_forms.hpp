#pragma once

#include <string>

#include "seplab/graph.hpp"
#include "seplab/rational.hpp"

namespace seplab {

// The origin term of the triangulation edge expectation, 2*C(n,2)*f(p), has two
// circulating forms: f(p) = p and f(p) = p^2. Exhaustive enumeration settles it
// (n=2, p=1/2: one potential arc, two origin edges when present, expectation 1,
// which only the linear form reproduces), so proof_p is the default; the quadratic
// form stays selectable for comparison.
enum class OriginVariant { proof_p, theorem_p2 };

std::string to_string(OriginVariant v);
OriginVariant origin_variant_from_string(const std::string& s);

// Expected polytope edge count of G(n, p):
//   12*C(n,4)*p^2*(1 - p^2) + 6*C(n,3)*p^2*(1 + (1-p)*(1-p^2)^(n-3)).
// Evaluated in 80-bit extended precision; stable for n up to 10^4.
long double expectation_polytope(int n, long double p);

// Expected triangulation edge count of G(n, p):
//   6*C(n,4)*p^2*(2 - p^2) + 6*C(n,3)*p^2
//   + 2*C(n,2)*(1-p)*(1 - (1-p^2)^(n-2)) + origin term (see OriginVariant).
long double expectation_triangulation(int n, long double p,
                                      OriginVariant variant = OriginVariant::proof_p);

// Principal variance terms for the polytope count, covering the vertex-disjoint
// pair classes (shared nodes 2, 3 and 4 between the two counted pairs):
//   2*(n)_6*p^3*(1-p)*(1-2p^2)^2
//   + 8*(n)_5*p^3*(1-p)*(p^3*(1-p) + (1-2p^2)^2)
//   + (n)_4*p^2*(1-p^2)*(1 - p^2*(1-p^2) + (1-p^2)^2) - (n)_4*p^4*(1-p^2)*(3-4p^2).
// Terms for pairs sharing an arc are exponentially small (order p^l * e^{-c n p^2})
// and deliberately omitted; the leading term vanishes at p = 1/sqrt(2).
long double variance_case1_polytope(int n, long double p);

// Exact fourth moment of Binomial(m, p) via falling factorials:
//   (m)_4 p^4 + 6 (m)_3 p^3 + 7 (m)_2 p^2 + m p.
long double binomial_moment4(long long m, long double p);

// The variance dip location 1/sqrt(2), where the leading coefficient (1-2p^2)^2
// of variance_case1_polytope vanishes.
long double critical_p();

// Exact-rational twins of the expectations, for equality checks against
// exhaustive enumeration.
Rational expectation_polytope_exact(int n, const Rational& p);
Rational expectation_triangulation_exact(int n, const Rational& p,
                                         OriginVariant variant = OriginVariant::proof_p);

// Asymptotic regime the closed forms operate in at (n, p).
struct MomentReport {
    long double expectation = 0;
    long double variance_principal = 0;  // polytope only; 0 for the triangulation
    std::string regime_label;
};

MomentReport moment_report(int n, long double p, Model model,
                           OriginVariant variant = OriginVariant::proof_p);

}  // namespace seplab
