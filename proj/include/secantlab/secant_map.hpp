#pragma once

#include <optional>

#include "secantlab/geometry.hpp"
#include "secantlab/iteration_policy.hpp"
#include "secantlab/polynomial.hpp"
#include "secantlab/rational.hpp"

namespace secantlab {

/// Polynomial brought to the form 1 + a_2 x^2 + ... + a_{d+1} x^{d+1} at a
/// nondegenerate critical point shifted to the origin (constant term 1, no
/// linear term, a_2 * a_{d+1} != 0, d = deg - 1 >= 2).
class NormalizedPolynomial {
public:
    explicit NormalizedPolynomial(Polynomial p);

    const Polynomial& poly() const { return p_; }
    int d() const { return p_.degree() - 1; }
    const Rat& a2() const { return p_.coeff(2); }
    const Rat& lead() const { return p_.coeff(p_.degree()); }

private:
    Polynomial p_;
};

/// One step of the secant map S(x, y) = (y, y - p(y) (x-y)/(p(x)-p(y))).
/// When |x - y| falls below the divided-difference threshold
/// 1e-8 (1+|x|+|y|) the quotient continues as 1/p'(y).  The returned point
/// carries the blow-up tag once a coordinate passes kBlowupMagnitude or the
/// step is not representable (horizontal secant with p(y) != 0, zero
/// derivative at a non-root, double overflow).
ExtendedPoint secant_step(const Polynomial& p, Point pt);

struct CriticalPoint {
    double x;
    bool nondegenerate;  // p(x) * p''(x) != 0
};

/// Real roots of p' to ~1e-12, annotated with the nondegeneracy flag.
std::vector<CriticalPoint> critical_points(const Polynomial& p);

/// q(x) = p(x + c) / p(c); requires |p'(c)| <= 1e-10 and p(c) != 0.  The
/// residual linear coefficient (at most the criticality tolerance) is dropped
/// so the result matches the normalized form exactly.
NormalizedPolynomial normalize_at_critical(const Polynomial& p, double c);

/// Coefficient of the matching model map: a = (-a_2)^d / a_{d+1}, exact.
Rat model_coefficient(const NormalizedPolynomial& q);

enum class ThreeCycleLabel { InBasin, NotInBasin, Undecided };

struct ThreeCycleResult {
    ThreeCycleLabel label;
    int steps;      // steps consumed when the decision was made
    bool on_cycle;  // InBasin via an exact hit of the critical fixed point
};

/// Classify convergence to the critical three-cycle (c,c) -> (c,inf) ->
/// (inf,c) of the secant map for a normalized polynomial (c = 0).  InBasin
/// requires the step-3n iterates to settle below eps_converge in the first
/// coordinate while the two intermediate steps alternate the blow-up pattern
/// (small, huge) / (huge, small), sustained for policy.window periods.
ThreeCycleResult classify_three_cycle(const NormalizedPolynomial& q, Point pt,
                                      const IterationPolicy& policy);

}  // namespace secantlab
