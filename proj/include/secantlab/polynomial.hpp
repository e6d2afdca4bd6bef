#pragma once

#include <string>
#include <vector>

#include "secantlab/rational.hpp"

namespace secantlab {

/// Real polynomial with exact rational coefficients, indexed by power.
class Polynomial {
public:
    explicit Polynomial(std::vector<Rat> coeffs);

    /// Grammar: `c0 + c1*x + c2*x^2 + ...` with rational coefficients `p/q`.
    /// Signs may be folded into the terms; `*` is optional; terms may appear
    /// in any order ("1 - 2*x^2 + x^3", "3/2 x^4 - x").
    static Polynomial parse(const std::string& text);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rat& coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<Rat>& coeffs() const { return c_; }

    double operator()(double x) const;
    Rat eval_exact(const Rat& x) const;

    Polynomial derivative() const;

    /// p(x + shift) expanded with exact arithmetic.
    Polynomial shifted(const Rat& shift) const;

    std::string to_string() const;

private:
    std::vector<Rat> c_;  // c_[k] multiplies x^k; leading coefficient nonzero
};

/// All real roots of p, each to absolute accuracy ~1e-12: the real line is cut
/// into monotone pieces by the recursively-computed roots of p', sign-change
/// bisection runs on a Cauchy-bound interval, and a Newton polish finishes.
std::vector<double> real_roots(const Polynomial& p);

}  // namespace secantlab
