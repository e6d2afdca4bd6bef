#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secantlab/rational.hpp"

namespace secantlab {

/// Truncated one-variable power series with exact rational coefficients,
/// indexed 0..order.  Access past the truncation order is an error, never a
/// silent zero.
class RatSeries {
public:
    RatSeries() = default;
    explicit RatSeries(int order) : c_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("RatSeries: negative order");
    }
    RatSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("RatSeries: empty coefficient list");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }

    const Rat& at(int n) const {
        check(n);
        return c_[static_cast<std::size_t>(n)];
    }
    void set(int n, Rat v) {
        check(n);
        c_[static_cast<std::size_t>(n)] = std::move(v);
    }

    const std::vector<Rat>& coeffs() const { return c_; }

    /// Smallest n with nonzero coefficient; order()+1 if identically zero.
    int valuation() const;

    RatSeries truncated(int order) const;

    /// Exact Horner evaluation at a rational point.
    Rat eval(const Rat& x) const;

    bool operator==(const RatSeries& o) const { return c_ == o.c_; }

private:
    void check(int n) const {
        if (n < 0 || n > order())
            throw std::out_of_range("RatSeries: coefficient index " + std::to_string(n) +
                                    " outside truncation order " + std::to_string(order()));
    }
    std::vector<Rat> c_;
};

RatSeries add(const RatSeries& a, const RatSeries& b);
RatSeries sub(const RatSeries& a, const RatSeries& b);
RatSeries scale(const Rat& s, const RatSeries& a);

/// Product truncated at min of the operand orders.
RatSeries mul(const RatSeries& a, const RatSeries& b);

/// a^k, truncated at a.order().
RatSeries pow(const RatSeries& a, int k);

/// a(b(x)); requires b(0) = 0.  Truncated at min of the operand orders.
RatSeries compose(const RatSeries& a, const RatSeries& b);

}  // namespace secantlab
