#include "secantlab/power_series.hpp"

#include <algorithm>

namespace secantlab {

int RatSeries::valuation() const {
    for (int n = 0; n <= order(); ++n)
        if (at(n) != 0) return n;
    return order() + 1;
}

RatSeries RatSeries::truncated(int order) const {
    if (order < 0) throw std::invalid_argument("truncated: negative order");
    RatSeries out(order);
    for (int n = 0; n <= std::min(order, this->order()); ++n) out.set(n, at(n));
    return out;
}

Rat RatSeries::eval(const Rat& x) const {
    Rat acc = at(order());
    for (int n = order() - 1; n >= 0; --n) acc = acc * x + at(n);
    return acc;
}

RatSeries add(const RatSeries& a, const RatSeries& b) {
    int n = std::min(a.order(), b.order());
    RatSeries out(n);
    for (int i = 0; i <= n; ++i) out.set(i, a.at(i) + b.at(i));
    return out;
}

RatSeries sub(const RatSeries& a, const RatSeries& b) {
    int n = std::min(a.order(), b.order());
    RatSeries out(n);
    for (int i = 0; i <= n; ++i) out.set(i, a.at(i) - b.at(i));
    return out;
}

RatSeries scale(const Rat& s, const RatSeries& a) {
    RatSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i) out.set(i, s * a.at(i));
    return out;
}

RatSeries mul(const RatSeries& a, const RatSeries& b) {
    int n = std::min(a.order(), b.order());
    RatSeries out(n);
    int va = a.valuation(), vb = b.valuation();
    Rat term;
    for (int i = va; i <= n; ++i) {
        if (a.at(i) == 0) continue;
        int jmax = n - i;
        for (int j = vb; j <= jmax; ++j) {
            if (b.at(j) == 0) continue;
            term = a.at(i) * b.at(j);
            out.set(i + j, out.at(i + j) + term);
        }
    }
    return out;
}

RatSeries pow(const RatSeries& a, int k) {
    if (k < 0) throw std::invalid_argument("pow: negative exponent");
    RatSeries out(a.order());
    out.set(0, Rat(1));
    RatSeries base = a;
    while (k > 0) {
        if (k & 1) out = mul(out, base);
        k >>= 1;
        if (k > 0) base = mul(base, base);
    }
    return out;
}

RatSeries compose(const RatSeries& a, const RatSeries& b) {
    if (b.at(0) != 0) throw std::invalid_argument("compose: inner series must vanish at 0");
    int n = std::min(a.order(), b.order());
    // Horner from the top; a-coefficients above n/val(b) cannot reach order n.
    int vb = std::max(b.valuation(), 1);
    int kmax = std::min(a.order(), n / vb);
    RatSeries bt = b.truncated(n);
    RatSeries acc(n);
    acc.set(0, a.at(kmax));
    for (int k = kmax - 1; k >= 0; --k) {
        acc = mul(acc, bt);
        acc.set(0, acc.at(0) + a.at(k));
    }
    return acc;
}

}  // namespace secantlab
