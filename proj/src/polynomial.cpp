#include "secantlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace secantlab {

Polynomial::Polynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.empty()) c_.push_back(Rat(0));
    if (degree() > 0 && c_.back() == 0)
        throw std::invalid_argument("Polynomial: zero leading coefficient");
}

namespace {

struct Term {
    Rat coeff;
    int power;
};

// One term of the grammar: [coefficient] [*] [x [^ power]]
Term parse_term(const std::string& t) {
    std::string s = t;
    auto xpos = s.find('x');
    if (xpos == std::string::npos) return {parse_rational(s), 0};

    std::string coeff_part = s.substr(0, xpos);
    if (!coeff_part.empty() && coeff_part.back() == '*') coeff_part.pop_back();
    Rat coeff;
    if (coeff_part.empty() || coeff_part == "+")
        coeff = 1;
    else if (coeff_part == "-")
        coeff = -1;
    else
        coeff = parse_rational(coeff_part);

    std::string rest = s.substr(xpos + 1);
    int power = 1;
    if (!rest.empty()) {
        if (rest[0] != '^') throw std::invalid_argument("bad polynomial term: " + t);
        std::string digits = rest.substr(1);
        if (digits.empty() ||
            !std::all_of(digits.begin(), digits.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw std::invalid_argument("bad polynomial exponent: " + t);
        power = std::stoi(digits);
    }
    return {coeff, power};
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty polynomial string");

    std::vector<Term> terms;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i) {
        bool split = i == s.size() ||
                     ((s[i] == '+' || s[i] == '-') && s[i - 1] != '^' && s[i - 1] != '/' &&
                      s[i - 1] != '*' && s[i - 1] != '+' && s[i - 1] != '-');
        if (split) {
            terms.push_back(parse_term(s.substr(start, i - start)));
            start = i;
        }
    }

    int deg = 0;
    for (const auto& t : terms) deg = std::max(deg, t.power);
    std::vector<Rat> coeffs(static_cast<std::size_t>(deg) + 1, Rat(0));
    for (const auto& t : terms) coeffs[static_cast<std::size_t>(t.power)] += t.coeff;
    return Polynomial(std::move(coeffs));
}

double Polynomial::operator()(double x) const {
    double acc = to_double(c_.back());
    for (int k = degree() - 1; k >= 0; --k) acc = acc * x + to_double(c_[static_cast<std::size_t>(k)]);
    return acc;
}

Rat Polynomial::eval_exact(const Rat& x) const {
    Rat acc = c_.back();
    for (int k = degree() - 1; k >= 0; --k) acc = acc * x + c_[static_cast<std::size_t>(k)];
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial({Rat(0)});
    std::vector<Rat> out(static_cast<std::size_t>(degree()));
    for (int k = 1; k <= degree(); ++k)
        out[static_cast<std::size_t>(k - 1)] = Rat(k) * c_[static_cast<std::size_t>(k)];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::shifted(const Rat& shift) const {
    // Horner with polynomial accumulator: p(x + s)
    std::vector<Rat> acc{c_.back()};
    for (int k = degree() - 1; k >= 0; --k) {
        std::vector<Rat> next(acc.size() + 1, Rat(0));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] += acc[i] * shift;
        }
        next[0] += c_[static_cast<std::size_t>(k)];
        acc = std::move(next);
    }
    return Polynomial(std::move(acc));
}

std::string Polynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= degree(); ++k) {
        const Rat& c = c_[static_cast<std::size_t>(k)];
        if (c == 0 && degree() > 0) continue;
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat mag = abs(c);
        if (k == 0 || mag != 1) os << mag.get_str();
        if (k > 0) {
            if (mag != 1) os << "*";
            os << "x";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

double cauchy_bound(const Polynomial& p) {
    double lead = std::abs(to_double(p.coeff(p.degree())));
    double m = 0.0;
    for (int k = 0; k < p.degree(); ++k)
        m = std::max(m, std::abs(to_double(p.coeff(k))));
    return 1.0 + m / lead;
}

double bisect_root(const Polynomial& p, double lo, double hi) {
    double flo = p(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1 + std::abs(lo) + std::abs(hi)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) != (fm < 0))
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double polish_root(const Polynomial& p, const Polynomial& dp, double x) {
    for (int it = 0; it < 8; ++it) {
        double f = p(x), df = dp(x);
        if (df == 0.0 || !std::isfinite(f)) break;
        double step = f / df;
        if (!std::isfinite(step) || std::abs(step) > 1.0) break;
        x -= step;
        if (std::abs(step) < 1e-15 * (1 + std::abs(x))) break;
    }
    return x;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& p) {
    if (p.degree() == 0) return {};
    if (p.degree() == 1)
        return {to_double(-p.coeff(0) / p.coeff(1))};

    Polynomial dp = p.derivative();
    std::vector<double> breaks = real_roots(dp);
    double bound = cauchy_bound(p);
    std::vector<double> grid{-bound};
    for (double b : breaks)
        if (b > -bound && b < bound) grid.push_back(b);
    grid.push_back(bound);
    std::sort(grid.begin(), grid.end());

    std::vector<double> roots;
    auto push_unique = [&](double r) {
        for (double seen : roots)
            if (std::abs(seen - r) < 1e-10 * (1 + std::abs(r))) return;
        roots.push_back(r);
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        double lo = grid[i], hi = grid[i + 1];
        double flo = p(lo), fhi = p(hi);
        if (flo == 0.0) push_unique(lo);
        if ((flo < 0) != (fhi < 0))
            push_unique(polish_root(p, dp, bisect_root(p, lo, hi)));
    }
    // critical points sitting exactly on the axis (even-multiplicity roots)
    for (double b : breaks)
        if (std::abs(p(b)) < 1e-12 * (1 + std::abs(b))) push_unique(b);
    double hi_end = grid.back();
    if (p(hi_end) == 0.0) push_unique(hi_end);

    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace secantlab
