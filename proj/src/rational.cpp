#include "secantlab/rational.hpp"

#include <cctype>
#include <cmath>

namespace secantlab {

Rat parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        // decimal literal: shift the point away
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad rational literal: " + text);
        mpz_class num(digits, 10);
        mpz_class den(1);
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }

    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0)
        throw std::invalid_argument("rational with zero denominator: " + text);
    q.canonicalize();
    return q;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    Rat q(x);  // exact: doubles are dyadic rationals
    q.canonicalize();
    return q;
}

Rat pow_rat(const Rat& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw std::domain_error("0 to a negative power");
        return 1 / pow_rat(base, -exp);
    }
    Rat out(1);
    Rat b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) out *= b;
        b *= b;
        e >>= 1;
    }
    return out;
}

}  // namespace secantlab
