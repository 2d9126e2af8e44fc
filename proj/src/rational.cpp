#include "trishoot/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace trishoot {

std::optional<Rat> rat_parse(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) return std::nullopt;

    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        i++;
    }
    std::string intpart, fracpart, denpart;
    bool seen_dot = false, seen_slash = false;
    for (; i < s.size(); i++) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot || seen_slash) return std::nullopt;
            seen_dot = true;
        } else if (c == '/') {
            if (seen_slash || seen_dot) return std::nullopt;
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? denpart : (seen_dot ? fracpart : intpart)) += c;
        } else {
            return std::nullopt;
        }
    }
    if (intpart.empty() && fracpart.empty()) return std::nullopt;

    Rat r;
    if (seen_slash) {
        if (denpart.empty()) return std::nullopt;
        mpz_class num(intpart.empty() ? "0" : intpart), den(denpart);
        if (den == 0) return std::nullopt;
        r = Rat(num, den);
        r.canonicalize();
    } else {
        mpz_class num(intpart.empty() ? "0" : intpart);
        if (!fracpart.empty()) {
            mpz_class frac(fracpart), den(1);
            for (std::size_t k = 0; k < fracpart.size(); k++) den *= 10;
            r = Rat(num * den + frac, den);
            r.canonicalize();
        } else {
            r = Rat(num);
        }
    }
    if (neg) r = -r;
    return r;
}

std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
}

std::string rat_decimal_or_fraction(const Rat& q) {
    mpz_class den = q.get_den();
    int twos = 0, fives = 0;
    mpz_class d = den;
    while (d % 2 == 0) {
        d /= 2;
        twos++;
    }
    while (d % 5 == 0) {
        d /= 5;
        fives++;
    }
    if (d != 1) return rat_str(q);
    if (den == 1) return q.get_num().get_str();

    int digits = std::max(twos, fives);
    mpz_class scale(1);
    for (int i = 0; i < digits; i++) scale *= 10;
    mpz_class scaled = q.get_num() * (scale / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string body = scaled.get_str();
    if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
    if (neg) body.insert(0, "-");
    return body;
}

unsigned long isqrt_ulong(unsigned long n) {
    if (n == 0) return 0;
    unsigned long r = static_cast<unsigned long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) r--;
    while ((r + 1) * (r + 1) <= n) r++;
    return r;
}

}  // namespace trishoot
