#include "trishoot/root_ext.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace trishoot {

std::optional<Rat> rat_perfect_sqrt(const Rat& g) {
    if (g < 0) return std::nullopt;
    if (g == 0) return Rat(0);
    const mpz_class& num = g.get_num();
    const mpz_class& den = g.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class ns, ds;
    mpz_sqrt(ns.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(ds.get_mpz_t(), den.get_mpz_t());
    Rat r(ns, ds);
    r.canonicalize();
    return r;
}

RootExt::RootExt(Rat a_, Rat b_, Rat g_) : a(std::move(a_)), b(std::move(b_)), g(std::move(g_)) {
    if (g < 0) throw std::invalid_argument("RootExt: negative radicand");
    if (b == 0 || g == 0) {
        b = 0;
        g = 0;
        return;
    }
    if (auto s = rat_perfect_sqrt(g)) {
        a += b * (*s);
        b = 0;
        g = 0;
    }
}

double RootExt::approx() const {
    double r = to_double(a);
    if (b != 0) r += to_double(b) * std::sqrt(to_double(g));
    return r;
}

std::string RootExt::str() const {
    if (is_rational()) return rat_str(a);
    return rat_str(a) + " + " + rat_str(b) + "*sqrt(" + rat_str(g) + ")";
}

namespace {

// Floating-point prefilter for radical sums. Returns the sign when the double
// estimate clears a conservative error bound (relative 1e-12 versus a true
// accumulated error near 1e-15), 0 when the exact path must decide. Overflow
// to inf/nan fails the comparisons and falls through safely.
int approx_sign(double est, double mag) {
    double err = mag * 1e-12 + 1e-280;
    if (est > err) return 1;
    if (est < -err) return -1;
    return 0;
}

// sign of b*sqrt(g) with g > 0
int sign_term(const Rat& b) { return sign(b); }

// sign of r0 + b*sqrt(g), one radical, g > 0, b != 0
int sign_one(const Rat& r0, const Rat& b, const Rat& g) {
    double dr = to_double(r0);
    double dt = to_double(b) * std::sqrt(to_double(g));
    if (int s = approx_sign(dr + dt, std::fabs(dr) + std::fabs(dt))) return s;
    int sb = sign(b);
    if (r0 == 0) return sb;
    int sr = sign(r0);
    if (sr == sb) return sr;
    // |r0| vs |b|sqrt(g): compare squares
    int c = sign(Rat(r0 * r0 - b * b * g));
    if (c > 0) return sr;
    if (c < 0) return sb;
    return 0;
}

// sign of b1*sqrt(g1) + b2*sqrt(g2), both radicals live (b != 0, g > 0)
int sign_two_pure(const Rat& b1, const Rat& g1, const Rat& b2, const Rat& g2) {
    int s1 = sign_term(b1), s2 = sign_term(b2);
    if (s1 == s2) return s1;
    int c = sign(Rat(b1 * b1 * g1 - b2 * b2 * g2));
    if (c > 0) return s1;
    if (c < 0) return s2;
    return 0;
}

}  // namespace

int sign_radical(const Rat& r0, std::vector<std::pair<Rat, Rat>> terms) {
    {
        double est = to_double(r0);
        double mag = std::fabs(est);
        bool ok = true;
        for (const auto& [b, g] : terms) {
            if (g < 0) {
                ok = false;
                break;
            }
            double t = to_double(b) * std::sqrt(to_double(g));
            est += t;
            mag += std::fabs(t);
        }
        if (ok)
            if (int s = approx_sign(est, mag)) return s;
    }
    Rat base = r0;
    // Fold degenerate and perfect-square radicals into the rational part,
    // merge identical radicands.
    std::vector<std::pair<Rat, Rat>> live;
    for (auto& [b, g] : terms) {
        if (b == 0 || g == 0) continue;
        if (g < 0) throw std::invalid_argument("sign_radical: negative radicand");
        if (auto s = rat_perfect_sqrt(g)) {
            base += b * (*s);
            continue;
        }
        bool merged = false;
        for (auto& [lb, lg] : live) {
            if (lg == g) {
                lb += b;
                merged = true;
                break;
            }
        }
        if (!merged) live.emplace_back(b, g);
    }
    for (std::size_t i = 0; i < live.size();) {
        if (live[i].first == 0)
            live.erase(live.begin() + i);
        else
            i++;
    }

    switch (live.size()) {
        case 0:
            return sign(base);
        case 1:
            return sign_one(base, live[0].first, live[0].second);
        case 2: {
            const auto& [b1, g1] = live[0];
            const auto& [b2, g2] = live[1];
            if (base == 0) return sign_two_pure(b1, g1, b2, g2);
            // (base + b1 sqrt g1) vs -(b2 sqrt g2)
            int sl = sign_one(base, b1, g1);
            int sr = sign_term(b2);
            if (sl == 0) return sr;
            if (sr == 0) return sl;
            if (sl == sr) return sl;
            // compare squares: L^2 - R^2 = base^2 + b1^2 g1 - b2^2 g2 + 2 base b1 sqrt(g1)
            int c = sign_one(Rat(base * base + b1 * b1 * g1 - b2 * b2 * g2), Rat(2 * base * b1), g1);
            if (c > 0) return sl;
            if (c < 0) return sr;
            return 0;
        }
        case 3: {
            const auto& [b1, g1] = live[0];
            const auto& [b2, g2] = live[1];
            const auto& [b3, g3] = live[2];
            // L = base + b1 sqrt(g1), R = -(b2 sqrt(g2) + b3 sqrt(g3))
            int sl = sign_one(base, b1, g1);
            int sr = sign_two_pure(b2, g2, b3, g3);
            if (sl == 0) return sr;
            if (sr == 0) return sl;
            if (sl == sr) return sl;
            // L^2 - R^2 = (base^2 + b1^2 g1 - b2^2 g2 - b3^2 g3)
            //             + 2 base b1 sqrt(g1) - 2 b2 b3 sqrt(g2 g3)
            int c = sign_radical(Rat(base * base + b1 * b1 * g1 - b2 * b2 * g2 - b3 * b3 * g3),
                                 {{Rat(2 * base * b1), g1}, {Rat(-2 * b2 * b3), Rat(g2 * g3)}});
            if (c > 0) return sl;
            if (c < 0) return sr;
            return 0;
        }
        default:
            throw std::logic_error("sign_radical: more than three live radicals");
    }
}

int sign(const RootExt& x) {
    if (x.b == 0) return sign(x.a);
    return sign_one(x.a, x.b, x.g);
}

int compare(const RootExt& x, const RootExt& y) {
    if (x.b == 0 && y.b == 0) return sign(Rat(x.a - y.a));
    return sign_radical(Rat(x.a - y.a), {{x.b, x.g}, {Rat(-y.b), y.g}});
}

int compare(const RootExt& x, const Rat& r) {
    if (x.b == 0) return sign(Rat(x.a - r));
    return sign_one(Rat(x.a - r), x.b, x.g);
}

RootExt operator+(const RootExt& x, const Rat& r) { return RootExt(Rat(x.a + r), x.b, x.g); }
RootExt operator-(const RootExt& x, const Rat& r) { return RootExt(Rat(x.a - r), x.b, x.g); }

RootExt operator*(const RootExt& x, const Rat& r) {
    return RootExt(Rat(x.a * r), Rat(x.b * r), x.g);
}

RootExt operator-(const RootExt& x) { return RootExt(Rat(-x.a), Rat(-x.b), x.g); }

RootExt operator+(const RootExt& x, const RootExt& y) {
    if (y.b == 0) return x + y.a;
    if (x.b == 0) return y + x.a;
    if (x.g != y.g) throw std::invalid_argument("RootExt+: mixed radicands");
    return RootExt(Rat(x.a + y.a), Rat(x.b + y.b), x.g);
}

RootExt operator-(const RootExt& x, const RootExt& y) { return x + (-y); }

RootExt mul_same(const RootExt& x, const RootExt& y) {
    if (y.b == 0) return x * y.a;
    if (x.b == 0) return y * x.a;
    if (x.g != y.g) throw std::invalid_argument("mul_same: mixed radicands");
    return RootExt(Rat(x.a * y.a + x.b * y.b * x.g), Rat(x.a * y.b + x.b * y.a), x.g);
}

int sign_plus_root(const RootExt& p, const RootExt& q, const RootExt& w) {
    int sw = sign(w);
    if (sw < 0) throw std::invalid_argument("sign_plus_root: negative radicand");
    int sq = sign(q);
    if (sw == 0 || sq == 0) return sign(p);
    int sp = sign(p);
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Opposite signs: compare p^2 against q^2*w inside the base field.
    int c = sign(mul_same(p, p) - mul_same(mul_same(q, q), w));
    if (c > 0) return sp;
    if (c < 0) return sq;
    return 0;
}

Rat rational_between(const RootExt& lo, const RootExt& hi) {
    assert(compare(lo, hi) < 0);
    if (lo.is_rational() && hi.is_rational()) return Rat((lo.a + hi.a) / 2);
    // Bisect a rational bracket around the algebraic interval. Start from a
    // double guess, then widen/narrow with exact comparisons only.
    double dl = lo.approx(), dh = hi.approx();
    Rat guess((dl + dh) / 2);
    if (compare(lo, guess) < 0 && compare(hi, guess) > 0) return guess;
    // Exact fallback: binary search on dyadics between rational outer bounds.
    Rat a(std::floor(dl) - 2), b(std::ceil(dh) + 2);
    while (true) {
        Rat mid((a + b) / 2);
        int cl = compare(lo, mid);
        int ch = compare(hi, mid);
        if (cl < 0 && ch > 0) return mid;
        if (cl >= 0)
            a = mid;
        else
            b = mid;
    }
}

}  // namespace trishoot
