#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trishoot/rational.hpp"

namespace trishoot {

// Value in a one-square-root extension of the rationals: a + b*sqrt(g),
// g >= 0. Line/circle intersections land here; everything is compared by
// exact sign analysis, never by floating point.
//
// Normal form: g square-free-ish (perfect-square rational factors folded
// into b), and b == 0 implies g == 0.
struct RootExt {
    Rat a;
    Rat b;
    Rat g;

    RootExt() : a(0), b(0), g(0) {}
    explicit RootExt(Rat r) : a(std::move(r)), b(0), g(0) {}
    RootExt(Rat a_, Rat b_, Rat g_);

    bool is_rational() const { return b == 0; }
    double approx() const;
    std::string str() const;
};

// sqrt(g) as an exact rational if g is a perfect square.
std::optional<Rat> rat_perfect_sqrt(const Rat& g);

// Exact sign of r0 + sum_i b_i*sqrt(g_i); supports up to three radicals
// (all the predicates in this project need at most three).
int sign_radical(const Rat& r0, std::vector<std::pair<Rat, Rat>> terms);

int sign(const RootExt& x);
int compare(const RootExt& x, const RootExt& y);

inline bool operator<(const RootExt& x, const RootExt& y) { return compare(x, y) < 0; }
inline bool operator>(const RootExt& x, const RootExt& y) { return compare(x, y) > 0; }
inline bool operator<=(const RootExt& x, const RootExt& y) { return compare(x, y) <= 0; }
inline bool operator>=(const RootExt& x, const RootExt& y) { return compare(x, y) >= 0; }
inline bool operator==(const RootExt& x, const RootExt& y) { return compare(x, y) == 0; }
inline bool operator!=(const RootExt& x, const RootExt& y) { return compare(x, y) != 0; }

// Affine arithmetic (result stays in the same extension). Mixed-radical sums
// are not representable and are intentionally absent.
RootExt operator+(const RootExt& x, const Rat& r);
RootExt operator-(const RootExt& x, const Rat& r);
RootExt operator*(const RootExt& x, const Rat& r);
RootExt operator+(const RootExt& x, const RootExt& y);  // requires same g (or a rational side)
RootExt operator-(const RootExt& x, const RootExt& y);
RootExt operator-(const RootExt& x);

// Product of two values living in the same extension (or with a rational
// side); the result stays in that extension.
RootExt mul_same(const RootExt& x, const RootExt& y);

// Exact sign of p + q*sqrt(w) where p, q, w all live in one extension field
// and w >= 0. This climbs one tower level without ever materializing the
// nested radical.
int sign_plus_root(const RootExt& p, const RootExt& q, const RootExt& w);

int compare(const RootExt& x, const Rat& r);

// A rational strictly between lo and hi (lo < hi required); used to pick
// probe abscissae between algebraic breakpoints.
Rat rational_between(const RootExt& lo, const RootExt& hi);

}  // namespace trishoot
