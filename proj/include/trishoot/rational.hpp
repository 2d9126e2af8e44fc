#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace trishoot {

// Exact arbitrary-precision rational scalar. All geometric values in the
// library are Rats; doubles appear only in filters and telemetry.
using Rat = mpq_class;

inline int sign(const Rat& q) { return sgn(q); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// num/den in canonical (reduced, positive-denominator) form. The two-argument
// mpq_class constructor does NOT canonicalize; always build fractions from
// variable operands through this helper.
inline Rat rat_frac(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Conservative double approximation error: mpq_get_d truncates toward zero
// with error below one ulp. The tiny absolute term absorbs denormals.
inline constexpr double kApproxRelErr = 2.23e-16;
inline constexpr double kApproxAbsErr = 1e-290;

inline double to_double(const Rat& q) { return q.get_d(); }

// Parses "p/q", integers, and plain decimals ("-1.25", "3."). Returns
// nullopt on malformed input instead of throwing; callers own diagnostics.
std::optional<Rat> rat_parse(std::string_view s);

// Canonical text form: "p" for integers, "p/q" otherwise. Round-trips
// through rat_parse exactly.
std::string rat_str(const Rat& q);

// Shortest-ish decimal form for human-facing output (falls back to p/q when
// the denominator is not 2^a*5^b). Exact when printed as a decimal.
std::string rat_decimal_or_fraction(const Rat& q);

// Floor of the integer square root of a non-negative integer value.
unsigned long isqrt_ulong(unsigned long n);

// FNV-1a, used for deterministic result digests.
struct Fnv1a {
    std::uint64_t h = 14695981039346656037ull;
    void add_byte(unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    }
    void add(std::string_view s) {
        for (unsigned char c : s) add_byte(c);
    }
    void add_u64(std::uint64_t v) {
        for (int i = 0; i < 8; i++) add_byte(static_cast<unsigned char>(v >> (8 * i)));
    }
};

}  // namespace trishoot
