#pragma once

#include "katofan/error.hpp"
#include "katofan/extended.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace katofan {

/// Laurent series in one variable t over Q, known modulo t^prec.
/// prec == EXACT marks a polynomial known completely; an empty term list with
/// finite prec only certifies vanishing below prec, never equality to zero.
struct TruncatedSeries {
    static constexpr int64_t EXACT = INT64_MAX;

    std::vector<std::pair<int64_t, Rat>> terms;  // exponent-sorted, coeffs nonzero
    int64_t prec = EXACT;

    static TruncatedSeries zero() { return {}; }
    static TruncatedSeries constant(const Rat& c);
    static TruncatedSeries monomial(int64_t e, const Rat& c);
    static TruncatedSeries from_terms(std::vector<std::pair<int64_t, Rat>> ts,
                                      int64_t prec = EXACT);

    bool is_exact_zero() const { return terms.empty() && prec == EXACT; }
    /// no terms survive below the precision: congruent to zero as far as known
    bool vanishes() const { return terms.empty(); }

    bool operator==(const TruncatedSeries& o) const {
        return terms == o.terms && prec == o.prec;
    }
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries pow(const TruncatedSeries& a, const Int& n);
TruncatedSeries scale(const Rat& c, const TruncatedSeries& a);

/// Multiplicative inverse; the result is truncated at prec_cap even for
/// exact polynomial input. Throws DomainError when the order of a is not
/// certified.
TruncatedSeries inverse(const TruncatedSeries& a, int64_t prec_cap);

enum class OrdKind { finite, infinite, indeterminate };

struct SeriesOrder {
    OrdKind kind = OrdKind::indeterminate;
    int64_t value = 0;  // meaningful for finite orders
};

/// t-adic order: the lowest retained exponent, infinity for the exact zero
/// series, indeterminate when every retained term was truncated away.
SeriesOrder order(const TruncatedSeries& a);

/// order as an extended value; throws DomainError("indeterminate-order")
/// instead of guessing.
ExtendedValue order_value(const TruncatedSeries& a);

std::string to_string(const TruncatedSeries& a);

}  // namespace katofan
