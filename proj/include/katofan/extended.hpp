#pragma once

#include "katofan/numeric.hpp"

namespace katofan {

/// An element of the extended nonnegative rationals Q>=0 ∪ {inf},
/// with x + inf = inf.
struct ExtendedValue {
    bool infinite = false;
    Rat value = 0;  // meaningful only when finite

    static ExtendedValue finite(Rat v) { return ExtendedValue{false, std::move(v)}; }
    static ExtendedValue inf() { return ExtendedValue{true, 0}; }

    bool is_zero() const { return !infinite && value == 0; }

    ExtendedValue operator+(const ExtendedValue& o) const {
        if (infinite || o.infinite) return inf();
        return finite(value + o.value);
    }
    bool operator==(const ExtendedValue& o) const {
        if (infinite != o.infinite) return false;
        return infinite || value == o.value;
    }
    bool operator!=(const ExtendedValue& o) const { return !(*this == o); }
    bool operator<(const ExtendedValue& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return value < o.value;
    }
};

inline ExtendedValue scale(const Int& n, const ExtendedValue& v) {
    if (v.infinite) return ExtendedValue::inf();
    return ExtendedValue::finite(Rat(n) * v.value);
}

inline std::string to_string(const ExtendedValue& v) {
    return v.infinite ? "inf" : to_string(v.value);
}

}  // namespace katofan
