#pragma once

#include <ostream>
#include <string_view>

namespace fpell {

/// Three-valued truth for predicates that are only decidable up to a computation cutoff.
enum class Tri { False, True, Unknown };

constexpr Tri to_tri(bool b) { return b ? Tri::True : Tri::False; }

constexpr Tri operator!(Tri a) {
    if (a == Tri::Unknown) return Tri::Unknown;
    return a == Tri::True ? Tri::False : Tri::True;
}

constexpr Tri operator&&(Tri a, Tri b) {
    if (a == Tri::False || b == Tri::False) return Tri::False;
    if (a == Tri::True && b == Tri::True) return Tri::True;
    return Tri::Unknown;
}

constexpr Tri operator||(Tri a, Tri b) {
    if (a == Tri::True || b == Tri::True) return Tri::True;
    if (a == Tri::False && b == Tri::False) return Tri::False;
    return Tri::Unknown;
}

constexpr std::string_view to_string(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        default: return "unknown";
    }
}

inline std::ostream& operator<<(std::ostream& os, Tri t) { return os << to_string(t); }

}  // namespace fpell
