#pragma once

#include <stdexcept>
#include <string>

namespace tmfres {

enum class errc {
    ring_mismatch,
    y_in_y_free_ring,
    parse_error,
    degree_mismatch,
    negative_multiplicity,
    unsupported_kind,
    window_too_large,
    window_too_small,
    budget_exceeded,
    not_exterior,
    overflow,
};

inline const char* errc_name(errc c)
{
    switch (c) {
        case errc::ring_mismatch: return "RING_MISMATCH";
        case errc::y_in_y_free_ring: return "Y_IN_Y_FREE_RING";
        case errc::parse_error: return "PARSE_ERROR";
        case errc::degree_mismatch: return "DEGREE_MISMATCH";
        case errc::negative_multiplicity: return "NEGATIVE_MULTIPLICITY";
        case errc::unsupported_kind: return "UNSUPPORTED_KIND";
        case errc::window_too_large: return "WINDOW_TOO_LARGE";
        case errc::window_too_small: return "WINDOW_TOO_SMALL";
        case errc::budget_exceeded: return "BUDGET_EXCEEDED";
        case errc::not_exterior: return "NOT_EXTERIOR";
        case errc::overflow: return "OVERFLOW";
    }
    return "UNKNOWN";
}

// Domain-level failure carrying a stable error code. `pos` is a byte offset
// for parse errors, or a line number for module files; -1 when meaningless.
class DomainError : public std::runtime_error {
public:
    DomainError(errc code, const std::string& msg, long pos = -1)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code), pos_(pos)
    {
    }

    errc code() const { return code_; }
    long pos() const { return pos_; }

private:
    errc code_;
    long pos_;
};

}  // namespace tmfres
