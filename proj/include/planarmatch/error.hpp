#pragma once

#include <stdexcept>
#include <string>

namespace planarmatch {

// Failure categories surfaced by the library. Callers that need to branch on
// the cause switch on Error::code(); everything else can treat an Error as a
// plain runtime_error with a descriptive message.
enum class Errc {
    MalformedInput,
    MalformedRotation,
    LoopEdge,
    EulerViolation,
    InvalidSet,
    NotBiconnected,
    Disconnected,
    NegativeWeight,
    NotAPerfectSquare,
    NoPerfectMatching,
    MalformedWalk,
    EdgeOutsideSupport,
    PreconditionViolated,
    OddTokenCount,
    SameTerminals,
    OddVertexCount,
    NoViolation,
    NoWalksFound,
    BadParity,
    WeightTooLarge,
    TooLarge,
    UnknownGenerator,
    InternalError,
};

const char* errcName(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

// Invariant check that stays active in every build. The algorithms rely on
// exact arithmetic, so a failed check is always a bug worth a loud stop
// rather than a silent wrong answer.
inline void require(bool condition, Errc code, const char* message) {
    if (!condition) fail(code, message);
}

}
