#include "planarmatch/error.hpp"

namespace planarmatch {

const char* errcName(Errc code) noexcept {
    switch (code) {
    case Errc::MalformedInput: return "MalformedInput";
    case Errc::MalformedRotation: return "MalformedRotation";
    case Errc::LoopEdge: return "LoopEdge";
    case Errc::EulerViolation: return "EulerViolation";
    case Errc::InvalidSet: return "InvalidSet";
    case Errc::NotBiconnected: return "NotBiconnected";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::NotAPerfectSquare: return "NotAPerfectSquare";
    case Errc::NoPerfectMatching: return "NoPerfectMatching";
    case Errc::MalformedWalk: return "MalformedWalk";
    case Errc::EdgeOutsideSupport: return "EdgeOutsideSupport";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::OddTokenCount: return "OddTokenCount";
    case Errc::SameTerminals: return "SameTerminals";
    case Errc::OddVertexCount: return "OddVertexCount";
    case Errc::NoViolation: return "NoViolation";
    case Errc::NoWalksFound: return "NoWalksFound";
    case Errc::BadParity: return "BadParity";
    case Errc::WeightTooLarge: return "WeightTooLarge";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::InternalError: return "InternalError";
    }
    return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errcName(code)) + ": " + message), code_(code) {}

void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}
