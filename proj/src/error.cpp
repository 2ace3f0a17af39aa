#include "soapforge/error.hpp"

namespace soapforge {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::DuplicateName: return "DuplicateName";
        case Errc::NotFound: return "NotFound";
        case Errc::InvalidName: return "InvalidName";
        case Errc::InvalidEndpoint: return "InvalidEndpoint";
        case Errc::InvalidParameter: return "InvalidParameter";
        case Errc::ValidationFailed: return "ValidationFailed";
        case Errc::InvalidRequest: return "InvalidRequest";
        case Errc::MalformedXml: return "MalformedXml";
        case Errc::DecodeError: return "DecodeError";
        case Errc::EmptyBody: return "EmptyBody";
        case Errc::UnknownPhase: return "UnknownPhase";
        case Errc::UnknownReference: return "UnknownReference";
        case Errc::Conflict: return "Conflict";
        case Errc::Cycle: return "Cycle";
        case Errc::HandlerPanic: return "HandlerPanic";
        case Errc::UnsupportedType: return "UnsupportedType";
        case Errc::MissingEndpoint: return "MissingEndpoint";
        case Errc::UnknownOperation: return "UnknownOperation";
        case Errc::TransportFailed: return "TransportFailed";
        case Errc::FaultError: return "FaultError";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::DuplicateMethod: return "DuplicateMethod";
        case Errc::AlreadyRegistered: return "AlreadyRegistered";
        case Errc::NonConformant: return "NonConformant";
        case Errc::UnknownService: return "UnknownService";
        case Errc::PathTaken: return "PathTaken";
        case Errc::PortInUse: return "PortInUse";
    }
    return "UnknownError";
}

const char* clause_name(Violation::Clause clause) noexcept {
    switch (clause) {
        case Violation::Clause::NullNotAllowed: return "NullNotAllowed";
        case Violation::Clause::OccurrenceRangeInverted: return "OccurrenceRangeInverted";
        case Violation::Clause::NegativeMinOccurs: return "NegativeMinOccurs";
        case Violation::Clause::InvalidMaxOccurs: return "InvalidMaxOccurs";
        case Violation::Clause::SequenceNotAllowed: return "SequenceNotAllowed";
        case Violation::Clause::SequenceLengthOutOfRange: return "SequenceLengthOutOfRange";
        case Violation::Clause::SequenceNested: return "SequenceNested";
        case Violation::Clause::InvalidName: return "InvalidName";
        case Violation::Clause::UnfilledSkeleton: return "UnfilledSkeleton";
        case Violation::Clause::MissingPart: return "MissingPart";
        case Violation::Clause::KindMismatch: return "KindMismatch";
        case Violation::Clause::UnknownPart: return "UnknownPart";
    }
    return "UnknownClause";
}

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += clause_name(v.clause);
        out += "(";
        out += v.field;
        out += ")";
        if (!v.message.empty()) {
            out += ": ";
            out += v.message;
        }
    }
    if (out.empty()) out = "no violations";
    return out;
}

}  // namespace soapforge
