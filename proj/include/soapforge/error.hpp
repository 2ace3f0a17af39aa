#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace soapforge {

enum class Errc {
    // request / parameter model
    DuplicateName,
    NotFound,
    InvalidName,
    InvalidEndpoint,
    InvalidParameter,
    // envelope codec
    ValidationFailed,
    InvalidRequest,
    MalformedXml,
    DecodeError,
    EmptyBody,
    // pipeline
    UnknownPhase,
    UnknownReference,
    Conflict,
    Cycle,
    HandlerPanic,
    // wsdl
    UnsupportedType,
    MissingEndpoint,
    UnknownOperation,
    // transport / engine
    TransportFailed,
    FaultError,
    // registry / idl
    SyntaxError,
    DuplicateMethod,
    AlreadyRegistered,
    NonConformant,
    UnknownService,
    // mock server
    PathTaken,
    PortInUse,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// One failed invariant clause, reported as data rather than thrown.
struct Violation {
    enum class Clause {
        NullNotAllowed,
        OccurrenceRangeInverted,
        NegativeMinOccurs,
        InvalidMaxOccurs,
        SequenceNotAllowed,
        SequenceLengthOutOfRange,
        SequenceNested,
        InvalidName,
        UnfilledSkeleton,
        // wsdl request validation
        MissingPart,
        KindMismatch,
        UnknownPart,
    };

    Clause clause;
    std::string field;    // offending parameter name (dotted path for nested members)
    std::string message;

    friend bool operator==(const Violation& a, const Violation& b) {
        return a.clause == b.clause && a.field == b.field;
    }
};

const char* clause_name(Violation::Clause clause) noexcept;

std::string describe(const std::vector<Violation>& violations);

/// Thrown where the spec's contract names ValidationFailed; carries the full list.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations)
        : Error(Errc::ValidationFailed, describe(violations)), violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

}  // namespace soapforge
