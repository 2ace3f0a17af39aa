#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soapforge/error.hpp"

namespace soapforge {

struct Parameter;

/// Closed value variant carried by parameters. Sequence models a repeated
/// element, Record nested complex content; both may nest, but a Sequence item
/// may not itself be a Sequence (the wire format cannot express it).
class Value {
public:
    enum class Kind { Null, Boolean, Integer, Decimal, Text, Sequence, Record };

    using Sequence = std::vector<Value>;
    using Record = std::vector<Parameter>;

    Value() noexcept = default;  // Null

    static Value null() { return Value(); }
    static Value boolean(bool v);
    static Value integer(std::int64_t v);
    static Value decimal(double v);  // throws InvalidParameter on NaN/infinity
    static Value text(std::string v);
    static Value sequence(Sequence items);
    static Value record(Record members);

    Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    bool is_null() const noexcept { return kind() == Kind::Null; }

    bool as_boolean() const;
    std::int64_t as_integer() const;
    double as_decimal() const;
    const std::string& as_text() const;
    const Sequence& as_sequence() const;
    const Record& as_record() const;

    friend bool operator==(const Value& a, const Value& b);
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

private:
    std::variant<std::monostate, bool, std::int64_t, double, std::string, Sequence, Record> data_;
};

const char* kind_name(Value::Kind kind) noexcept;

/// Sentinel for an unbounded max_occurs.
inline constexpr int kUnbounded = -1;

/// Named, namespaced, typed value slot with occurrence constraints.
/// An empty namespace means "inherit the enclosing element's namespace".
/// `skeleton` marks a WSDL-bound placeholder whose value has not been filled
/// yet; such parameters are exempt from the Null rule until filled.
struct Parameter {
    std::string name;
    Value value{};
    std::string ns{};
    bool nullable = false;
    int min_occurs = 1;
    int max_occurs = 1;
    bool skeleton = false;

    friend bool operator==(const Parameter& a, const Parameter& b);
    friend bool operator!=(const Parameter& a, const Parameter& b) { return !(a == b); }
};

/// Concrete carrier for a SOAP 1.1 fault.
struct FaultInfo {
    std::string fault_code;
    std::string fault_string;
    std::optional<std::string> detail{};

    friend bool operator==(const FaultInfo&, const FaultInfo&) = default;
};

/// Thrown where a flow or the engine's fault policy escalates a SOAP fault.
class FaultException : public Error {
public:
    explicit FaultException(FaultInfo fault)
        : Error(Errc::FaultError, fault.fault_code + ": " + fault.fault_string),
          fault_(std::move(fault)) {}

    const FaultInfo& fault() const noexcept { return fault_; }

private:
    FaultInfo fault_;
};

bool is_ncname(std::string_view name) noexcept;

/// Occurrence/nullability check. Empty result iff the Parameter invariants
/// hold; recurses into Record members (violation fields use dotted paths).
std::vector<Violation> validate_occurrence(const Parameter& p);

/// validate_occurrence plus the name rule (non-empty NCName).
std::vector<Violation> validate_parameter(const Parameter& p);

}  // namespace soapforge
