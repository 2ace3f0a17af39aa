#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "soapforge/request.hpp"
#include "soapforge/value.hpp"

/// WSDL 1.1 subset: document/literal element declarations, one service and
/// one port (first wins, extras recorded as warnings), XSD simple types only.
namespace soapforge::wsdl {

inline constexpr std::string_view kWsdlNs = "http://schemas.xmlsoap.org/wsdl/";
inline constexpr std::string_view kSoapBindingNs = "http://schemas.xmlsoap.org/wsdl/soap/";
inline constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema";

enum class Mep { InOnly, InOut };

const char* mep_name(Mep mep) noexcept;  // "IN_ONLY" / "IN_OUT"

struct PartSig {
    std::string name;
    Value::Kind kind = Value::Kind::Text;  // Text | Integer | Decimal | Boolean
    int min_occurs = 1;
    int max_occurs = 1;
    bool nullable = false;

    friend bool operator==(const PartSig&, const PartSig&) = default;
};

struct OperationSig {
    std::string name;
    std::string soap_action;
    std::vector<PartSig> inputs;
    std::vector<PartSig> outputs;
    Mep mep = Mep::InOut;  // InOnly exactly when the operation has no wsdl:output

    friend bool operator==(const OperationSig&, const OperationSig&) = default;
};

struct ServiceDescription {
    std::string target_namespace;
    std::string service_name;
    std::string endpoint;
    std::vector<OperationSig> operations;  // document order
    std::vector<std::string> warnings;     // skipped extra services/ports/portTypes

    const OperationSig* find_operation(std::string_view name) const noexcept;
};

/// Parses the WSDL subset. Type mapping: xsd:string -> Text, xsd:int/long ->
/// Integer, xsd:float/double/decimal -> Decimal, xsd:boolean -> Boolean.
/// Throws Error(MalformedXml), Error(UnsupportedType) naming the offending
/// type, or Error(MissingEndpoint).
ServiceDescription parse_wsdl(std::string_view text);

/// Builds a Request targeted from the description: inputs become Null-valued
/// skeleton parameters (fill via Request::set_value), outputs become typed
/// decoding templates. Throws Error(UnknownOperation).
Request bind_request(const ServiceDescription& sd, const std::string& operation);

/// Checks the request's inputs against the operation's part signatures:
/// MissingPart (absent or never-filled skeleton), KindMismatch,
/// SequenceNotAllowed/SequenceLengthOutOfRange, UnknownPart for extras.
/// Throws Error(UnknownOperation) when the request's operation is not in sd.
std::vector<Violation> validate_request(const ServiceDescription& sd, const Request& request);

}  // namespace soapforge::wsdl
