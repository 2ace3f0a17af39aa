#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soapforge/request.hpp"
#include "soapforge/value.hpp"
#include "soapforge/xml.hpp"

namespace soapforge::codec {

inline constexpr std::string_view kSoapEnvelopeNs = "http://schemas.xmlsoap.org/soap/envelope/";
inline constexpr std::string_view kXsiNs = "http://www.w3.org/2001/XMLSchema-instance";

/// SOAP 1.1 envelope. `raw` is the full document text and is kept in sync by
/// the functions below; mutate header blocks through set_header_block.
///
/// Wire layout produced by build_envelope:
///   <?xml version="1.0" encoding="UTF-8"?>
///   <soapenv:Envelope xmlns:soapenv="http://schemas.xmlsoap.org/soap/envelope/">
///     <soapenv:Header>...header blocks, when any...</soapenv:Header>
///     <soapenv:Body>
///       <pfx:Operation xmlns:pfx="operation-namespace">
///         one child element per input parameter, in insertion order
///       </pfx:Operation>
///     </soapenv:Body>
///   </soapenv:Envelope>
///
/// Parameter children: an empty parameter namespace inherits the enclosing
/// element's namespace (the operation's at top level, the parent's inside a
/// Record); a non-empty one is declared locally as xmlns:q. Null values emit
/// xsi:nil="true", Sequences emit one sibling element per item under the
/// parameter's name, Records emit nested elements, Boolean emits
/// "true"/"false", Integer decimal digits, Decimal shortest round-trip text.
struct Envelope {
    struct HeaderBlock {
        std::string name;  // as written, e.g. "wsa:To"
        std::vector<xml::Attr> attrs;
        std::string text;

        friend bool operator==(const HeaderBlock&, const HeaderBlock&) = default;
    };

    std::vector<HeaderBlock> header_blocks;
    std::string body_xml;  // serialized single Body child
    std::string raw;       // full document
};

/// Serializes a request. Inputs must pass validate_occurrence (unfilled
/// required skeletons violate UnfilledSkeleton). Throws ValidationError or
/// Error(InvalidRequest) when operation/namespace are missing.
Envelope build_envelope(const Request& request,
                        const std::vector<Envelope::HeaderBlock>& header_blocks = {});

/// Adds or replaces (by name) a header block and re-serializes `raw`.
void set_header_block(Envelope& envelope, Envelope::HeaderBlock block);

std::string serialize_envelope(const std::vector<Envelope::HeaderBlock>& header_blocks,
                               std::string_view body_xml);

/// Lenient structural read of an existing envelope document (used for the
/// IN-flow message context). Matches Header/Body by local name.
Envelope envelope_from_raw(std::string_view doc);

/// Either decoded response parameters or a SOAP fault — never both.
class ResponsePayload {
public:
    static ResponsePayload params(std::vector<Parameter> params) {
        return ResponsePayload(std::move(params));
    }
    static ResponsePayload fault(FaultInfo fault) { return ResponsePayload(std::move(fault)); }

    bool is_fault() const noexcept { return std::holds_alternative<FaultInfo>(v_); }
    const std::vector<Parameter>& params() const { return std::get<std::vector<Parameter>>(v_); }
    const FaultInfo& fault() const { return std::get<FaultInfo>(v_); }

    friend bool operator==(const ResponsePayload&, const ResponsePayload&) = default;

private:
    explicit ResponsePayload(std::vector<Parameter> p) : v_(std::move(p)) {}
    explicit ResponsePayload(FaultInfo f) : v_(std::move(f)) {}
    std::variant<std::vector<Parameter>, FaultInfo> v_;
};

/// Parses a response envelope. A soapenv:Fault Body child yields
/// Fault(FaultInfo); otherwise each child of the single response wrapper
/// becomes a Parameter. Children matching an output template by name are
/// coerced to the template's value kind; untemplated leaves decode as Text
/// and untemplated branches as Records. Repeated sibling names collapse into
/// one Sequence-valued Parameter. Throws Error(MalformedXml),
/// Error(DecodeError) or Error(EmptyBody).
ResponsePayload parse_response(std::string_view doc,
                               const std::vector<Parameter>& output_templates);

/// Builds a complete fault envelope (used by the mock server).
std::string build_fault_envelope(const FaultInfo& fault);

/// Deterministic comparison form; see xml::canonical.
std::string canonical_form(std::string_view doc);

/// Decodes the children of a namespace-resolved wrapper element into
/// parameters, applying templates as in parse_response.
std::vector<Parameter> decode_params(const xml::ResolvedElement& wrapper,
                                     const std::vector<Parameter>& templates);

}  // namespace soapforge::codec
