#include "soapforge/wsdl.hpp"

#include <map>
#include <utility>

#include "soapforge/error.hpp"
#include "soapforge/text.hpp"
#include "soapforge/url.hpp"
#include "soapforge/xml.hpp"

namespace soapforge::wsdl {

namespace {

const std::string* attr_of(const xml::ResolvedElement& el, std::string_view local) {
    const auto* a = el.find_attr("", local);
    return a != nullptr ? &a->value : nullptr;
}

Value::Kind map_xsd_type(const xml::ResolvedElement& el, const std::string& qname) {
    auto [ns, local] = el.resolve_qname(qname);
    if (ns != kXsdNs) {
        throw Error(Errc::UnsupportedType, "'" + qname + "' is not an XSD simple type");
    }
    if (local == "string") return Value::Kind::Text;
    if (local == "int" || local == "long") return Value::Kind::Integer;
    if (local == "float" || local == "double" || local == "decimal") return Value::Kind::Decimal;
    if (local == "boolean") return Value::Kind::Boolean;
    throw Error(Errc::UnsupportedType, local);
}

int parse_occurs(const std::string& text, std::string_view attr, bool allow_unbounded) {
    if (allow_unbounded && text == "unbounded") return kUnbounded;
    auto v = text::parse_integer(text);
    if (!v || *v < 0 || *v > 1'000'000) {
        throw Error(Errc::MalformedXml,
                    std::string(attr) + "=\"" + text + "\" is not a valid occurrence bound");
    }
    return static_cast<int>(*v);
}

/// Parses one xsd:element wrapper declaration into its child part list.
std::vector<PartSig> parse_wrapper_parts(const xml::ResolvedElement& decl) {
    std::vector<PartSig> parts;
    const auto* complex = decl.find_child(kXsdNs, "complexType");
    if (complex == nullptr) return parts;
    const auto* sequence = complex->find_child(kXsdNs, "sequence");
    if (sequence == nullptr) return parts;
    for (const auto& child : sequence->children) {
        if (child.ns != kXsdNs || child.local != "element") continue;
        PartSig part;
        const auto* name = attr_of(child, "name");
        if (name == nullptr) {
            throw Error(Errc::MalformedXml, "schema element is missing a name attribute");
        }
        part.name = *name;
        const auto* type = attr_of(child, "type");
        if (type == nullptr) {
            throw Error(Errc::MalformedXml,
                        "schema element '" + part.name + "' is missing a type attribute");
        }
        part.kind = map_xsd_type(child, *type);
        if (const auto* v = attr_of(child, "minOccurs")) {
            part.min_occurs = parse_occurs(*v, "minOccurs", false);
        }
        if (const auto* v = attr_of(child, "maxOccurs")) {
            part.max_occurs = parse_occurs(*v, "maxOccurs", true);
        }
        if (const auto* v = attr_of(child, "nillable")) part.nullable = *v == "true";
        parts.push_back(std::move(part));
    }
    return parts;
}

}  // namespace

const char* mep_name(Mep mep) noexcept { return mep == Mep::InOnly ? "IN_ONLY" : "IN_OUT"; }

const OperationSig* ServiceDescription::find_operation(std::string_view name) const noexcept {
    for (const auto& op : operations) {
        if (op.name == name) return &op;
    }
    return nullptr;
}

ServiceDescription parse_wsdl(std::string_view text) {
    xml::ResolvedElement root = xml::resolve(xml::parse(text));
    if (root.ns != kWsdlNs || root.local != "definitions") {
        throw Error(Errc::MalformedXml, "document element is not wsdl:definitions");
    }

    ServiceDescription sd;
    if (const auto* tns = attr_of(root, "targetNamespace")) sd.target_namespace = *tns;

    // Schema wrapper-element declarations: (namespace, name) -> part list.
    std::map<std::pair<std::string, std::string>, std::vector<PartSig>> elements;
    for (const auto& types : root.children) {
        if (types.ns != kWsdlNs || types.local != "types") continue;
        for (const auto& schema : types.children) {
            if (schema.ns != kXsdNs || schema.local != "schema") continue;
            std::string schema_tns;
            if (const auto* v = attr_of(schema, "targetNamespace")) schema_tns = *v;
            for (const auto& decl : schema.children) {
                if (decl.ns != kXsdNs || decl.local != "element") continue;
                const auto* name = attr_of(decl, "name");
                if (name == nullptr) {
                    throw Error(Errc::MalformedXml, "schema element is missing a name attribute");
                }
                elements[{schema_tns, *name}] = parse_wrapper_parts(decl);
            }
        }
    }

    // Messages: local name -> flattened part list.
    std::map<std::string, std::vector<PartSig>> messages;
    for (const auto& message : root.children) {
        if (message.ns != kWsdlNs || message.local != "message") continue;
        const auto* name = attr_of(message, "name");
        if (name == nullptr) throw Error(Errc::MalformedXml, "wsdl:message is missing a name");
        std::vector<PartSig> parts;
        for (const auto& part : message.children) {
            if (part.ns != kWsdlNs || part.local != "part") continue;
            if (const auto* element = attr_of(part, "element")) {
                auto key = part.resolve_qname(*element);
                auto it = elements.find(key);
                if (it == elements.end()) {
                    throw Error(Errc::MalformedXml, "message '" + *name +
                                                        "' references undeclared element '" +
                                                        *element + "'");
                }
                parts.insert(parts.end(), it->second.begin(), it->second.end());
            } else if (const auto* type = attr_of(part, "type")) {
                const auto* part_name = attr_of(part, "name");
                if (part_name == nullptr) {
                    throw Error(Errc::MalformedXml, "wsdl:part is missing a name");
                }
                parts.push_back({*part_name, map_xsd_type(part, *type), 1, 1, false});
            } else {
                throw Error(Errc::MalformedXml,
                            "wsdl:part in message '" + *name + "' has neither element nor type");
            }
        }
        messages[*name] = std::move(parts);
    }

    auto message_parts = [&](const xml::ResolvedElement& io,
                             const std::string& op_name) -> std::vector<PartSig> {
        const auto* message = attr_of(io, "message");
        if (message == nullptr) {
            throw Error(Errc::MalformedXml,
                        "operation '" + op_name + "' input/output is missing a message");
        }
        auto [ns, local] = io.resolve_qname(*message);
        (void)ns;  // message QNames live in the target namespace; match by local name
        auto it = messages.find(local);
        if (it == messages.end()) {
            throw Error(Errc::MalformedXml,
                        "operation '" + op_name + "' references unknown message '" + *message + "'");
        }
        return it->second;
    };

    // First portType wins.
    const xml::ResolvedElement* port_type = nullptr;
    for (const auto& child : root.children) {
        if (child.ns != kWsdlNs || child.local != "portType") continue;
        if (port_type == nullptr) {
            port_type = &child;
        } else {
            sd.warnings.push_back("multiple portTypes; first one used");
        }
    }
    if (port_type == nullptr) throw Error(Errc::MalformedXml, "WSDL has no portType");
    for (const auto& op_el : port_type->children) {
        if (op_el.ns != kWsdlNs || op_el.local != "operation") continue;
        const auto* name = attr_of(op_el, "name");
        if (name == nullptr) throw Error(Errc::MalformedXml, "wsdl:operation is missing a name");
        if (sd.find_operation(*name) != nullptr) {
            throw Error(Errc::DuplicateName, "duplicate operation '" + *name + "'");
        }
        OperationSig op;
        op.name = *name;
        const auto* input = op_el.find_child(kWsdlNs, "input");
        if (input == nullptr) {
            throw Error(Errc::MalformedXml, "operation '" + op.name + "' has no input");
        }
        op.inputs = message_parts(*input, op.name);
        if (const auto* output = op_el.find_child(kWsdlNs, "output")) {
            op.outputs = message_parts(*output, op.name);
            op.mep = Mep::InOut;
        } else {
            op.mep = Mep::InOnly;
        }
        sd.operations.push_back(std::move(op));
    }

    // soapAction from the first binding that names the operation.
    for (const auto& binding : root.children) {
        if (binding.ns != kWsdlNs || binding.local != "binding") continue;
        for (const auto& op_el : binding.children) {
            if (op_el.ns != kWsdlNs || op_el.local != "operation") continue;
            const auto* name = attr_of(op_el, "name");
            const auto* soap_op = op_el.find_child(kSoapBindingNs, "operation");
            if (name == nullptr || soap_op == nullptr) continue;
            const auto* action = attr_of(*soap_op, "soapAction");
            if (action == nullptr) continue;
            for (auto& op : sd.operations) {
                if (op.name == *name && op.soap_action.empty()) op.soap_action = *action;
            }
        }
    }

    // First service / first port / soap:address.
    const xml::ResolvedElement* service = nullptr;
    for (const auto& child : root.children) {
        if (child.ns != kWsdlNs || child.local != "service") continue;
        if (service == nullptr) {
            service = &child;
        } else {
            sd.warnings.push_back("multiple services; first one used");
        }
    }
    if (service == nullptr) throw Error(Errc::MissingEndpoint, "WSDL has no service");
    if (const auto* name = attr_of(*service, "name")) sd.service_name = *name;
    const xml::ResolvedElement* port = nullptr;
    for (const auto& child : service->children) {
        if (child.ns != kWsdlNs || child.local != "port") continue;
        if (port == nullptr) {
            port = &child;
        } else {
            sd.warnings.push_back("multiple ports; first one used");
        }
    }
    if (port == nullptr) throw Error(Errc::MissingEndpoint, "service has no port");
    const auto* address = port->find_child(kSoapBindingNs, "address");
    const std::string* location = address != nullptr ? attr_of(*address, "location") : nullptr;
    if (location == nullptr || location->empty()) {
        throw Error(Errc::MissingEndpoint, "port has no soap:address location");
    }
    if (!parse_url(*location)) {
        throw Error(Errc::MissingEndpoint,
                    "soap:address location '" + *location + "' is not an absolute URL");
    }
    sd.endpoint = *location;
    return sd;
}

namespace {

Value default_for(Value::Kind kind) {
    switch (kind) {
        case Value::Kind::Integer:
            return Value::integer(0);
        case Value::Kind::Decimal:
            return Value::decimal(0.0);
        case Value::Kind::Boolean:
            return Value::boolean(false);
        default:
            return Value::text("");
    }
}

void check_kind(const PartSig& part, const Parameter& param, std::vector<Violation>& out) {
    const Value& v = param.value;
    switch (v.kind()) {
        case Value::Kind::Null:
            if (!part.nullable && part.min_occurs > 0) {
                out.push_back({Violation::Clause::NullNotAllowed, part.name,
                               "part does not admit a null value"});
            }
            return;
        case Value::Kind::Sequence: {
            if (part.max_occurs != kUnbounded && part.max_occurs <= 1) {
                out.push_back({Violation::Clause::SequenceNotAllowed, part.name,
                               "part occurs at most once"});
                return;
            }
            int len = static_cast<int>(v.as_sequence().size());
            if (len < part.min_occurs ||
                (part.max_occurs != kUnbounded && len > part.max_occurs)) {
                out.push_back({Violation::Clause::SequenceLengthOutOfRange, part.name,
                               "sequence length " + std::to_string(len) +
                                   " is outside the part's occurrence range"});
            }
            for (const auto& item : v.as_sequence()) {
                if (item.kind() == Value::Kind::Null && part.nullable) continue;
                if (item.kind() != part.kind) {
                    out.push_back({Violation::Clause::KindMismatch, part.name,
                                   std::string("sequence item: expected ") + kind_name(part.kind) +
                                       ", got " + kind_name(item.kind())});
                    return;
                }
            }
            return;
        }
        default:
            if (v.kind() != part.kind) {
                out.push_back({Violation::Clause::KindMismatch, part.name,
                               std::string("expected ") + kind_name(part.kind) + ", got " +
                                   kind_name(v.kind())});
            }
            return;
    }
}

}  // namespace

Request bind_request(const ServiceDescription& sd, const std::string& operation) {
    const OperationSig* op = sd.find_operation(operation);
    if (op == nullptr) {
        throw Error(Errc::UnknownOperation,
                    "'" + operation + "' is not an operation of service '" + sd.service_name + "'");
    }
    Request request;
    request.set_target(op->name, sd.target_namespace, "p", op->soap_action, sd.endpoint);
    for (const auto& part : op->inputs) {
        Parameter p;
        p.name = part.name;
        p.nullable = part.nullable;
        p.min_occurs = part.min_occurs;
        p.max_occurs = part.max_occurs;
        p.skeleton = true;
        request.add_parameter(Request::Collection::Input, std::move(p));
    }
    for (const auto& part : op->outputs) {
        Parameter t;
        t.name = part.name;
        t.value = default_for(part.kind);
        t.nullable = part.nullable;
        t.min_occurs = part.min_occurs;
        t.max_occurs = part.max_occurs;
        request.add_parameter(Request::Collection::Output, std::move(t));
    }
    return request;
}

std::vector<Violation> validate_request(const ServiceDescription& sd, const Request& request) {
    const OperationSig* op = sd.find_operation(request.operation());
    if (op == nullptr) {
        throw Error(Errc::UnknownOperation,
                    "request targets unknown operation '" + request.operation() + "'");
    }
    std::vector<Violation> out;
    for (const auto& part : op->inputs) {
        const Parameter* param = nullptr;
        for (const auto& p : request.inputs()) {
            if (p.name == part.name) {
                param = &p;
                break;
            }
        }
        if (param == nullptr) {
            if (part.min_occurs > 0) {
                out.push_back(
                    {Violation::Clause::MissingPart, part.name, "required part is missing"});
            }
            continue;
        }
        if (param->skeleton && param->value.is_null()) {
            if (part.min_occurs > 0 && !part.nullable) {
                out.push_back({Violation::Clause::MissingPart, part.name,
                               "part was bound but never filled"});
            }
            continue;
        }
        check_kind(part, *param, out);
    }
    for (const auto& p : request.inputs()) {
        bool declared = false;
        for (const auto& part : op->inputs) {
            if (part.name == p.name) {
                declared = true;
                break;
            }
        }
        if (!declared) {
            out.push_back({Violation::Clause::UnknownPart, p.name,
                           "operation declares no such part"});
        }
    }
    return out;
}

}  // namespace soapforge::wsdl
