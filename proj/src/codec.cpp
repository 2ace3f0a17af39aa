#include "soapforge/codec.hpp"

#include <algorithm>

#include "soapforge/text.hpp"

namespace soapforge::codec {

namespace {

constexpr std::string_view kEnvelopePrefix = "soapenv";

bool nil_marked(const xml::ResolvedElement& el) {
    const auto* nil = el.find_attr(kXsiNs, "nil");
    return nil != nullptr && (nil->value == "true" || nil->value == "1");
}

void fill_value(xml::Element& el, const Value& value, const std::string& enclosing_ns,
                const std::string& enclosing_prefix);

/// Emits the element(s) for one parameter; Sequence values expand into one
/// sibling per item.
void emit_parameter(std::vector<xml::Element>& out, const Parameter& p,
                    const std::string& enclosing_ns, const std::string& enclosing_prefix) {
    std::string resolved_ns = p.ns.empty() ? enclosing_ns : p.ns;
    bool own_ns = !p.ns.empty() && p.ns != enclosing_ns;
    std::string prefix = own_ns ? "q" : enclosing_prefix;

    auto make_element = [&]() {
        xml::Element el;
        el.name = prefix + ":" + p.name;
        if (own_ns) el.attrs.push_back({"xmlns:" + prefix, p.ns});
        return el;
    };

    if (p.value.kind() == Value::Kind::Sequence) {
        for (const auto& item : p.value.as_sequence()) {
            xml::Element el = make_element();
            fill_value(el, item, resolved_ns, prefix);
            out.push_back(std::move(el));
        }
        return;
    }
    // A Null in a non-nullable slot is only valid with min_occurs = 0: the
    // element is simply absent. xsi:nil is reserved for nullable parameters.
    if (p.value.is_null() && !p.nullable) return;
    xml::Element el = make_element();
    fill_value(el, p.value, resolved_ns, prefix);
    out.push_back(std::move(el));
}

void fill_value(xml::Element& el, const Value& value, const std::string& enclosing_ns,
                const std::string& enclosing_prefix) {
    switch (value.kind()) {
        case Value::Kind::Null:
            el.attrs.push_back({"xmlns:xsi", std::string(kXsiNs)});
            el.attrs.push_back({"xsi:nil", "true"});
            break;
        case Value::Kind::Boolean:
            el.text = value.as_boolean() ? "true" : "false";
            break;
        case Value::Kind::Integer:
            el.text = text::format_integer(value.as_integer());
            break;
        case Value::Kind::Decimal:
            el.text = text::format_decimal(value.as_decimal());
            break;
        case Value::Kind::Text:
            el.text = value.as_text();
            break;
        case Value::Kind::Record:
            for (const auto& member : value.as_record()) {
                emit_parameter(el.children, member, enclosing_ns, enclosing_prefix);
            }
            break;
        case Value::Kind::Sequence:
            // Rejected by validation; a sequence never reaches fill_value.
            throw Error(Errc::InvalidParameter, "sequence item may not itself be a Sequence");
    }
}

void serialize_header_block(const Envelope::HeaderBlock& block, std::string& out) {
    out += '<';
    out += block.name;
    for (const auto& attr : block.attrs) {
        out += ' ';
        out += attr.name;
        out += "=\"";
        out += xml::escape_attr(attr.value);
        out += '"';
    }
    if (block.text.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    out += xml::escape_text(block.text);
    out += "</";
    out += block.name;
    out += '>';
}

std::string local_of(std::string_view name) {
    auto colon = name.find(':');
    return std::string(colon == std::string_view::npos ? name : name.substr(colon + 1));
}

struct SiblingGroup {
    std::string ns;
    std::string local;
    std::vector<const xml::ResolvedElement*> elements;
};

std::vector<SiblingGroup> group_children(const xml::ResolvedElement& el) {
    std::vector<SiblingGroup> groups;
    for (const auto& child : el.children) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const SiblingGroup& g) {
            return g.ns == child.ns && g.local == child.local;
        });
        if (it == groups.end()) {
            groups.push_back({child.ns, child.local, {&child}});
        } else {
            it->elements.push_back(&child);
        }
    }
    return groups;
}

std::vector<Parameter> decode_members(const xml::ResolvedElement& el,
                                      const std::vector<Parameter>& templates);

Value decode_value(const xml::ResolvedElement& el, const Value* expected,
                   const std::string& param_name) {
    if (nil_marked(el)) return Value::null();

    // A sequence-typed template decodes item-wise; use its first item's shape.
    if (expected != nullptr && expected->kind() == Value::Kind::Sequence) {
        const auto& items = expected->as_sequence();
        expected = items.empty() ? nullptr : &items.front();
    }

    Value::Kind want = expected != nullptr ? expected->kind() : Value::Kind::Null;
    if (expected != nullptr && want != Value::Kind::Null) {
        switch (want) {
            case Value::Kind::Record:
                if (!el.children.empty() || text::trim(el.text).empty()) {
                    return Value::record(decode_members(el, expected->as_record()));
                }
                throw Error(Errc::DecodeError, "parameter '" + param_name +
                                                   "': expected nested elements, got text '" +
                                                   el.text + "'");
            case Value::Kind::Text:
                return Value::text(el.text);
            case Value::Kind::Integer: {
                auto v = text::parse_integer(text::trim(el.text));
                if (!v) {
                    throw Error(Errc::DecodeError, "parameter '" + param_name +
                                                       "': cannot decode '" + el.text +
                                                       "' as Integer");
                }
                return Value::integer(*v);
            }
            case Value::Kind::Decimal: {
                auto v = text::parse_decimal(text::trim(el.text));
                if (!v) {
                    throw Error(Errc::DecodeError, "parameter '" + param_name +
                                                       "': cannot decode '" + el.text +
                                                       "' as Decimal");
                }
                return Value::decimal(*v);
            }
            case Value::Kind::Boolean: {
                auto v = text::parse_boolean(text::trim(el.text));
                if (!v) {
                    throw Error(Errc::DecodeError, "parameter '" + param_name +
                                                       "': cannot decode '" + el.text +
                                                       "' as Boolean");
                }
                return Value::boolean(*v);
            }
            default:
                break;
        }
    }

    // Untemplated: branches decode as Records, leaves as Text.
    if (!el.children.empty()) return Value::record(decode_members(el, {}));
    return Value::text(el.text);
}

std::vector<Parameter> decode_members(const xml::ResolvedElement& el,
                                      const std::vector<Parameter>& templates) {
    std::vector<Parameter> out;
    for (const auto& group : group_children(el)) {
        const Parameter* tmpl = nullptr;
        for (const auto& t : templates) {
            if (t.name == group.local) {
                tmpl = &t;
                break;
            }
        }
        const Value* expected = tmpl != nullptr ? &tmpl->value : nullptr;
        bool sequence_typed =
            tmpl != nullptr && (tmpl->value.kind() == Value::Kind::Sequence ||
                                tmpl->max_occurs == kUnbounded || tmpl->max_occurs > 1);

        Parameter p;
        p.name = group.local;
        p.ns = group.ns;
        if (group.elements.size() > 1 || sequence_typed) {
            Value::Sequence items;
            items.reserve(group.elements.size());
            for (const auto* child : group.elements) {
                items.push_back(decode_value(*child, expected, group.local));
            }
            p.value = Value::sequence(std::move(items));
            p.min_occurs = 0;
            p.max_occurs = kUnbounded;
        } else {
            p.value = decode_value(*group.elements.front(), expected, group.local);
            if (p.value.is_null()) p.nullable = true;
        }
        out.push_back(std::move(p));
    }
    return out;
}

const xml::Element* find_child_by_local(const xml::Element& el, std::string_view local) {
    for (const auto& child : el.children) {
        if (local_of(child.name) == local) return &child;
    }
    return nullptr;
}

}  // namespace

Envelope build_envelope(const Request& request,
                        const std::vector<Envelope::HeaderBlock>& header_blocks) {
    if (request.operation().empty()) throw Error(Errc::InvalidRequest, "request has no operation");
    if (request.ns().empty()) throw Error(Errc::InvalidRequest, "request has no namespace");

    std::vector<Violation> violations;
    for (const auto& p : request.inputs()) {
        auto v = validate_occurrence(p);
        violations.insert(violations.end(), v.begin(), v.end());
        if (p.skeleton && p.value.is_null() && !p.nullable && p.min_occurs != 0) {
            violations.push_back({Violation::Clause::UnfilledSkeleton, p.name,
                                  "bound skeleton parameter was never filled"});
        }
    }
    if (!violations.empty()) throw ValidationError(std::move(violations));

    xml::Element wrapper;
    wrapper.name = request.prefix() + ":" + request.operation();
    wrapper.attrs.push_back({"xmlns:" + request.prefix(), request.ns()});
    for (const auto& p : request.inputs()) {
        emit_parameter(wrapper.children, p, request.ns(), request.prefix());
    }

    Envelope envelope;
    envelope.header_blocks = header_blocks;
    envelope.body_xml = xml::serialize(wrapper);
    envelope.raw = serialize_envelope(envelope.header_blocks, envelope.body_xml);
    return envelope;
}

std::string serialize_envelope(const std::vector<Envelope::HeaderBlock>& header_blocks,
                               std::string_view body_xml) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += '<';
    out += kEnvelopePrefix;
    out += ":Envelope xmlns:";
    out += kEnvelopePrefix;
    out += "=\"";
    out += kSoapEnvelopeNs;
    out += "\">";
    if (!header_blocks.empty()) {
        out += '<';
        out += kEnvelopePrefix;
        out += ":Header>";
        for (const auto& block : header_blocks) serialize_header_block(block, out);
        out += "</";
        out += kEnvelopePrefix;
        out += ":Header>";
    }
    out += '<';
    out += kEnvelopePrefix;
    out += ":Body>";
    out += body_xml;
    out += "</";
    out += kEnvelopePrefix;
    out += ":Body></";
    out += kEnvelopePrefix;
    out += ":Envelope>";
    return out;
}

void set_header_block(Envelope& envelope, Envelope::HeaderBlock block) {
    auto it = std::find_if(envelope.header_blocks.begin(), envelope.header_blocks.end(),
                           [&](const Envelope::HeaderBlock& b) { return b.name == block.name; });
    if (it != envelope.header_blocks.end()) {
        *it = std::move(block);
    } else {
        envelope.header_blocks.push_back(std::move(block));
    }
    envelope.raw = serialize_envelope(envelope.header_blocks, envelope.body_xml);
}

Envelope envelope_from_raw(std::string_view doc) {
    xml::Element root = xml::parse(doc);
    Envelope envelope;
    envelope.raw = std::string(doc);
    if (const xml::Element* header = find_child_by_local(root, "Header")) {
        for (const auto& block : header->children) {
            envelope.header_blocks.push_back({block.name, block.attrs, block.text});
        }
    }
    if (const xml::Element* body = find_child_by_local(root, "Body")) {
        if (!body->children.empty()) envelope.body_xml = xml::serialize(body->children.front());
    }
    return envelope;
}

ResponsePayload parse_response(std::string_view doc,
                               const std::vector<Parameter>& output_templates) {
    xml::Element raw_root = xml::parse(doc);
    xml::ResolvedElement root = xml::resolve(raw_root);
    if (root.ns != kSoapEnvelopeNs || root.local != "Envelope") {
        throw Error(Errc::MalformedXml, "document element is not a SOAP 1.1 Envelope");
    }

    const xml::ResolvedElement* body = nullptr;
    std::size_t body_index = 0;
    for (std::size_t i = 0; i < root.children.size(); ++i) {
        if (root.children[i].ns == kSoapEnvelopeNs && root.children[i].local == "Body") {
            body = &root.children[i];
            body_index = i;
            break;
        }
    }
    if (body == nullptr || body->children.empty()) {
        throw Error(Errc::EmptyBody, "envelope has no Body content");
    }
    if (body->children.size() > 1) {
        throw Error(Errc::MalformedXml, "Body has more than one child element");
    }

    const xml::ResolvedElement& child = body->children.front();
    if (child.ns == kSoapEnvelopeNs && child.local == "Fault") {
        FaultInfo fault;
        const xml::Element& raw_fault = raw_root.children[body_index].children.front();
        for (std::size_t i = 0; i < child.children.size(); ++i) {
            const auto& part = child.children[i];
            if (part.local == "faultcode") {
                fault.fault_code = std::string(text::trim(part.text));
            } else if (part.local == "faultstring") {
                fault.fault_string = std::string(text::trim(part.text));
            } else if (part.local == "detail") {
                const xml::Element& raw_detail = raw_fault.children[i];
                std::string inner = raw_detail.text;
                for (const auto& d : raw_detail.children) inner += xml::serialize(d);
                fault.detail = std::move(inner);
            }
        }
        if (fault.fault_code.empty() || fault.fault_string.empty()) {
            throw Error(Errc::MalformedXml, "Fault is missing faultcode or faultstring");
        }
        return ResponsePayload::fault(std::move(fault));
    }

    return ResponsePayload::params(decode_members(child, output_templates));
}

std::vector<Parameter> decode_params(const xml::ResolvedElement& wrapper,
                                     const std::vector<Parameter>& templates) {
    return decode_members(wrapper, templates);
}

std::string build_fault_envelope(const FaultInfo& fault) {
    std::string body;
    body += '<';
    body += kEnvelopePrefix;
    body += ":Fault><faultcode>";
    body += xml::escape_text(fault.fault_code);
    body += "</faultcode><faultstring>";
    body += xml::escape_text(fault.fault_string);
    body += "</faultstring>";
    if (fault.detail.has_value()) {
        body += "<detail>";
        body += *fault.detail;  // raw XML, inserted verbatim
        body += "</detail>";
    }
    body += "</";
    body += kEnvelopePrefix;
    body += ":Fault>";
    return serialize_envelope({}, body);
}

std::string canonical_form(std::string_view doc) { return xml::canonical(doc); }

}  // namespace soapforge::codec
