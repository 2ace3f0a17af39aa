#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "soapforge/error.hpp"

namespace soapforge::xml {

/// Attribute as written, prefix included; xmlns declarations appear here too.
struct Attr {
    std::string name;
    std::string value;

    friend bool operator==(const Attr&, const Attr&) = default;
};

/// Element tree with names as written. Character data directly inside an
/// element is concatenated into `text`; interleaving with child elements is
/// not preserved (SOAP payloads here never use mixed content).
struct Element {
    std::string name;
    std::vector<Attr> attrs;
    std::vector<Element> children;
    std::string text;

    const Attr* find_attr(std::string_view attr_name) const noexcept;

    friend bool operator==(const Element&, const Element&) = default;
};

/// Parses a single-root XML 1.0 document (UTF-8). Supports comments, CDATA,
/// the five predefined entities and numeric character references. DOCTYPE is
/// rejected. Throws Error(MalformedXml).
Element parse(std::string_view doc);

std::string serialize(const Element& root, bool xml_declaration = false);

std::string escape_text(std::string_view s);
std::string escape_attr(std::string_view s);

/// Namespace-resolved view of an element tree. `prefix:local` names are
/// split and bound via in-scope xmlns declarations; xmlns attributes are
/// dropped from `attrs`. Each element keeps its full in-scope prefix map so
/// QName-valued attribute content (e.g. WSDL element="tns:Foo") can be
/// resolved later.
struct ResolvedAttr {
    std::string ns;      // empty for unprefixed attributes
    std::string local;
    std::string value;

    friend bool operator==(const ResolvedAttr&, const ResolvedAttr&) = default;
};

struct ResolvedElement {
    std::string ns;
    std::string local;
    std::vector<ResolvedAttr> attrs;
    std::vector<ResolvedElement> children;
    std::string text;
    std::map<std::string, std::string> scope;  // prefix -> URI; "" = default ns

    const ResolvedAttr* find_attr(std::string_view ns, std::string_view local) const noexcept;
    const ResolvedElement* find_child(std::string_view ns, std::string_view local) const noexcept;

    /// Resolves "pfx:local" (or "local") against this element's scope.
    /// Throws Error(MalformedXml) on an unbound prefix.
    std::pair<std::string, std::string> resolve_qname(std::string_view qname) const;
};

/// Throws Error(MalformedXml) when a prefix is unbound.
ResolvedElement resolve(const Element& root);

/// Deterministic normal form: namespace prefixes renumbered n0, n1, ... by
/// first use in document order, attributes sorted by (namespace, local name),
/// whitespace-only text between child elements dropped, no XML declaration.
/// Infoset-equal documents map to identical text.
std::string canonical(std::string_view doc);

}  // namespace soapforge::xml
