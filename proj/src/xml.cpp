#include "soapforge/xml.hpp"

#include <algorithm>
#include <cstdint>

namespace soapforge::xml {

namespace {

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
    throw Error(Errc::MalformedXml, what + " (at offset " + std::to_string(pos) + ")");
}

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(unsigned char c) noexcept {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) noexcept {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Parser {
public:
    explicit Parser(std::string_view doc) : doc_(doc) {}

    Element parse_document() {
        skip_prolog();
        Element root = parse_element();
        skip_misc();
        if (pos_ != doc_.size()) fail(pos_, "content after document element");
        return root;
    }

private:
    std::string_view doc_;
    std::size_t pos_ = 0;

    bool eof() const noexcept { return pos_ >= doc_.size(); }
    char peek() const noexcept { return doc_[pos_]; }
    bool starts_with(std::string_view s) const noexcept { return doc_.substr(pos_, s.size()) == s; }

    void expect(char c) {
        if (eof() || peek() != c) fail(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_ws() {
        while (!eof() && is_space(peek())) ++pos_;
    }

    void skip_comment() {
        pos_ += 4;  // "<!--"
        auto end = doc_.find("-->", pos_);
        if (end == std::string_view::npos) fail(pos_, "unterminated comment");
        pos_ = end + 3;
    }

    void skip_pi() {
        pos_ += 2;  // "<?"
        auto end = doc_.find("?>", pos_);
        if (end == std::string_view::npos) fail(pos_, "unterminated processing instruction");
        pos_ = end + 2;
    }

    void skip_prolog() {
        skip_ws();
        if (starts_with("<?xml")) skip_pi();
        skip_misc();
        if (starts_with("<!DOCTYPE")) fail(pos_, "DOCTYPE is not supported");
        if (eof() || peek() != '<') fail(pos_, "expected document element");
    }

    void skip_misc() {
        while (true) {
            skip_ws();
            if (starts_with("<!--")) {
                skip_comment();
            } else if (starts_with("<?")) {
                skip_pi();
            } else {
                break;
            }
        }
    }

    std::string read_name() {
        if (eof() || !is_name_start(static_cast<unsigned char>(peek()))) {
            fail(pos_, "expected a name");
        }
        std::size_t start = pos_;
        while (!eof() && is_name_char(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(doc_.substr(start, pos_ - start));
    }

    void decode_reference(std::string& out) {
        std::size_t start = pos_;
        ++pos_;  // '&'
        auto end = doc_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 10) fail(start, "bad entity reference");
        std::string_view ent = doc_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (ent == "amp") {
            out += '&';
        } else if (ent == "lt") {
            out += '<';
        } else if (ent == "gt") {
            out += '>';
        } else if (ent == "quot") {
            out += '"';
        } else if (ent == "apos") {
            out += '\'';
        } else if (!ent.empty() && ent[0] == '#') {
            std::uint32_t cp = 0;
            bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
            std::string_view digits = ent.substr(hex ? 2 : 1);
            if (digits.empty()) fail(start, "bad character reference");
            for (char c : digits) {
                std::uint32_t d;
                if (c >= '0' && c <= '9') {
                    d = static_cast<std::uint32_t>(c - '0');
                } else if (hex && c >= 'a' && c <= 'f') {
                    d = static_cast<std::uint32_t>(c - 'a' + 10);
                } else if (hex && c >= 'A' && c <= 'F') {
                    d = static_cast<std::uint32_t>(c - 'A' + 10);
                } else {
                    fail(start, "bad character reference");
                }
                cp = cp * (hex ? 16 : 10) + d;
                if (cp > 0x10FFFF) fail(start, "character reference out of range");
            }
            append_utf8(out, cp);
        } else {
            fail(start, "unknown entity '" + std::string(ent) + "'");
        }
    }

    std::string read_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail(pos_, "expected quoted attribute value");
        char quote = peek();
        ++pos_;
        std::string out;
        while (true) {
            if (eof()) fail(pos_, "unterminated attribute value");
            char c = peek();
            if (c == quote) {
                ++pos_;
                return out;
            }
            if (c == '<') fail(pos_, "'<' in attribute value");
            if (c == '&') {
                decode_reference(out);
            } else {
                out += c;
                ++pos_;
            }
        }
    }

    Element parse_element() {
        expect('<');
        Element el;
        el.name = read_name();
        if (el.name.front() == ':' || el.name.back() == ':') fail(pos_, "bad name '" + el.name + "'");

        while (true) {
            bool had_ws = !eof() && is_space(peek());
            skip_ws();
            if (eof()) fail(pos_, "unterminated start tag");
            if (peek() == '>') {
                ++pos_;
                parse_content(el);
                return el;
            }
            if (starts_with("/>")) {
                pos_ += 2;
                return el;
            }
            if (!had_ws) fail(pos_, "expected whitespace before attribute");
            Attr attr;
            attr.name = read_name();
            skip_ws();
            expect('=');
            skip_ws();
            attr.value = read_attr_value();
            for (const auto& existing : el.attrs) {
                if (existing.name == attr.name) {
                    fail(pos_, "duplicate attribute '" + attr.name + "'");
                }
            }
            el.attrs.push_back(std::move(attr));
        }
    }

    void parse_content(Element& el) {
        while (true) {
            if (eof()) fail(pos_, "unterminated element '" + el.name + "'");
            char c = peek();
            if (c == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    std::string name = read_name();
                    if (name != el.name) {
                        fail(pos_, "mismatched end tag '" + name + "' for '" + el.name + "'");
                    }
                    skip_ws();
                    expect('>');
                    return;
                }
                if (starts_with("<!--")) {
                    skip_comment();
                } else if (starts_with("<![CDATA[")) {
                    pos_ += 9;
                    auto end = doc_.find("]]>", pos_);
                    if (end == std::string_view::npos) fail(pos_, "unterminated CDATA");
                    el.text.append(doc_.substr(pos_, end - pos_));
                    pos_ = end + 3;
                } else if (starts_with("<?")) {
                    skip_pi();
                } else {
                    el.children.push_back(parse_element());
                }
            } else if (c == '&') {
                decode_reference(el.text);
            } else {
                el.text += c;
                ++pos_;
            }
        }
    }
};

void serialize_into(const Element& el, std::string& out) {
    out += '<';
    out += el.name;
    for (const auto& attr : el.attrs) {
        out += ' ';
        out += attr.name;
        out += "=\"";
        out += escape_attr(attr.value);
        out += '"';
    }
    if (el.children.empty() && el.text.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    out += escape_text(el.text);
    for (const auto& child : el.children) serialize_into(child, out);
    out += "</";
    out += el.name;
    out += '>';
}

std::pair<std::string_view, std::string_view> split_qname(std::string_view name) {
    auto colon = name.find(':');
    if (colon == std::string_view::npos) return {std::string_view{}, name};
    return {name.substr(0, colon), name.substr(colon + 1)};
}

ResolvedElement resolve_rec(const Element& el, const std::map<std::string, std::string>& parent_scope) {
    ResolvedElement out;
    out.scope = parent_scope;

    for (const auto& attr : el.attrs) {
        if (attr.name == "xmlns") {
            out.scope[""] = attr.value;
        } else if (attr.name.starts_with("xmlns:")) {
            std::string prefix = attr.name.substr(6);
            if (prefix.empty()) throw Error(Errc::MalformedXml, "empty xmlns prefix");
            out.scope[prefix] = attr.value;
        }
    }

    auto [prefix, local] = split_qname(el.name);
    out.local = std::string(local);
    if (prefix.empty()) {
        auto it = out.scope.find("");
        out.ns = it != out.scope.end() ? it->second : "";
    } else {
        auto it = out.scope.find(std::string(prefix));
        if (it == out.scope.end()) {
            throw Error(Errc::MalformedXml, "unbound namespace prefix '" + std::string(prefix) + "'");
        }
        out.ns = it->second;
    }

    for (const auto& attr : el.attrs) {
        if (attr.name == "xmlns" || attr.name.starts_with("xmlns:")) continue;
        auto [aprefix, alocal] = split_qname(attr.name);
        ResolvedAttr ra;
        ra.local = std::string(alocal);
        ra.value = attr.value;
        if (!aprefix.empty()) {
            auto it = out.scope.find(std::string(aprefix));
            if (it == out.scope.end()) {
                throw Error(Errc::MalformedXml,
                            "unbound namespace prefix '" + std::string(aprefix) + "'");
            }
            ra.ns = it->second;
        }
        out.attrs.push_back(std::move(ra));
    }

    out.text = el.text;
    out.children.reserve(el.children.size());
    for (const auto& child : el.children) out.children.push_back(resolve_rec(child, out.scope));
    return out;
}

bool whitespace_only(std::string_view s) noexcept {
    return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

class Canonicalizer {
public:
    std::string run(const ResolvedElement& root) {
        assign_prefixes(root);
        std::string out;
        emit(root, out, /*is_root=*/true);
        return out;
    }

private:
    std::vector<std::string> uris_;  // index = prefix number

    std::string prefix_for(const std::string& uri) const {
        auto it = std::find(uris_.begin(), uris_.end(), uri);
        return "n" + std::to_string(it - uris_.begin());
    }

    void note_uri(const std::string& uri) {
        if (uri.empty()) return;
        if (std::find(uris_.begin(), uris_.end(), uri) == uris_.end()) uris_.push_back(uri);
    }

    static std::vector<const ResolvedAttr*> sorted_attrs(const ResolvedElement& el) {
        std::vector<const ResolvedAttr*> attrs;
        attrs.reserve(el.attrs.size());
        for (const auto& a : el.attrs) attrs.push_back(&a);
        std::sort(attrs.begin(), attrs.end(), [](const ResolvedAttr* a, const ResolvedAttr* b) {
            return std::tie(a->ns, a->local) < std::tie(b->ns, b->local);
        });
        return attrs;
    }

    void assign_prefixes(const ResolvedElement& el) {
        note_uri(el.ns);
        for (const auto* attr : sorted_attrs(el)) note_uri(attr->ns);
        for (const auto& child : el.children) assign_prefixes(child);
    }

    static std::string escape_canonical_text(std::string_view s) {
        std::string out;
        out.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '\r': out += "&#13;"; break;
                default: out += c;
            }
        }
        return out;
    }

    static std::string escape_canonical_attr(std::string_view s) {
        std::string out;
        out.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case '&': out += "&amp;"; break;
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '"': out += "&quot;"; break;
                case '\n': out += "&#10;"; break;
                case '\r': out += "&#13;"; break;
                case '\t': out += "&#9;"; break;
                default: out += c;
            }
        }
        return out;
    }

    void emit(const ResolvedElement& el, std::string& out, bool is_root) {
        std::string tag = el.ns.empty() ? el.local : prefix_for(el.ns) + ":" + el.local;
        out += '<';
        out += tag;
        if (is_root) {
            for (std::size_t i = 0; i < uris_.size(); ++i) {
                out += " xmlns:n" + std::to_string(i) + "=\"" + escape_canonical_attr(uris_[i]) + '"';
            }
        }
        for (const auto* attr : sorted_attrs(el)) {
            out += ' ';
            if (!attr->ns.empty()) {
                out += prefix_for(attr->ns);
                out += ':';
            }
            out += attr->local;
            out += "=\"";
            out += escape_canonical_attr(attr->value);
            out += '"';
        }

        bool keep_text = !el.text.empty() && !(whitespace_only(el.text) && !el.children.empty());
        if (el.children.empty() && !keep_text) {
            out += "/>";
            return;
        }
        out += '>';
        if (keep_text) out += escape_canonical_text(el.text);
        for (const auto& child : el.children) emit(child, out, /*is_root=*/false);
        out += "</";
        out += tag;
        out += '>';
    }
};

}  // namespace

const Attr* Element::find_attr(std::string_view attr_name) const noexcept {
    for (const auto& attr : attrs) {
        if (attr.name == attr_name) return &attr;
    }
    return nullptr;
}

Element parse(std::string_view doc) { return Parser(doc).parse_document(); }

std::string serialize(const Element& root, bool xml_declaration) {
    std::string out;
    if (xml_declaration) out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    serialize_into(root, out);
    return out;
}

std::string escape_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\r': out += "&#13;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            case '\t': out += "&#9;"; break;
            default: out += c;
        }
    }
    return out;
}

const ResolvedAttr* ResolvedElement::find_attr(std::string_view attr_ns,
                                               std::string_view attr_local) const noexcept {
    for (const auto& attr : attrs) {
        if (attr.ns == attr_ns && attr.local == attr_local) return &attr;
    }
    return nullptr;
}

const ResolvedElement* ResolvedElement::find_child(std::string_view child_ns,
                                                   std::string_view child_local) const noexcept {
    for (const auto& child : children) {
        if (child.ns == child_ns && child.local == child_local) return &child;
    }
    return nullptr;
}

std::pair<std::string, std::string> ResolvedElement::resolve_qname(std::string_view qname) const {
    auto [prefix, local] = split_qname(qname);
    if (prefix.empty()) {
        auto it = scope.find("");
        return {it != scope.end() ? it->second : std::string{}, std::string(local)};
    }
    auto it = scope.find(std::string(prefix));
    if (it == scope.end()) {
        throw Error(Errc::MalformedXml, "unbound namespace prefix '" + std::string(prefix) + "'");
    }
    return {it->second, std::string(local)};
}

ResolvedElement resolve(const Element& root) {
    return resolve_rec(root, std::map<std::string, std::string>{});
}

std::string canonical(std::string_view doc) {
    ResolvedElement resolved = resolve(parse(doc));
    return Canonicalizer{}.run(resolved);
}

}  // namespace soapforge::xml
