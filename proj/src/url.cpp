#include "soapforge/url.hpp"

#include <cctype>

namespace soapforge {

std::optional<Url> parse_url(std::string_view s) {
    auto scheme_end = s.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;

    std::string_view scheme = s.substr(0, scheme_end);
    if (!std::isalpha(static_cast<unsigned char>(scheme.front()))) return std::nullopt;
    for (char c : scheme) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') {
            return std::nullopt;
        }
    }

    std::string_view rest = s.substr(scheme_end + 3);
    if (rest.empty()) return std::nullopt;

    Url url;
    url.scheme.assign(scheme.begin(), scheme.end());
    for (char& c : url.scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    auto path_start = rest.find_first_of("/?");
    std::string_view authority = rest.substr(0, path_start);
    if (authority.empty()) return std::nullopt;

    auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
        std::string_view port_text = authority.substr(colon + 1);
        if (port_text.empty()) return std::nullopt;
        int port = 0;
        for (char c : port_text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
            port = port * 10 + (c - '0');
            if (port > 65535) return std::nullopt;
        }
        url.port = port;
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) return std::nullopt;
    for (char c : authority) {
        if (std::isspace(static_cast<unsigned char>(c))) return std::nullopt;
    }
    url.host.assign(authority.begin(), authority.end());

    if (path_start == std::string_view::npos) return url;

    std::string_view tail = rest.substr(path_start);
    auto query_start = tail.find('?');
    std::string_view path = tail.substr(0, query_start);
    url.path = path.empty() ? std::string("/") : std::string(path);
    if (query_start != std::string_view::npos) url.query = std::string(tail.substr(query_start + 1));
    return url;
}

}  // namespace soapforge
