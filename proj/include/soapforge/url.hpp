#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace soapforge {

/// Minimal absolute-URL view, enough to drive an HTTP client and the
/// loopback dispatcher. No userinfo, no fragment.
struct Url {
    std::string scheme;
    std::string host;
    int port = 0;  // 0 = scheme default
    std::string path = "/";
    std::string query{};

    int effective_port() const noexcept { return port != 0 ? port : (scheme == "https" ? 443 : 80); }

    /// Path plus "?query" when present — what goes on the request line.
    std::string target() const { return query.empty() ? path : path + "?" + query; }
};

std::optional<Url> parse_url(std::string_view s);

}  // namespace soapforge
