#pragma once

#include <map>
#include <optional>
#include <string>

/// Send/receive abstraction beneath the engine. Transports never throw:
/// every failure is encoded in TransportResponse.
namespace soapforge::mockserver {
class MockServer;
}

namespace soapforge::transport {

inline constexpr int kDefaultTimeoutMs = 10'000;

enum class Status { Ok, Accepted, ServerFault, TransportError };

const char* status_name(Status status) noexcept;

struct TransportRequest {
    std::string endpoint;     ///< absolute http URL
    std::string soap_action;  ///< sent quoted, possibly as ""
    std::string body;         ///< UTF-8 XML, non-empty
    std::map<std::string, std::string> headers;
    int timeout_ms = kDefaultTimeoutMs;
};

struct TransportResponse {
    Status status = Status::TransportError;
    std::optional<std::string> body;  ///< present on Ok and ServerFault
    std::string diagnostics;
};

/// Shared status mapping: 200 -> Ok, 202 -> Accepted, 500 with an XML body ->
/// ServerFault, anything else -> TransportError. Both transports use it, so
/// they classify identically by construction.
Status classify(int http_status, const std::string& body) noexcept;

/// HTTP POST with Content-Type: text/xml; charset=utf-8 and a quoted
/// SOAPAction header.
TransportResponse http_send(const TransportRequest& t);

/// In-process dispatch against a mock host; identical semantics to http_send
/// hitting the same host over a socket.
TransportResponse loopback_send(const TransportRequest& t, const mockserver::MockServer& host);

}  // namespace soapforge::transport
