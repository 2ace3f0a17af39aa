#include "soapforge/transport.hpp"

#include <chrono>

#include "httplib.h"
#include "soapforge/mockserver.hpp"
#include "soapforge/text.hpp"
#include "soapforge/url.hpp"

namespace soapforge::transport {

namespace {

bool looks_like_xml(const std::string& body) {
    std::string_view trimmed = text::trim(body);
    return !trimmed.empty() && trimmed.front() == '<';
}

/// Checks the TransportRequest invariants; failures become data.
const char* precheck(const TransportRequest& t) {
    if (t.body.empty()) return "transport request has an empty body";
    if (t.timeout_ms <= 0) return "transport timeout must be positive";
    return nullptr;
}

TransportResponse from_dispatch(int http_status, std::string body) {
    TransportResponse out;
    out.status = classify(http_status, body);
    out.diagnostics = "HTTP status " + std::to_string(http_status);
    switch (out.status) {
        case Status::Ok:
        case Status::ServerFault:
            out.body = std::move(body);
            break;
        case Status::Accepted:
            if (!body.empty()) out.body = std::move(body);
            break;
        case Status::TransportError:
            if (!body.empty()) out.diagnostics += ": " + body;
            break;
    }
    return out;
}

}  // namespace

const char* status_name(Status status) noexcept {
    switch (status) {
        case Status::Ok:
            return "Ok";
        case Status::Accepted:
            return "Accepted";
        case Status::ServerFault:
            return "ServerFault";
        case Status::TransportError:
            return "TransportError";
    }
    return "TransportError";
}

Status classify(int http_status, const std::string& body) noexcept {
    if (http_status == 200) return Status::Ok;
    if (http_status == 202) return Status::Accepted;
    if (http_status == 500 && looks_like_xml(body)) return Status::ServerFault;
    return Status::TransportError;
}

TransportResponse http_send(const TransportRequest& t) {
    if (const char* bad = precheck(t)) return {Status::TransportError, std::nullopt, bad};
    auto url = parse_url(t.endpoint);
    if (!url || url->scheme != "http") {
        return {Status::TransportError, std::nullopt,
                "endpoint '" + t.endpoint + "' is not an http URL"};
    }

    httplib::Client client(url->host, url->effective_port());
    auto timeout = std::chrono::milliseconds(t.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers headers{{"SOAPAction", "\"" + t.soap_action + "\""}};
    for (const auto& [name, value] : t.headers) headers.emplace(name, value);

    httplib::Result res = client.Post(url->target(), headers, t.body, "text/xml; charset=utf-8");
    if (!res) {
        return {Status::TransportError, std::nullopt,
                "HTTP request to " + t.endpoint + " failed: " + httplib::to_string(res.error())};
    }
    return from_dispatch(res->status, std::move(res->body));
}

TransportResponse loopback_send(const TransportRequest& t, const mockserver::MockServer& host) {
    if (const char* bad = precheck(t)) return {Status::TransportError, std::nullopt, bad};
    auto url = parse_url(t.endpoint);
    if (!url || url->scheme != "http") {
        return {Status::TransportError, std::nullopt,
                "endpoint '" + t.endpoint + "' is not an http URL"};
    }
    mockserver::Dispatch d = host.dispatch_post(url->path, t.body);
    return from_dispatch(d.http_status, std::move(d.body));
}

}  // namespace soapforge::transport
