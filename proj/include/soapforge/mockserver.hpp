#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "soapforge/codec.hpp"
#include "soapforge/value.hpp"

/// Deterministic SOAP host used for testing: dispatchable in-process (the
/// loopback transport) or over HTTP/1.1. Behaviors must be pure functions of
/// their input parameters.
namespace soapforge::mockserver {

inline constexpr int kDefaultPort = 8190;

/// One operation's behavior: decoded request parameters in, payload out.
using Behavior = std::function<codec::ResponsePayload(const std::vector<Parameter>&)>;

struct MockOperation {
    Behavior behavior;
    bool one_way = false;  ///< reply 202 with an empty body; the result is ignored
};

struct MockService {
    std::string path;  ///< URL path, e.g. "/echo"
    std::string ns;    ///< expected namespace of the operation wrapper
    std::map<std::string, MockOperation> operations;
    std::string wsdl;  ///< served at GET <path>?wsdl when non-empty
};

/// Transport-independent dispatch outcome; both the HTTP listener and the
/// loopback transport render exactly this.
struct Dispatch {
    int http_status = 0;
    std::string body;
    std::string content_type;
};

class MockServer {
public:
    void register_mock(MockService svc);  ///< throws Error(PathTaken)

    const MockService* find(const std::string& path) const noexcept;
    std::vector<std::string> paths() const;

    /// Parses the posted envelope, matches the operation by the Body child's
    /// local name (namespace checked), runs the behavior. Params -> 200 +
    /// response envelope `<OperationResponse>`, Fault -> 500 + fault
    /// envelope, one-way -> 202 empty; any parse/dispatch failure -> 500
    /// with a parseable Client fault. Never throws.
    Dispatch dispatch_post(const std::string& path, const std::string& body) const;

    /// GET handler: serves the service's WSDL for `?wsdl`, else 404.
    Dispatch dispatch_get(const std::string& path, bool want_wsdl) const;

    /// Running HTTP listener; stops and joins on destruction. Holds its own
    /// copy of the server, so the handle may outlive the MockServer.
    class Handle {
    public:
        Handle(Handle&&) noexcept;
        Handle& operator=(Handle&&) noexcept;
        Handle(const Handle&) = delete;
        Handle& operator=(const Handle&) = delete;
        ~Handle();

        void stop();
        int port() const noexcept;  ///< actual bound port

    private:
        friend class MockServer;
        struct State;
        explicit Handle(std::unique_ptr<State> state);
        std::unique_ptr<State> state_;
    };

    /// Serves on 127.0.0.1:port from a background thread; port 0 picks a
    /// free port. Throws Error(PortInUse).
    Handle serve_http(int port) const;

private:
    std::vector<MockService> services_;
};

/// One row of the bundled market table.
struct MarketRow {
    std::string symbol;
    double open;
    double high;
    double low;
    double close;
};

/// The 14 bundled rows, in table order.
const std::vector<MarketRow>& market_rows();

/// Exact-symbol lookup: Params[Open, High, Low, Close] or a Client
/// "unknown symbol" fault.
codec::ResponsePayload market_quote(const std::string& symbol);

/// Built-in services: /echo (Echo two-way, Notify one-way), /fault (Fail
/// always faults with "bad input"), /market (GetQuote over market_rows).
MockServer builtin_server();

/// Embedded texts mirrored by the files under fixtures/.
std::string_view market_wsdl_text();
std::string_view echo_wsdl_text();
std::string market_csv_text();

}  // namespace soapforge::mockserver
