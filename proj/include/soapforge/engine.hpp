#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soapforge/mockserver.hpp"
#include "soapforge/pipeline.hpp"
#include "soapforge/request.hpp"
#include "soapforge/transport.hpp"
#include "soapforge/wsdl.hpp"

/// MEP-aware execution around a Request: OUT flow -> transport -> IN flow.
namespace soapforge::engine {

enum class TransportKind { Http, Loopback };

struct EngineConfig {
    TransportKind transport = TransportKind::Http;
    /// Host for the loopback transport; must outlive the engine.
    const mockserver::MockServer* loopback_host = nullptr;
    pipeline::FlowConfig out_flow = pipeline::default_out_flow();
    pipeline::FlowConfig in_flow = pipeline::default_in_flow();
    std::vector<pipeline::HandlerSpec> out_handlers;
    std::vector<pipeline::HandlerSpec> in_handlers;
    /// Appends the built-in WS-Addressing handler to the OUT flow unless one
    /// named "addressing" was supplied.
    bool use_addressing = true;
    int timeout_ms = transport::kDefaultTimeoutMs;
    std::optional<wsdl::ServiceDescription> service_description;
};

class Engine {
public:
    /// Validates the request (operation, namespace, endpoint set) and
    /// resolves both pipeline orders eagerly, so placement errors surface
    /// here rather than mid-call. Throws Error(InvalidRequest) and any
    /// resolve_order error.
    static Engine create(Request request, EngineConfig config);

    /// IN_OUT: build -> OUT flow -> send -> IN flow -> decode. Returns the
    /// response parameters; a SOAP fault either throws FaultException
    /// (raise_on_fault) or comes back as one "fault" Parameter holding a
    /// Record of fault_code/fault_string. Throws Error(TransportFailed),
    /// ValidationError, Error(DecodeError).
    std::vector<Parameter> out_in_execute();

    /// IN_ONLY: build -> OUT flow -> send. True on Ok/Accepted, false on
    /// ServerFault (one-way has no fault channel; see last_diagnostics).
    /// The IN flow never runs. Throws Error(TransportFailed), ValidationError.
    bool out_execute();

    const Request& request() const noexcept { return request_; }
    Request& request() noexcept { return request_; }

    const std::vector<std::string>& last_out_trace() const noexcept { return out_trace_; }
    const std::vector<std::string>& last_in_trace() const noexcept { return in_trace_; }
    const std::string& last_diagnostics() const noexcept { return diagnostics_; }

private:
    Engine() = default;

    void validate_against_description() const;
    transport::TransportResponse send(const pipeline::MessageContext& ctx);

    Request request_;
    EngineConfig config_;
    std::vector<pipeline::HandlerSpec> out_ordered_;
    std::vector<pipeline::HandlerSpec> in_ordered_;
    std::vector<std::string> out_trace_;
    std::vector<std::string> in_trace_;
    std::string diagnostics_;
};

}  // namespace soapforge::engine
