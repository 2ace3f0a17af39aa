#include "soapforge/engine.hpp"

#include <algorithm>

#include "soapforge/codec.hpp"
#include "soapforge/error.hpp"

namespace soapforge::engine {

namespace {

std::vector<pipeline::HandlerSpec> ordered_specs(const pipeline::FlowConfig& flow,
                                                 const std::vector<pipeline::HandlerSpec>& handlers) {
    std::vector<std::string> order = pipeline::resolve_order(flow, handlers);
    std::vector<pipeline::HandlerSpec> out;
    out.reserve(order.size());
    for (const auto& name : order) {
        auto it = std::find_if(handlers.begin(), handlers.end(),
                               [&](const pipeline::HandlerSpec& h) { return h.name == name; });
        out.push_back(*it);
    }
    return out;
}

}  // namespace

Engine Engine::create(Request request, EngineConfig config) {
    if (request.operation().empty()) {
        throw Error(Errc::InvalidRequest, "request has no operation");
    }
    if (request.ns().empty()) {
        throw Error(Errc::InvalidRequest, "request has no namespace");
    }
    if (request.endpoint().empty()) {
        throw Error(Errc::InvalidRequest, "request has no endpoint");
    }
    if (config.transport == TransportKind::Loopback && config.loopback_host == nullptr) {
        throw Error(Errc::InvalidRequest, "loopback transport selected without a host");
    }

    Engine engine;
    std::vector<pipeline::HandlerSpec> out_handlers = config.out_handlers;
    if (config.use_addressing) {
        bool present = std::any_of(out_handlers.begin(), out_handlers.end(),
                                   [](const auto& h) { return h.name == "addressing"; });
        if (!present) out_handlers.push_back(pipeline::addressing_handler());
    }
    engine.out_ordered_ = ordered_specs(config.out_flow, out_handlers);
    engine.in_ordered_ = ordered_specs(config.in_flow, config.in_handlers);
    engine.request_ = std::move(request);
    engine.config_ = std::move(config);
    return engine;
}

void Engine::validate_against_description() const {
    if (!config_.service_description) return;
    auto violations = wsdl::validate_request(*config_.service_description, request_);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

transport::TransportResponse Engine::send(const pipeline::MessageContext& ctx) {
    transport::TransportRequest treq;
    treq.endpoint = ctx.request.endpoint();
    treq.soap_action = ctx.request.action();
    treq.body = ctx.envelope ? ctx.envelope->raw : std::string{};
    treq.headers = ctx.transport_headers;
    treq.timeout_ms = config_.timeout_ms;
    if (config_.transport == TransportKind::Loopback) {
        return transport::loopback_send(treq, *config_.loopback_host);
    }
    return transport::http_send(treq);
}

std::vector<Parameter> Engine::out_in_execute() {
    out_trace_.clear();
    in_trace_.clear();
    diagnostics_.clear();
    validate_against_description();

    pipeline::MessageContext out_ctx;
    out_ctx.request = request_;
    out_ctx.envelope = codec::build_envelope(request_);
    out_ctx.direction = pipeline::Direction::Out;
    pipeline::FlowResult out_result = pipeline::execute_flow(out_ordered_, std::move(out_ctx));
    out_trace_ = pipeline::trace_of(out_result.context);
    if (out_result.aborted()) throw FaultException(std::move(*out_result.fault));

    transport::TransportResponse response = send(out_result.context);
    diagnostics_ = response.diagnostics;
    if (response.status == transport::Status::TransportError) {
        throw Error(Errc::TransportFailed, response.diagnostics);
    }
    if (response.status == transport::Status::Accepted || !response.body) {
        throw Error(Errc::TransportFailed,
                    "server accepted the request without returning a response body");
    }

    pipeline::MessageContext in_ctx;
    in_ctx.request = request_;
    in_ctx.envelope = codec::envelope_from_raw(*response.body);
    in_ctx.direction = pipeline::Direction::In;
    pipeline::FlowResult in_result = pipeline::execute_flow(in_ordered_, std::move(in_ctx));
    in_trace_ = pipeline::trace_of(in_result.context);
    if (in_result.aborted()) throw FaultException(std::move(*in_result.fault));

    codec::ResponsePayload payload = codec::parse_response(*response.body, request_.outputs());
    if (!payload.is_fault()) return payload.params();

    const FaultInfo& fault = payload.fault();
    if (request_.raise_on_fault()) throw FaultException(fault);
    Parameter carrier;
    carrier.name = "fault";
    carrier.value = Value::record({
        {.name = "fault_code", .value = Value::text(fault.fault_code)},
        {.name = "fault_string", .value = Value::text(fault.fault_string)},
    });
    return {std::move(carrier)};
}

bool Engine::out_execute() {
    out_trace_.clear();
    in_trace_.clear();
    diagnostics_.clear();
    validate_against_description();

    pipeline::MessageContext out_ctx;
    out_ctx.request = request_;
    out_ctx.envelope = codec::build_envelope(request_);
    out_ctx.direction = pipeline::Direction::Out;
    pipeline::FlowResult out_result = pipeline::execute_flow(out_ordered_, std::move(out_ctx));
    out_trace_ = pipeline::trace_of(out_result.context);
    if (out_result.aborted()) throw FaultException(std::move(*out_result.fault));

    transport::TransportResponse response = send(out_result.context);
    diagnostics_ = response.diagnostics;
    switch (response.status) {
        case transport::Status::Ok:
        case transport::Status::Accepted:
            return true;
        case transport::Status::ServerFault:
            diagnostics_ = "server replied with a SOAP fault (one-way call has no fault channel)";
            return false;
        case transport::Status::TransportError:
            throw Error(Errc::TransportFailed, response.diagnostics);
    }
    return false;
}

}  // namespace soapforge::engine
