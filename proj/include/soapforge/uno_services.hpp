#pragma once

#include <string_view>

#include "soapforge/engine.hpp"
#include "soapforge/registry.hpp"
#include "soapforge/request.hpp"

/// Built-in registry services mirroring the engine's dynamic facade:
/// ws.Parameter (Axis2ParameterUNO), ws.Request (Axis2RequestUNO) and
/// ws.Engine (Axis2UNO). Everything reachable through them is also reachable
/// through the direct API; the facades only translate dynamic calls.
namespace soapforge::registry {

inline constexpr std::string_view kParameterService = "ws.Parameter";
inline constexpr std::string_view kRequestService = "ws.Request";
inline constexpr std::string_view kEngineService = "ws.Engine";

// Interface sources; also shipped under fixtures/.
std::string_view axis2uno_idl_text();        // Axis2UNO, 3 methods
std::string_view axis2request_idl_text();    // Axis2RequestUNO, 12 methods
std::string_view axis2parameter_idl_text();  // Axis2ParameterUNO, 12 methods

/// Wraps a Parameter; accessors named after the container's fields.
class ParameterHandle : public DispatchHandle {
public:
    ParameterHandle();

    const Parameter& parameter() const noexcept { return param_; }
    Parameter& parameter() noexcept { return param_; }

private:
    Parameter param_;
};

/// Wraps a Request; one method per Fig-style accessor. getParameter /
/// getReturnParameter hand back fresh ParameterHandle copies.
class RequestHandle : public DispatchHandle {
public:
    RequestHandle();

    const Request& request() const noexcept { return request_; }
    Request& request() noexcept { return request_; }

private:
    Request request_;
};

/// Holds an engine configuration and a RequestHandle; Axis2WebService
/// attaches the request, outExecute/outInExecute create an Engine from the
/// request's current state and run it.
class EngineHandle : public DispatchHandle {
public:
    explicit EngineHandle(engine::EngineConfig config);

private:
    engine::EngineConfig config_;
    std::shared_ptr<RequestHandle> attached_;
};

/// Registers ws.Parameter, ws.Request and ws.Engine. The config is copied
/// into every ws.Engine instance (transport selection, flows, timeouts).
void register_builtin_services(Registry& registry, engine::EngineConfig engine_config = {});

}  // namespace soapforge::registry
