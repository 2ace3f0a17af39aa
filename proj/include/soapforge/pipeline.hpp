#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soapforge/codec.hpp"
#include "soapforge/request.hpp"
#include "soapforge/value.hpp"

/// Handler/phase execution framework.
///
/// Handlers declare a phase plus placement rules (PhaseFirst, PhaseLast,
/// Before, After); resolve_order turns those declarations into one
/// deterministic execution order, and execute_flow runs it over a mutable
/// MessageContext until completion or the first abort.
namespace soapforge::pipeline {

inline constexpr std::string_view kWsaNs = "http://www.w3.org/2005/08/addressing";
inline constexpr std::string_view kTraceKey = "pipeline.trace";

enum class Direction { Out, In };

/// Mutable state threaded through one flow execution.
struct MessageContext {
    Request request;
    std::optional<codec::Envelope> envelope;
    std::map<std::string, std::string> transport_headers;
    std::map<std::string, Value> properties;
    Direction direction = Direction::Out;
};

/// Reads the executed-handler trace recorded under kTraceKey ([] before the
/// first execute_flow touches the context).
std::vector<std::string> trace_of(const MessageContext& ctx);

enum class Rule { PhaseFirst, PhaseLast, Before, After };

struct PlacementRule {
    Rule rule;
    std::string target;  ///< peer handler name; only for Before/After

    static PlacementRule phase_first() { return {Rule::PhaseFirst, {}}; }
    static PlacementRule phase_last() { return {Rule::PhaseLast, {}}; }
    static PlacementRule before(std::string name) { return {Rule::Before, std::move(name)}; }
    static PlacementRule after(std::string name) { return {Rule::After, std::move(name)}; }
};

/// A handler either mutates the context and continues (nullopt) or aborts the
/// flow with a fault.
using HandlerAction = std::function<std::optional<FaultInfo>(MessageContext&)>;

struct HandlerSpec {
    std::string name;
    std::string phase;
    std::vector<PlacementRule> placement;
    HandlerAction action;
};

struct FlowConfig {
    Direction direction = Direction::Out;
    std::vector<std::string> phases;
};

FlowConfig default_out_flow();  ///< Validation, Addressing, Security, MessageOut
FlowConfig default_in_flow();   ///< TransportIn, Security, Dispatch

/// Computes the execution order: phases in flow order, handlers within a
/// phase ordered to satisfy every placement rule, ties broken by registration
/// (input) order.
///
/// Throws UnknownPhase, UnknownReference (Before/After target absent or in a
/// different phase), Conflict (duplicate names, two PhaseFirst/PhaseLast in
/// one phase, or one handler claiming both ends), Cycle.
std::vector<std::string> resolve_order(const FlowConfig& flow,
                                       const std::vector<HandlerSpec>& handlers);

struct FlowResult {
    MessageContext context;
    std::optional<FaultInfo> fault;  ///< set when a handler aborted the flow

    bool aborted() const { return fault.has_value(); }
};

/// Runs handlers left to right. Each handler's name is appended to the trace
/// before its action runs; the first abort stops the flow and surfaces its
/// fault. A handler that throws is wrapped into Error(HandlerPanic).
FlowResult execute_flow(const std::vector<HandlerSpec>& ordered, MessageContext ctx);

/// Convenience: resolve_order over the subset of handlers, then execute.
FlowResult run_flow(const FlowConfig& flow, const std::vector<HandlerSpec>& handlers,
                    MessageContext ctx);

/// Built-in WS-Addressing handler (phase "Addressing", OUT flow): stamps
/// wsa:To = request.endpoint and wsa:Action = request.action header blocks,
/// replacing any previous ones. Aborts with fault "MissingAction" when the
/// request carries no action.
HandlerSpec addressing_handler();

}  // namespace soapforge::pipeline
