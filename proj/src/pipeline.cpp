#include "soapforge/pipeline.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "soapforge/error.hpp"

namespace soapforge::pipeline {

namespace {

void append_trace(MessageContext& ctx, const std::string& name) {
    auto it = ctx.properties.find(std::string(kTraceKey));
    Value::Sequence items;
    if (it != ctx.properties.end() && it->second.kind() == Value::Kind::Sequence) {
        items = it->second.as_sequence();
    }
    items.push_back(Value::text(name));
    ctx.properties[std::string(kTraceKey)] = Value::sequence(std::move(items));
}

/// Orders one phase's handlers; `members` are indices into `handlers` in
/// registration order.
std::vector<std::size_t> order_phase(const std::vector<HandlerSpec>& handlers,
                                     const std::string& phase,
                                     const std::vector<std::size_t>& members) {
    std::optional<std::size_t> first;
    std::optional<std::size_t> last;
    for (std::size_t idx : members) {
        bool is_first = false;
        bool is_last = false;
        for (const auto& rule : handlers[idx].placement) {
            if (rule.rule == Rule::PhaseFirst) is_first = true;
            if (rule.rule == Rule::PhaseLast) is_last = true;
        }
        if (is_first && is_last) {
            throw Error(Errc::Conflict, "handler '" + handlers[idx].name +
                                            "' claims both PhaseFirst and PhaseLast");
        }
        if (is_first) {
            if (first) {
                throw Error(Errc::Conflict, "phase '" + phase + "': handlers '" +
                                                handlers[*first].name + "' and '" +
                                                handlers[idx].name + "' both claim PhaseFirst");
            }
            first = idx;
        }
        if (is_last) {
            if (last) {
                throw Error(Errc::Conflict, "phase '" + phase + "': handlers '" +
                                                handlers[*last].name + "' and '" +
                                                handlers[idx].name + "' both claim PhaseLast");
            }
            last = idx;
        }
    }

    // Edge u -> v: u must run before v.
    std::set<std::pair<std::size_t, std::size_t>> edges;
    auto find_member = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t idx : members) {
            if (handlers[idx].name == name) return idx;
        }
        return std::nullopt;
    };
    for (std::size_t idx : members) {
        for (const auto& rule : handlers[idx].placement) {
            if (rule.rule != Rule::Before && rule.rule != Rule::After) continue;
            auto target = find_member(rule.target);
            if (!target) {
                throw Error(Errc::UnknownReference,
                            "handler '" + handlers[idx].name + "' references '" + rule.target +
                                "', which is not in phase '" + phase + "'");
            }
            if (rule.rule == Rule::Before) {
                edges.emplace(idx, *target);
            } else {
                edges.emplace(*target, idx);
            }
        }
    }
    if (first) {
        for (std::size_t idx : members) {
            if (idx != *first) edges.emplace(*first, idx);
        }
    }
    if (last) {
        for (std::size_t idx : members) {
            if (idx != *last) edges.emplace(idx, *last);
        }
    }

    // Kahn's algorithm; the min-heap on registration index makes ties stable.
    std::map<std::size_t, std::size_t> indegree;
    std::map<std::size_t, std::vector<std::size_t>> successors;
    for (std::size_t idx : members) indegree[idx] = 0;
    for (const auto& [u, v] : edges) {
        ++indegree[v];
        successors[u].push_back(v);
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t idx : members) {
        if (indegree[idx] == 0) ready.push(idx);
    }
    std::vector<std::size_t> ordered;
    while (!ready.empty()) {
        std::size_t u = ready.top();
        ready.pop();
        ordered.push_back(u);
        for (std::size_t v : successors[u]) {
            if (--indegree[v] == 0) ready.push(v);
        }
    }
    if (ordered.size() != members.size()) {
        throw Error(Errc::Cycle,
                    "phase '" + phase + "': placement rules are cyclic and cannot be satisfied");
    }
    return ordered;
}

}  // namespace

std::vector<std::string> trace_of(const MessageContext& ctx) {
    std::vector<std::string> names;
    auto it = ctx.properties.find(std::string(kTraceKey));
    if (it == ctx.properties.end() || it->second.kind() != Value::Kind::Sequence) return names;
    for (const auto& item : it->second.as_sequence()) {
        if (item.kind() == Value::Kind::Text) names.push_back(item.as_text());
    }
    return names;
}

FlowConfig default_out_flow() {
    return {Direction::Out, {"Validation", "Addressing", "Security", "MessageOut"}};
}

FlowConfig default_in_flow() { return {Direction::In, {"TransportIn", "Security", "Dispatch"}}; }

std::vector<std::string> resolve_order(const FlowConfig& flow,
                                       const std::vector<HandlerSpec>& handlers) {
    if (flow.phases.empty()) {
        throw Error(Errc::InvalidParameter, "flow has no phases");
    }
    for (std::size_t i = 0; i < flow.phases.size(); ++i) {
        for (std::size_t j = i + 1; j < flow.phases.size(); ++j) {
            if (flow.phases[i] == flow.phases[j]) {
                throw Error(Errc::Conflict, "duplicate phase '" + flow.phases[i] + "' in flow");
            }
        }
    }
    for (std::size_t i = 0; i < handlers.size(); ++i) {
        for (std::size_t j = i + 1; j < handlers.size(); ++j) {
            if (handlers[i].name == handlers[j].name) {
                throw Error(Errc::Conflict, "duplicate handler name '" + handlers[i].name + "'");
            }
        }
    }

    std::map<std::string, std::vector<std::size_t>> by_phase;
    for (std::size_t i = 0; i < handlers.size(); ++i) {
        const std::string& phase = handlers[i].phase;
        if (std::find(flow.phases.begin(), flow.phases.end(), phase) == flow.phases.end()) {
            throw Error(Errc::UnknownPhase, "handler '" + handlers[i].name + "' targets phase '" +
                                                phase + "', which is not in the flow");
        }
        by_phase[phase].push_back(i);
    }

    std::vector<std::string> result;
    result.reserve(handlers.size());
    for (const auto& phase : flow.phases) {
        auto it = by_phase.find(phase);
        if (it == by_phase.end()) continue;
        for (std::size_t idx : order_phase(handlers, phase, it->second)) {
            result.push_back(handlers[idx].name);
        }
    }
    return result;
}

FlowResult execute_flow(const std::vector<HandlerSpec>& ordered, MessageContext ctx) {
    if (ctx.properties.find(std::string(kTraceKey)) == ctx.properties.end()) {
        ctx.properties[std::string(kTraceKey)] = Value::sequence({});
    }
    for (const auto& handler : ordered) {
        append_trace(ctx, handler.name);
        std::optional<FaultInfo> fault;
        try {
            fault = handler.action ? handler.action(ctx) : std::nullopt;
        } catch (const std::exception& e) {
            throw Error(Errc::HandlerPanic,
                        "handler '" + handler.name + "' failed: " + e.what());
        } catch (...) {
            throw Error(Errc::HandlerPanic, "handler '" + handler.name + "' failed");
        }
        if (fault) return {std::move(ctx), std::move(fault)};
    }
    return {std::move(ctx), std::nullopt};
}

FlowResult run_flow(const FlowConfig& flow, const std::vector<HandlerSpec>& handlers,
                    MessageContext ctx) {
    std::vector<std::string> order = resolve_order(flow, handlers);
    std::vector<HandlerSpec> ordered;
    ordered.reserve(order.size());
    for (const auto& name : order) {
        auto it = std::find_if(handlers.begin(), handlers.end(),
                               [&](const HandlerSpec& h) { return h.name == name; });
        ordered.push_back(*it);
    }
    return execute_flow(ordered, std::move(ctx));
}

HandlerSpec addressing_handler() {
    HandlerSpec spec;
    spec.name = "addressing";
    spec.phase = "Addressing";
    spec.action = [](MessageContext& ctx) -> std::optional<FaultInfo> {
        if (ctx.request.action().empty()) {
            return FaultInfo{"soapenv:Client", "MissingAction", std::nullopt};
        }
        if (!ctx.envelope) {
            return FaultInfo{"soapenv:Client", "MissingEnvelope", std::nullopt};
        }
        std::vector<xml::Attr> wsa_decl{{"xmlns:wsa", std::string(kWsaNs)}};
        codec::set_header_block(*ctx.envelope, {"wsa:To", wsa_decl, ctx.request.endpoint()});
        codec::set_header_block(*ctx.envelope, {"wsa:Action", wsa_decl, ctx.request.action()});
        return std::nullopt;
    };
    return spec;
}

}  // namespace soapforge::pipeline
