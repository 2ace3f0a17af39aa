#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "soapforge/value.hpp"

namespace soapforge {

/// Target descriptor plus input/output parameter collections — the request
/// handed to the engine. Inputs serialize in insertion order; outputs are
/// templates that drive typed response decoding and are never serialized.
class Request {
public:
    enum class Collection { Input, Output };

    Request() = default;

    /// Sets operation/namespace/prefix/action/endpoint atomically: all fields
    /// are validated before any is assigned.
    void set_target(std::string operation, std::string ns, std::string prefix, std::string action,
                    std::string endpoint);

    void set_operation(std::string operation);  // throws InvalidName
    void set_namespace(std::string ns);
    void set_prefix(std::string prefix);        // throws InvalidName
    void set_action(std::string action);
    void set_endpoint(std::string endpoint);    // throws InvalidEndpoint
    void set_fault_policy(bool raise_on_fault) noexcept { raise_on_fault_ = raise_on_fault; }

    const std::string& operation() const noexcept { return operation_; }
    const std::string& ns() const noexcept { return namespace_; }
    const std::string& prefix() const noexcept { return prefix_; }
    const std::string& action() const noexcept { return action_; }
    const std::string& endpoint() const noexcept { return endpoint_; }
    bool raise_on_fault() const noexcept { return raise_on_fault_; }

    void add_parameter(Collection c, Parameter p);           // DuplicateName, InvalidParameter
    void remove_parameter(Collection c, std::string_view name);  // NotFound
    const Parameter& get_parameter(Collection c, std::string_view name) const;  // NotFound

    /// Fills a parameter's value and clears its skeleton marker.
    void set_value(Collection c, std::string_view name, Value v);  // NotFound, InvalidParameter

    const std::vector<Parameter>& inputs() const noexcept { return inputs_; }
    const std::vector<Parameter>& outputs() const noexcept { return outputs_; }

    friend bool operator==(const Request&, const Request&) = default;

private:
    std::vector<Parameter>& collection(Collection c) noexcept {
        return c == Collection::Input ? inputs_ : outputs_;
    }
    const std::vector<Parameter>& collection(Collection c) const noexcept {
        return c == Collection::Input ? inputs_ : outputs_;
    }

    std::string operation_;
    std::string namespace_;
    std::string prefix_ = "p";
    std::string action_;
    std::string endpoint_;
    std::vector<Parameter> inputs_;
    std::vector<Parameter> outputs_;
    bool raise_on_fault_ = false;
};

}  // namespace soapforge
