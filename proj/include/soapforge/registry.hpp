#pragma once

#include <functional>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "soapforge/value.hpp"

/// Service-manager simulation: interfaces come from a small IDL subset,
/// factories register against them, instantiation goes through the registry.
namespace soapforge::registry {

struct MethodSig {
    std::string return_type;
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;  // (type, name)

    friend bool operator==(const MethodSig&, const MethodSig&) = default;
};

struct InterfaceDef {
    std::string name;
    std::vector<MethodSig> methods;

    const MethodSig* find_method(std::string_view method_name) const noexcept;

    friend bool operator==(const InterfaceDef&, const InterfaceDef&) = default;
};

/// Parses `interface Name { <ret> <method>(<type> <name>, ...); ... }`.
/// Types: void, boolean, int, double, string, list<T>, or any identifier.
/// `//` comments are ignored. Throws Error(SyntaxError) with line/column in
/// the message, or Error(DuplicateMethod).
InterfaceDef parse_idl(std::string_view text);

/// Canonical source form; parse_idl(pretty_print(def)) == def.
std::string pretty_print(const InterfaceDef& def);

class ServiceHandle;
using HandlePtr = std::shared_ptr<ServiceHandle>;

/// Dynamic call argument: a plain value or another service handle.
using Arg = std::variant<Value, HandlePtr>;

/// A live service instance with dynamically dispatched methods.
class ServiceHandle {
public:
    virtual ~ServiceHandle() = default;

    virtual std::vector<std::string> method_names() const = 0;

    /// Throws Error(NotFound) for an unknown method; methods themselves may
    /// throw Error/ValidationError/FaultException.
    virtual Arg call(const std::string& method, const std::vector<Arg>& args) = 0;

    bool has_method(std::string_view name) const;
};

using Factory = std::function<HandlePtr()>;

/// Base for handles built from a name -> function table.
class DispatchHandle : public ServiceHandle {
public:
    std::vector<std::string> method_names() const override;
    Arg call(const std::string& method, const std::vector<Arg>& args) override;

protected:
    using Method = std::function<Arg(const std::vector<Arg>&)>;
    void add_method(std::string name, Method method);

private:
    std::vector<std::pair<std::string, Method>> methods_;
};

// Argument accessors for handle implementations; throw Error(InvalidParameter)
// on a missing argument or wrong variant/kind.
const Value& arg_value(const std::vector<Arg>& args, std::size_t index);
HandlePtr arg_handle(const std::vector<Arg>& args, std::size_t index);
std::string arg_text(const std::vector<Arg>& args, std::size_t index);

/// Thread-safe name -> (interface, factory) registry. Registration runs a
/// conformance probe: the factory is invoked once and the produced handle
/// must expose every interface method by name.
class Registry {
public:
    Registry() = default;
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    /// Throws Error(AlreadyRegistered) or Error(NonConformant) listing the
    /// missing methods.
    void register_service(std::string service_name, InterfaceDef iface, Factory factory);

    /// Fresh instance per call. Throws Error(UnknownService).
    HandlePtr create_instance(const std::string& service_name) const;

    /// Service names in registration order.
    std::vector<std::string> enumerate() const;

    /// Throws Error(UnknownService).
    const InterfaceDef& interface_of(const std::string& service_name) const;

private:
    struct Entry {
        std::string name;
        InterfaceDef iface;
        Factory factory;
    };

    mutable std::shared_mutex mutex_;
    std::vector<Entry> entries_;
};

}  // namespace soapforge::registry
