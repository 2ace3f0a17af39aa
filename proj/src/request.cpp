#include "soapforge/request.hpp"

#include <algorithm>

#include "soapforge/url.hpp"

namespace soapforge {

namespace {

const char* collection_name(Request::Collection c) noexcept {
    return c == Request::Collection::Input ? "input" : "output";
}

}  // namespace

void Request::set_target(std::string operation, std::string ns, std::string prefix,
                         std::string action, std::string endpoint) {
    if (!is_ncname(operation)) {
        throw Error(Errc::InvalidName, "operation '" + operation + "' is not a valid NCName");
    }
    if (!is_ncname(prefix)) {
        throw Error(Errc::InvalidName, "prefix '" + prefix + "' is not a valid NCName");
    }
    if (!parse_url(endpoint)) {
        throw Error(Errc::InvalidEndpoint, "'" + endpoint + "' is not an absolute URL");
    }
    operation_ = std::move(operation);
    namespace_ = std::move(ns);
    prefix_ = std::move(prefix);
    action_ = std::move(action);
    endpoint_ = std::move(endpoint);
}

void Request::set_operation(std::string operation) {
    if (!is_ncname(operation)) {
        throw Error(Errc::InvalidName, "operation '" + operation + "' is not a valid NCName");
    }
    operation_ = std::move(operation);
}

void Request::set_namespace(std::string ns) { namespace_ = std::move(ns); }

void Request::set_prefix(std::string prefix) {
    if (!is_ncname(prefix)) {
        throw Error(Errc::InvalidName, "prefix '" + prefix + "' is not a valid NCName");
    }
    prefix_ = std::move(prefix);
}

void Request::set_action(std::string action) { action_ = std::move(action); }

void Request::set_endpoint(std::string endpoint) {
    if (!parse_url(endpoint)) {
        throw Error(Errc::InvalidEndpoint, "'" + endpoint + "' is not an absolute URL");
    }
    endpoint_ = std::move(endpoint);
}

void Request::add_parameter(Collection c, Parameter p) {
    auto violations = validate_parameter(p);
    if (!violations.empty()) {
        throw Error(Errc::InvalidParameter, describe(violations));
    }
    auto& coll = collection(c);
    auto dup = std::find_if(coll.begin(), coll.end(),
                            [&](const Parameter& q) { return q.name == p.name; });
    if (dup != coll.end()) {
        throw Error(Errc::DuplicateName, std::string(collection_name(c)) + " parameter '" +
                                             p.name + "' already exists");
    }
    coll.push_back(std::move(p));
}

void Request::remove_parameter(Collection c, std::string_view name) {
    auto& coll = collection(c);
    auto it = std::find_if(coll.begin(), coll.end(),
                           [&](const Parameter& q) { return q.name == name; });
    if (it == coll.end()) {
        throw Error(Errc::NotFound, std::string(collection_name(c)) + " parameter '" +
                                        std::string(name) + "' not found");
    }
    coll.erase(it);
}

const Parameter& Request::get_parameter(Collection c, std::string_view name) const {
    const auto& coll = collection(c);
    auto it = std::find_if(coll.begin(), coll.end(),
                           [&](const Parameter& q) { return q.name == name; });
    if (it == coll.end()) {
        throw Error(Errc::NotFound, std::string(collection_name(c)) + " parameter '" +
                                        std::string(name) + "' not found");
    }
    return *it;
}

void Request::set_value(Collection c, std::string_view name, Value v) {
    auto& coll = collection(c);
    auto it = std::find_if(coll.begin(), coll.end(),
                           [&](const Parameter& q) { return q.name == name; });
    if (it == coll.end()) {
        throw Error(Errc::NotFound, std::string(collection_name(c)) + " parameter '" +
                                        std::string(name) + "' not found");
    }
    Parameter filled = *it;
    filled.value = std::move(v);
    filled.skeleton = false;
    auto violations = validate_parameter(filled);
    if (!violations.empty()) {
        throw Error(Errc::InvalidParameter, describe(violations));
    }
    *it = std::move(filled);
}

}  // namespace soapforge
