#include "soapforge/uno_services.hpp"

#include "soapforge/error.hpp"

namespace soapforge::registry {

namespace {

bool arg_boolean(const std::vector<Arg>& args, std::size_t index) {
    const Value& v = arg_value(args, index);
    if (v.kind() != Value::Kind::Boolean) {
        throw Error(Errc::InvalidParameter,
                    "argument " + std::to_string(index) + " must be a Boolean value");
    }
    return v.as_boolean();
}

int arg_int(const std::vector<Arg>& args, std::size_t index) {
    const Value& v = arg_value(args, index);
    if (v.kind() != Value::Kind::Integer) {
        throw Error(Errc::InvalidParameter,
                    "argument " + std::to_string(index) + " must be an Integer value");
    }
    return static_cast<int>(v.as_integer());
}

Arg void_result() { return Arg(Value::null()); }

}  // namespace

ParameterHandle::ParameterHandle() {
    add_method("setName", [this](const std::vector<Arg>& args) {
        param_.name = arg_text(args, 0);
        return void_result();
    });
    add_method("getName", [this](const std::vector<Arg>&) { return Arg(Value::text(param_.name)); });
    add_method("setValue", [this](const std::vector<Arg>& args) {
        param_.value = arg_value(args, 0);
        return void_result();
    });
    add_method("getValue", [this](const std::vector<Arg>&) { return Arg(param_.value); });
    add_method("setNamespace", [this](const std::vector<Arg>& args) {
        param_.ns = arg_text(args, 0);
        return void_result();
    });
    add_method("getNamespace", [this](const std::vector<Arg>&) { return Arg(Value::text(param_.ns)); });
    add_method("setNullable", [this](const std::vector<Arg>& args) {
        param_.nullable = arg_boolean(args, 0);
        return void_result();
    });
    add_method("getNullable",
               [this](const std::vector<Arg>&) { return Arg(Value::boolean(param_.nullable)); });
    add_method("setMinOccurs", [this](const std::vector<Arg>& args) {
        param_.min_occurs = arg_int(args, 0);
        return void_result();
    });
    add_method("getMinOccurs",
               [this](const std::vector<Arg>&) { return Arg(Value::integer(param_.min_occurs)); });
    add_method("setMaxOccurs", [this](const std::vector<Arg>& args) {
        param_.max_occurs = arg_int(args, 0);
        return void_result();
    });
    add_method("getMaxOccurs",
               [this](const std::vector<Arg>&) { return Arg(Value::integer(param_.max_occurs)); });
}

namespace {

ParameterHandle& as_parameter_handle(const HandlePtr& handle) {
    auto* ph = dynamic_cast<ParameterHandle*>(handle.get());
    if (ph == nullptr) {
        throw Error(Errc::InvalidParameter, "argument must be a ws.Parameter handle");
    }
    return *ph;
}

Arg parameter_copy(const Parameter& p) {
    auto handle = std::make_shared<ParameterHandle>();
    handle->parameter() = p;
    return Arg(HandlePtr(std::move(handle)));
}

}  // namespace

RequestHandle::RequestHandle() {
    add_method("addParameter", [this](const std::vector<Arg>& args) {
        request_.add_parameter(Request::Collection::Input,
                               as_parameter_handle(arg_handle(args, 0)).parameter());
        return void_result();
    });
    add_method("removeParameter", [this](const std::vector<Arg>& args) {
        request_.remove_parameter(Request::Collection::Input, arg_text(args, 0));
        return void_result();
    });
    add_method("getParameter", [this](const std::vector<Arg>& args) {
        return parameter_copy(request_.get_parameter(Request::Collection::Input, arg_text(args, 0)));
    });
    add_method("addReturnParameter", [this](const std::vector<Arg>& args) {
        request_.add_parameter(Request::Collection::Output,
                               as_parameter_handle(arg_handle(args, 0)).parameter());
        return void_result();
    });
    add_method("removeReturnParameter", [this](const std::vector<Arg>& args) {
        request_.remove_parameter(Request::Collection::Output, arg_text(args, 0));
        return void_result();
    });
    add_method("getReturnParameter", [this](const std::vector<Arg>& args) {
        return parameter_copy(
            request_.get_parameter(Request::Collection::Output, arg_text(args, 0)));
    });
    add_method("setOperation", [this](const std::vector<Arg>& args) {
        request_.set_operation(arg_text(args, 0));
        return void_result();
    });
    add_method("setNamespace", [this](const std::vector<Arg>& args) {
        request_.set_namespace(arg_text(args, 0));
        return void_result();
    });
    add_method("setPrefix", [this](const std::vector<Arg>& args) {
        request_.set_prefix(arg_text(args, 0));
        return void_result();
    });
    add_method("setAction", [this](const std::vector<Arg>& args) {
        request_.set_action(arg_text(args, 0));
        return void_result();
    });
    add_method("setExceptionOnSOAPFault", [this](const std::vector<Arg>&) {
        request_.set_fault_policy(true);
        return void_result();
    });
    add_method("setEndpoint", [this](const std::vector<Arg>& args) {
        request_.set_endpoint(arg_text(args, 0));
        return void_result();
    });
}

EngineHandle::EngineHandle(engine::EngineConfig config) : config_(std::move(config)) {
    add_method("Axis2WebService", [this](const std::vector<Arg>& args) {
        HandlePtr handle = arg_handle(args, 0);
        auto request = std::dynamic_pointer_cast<RequestHandle>(handle);
        if (request == nullptr) {
            throw Error(Errc::InvalidParameter, "argument must be a ws.Request handle");
        }
        attached_ = std::move(request);
        return void_result();
    });
    add_method("outInExecute", [this](const std::vector<Arg>&) {
        if (attached_ == nullptr) {
            throw Error(Errc::InvalidRequest, "no request attached; call Axis2WebService first");
        }
        engine::Engine eng = engine::Engine::create(attached_->request(), config_);
        return Arg(Value::record(eng.out_in_execute()));
    });
    add_method("outExecute", [this](const std::vector<Arg>&) {
        if (attached_ == nullptr) {
            throw Error(Errc::InvalidRequest, "no request attached; call Axis2WebService first");
        }
        engine::Engine eng = engine::Engine::create(attached_->request(), config_);
        return Arg(Value::boolean(eng.out_execute()));
    });
}

void register_builtin_services(Registry& registry, engine::EngineConfig engine_config) {
    registry.register_service(std::string(kParameterService),
                              parse_idl(axis2parameter_idl_text()),
                              [] { return std::make_shared<ParameterHandle>(); });
    registry.register_service(std::string(kRequestService), parse_idl(axis2request_idl_text()),
                              [] { return std::make_shared<RequestHandle>(); });
    registry.register_service(std::string(kEngineService), parse_idl(axis2uno_idl_text()),
                              [config = std::move(engine_config)] {
                                  return std::make_shared<EngineHandle>(config);
                              });
}

std::string_view axis2uno_idl_text() {
    return R"(// Engine contract: attach a request, then execute one-way or round-trip.
interface Axis2UNO {
    void Axis2WebService(Axis2RequestUNO request);
    list<Axis2ParameterUNO> outInExecute();
    boolean outExecute();
}
)";
}

std::string_view axis2request_idl_text() {
    return R"(// Request contract: parameter collections plus target configuration.
interface Axis2RequestUNO {
    void addParameter(Axis2ParameterUNO parameter);
    void removeParameter(string name);
    Axis2ParameterUNO getParameter(string name);
    void addReturnParameter(Axis2ParameterUNO parameter);
    void removeReturnParameter(string name);
    Axis2ParameterUNO getReturnParameter(string name);
    void setOperation(string operation);
    void setNamespace(string ns);
    void setPrefix(string prefix);
    void setAction(string action);
    void setExceptionOnSOAPFault();
    void setEndpoint(string endpoint);
}
)";
}

std::string_view axis2parameter_idl_text() {
    return R"(// Parameter container: every field is reachable through an accessor pair.
interface Axis2ParameterUNO {
    void setName(string name);
    string getName();
    void setValue(string value);
    string getValue();
    void setNamespace(string ns);
    string getNamespace();
    void setNullable(boolean nullable);
    boolean getNullable();
    void setMinOccurs(int minOccurs);
    int getMinOccurs();
    void setMaxOccurs(int maxOccurs);
    int getMaxOccurs();
}
)";
}

}  // namespace soapforge::registry
