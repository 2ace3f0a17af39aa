#include "soapforge/cli.hpp"

#include <algorithm>
#include <array>
#include <csignal>
#include <cstdlib>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "soapforge/engine.hpp"
#include "soapforge/error.hpp"
#include "soapforge/mockserver.hpp"
#include "soapforge/registry.hpp"
#include "soapforge/text.hpp"
#include "soapforge/uno_services.hpp"
#include "soapforge/wsdl.hpp"

namespace soapforge::cli {

namespace {

constexpr const char* kEndpointEnv = "SOAPFORGE_ENDPOINT";

const mockserver::MockServer& loopback_host() {
    static const mockserver::MockServer host = mockserver::builtin_server();
    return host;
}

int exit_code_for(const Error& e) noexcept {
    switch (e.code()) {
        case Errc::FaultError:
            return 3;
        case Errc::TransportFailed:
            return 4;
        case Errc::PortInUse:
            return 5;
        default:
            return 2;
    }
}

// ---------------------------------------------------------------- config ---

std::map<std::string, std::string> read_config(const std::string& path) {
    auto content = text::read_file(path);
    if (!content) throw Error(Errc::NotFound, "cannot read config file " + path);
    std::map<std::string, std::string> kv;
    int line_no = 0;
    for (const auto& raw : text::split(*content, '\n')) {
        ++line_no;
        std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::InvalidParameter,
                        "config line " + std::to_string(line_no) + " is not key=value");
        }
        std::string key(text::trim(line.substr(0, eq)));
        std::string value(text::trim(line.substr(eq + 1)));
        kv[key] = value;
    }
    return kv;
}

struct CommonOpts {
    std::string config_path;
    std::string endpoint;
    std::string transport;
    int timeout_ms = transport::kDefaultTimeoutMs;
};

/// Applies config-file values as new defaults; flags parsed afterwards win.
void apply_config(const std::map<std::string, std::string>& kv, CommonOpts& common,
                  std::string* output, std::string* wsdl) {
    for (const auto& [key, value] : kv) {
        if (key == "endpoint") {
            common.endpoint = value;
        } else if (key == "transport") {
            common.transport = value;
        } else if (key == "timeout_ms") {
            auto parsed = text::parse_integer(value);
            if (!parsed || *parsed <= 0) {
                throw Error(Errc::InvalidParameter,
                            "config timeout_ms must be a positive integer, got '" + value + "'");
            }
            common.timeout_ms = static_cast<int>(*parsed);
        } else if (key == "output" && output != nullptr) {
            *output = value;
        } else if (key == "wsdl" && wsdl != nullptr) {
            *wsdl = value;
        } else {
            throw Error(Errc::InvalidParameter, "unknown config key '" + key + "'");
        }
    }
}

std::optional<std::string> scan_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

engine::EngineConfig make_engine_config(const CommonOpts& common, bool with_addressing,
                                        std::optional<wsdl::ServiceDescription> sd) {
    if (common.transport != "http" && common.transport != "loopback") {
        throw Error(Errc::InvalidParameter,
                    "transport must be http or loopback, got '" + common.transport + "'");
    }
    if (common.timeout_ms <= 0) {
        throw Error(Errc::InvalidParameter, "timeout must be positive");
    }
    engine::EngineConfig cfg;
    if (common.transport == "loopback") {
        cfg.transport = engine::TransportKind::Loopback;
        cfg.loopback_host = &loopback_host();
    } else {
        cfg.transport = engine::TransportKind::Http;
    }
    cfg.timeout_ms = common.timeout_ms;
    cfg.use_addressing = with_addressing;
    cfg.service_description = std::move(sd);
    return cfg;
}

std::string resolve_endpoint(const std::string& flag_or_config, const std::string& wsdl_endpoint,
                             const std::string& fallback) {
    if (!flag_or_config.empty()) return flag_or_config;
    if (const char* env = std::getenv(kEndpointEnv); env != nullptr && *env != '\0') return env;
    if (!wsdl_endpoint.empty()) return wsdl_endpoint;
    return fallback;
}

// ------------------------------------------------------------- rendering ---

std::string render_value(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Null:
            return "null";
        case Value::Kind::Boolean:
            return v.as_boolean() ? "true" : "false";
        case Value::Kind::Integer:
            return text::format_integer(v.as_integer());
        case Value::Kind::Decimal:
            return text::format_decimal(v.as_decimal());
        case Value::Kind::Text:
            return v.as_text();
        case Value::Kind::Sequence: {
            std::string out = "[";
            const auto& items = v.as_sequence();
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (i > 0) out += ", ";
                out += render_value(items[i]);
            }
            return out + "]";
        }
        case Value::Kind::Record: {
            std::string out = "{";
            const auto& members = v.as_record();
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i > 0) out += ", ";
                out += members[i].name + " = " + render_value(members[i].value);
            }
            return out + "}";
        }
    }
    return {};
}

void print_params(std::ostream& out, const std::vector<Parameter>& params) {
    for (const auto& p : params) out << p.name << " = " << render_value(p.value) << "\n";
}

const char* part_type_name(Value::Kind kind) noexcept {
    switch (kind) {
        case Value::Kind::Integer:
            return "int";
        case Value::Kind::Decimal:
            return "double";
        case Value::Kind::Boolean:
            return "boolean";
        default:
            return "string";
    }
}

/// "symbol:string" / "Open,High,Low,Close:double" — consecutive same-typed
/// parts share one type suffix.
std::string part_list(const std::vector<wsdl::PartSig>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j].kind == parts[i].kind) ++j;
        if (!out.empty()) out += ",";
        for (std::size_t k = i; k < j; ++k) {
            if (k > i) out += ",";
            out += parts[k].name;
        }
        out += ":";
        out += part_type_name(parts[i].kind);
        i = j;
    }
    return out;
}

// -------------------------------------------------------------- describe ---

int cmd_describe(const std::string& path, std::ostream& out, std::ostream& err) {
    auto content = text::read_file(path);
    if (!content) {
        err << "cannot read " << path << "\n";
        return 2;
    }
    wsdl::ServiceDescription sd = wsdl::parse_wsdl(*content);
    out << "service " << sd.service_name << "\n";
    out << "endpoint " << sd.endpoint << "\n";
    for (const auto& op : sd.operations) {
        out << op.name << " (" << wsdl::mep_name(op.mep) << "): " << part_list(op.inputs);
        if (op.mep == wsdl::Mep::InOut) out << " -> " << part_list(op.outputs);
        out << "\n";
    }
    for (const auto& warning : sd.warnings) err << "warning: " << warning << "\n";
    return 0;
}

// ------------------------------------------------------------------ call ---

Value default_value(Value::Kind kind) {
    switch (kind) {
        case Value::Kind::Integer:
            return Value::integer(0);
        case Value::Kind::Decimal:
            return Value::decimal(0.0);
        case Value::Kind::Boolean:
            return Value::boolean(false);
        default:
            return Value::text("");
    }
}

Value coerce(const std::string& raw, Value::Kind kind, const std::string& param_name) {
    switch (kind) {
        case Value::Kind::Integer: {
            auto v = text::parse_integer(raw);
            if (!v) {
                throw Error(Errc::InvalidParameter,
                            "cannot parse '" + raw + "' as int for parameter '" + param_name + "'");
            }
            return Value::integer(*v);
        }
        case Value::Kind::Decimal: {
            auto v = text::parse_decimal(raw);
            if (!v) {
                throw Error(Errc::InvalidParameter, "cannot parse '" + raw +
                                                        "' as double for parameter '" +
                                                        param_name + "'");
            }
            return Value::decimal(*v);
        }
        case Value::Kind::Boolean: {
            auto v = text::parse_boolean(raw);
            if (!v) {
                throw Error(Errc::InvalidParameter, "cannot parse '" + raw +
                                                        "' as boolean for parameter '" +
                                                        param_name + "'");
            }
            return Value::boolean(*v);
        }
        default:
            return Value::text(raw);
    }
}

/// Collected --param occurrences for one name, in first-appearance order.
using RawParams = std::vector<std::pair<std::string, std::vector<std::string>>>;

RawParams group_raw_params(const std::vector<std::string>& specs) {
    RawParams grouped;
    for (const auto& spec : specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(Errc::InvalidParameter, "--param expects name=value, got '" + spec + "'");
        }
        std::string name = spec.substr(0, eq);
        std::string value = spec.substr(eq + 1);
        auto it = std::find_if(grouped.begin(), grouped.end(),
                               [&](const auto& entry) { return entry.first == name; });
        if (it == grouped.end()) {
            grouped.push_back({std::move(name), {std::move(value)}});
        } else {
            it->second.push_back(std::move(value));
        }
    }
    return grouped;
}

Parameter make_input(const std::string& name, const std::vector<std::string>& raws,
                     const wsdl::PartSig* part) {
    Value::Kind kind = part != nullptr ? part->kind : Value::Kind::Text;
    Parameter p;
    p.name = name;
    if (part != nullptr) {
        p.nullable = part->nullable;
        p.min_occurs = part->min_occurs;
        p.max_occurs = part->max_occurs;
    }
    if (raws.size() == 1) {
        p.value = coerce(raws.front(), kind, name);
    } else {
        Value::Sequence items;
        items.reserve(raws.size());
        for (const auto& raw : raws) items.push_back(coerce(raw, kind, name));
        p.value = Value::sequence(std::move(items));
        if (part == nullptr) {
            p.min_occurs = 0;
            p.max_occurs = kUnbounded;
        }
    }
    return p;
}

struct CallTarget {
    std::string operation;
    std::string ns;
    std::string prefix;
    std::string action;
    std::string endpoint;
    std::vector<Parameter> inputs;
    std::vector<Parameter> output_templates;
    bool one_way = false;
};

std::vector<Parameter> call_direct(const CallTarget& target, const engine::EngineConfig& cfg,
                                   bool* accepted) {
    Request request;
    request.set_target(target.operation, target.ns, target.prefix, target.action,
                       target.endpoint);
    request.set_fault_policy(true);
    for (const auto& p : target.inputs) {
        request.add_parameter(Request::Collection::Input, p);
    }
    for (const auto& t : target.output_templates) {
        request.add_parameter(Request::Collection::Output, t);
    }
    engine::Engine eng = engine::Engine::create(std::move(request), cfg);
    if (target.one_way) {
        *accepted = eng.out_execute();
        return {};
    }
    return eng.out_in_execute();
}

registry::HandlePtr make_parameter_handle(registry::Registry& reg, const Parameter& p) {
    auto handle = reg.create_instance(std::string(registry::kParameterService));
    handle->call("setName", {Value::text(p.name)});
    if (!p.ns.empty()) handle->call("setNamespace", {Value::text(p.ns)});
    handle->call("setNullable", {Value::boolean(p.nullable)});
    handle->call("setMinOccurs", {Value::integer(p.min_occurs)});
    handle->call("setMaxOccurs", {Value::integer(p.max_occurs)});
    handle->call("setValue", {p.value});
    return handle;
}

std::vector<Parameter> call_via_registry(const CallTarget& target,
                                         const engine::EngineConfig& cfg, bool* accepted) {
    registry::Registry reg;
    registry::register_builtin_services(reg, cfg);

    auto request = reg.create_instance(std::string(registry::kRequestService));
    request->call("setOperation", {Value::text(target.operation)});
    request->call("setNamespace", {Value::text(target.ns)});
    request->call("setPrefix", {Value::text(target.prefix)});
    request->call("setAction", {Value::text(target.action)});
    request->call("setEndpoint", {Value::text(target.endpoint)});
    request->call("setExceptionOnSOAPFault", {});
    for (const auto& p : target.inputs) {
        request->call("addParameter", {make_parameter_handle(reg, p)});
    }
    for (const auto& t : target.output_templates) {
        request->call("addReturnParameter", {make_parameter_handle(reg, t)});
    }

    auto eng = reg.create_instance(std::string(registry::kEngineService));
    eng->call("Axis2WebService", {request});
    if (target.one_way) {
        *accepted = std::get<Value>(eng->call("outExecute", {})).as_boolean();
        return {};
    }
    Value record = std::get<Value>(eng->call("outInExecute", {}));
    return record.as_record();
}

struct CallOpts {
    CommonOpts common;
    std::string wsdl_path;
    std::string operation;
    std::string ns;
    std::string prefix = "p";
    std::string action;
    std::vector<std::string> params;
    bool direct = false;
    bool one_way = false;
};

int cmd_call(const CallOpts& o, std::ostream& out, std::ostream& err) {
    std::optional<wsdl::ServiceDescription> sd;
    if (!o.wsdl_path.empty()) {
        auto content = text::read_file(o.wsdl_path);
        if (!content) {
            err << "cannot read " << o.wsdl_path << "\n";
            return 2;
        }
        sd = wsdl::parse_wsdl(*content);
    }

    CallTarget target;
    target.operation = o.operation;
    target.ns = o.ns;
    target.prefix = o.prefix;
    target.action = o.action;
    target.one_way = o.one_way;

    const wsdl::OperationSig* sig = nullptr;
    if (sd) {
        sig = sd->find_operation(o.operation);
        if (sig == nullptr) {
            err << "operation '" << o.operation << "' is not defined by " << o.wsdl_path << "\n";
            return 2;
        }
        if (target.ns.empty()) target.ns = sd->target_namespace;
        if (target.action.empty()) target.action = sig->soap_action;
        if (sig->mep == wsdl::Mep::InOnly) target.one_way = true;
        for (const auto& part : sig->outputs) {
            target.output_templates.push_back({.name = part.name,
                                               .value = default_value(part.kind),
                                               .nullable = part.nullable,
                                               .min_occurs = part.min_occurs,
                                               .max_occurs = part.max_occurs});
        }
    }
    if (target.ns.empty()) {
        err << "either --wsdl or --namespace is required\n";
        return 2;
    }
    target.endpoint = resolve_endpoint(o.common.endpoint, sd ? sd->endpoint : "", "");
    if (target.endpoint.empty()) {
        err << "no endpoint: use --endpoint, " << kEndpointEnv << ", or a WSDL with an address\n";
        return 2;
    }

    try {
        for (const auto& [name, raws] : group_raw_params(o.params)) {
            const wsdl::PartSig* part = nullptr;
            if (sig != nullptr) {
                for (const auto& candidate : sig->inputs) {
                    if (candidate.name == name) {
                        part = &candidate;
                        break;
                    }
                }
            }
            target.inputs.push_back(make_input(name, raws, part));
        }

        engine::EngineConfig cfg =
            make_engine_config(o.common, /*with_addressing=*/!target.action.empty(), sd);
        bool accepted = false;
        std::vector<Parameter> result = o.direct ? call_direct(target, cfg, &accepted)
                                                 : call_via_registry(target, cfg, &accepted);
        if (target.one_way) {
            out << "accepted = " << (accepted ? "true" : "false") << "\n";
            return 0;
        }
        print_params(out, result);
        return 0;
    } catch (const FaultException& e) {
        err << "fault: " << e.fault().fault_code << ": " << e.fault().fault_string << "\n";
        return 3;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    }
}

// ----------------------------------------------------------- market-data ---

struct MarketOpts {
    CommonOpts common;
    std::vector<std::string> symbols;
    std::string output = "csv";
};

struct RowOutcome {
    std::string symbol;
    bool ok = false;
    std::array<double, 4> values{};  // Open, High, Low, Close
    std::string error;
    bool transport_failure = false;
};

RowOutcome fetch_quote(const wsdl::ServiceDescription& sd, const std::string& endpoint,
                       const CommonOpts& common, const std::string& symbol) {
    RowOutcome outcome;
    outcome.symbol = symbol;
    try {
        Request request = wsdl::bind_request(sd, "GetQuote");
        request.set_endpoint(endpoint);
        request.set_value(Request::Collection::Input, "symbol", Value::text(symbol));
        engine::EngineConfig cfg = make_engine_config(common, true, sd);
        engine::Engine eng = engine::Engine::create(std::move(request), cfg);
        std::vector<Parameter> params = eng.out_in_execute();
        if (params.size() == 1 && params.front().name == "fault") {
            const auto& members = params.front().value.as_record();
            for (const auto& m : members) {
                if (m.name == "fault_string") outcome.error = m.value.as_text();
            }
            if (outcome.error.empty()) outcome.error = "SOAP fault";
            return outcome;
        }
        static constexpr std::array<std::string_view, 4> kColumns = {"Open", "High", "Low",
                                                                     "Close"};
        for (std::size_t i = 0; i < kColumns.size(); ++i) {
            const Parameter* found = nullptr;
            for (const auto& p : params) {
                if (p.name == kColumns[i]) {
                    found = &p;
                    break;
                }
            }
            if (found == nullptr || found->value.kind() != Value::Kind::Decimal) {
                outcome.error = "incomplete response";
                return outcome;
            }
            outcome.values[i] = found->value.as_decimal();
        }
        outcome.ok = true;
        return outcome;
    } catch (const Error& e) {
        outcome.error = e.what();
        outcome.transport_failure = e.code() == Errc::TransportFailed;
        return outcome;
    }
}

void emit_rows(const std::vector<RowOutcome>& rows, const std::string& format,
               std::ostream& out) {
    if (format == "json-lines") {
        for (const auto& row : rows) {
            nlohmann::ordered_json j;
            j["SYMBOL"] = row.symbol;
            if (row.ok) {
                j["Open"] = row.values[0];
                j["High"] = row.values[1];
                j["Low"] = row.values[2];
                j["Close"] = row.values[3];
            } else {
                j["error"] = row.error;
            }
            out << j.dump() << "\n";
        }
        return;
    }

    std::vector<std::array<std::string, 5>> cells;
    cells.push_back({"SYMBOL", "Open", "High", "Low", "Close"});
    for (const auto& row : rows) {
        std::array<std::string, 5> line;
        line[0] = row.symbol;
        for (std::size_t i = 0; i < 4; ++i) {
            line[i + 1] = row.ok ? text::format_decimal(row.values[i]) : "ERR";
        }
        cells.push_back(std::move(line));
    }

    if (format == "csv") {
        for (const auto& line : cells) {
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (i > 0) out << ',';
                // RFC 4180: quote fields containing comma, quote or newline.
                if (line[i].find_first_of(",\"\n") != std::string::npos) {
                    std::string quoted = line[i];
                    std::size_t pos = 0;
                    while ((pos = quoted.find('"', pos)) != std::string::npos) {
                        quoted.insert(pos, 1, '"');
                        pos += 2;
                    }
                    out << '"' << quoted << '"';
                } else {
                    out << line[i];
                }
            }
            out << "\n";
        }
        return;
    }

    // table
    std::array<std::size_t, 5> widths{};
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());
    }
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << line[i];
            if (i + 1 < line.size()) out << std::string(widths[i] - line[i].size() + 2, ' ');
        }
        out << "\n";
    }
}

int cmd_market_data(const MarketOpts& o, std::ostream& out, std::ostream& err) {
    if (o.output != "csv" && o.output != "table" && o.output != "json-lines") {
        err << "output must be table, csv or json-lines, got '" << o.output << "'\n";
        return 2;
    }
    wsdl::ServiceDescription sd = wsdl::parse_wsdl(mockserver::market_wsdl_text());
    std::string endpoint = resolve_endpoint(o.common.endpoint, sd.endpoint, "");

    std::vector<std::string> symbols = o.symbols;
    if (symbols.empty()) {
        for (const auto& row : mockserver::market_rows()) symbols.push_back(row.symbol);
    }

    // One engine per symbol, concurrent calls, rows emitted in input order.
    std::vector<std::future<RowOutcome>> futures;
    futures.reserve(symbols.size());
    for (const auto& symbol : symbols) {
        futures.push_back(std::async(std::launch::async, fetch_quote, std::cref(sd),
                                     std::cref(endpoint), std::cref(o.common),
                                     std::cref(symbol)));
    }
    std::vector<RowOutcome> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());

    emit_rows(rows, o.output, out);

    std::size_t failures = 0;
    for (const auto& row : rows) {
        if (!row.ok) {
            ++failures;
            err << "warning: " << row.symbol << ": " << row.error << "\n";
        }
    }
    if (failures > 0) {
        err << "warning: " << failures << " of " << rows.size() << " symbols failed\n";
    }
    bool all_transport = !rows.empty() &&
                         std::all_of(rows.begin(), rows.end(),
                                     [](const RowOutcome& r) { return r.transport_failure; });
    return all_transport ? 4 : 0;
}

// ------------------------------------------------------------ serve-mock ---

volatile std::sig_atomic_t g_interrupted = 0;

void on_signal(int) { g_interrupted = 1; }

int cmd_serve_mock(int port, std::ostream& out, std::ostream& err) {
    try {
        mockserver::MockServer server = mockserver::builtin_server();
        mockserver::MockServer::Handle handle = server.serve_http(port);
        out << "listening on 127.0.0.1:" << handle.port() << "\n" << std::flush;
        g_interrupted = 0;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (g_interrupted == 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(50));
        }
        handle.stop();
        out << "shut down\n";
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SOAP 1.1 web-service client engine"};
    app.name("soapforge");
    app.require_subcommand(1);

    std::string describe_path;
    CLI::App* describe_cmd = app.add_subcommand("describe", "Summarize a WSDL file");
    describe_cmd->add_option("wsdl", describe_path, "path to a .wsdl file")->required();

    CallOpts call_opts;
    call_opts.common.transport = "http";
    CLI::App* call_cmd = app.add_subcommand("call", "Invoke one operation");
    call_cmd->add_option("--wsdl", call_opts.wsdl_path, "bind target and types from this WSDL");
    call_cmd->add_option("--operation", call_opts.operation, "operation name")->required();
    call_cmd->add_option("--namespace", call_opts.ns, "operation namespace");
    call_cmd->add_option("--prefix", call_opts.prefix, "element prefix (default p)");
    call_cmd->add_option("--action", call_opts.action, "SOAPAction value");
    call_cmd->add_option("--endpoint", call_opts.common.endpoint, "service URL");
    call_cmd->add_option("--param", call_opts.params, "input parameter name=value (repeatable)");
    call_cmd->add_option("--transport", call_opts.common.transport, "http or loopback")
        ->check(CLI::IsMember({"http", "loopback"}));
    call_cmd->add_option("--timeout-ms", call_opts.common.timeout_ms, "transport timeout");
    call_cmd->add_option("--config", call_opts.common.config_path, "key=value config file");
    call_cmd->add_flag("--direct", call_opts.direct,
                       "use the direct API instead of the service registry");
    call_cmd->add_flag("--one-way", call_opts.one_way, "fire-and-forget (no response expected)");

    MarketOpts market_opts;
    market_opts.common.transport = "loopback";
    CLI::App* market_cmd =
        app.add_subcommand("market-data", "Fetch quotes and emit a SYMBOL/Open/High/Low/Close table");
    market_cmd->add_option("symbols", market_opts.symbols,
                           "symbols to query (default: all bundled rows)");
    market_cmd->add_option("--output", market_opts.output, "table, csv or json-lines")
        ->check(CLI::IsMember({"table", "csv", "json-lines"}));
    market_cmd->add_option("--endpoint", market_opts.common.endpoint, "service URL");
    market_cmd->add_option("--transport", market_opts.common.transport, "http or loopback")
        ->check(CLI::IsMember({"http", "loopback"}));
    market_cmd->add_option("--timeout-ms", market_opts.common.timeout_ms, "transport timeout");
    market_cmd->add_option("--config", market_opts.common.config_path, "key=value config file");

    int serve_port = mockserver::kDefaultPort;
    CLI::App* serve_cmd = app.add_subcommand("serve-mock", "Serve the bundled mock services");
    serve_cmd->add_option("--port", serve_port, "listen port (default 8190)");

    // Config-file values become defaults; explicit flags override them.
    try {
        if (auto config_path = scan_config_path(args)) {
            auto kv = read_config(*config_path);
            apply_config(kv, call_opts.common, nullptr, &call_opts.wsdl_path);
            CommonOpts market_common = market_opts.common;
            apply_config(kv, market_common, &market_opts.output, nullptr);
            market_opts.common = market_common;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("soapforge");
    for (const auto& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (describe_cmd->parsed()) return cmd_describe(describe_path, out, err);
        if (call_cmd->parsed()) return cmd_call(call_opts, out, err);
        if (market_cmd->parsed()) return cmd_market_data(market_opts, out, err);
        if (serve_cmd->parsed()) return cmd_serve_mock(serve_port, out, err);
        err << "no command given\n";
        return 2;
    } catch (const FaultException& e) {
        err << "fault: " << e.fault().fault_code << ": " << e.fault().fault_string << "\n";
        return 3;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace soapforge::cli
