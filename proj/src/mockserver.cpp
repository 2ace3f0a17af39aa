#include "soapforge/mockserver.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "soapforge/error.hpp"
#include "soapforge/request.hpp"
#include "soapforge/text.hpp"
#include "soapforge/xml.hpp"

namespace soapforge::mockserver {

namespace {

constexpr const char* kXmlContentType = "text/xml; charset=utf-8";

struct IncomingCall {
    std::string op;
    std::string ns;
    std::vector<Parameter> params;
};

IncomingCall parse_call(const std::string& body) {
    xml::ResolvedElement root = xml::resolve(xml::parse(body));
    if (root.ns != codec::kSoapEnvelopeNs || root.local != "Envelope") {
        throw Error(Errc::MalformedXml, "document element is not a SOAP 1.1 Envelope");
    }
    const auto* body_el = root.find_child(codec::kSoapEnvelopeNs, "Body");
    if (body_el == nullptr || body_el->children.empty()) {
        throw Error(Errc::EmptyBody, "envelope has no Body content");
    }
    if (body_el->children.size() > 1) {
        throw Error(Errc::MalformedXml, "Body has more than one child element");
    }
    const auto& wrapper = body_el->children.front();
    return {wrapper.local, wrapper.ns, codec::decode_params(wrapper, {})};
}

Dispatch fault_dispatch(std::string code, std::string message) {
    return {500, codec::build_fault_envelope({std::move(code), std::move(message), std::nullopt}),
            kXmlContentType};
}

}  // namespace

void MockServer::register_mock(MockService svc) {
    if (find(svc.path) != nullptr) {
        throw Error(Errc::PathTaken, "a service is already registered at " + svc.path);
    }
    services_.push_back(std::move(svc));
}

const MockService* MockServer::find(const std::string& path) const noexcept {
    for (const auto& svc : services_) {
        if (svc.path == path) return &svc;
    }
    return nullptr;
}

std::vector<std::string> MockServer::paths() const {
    std::vector<std::string> out;
    out.reserve(services_.size());
    for (const auto& svc : services_) out.push_back(svc.path);
    return out;
}

Dispatch MockServer::dispatch_post(const std::string& path, const std::string& body) const {
    const MockService* svc = find(path);
    if (svc == nullptr) return {404, "no service at path " + path, "text/plain"};
    try {
        IncomingCall call = parse_call(body);
        if (call.ns != svc->ns) {
            throw Error(Errc::UnknownOperation, "operation namespace '" + call.ns +
                                                    "' does not match service namespace '" +
                                                    svc->ns + "'");
        }
        auto it = svc->operations.find(call.op);
        if (it == svc->operations.end()) {
            throw Error(Errc::UnknownOperation, "unknown operation '" + call.op + "'");
        }
        const MockOperation& op = it->second;
        if (op.one_way) {
            if (op.behavior) op.behavior(call.params);
            return {202, "", kXmlContentType};
        }
        if (!op.behavior) {
            return fault_dispatch("soapenv:Server", "operation '" + call.op + "' has no behavior");
        }
        codec::ResponsePayload payload = op.behavior(call.params);
        if (payload.is_fault()) {
            return {500, codec::build_fault_envelope(payload.fault()), kXmlContentType};
        }
        Request response;
        response.set_operation(call.op + "Response");
        response.set_namespace(svc->ns);
        for (const auto& p : payload.params()) {
            response.add_parameter(Request::Collection::Input, p);
        }
        return {200, codec::build_envelope(response).raw, kXmlContentType};
    } catch (const Error& e) {
        return fault_dispatch("soapenv:Client", e.what());
    } catch (const std::exception& e) {
        return fault_dispatch("soapenv:Server", e.what());
    }
}

Dispatch MockServer::dispatch_get(const std::string& path, bool want_wsdl) const {
    const MockService* svc = find(path);
    if (svc != nullptr && want_wsdl && !svc->wsdl.empty()) {
        return {200, svc->wsdl, kXmlContentType};
    }
    return {404, "not found", "text/plain"};
}

struct MockServer::Handle::State {
    MockServer server;
    httplib::Server http;
    std::thread thread;
    int port = 0;
};

MockServer::Handle::Handle(std::unique_ptr<State> state) : state_(std::move(state)) {}
MockServer::Handle::Handle(Handle&&) noexcept = default;
MockServer::Handle& MockServer::Handle::operator=(Handle&&) noexcept = default;

MockServer::Handle::~Handle() { stop(); }

void MockServer::Handle::stop() {
    if (!state_) return;
    state_->http.stop();
    if (state_->thread.joinable()) state_->thread.join();
}

int MockServer::Handle::port() const noexcept { return state_ ? state_->port : 0; }

MockServer::Handle MockServer::serve_http(int port) const {
    auto state = std::make_unique<Handle::State>();
    state->server = *this;
    httplib::Server& http = state->http;
    const MockServer* server = &state->server;

    http.Post(R"(.*)", [server](const httplib::Request& req, httplib::Response& res) {
        Dispatch d = server->dispatch_post(req.path, req.body);
        res.status = d.http_status;
        if (!d.body.empty()) res.set_content(d.body, d.content_type);
    });
    http.Get(R"(.*)", [server](const httplib::Request& req, httplib::Response& res) {
        Dispatch d = server->dispatch_get(req.path, req.params.count("wsdl") > 0);
        res.status = d.http_status;
        if (!d.body.empty()) res.set_content(d.body, d.content_type);
    });

    // httplib's default options include SO_REUSEPORT, which would let a
    // second server bind the same port instead of failing with PortInUse.
    http.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
                   sizeof(yes));
    });

    if (port == 0) {
        int bound = http.bind_to_any_port("127.0.0.1");
        if (bound <= 0) throw Error(Errc::PortInUse, "cannot bind any port on 127.0.0.1");
        state->port = bound;
    } else {
        if (!http.bind_to_port("127.0.0.1", port)) {
            throw Error(Errc::PortInUse, "port " + std::to_string(port) + " is already in use");
        }
        state->port = port;
    }
    state->thread = std::thread([h = &state->http] { h->listen_after_bind(); });
    for (int i = 0; i < 2000 && !http.is_running(); ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    }
    return Handle(std::move(state));
}

const std::vector<MarketRow>& market_rows() {
    static const std::vector<MarketRow> rows = {
        {"AMBUJA CEMENTS LTD", 78.65, 0.8, 1.03, 460.05},
        {"BHARTI AIRTEL LIMITED", 784.85, 34.6, 4.61, 66.5},
        {"DLF LIMITED", 352.65, 2.3, 0.66, 490},
        {"HERO HONDA MOTORS LTD", 872.3, 26.05, 3.08, 636.3},
        {"HINDUSTAN UNILEVER LTD.", 252.25, -2.4, -21.59, 1805.4},
        {"HDFC LTD", 2143.95, 112.15, 5.52, 268.25},
        {"ICICI BANK LTD.", 535.55, 42.25, 8.56, 339.3},
        {"IDEA CELLULAR LIMITED", 75.15, 4.4, 6.22, 30.25},
        {"MAHINDRA & MAHINDRA LTD", 509.5, 5.85, 1.16, 61.6},
        {"MARUTI SUZUKI INDIA LTD.", 690.2, 27.35, 4.13, 74.4},
        {"RELIANCE INDUSTRIES LTD", 1949.35, 16.5, 0.85, 651},
        {"SATYAM COMPUTER SERVICES", 297.85, 4.8, 1.64, 325},
        {"TATA MOTORS LIMITED", 343.9, -10.7, -3.02, 824.1},
        {"IFCI LTD", 36.75, 2.75, 8.09, 247.7},
    };
    return rows;
}

codec::ResponsePayload market_quote(const std::string& symbol) {
    for (const auto& row : market_rows()) {
        if (row.symbol == symbol) {
            return codec::ResponsePayload::params({
                {.name = "Open", .value = Value::decimal(row.open)},
                {.name = "High", .value = Value::decimal(row.high)},
                {.name = "Low", .value = Value::decimal(row.low)},
                {.name = "Close", .value = Value::decimal(row.close)},
            });
        }
    }
    return codec::ResponsePayload::fault({"soapenv:Client", "unknown symbol", std::nullopt});
}

MockServer builtin_server() {
    MockServer server;

    MockService echo;
    echo.path = "/echo";
    echo.ns = "urn:echo";
    echo.wsdl = std::string(echo_wsdl_text());
    echo.operations["Echo"] = {[](const std::vector<Parameter>& params) {
                                   return codec::ResponsePayload::params(params);
                               },
                               false};
    echo.operations["Notify"] = {nullptr, true};
    server.register_mock(std::move(echo));

    MockService fault;
    fault.path = "/fault";
    fault.ns = "urn:fault";
    fault.operations["Fail"] = {[](const std::vector<Parameter>&) {
                                    return codec::ResponsePayload::fault(
                                        {"soapenv:Client", "bad input", std::nullopt});
                                },
                                false};
    server.register_mock(std::move(fault));

    MockService market;
    market.path = "/market";
    market.ns = "urn:market";
    market.wsdl = std::string(market_wsdl_text());
    market.operations["GetQuote"] = {[](const std::vector<Parameter>& params) {
                                         for (const auto& p : params) {
                                             if (p.name == "symbol" &&
                                                 p.value.kind() == Value::Kind::Text) {
                                                 return market_quote(p.value.as_text());
                                             }
                                         }
                                         return codec::ResponsePayload::fault(
                                             {"soapenv:Client", "missing symbol", std::nullopt});
                                     },
                                     false};
    server.register_mock(std::move(market));

    return server;
}

std::string_view market_wsdl_text() {
    return R"(<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="MarketService"
                  targetNamespace="urn:market"
                  xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
                  xmlns:soap="http://schemas.xmlsoap.org/wsdl/soap/"
                  xmlns:xsd="http://www.w3.org/2001/XMLSchema"
                  xmlns:tns="urn:market">
  <wsdl:types>
    <xsd:schema targetNamespace="urn:market" elementFormDefault="qualified">
      <xsd:element name="GetQuote">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="symbol" type="xsd:string"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
      <xsd:element name="GetQuoteResponse">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="Open" type="xsd:double"/>
            <xsd:element name="High" type="xsd:double"/>
            <xsd:element name="Low" type="xsd:double"/>
            <xsd:element name="Close" type="xsd:double"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="GetQuoteRequest">
    <wsdl:part name="parameters" element="tns:GetQuote"/>
  </wsdl:message>
  <wsdl:message name="GetQuoteResponse">
    <wsdl:part name="parameters" element="tns:GetQuoteResponse"/>
  </wsdl:message>
  <wsdl:portType name="MarketPortType">
    <wsdl:operation name="GetQuote">
      <wsdl:input message="tns:GetQuoteRequest"/>
      <wsdl:output message="tns:GetQuoteResponse"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:binding name="MarketBinding" type="tns:MarketPortType">
    <soap:binding transport="http://schemas.xmlsoap.org/soap/http" style="document"/>
    <wsdl:operation name="GetQuote">
      <soap:operation soapAction="urn:market:GetQuote"/>
      <wsdl:input><soap:body use="literal"/></wsdl:input>
      <wsdl:output><soap:body use="literal"/></wsdl:output>
    </wsdl:operation>
  </wsdl:binding>
  <wsdl:service name="MarketService">
    <wsdl:port name="MarketPort" binding="tns:MarketBinding">
      <soap:address location="http://localhost:8190/market"/>
    </wsdl:port>
  </wsdl:service>
</wsdl:definitions>
)";
}

std::string_view echo_wsdl_text() {
    return R"(<?xml version="1.0" encoding="UTF-8"?>
<wsdl:definitions name="EchoService"
                  targetNamespace="urn:echo"
                  xmlns:wsdl="http://schemas.xmlsoap.org/wsdl/"
                  xmlns:soap="http://schemas.xmlsoap.org/wsdl/soap/"
                  xmlns:xsd="http://www.w3.org/2001/XMLSchema"
                  xmlns:tns="urn:echo">
  <wsdl:types>
    <xsd:schema targetNamespace="urn:echo" elementFormDefault="qualified">
      <xsd:element name="Echo">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="msg" type="xsd:string"/>
            <xsd:element name="repeat" type="xsd:int" minOccurs="0" maxOccurs="unbounded"/>
            <xsd:element name="flag" type="xsd:boolean" nillable="true"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
      <xsd:element name="EchoResponse">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="msg" type="xsd:string"/>
            <xsd:element name="repeat" type="xsd:int" minOccurs="0" maxOccurs="unbounded"/>
            <xsd:element name="flag" type="xsd:boolean" nillable="true"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
      <xsd:element name="Notify">
        <xsd:complexType>
          <xsd:sequence>
            <xsd:element name="note" type="xsd:string"/>
          </xsd:sequence>
        </xsd:complexType>
      </xsd:element>
    </xsd:schema>
  </wsdl:types>
  <wsdl:message name="EchoRequest">
    <wsdl:part name="parameters" element="tns:Echo"/>
  </wsdl:message>
  <wsdl:message name="EchoResponse">
    <wsdl:part name="parameters" element="tns:EchoResponse"/>
  </wsdl:message>
  <wsdl:message name="NotifyRequest">
    <wsdl:part name="parameters" element="tns:Notify"/>
  </wsdl:message>
  <wsdl:portType name="EchoPortType">
    <wsdl:operation name="Echo">
      <wsdl:input message="tns:EchoRequest"/>
      <wsdl:output message="tns:EchoResponse"/>
    </wsdl:operation>
    <wsdl:operation name="Notify">
      <wsdl:input message="tns:NotifyRequest"/>
    </wsdl:operation>
  </wsdl:portType>
  <wsdl:binding name="EchoBinding" type="tns:EchoPortType">
    <soap:binding transport="http://schemas.xmlsoap.org/soap/http" style="document"/>
    <wsdl:operation name="Echo">
      <soap:operation soapAction="urn:echo:Echo"/>
      <wsdl:input><soap:body use="literal"/></wsdl:input>
      <wsdl:output><soap:body use="literal"/></wsdl:output>
    </wsdl:operation>
    <wsdl:operation name="Notify">
      <soap:operation soapAction="urn:echo:Notify"/>
      <wsdl:input><soap:body use="literal"/></wsdl:input>
    </wsdl:operation>
  </wsdl:binding>
  <wsdl:service name="EchoService">
    <wsdl:port name="EchoPort" binding="tns:EchoBinding">
      <soap:address location="http://localhost:8190/echo"/>
    </wsdl:port>
  </wsdl:service>
</wsdl:definitions>
)";
}

std::string market_csv_text() {
    std::string out = "SYMBOL,Open,High,Low,Close\n";
    for (const auto& row : market_rows()) {
        out += row.symbol;
        out += ',';
        out += text::format_decimal(row.open);
        out += ',';
        out += text::format_decimal(row.high);
        out += ',';
        out += text::format_decimal(row.low);
        out += ',';
        out += text::format_decimal(row.close);
        out += '\n';
    }
    return out;
}

}  // namespace soapforge::mockserver
