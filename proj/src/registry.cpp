#include "soapforge/registry.hpp"

#include <algorithm>
#include <mutex>

#include "soapforge/error.hpp"

namespace soapforge::registry {

namespace {

struct Token {
    enum class Kind { Ident, LBrace, RBrace, LParen, RParen, Less, Greater, Comma, Semi, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_trivia();
        Token tok;
        tok.line = line_;
        tok.col = col_;
        if (pos_ >= src_.size()) {
            tok.kind = Token::Kind::End;
            return tok;
        }
        char c = src_[pos_];
        switch (c) {
            case '{': return punct(tok, Token::Kind::LBrace);
            case '}': return punct(tok, Token::Kind::RBrace);
            case '(': return punct(tok, Token::Kind::LParen);
            case ')': return punct(tok, Token::Kind::RParen);
            case '<': return punct(tok, Token::Kind::Less);
            case '>': return punct(tok, Token::Kind::Greater);
            case ',': return punct(tok, Token::Kind::Comma);
            case ';': return punct(tok, Token::Kind::Semi);
            default: break;
        }
        if (is_ident_start(c)) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && is_ident_continue(src_[pos_])) advance();
            tok.kind = Token::Kind::Ident;
            tok.text = std::string(src_.substr(start, pos_ - start));
            return tok;
        }
        throw Error(Errc::SyntaxError, std::string("unexpected character '") + c + "' at line " +
                                           std::to_string(line_) + ", column " +
                                           std::to_string(col_));
    }

private:
    static bool is_ident_start(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }
    static bool is_ident_continue(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token punct(Token tok, Token::Kind kind) {
        tok.kind = kind;
        tok.text = src_[pos_];
        advance();
        return tok;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

[[noreturn]] void syntax_error(const Token& tok, const std::string& expected) {
    std::string got = tok.kind == Token::Kind::End ? "end of input" : "'" + tok.text + "'";
    throw Error(Errc::SyntaxError, "expected " + expected + ", got " + got + " at line " +
                                       std::to_string(tok.line) + ", column " +
                                       std::to_string(tok.col));
}

class Parser {
public:
    explicit Parser(std::string_view src) : lexer_(src) { tok_ = lexer_.next(); }

    InterfaceDef parse() {
        expect_keyword("interface");
        InterfaceDef def;
        def.name = expect_ident("interface name");
        expect(Token::Kind::LBrace, "'{'");
        while (tok_.kind != Token::Kind::RBrace) {
            MethodSig method = parse_method();
            if (def.find_method(method.name) != nullptr) {
                throw Error(Errc::DuplicateMethod,
                            "method '" + method.name + "' declared twice in interface '" +
                                def.name + "'");
            }
            def.methods.push_back(std::move(method));
        }
        expect(Token::Kind::RBrace, "'}'");
        if (tok_.kind != Token::Kind::End) syntax_error(tok_, "end of input");
        return def;
    }

private:
    MethodSig parse_method() {
        MethodSig method;
        method.return_type = parse_type();
        method.name = expect_ident("method name");
        expect(Token::Kind::LParen, "'('");
        if (tok_.kind != Token::Kind::RParen) {
            while (true) {
                std::string type = parse_type();
                std::string name = expect_ident("parameter name");
                method.params.emplace_back(std::move(type), std::move(name));
                if (tok_.kind != Token::Kind::Comma) break;
                consume();
            }
        }
        expect(Token::Kind::RParen, "')'");
        expect(Token::Kind::Semi, "';'");
        return method;
    }

    std::string parse_type() {
        std::string base = expect_ident("type name");
        if (base == "list") {
            expect(Token::Kind::Less, "'<'");
            std::string inner = parse_type();
            expect(Token::Kind::Greater, "'>'");
            return "list<" + inner + ">";
        }
        return base;
    }

    void consume() { tok_ = lexer_.next(); }

    void expect(Token::Kind kind, const std::string& what) {
        if (tok_.kind != kind) syntax_error(tok_, what);
        consume();
    }

    std::string expect_ident(const std::string& what) {
        if (tok_.kind != Token::Kind::Ident) syntax_error(tok_, what);
        std::string text = std::move(tok_.text);
        consume();
        return text;
    }

    void expect_keyword(const std::string& keyword) {
        if (tok_.kind != Token::Kind::Ident || tok_.text != keyword) {
            syntax_error(tok_, "'" + keyword + "'");
        }
        consume();
    }

    Lexer lexer_;
    Token tok_;
};

}  // namespace

const MethodSig* InterfaceDef::find_method(std::string_view method_name) const noexcept {
    for (const auto& m : methods) {
        if (m.name == method_name) return &m;
    }
    return nullptr;
}

InterfaceDef parse_idl(std::string_view text) { return Parser(text).parse(); }

std::string pretty_print(const InterfaceDef& def) {
    std::string out = "interface " + def.name + " {\n";
    for (const auto& m : def.methods) {
        out += "    " + m.return_type + " " + m.name + "(";
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            if (i > 0) out += ", ";
            out += m.params[i].first + " " + m.params[i].second;
        }
        out += ");\n";
    }
    out += "}\n";
    return out;
}

bool ServiceHandle::has_method(std::string_view name) const {
    auto names = method_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<std::string> DispatchHandle::method_names() const {
    std::vector<std::string> out;
    out.reserve(methods_.size());
    for (const auto& [name, fn] : methods_) out.push_back(name);
    return out;
}

Arg DispatchHandle::call(const std::string& method, const std::vector<Arg>& args) {
    for (auto& [name, fn] : methods_) {
        if (name == method) return fn(args);
    }
    throw Error(Errc::NotFound, "service exposes no method '" + method + "'");
}

void DispatchHandle::add_method(std::string name, Method method) {
    methods_.emplace_back(std::move(name), std::move(method));
}

const Value& arg_value(const std::vector<Arg>& args, std::size_t index) {
    if (index >= args.size()) {
        throw Error(Errc::InvalidParameter, "missing argument " + std::to_string(index));
    }
    const Value* v = std::get_if<Value>(&args[index]);
    if (v == nullptr) {
        throw Error(Errc::InvalidParameter,
                    "argument " + std::to_string(index) + " must be a value, not a handle");
    }
    return *v;
}

HandlePtr arg_handle(const std::vector<Arg>& args, std::size_t index) {
    if (index >= args.size()) {
        throw Error(Errc::InvalidParameter, "missing argument " + std::to_string(index));
    }
    const HandlePtr* h = std::get_if<HandlePtr>(&args[index]);
    if (h == nullptr || *h == nullptr) {
        throw Error(Errc::InvalidParameter,
                    "argument " + std::to_string(index) + " must be a service handle");
    }
    return *h;
}

std::string arg_text(const std::vector<Arg>& args, std::size_t index) {
    const Value& v = arg_value(args, index);
    if (v.kind() != Value::Kind::Text) {
        throw Error(Errc::InvalidParameter,
                    "argument " + std::to_string(index) + " must be a Text value");
    }
    return v.as_text();
}

void Registry::register_service(std::string service_name, InterfaceDef iface, Factory factory) {
    if (!factory) throw Error(Errc::InvalidParameter, "factory must be callable");
    std::unique_lock lock(mutex_);
    for (const auto& entry : entries_) {
        if (entry.name == service_name) {
            throw Error(Errc::AlreadyRegistered,
                        "service '" + service_name + "' is already registered");
        }
    }
    HandlePtr probe = factory();
    if (probe == nullptr) {
        throw Error(Errc::NonConformant, "factory for '" + service_name + "' produced no handle");
    }
    std::vector<std::string> missing;
    for (const auto& method : iface.methods) {
        if (!probe->has_method(method.name)) missing.push_back(method.name);
    }
    if (!missing.empty()) {
        std::string joined;
        for (const auto& name : missing) {
            if (!joined.empty()) joined += ", ";
            joined += name;
        }
        throw Error(Errc::NonConformant, "service '" + service_name +
                                             "' does not implement interface '" + iface.name +
                                             "': missing " + joined);
    }
    entries_.push_back({std::move(service_name), std::move(iface), std::move(factory)});
}

HandlePtr Registry::create_instance(const std::string& service_name) const {
    Factory factory;
    {
        std::shared_lock lock(mutex_);
        for (const auto& entry : entries_) {
            if (entry.name == service_name) {
                factory = entry.factory;
                break;
            }
        }
    }
    if (!factory) {
        throw Error(Errc::UnknownService, "no service registered as '" + service_name + "'");
    }
    return factory();
}

std::vector<std::string> Registry::enumerate() const {
    std::shared_lock lock(mutex_);
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& entry : entries_) out.push_back(entry.name);
    return out;
}

const InterfaceDef& Registry::interface_of(const std::string& service_name) const {
    std::shared_lock lock(mutex_);
    for (const auto& entry : entries_) {
        if (entry.name == service_name) return entry.iface;
    }
    throw Error(Errc::UnknownService, "no service registered as '" + service_name + "'");
}

}  // namespace soapforge::registry
