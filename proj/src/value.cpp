#include "soapforge/value.hpp"

#include <cmath>

#include "soapforge/text.hpp"

namespace soapforge {

namespace {

template <typename T>
const T& get_or_throw(const std::variant<std::monostate, bool, std::int64_t, double, std::string,
                                         Value::Sequence, Value::Record>& v,
                      Value::Kind want, Value::Kind have) {
    if (const T* p = std::get_if<T>(&v)) return *p;
    throw Error(Errc::InvalidParameter,
                std::string("value is ") + kind_name(have) + ", not " + kind_name(want));
}

}  // namespace

Value Value::boolean(bool v) {
    Value out;
    out.data_ = v;
    return out;
}

Value Value::integer(std::int64_t v) {
    Value out;
    out.data_ = v;
    return out;
}

Value Value::decimal(double v) {
    if (!std::isfinite(v)) throw Error(Errc::InvalidParameter, "decimal value must be finite");
    Value out;
    out.data_ = v;
    return out;
}

Value Value::text(std::string v) {
    Value out;
    out.data_ = std::move(v);
    return out;
}

Value Value::sequence(Sequence items) {
    Value out;
    out.data_ = std::move(items);
    return out;
}

Value Value::record(Record members) {
    Value out;
    out.data_ = std::move(members);
    return out;
}

bool Value::as_boolean() const { return get_or_throw<bool>(data_, Kind::Boolean, kind()); }

std::int64_t Value::as_integer() const {
    return get_or_throw<std::int64_t>(data_, Kind::Integer, kind());
}

double Value::as_decimal() const { return get_or_throw<double>(data_, Kind::Decimal, kind()); }

const std::string& Value::as_text() const {
    return get_or_throw<std::string>(data_, Kind::Text, kind());
}

const Value::Sequence& Value::as_sequence() const {
    return get_or_throw<Sequence>(data_, Kind::Sequence, kind());
}

const Value::Record& Value::as_record() const {
    return get_or_throw<Record>(data_, Kind::Record, kind());
}

bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }

bool operator==(const Parameter& a, const Parameter& b) {
    return a.name == b.name && a.value == b.value && a.ns == b.ns && a.nullable == b.nullable &&
           a.min_occurs == b.min_occurs && a.max_occurs == b.max_occurs &&
           a.skeleton == b.skeleton;
}

const char* kind_name(Value::Kind kind) noexcept {
    switch (kind) {
        case Value::Kind::Null: return "Null";
        case Value::Kind::Boolean: return "Boolean";
        case Value::Kind::Integer: return "Integer";
        case Value::Kind::Decimal: return "Decimal";
        case Value::Kind::Text: return "Text";
        case Value::Kind::Sequence: return "Sequence";
        case Value::Kind::Record: return "Record";
    }
    return "Unknown";
}

bool is_ncname(std::string_view name) noexcept {
    if (name.empty()) return false;
    auto letter = [](unsigned char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
    };
    unsigned char first = static_cast<unsigned char>(name.front());
    if (!letter(first) && first != '_') return false;
    for (unsigned char c : name.substr(1)) {
        if (!letter(c) && !(c >= '0' && c <= '9') && c != '_' && c != '-' && c != '.') return false;
    }
    return true;
}

namespace {

void check_occurrence(const Parameter& p, const std::string& path, bool check_name,
                      std::vector<Violation>& out) {
    using Clause = Violation::Clause;

    if (check_name && !is_ncname(p.name)) {
        out.push_back({Clause::InvalidName, path, "name is not a non-empty NCName"});
    }
    if (p.min_occurs < 0) {
        out.push_back({Clause::NegativeMinOccurs, path, "min_occurs < 0"});
    }
    if (p.max_occurs != kUnbounded && p.max_occurs < 1) {
        out.push_back({Clause::InvalidMaxOccurs, path, "max_occurs must be >= 1 or UNBOUNDED"});
    }
    if (p.max_occurs != kUnbounded && p.min_occurs > p.max_occurs) {
        out.push_back({Clause::OccurrenceRangeInverted, path,
                       text::format_integer(p.min_occurs) + " > " +
                           text::format_integer(p.max_occurs)});
    }

    switch (p.value.kind()) {
        case Value::Kind::Null:
            if (!p.skeleton && !p.nullable && p.min_occurs != 0) {
                out.push_back({Clause::NullNotAllowed, path,
                               "value is Null but parameter is required and not nullable"});
            }
            break;
        case Value::Kind::Sequence: {
            const auto& items = p.value.as_sequence();
            if (p.max_occurs != kUnbounded && p.max_occurs <= 1) {
                out.push_back({Clause::SequenceNotAllowed, path,
                               "Sequence value requires max_occurs > 1 or UNBOUNDED"});
            }
            auto len = static_cast<int>(items.size());
            if (len < p.min_occurs ||
                (p.max_occurs != kUnbounded && len > p.max_occurs)) {
                out.push_back({Clause::SequenceLengthOutOfRange, path,
                               "length " + text::format_integer(len) + " outside [" +
                                   text::format_integer(p.min_occurs) + ", " +
                                   (p.max_occurs == kUnbounded
                                        ? std::string("UNBOUNDED")
                                        : text::format_integer(p.max_occurs)) +
                                   "]"});
            }
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (items[i].kind() == Value::Kind::Sequence) {
                    out.push_back({Clause::SequenceNested,
                                   path + "[" + text::format_integer(static_cast<int>(i)) + "]",
                                   "sequence item may not itself be a Sequence"});
                } else if (items[i].kind() == Value::Kind::Record) {
                    for (const auto& member : items[i].as_record()) {
                        check_occurrence(member,
                                         path + "[" +
                                             text::format_integer(static_cast<int>(i)) + "]." +
                                             member.name,
                                         check_name, out);
                    }
                }
            }
            break;
        }
        case Value::Kind::Record:
            for (const auto& member : p.value.as_record()) {
                check_occurrence(member, path + "." + member.name, check_name, out);
            }
            break;
        default:
            break;
    }
}

}  // namespace

std::vector<Violation> validate_occurrence(const Parameter& p) {
    std::vector<Violation> out;
    check_occurrence(p, p.name, /*check_name=*/false, out);
    return out;
}

std::vector<Violation> validate_parameter(const Parameter& p) {
    std::vector<Violation> out;
    check_occurrence(p, p.name, /*check_name=*/true, out);
    return out;
}

}  // namespace soapforge
