#include <forge/core/canonical_json.hpp>
#include <forge/core/error.hpp>
#include <forge/core/validate.hpp>

#include <cmath>
#include <cstdio>

namespace forge {

namespace {

void append_double(std::string& out, double value)
{
    if (!std::isfinite(value))
        throw Error(ErrorCode::InvalidArgument, "non-finite number in canonical JSON");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    if (std::string_view(buf) == "-0.000000")
        out += "0.000000";
    else
        out += buf;
}

void append(std::string& out, const Json& v)
{
    switch (v.type()) {
    case Json::value_t::object: {
        out += '{';
        bool first = true;
        // nlohmann's default object_t is a std::map, so iteration is already sorted
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first)
                out += ',';
            first = false;
            out += Json(it.key()).dump();
            out += ':';
            append(out, it.value());
        }
        out += '}';
        break;
    }
    case Json::value_t::array: {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                out += ',';
            append(out, v[i]);
        }
        out += ']';
        break;
    }
    case Json::value_t::number_float:
        append_double(out, v.get<double>());
        break;
    default:
        out += v.dump(-1, ' ', false, Json::error_handler_t::strict);
        break;
    }
}

}  // namespace

std::string canonical_dump(const Json& value)
{
    std::string out;
    append(out, value);
    return out;
}

double quantize6(double value)
{
    const double q = std::round(value * 1e6) / 1e6;
    return q == 0.0 ? 0.0 : q;
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw SchemaViolation({{"$", std::string("invalid JSON: ") + e.what()}});
    }
}

}  // namespace forge
