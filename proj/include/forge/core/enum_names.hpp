#pragma once

#include <forge/core/error.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace forge {

/// Specialize with a `static constexpr std::array names` listing the wire
/// spelling of every enumerator in declaration order.
template <typename E>
struct EnumNames;

template <typename E>
std::string_view to_string(E value)
{
    return EnumNames<E>::names[static_cast<std::size_t>(value)];
}

template <typename E>
std::optional<E> enum_from_string(std::string_view text)
{
    const auto& names = EnumNames<E>::names;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == text)
            return static_cast<E>(i);
    return std::nullopt;
}

template <typename E>
E parse_enum(std::string_view text)
{
    if (auto v = enum_from_string<E>(text))
        return *v;
    throw Error(ErrorCode::InvalidArgument, "unknown enum value '" + std::string(text) + "'");
}

/// "a | b | c" rendering used in schema error messages.
template <typename E>
std::string enum_choices()
{
    std::string out;
    for (auto n : EnumNames<E>::names) {
        if (!out.empty())
            out += " | ";
        out += n;
    }
    return out;
}

}  // namespace forge
