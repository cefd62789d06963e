// Functional letter codes and positional designations of automation devices:
// parsing, formatting and the measured-variable semantics of the first letter.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "schemeforge/detail/strings.hpp"

namespace schemeforge {

// Measured variable encoded by the first letter of a functional code.
enum class MeasuredVariable : std::uint8_t {
    density,        // D
    electrical,     // E
    flow,           // F
    dimension,      // G (dimension / position)
    time,           // K
    level,          // L
    moisture,       // M
    pressure,       // P (pressure / vacuum)
    composition,    // Q (composition / quantity)
    radioactivity,  // R
    speed,          // S (speed / frequency)
    temperature,    // T
    multiple,       // U (several variables)
    viscosity,      // V
    mass,           // W
};

namespace letters {

struct VariableEntry {
    char letter;
    MeasuredVariable variable;
    std::string_view name;
};

inline constexpr std::array<VariableEntry, 15> kVariables{{
    {'D', MeasuredVariable::density, "density"},
    {'E', MeasuredVariable::electrical, "electrical quantity"},
    {'F', MeasuredVariable::flow, "flow"},
    {'G', MeasuredVariable::dimension, "dimension/position"},
    {'K', MeasuredVariable::time, "time"},
    {'L', MeasuredVariable::level, "level"},
    {'M', MeasuredVariable::moisture, "moisture"},
    {'P', MeasuredVariable::pressure, "pressure/vacuum"},
    {'Q', MeasuredVariable::composition, "composition/quantity"},
    {'R', MeasuredVariable::radioactivity, "radioactivity"},
    {'S', MeasuredVariable::speed, "speed/frequency"},
    {'T', MeasuredVariable::temperature, "temperature"},
    {'U', MeasuredVariable::multiple, "multiple variables"},
    {'V', MeasuredVariable::viscosity, "viscosity"},
    {'W', MeasuredVariable::mass, "mass"},
}};

// Modifiers refine the measured variable: D difference, F ratio, J scan,
// Q integration.
inline constexpr std::string_view kModifiers = "DFJQ";

// Function letters: E sensing, T transmit, K control station, I indicate,
// R record, C regulate, S switch, A alarm, Y compute, H manual.
inline constexpr std::string_view kFunctions = "ETKIRCSAYH";

inline constexpr bool is_variable(char c) {
    for (const auto& e : kVariables) {
        if (e.letter == c) return true;
    }
    return false;
}

inline constexpr bool is_modifier(char c) { return kModifiers.find(c) != std::string_view::npos; }
inline constexpr bool is_function(char c) { return kFunctions.find(c) != std::string_view::npos; }

}  // namespace letters

inline MeasuredVariable variable_of_letter(char c) {
    for (const auto& e : letters::kVariables) {
        if (e.letter == c) return e.variable;
    }
    return MeasuredVariable::multiple;  // unreachable for validated codes
}

inline char letter_of_variable(MeasuredVariable v) {
    for (const auto& e : letters::kVariables) {
        if (e.variable == v) return e.letter;
    }
    return 'U';
}

inline std::string_view variable_name(MeasuredVariable v) {
    for (const auto& e : letters::kVariables) {
        if (e.variable == v) return e.name;
    }
    return "multiple variables";
}

// Tag of an instrument: measured-variable letter, optional modifier and an
// ordered run of function letters ("TIR", "PDI", "FQI", ...).
struct FunctionalCode {
    char variable = 'T';
    char modifier = 0;           // 0 when absent
    std::string functions;      // each char a function letter, no duplicates

    bool operator==(const FunctionalCode&) const = default;
};

// Device label "12б": loop number plus letter suffix. The numeric part
// identifies the control loop.
struct PositionalDesignation {
    int loop = 1;
    std::string suffix;  // UTF-8 letters, possibly empty

    bool operator==(const PositionalDesignation&) const = default;
};

// Stable ordering for specification rows: loop ascending, then suffix by
// code point (UTF-8 byte order preserves code-point order).
inline bool designation_less(const PositionalDesignation& a, const PositionalDesignation& b) {
    if (a.loop != b.loop) return a.loop < b.loop;
    return a.suffix < b.suffix;
}

template <class T>
struct Parsed {
    std::optional<T> value;
    std::string error;

    explicit operator bool() const { return value.has_value(); }
};

inline std::string display_code(const FunctionalCode& code) {
    std::string out;
    out += code.variable;
    if (code.modifier != 0) out += code.modifier;
    out += code.functions;
    return out;
}

inline std::string display_designation(const PositionalDesignation& pos) {
    return std::to_string(pos.loop) + pos.suffix;
}

// Checks a hand-built code against the letter tables.
inline bool code_is_valid(const FunctionalCode& code) {
    if (!letters::is_variable(code.variable)) return false;
    if (code.modifier != 0 && !letters::is_modifier(code.modifier)) return false;
    for (std::size_t i = 0; i < code.functions.size(); ++i) {
        if (!letters::is_function(code.functions[i])) return false;
        if (code.functions.find(code.functions[i]) != i) return false;
    }
    return true;
}

inline bool designation_is_valid(const PositionalDesignation& pos) {
    if (pos.loop < 1) return false;
    std::size_t i = 0;
    while (i < pos.suffix.size()) {
        auto cp = detail::decode_utf8(pos.suffix, i);
        if (!cp || !detail::is_suffix_letter(*cp)) return false;
    }
    return true;
}

// First character names the measured variable. A second character in the
// modifier table is read as a modifier when it is not a function letter or
// the code is at least three characters long. The remainder must be
// distinct function letters.
inline Parsed<FunctionalCode> parse_code(std::string_view text) {
    if (text.empty()) return {std::nullopt, "empty functional code"};
    for (char c : text) {
        if (c < 'A' || c > 'Z') {
            return {std::nullopt, std::string("functional code contains non-letter character '") + c + "'"};
        }
    }
    FunctionalCode code;
    code.variable = text[0];
    if (!letters::is_variable(code.variable)) {
        return {std::nullopt, std::string("'") + code.variable + "' is not a measured-variable letter"};
    }
    std::size_t i = 1;
    if (text.size() >= 2) {
        const char second = text[1];
        const bool modifier_reading =
            letters::is_modifier(second) && (!letters::is_function(second) || text.size() >= 3);
        if (modifier_reading) {
            code.modifier = second;
            i = 2;
        }
    }
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (!letters::is_function(c)) {
            return {std::nullopt, std::string("'") + c + "' is not a function letter"};
        }
        if (code.functions.find(c) != std::string::npos) {
            return {std::nullopt, std::string("duplicate function letter '") + c + "'"};
        }
        code.functions += c;
    }
    return {code, {}};
}

inline MeasuredVariable measured_variable(const FunctionalCode& code) {
    return variable_of_letter(code.variable);
}

// Leading decimal digits form the loop number; the rest must be letters.
inline Parsed<PositionalDesignation> parse_designation(std::string_view text) {
    if (text.empty()) return {std::nullopt, "empty positional designation"};
    std::size_t i = 0;
    while (i < text.size() && detail::is_ascii_digit(text[i])) ++i;
    if (i == 0) return {std::nullopt, "positional designation must start with digits"};
    if (i > 9) return {std::nullopt, "loop number too large"};
    int loop = 0;
    for (std::size_t k = 0; k < i; ++k) loop = loop * 10 + (text[k] - '0');
    if (loop == 0) return {std::nullopt, "loop number must be positive"};
    PositionalDesignation pos;
    pos.loop = loop;
    std::size_t j = i;
    while (j < text.size()) {
        auto cp = detail::decode_utf8(text, j);
        if (!cp || !detail::is_suffix_letter(*cp)) {
            return {std::nullopt, "designation suffix may contain only letters"};
        }
    }
    pos.suffix = std::string(text.substr(i));
    return {pos, {}};
}

}  // namespace schemeforge
