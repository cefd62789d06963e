// Shared text utilities: UTF-8 decoding, letter classification for tag
// suffixes, millimeter formatting, XML and CSV escaping.
#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace schemeforge::detail {

// Decodes one UTF-8 sequence starting at byte i; advances i past it.
// Returns nullopt on malformed input (i advanced by one byte so callers
// can keep scanning).
inline std::optional<char32_t> decode_utf8(std::string_view s, std::size_t& i) {
    if (i >= s.size()) return std::nullopt;
    const auto b0 = static_cast<unsigned char>(s[i]);
    auto cont = [&](std::size_t k) {
        if (i + k >= s.size()) return false;
        return (static_cast<unsigned char>(s[i + k]) & 0xC0u) == 0x80u;
    };
    if (b0 < 0x80u) {
        i += 1;
        return static_cast<char32_t>(b0);
    }
    if ((b0 & 0xE0u) == 0xC0u && cont(1)) {
        const char32_t cp = ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
        i += 2;
        if (cp < 0x80) return std::nullopt;  // overlong
        return cp;
    }
    if ((b0 & 0xF0u) == 0xE0u && cont(1) && cont(2)) {
        const char32_t cp = ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6)
                            | (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
        i += 3;
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
        return cp;
    }
    if ((b0 & 0xF8u) == 0xF0u && cont(1) && cont(2) && cont(3)) {
        const char32_t cp = ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12)
                            | ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6)
                            | (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
        i += 4;
        if (cp < 0x10000 || cp > 0x10FFFF) return std::nullopt;
        return cp;
    }
    i += 1;
    return std::nullopt;
}

inline bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        if (!decode_utf8(s, i)) return false;
    }
    return true;
}

// Letters accepted in designation suffixes: ASCII, Latin-1/Extended-A and
// Cyrillic. Covers the Latin and Russian alphabets used on real schemes.
inline bool is_suffix_letter(char32_t cp) {
    if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true;
    if (cp >= 0x100 && cp <= 0x17F) return true;
    if (cp >= 0x400 && cp <= 0x4FF) return true;
    return false;
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

// Identifier tokens: ASCII [A-Za-z_][A-Za-z0-9_]*.
inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!is_ascii_alpha(s[0]) && s[0] != '_') return false;
    for (char c : s) {
        if (!is_ascii_alpha(c) && !is_ascii_digit(c) && c != '_') return false;
    }
    return true;
}

// Single-line text: no ASCII control characters (incl. tab) and no DEL.
inline bool is_single_line(std::string_view s) {
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7F) return false;
    }
    return true;
}

inline bool has_trailing_blank(std::string_view s) {
    return !s.empty() && (s.back() == ' ' || s.back() == '\t');
}

inline std::string strip_trailing_blanks(std::string_view s) {
    std::size_t n = s.size();
    while (n > 0 && (s[n - 1] == ' ' || s[n - 1] == '\t')) --n;
    return std::string(s.substr(0, n));
}

// Millimeter values print with up to three decimals and no trailing zeros.
// Uses to_chars so output is locale-independent.
inline std::string format_mm(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
    std::string out(buf, res.ptr);
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    if (out == "-0") out = "0";
    return out;
}

inline std::optional<double> parse_mm(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    if (s[i] == '-' || s[i] == '+') ++i;
    if (i >= s.size() || !is_ascii_digit(s[i])) return std::nullopt;
    while (i < s.size() && is_ascii_digit(s[i])) ++i;
    if (i < s.size() && s[i] == '.') {
        ++i;
        if (i >= s.size() || !is_ascii_digit(s[i])) return std::nullopt;
        while (i < s.size() && is_ascii_digit(s[i])) ++i;
    }
    if (i != s.size()) return std::nullopt;
    double value = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

inline std::string xml_escape(std::string_view s, bool attribute = false) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"':
            if (attribute) out += "&quot;";
            else out += c;
            break;
        default: out += c; break;
        }
    }
    return out;
}

// RFC 4180 field quoting: quote when the field contains a comma, a quote
// or a line break; embedded quotes are doubled.
inline std::string csv_field(std::string_view s) {
    const bool needs_quotes = s.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace schemeforge::detail
