// The scheme description language: a small statement/block text format that
// carries every element parameter. Parsing builds a validated Scheme;
// serialization emits the canonical form (sorted elements, fixed field
// order, trimmed numbers) that parsing maps back to the same value.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schemeforge/detail/strings.hpp"
#include "schemeforge/model.hpp"
#include "schemeforge/tagcodes.hpp"

namespace schemeforge {

struct ParseResult {
    std::optional<Scheme> scheme;  // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return scheme.has_value(); }
};

namespace dsl_detail {

enum class TokKind : std::uint8_t { word, string, lbrace, rbrace, semi, eof };

struct Token {
    TokKind kind = TokKind::eof;
    std::string text;
    int line = 1;
    int column = 1;
};

struct LexError {
    std::string message;
    int line = 1;
    int column = 1;
};

// Tokenizes the whole source. Words are runs of any non-delimiter bytes, so
// codes, numbers, anchor references and Cyrillic designations all lex the
// same way. Throws LexError on malformed input.
inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto is_delim = [](char32_t cp) {
        return cp == U'{' || cp == U'}' || cp == U';' || cp == U'"' || cp == U'#' || cp == U' '
               || cp == U'\t' || cp == U'\r' || cp == U'\n';
    };

    while (i < src.size()) {
        const std::size_t start = i;
        const int tline = line;
        const int tcol = col;
        auto cp = detail::decode_utf8(src, i);
        if (!cp) throw LexError{"invalid UTF-8 byte", tline, tcol};

        if (*cp == U'\n') {
            ++line;
            col = 1;
            continue;
        }
        if (*cp == U' ' || *cp == U'\t' || *cp == U'\r') {
            ++col;
            continue;
        }
        if (*cp == U'#') {
            while (i < src.size() && src[i] != '\n') {
                auto c = detail::decode_utf8(src, i);
                if (!c) throw LexError{"invalid UTF-8 byte", line, col};
            }
            continue;  // newline handled by the main loop
        }
        if (*cp == U'{' || *cp == U'}' || *cp == U';') {
            TokKind k = *cp == U'{' ? TokKind::lbrace : (*cp == U'}' ? TokKind::rbrace : TokKind::semi);
            out.push_back({k, std::string(1, static_cast<char>(*cp)), tline, tcol});
            ++col;
            continue;
        }
        if (*cp == U'"') {
            ++col;
            std::string value;
            bool closed = false;
            while (i < src.size()) {
                const int cl = line;
                const int cc = col;
                const std::size_t before = i;
                auto c = detail::decode_utf8(src, i);
                if (!c) throw LexError{"invalid UTF-8 byte", cl, cc};
                if (*c == U'\n') throw LexError{"unterminated string", tline, tcol};
                ++col;
                if (*c == U'"') {
                    closed = true;
                    break;
                }
                if (*c == U'\\') {
                    if (i >= src.size()) throw LexError{"unterminated string", tline, tcol};
                    auto esc = detail::decode_utf8(src, i);
                    if (!esc) throw LexError{"invalid UTF-8 byte", cl, cc};
                    ++col;
                    if (*esc == U'"') value += '"';
                    else if (*esc == U'\\') value += '\\';
                    else throw LexError{"unknown escape in string", cl, cc};
                    continue;
                }
                if (*c < 0x20 || *c == 0x7F) throw LexError{"control character in string", cl, cc};
                value.append(src.substr(before, i - before));
            }
            if (!closed) throw LexError{"unterminated string", tline, tcol};
            out.push_back({TokKind::string, value, tline, tcol});
            continue;
        }
        // word token
        std::size_t end = i;
        ++col;
        while (end < src.size()) {
            std::size_t probe = end;
            auto c = detail::decode_utf8(src, probe);
            if (!c) throw LexError{"invalid UTF-8 byte", line, col};
            if (is_delim(*c)) break;
            end = probe;
            ++col;
        }
        out.push_back({TokKind::word, std::string(src.substr(start, end - start)), tline, tcol});
        i = end;
    }
    out.push_back({TokKind::eof, "", line, col});
    return out;
}

}  // namespace dsl_detail

namespace dsl_detail {

struct SyntaxError {
    std::string message;
    int line = 1;
    int column = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Scheme parse(std::map<std::string, std::pair<int, int>>& positions, std::vector<Diagnostic>& semantic) {
        expect_header();
        Scheme scheme;
        while (peek().kind != TokKind::eof) {
            const Token kind_tok = expect(TokKind::word, "element kind");
            const Token id_tok = expect(TokKind::word, "element id");
            if (!detail::is_identifier(id_tok.text)) {
                throw SyntaxError{"element id '" + id_tok.text + "' is not a valid identifier", id_tok.line,
                                  id_tok.column};
            }
            positions.emplace(id_tok.text, std::make_pair(id_tok.line, id_tok.column));
            expect(TokKind::lbrace, "'{'");
            if (kind_tok.text == "panel") scheme.panels.push_back(parse_panel(id_tok.text));
            else if (kind_tok.text == "instrument") scheme.instruments.push_back(parse_instrument(id_tok.text, semantic));
            else if (kind_tok.text == "actuator") scheme.actuators.push_back(parse_actuator(id_tok.text, semantic));
            else if (kind_tok.text == "table") scheme.tables.push_back(parse_table(id_tok.text));
            else if (kind_tok.text == "line") scheme.lines.push_back(parse_line(id_tok.text));
            else
                throw SyntaxError{"unknown element kind '" + kind_tok.text + "'", kind_tok.line, kind_tok.column};
        }
        return scheme;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& get() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

    Token expect(TokKind k, const char* what) {
        const Token& t = peek();
        if (t.kind != k) {
            throw SyntaxError{std::string("expected ") + what + ", found '" + describe(t) + "'", t.line, t.column};
        }
        return get();
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
        case TokKind::eof: return "end of file";
        case TokKind::string: return "\"" + t.text + "\"";
        default: return t.text;
        }
    }

    void expect_header() {
        const Token& a = peek();
        if (a.kind != TokKind::word || a.text != "scheme" || a.line != 1) {
            throw SyntaxError{"first line must be 'scheme v1'", a.line, a.column};
        }
        get();
        const Token& b = peek();
        if (b.kind != TokKind::word || b.text != "v1" || b.line != 1) {
            throw SyntaxError{"first line must be 'scheme v1'", b.line, b.column};
        }
        get();
    }

    // Consumes the field separator: a ';', or nothing when the block closes.
    void end_field(const Token& at) {
        if (peek().kind == TokKind::semi) {
            get();
            return;
        }
        if (peek().kind == TokKind::rbrace) return;
        throw SyntaxError{"expected ';' after field '" + at.text + "'", peek().line, peek().column};
    }

    double number_arg(const char* field) {
        const Token t = expect(TokKind::word, "number");
        auto v = detail::parse_mm(t.text);
        if (!v) {
            throw SyntaxError{std::string("field '") + field + "' expects a number, found '" + t.text + "'",
                              t.line, t.column};
        }
        return *v;
    }

    std::string string_arg(const char* field) {
        const Token& t = peek();
        if (t.kind != TokKind::string) {
            throw SyntaxError{std::string("field '") + field + "' expects a quoted string", t.line, t.column};
        }
        get();
        return detail::strip_trailing_blanks(t.text);
    }

    void mark_seen(std::set<std::string>& seen, const Token& key) {
        if (!seen.insert(key.text).second) {
            throw SyntaxError{"duplicate field '" + key.text + "'", key.line, key.column};
        }
    }

    void require_field(const std::set<std::string>& seen, const char* key, const std::string& id,
                       const Token& brace) {
        if (!seen.count(key)) {
            throw SyntaxError{"element '" + id + "' is missing required field '" + std::string(key) + "'",
                              brace.line, brace.column};
        }
    }

    Panel parse_panel(const std::string& id) {
        Panel p;
        p.id = id;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "field name");
            mark_seen(seen, key);
            if (key.text == "at") {
                p.origin.x = number_arg("at");
                p.origin.y = number_arg("at");
            } else if (key.text == "size") {
                p.width = number_arg("size");
                p.height = number_arg("size");
            } else if (key.text == "label") {
                p.label = string_arg("label");
            } else {
                throw SyntaxError{"unknown panel field '" + key.text + "'", key.line, key.column};
            }
            end_field(key);
        }
        const Token closing = get();
        require_field(seen, "at", id, closing);
        require_field(seen, "size", id, closing);
        return p;
    }

    SpecProps parse_spec_block() {
        expect(TokKind::lbrace, "'{'");
        SpecProps spec;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "spec field name");
            mark_seen(seen, key);
            std::string* slot = nullptr;
            if (key.text == "designation") slot = &spec.designation;
            else if (key.text == "name") slot = &spec.name;
            else if (key.text == "mass") slot = &spec.mass;
            else if (key.text == "note") slot = &spec.note;
            else if (key.text == "type_brand") slot = &spec.type_brand;
            else if (key.text == "unit") slot = &spec.unit;
            else if (key.text == "unit_code") slot = &spec.unit_code;
            else if (key.text == "manufacturer_code") slot = &spec.manufacturer_code;
            else if (key.text == "equipment_code") slot = &spec.equipment_code;
            else if (key.text == "price") slot = &spec.price;
            else if (key.text == "name_and_tech") slot = &spec.name_and_tech;
            else throw SyntaxError{"unknown spec field '" + key.text + "'", key.line, key.column};
            *slot = string_arg(key.text.c_str());
            end_field(key);
        }
        get();  // '}'
        return spec;
    }

    FunctionalCode code_arg(std::vector<Diagnostic>& semantic, const std::string& id) {
        const Token t = expect(TokKind::word, "functional code");
        auto parsed = parse_code(t.text);
        if (!parsed) {
            semantic.push_back({Severity::error, parsed.error, id, t.line, t.column});
            return FunctionalCode{};  // placeholder; errors suppress the scheme
        }
        return *parsed.value;
    }

    PositionalDesignation pos_arg(std::vector<Diagnostic>& semantic, const std::string& id) {
        const Token t = expect(TokKind::word, "positional designation");
        auto parsed = parse_designation(t.text);
        if (!parsed) {
            semantic.push_back({Severity::error, parsed.error, id, t.line, t.column});
            return PositionalDesignation{};
        }
        return *parsed.value;
    }

    LineStyle style_arg(const char* field) {
        const Token t = expect(TokKind::word, "line style");
        if (t.text == "normal") return LineStyle::normal;
        if (t.text == "dashed") return LineStyle::dashed;
        throw SyntaxError{std::string("field '") + field + "' expects 'normal' or 'dashed'", t.line, t.column};
    }

    Instrument parse_instrument(const std::string& id, std::vector<Diagnostic>& semantic) {
        Instrument inst;
        inst.id = id;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "field name");
            mark_seen(seen, key);
            if (key.text == "at") {
                inst.attach.x = number_arg("at");
                inst.attach.y = number_arg("at");
            } else if (key.text == "code") {
                inst.code = code_arg(semantic, id);
            } else if (key.text == "pos") {
                inst.pos = pos_arg(semantic, id);
            } else if (key.text == "panel") {
                inst.on_panel = true;
            } else if (key.text == "upper_index") {
                inst.upper_index = string_arg("upper_index");
            } else if (key.text == "lower_index") {
                inst.lower_index = string_arg("lower_index");
            } else if (key.text == "line_kind") {
                inst.line_kind = style_arg("line_kind");
            } else if (key.text == "comment") {
                inst.comment = string_arg("comment");
            } else if (key.text == "spec") {
                inst.spec = parse_spec_block();
            } else {
                throw SyntaxError{"unknown instrument field '" + key.text + "'", key.line, key.column};
            }
            end_field(key);
        }
        const Token closing = get();
        require_field(seen, "at", id, closing);
        require_field(seen, "code", id, closing);
        return inst;
    }

    Actuator parse_actuator(const std::string& id, std::vector<Diagnostic>& semantic) {
        Actuator act;
        act.id = id;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "field name");
            mark_seen(seen, key);
            if (key.text == "at") {
                act.attach.x = number_arg("at");
                act.attach.y = number_arg("at");
            } else if (key.text == "manual") {
                act.manual_control = true;
            } else if (key.text == "normal_position") {
                const Token t = expect(TokKind::word, "normal position");
                if (t.text == "open") act.normal_position = NormalPosition::open;
                else if (t.text == "closed") act.normal_position = NormalPosition::closed;
                else if (t.text == "unspecified") act.normal_position = NormalPosition::unspecified;
                else
                    throw SyntaxError{"normal_position expects 'open', 'closed' or 'unspecified'", t.line,
                                      t.column};
            } else if (key.text == "pos") {
                act.pos = pos_arg(semantic, id);
            } else if (key.text == "comment") {
                act.comment = string_arg("comment");
            } else if (key.text == "spec") {
                act.spec = parse_spec_block();
            } else {
                throw SyntaxError{"unknown actuator field '" + key.text + "'", key.line, key.column};
            }
            end_field(key);
        }
        const Token closing = get();
        require_field(seen, "at", id, closing);
        return act;
    }

    LocationTable parse_table(const std::string& id) {
        LocationTable tbl;
        tbl.id = id;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "field name");
            if (key.text != "section") mark_seen(seen, key);
            if (key.text == "at") {
                tbl.origin.x = number_arg("at");
                tbl.origin.y = number_arg("at");
            } else if (key.text == "width") {
                tbl.width = number_arg("width");
            } else if (key.text == "section") {
                TableSection sec;
                sec.name = string_arg("section");
                sec.height = number_arg("section");
                tbl.sections.push_back(sec);
            } else if (key.text == "ends_here") {
                const Token t = expect(TokKind::word, "true or false");
                if (t.text == "true") tbl.ends_here = true;
                else if (t.text == "false") tbl.ends_here = false;
                else throw SyntaxError{"ends_here expects 'true' or 'false'", t.line, t.column};
            } else {
                throw SyntaxError{"unknown table field '" + key.text + "'", key.line, key.column};
            }
            end_field(key);
        }
        const Token closing = get();
        require_field(seen, "at", id, closing);
        require_field(seen, "width", id, closing);
        if (tbl.sections.empty()) {
            throw SyntaxError{"table '" + id + "' needs at least one section", closing.line, closing.column};
        }
        return tbl;
    }

    Waypoint waypoint_ref(const Token& t) {
        std::string_view body{t.text};
        body.remove_prefix(1);  // '@'
        const auto dot = body.find('.');
        if (dot == std::string_view::npos || dot == 0 || dot + 1 == body.size()) {
            throw SyntaxError{"anchor reference must look like '@id.anchor'", t.line, t.column};
        }
        AnchorRef ref;
        ref.element_id = std::string(body.substr(0, dot));
        ref.anchor = std::string(body.substr(dot + 1));
        if (!detail::is_identifier(ref.element_id)) {
            throw SyntaxError{"anchor reference id '" + ref.element_id + "' is not a valid identifier", t.line,
                              t.column};
        }
        return ref;
    }

    ConnectionLine parse_line(const std::string& id) {
        ConnectionLine line;
        line.id = id;
        std::set<std::string> seen;
        while (peek().kind != TokKind::rbrace) {
            const Token key = expect(TokKind::word, "field name");
            mark_seen(seen, key);
            if (key.text == "points") {
                while (peek().kind == TokKind::word) {
                    const Token t = get();
                    if (!t.text.empty() && t.text[0] == '@') {
                        line.waypoints.push_back(waypoint_ref(t));
                    } else {
                        auto x = detail::parse_mm(t.text);
                        if (!x) {
                            throw SyntaxError{"waypoint expects a coordinate pair or '@id.anchor', found '"
                                                  + t.text + "'",
                                              t.line, t.column};
                        }
                        const double y = number_arg("points");
                        line.waypoints.push_back(Point{*x, y});
                    }
                }
            } else if (key.text == "style") {
                line.style = style_arg("style");
            } else {
                throw SyntaxError{"unknown line field '" + key.text + "'", key.line, key.column};
            }
            end_field(key);
        }
        const Token closing = get();
        require_field(seen, "points", id, closing);
        return line;
    }
};

}  // namespace dsl_detail

// Parses a scheme description. On success the returned scheme satisfies
// validate(); any failure carries at least one positioned error diagnostic.
inline ParseResult parse_scheme(std::string_view source) {
    ParseResult result;
    std::map<std::string, std::pair<int, int>> positions;
    std::vector<Diagnostic> semantic;
    Scheme scheme;
    try {
        dsl_detail::Parser parser(dsl_detail::lex(source));
        scheme = parser.parse(positions, semantic);
    } catch (const dsl_detail::LexError& e) {
        result.diagnostics.push_back({Severity::error, e.message, "", e.line, e.column});
        return result;
    } catch (const dsl_detail::SyntaxError& e) {
        result.diagnostics.push_back({Severity::error, e.message, "", e.line, e.column});
        return result;
    }

    result.diagnostics = std::move(semantic);
    for (auto diag : validate(scheme)) {
        const auto it = positions.find(diag.element_id);
        if (it != positions.end()) {
            diag.line = it->second.first;
            diag.column = it->second.second;
        } else {
            diag.line = 1;
            diag.column = 1;
        }
        result.diagnostics.push_back(diag);
    }

    bool has_error = false;
    for (const auto& d : result.diagnostics) {
        if (d.severity == Severity::error) has_error = true;
    }
    if (!has_error) result.scheme = std::move(scheme);
    return result;
}

namespace dsl_detail {

inline std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

inline void field_line(std::string& out, std::string_view key, std::string_view args) {
    out += "  ";
    out += key;
    if (!args.empty()) {
        out += ' ';
        out += args;
    }
    out += ";\n";
}

inline std::string point_args(const Point& p) {
    return detail::format_mm(p.x) + " " + detail::format_mm(p.y);
}

inline void spec_block(std::string& out, const SpecProps& spec) {
    if (spec.empty()) return;
    out += "  spec {\n";
    auto field = [&](std::string_view key, const std::string& value) {
        if (value.empty()) return;
        out += "    ";
        out += key;
        out += ' ';
        out += quote(value);
        out += ";\n";
    };
    field("designation", spec.designation);
    field("name", spec.name);
    field("mass", spec.mass);
    field("note", spec.note);
    field("type_brand", spec.type_brand);
    field("unit", spec.unit);
    field("unit_code", spec.unit_code);
    field("manufacturer_code", spec.manufacturer_code);
    field("equipment_code", spec.equipment_code);
    field("price", spec.price);
    field("name_and_tech", spec.name_and_tech);
    out += "  }\n";
}

}  // namespace dsl_detail

// Canonical text form: elements sorted by kind then id, fixed field order,
// defaults omitted. Deterministic byte-for-byte; parsing it reproduces the
// input scheme structurally.
inline std::string serialize_scheme(const Scheme& scheme) {
    using dsl_detail::field_line;
    using dsl_detail::point_args;
    using dsl_detail::quote;

    std::string out = "scheme v1\n";

    auto sorted_by_id = [](auto items) {
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        return items;
    };

    for (const auto& p : sorted_by_id(scheme.panels)) {
        out += "\npanel " + p.id + " {\n";
        field_line(out, "at", point_args(p.origin));
        field_line(out, "size", detail::format_mm(p.width) + " " + detail::format_mm(p.height));
        if (!p.label.empty()) field_line(out, "label", quote(p.label));
        out += "}\n";
    }

    for (const auto& inst : sorted_by_id(scheme.instruments)) {
        out += "\ninstrument " + inst.id + " {\n";
        field_line(out, "at", point_args(inst.attach));
        field_line(out, "code", display_code(inst.code));
        if (inst.pos) field_line(out, "pos", display_designation(*inst.pos));
        if (inst.on_panel) field_line(out, "panel", "");
        if (!inst.upper_index.empty()) field_line(out, "upper_index", quote(inst.upper_index));
        if (!inst.lower_index.empty()) field_line(out, "lower_index", quote(inst.lower_index));
        if (inst.line_kind == LineStyle::dashed) field_line(out, "line_kind", "dashed");
        if (!inst.comment.empty()) field_line(out, "comment", quote(inst.comment));
        dsl_detail::spec_block(out, inst.spec);
        out += "}\n";
    }

    for (const auto& act : sorted_by_id(scheme.actuators)) {
        out += "\nactuator " + act.id + " {\n";
        field_line(out, "at", point_args(act.attach));
        if (act.manual_control) field_line(out, "manual", "");
        if (act.normal_position == NormalPosition::open) field_line(out, "normal_position", "open");
        if (act.normal_position == NormalPosition::closed) field_line(out, "normal_position", "closed");
        if (act.pos) field_line(out, "pos", display_designation(*act.pos));
        if (!act.comment.empty()) field_line(out, "comment", quote(act.comment));
        dsl_detail::spec_block(out, act.spec);
        out += "}\n";
    }

    for (const auto& tbl : sorted_by_id(scheme.tables)) {
        out += "\ntable " + tbl.id + " {\n";
        field_line(out, "at", point_args(tbl.origin));
        field_line(out, "width", detail::format_mm(tbl.width));
        for (const auto& sec : tbl.sections) {
            field_line(out, "section", quote(sec.name) + " " + detail::format_mm(sec.height));
        }
        if (!tbl.ends_here) field_line(out, "ends_here", "false");
        out += "}\n";
    }

    for (const auto& line : sorted_by_id(scheme.lines)) {
        out += "\nline " + line.id + " {\n";
        std::string args;
        for (const auto& wp : line.waypoints) {
            if (!args.empty()) args += ' ';
            if (const auto* p = std::get_if<Point>(&wp)) {
                args += point_args(*p);
            } else {
                const auto& ref = std::get<AnchorRef>(wp);
                args += "@" + ref.element_id + "." + ref.anchor;
            }
        }
        field_line(out, "points", args);
        if (line.style == LineStyle::dashed) field_line(out, "style", "dashed");
        out += "}\n";
    }

    return out;
}

}  // namespace schemeforge
