// Parameter side of the scheme: domain types for panels, instruments,
// actuators, location tables and connection lines, plus whole-scheme
// validation. Geometry is generated from these values, never stored here.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "schemeforge/tagcodes.hpp"

namespace schemeforge {

struct Point {
    double x = 0;  // millimeters, drawing plane
    double y = 0;  // y grows upward

    bool operator==(const Point&) const = default;
};

enum class LineStyle : std::uint8_t { normal, dashed };
enum class NormalPosition : std::uint8_t { unspecified, open, closed };

// The eleven specifying fields; every one optional plain text.
struct SpecProps {
    std::string designation;
    std::string name;
    std::string mass;
    std::string note;
    std::string type_brand;
    std::string unit;
    std::string unit_code;
    std::string manufacturer_code;
    std::string equipment_code;
    std::string price;
    std::string name_and_tech;

    bool operator==(const SpecProps&) const = default;

    bool empty() const {
        return designation.empty() && name.empty() && mass.empty() && note.empty() && type_brand.empty()
               && unit.empty() && unit_code.empty() && manufacturer_code.empty() && equipment_code.empty()
               && price.empty() && name_and_tech.empty();
    }
};

struct Instrument {
    std::string id;
    Point attach;
    bool on_panel = false;
    FunctionalCode code;
    std::string upper_index;
    std::string lower_index;
    std::optional<PositionalDesignation> pos;
    SpecProps spec;
    std::string comment;
    LineStyle line_kind = LineStyle::normal;

    bool operator==(const Instrument&) const = default;
};

struct Actuator {
    std::string id;
    Point attach;
    bool manual_control = false;
    NormalPosition normal_position = NormalPosition::unspecified;
    std::optional<PositionalDesignation> pos;
    SpecProps spec;
    std::string comment;

    bool operator==(const Actuator&) const = default;
};

struct TableSection {
    std::string name;
    double height = 0;  // millimeters

    bool operator==(const TableSection&) const = default;
};

struct LocationTable {
    std::string id;
    Point origin;  // top-left corner
    double width = 0;
    std::vector<TableSection> sections;
    bool ends_here = true;

    bool operator==(const LocationTable&) const = default;

    double total_height() const {
        double h = 0;
        for (const auto& s : sections) h += s.height;
        return h;
    }
};

struct Panel {
    std::string id;
    Point origin;  // bottom-left corner
    double width = 0;
    double height = 0;
    std::string label;

    bool operator==(const Panel&) const = default;
};

// Line endpoints may reference a device anchor symbolically; interior
// waypoints are always raw coordinates.
struct AnchorRef {
    std::string element_id;
    std::string anchor;  // n, e, s, w or center

    bool operator==(const AnchorRef&) const = default;
};

using Waypoint = std::variant<Point, AnchorRef>;

struct ConnectionLine {
    std::string id;
    std::vector<Waypoint> waypoints;  // authored, pre-normalization
    LineStyle style = LineStyle::normal;

    bool operator==(const ConnectionLine&) const = default;
};

struct Scheme {
    std::vector<Panel> panels;
    std::vector<Instrument> instruments;
    std::vector<Actuator> actuators;
    std::vector<LocationTable> tables;
    std::vector<ConnectionLine> lines;

    bool operator==(const Scheme&) const = default;
};

enum class Severity : std::uint8_t { error, warning };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string message;
    std::string element_id;  // empty when not tied to an element
    int line = 0;            // 1-based when positional, 0 otherwise
    int column = 0;

    bool operator==(const Diagnostic&) const = default;
};

inline std::string_view severity_name(Severity s) {
    return s == Severity::error ? "error" : "warning";
}

// Anchor names resolvable per element kind. Instruments expose the four
// quadrant points of the circle and its center; actuators the stem base
// and the circle sides/top.
inline bool instrument_anchor_name(std::string_view name) {
    return name == "n" || name == "e" || name == "s" || name == "w" || name == "center";
}

inline bool actuator_anchor_name(std::string_view name) {
    return name == "n" || name == "e" || name == "s" || name == "w";
}

namespace detail {

inline bool finite_point(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Plain single-line text, stored with trailing blanks already stripped.
inline void check_text(std::vector<Diagnostic>& out, const std::string& id, std::string_view field,
                       std::string_view text) {
    if (!is_single_line(text)) {
        out.push_back({Severity::error, std::string(field) + " contains control characters", id});
    } else if (has_trailing_blank(text)) {
        out.push_back({Severity::error, std::string(field) + " has trailing whitespace", id});
    } else if (!valid_utf8(text)) {
        out.push_back({Severity::error, std::string(field) + " is not valid UTF-8", id});
    }
}

inline void check_spec_props(std::vector<Diagnostic>& out, const std::string& id, const SpecProps& spec) {
    check_text(out, id, "spec designation", spec.designation);
    check_text(out, id, "spec name", spec.name);
    check_text(out, id, "spec mass", spec.mass);
    check_text(out, id, "spec note", spec.note);
    check_text(out, id, "spec type_brand", spec.type_brand);
    check_text(out, id, "spec unit", spec.unit);
    check_text(out, id, "spec unit_code", spec.unit_code);
    check_text(out, id, "spec manufacturer_code", spec.manufacturer_code);
    check_text(out, id, "spec equipment_code", spec.equipment_code);
    check_text(out, id, "spec price", spec.price);
    check_text(out, id, "spec name_and_tech", spec.name_and_tech);
}

inline void check_id(std::vector<Diagnostic>& out, const std::string& id) {
    if (!is_identifier(id)) {
        out.push_back({Severity::error, "element id '" + id + "' is not a valid identifier", id});
    }
}

}  // namespace detail

// Returns an empty list iff every type invariant holds. Diagnostics come in
// a fixed order so repeated runs are byte-identical.
inline std::vector<Diagnostic> validate(const Scheme& scheme) {
    using detail::check_id;
    using detail::check_spec_props;
    using detail::check_text;
    using detail::finite_point;

    std::vector<Diagnostic> out;

    // Duplicate ids across all five collections, reported at the second
    // occurrence in scan order.
    {
        std::set<std::string> seen;
        auto scan = [&](const std::string& id) {
            if (!seen.insert(id).second) {
                out.push_back({Severity::error, "duplicate element id '" + id + "'", id});
            }
        };
        for (const auto& e : scheme.panels) scan(e.id);
        for (const auto& e : scheme.instruments) scan(e.id);
        for (const auto& e : scheme.actuators) scan(e.id);
        for (const auto& e : scheme.tables) scan(e.id);
        for (const auto& e : scheme.lines) scan(e.id);
    }

    for (const auto& p : scheme.panels) {
        check_id(out, p.id);
        if (!finite_point(p.origin)) out.push_back({Severity::error, "panel origin is not finite", p.id});
        if (!(p.width > 0) || !std::isfinite(p.width))
            out.push_back({Severity::error, "panel width must be positive", p.id});
        if (!(p.height > 0) || !std::isfinite(p.height))
            out.push_back({Severity::error, "panel height must be positive", p.id});
        check_text(out, p.id, "label", p.label);
    }

    for (const auto& inst : scheme.instruments) {
        check_id(out, inst.id);
        if (!finite_point(inst.attach)) out.push_back({Severity::error, "attach point is not finite", inst.id});
        if (!code_is_valid(inst.code)) {
            out.push_back({Severity::error,
                           "functional code '" + display_code(inst.code) + "' violates the letter tables", inst.id});
        }
        if (inst.pos && !designation_is_valid(*inst.pos)) {
            out.push_back({Severity::error, "positional designation is invalid", inst.id});
        }
        check_text(out, inst.id, "upper_index", inst.upper_index);
        check_text(out, inst.id, "lower_index", inst.lower_index);
        check_text(out, inst.id, "comment", inst.comment);
        check_spec_props(out, inst.id, inst.spec);
    }

    for (const auto& act : scheme.actuators) {
        check_id(out, act.id);
        if (!finite_point(act.attach)) out.push_back({Severity::error, "attach point is not finite", act.id});
        if (act.pos && !designation_is_valid(*act.pos)) {
            out.push_back({Severity::error, "positional designation is invalid", act.id});
        }
        check_text(out, act.id, "comment", act.comment);
        check_spec_props(out, act.id, act.spec);
    }

    for (const auto& tbl : scheme.tables) {
        check_id(out, tbl.id);
        if (!finite_point(tbl.origin)) out.push_back({Severity::error, "table origin is not finite", tbl.id});
        if (!(tbl.width > 0) || !std::isfinite(tbl.width))
            out.push_back({Severity::error, "table width must be positive", tbl.id});
        if (tbl.sections.empty()) {
            out.push_back({Severity::error, "table has no sections", tbl.id});
        }
        for (const auto& sec : tbl.sections) {
            if (sec.name.empty()) {
                out.push_back({Severity::error, "table section name is empty", tbl.id});
            } else {
                check_text(out, tbl.id, "section name", sec.name);
            }
            if (!(sec.height > 0) || !std::isfinite(sec.height)) {
                out.push_back({Severity::error, "section '" + sec.name + "' height must be positive", tbl.id});
            }
        }
    }

    // Anchor references must resolve against devices present in the scheme.
    std::map<std::string, char> device_kind;  // id -> 'i' | 'a'
    for (const auto& inst : scheme.instruments) device_kind.emplace(inst.id, 'i');
    for (const auto& act : scheme.actuators) device_kind.emplace(act.id, 'a');

    for (const auto& line : scheme.lines) {
        check_id(out, line.id);
        if (line.waypoints.size() < 2) {
            out.push_back({Severity::error, "connection line needs at least two waypoints", line.id});
        }
        for (std::size_t i = 0; i < line.waypoints.size(); ++i) {
            const auto& wp = line.waypoints[i];
            if (const auto* p = std::get_if<Point>(&wp)) {
                if (!finite_point(*p)) {
                    out.push_back({Severity::error, "waypoint coordinates are not finite", line.id});
                }
            } else {
                const auto& ref = std::get<AnchorRef>(wp);
                const bool endpoint = i == 0 || i + 1 == line.waypoints.size();
                if (!endpoint) {
                    out.push_back({Severity::error,
                                   "anchor reference '@" + ref.element_id + "." + ref.anchor
                                       + "' allowed only at line endpoints",
                                   line.id});
                    continue;
                }
                auto it = device_kind.find(ref.element_id);
                if (it == device_kind.end()) {
                    out.push_back({Severity::error,
                                   "anchor reference names unknown element '" + ref.element_id + "'", line.id});
                } else if (it->second == 'i' ? !instrument_anchor_name(ref.anchor)
                                             : !actuator_anchor_name(ref.anchor)) {
                    out.push_back({Severity::error,
                                   "anchor '" + ref.anchor + "' does not exist on element '" + ref.element_id + "'",
                                   line.id});
                }
            }
            if (i > 0 && line.waypoints[i] == line.waypoints[i - 1]) {
                out.push_back({Severity::error, "consecutive waypoints are identical", line.id});
            }
        }
    }

    // A designation shared by several devices must name identical hardware.
    {
        std::map<std::string, std::pair<std::string, std::string>> first;  // display -> (id, type_brand)
        auto check_pos = [&](const std::string& id, const std::optional<PositionalDesignation>& pos,
                             const std::string& type_brand) {
            if (!pos || !designation_is_valid(*pos)) return;
            const std::string display = display_designation(*pos);
            auto [it, inserted] = first.emplace(display, std::make_pair(id, type_brand));
            if (!inserted && it->second.second != type_brand) {
                out.push_back({Severity::error,
                               "designation '" + display + "' is shared with '" + it->second.first
                                   + "' but type_brand differs",
                               id});
            }
        };
        for (const auto& inst : scheme.instruments) check_pos(inst.id, inst.pos, inst.spec.type_brand);
        for (const auto& act : scheme.actuators) check_pos(act.id, act.pos, act.spec.type_brand);
    }

    return out;
}

}  // namespace schemeforge
