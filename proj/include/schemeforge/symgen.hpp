// Symbol generation: the visible form of every element, produced from its
// parameters alone. Regenerating after a parameter change is the normal way
// geometry gets updated; nothing here is ever edited in place.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "schemeforge/geometry.hpp"
#include "schemeforge/model.hpp"
#include "schemeforge/routing.hpp"
#include "schemeforge/tagcodes.hpp"

namespace schemeforge {

namespace detail {

inline std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        decode_utf8(s, i);
        ++n;
    }
    return n;
}

// Half of the nominal rendered width of a text run; used to place appended
// index texts after the centered code.
inline double nominal_half_width(std::string_view s, double height) {
    return 0.5 * layout::kNominalAdvanceRatio * height * static_cast<double>(codepoint_count(s));
}

}  // namespace detail

// Circle of 10 mm with the code text in the upper half and the positional
// designation in the lower half. Panel-mounted instruments carry the full
// horizontal chord through the center.
inline GeometrySet instrument_symbol(const Instrument& inst) {
    using namespace layout;
    GeometrySet set;
    set.source_id = inst.id;
    const Point c = inst.attach;
    const double r = kInstrumentDiameterMm / 2;

    set.primitives.push_back(CirclePrim{c, kInstrumentDiameterMm});
    if (inst.on_panel) {
        set.primitives.push_back(SegmentPrim{{c.x - r, c.y}, {c.x + r, c.y}});
    }

    const std::string code = display_code(inst.code);
    const Point code_anchor{c.x, c.y + kCodeBaselineMm};
    set.primitives.push_back(TextPrim{code_anchor, code, kTextHeightMm, TextAlign::center});
    const double half = detail::nominal_half_width(code, kTextHeightMm);
    if (!inst.upper_index.empty()) {
        set.primitives.push_back(TextPrim{{code_anchor.x + half, code_anchor.y + kIndexOffsetMm},
                                          inst.upper_index, kTextHeightMm, TextAlign::left});
    }
    if (!inst.lower_index.empty()) {
        set.primitives.push_back(TextPrim{{code_anchor.x + half, code_anchor.y - kIndexOffsetMm},
                                          inst.lower_index, kTextHeightMm, TextAlign::left});
    }
    if (inst.pos) {
        set.primitives.push_back(TextPrim{{c.x, c.y - kPosBaselineMm}, display_designation(*inst.pos),
                                          kTextHeightMm, TextAlign::center});
    }
    return set;
}

// Stem up from the attach point into a 5 mm circle. Manual control adds a
// T-handle on top; the normal position shows as НО/НЗ beside the circle.
inline GeometrySet actuator_symbol(const Actuator& act) {
    using namespace layout;
    GeometrySet set;
    set.source_id = act.id;
    const Point base = act.attach;
    const double r = kActuatorDiameterMm / 2;
    const Point center{base.x, base.y + kActuatorStemMm + r};
    const double top = center.y + r;

    set.primitives.push_back(SegmentPrim{base, {base.x, base.y + kActuatorStemMm}});
    set.primitives.push_back(CirclePrim{center, kActuatorDiameterMm});
    if (act.manual_control) {
        set.primitives.push_back(SegmentPrim{{base.x, top}, {base.x, top + kHandleStemMm}});
        set.primitives.push_back(SegmentPrim{{base.x - kHandleBarMm / 2, top + kHandleStemMm},
                                             {base.x + kHandleBarMm / 2, top + kHandleStemMm}});
    }
    if (act.normal_position != NormalPosition::unspecified) {
        const char* marker = act.normal_position == NormalPosition::open ? "НО" : "НЗ";
        set.primitives.push_back(TextPrim{{center.x + kActuatorMarkerOffsetMm, center.y}, marker,
                                          kTextHeightMm, TextAlign::left});
    }
    if (act.pos) {
        set.primitives.push_back(TextPrim{{base.x, base.y - kActuatorPosDropMm}, display_designation(*act.pos),
                                          kTextHeightMm, TextAlign::center});
    }
    return set;
}

// Band table growing downward from its top-left origin. The name column is
// 20 mm wide; a table that continues on the next sheet has no right edge.
inline GeometrySet table_geometry(const LocationTable& tbl) {
    using namespace layout;
    GeometrySet set;
    set.source_id = tbl.id;
    const double total = tbl.total_height();
    const double x0 = tbl.origin.x;
    const double y_top = tbl.origin.y;
    const double y_bot = y_top - total;
    const double x1 = x0 + tbl.width;

    if (tbl.ends_here) {
        set.primitives.push_back(RectPrim{{x0, y_bot}, tbl.width, total});
    } else {
        set.primitives.push_back(SegmentPrim{{x0, y_top}, {x1, y_top}});
        set.primitives.push_back(SegmentPrim{{x0, y_bot}, {x1, y_bot}});
        set.primitives.push_back(SegmentPrim{{x0, y_bot}, {x0, y_top}});
    }

    double y = y_top;
    for (std::size_t i = 0; i + 1 < tbl.sections.size(); ++i) {
        y -= tbl.sections[i].height;
        set.primitives.push_back(SegmentPrim{{x0, y}, {x1, y}});
    }

    set.primitives.push_back(SegmentPrim{{x0 + kNameColumnMm, y_bot}, {x0 + kNameColumnMm, y_top}});

    double band_top = y_top;
    for (const auto& sec : tbl.sections) {
        const double mid = band_top - sec.height / 2;
        set.primitives.push_back(TextPrim{{x0 + kNameColumnMm / 2, mid - kTextHeightMm / 2}, sec.name,
                                          kTextHeightMm, TextAlign::center});
        band_top -= sec.height;
    }
    return set;
}

inline GeometrySet panel_geometry(const Panel& p) {
    using namespace layout;
    GeometrySet set;
    set.source_id = p.id;
    set.primitives.push_back(RectPrim{p.origin, p.width, p.height, LineWeight::thick});
    if (!p.label.empty()) {
        set.primitives.push_back(TextPrim{{p.origin.x + kPanelLabelInsetMm,
                                           p.origin.y + p.height - kPanelLabelInsetMm},
                                          p.label, kTextHeightMm, TextAlign::left});
    }
    return set;
}

// Regenerates the whole drawing from parameters: one set per element,
// ordered by element id, with the routing set appended last. Deterministic;
// running it twice gives structurally identical models.
inline DrawingModel regenerate(const Scheme& scheme) {
    DrawingModel model;
    model.sets.reserve(scheme.panels.size() + scheme.instruments.size() + scheme.actuators.size()
                       + scheme.tables.size() + 1);
    for (const auto& p : scheme.panels) model.sets.push_back(panel_geometry(p));
    for (const auto& inst : scheme.instruments) model.sets.push_back(instrument_symbol(inst));
    for (const auto& act : scheme.actuators) model.sets.push_back(actuator_symbol(act));
    for (const auto& tbl : scheme.tables) model.sets.push_back(table_geometry(tbl));
    std::sort(model.sets.begin(), model.sets.end(),
              [](const GeometrySet& a, const GeometrySet& b) { return a.source_id < b.source_id; });
    model.sets.push_back(route_all(scheme));
    return model;
}

}  // namespace schemeforge
