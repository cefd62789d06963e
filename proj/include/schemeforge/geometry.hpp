// Carrier geometry: the visible primitives generated from element
// parameters, grouped per source element. Layout constants live here so
// every generated size is a named number in one place.
#pragma once

#include <string>
#include <variant>
#include <vector>

#include "schemeforge/model.hpp"

namespace schemeforge {

namespace layout {

inline constexpr double kInstrumentDiameterMm = 10.0;
inline constexpr double kActuatorDiameterMm = 5.0;
inline constexpr double kActuatorStemMm = 5.0;          // attach to circle bottom
inline constexpr double kTextHeightMm = 2.5;
inline constexpr double kCodeBaselineMm = 1.5;          // above instrument center
inline constexpr double kIndexOffsetMm = 0.8;           // super/subscript shift from code baseline
inline constexpr double kPosBaselineMm = 3.5;           // below instrument center
inline constexpr double kActuatorMarkerOffsetMm = 4.0;  // НО/НЗ text right of circle center
inline constexpr double kActuatorPosDropMm = 4.0;       // pos text below attach
inline constexpr double kHandleStemMm = 2.0;            // manual-control handle riser
inline constexpr double kHandleBarMm = 3.0;             // manual-control handle width
inline constexpr double kNameColumnMm = 20.0;           // location-table name column
inline constexpr double kPanelLabelInsetMm = 2.0;
inline constexpr double kJunctionDotDiameterMm = 1.5;
inline constexpr double kSnapRadiusMm = 2.5;
inline constexpr double kCoincidenceEpsMm = 0.01;
inline constexpr double kThinStrokeMm = 0.35;
inline constexpr double kThickStrokeMm = 0.7;
inline constexpr double kNominalAdvanceRatio = 0.6;     // glyph advance as fraction of text height

}  // namespace layout

enum class LineWeight : std::uint8_t { thin, thick };
enum class TextAlign : std::uint8_t { left, center, right };

struct CirclePrim {
    Point center;
    double diameter = 0;

    bool operator==(const CirclePrim&) const = default;
};

struct SegmentPrim {
    Point a;
    Point b;
    LineStyle style = LineStyle::normal;

    bool operator==(const SegmentPrim&) const = default;
};

struct RectPrim {
    Point origin;  // bottom-left
    double width = 0;
    double height = 0;
    LineWeight weight = LineWeight::thin;

    bool operator==(const RectPrim&) const = default;
};

struct DotPrim {
    Point center;
    double diameter = 0;

    bool operator==(const DotPrim&) const = default;
};

struct TextPrim {
    Point anchor;  // baseline point
    std::string content;
    double height = 0;
    TextAlign align = TextAlign::center;

    bool operator==(const TextPrim&) const = default;
};

using Primitive = std::variant<CirclePrim, SegmentPrim, RectPrim, DotPrim, TextPrim>;

// Reserved source id of the set holding routed lines and junction dots.
inline constexpr const char* kRoutingSetId = "~routing";

struct GeometrySet {
    std::string source_id;
    std::vector<Primitive> primitives;

    bool operator==(const GeometrySet&) const = default;
};

struct DrawingModel {
    std::vector<GeometrySet> sets;  // element sets ordered by id, routing set last

    bool operator==(const DrawingModel&) const = default;
};

}  // namespace schemeforge
