// Specification tables: every instrument and actuator of the scheme rolled
// up into sectioned rows, without sections, by installation location or by
// control loop. Identical devices under one designation merge into a single
// row with a quantity.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schemeforge/detail/strings.hpp"
#include "schemeforge/model.hpp"
#include "schemeforge/tagcodes.hpp"

namespace schemeforge {

enum class SpecMode : std::uint8_t { flat, by_location, by_loop };

struct SpecRow {
    std::string pos_display;  // empty for undesignated devices
    std::string name;
    std::string type_brand;
    std::string unit;
    int quantity = 1;
    std::string mass;
    std::string manufacturer_code;
    std::string note;

    bool operator==(const SpecRow&) const = default;
};

struct SpecSection {
    std::string title;
    std::vector<SpecRow> rows;

    bool operator==(const SpecSection&) const = default;
};

struct SpecTable {
    SpecMode mode = SpecMode::flat;
    std::vector<SpecSection> sections;

    bool operator==(const SpecTable&) const = default;
};

inline constexpr const char* kNoLoopSectionTitle = "Без номера";
inline constexpr const char* kNoBandSectionTitle = "Без раздела";
inline constexpr const char* kLoopSectionPrefix = "Контур ";

namespace spec_detail {

struct Device {
    std::string id;
    Point attach;
    std::optional<PositionalDesignation> pos;
    const SpecProps* spec = nullptr;
};

inline std::vector<Device> collect_devices(const Scheme& scheme) {
    std::vector<Device> out;
    out.reserve(scheme.instruments.size() + scheme.actuators.size());
    for (const auto& inst : scheme.instruments) out.push_back({inst.id, inst.attach, inst.pos, &inst.spec});
    for (const auto& act : scheme.actuators) out.push_back({act.id, act.attach, act.pos, &act.spec});
    return out;
}

// Row order inside a section: designated devices by (loop, suffix), then
// undesignated ones by id.
inline bool device_less(const Device& a, const Device& b) {
    if (a.pos.has_value() != b.pos.has_value()) return a.pos.has_value();
    if (a.pos && b.pos) {
        if (!(*a.pos == *b.pos)) return designation_less(*a.pos, *b.pos);
    }
    return a.id < b.id;
}

inline SpecSection build_section(std::string title, std::vector<Device> devices) {
    std::sort(devices.begin(), devices.end(), device_less);
    SpecSection section;
    section.title = std::move(title);
    for (const auto& d : devices) {
        const std::string pos_display = d.pos ? display_designation(*d.pos) : std::string();
        auto match = std::find_if(section.rows.begin(), section.rows.end(), [&](const SpecRow& row) {
            return row.pos_display == pos_display && row.type_brand == d.spec->type_brand
                   && row.name == d.spec->name;
        });
        if (match != section.rows.end()) {
            ++match->quantity;
            continue;
        }
        SpecRow row;
        row.pos_display = pos_display;
        row.name = d.spec->name;
        row.type_brand = d.spec->type_brand;
        row.unit = d.spec->unit;
        row.quantity = 1;
        row.mass = d.spec->mass;
        row.manufacturer_code = d.spec->manufacturer_code;
        row.note = d.spec->note;
        section.rows.push_back(std::move(row));
    }
    return section;
}

struct Band {
    std::string title;
    double x0 = 0, x1 = 0;  // left inclusive, right exclusive
    double y_top = 0;       // inclusive
    double y_bot = 0;       // exclusive
};

inline std::vector<Band> section_bands(const Scheme& scheme) {
    std::vector<Band> bands;
    for (const auto& tbl : scheme.tables) {
        double top = tbl.origin.y;
        for (const auto& sec : tbl.sections) {
            bands.push_back({sec.name, tbl.origin.x, tbl.origin.x + tbl.width, top, top - sec.height});
            top -= sec.height;
        }
    }
    return bands;
}

inline bool band_contains(const Band& b, const Point& p) {
    return p.x >= b.x0 && p.x < b.x1 && p.y <= b.y_top && p.y > b.y_bot;
}

}  // namespace spec_detail

// Builds the specification table for the given grouping mode. Every device
// lands in exactly one row of exactly one section, so quantities always sum
// to the device count.
inline SpecTable generate(const Scheme& scheme, SpecMode mode) {
    using namespace spec_detail;
    SpecTable table;
    table.mode = mode;
    std::vector<Device> devices = collect_devices(scheme);

    if (mode == SpecMode::flat) {
        table.sections.push_back(build_section("", std::move(devices)));
        return table;
    }

    if (mode == SpecMode::by_location) {
        const std::vector<Band> bands = section_bands(scheme);
        std::vector<std::vector<Device>> members(bands.size());
        std::vector<Device> leftover;
        for (const auto& d : devices) {
            bool placed = false;
            for (std::size_t i = 0; i < bands.size(); ++i) {
                if (band_contains(bands[i], d.attach)) {
                    members[i].push_back(d);
                    placed = true;
                    break;  // earlier table/section wins
                }
            }
            if (!placed) leftover.push_back(d);
        }
        for (std::size_t i = 0; i < bands.size(); ++i) {
            table.sections.push_back(build_section(bands[i].title, std::move(members[i])));
        }
        if (!leftover.empty()) {
            table.sections.push_back(build_section(kNoBandSectionTitle, std::move(leftover)));
        }
        return table;
    }

    // by_loop: the loop number comes from the numeric part of the
    // positional designation; devices without one gather at the end.
    std::map<int, std::vector<Device>> loops;
    std::vector<Device> unnumbered;
    for (const auto& d : devices) {
        if (d.pos) loops[d.pos->loop].push_back(d);
        else unnumbered.push_back(d);
    }
    for (auto& [loop, members] : loops) {
        table.sections.push_back(build_section(kLoopSectionPrefix + std::to_string(loop), std::move(members)));
    }
    if (!unnumbered.empty()) {
        table.sections.push_back(build_section(kNoLoopSectionTitle, std::move(unnumbered)));
    }
    return table;
}

// CSV encoding of the table: one line per row with the section title
// repeated, RFC 4180 quoting, LF line ends, UTF-8 throughout.
inline std::string render_spec_csv(const SpecTable& table) {
    std::string out = "section,pos,name,type_brand,unit,qty,mass,manufacturer_code,note\n";
    for (const auto& section : table.sections) {
        for (const auto& row : section.rows) {
            out += detail::csv_field(section.title);
            out += ',';
            out += detail::csv_field(row.pos_display);
            out += ',';
            out += detail::csv_field(row.name);
            out += ',';
            out += detail::csv_field(row.type_brand);
            out += ',';
            out += detail::csv_field(row.unit);
            out += ',';
            out += std::to_string(row.quantity);
            out += ',';
            out += detail::csv_field(row.mass);
            out += ',';
            out += detail::csv_field(row.manufacturer_code);
            out += ',';
            out += detail::csv_field(row.note);
            out += '\n';
        }
    }
    return out;
}

}  // namespace schemeforge
