// Electronic instrument catalogs: JSON files on disk, filtered by measured
// variable, whose entries fill in the specifying properties of a device.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schemeforge/model.hpp"
#include "schemeforge/tagcodes.hpp"

namespace schemeforge {

struct CatalogEntry {
    std::string entry_id;
    SpecProps spec;
    std::optional<std::string> suggested_code;  // parses via parse_code

    bool operator==(const CatalogEntry&) const = default;
};

struct Catalog {
    std::string catalog_id;
    std::string title;
    std::set<MeasuredVariable> measures;  // non-empty
    std::vector<CatalogEntry> entries;

    bool operator==(const Catalog&) const = default;
};

struct CatalogSet {
    std::vector<Catalog> catalogs;  // sorted by catalog_id

    bool operator==(const CatalogSet&) const = default;

    const Catalog* find(std::string_view id) const {
        for (const auto& c : catalogs) {
            if (c.catalog_id == id) return &c;
        }
        return nullptr;
    }
};

struct LoadedCatalogs {
    CatalogSet set;
    std::vector<Diagnostic> diagnostics;  // one per rejected file or directory problem
};

namespace catalog_detail {

inline std::string json_string(const nlohmann::json& j, const char* key, bool required, bool& ok,
                               std::string& error) {
    if (!j.contains(key)) {
        if (required) {
            ok = false;
            error = std::string("missing field '") + key + "'";
        }
        return {};
    }
    if (!j.at(key).is_string()) {
        ok = false;
        error = std::string("field '") + key + "' must be a string";
        return {};
    }
    return j.at(key).get<std::string>();
}

inline std::optional<Catalog> parse_catalog_json(const nlohmann::json& j, std::string& error) {
    bool ok = true;
    Catalog cat;
    if (!j.is_object()) {
        error = "top level must be an object";
        return std::nullopt;
    }
    cat.catalog_id = json_string(j, "id", true, ok, error);
    if (!ok) return std::nullopt;
    if (!detail::is_identifier(cat.catalog_id)) {
        error = "catalog id '" + cat.catalog_id + "' is not a valid identifier";
        return std::nullopt;
    }
    cat.title = json_string(j, "title", false, ok, error);
    if (!ok) return std::nullopt;

    if (!j.contains("measures") || !j.at("measures").is_array() || j.at("measures").empty()) {
        error = "field 'measures' must be a non-empty array of variable letters";
        return std::nullopt;
    }
    for (const auto& m : j.at("measures")) {
        if (!m.is_string() || m.get<std::string>().size() != 1
            || !letters::is_variable(m.get<std::string>()[0])) {
            error = "measures entries must be single measured-variable letters";
            return std::nullopt;
        }
        cat.measures.insert(variable_of_letter(m.get<std::string>()[0]));
    }

    if (!j.contains("entries") || !j.at("entries").is_array()) {
        error = "field 'entries' must be an array";
        return std::nullopt;
    }
    std::set<std::string> entry_ids;
    for (const auto& e : j.at("entries")) {
        if (!e.is_object()) {
            error = "entries must be objects";
            return std::nullopt;
        }
        CatalogEntry entry;
        entry.entry_id = json_string(e, "id", true, ok, error);
        if (!ok) return std::nullopt;
        if (!entry_ids.insert(entry.entry_id).second) {
            error = "duplicate entry id '" + entry.entry_id + "'";
            return std::nullopt;
        }
        if (e.contains("spec")) {
            const auto& s = e.at("spec");
            if (!s.is_object()) {
                error = "entry spec must be an object";
                return std::nullopt;
            }
            for (const auto& [key, value] : s.items()) {
                if (!value.is_string()) {
                    error = "spec field '" + key + "' must be a string";
                    return std::nullopt;
                }
                const std::string v = value.get<std::string>();
                if (key == "designation") entry.spec.designation = v;
                else if (key == "name") entry.spec.name = v;
                else if (key == "mass") entry.spec.mass = v;
                else if (key == "note") entry.spec.note = v;
                else if (key == "type_brand") entry.spec.type_brand = v;
                else if (key == "unit") entry.spec.unit = v;
                else if (key == "unit_code") entry.spec.unit_code = v;
                else if (key == "manufacturer_code") entry.spec.manufacturer_code = v;
                else if (key == "equipment_code") entry.spec.equipment_code = v;
                else if (key == "price") entry.spec.price = v;
                else if (key == "name_and_tech") entry.spec.name_and_tech = v;
                else {
                    error = "unknown spec field '" + key + "'";
                    return std::nullopt;
                }
            }
        }
        if (e.contains("code")) {
            if (!e.at("code").is_string()) {
                error = "entry code must be a string";
                return std::nullopt;
            }
            const std::string code = e.at("code").get<std::string>();
            auto parsed = parse_code(code);
            if (!parsed) {
                error = "entry '" + entry.entry_id + "' code: " + parsed.error;
                return std::nullopt;
            }
            entry.suggested_code = code;
        }
        cat.entries.push_back(std::move(entry));
    }
    return cat;
}

}  // namespace catalog_detail

// Reads every *.catalog.json in the directory, in filename order. Files
// that fail structural checks are skipped with one diagnostic each; the
// surviving catalogs come back sorted by catalog id.
inline LoadedCatalogs load_catalogs(const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    LoadedCatalogs out;

    std::error_code ec;
    if (!fs::is_directory(directory, ec)) {
        out.diagnostics.push_back(
            {Severity::error, "catalog directory '" + directory.string() + "' is not readable", ""});
        return out;
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory, ec)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        constexpr std::string_view suffix = ".catalog.json";
        if (name.size() > suffix.size() && name.ends_with(suffix)) files.push_back(entry.path());
    }
    if (ec) {
        out.diagnostics.push_back(
            {Severity::error, "catalog directory '" + directory.string() + "' is not readable", ""});
        return out;
    }
    std::sort(files.begin(), files.end());

    std::set<std::string> ids;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) {
            out.diagnostics.push_back({Severity::error, file.string() + ": cannot open file", ""});
            continue;
        }
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) {
            out.diagnostics.push_back({Severity::error, file.string() + ": malformed JSON", "", 1, 1});
            continue;
        }
        std::string error;
        auto cat = catalog_detail::parse_catalog_json(j, error);
        if (!cat) {
            out.diagnostics.push_back({Severity::error, file.string() + ": " + error, "", 1, 1});
            continue;
        }
        if (!ids.insert(cat->catalog_id).second) {
            out.diagnostics.push_back(
                {Severity::error, file.string() + ": duplicate catalog id '" + cat->catalog_id + "'", "", 1, 1});
            continue;
        }
        out.set.catalogs.push_back(std::move(*cat));
    }
    std::sort(out.set.catalogs.begin(), out.set.catalogs.end(),
              [](const Catalog& a, const Catalog& b) { return a.catalog_id < b.catalog_id; });
    return out;
}

// Exactly the catalogs that contain devices measuring v, in id order.
inline std::vector<Catalog> filter_catalogs(const CatalogSet& set, MeasuredVariable v) {
    std::vector<Catalog> out;
    for (const auto& c : set.catalogs) {
        if (c.measures.count(v)) out.push_back(c);
    }
    return out;
}

namespace catalog_detail {

// Selection is authoritative for the fields it provides: non-empty entry
// fields overwrite, empty ones never erase existing values.
inline void merge_spec(SpecProps& target, const SpecProps& from) {
    auto take = [](std::string& dst, const std::string& src) {
        if (!src.empty()) dst = src;
    };
    take(target.designation, from.designation);
    take(target.name, from.name);
    take(target.mass, from.mass);
    take(target.note, from.note);
    take(target.type_brand, from.type_brand);
    take(target.unit, from.unit);
    take(target.unit_code, from.unit_code);
    take(target.manufacturer_code, from.manufacturer_code);
    take(target.equipment_code, from.equipment_code);
    take(target.price, from.price);
    take(target.name_and_tech, from.name_and_tech);
}

}  // namespace catalog_detail

struct AppliedEntry {
    Instrument instrument;
    bool regenerate_needed = false;
};

// Functional update: fills the specifying properties from the entry and,
// when the entry suggests a different letter code, replaces it and reports
// that the symbol must be regenerated.
inline Parsed<AppliedEntry> apply_entry(const Instrument& inst, const CatalogEntry& entry) {
    AppliedEntry out{inst, false};
    catalog_detail::merge_spec(out.instrument.spec, entry.spec);
    if (entry.suggested_code) {
        auto parsed = parse_code(*entry.suggested_code);
        if (!parsed) return {std::nullopt, "entry '" + entry.entry_id + "' code: " + parsed.error};
        if (*entry.suggested_code != display_code(inst.code)) {
            out.instrument.code = *parsed.value;
            out.regenerate_needed = true;
        }
    }
    return {out, {}};
}

// Actuators carry no letter code; an entry only fills their spec fields.
inline Actuator apply_entry(const Actuator& act, const CatalogEntry& entry) {
    Actuator out = act;
    catalog_detail::merge_spec(out.spec, entry.spec);
    return out;
}

}  // namespace schemeforge
