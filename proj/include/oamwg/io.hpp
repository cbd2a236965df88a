#pragma once

// Text formats: numbers, mode names, segment lists, field-map CSV, array
// configuration and spectrum documents.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "oamwg/cascade.hpp"
#include "oamwg/errors.hpp"
#include "oamwg/excitation.hpp"
#include "oamwg/modes.hpp"
#include "oamwg/oam.hpp"

namespace oamwg::io {

using nlohmann::json;

inline constexpr int kDefaultDigits = 12;

/// Shortest text for `x` rounded to `digits` significant digits.
inline std::string format_number(double x, int digits = kDefaultDigits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

inline double round_to_digits(double x, int digits = kDefaultDigits) {
    return std::strtod(format_number(x, digits).c_str(), nullptr);
}

inline double parse_number(std::string_view text, std::string_view what) {
    std::string s(text);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParseError("invalid number for " + std::string(what) + ": '" + s + "'");
    return v;
}

inline Orientation parse_orientation(std::string_view s) {
    if (s == "cos") return Orientation::Cos;
    if (s == "sin") return Orientation::Sin;
    if (s == "rot+" || s == "plus" || s == "+") return Orientation::RotPlus;
    if (s == "rot-" || s == "minus" || s == "-") return Orientation::RotMinus;
    throw ParseError("unknown orientation '" + std::string(s) + "' (expected cos, sin, rot+ or rot-)");
}

/// "TE21" -> TE, l = 2, m = 1. Without a separator the last digit is m and the
/// preceding digits are l ("TE101" is TE_{10,1}); "TE1_12" spells m >= 10.
inline ModeId parse_mode(std::string_view text, Orientation orientation = Orientation::Cos) {
    const std::string s(text);
    auto fail = [&](std::size_t pos, const std::string& why) {
        throw ParseError("malformed mode '" + s + "': " + why, pos);
    };
    if (s.size() < 2) fail(1, "expected TE or TM prefix");
    ModeId id;
    if (s.compare(0, 2, "TE") == 0)
        id.family = Family::TE;
    else if (s.compare(0, 2, "TM") == 0)
        id.family = Family::TM;
    else
        fail(1, "expected TE or TM prefix");

    const std::string digits = s.substr(2);
    std::string l_str, m_str;
    if (const auto us = digits.find('_'); us != std::string::npos) {
        l_str = digits.substr(0, us);
        m_str = digits.substr(us + 1);
    } else if (digits.size() >= 2) {
        l_str = digits.substr(0, digits.size() - 1);
        m_str = digits.substr(digits.size() - 1);
    } else {
        fail(3, "expected azimuthal and radial indices");
    }
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(digits[i])) && digits[i] != '_') fail(i + 3, "non-digit index");
    if (l_str.empty() || m_str.empty()) fail(3, "empty index");
    id.l = std::stoi(l_str);
    id.m = std::stoi(m_str);
    if (id.m < 1) fail(s.size(), "radial index must be >= 1");
    id.orientation = orientation;
    try {
        id.validate();
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
    return id;
}

inline Component parse_component(std::string_view s) {
    for (Component c : {Component::Ex, Component::Ey, Component::Ez, Component::Erho, Component::Ephi,
                        Component::Hx, Component::Hy, Component::Hz, Component::Eplus, Component::Eminus})
        if (to_string(c) == s) return c;
    throw ParseError("unknown field component '" + std::string(s) + "'");
}

/// Comma-separated `air:<len_m>` | `diel:<eps_r>:<len_m>`.
inline std::vector<Segment> parse_segments(std::string_view text) {
    std::vector<Segment> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        const std::size_t col = start + 1;

        std::vector<std::string_view> fields;
        std::vector<std::size_t> offsets;
        std::size_t p = 0;
        while (true) {
            const std::size_t colon = item.find(':', p);
            fields.push_back(item.substr(p, colon == item.npos ? item.npos : colon - p));
            offsets.push_back(col + p);
            if (colon == item.npos) break;
            p = colon + 1;
        }

        auto number = [&](std::size_t i, const char* what) {
            const std::string s(fields[i]);
            double v = 0.0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                throw ParseError(std::string("invalid ") + what + " '" + s + "'", offsets[i]);
            return v;
        };

        Segment seg;
        if (fields[0] == "air") {
            if (fields.size() != 2) throw ParseError("expected air:<len_m>", col);
            seg.length = number(1, "length");
        } else if (fields[0] == "diel") {
            if (fields.size() != 3) throw ParseError("expected diel:<eps_r>:<len_m>", col);
            seg.eps_r = number(1, "eps_r");
            seg.length = number(2, "length");
            if (!(seg.eps_r >= 1.0)) throw ParseError("eps_r must be >= 1", offsets[1]);
        } else {
            throw ParseError("unknown segment kind '" + std::string(fields[0]) + "'", col);
        }
        if (!(seg.length > 0.0)) throw ParseError("segment length must be positive", offsets.back());
        out.push_back(seg);

        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// --- field-map CSV ----------------------------------------------------------

inline constexpr const char* kFieldMapHeader =
    "x_m,y_m,z_m,inside,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,Hx_re,Hx_im,Hy_re,Hy_im,Hz_re,Hz_im";

inline void write_field_map(std::ostream& os, const FieldMap& map, int digits = kDefaultDigits) {
    os << kFieldMapHeader << '\n';
    auto num = [&](double v) { return format_number(v, digits); };
    for (int iy = 0; iy < map.n; ++iy) {
        for (int ix = 0; ix < map.n; ++ix) {
            os << num(map.coord(ix)) << ',' << num(map.coord(iy)) << ',' << num(map.z);
            const auto& s = map.at(ix, iy);
            if (!s) {
                os << ",0";
                for (int k = 0; k < 12; ++k) os << ",0";
            } else {
                os << ",1";
                for (cplx c : {s->ex(), s->ey(), s->e_z, s->hx(), s->hy(), s->h_z})
                    os << ',' << num(c.real()) << ',' << num(c.imag());
            }
            os << '\n';
        }
    }
}

/// Parses a field-map CSV. Samples are stored in Cartesian form (phi = 0) and
/// the map carries no constituents, so ring extraction interpolates.
inline FieldMap read_field_map(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kFieldMapHeader) throw ParseError("field map: missing or wrong header");
    std::vector<std::array<double, 16>> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::array<double, 16> row{};
        std::size_t col = 0, start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (col >= row.size()) throw ParseError("field map line " + std::to_string(line_no) + ": too many columns");
            row[col++] = parse_number(std::string_view(line).substr(start, comma == line.npos ? line.npos : comma - start),
                                      "field map line " + std::to_string(line_no));
            if (comma == line.npos) break;
            start = comma + 1;
        }
        if (col != row.size()) throw ParseError("field map line " + std::to_string(line_no) + ": expected 16 columns");
        rows.push_back(row);
    }
    const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
    if (n < 2 || static_cast<std::size_t>(n) * n != rows.size()) throw ParseError("field map: row count is not N x N");

    FieldMap map;
    map.n = n;
    map.radius = rows.back()[0];
    map.z = rows.front()[2];
    map.samples.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r[3] == 0.0) continue;
        FieldVector v;
        v.phi = 0.0;
        v.e_rho = {r[4], r[5]};
        v.e_phi = {r[6], r[7]};
        v.e_z = {r[8], r[9]};
        v.h_rho = {r[10], r[11]};
        v.h_phi = {r[12], r[13]};
        v.h_z = {r[14], r[15]};
        map.samples[i] = v;
    }
    return map;
}

// --- array configuration ----------------------------------------------------

struct ArrayConfig {
    ArraySpec array;
    ModeId target = te_mode(2, 1, Orientation::RotPlus);
};

/// Array configuration document:
///
///   { "radius_m": 0.02, "eps_r": 1.0,
///     "elements": [ { "rho_m": 0.012, "phi_deg": 0, "z_m": 0,
///                     "orientation": "phi" | [o_rho, o_phi, o_z],
///                     "amp": 1, "phase_deg": 0 }, ... ],
///     "target": { "mode": "TE21", "orientation": "rot+" } }
///
/// "elements" may be replaced by
///   "four_monopole": { "rho_m": 0.012, "alpha_deg": 0, "beta_deg": 90 }.
inline ArrayConfig parse_array_config(const json& doc) {
    std::vector<std::string> issues;
    auto number = [&](const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback)
        -> double {
        if (!obj.contains(key)) {
            if (fallback) return *fallback;
            issues.push_back(path + key + ": required");
            return 0.0;
        }
        if (!obj[key].is_number()) {
            issues.push_back(path + key + ": must be a number");
            return 0.0;
        }
        return obj[key].get<double>();
    };

    ArrayConfig cfg;
    if (!doc.is_object()) throw ConfigError({"document: must be a JSON object"});
    cfg.array.guide.radius = number(doc, "radius_m", "", std::nullopt);
    cfg.array.guide.eps_r = number(doc, "eps_r", "", 1.0);
    const double a = cfg.array.guide.radius;
    if (!(a > 0.0)) issues.push_back("radius_m: must be positive");
    if (!(cfg.array.guide.eps_r >= 1.0)) issues.push_back("eps_r: must be >= 1");

    const double deg = kPi / 180.0;
    if (doc.contains("four_monopole")) {
        const auto& p = doc["four_monopole"];
        const double rho = number(p, "rho_m", "four_monopole.", std::nullopt);
        const double alpha = number(p, "alpha_deg", "four_monopole.", 0.0);
        const double beta = number(p, "beta_deg", "four_monopole.", 90.0);
        if (!(rho > 0.0) || !(rho < a)) issues.push_back("four_monopole.rho_m: must satisfy 0 < rho_m < radius_m");
        if (issues.empty()) cfg.array = default_paper_array(cfg.array.guide, rho, alpha * deg, beta * deg);
    } else if (!doc.contains("elements") || !doc["elements"].is_array() || doc["elements"].empty()) {
        issues.push_back("elements: required non-empty array (or four_monopole)");
    } else {
        const auto& els = doc["elements"];
        for (std::size_t i = 0; i < els.size(); ++i) {
            const std::string path = "elements[" + std::to_string(i) + "].";
            const auto& e = els[i];
            if (!e.is_object()) {
                issues.push_back(path.substr(0, path.size() - 1) + ": must be an object");
                continue;
            }
            DipoleElement el;
            el.position.rho = number(e, "rho_m", path, std::nullopt);
            el.position.phi = number(e, "phi_deg", path, std::nullopt) * deg;
            el.position.z = number(e, "z_m", path, 0.0);
            el.amplitude = number(e, "amp", path, 1.0);
            el.phase = number(e, "phase_deg", path, 0.0) * deg;
            if (!(el.position.rho >= 0.0) || !(el.position.rho < a))
                issues.push_back(path + "rho_m: must satisfy 0 <= rho_m < radius_m");
            if (!(el.amplitude >= 0.0)) issues.push_back(path + "amp: must be >= 0");
            if (e.contains("orientation")) {
                const auto& o = e["orientation"];
                if (o == "rho") el.orientation = {1.0, 0.0, 0.0};
                else if (o == "phi") el.orientation = {0.0, 1.0, 0.0};
                else if (o == "z") el.orientation = {0.0, 0.0, 1.0};
                else if (o.is_array() && o.size() == 3 && o[0].is_number() && o[1].is_number() && o[2].is_number()) {
                    el.orientation = {o[0].get<double>(), o[1].get<double>(), o[2].get<double>()};
                    const double len = std::hypot(el.orientation[0], el.orientation[1], el.orientation[2]);
                    if (std::abs(len - 1.0) > 1e-9) issues.push_back(path + "orientation: must be a unit vector");
                } else {
                    issues.push_back(path + "orientation: expected \"rho\", \"phi\", \"z\" or [o_rho, o_phi, o_z]");
                }
            }
            cfg.array.elements.push_back(el);
        }
    }

    if (doc.contains("target")) {
        const auto& t = doc["target"];
        try {
            const auto orient = parse_orientation(t.value("orientation", std::string("rot+")));
            cfg.target = parse_mode(t.value("mode", std::string("TE21")), orient);
            if (orient != Orientation::RotPlus && orient != Orientation::RotMinus)
                issues.push_back("target.orientation: must be rot+ or rot-");
        } catch (const std::exception& e) {
            issues.push_back(std::string("target: ") + e.what());
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return cfg;
}

inline json spectrum_to_json(const ModeSpectrum& spectrum, const Guide& guide, int digits = kDefaultDigits) {
    auto r = [&](double v) { return round_to_digits(v, digits); };
    json doc;
    doc["f_hz"] = r(spectrum.f);
    doc["radius_m"] = r(guide.radius);
    doc["eps_r"] = r(guide.eps_r);
    doc["l_max"] = spectrum.l_max;
    doc["m_max"] = spectrum.m_max;
    json entries = json::array();
    for (const auto& e : spectrum.entries) {
        entries.push_back({{"mode", e.mode.name()},
                           {"family", to_string(e.mode.family)},
                           {"l", e.mode.l},
                           {"m", e.mode.m},
                           {"orientation", to_string(e.mode.orientation)},
                           {"re", r(e.amplitude.real())},
                           {"im", r(e.amplitude.imag())},
                           {"abs", r(std::abs(e.amplitude))},
                           {"propagating", e.propagating},
                           {"fc_hz", r(e.f_c)}});
    }
    doc["entries"] = std::move(entries);
    doc["warnings"] = spectrum.warnings;
    return doc;
}

}  // namespace oamwg::io
