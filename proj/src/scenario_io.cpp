#include "risgeo/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace risgeo {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ScenarioKeyError("scenario key '" + key + "': cannot parse number '" +
                               value + "'");
    }
}

Vec3 parse_vec3(const std::string& key, const std::string& value) {
    std::string v = value;
    for (auto& ch : v)
        if (ch == ',') ch = ' ';
    std::istringstream in(v);
    Vec3 out;
    std::string extra;
    if (!(in >> out.x >> out.y >> out.z) || (in >> extra))
        throw ScenarioKeyError("scenario key '" + key +
                               "': expected three numbers, got '" + value + "'");
    return out;
}

RisGeometry parse_geometry(const std::string& value) {
    if (value == "linear" || value == "1d") return RisGeometry::Linear1D;
    if (value == "planar" || value == "2d") return RisGeometry::Planar2D;
    if (value == "cylindrical" || value == "3d") return RisGeometry::Cylindrical3D;
    throw ScenarioKeyError("scenario key 'geometry': unknown value '" + value +
                           "' (use linear|planar|cylindrical)");
}

const char* geometry_key(RisGeometry g) {
    switch (g) {
        case RisGeometry::Linear1D: return "linear";
        case RisGeometry::Planar2D: return "planar";
        case RisGeometry::Cylindrical3D: return "cylindrical";
    }
    return "?";
}

}  // namespace

void apply_override(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "tx_position") s.tx_position = parse_vec3(key, value);
    else if (key == "rx_position") s.rx_position = parse_vec3(key, value);
    else if (key == "ris_center") s.ris_center = parse_vec3(key, value);
    else if (key == "frequency_hz") s.frequency_hz = parse_number(key, value);
    else if (key == "hpbw_deg") s.hpbw_rad = deg_to_rad(parse_number(key, value));
    else if (key == "tx_power_w") s.tx_power_w = parse_number(key, value);
    else if (key == "noise_power_w") s.noise_power_w = parse_number(key, value);
    else if (key == "rx_gain") s.rx_gain = parse_number(key, value);
    else if (key == "geometry") s.ris.geometry = parse_geometry(value);
    else if (key == "total_elements")
        s.ris.total_elements = static_cast<int>(parse_number(key, value));
    else if (key == "element_width") s.ris.element_width = parse_number(key, value);
    else if (key == "element_height") s.ris.element_height = parse_number(key, value);
    else if (key == "element_spacing") s.ris.element_spacing = parse_number(key, value);
    else if (key == "sigma1") s.fading.sigma1 = parse_number(key, value);
    else if (key == "sigma2") s.fading.sigma2 = parse_number(key, value);
    else
        throw ScenarioKeyError("unknown scenario key '" + key + "'");
}

void apply_override_expr(Scenario& s, const std::string& expr) {
    const auto eq = expr.find('=');
    if (eq == std::string::npos)
        throw ScenarioKeyError("override '" + expr + "' is not of the form key=value");
    apply_override(s, trim(expr.substr(0, eq)), trim(expr.substr(eq + 1)));
}

Scenario parse_scenario_text(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioKeyError("scenario line " + std::to_string(lineno) +
                                   " is not of the form key = value");
        apply_override(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "tx_position=%g %g %g rx_position=%g %g %g ris_center=%g %g %g "
                  "frequency_hz=%g hpbw_deg=%g tx_power_w=%g noise_power_w=%g "
                  "rx_gain=%g geometry=%s total_elements=%d element_width=%g "
                  "element_height=%g element_spacing=%g sigma1=%g sigma2=%g",
                  s.tx_position.x, s.tx_position.y, s.tx_position.z, s.rx_position.x,
                  s.rx_position.y, s.rx_position.z, s.ris_center.x, s.ris_center.y,
                  s.ris_center.z, s.frequency_hz, rad_to_deg(s.hpbw_rad), s.tx_power_w,
                  s.noise_power_w, s.rx_gain, geometry_key(s.ris.geometry),
                  s.ris.total_elements, s.ris.element_width, s.ris.element_height,
                  s.ris.element_spacing, s.fading.sigma1, s.fading.sigma2);
    return buf;
}

}  // namespace risgeo
