#include "oceanip/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace oceanip::io {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ValidationError("line " + std::to_string(line_no) + ": cannot parse number '" + s +
                              "'");
    return v;
}

// "# key=value" -> value if the key matches.
bool comment_value(const std::string& line, const std::string& key, std::string& value) {
    std::string body = trim(std::string_view(line).substr(1));
    if (body.rfind(key + "=", 0) != 0) return false;
    value = trim(std::string_view(body).substr(key.size() + 1));
    return true;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_profile(std::ostream& os, const PotentialProfile& p) {
    os << "# k=" << format_double(p.k) << "\n";
    os << "z,q\n";
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        os << format_double(p.nodes[i]) << "," << format_double(p.values[i]) << "\n";
}

PotentialProfile read_profile(std::istream& is) {
    PotentialProfile p;
    bool header = false;
    std::size_t cols = 2;  // reconstructions carry an extra n column
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string v;
            if (comment_value(line, "k", v)) p.k = parse_double(v, line_no);
            continue;
        }
        auto cells = split_csv(line);
        if (!header) {
            const bool zq = cells.size() >= 2 && cells[0] == "z" && cells[1] == "q";
            if (!zq || cells.size() > 3 || (cells.size() == 3 && cells[2] != "n"))
                throw ValidationError("profile: expected header 'z,q' or 'z,q,n'");
            cols = cells.size();
            header = true;
            continue;
        }
        if (cells.size() != cols)
            throw ValidationError("profile line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(cols) + " columns");
        p.nodes.push_back(parse_double(cells[0], line_no));
        p.values.push_back(parse_double(cells[1], line_no));
    }
    if (!header) throw ValidationError("profile: missing header 'z,q'");
    validate_profile(p);
    return p;
}

void write_curve(std::ostream& os, const SampledCurve& c, double depth) {
    os << "# kind=" << to_string(c.kind) << "\n";
    if (c.kind == CurveKind::field_slice) {
        os << "r,z,re,im\n";
        for (std::size_t i = 0; i < c.size(); ++i)
            os << format_double(c.abscissae[i]) << "," << format_double(depth) << ","
               << format_double(c.values[i]) << ","
               << format_double(c.is_complex() ? c.imag[i] : 0.0) << "\n";
        return;
    }
    if (c.is_complex()) {
        os << "x,re,im\n";
        for (std::size_t i = 0; i < c.size(); ++i)
            os << format_double(c.abscissae[i]) << "," << format_double(c.values[i]) << ","
               << format_double(c.imag[i]) << "\n";
    } else {
        os << "x,value\n";
        for (std::size_t i = 0; i < c.size(); ++i)
            os << format_double(c.abscissae[i]) << "," << format_double(c.values[i]) << "\n";
    }
}

SampledCurve read_curve(std::istream& is) {
    SampledCurve c;
    std::vector<std::string> columns;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string v;
            if (comment_value(line, "kind", v)) c.kind = curve_kind_from_string(v);
            continue;
        }
        auto cells = split_csv(line);
        if (columns.empty()) {
            columns = cells;
            const bool ok = columns == std::vector<std::string>{"x", "value"} ||
                            columns == std::vector<std::string>{"x", "re", "im"} ||
                            columns == std::vector<std::string>{"r", "z", "re", "im"};
            if (!ok) throw ValidationError("curve: unrecognized header '" + line + "'");
            if (columns.size() == 4) c.kind = CurveKind::field_slice;
            continue;
        }
        if (cells.size() != columns.size())
            throw ValidationError("curve line " + std::to_string(line_no) + ": column count");
        c.abscissae.push_back(parse_double(cells[0], line_no));
        if (columns.size() == 2) {
            c.values.push_back(parse_double(cells[1], line_no));
        } else {
            const std::size_t re = columns.size() - 2;
            c.values.push_back(parse_double(cells[re], line_no));
            c.imag.push_back(parse_double(cells[re + 1], line_no));
        }
    }
    if (columns.empty()) throw ValidationError("curve: missing header");
    validate_curve(c);
    return c;
}

void write_spectral_data(std::ostream& os, const SpectralData& sd) {
    nlohmann::json j;
    j["modes"] = nlohmann::json::array();
    for (const auto& m : sd.modes) j["modes"].push_back({{"lambda_sq", m.lambda_sq}, {"t", m.t}});
    os << j.dump(2) << "\n";
}

SpectralData read_spectral_data(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("spectral data: ") + e.what());
    }
    if (!j.contains("modes") || !j["modes"].is_array())
        throw ValidationError("spectral data: missing 'modes' array");
    SpectralData sd;
    for (const auto& m : j["modes"]) {
        if (!m.contains("lambda_sq") || !m.contains("t"))
            throw ValidationError("spectral data: mode needs lambda_sq and t");
        sd.modes.push_back({m["lambda_sq"].get<double>(), m["t"].get<double>()});
    }
    validate_spectral_data(sd);
    return sd;
}

PotentialProfile load_profile(const std::string& path) {
    auto in = open_in(path);
    return read_profile(in);
}

void save_profile(const std::string& path, const PotentialProfile& p) {
    auto out = open_out(path);
    write_profile(out, p);
}

SampledCurve load_curve(const std::string& path) {
    auto in = open_in(path);
    return read_curve(in);
}

void save_curve(const std::string& path, const SampledCurve& c, double depth) {
    auto out = open_out(path);
    write_curve(out, c, depth);
}

SpectralData load_spectral_data(const std::string& path) {
    auto in = open_in(path);
    return read_spectral_data(in);
}

void save_spectral_data(const std::string& path, const SpectralData& sd) {
    auto out = open_out(path);
    write_spectral_data(out, sd);
}

std::string read_text_file(const std::string& path) {
    auto in = open_in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
}

}  // namespace oceanip::io
