// SPDX-License-Identifier: Apache-2.0
#include "ldacs/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ldacs {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void save_coefficients(const std::string& path, const DesignedFilter& f, int bw_khz) {
    std::ostringstream os;
    os << "# order=" << f.spec.order << " interp=" << f.spec.interpolation_factor
       << " kind=" << (f.spec.kind == FilterKind::halfband ? "halfband" : "general")
       << " bw=" << bw_khz << "\n";
    char buf[64];
    for (double c : f.coefficients) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", c);
        os << buf;
    }
    write_text_file(path, os.str());
}

DesignedFilter load_coefficients(const std::string& path, int* bw_khz) {
    std::istringstream is(read_text_file(path));
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0) {
        throw std::runtime_error("missing coefficient header: " + path);
    }
    int order = -1, interp = -1, bw = 0;
    std::string kind_s;
    {
        std::istringstream hs(header.substr(2));
        std::string tok;
        while (hs >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "order") order = std::stoi(val);
            else if (key == "interp") interp = std::stoi(val);
            else if (key == "kind") kind_s = val;
            else if (key == "bw") bw = std::stoi(val);
        }
    }
    if (order < 0 || interp < 1 || kind_s.empty()) {
        throw std::runtime_error("malformed coefficient header: " + path);
    }
    std::vector<double> coeffs;
    std::string line;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        coeffs.push_back(std::stod(line));
    }
    if (coeffs.size() != static_cast<std::size_t>(order) * interp + 1) {
        throw std::runtime_error("coefficient count does not match the header: " + path);
    }
    const FilterKind kind =
        kind_s == "halfband" ? FilterKind::halfband : FilterKind::general_lowpass;

    // Recover the unique half from the stored full set.
    std::vector<double> unique;
    if (kind == FilterKind::general_lowpass) {
        for (int k = 0; k <= order / 2; ++k) {
            unique.push_back(coeffs[static_cast<std::size_t>(k) * interp]);
        }
    } else {
        for (int i = 0; i < (order + 2) / 4; ++i) {
            unique.push_back(coeffs[static_cast<std::size_t>(2 * i) * interp]);
        }
    }
    DesignedFilter f;
    f.spec.order = order;
    f.spec.interpolation_factor = interp;
    f.spec.kind = kind;
    // band edges are not stored in the file; keep placeholders valid
    f.spec.passband_edge = kind == FilterKind::halfband ? 0.25 : 0.4;
    f.spec.stopband_edge = kind == FilterKind::halfband ? 0.75 : 0.6;
    f.coefficients = std::move(coeffs);
    f.unique_coefficients = std::move(unique);
    if (bw_khz) *bw_khz = bw;
    return f;
}

void save_mask(const std::string& path, const SpectralMask& mask) {
    std::ostringstream os;
    os << "# " << mask.name << "\n";
    char buf[96];
    for (const auto& p : mask.points) {
        std::snprintf(buf, sizeof(buf), "%.12g %.6g\n", p.freq, p.level_db);
        os << buf;
    }
    write_text_file(path, os.str());
}

SpectralMask load_mask(const std::string& path) {
    std::istringstream is(read_text_file(path));
    SpectralMask mask;
    mask.name = path;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (first && line.size() > 2) mask.name = trim(line.substr(1));
            first = false;
            continue;
        }
        first = false;
        std::istringstream ls(line);
        MaskPoint p{};
        if (!(ls >> p.freq >> p.level_db)) {
            throw std::runtime_error("malformed mask line: " + line);
        }
        mask.points.push_back(p);
    }
    mask.validate();
    return mask;
}

void save_response_csv(const std::string& path, std::span<const cplx> response) {
    std::ostringstream os;
    os << "freq_norm,mag_db,phase_rad\n";
    char buf[128];
    const int n = static_cast<int>(response.size());
    for (int i = 0; i < n; ++i) {
        const double f = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
        std::snprintf(buf, sizeof(buf), "%.9f,%.6f,%.9f\n", f, to_db(std::abs(response[i])),
                      std::arg(response[i]));
        os << buf;
    }
    write_text_file(path, os.str());
}

void save_psd_csv(const std::string& path, const PsdEstimate& psd) {
    std::ostringstream os;
    os << "freq_hz,psd_db\n";
    char buf[96];
    for (std::size_t i = 0; i < psd.freq_hz.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.3f,%.6f\n", psd.freq_hz[i], psd.psd_db[i]);
        os << buf;
    }
    write_text_file(path, os.str());
}

void save_ber_csv(const std::string& path, std::span<const BerPoint> points) {
    std::ostringstream os;
    os << "snr_db,ber,ci95,bits\n";
    char buf[128];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof(buf), "%.3f,%.9g,%.9g,%lld\n", p.snr_db, p.ber,
                      p.ci95_half_width, p.bits);
        os << buf;
    }
    write_text_file(path, os.str());
}

void save_iq_blob(const std::string& path, std::span<const cplx> samples) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    for (const auto& s : samples) {
        const double re = s.real(), im = s.imag();
        os.write(reinterpret_cast<const char*>(&re), sizeof(double));
        os.write(reinterpret_cast<const char*>(&im), sizeof(double));
    }
}

std::vector<cplx> load_iq_blob(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open: " + path);
    std::vector<cplx> out;
    double re, im;
    while (is.read(reinterpret_cast<char*>(&re), sizeof(double)) &&
           is.read(reinterpret_cast<char*>(&im), sizeof(double))) {
        out.emplace_back(re, im);
    }
    return out;
}

void save_iq_csv(const std::string& path, std::span<const cplx> samples) {
    std::ostringstream os;
    os << "i,q\n";
    char buf[96];
    for (const auto& s : samples) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", s.real(), s.imag());
        os << buf;
    }
    write_text_file(path, os.str());
}

std::map<std::string, std::string> parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line, section;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("malformed config line: " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

std::map<std::string, std::string> load_config(const std::string& path) {
    return parse_config(read_text_file(path));
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            const auto t = trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += c;
        }
    }
    const auto t = trim(cur);
    if (!t.empty()) out.push_back(t);
    return out;
}

} // namespace ldacs
