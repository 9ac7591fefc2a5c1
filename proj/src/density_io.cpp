#include "idemfs/density_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "idemfs/errors.hpp"

namespace idemfs {

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void check_table(const DensityTable& t) {
    const std::size_t n = t.density.size();
    if (t.dimension != 1 && t.dimension != 2) throw ParseError("dimension must be 1 or 2");
    if (t.index.size() != n || t.x.size() != n || (t.dimension == 2 && t.y.size() != n) ||
        (t.dimension == 1 && !t.y.empty())) {
        throw ParseError("density columns have different lengths");
    }
    if (n == 0) throw ParseError("empty density field");
    for (std::size_t i = 0; i < n; ++i) {
        if (t.index[i] != i) throw ParseError("row " + std::to_string(i) + ": index out of order");
        if (!(t.density[i] >= 0.0 && t.density[i] <= 1.0)) {
            throw ParseError("row " + std::to_string(i) + ": density outside [0,1]");
        }
    }
}

}  // namespace

DensityFormat parse_format(const std::string& name) {
    if (name == "csv") return DensityFormat::csv;
    if (name == "pgm") return DensityFormat::pgm;
    if (name == "json") return DensityFormat::json;
    throw ParseError("unknown format '" + name + "' (expected csv, pgm or json)");
}

DensityFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    if (!ext.empty()) ext.erase(0, 1);
    return parse_format(ext);
}

DensityTable to_table(const SubDensity& d) {
    const auto& X = d.space();
    if (!X.has_coordinates()) throw DomainError("density export needs point coordinates");
    DensityTable t;
    t.dimension = X.dimension();
    for (std::size_t i = 0; i < d.size(); ++i) {
        t.index.push_back(i);
        t.x.push_back(X.coordinate(i, 0));
        if (t.dimension == 2) t.y.push_back(X.coordinate(i, 1));
        t.density.push_back(d[i]);
    }
    return t;
}

void write_csv(std::ostream& out, const DensityTable& t) {
    out << (t.dimension == 2 ? "index,x,y,density\n" : "index,x,density\n");
    for (std::size_t i = 0; i < t.density.size(); ++i) {
        out << t.index[i] << ',' << g17(t.x[i]) << ',';
        if (t.dimension == 2) out << g17(t.y[i]) << ',';
        out << g17(t.density[i]) << '\n';
    }
}

DensityTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("line 1: missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    DensityTable t;
    if (line == "index,x,density") t.dimension = 1;
    else if (line == "index,x,y,density") t.dimension = 2;
    else throw ParseError("line 1: expected header 'index,x[,y],density'");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != t.dimension + 2) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(t.dimension + 2) + " columns");
        }
        double idx = parse_double(cells[0], lineno);
        if (idx < 0 || idx != std::floor(idx)) {
            throw ParseError("line " + std::to_string(lineno) + ": bad index");
        }
        t.index.push_back(static_cast<std::size_t>(idx));
        t.x.push_back(parse_double(cells[1], lineno));
        if (t.dimension == 2) t.y.push_back(parse_double(cells[2], lineno));
        t.density.push_back(parse_double(cells.back(), lineno));
    }
    check_table(t);
    return t;
}

void write_json(std::ostream& out, const DensityTable& t) {
    nlohmann::json j;
    j["dimension"] = t.dimension;
    j["index"] = t.index;
    j["x"] = t.x;
    if (t.dimension == 2) j["y"] = t.y;
    j["density"] = t.density;
    out << j.dump(1) << '\n';
}

DensityTable read_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
        DensityTable t;
        t.dimension = j.at("dimension").get<std::size_t>();
        t.index = j.at("index").get<std::vector<std::size_t>>();
        t.x = j.at("x").get<std::vector<double>>();
        if (t.dimension == 2) t.y = j.at("y").get<std::vector<double>>();
        t.density = j.at("density").get<std::vector<double>>();
        check_table(t);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("density JSON: ") + e.what());
    }
}

int pgm_level(double d) { return static_cast<int>(std::floor(255.0 * d + 0.5)); }

void write_pgm(std::ostream& out, const DensityTable& t) {
    std::size_t width = t.density.size(), height = 1;
    if (t.dimension == 2) {
        std::set<double> xs(t.x.begin(), t.x.end());
        width = xs.size();
        height = t.density.size() / width;
        if (width * height != t.density.size()) {
            throw ParseError("2-D density is not a complete lattice");
        }
    }
    out << "P2\n" << width << ' ' << height << "\n255\n";
    for (std::size_t r = 0; r < height; ++r) {
        std::size_t col = 0;
        for (std::size_t c = 0; c < width; ++c) {
            std::string v = std::to_string(pgm_level(t.density[r * width + c]));
            if (col > 0 && col + 1 + v.size() > 70) {
                out << '\n';
                col = 0;
            }
            if (col > 0) {
                out << ' ';
                ++col;
            }
            out << v;
            col += v.size();
        }
        out << '\n';
    }
}

DensityTable read_pgm(std::istream& in) {
    // Tokenize, dropping '#' comments.
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::stringstream ss(line);
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
    }
    if (tokens.size() < 4 || tokens[0] != "P2") throw ParseError("not a plain (P2) PGM file");
    auto num = [&](std::size_t k) {
        try {
            return std::stoul(tokens[k]);
        } catch (const std::exception&) {
            throw ParseError("PGM: bad integer '" + tokens[k] + "'");
        }
    };
    std::size_t width = num(1), height = num(2), maxval = num(3);
    if (width == 0 || height == 0 || maxval == 0) throw ParseError("PGM: empty image");
    if (tokens.size() != 4 + width * height) throw ParseError("PGM: pixel count mismatch");
    DensityTable t;
    t.dimension = height > 1 ? 2 : 1;
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            std::size_t v = num(4 + r * width + c);
            if (v > maxval) throw ParseError("PGM: pixel above maxval");
            t.index.push_back(r * width + c);
            t.x.push_back(static_cast<double>(c));
            if (t.dimension == 2) t.y.push_back(static_cast<double>(r));
            t.density.push_back(static_cast<double>(v) / static_cast<double>(maxval));
        }
    }
    return t;
}

DensityTable read_density(const std::filesystem::path& path, DensityFormat format) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    switch (format) {
        case DensityFormat::csv: return read_csv(in);
        case DensityFormat::json: return read_json(in);
        case DensityFormat::pgm: return read_pgm(in);
    }
    throw ParseError("unknown format");
}

void write_density(const std::filesystem::path& path, const DensityTable& t,
                   DensityFormat format) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    switch (format) {
        case DensityFormat::csv: write_csv(out, t); break;
        case DensityFormat::json: write_json(out, t); break;
        case DensityFormat::pgm: write_pgm(out, t); break;
    }
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace idemfs
