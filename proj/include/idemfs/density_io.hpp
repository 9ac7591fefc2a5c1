#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "idemfs/measure.hpp"

namespace idemfs {

/// A density field in file form: one row per point, row-major.
struct DensityTable {
    std::size_t dimension = 1;
    std::vector<std::size_t> index;
    std::vector<double> x;
    std::vector<double> y;  // empty when dimension == 1
    std::vector<double> density;

    bool operator==(const DensityTable&) const = default;
};

enum class DensityFormat { csv, pgm, json };

DensityFormat parse_format(const std::string& name);  // throws ParseError
/// Guesses from the file extension (.csv, .pgm, .json).
DensityFormat format_from_path(const std::filesystem::path& path);

DensityTable to_table(const SubDensity& density);

/// CSV header `index,x[,y],density`; values printed with 17 significant digits.
void write_csv(std::ostream& out, const DensityTable& t);
DensityTable read_csv(std::istream& in);

/// {"dimension": d, "index": [...], "x": [...], ["y": [...],] "density": [...]}
void write_json(std::ostream& out, const DensityTable& t);
DensityTable read_json(std::istream& in);

/// Plain P2, maxval 255, one image row per grid row (wrapped at 70
/// columns); each value is floor(255 d + 1/2). One-dimensional fields
/// become a single-row image.
void write_pgm(std::ostream& out, const DensityTable& t);
/// Pixels become densities v / maxval with x = column, y = row.
DensityTable read_pgm(std::istream& in);

/// floor(255 d + 1/2).
int pgm_level(double d);

DensityTable read_density(const std::filesystem::path& path, DensityFormat format);
void write_density(const std::filesystem::path& path, const DensityTable& t, DensityFormat format);

}  // namespace idemfs
