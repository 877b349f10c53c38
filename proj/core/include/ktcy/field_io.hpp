#pragma once

// "KTCY v1" binary field dumps and CSV export.
//
// Layout: the four bytes "KTCY", a little-endian uint32 n, then n*n
// little-endian IEEE-754 doubles in row-major order, x index outermost.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ktcy/torus_grid.hpp"

namespace ktcy {

void write_ktcy(std::ostream& os, const TorusField& f);
void write_ktcy(const std::filesystem::path& path, const TorusField& f);

/// Throws FormatError on bad magic, truncation or trailing bytes.
TorusField read_ktcy(std::istream& is);
TorusField read_ktcy(const std::filesystem::path& path);

/// n rows of n comma-separated values, x index as row.
void write_csv(std::ostream& os, const TorusField& f);
void write_csv(const std::filesystem::path& path, const TorusField& f);

}  // namespace ktcy
