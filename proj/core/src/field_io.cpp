#include "ktcy/field_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "ktcy/errors.hpp"

namespace ktcy {

namespace {

constexpr std::array<char, 4> kMagic{'K', 'T', 'C', 'Y'};

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T)))
    throw FormatError(std::string("KTCY: truncated while reading ") + what);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_ktcy(std::ostream& os, const TorusField& f) {
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.n()));
  for (double v : f.values()) put_le<double>(os, v);
}

void write_ktcy(const std::filesystem::path& path, const TorusField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_ktcy(os, f);
}

TorusField read_ktcy(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError("KTCY: bad magic");
  const auto n = get_le<std::uint32_t>(is, "grid size");
  if (n < 4 || n % 2 != 0 || n > 1u << 15) throw FormatError("KTCY: invalid grid size " + std::to_string(n));
  const Grid grid(static_cast<int>(n));
  std::vector<double> values(grid.size());
  for (auto& v : values) v = get_le<double>(is, "samples");
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("KTCY: trailing bytes after samples");
  try {
    return TorusField(grid, std::move(values));
  } catch (const std::domain_error& e) {
    throw FormatError(std::string("KTCY: ") + e.what());
  }
}

TorusField read_ktcy(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  return read_ktcy(is);
}

void write_csv(std::ostream& os, const TorusField& f) {
  const int n = f.n();
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) os << ',';
      os << f(i, j);
    }
    os << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const TorusField& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(os, f);
}

}  // namespace ktcy
