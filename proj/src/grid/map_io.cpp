#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/format.h>
#include <png.h>
#include <yaml-cpp/yaml.h>

#include "birs/error.hpp"
#include "birs/grid.hpp"
#include "birs/textfmt.hpp"

namespace fs = std::filesystem;

namespace birs::grid {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IoError", fmt::format("cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("IoError", fmt::format("cannot write {}", path));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("IoError", fmt::format("short write to {}", path));
}

// Next whitespace-delimited header token; '#' comments run to end of line.
std::string_view header_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) && bytes[pos] != '#') ++pos;
  return bytes.substr(start, pos - start);
}

int header_int(std::string_view bytes, std::size_t& pos, const char* what) {
  auto tok = header_token(bytes, pos);
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
    throw Error("BadMagic", fmt::format("PGM {} '{}' is not a positive integer", what, tok));
  }
  return v;
}

}  // namespace

std::uint8_t pixel_of(Cell c) {
  switch (c) {
    case Cell::Occupied: return 0;
    case Cell::Free: return 254;
    case Cell::Unknown: return 205;
  }
  return 205;
}

Cell cell_of(std::uint8_t pixel, const MapMeta& meta) {
  double occ = meta.negate ? pixel / 255.0 : (255.0 - pixel) / 255.0;
  if (occ > meta.occupied_thresh) return Cell::Occupied;
  if (occ < meta.free_thresh) return Cell::Free;
  return Cell::Unknown;
}

std::string encode_pgm(const OccupancyGrid& grid) {
  std::string out = fmt::format("P5\n{} {}\n255\n", grid.width(), grid.height());
  out.reserve(out.size() + grid.cells.size());
  for (int r = grid.height() - 1; r >= 0; --r) {
    for (int c = 0; c < grid.width(); ++c) out += static_cast<char>(pixel_of(grid.at(c, r)));
  }
  return out;
}

std::string format_meta(const OccupancyGrid& grid, std::string_view image_ref) {
  const auto& o = grid.origin();
  return fmt::format(
      "image: {}\nresolution: {}\norigin: [{}, {}, {}]\nnegate: 0\noccupied_thresh: 0.65\nfree_thresh: 0.196\n",
      image_ref, text::decimal(grid.resolution()), text::decimal_point(o.x), text::decimal_point(o.y),
      text::decimal_point(o.theta));
}

MapMeta parse_meta(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    throw Error("BadMeta", e.what());
  }
  if (!root.IsMap()) throw Error("BadMeta", "map metadata must be a YAML mapping");
  auto need = [&](const char* key) {
    if (!root[key]) throw Error("MissingMetaKey", fmt::format("map metadata has no '{}'", key));
    return root[key];
  };
  MapMeta m;
  try {
    m.image = need("image").as<std::string>();
    m.resolution = need("resolution").as<double>();
    auto origin = need("origin");
    if (!origin.IsSequence() || origin.size() != 3) throw Error("BadMeta", "origin must be [x, y, yaw]");
    m.origin = {origin[0].as<double>(), origin[1].as<double>(), origin[2].as<double>()};
    m.negate = need("negate").as<int>();
    m.occupied_thresh = need("occupied_thresh").as<double>();
    m.free_thresh = need("free_thresh").as<double>();
  } catch (const YAML::Exception& e) {
    throw Error("BadMeta", e.what());
  }
  if (!(m.resolution > 0.0)) throw Error("BadMeta", "resolution must be positive");
  return m;
}

OccupancyGrid decode_pgm(std::string_view bytes, const MapMeta& meta) {
  if (bytes.size() < 2 || bytes.substr(0, 2) != "P5") throw Error("BadMagic", "not a binary PGM (P5) image");
  std::size_t pos = 2;
  int w = header_int(bytes, pos, "width");
  int h = header_int(bytes, pos, "height");
  int maxval = header_int(bytes, pos, "maxval");
  if (maxval != 255) throw Error("BadMagic", fmt::format("PGM maxval {} is not 255", maxval));
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw Error("BadMagic", "PGM header is not followed by a single whitespace byte");
  }
  ++pos;
  const std::size_t expected = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (bytes.size() - pos != expected) {
    throw Error("DimensionMismatch",
                fmt::format("{}x{} image needs {} bytes, found {}", w, h, expected, bytes.size() - pos));
  }
  OccupancyGrid g;
  g.spec = {w, h, meta.resolution, meta.origin};
  g.cells.resize(expected);
  for (int row = 0; row < h; ++row) {
    int r = h - 1 - row;
    for (int c = 0; c < w; ++c) {
      g.at(c, r) = cell_of(static_cast<std::uint8_t>(bytes[pos + static_cast<std::size_t>(row) * w + c]), meta);
    }
  }
  return g;
}

void export_map(const OccupancyGrid& grid, const std::string& image_path, const std::string& meta_path) {
  fs::path image = fs::absolute(image_path).lexically_normal();
  fs::path meta_dir = fs::absolute(meta_path).lexically_normal().parent_path();
  fs::path rel = image.lexically_relative(meta_dir);
  std::string ref = rel.empty() ? image.string() : rel.generic_string();
  write_file(image_path, encode_pgm(grid));
  write_file(meta_path, format_meta(grid, ref));
}

OccupancyGrid import_map(const std::string& image_path, const std::string& meta_path) {
  MapMeta meta = parse_meta(read_file(meta_path));
  return decode_pgm(read_file(image_path), meta);
}

OccupancyGrid load_map(const std::string& meta_path) {
  MapMeta meta = parse_meta(read_file(meta_path));
  fs::path image(meta.image);
  if (image.is_relative()) image = fs::path(meta_path).parent_path() / image;
  return decode_pgm(read_file(image.string()), meta);
}

void export_png(const OccupancyGrid& grid, const std::string& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw Error("IoError", fmt::format("cannot write {}", path));
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("IoError", "libpng initialisation failed");
  }
  std::vector<png_byte> row(static_cast<std::size_t>(grid.width()));
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("IoError", fmt::format("PNG encoding of {} failed", path));
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, grid.width(), grid.height(), 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int r = grid.height() - 1; r >= 0; --r) {
    for (int c = 0; c < grid.width(); ++c) row[c] = pixel_of(grid.at(c, r));
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace birs::grid
