#include "schro/image.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace schro {
namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

// Reads the next whitespace-delimited PNM header token, skipping '#' comments.
std::string next_pnm_token(std::istream& in) {
  std::string tok;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c)) {
    tok.push_back(static_cast<char>(c));
    c = in.get();
  }
  return tok;
}

long parse_pnm_int(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = next_pnm_token(in);
  if (tok.empty()) fail(path, "truncated PGM header");
  try {
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) fail(path, "malformed PGM header token '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(path, "malformed PGM header token '" + tok + "'");
  }
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

}  // namespace

GreyImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");

  const std::string magic = next_pnm_token(in);
  if (magic != "P5") fail(path, "not a binary PGM (expected P5 magic)");

  const long width = parse_pnm_int(in, path);
  const long height = parse_pnm_int(in, path);
  const long maxval = parse_pnm_int(in, path);
  if (width < 1 || height < 1) fail(path, "non-positive PGM dimensions");
  if (maxval < 1 || maxval > 255) fail(path, "unsupported PGM maxval (8-bit only)");
  // Exactly one whitespace byte separates the header from the raster.

  GreyImage img(height, width);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.size()))
    fail(path, "truncated PGM raster");
  return img;
}

void write_pgm(const std::filesystem::path& path, const GreyImage& image) {
  if (image.width() < 1 || image.height() < 1)
    throw std::invalid_argument("write_pgm: empty image");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(path, "cannot open file for writing");
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.size()));
  if (!out) fail(path, "short write");
}

GreyImage read_png(const std::filesystem::path& path) {
  PngReader r;
  r.fp = std::fopen(path.string().c_str(), "rb");
  if (!r.fp) fail(path, "cannot open file");

  png_byte sig[8] = {};
  if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    fail(path, "not a PNG file");

  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!r.png) fail(path, "libpng init failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) fail(path, "libpng init failed");
  if (setjmp(png_jmpbuf(r.png))) fail(path, "PNG decode error");

  png_init_io(r.png, r.fp);
  png_set_sig_bytes(r.png, 8);
  png_read_info(r.png, r.info);

  const png_uint_32 width = png_get_image_width(r.png, r.info);
  const png_uint_32 height = png_get_image_height(r.png, r.info);
  const int bit_depth = png_get_bit_depth(r.png, r.info);
  const int color_type = png_get_color_type(r.png, r.info);
  if (bit_depth > 8) fail(path, "16-bit PNG not supported");

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(r.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
    png_set_expand_gray_1_2_4_to_8(r.png);
  if (png_get_valid(r.png, r.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(r.png);
  png_set_interlace_handling(r.png);
  png_read_update_info(r.png, r.info);

  const int channels = png_get_channels(r.png, r.info);
  const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
  std::vector<png_byte> raster(rowbytes * height);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = raster.data() + y * rowbytes;
  png_read_image(r.png, rows.data());

  GreyImage img(height, width);
  for (png_uint_32 y = 0; y < height; ++y) {
    const png_bytep row = rows[y];
    for (png_uint_32 x = 0; x < width; ++x) {
      const png_bytep px = row + x * channels;
      std::uint8_t grey = 0;
      switch (channels) {
        case 1: grey = px[0]; break;                       // grey
        case 2: grey = px[0]; break;                       // grey + alpha
        case 3:
        case 4: grey = luminance_to_grey(px[0], px[1], px[2]); break;
        default: fail(path, "unsupported PNG channel count");
      }
      img.pixels(y, x) = grey;
    }
  }
  return img;
}

GreyImage load_grey_image(const std::filesystem::path& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) fail(path, "cannot open file");
  unsigned char head[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(head), 2);
  probe.close();

  if (head[0] == 'P' && head[1] == '5') return read_pgm(path);
  if (head[0] == 0x89 && head[1] == 'P') return read_png(path);
  fail(path, "unrecognized image format (PNG or binary PGM expected)");
}

GreyImage image_from_field(const Eigen::ArrayXXd& field) {
  if (field.size() == 0) throw std::invalid_argument("image_from_field: empty field");
  const double lo = field.minCoeff();
  const double hi = field.maxCoeff();
  GreyImage img(field.rows(), field.cols());
  if (hi > lo) {
    const double scale = 255.0 / (hi - lo);
    for (Eigen::Index y = 0; y < field.rows(); ++y)
      for (Eigen::Index x = 0; x < field.cols(); ++x)
        img.pixels(y, x) =
            static_cast<std::uint8_t>(std::lround((field(y, x) - lo) * scale));
  }
  return img;
}

}  // namespace schro
