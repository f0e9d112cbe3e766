#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>

#include <png.h>

#include "planvec/planio.hpp"

namespace planvec::planio {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

namespace {

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  raster::BinaryMask read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != '5') throw ParseError("not a binary PGM (P5)", 0);
    pos_ = 2;
    const long width = header_number("width");
    const long height = header_number("height");
    const long maxval = header_number("maxval");
    if (width <= 0 || height <= 0) throw ParseError("PGM dimensions must be positive", pos_);
    if (maxval <= 0 || maxval > 65535) throw ParseError("PGM maxval out of range", pos_);
    if (maxval > 255) throw UnsupportedFormat("16-bit PGM is not supported");
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) throw ParseError("expected whitespace after PGM header", pos_);
    ++pos_;

    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes_.size() - pos_ < need) throw ParseError("PGM pixel data truncated", bytes_.size());
    raster::BinaryMask mask(static_cast<int>(width), static_cast<int>(height));
    const std::uint8_t* px = bytes_.data() + pos_;
    for (long y = 0; y < height; ++y) {
      for (long x = 0; x < width; ++x, ++px) {
        // Luminance on the 0..255 scale.
        if (static_cast<long>(*px) * 255 > 127 * maxval) mask.set(static_cast<int>(x), static_cast<int>(y));
      }
    }
    return mask;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long header_number(const char* name) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000) throw ParseError(std::string("PGM ") + name + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected PGM ") + name, pos_);
    return v;
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

struct PngSource {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
  bool unsupported = false;
  char message[256] = {};
};

void png_read_bytes(png_structp png, png_bytep out, png_size_t n) {
  auto* src = static_cast<PngSource*>(png_get_io_ptr(png));
  if (src->bytes.size() - src->pos < n) {
    src->pos = src->bytes.size();
    png_error(png, "PNG data truncated");
  }
  std::memcpy(out, src->bytes.data() + src->pos, n);
  src->pos += n;
}

void png_on_error(png_structp png, png_const_charp msg) {
  auto* src = static_cast<PngSource*>(png_get_error_ptr(png));
  std::snprintf(src->message, sizeof src->message, "%s", msg);
  png_longjmp(png, 1);
}

void png_on_warning(png_structp, png_const_charp) {}

enum class PngStatus { ok, parse_error, unsupported };

// libpng reports errors through longjmp, so everything with a destructor
// lives in the caller and state shared with the error path sits in `src`.
PngStatus decode_png(PngSource& src, std::vector<std::uint8_t>& rgb, std::vector<png_bytep>& rows,
                     png_uint_32& width, png_uint_32& height) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &src, png_on_error, png_on_warning);
  if (png == nullptr) return PngStatus::parse_error;
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return PngStatus::parse_error;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return src.unsupported ? PngStatus::unsupported : PngStatus::parse_error;
  }
  png_set_read_fn(png, &src, png_read_bytes);
  png_read_info(png, info);
  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  if (png_get_bit_depth(png, info) == 16) {
    src.unsupported = true;
    png_error(png, "16-bit PNG is not supported");
  }
  png_set_expand(png);  // palette -> RGB, low-bit gray -> 8 bit, tRNS -> alpha
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  rgb.assign(rowbytes * height, 0);
  rows.assign(height, nullptr);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = rgb.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_destroy_read_struct(&png, &info, nullptr);
  return PngStatus::ok;
}

raster::BinaryMask read_png(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0) throw ParseError("not a PNG file", 0);
  PngSource src{bytes};
  std::vector<std::uint8_t> rgb;
  std::vector<png_bytep> rows;
  png_uint_32 width = 0, height = 0;
  switch (decode_png(src, rgb, rows, width, height)) {
    case PngStatus::unsupported:
      throw UnsupportedFormat(src.message);
    case PngStatus::parse_error:
      throw ParseError(src.message[0] != '\0' ? src.message : "invalid PNG", src.pos);
    case PngStatus::ok:
      break;
  }
  raster::BinaryMask mask(static_cast<int>(width), static_cast<int>(height));
  const std::uint8_t* p = rgb.data();
  for (png_uint_32 y = 0; y < height; ++y) {
    for (png_uint_32 x = 0; x < width; ++x, p += 3) {
      // Rec. 601 luma in integer form: 299 R + 587 G + 114 B > 127 * 1000.
      const int luma = 299 * p[0] + 587 * p[1] + 114 * p[2];
      if (luma > 127'000) mask.set(static_cast<int>(x), static_cast<int>(y));
    }
  }
  return mask;
}

}  // namespace

raster::BinaryMask load_mask(std::span<const std::uint8_t> bytes, ImageFormat format) {
  return format == ImageFormat::pgm ? PgmReader(bytes).read() : read_png(bytes);
}

raster::BinaryMask load_mask(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return load_mask(bytes, ImageFormat::pgm);
  if (bytes.size() >= 4 && bytes[0] == 0x89 && bytes[1] == 'P' && bytes[2] == 'N' && bytes[3] == 'G') {
    return load_mask(bytes, ImageFormat::png);
  }
  throw ParseError("unrecognized image format (expected PGM P5 or PNG)", 0);
}

std::vector<std::uint8_t> save_pgm(const raster::BinaryMask& mask) {
  const std::string header =
      "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + mask.size());
  for (std::uint8_t b : mask.data()) out.push_back(b ? 255 : 0);
  return out;
}

}  // namespace planvec::planio
