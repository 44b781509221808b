// Copyright 2026 The rankone Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rankone/image_io.h"

#include <jpeglib.h>
#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <vector>

namespace rankone {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw ImageIoError("read error on " + path.string());
  return bytes;
}

ImageRGB from_bytes(std::size_t width, std::size_t height, const unsigned char* px) {
  std::vector<double> data(width * height * 3);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = px[i] / 255.0;
  return ImageRGB(width, height, std::move(data));
}

std::vector<unsigned char> to_bytes(const ImageRGB& img) {
  const auto d = img.data();
  std::vector<unsigned char> out(d.size());
  std::transform(d.begin(), d.end(), out.begin(), quantize_sample);
  return out;
}

// Skips whitespace and '#' comments between PPM header tokens.
void skip_header_space(const std::string& s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

std::size_t read_header_int(const std::string& s, std::size_t& pos) {
  skip_header_space(s, pos);
  std::size_t value = 0;
  std::size_t digits = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    value = value * 10 + static_cast<std::size_t>(s[pos] - '0');
    if (value > (1u << 30)) throw ImageIoError("PPM header value too large");
    ++pos;
    ++digits;
  }
  if (digits == 0) throw ImageIoError("malformed PPM header");
  return value;
}

ImageRGB decode_png(const std::string& bytes) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ImageIoError(std::string("PNG decode failed: ") + image.message);
  }
  const auto format = image.format;
  if ((format & PNG_FORMAT_FLAG_COLOR) == 0 || (format & PNG_FORMAT_FLAG_ALPHA) != 0 ||
      (format & PNG_FORMAT_FLAG_COLORMAP) != 0 || (format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    png_image_free(&image);
    throw ImageIoError("PNG is not 8-bit RGB (grayscale, alpha, palette and 16-bit are rejected)");
  }
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw ImageIoError("PNG has a zero dimension");
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<unsigned char> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    throw ImageIoError(std::string("PNG decode failed: ") + image.message);
  }
  return from_bytes(image.width, image.height, px.data());
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

ImageRGB decode_jpeg(const std::string& bytes) {
  jpeg_decompress_struct cinfo{};
  JpegErrorManager err{};
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  // Everything touched after setjmp lives outside this frame's locals or is
  // declared before it.
  std::vector<unsigned char> px;
  std::size_t width = 0;
  std::size_t height = 0;
  int channels = 0;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw ImageIoError(std::string("JPEG decode failed: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, reinterpret_cast<const unsigned char*>(bytes.data()),
               static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  channels = cinfo.num_components;
  if (channels == 3) {
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    width = cinfo.output_width;
    height = cinfo.output_height;
    px.resize(width * height * 3);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPROW row = px.data() + static_cast<std::size_t>(cinfo.output_scanline) * width * 3;
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
  }
  jpeg_destroy_decompress(&cinfo);
  if (channels != 3) {
    throw ImageIoError("JPEG has " + std::to_string(channels) +
                       " channels; only 3-channel images are accepted");
  }
  if (width == 0 || height == 0) throw ImageIoError("JPEG has a zero dimension");
  return from_bytes(width, height, px.data());
}

void write_png(const ImageRGB& img, const std::filesystem::path& path) {
  const auto bytes = to_bytes(img);
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, bytes.data(), 0, nullptr)) {
    throw ImageIoError("cannot write " + path.string() + ": " + image.message);
  }
}

bool has_png_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png";
}

}  // namespace

unsigned char quantize_sample(double v) {
  const double q = std::round(v * 255.0);
  if (!(q > 0.0)) return 0;
  if (q >= 255.0) return 255;
  return static_cast<unsigned char>(q);
}

std::string encode_ppm(const ImageRGB& img) {
  std::string header = "P6\n" + std::to_string(img.width()) + " " +
                       std::to_string(img.height()) + "\n255\n";
  const auto px = to_bytes(img);
  header.append(reinterpret_cast<const char*>(px.data()), px.size());
  return header;
}

ImageRGB decode_ppm(const std::string& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw ImageIoError("not a binary PPM (P6)");
  }
  std::size_t pos = 2;
  const std::size_t width = read_header_int(bytes, pos);
  const std::size_t height = read_header_int(bytes, pos);
  const std::size_t maxval = read_header_int(bytes, pos);
  if (width == 0 || height == 0) throw ImageIoError("PPM has a zero dimension");
  if (maxval != 255) {
    throw ImageIoError("PPM maxval " + std::to_string(maxval) + " unsupported (need 255)");
  }
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw ImageIoError("malformed PPM header");
  }
  ++pos;
  const std::size_t need = width * height * 3;
  if (bytes.size() - pos < need) throw ImageIoError("truncated PPM pixel data");
  return from_bytes(width, height, reinterpret_cast<const unsigned char*>(bytes.data() + pos));
}

ImageRGB load_image(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  try {
    if (bytes.size() >= 2 && bytes[0] == 'P') {
      if (bytes[1] != '6') {
        throw ImageIoError("PNM variant P" + std::string(1, bytes[1]) +
                           " unsupported; only binary RGB (P6) is accepted");
      }
      return decode_ppm(bytes);
    }
    if (bytes.size() >= 8 && png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0) {
      return decode_png(bytes);
    }
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xFF &&
        static_cast<unsigned char>(bytes[1]) == 0xD8 &&
        static_cast<unsigned char>(bytes[2]) == 0xFF) {
      return decode_jpeg(bytes);
    }
  } catch (const ImageIoError& e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
  throw ImageIoError(path.string() + ": unsupported image format");
}

void save_image(const ImageRGB& img, const std::filesystem::path& path) {
  if (has_png_extension(path)) {
    write_png(img, path);
    return;
  }
  const std::string bytes = encode_ppm(img);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageIoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError("write error on " + path.string());
}

}  // namespace rankone
