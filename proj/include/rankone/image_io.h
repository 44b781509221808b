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

#ifndef RANKONE_IMAGE_IO_H_
#define RANKONE_IMAGE_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "rankone/image.h"

namespace rankone {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads a binary PPM (P6, maxval 255), PNG or JPEG file. The format is
// detected from the file signature, not the extension. Samples map to
// [0,1] by v/255 with no gamma transform. Only 8-bit 3-channel images are
// accepted; grayscale, palette and alpha images are rejected.
// Throws ImageIoError.
ImageRGB load_image(const std::filesystem::path& path);

// Writes `img` as PPM, or as PNG when the extension is ".png" (any case).
// Samples are quantized by round(v*255). PPM output is byte-deterministic.
// Throws ImageIoError.
void save_image(const ImageRGB& img, const std::filesystem::path& path);

// In-memory PPM codec used by save_image/load_image.
std::string encode_ppm(const ImageRGB& img);
ImageRGB decode_ppm(const std::string& bytes);

// round(v*255) clamped to [0,255].
unsigned char quantize_sample(double v);

}  // namespace rankone

#endif  // RANKONE_IMAGE_IO_H_
