#pragma once

#include <cstddef>
#include <vector>

#include "dcpose/errors.hpp"

namespace dcpose {

// Dense row-major image with interleaved channels: index (y, x, c) maps to
// data[(y * width + x) * channels + c].
template <typename T>
struct Image {
  int height = 0, width = 0, channels = 1;
  std::vector<T> data;

  Image() = default;
  Image(int h, int w, int c, T fill = T{})
      : height(h), width(w), channels(c),
        data(static_cast<std::size_t>(h) * w * c, fill) {}

  bool empty() const { return data.empty(); }

  T& at(int y, int x, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  const T& at(int y, int x, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  bool same_shape(int h, int w, int c) const {
    return height == h && width == w && channels == c;
  }

  template <typename U>
  bool same_shape(const Image<U>& other) const {
    return same_shape(other.height, other.width, other.channels);
  }
};

template <typename T>
void require_shape(const Image<T>& img, int h, int w, int c,
                   const char* what) {
  if (!img.same_shape(h, w, c)) {
    throw ShapeMismatch(std::string(what) + " has wrong shape");
  }
}

}  // namespace dcpose
