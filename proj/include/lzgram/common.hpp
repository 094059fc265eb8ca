#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lzgram {

// Texts are raw byte strings; std::string is used as the byte container and
// positions exposed by the API are 1-based.
using Text = std::string;
using TextView = std::string_view;

enum class errc {
  malformed_parse,
  empty_input,
  alignment,
  shape,
  out_of_range,
  bad_base,
  too_large,
  malformed_format,
  cyclic,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

inline std::uint8_t byte_at(TextView s, std::size_t pos1) {
  return static_cast<std::uint8_t>(s[pos1 - 1]);
}

}  // namespace lzgram
