#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nomlang {

/// Thrown by every text parser; `position` is a byte offset into the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace nomlang
