#pragma once

// Character-level scanner shared by the word, regex and .hds parsers.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "nomlang/syntax_error.hpp"

namespace nomlang::detail {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  /// Skips whitespace and `//` comments.
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_identifier() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    if (!at_identifier()) fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace nomlang::detail
