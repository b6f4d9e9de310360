#include "nomlang/names.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace nomlang {
namespace {

// Append-only label table shared by all threads.
class Interner {
 public:
  std::uint32_t intern(std::string_view label) {
    std::lock_guard lock(mu_);
    auto it = ids_.find(std::string(label));
    if (it != ids_.end()) return it->second;
    labels_.emplace_back(label);
    auto id = static_cast<std::uint32_t>(labels_.size());
    ids_.emplace(labels_.back(), id);
    return id;
  }

  std::string label(std::uint32_t id) const {
    std::lock_guard lock(mu_);
    if (id == 0 || id > labels_.size()) return "?" + std::to_string(id);
    return labels_[id - 1];
  }

 private:
  mutable std::mutex mu_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

Interner& name_table() {
  static Interner table;
  return table;
}

Interner& letter_table() {
  static Interner table;
  return table;
}

bool parse_placeholder(std::string_view label, std::uint32_t& index) {
  if (label.size() < 2 || label[0] != '_') return false;
  std::uint64_t value = 0;
  for (char c : label.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    value = value * 10 + static_cast<unsigned>(c - '0');
    if (value >= Name::kPlaceholderBase) return false;
  }
  if (label.size() > 2 && label[1] == '0') return false;
  index = static_cast<std::uint32_t>(value);
  return true;
}

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto head = static_cast<unsigned char>(text[0]);
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '\'') return false;
  }
  return true;
}

Name Name::intern(std::string_view label) {
  if (!is_identifier(label)) {
    throw std::invalid_argument("invalid name label '" + std::string(label) + "'");
  }
  std::uint32_t index = 0;
  if (parse_placeholder(label, index)) return placeholder(index);
  auto id = name_table().intern(label);
  if (id >= kPlaceholderBase) throw std::length_error("name table exhausted");
  return Name(id);
}

std::string Name::label() const {
  if (is_placeholder()) return "_" + std::to_string(placeholder_index());
  return name_table().label(id_);
}

Letter Letter::intern(std::string_view label) {
  if (!is_identifier(label)) {
    throw std::invalid_argument("invalid letter label '" + std::string(label) + "'");
  }
  return Letter(letter_table().intern(label));
}

std::string Letter::label() const { return letter_table().label(id_); }

Permutation Permutation::transposition(Name a, Name b) {
  Permutation p;
  if (a != b) {
    p.map_[a] = b;
    p.map_[b] = a;
  }
  return p;
}

Permutation Permutation::from_pairs(
    const std::vector<std::pair<Name, Name>>& pairs) {
  Permutation p;
  NameSet image;
  for (const auto& [from, to] : pairs) {
    if (!p.map_.emplace(from, to).second) {
      throw std::invalid_argument("permutation maps " + from.label() + " twice");
    }
    if (!image.insert(to).second) {
      throw std::invalid_argument("permutation is not injective at " + to.label());
    }
  }
  for (const auto& [from, to] : p.map_) {
    if (!image.count(from)) {
      throw std::invalid_argument("permutation does not permute its domain");
    }
  }
  std::erase_if(p.map_, [](const auto& kv) { return kv.first == kv.second; });
  return p;
}

Name Permutation::operator()(Name n) const {
  auto it = map_.find(n);
  return it == map_.end() ? n : it->second;
}

Permutation Permutation::after(const Permutation& inner) const {
  NameSet domain = support();
  for (Name n : inner.support()) domain.insert(n);
  Permutation out;
  for (Name n : domain) {
    Name image = (*this)(inner(n));
    if (image != n) out.map_[n] = image;
  }
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  for (const auto& [from, to] : map_) out.map_[to] = from;
  return out;
}

NameSet Permutation::support() const {
  NameSet s;
  for (const auto& kv : map_) s.insert(kv.first);
  return s;
}

NameSet permute(const Permutation& pi, const NameSet& names) {
  NameSet out;
  for (Name n : names) out.insert(pi(n));
  return out;
}

}  // namespace nomlang
