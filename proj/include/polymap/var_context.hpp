#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polymap/errors.hpp"

namespace polymap {

/// Ordered list of distinct variable names. Index order is declaration order.
/// Cheap to copy; copies share storage.
class VarContext {
 public:
  VarContext() : names_(std::make_shared<const std::vector<std::string>>()) {}

  explicit VarContext(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (!is_valid_name(names[i]))
        throw std::invalid_argument("invalid variable name '" + names[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names[j] == names[i])
          throw std::invalid_argument("duplicate variable name '" + names[i] + "'");
    }
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  }

  VarContext(std::initializer_list<std::string> names)
      : VarContext(std::vector<std::string>(names)) {}

  static bool is_valid_name(std::string_view name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
      return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
  }

  std::size_t size() const noexcept { return names_->size(); }
  bool empty() const noexcept { return names_->empty(); }
  const std::string& name(std::size_t i) const { return names_->at(i); }
  std::span<const std::string> names() const noexcept { return *names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names_->begin(), names_->end(), name);
    if (it == names_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_->begin());
  }

  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// A name derived from `hint` that is not already taken in this context.
  std::string fresh_name(std::string_view hint) const {
    std::string candidate(hint);
    while (contains(candidate)) candidate += '_';
    return candidate;
  }

  /// This context followed by fresh variables derived from `hints`.
  VarContext extended(std::span<const std::string> hints) const {
    std::vector<std::string> all(names_->begin(), names_->end());
    for (const auto& h : hints) {
      std::string candidate = h;
      while (std::find(all.begin(), all.end(), candidate) != all.end()) candidate += '_';
      all.push_back(candidate);
    }
    return VarContext(std::move(all));
  }

  VarContext extended(std::string hint) const {
    std::string hints[] = {std::move(hint)};
    return extended(std::span<const std::string>(hints));
  }

  friend bool operator==(const VarContext& a, const VarContext& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

inline void require_same_context(const VarContext& a, const VarContext& b,
                                 std::string_view operation) {
  if (!(a == b))
    throw ContextMismatch(std::string(operation) + ": operands use different variable contexts");
}

}  // namespace polymap
