#pragma once

#include <stop_token>

#include "polymap/errors.hpp"

namespace polymap {

namespace detail {
inline thread_local const std::stop_token* active_stop_token = nullptr;
}

/// Installs a stop token for the current thread. Gröbner computations poll it
/// and throw Cancelled once a stop was requested. Scopes nest.
class CancelScope {
 public:
  explicit CancelScope(std::stop_token token)
      : token_(std::move(token)), previous_(detail::active_stop_token) {
    detail::active_stop_token = &token_;
  }
  ~CancelScope() { detail::active_stop_token = previous_; }

  CancelScope(const CancelScope&) = delete;
  CancelScope& operator=(const CancelScope&) = delete;

 private:
  std::stop_token token_;
  const std::stop_token* previous_;
};

inline std::stop_token current_stop_token() {
  return detail::active_stop_token ? *detail::active_stop_token : std::stop_token{};
}

inline void throw_if_cancelled() {
  if (detail::active_stop_token && detail::active_stop_token->stop_requested())
    throw Cancelled();
}

}  // namespace polymap
