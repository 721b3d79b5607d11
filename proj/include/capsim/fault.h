// Copyright 2026 The capsim Authors
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

#ifndef CAPSIM_FAULT_H_
#define CAPSIM_FAULT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace capsim {

// Architectural fault raised by a capability check or an illegal
// manipulation of a sealed capability.
enum class FaultKind : uint8_t {
  kTag,
  kSeal,
  kPermission,
  kBounds,
  kAlignment,
};

// "TagFault", "SealFault", ...
std::string_view fault_kind_name(FaultKind kind);
std::optional<FaultKind> parse_fault_kind(std::string_view name);

struct Fault {
  FaultKind kind;
  std::string detail;

  bool operator==(const Fault &) const = default;
};

std::ostream &operator<<(std::ostream &os, const Fault &fault);

// Value-or-error holder. The simulator reports hardware faults as values so
// scenario drivers can observe them; only precondition violations throw.
template <typename T, typename E>
class [[nodiscard]] Expected {
 public:
  Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
  Expected(E error) : storage_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return storage_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T &value() const & {
    check_value();
    return std::get<0>(storage_);
  }
  T &value() & {
    check_value();
    return std::get<0>(storage_);
  }
  T &&value() && {
    check_value();
    return std::get<0>(std::move(storage_));
  }

  const E &error() const & {
    check_error();
    return std::get<1>(storage_);
  }
  E &&error() && {
    check_error();
    return std::get<1>(std::move(storage_));
  }

  const T &operator*() const & { return value(); }
  const T *operator->() const { return &value(); }

 private:
  void check_value() const {
    if (!ok()) throw std::logic_error("Expected: value() on error state");
  }
  void check_error() const {
    if (ok()) throw std::logic_error("Expected: error() on value state");
  }

  std::variant<T, E> storage_;
};

template <typename E>
class [[nodiscard]] Expected<void, E> {
 public:
  Expected() = default;
  Expected(E error) : error_(std::move(error)) {}

  bool ok() const { return !error_.has_value(); }
  explicit operator bool() const { return ok(); }

  const E &error() const & {
    if (ok()) throw std::logic_error("Expected: error() on value state");
    return *error_;
  }
  E &&error() && {
    if (ok()) throw std::logic_error("Expected: error() on value state");
    return *std::move(error_);
  }

 private:
  std::optional<E> error_;
};

template <typename T>
using FaultOr = Expected<T, Fault>;
using Status = Expected<void, Fault>;

inline Status ok_status() { return Status(); }

}  // namespace capsim

#define CAPSIM_CONCAT_INNER_(a, b) a##b
#define CAPSIM_CONCAT_(a, b) CAPSIM_CONCAT_INNER_(a, b)

#define CAPSIM_RETURN_IF_ERROR(expr)                       \
  do {                                                     \
    auto capsim_status_ = (expr);                          \
    if (!capsim_status_.ok()) {                            \
      return std::move(capsim_status_).error();            \
    }                                                      \
  } while (false)

#define CAPSIM_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                                  \
  if (!tmp.ok()) return std::move(tmp).error();       \
  lhs = std::move(tmp).value()

#define CAPSIM_ASSIGN_OR_RETURN(lhs, expr) \
  CAPSIM_ASSIGN_OR_RETURN_IMPL_(CAPSIM_CONCAT_(capsim_result_, __LINE__), lhs, expr)

#endif  // CAPSIM_FAULT_H_
