// Copyright 2026 The AeroForge Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aeroforge {

enum class ErrorKind {
  Validation,         // bad config, bad manifest, metric pre-condition
  Io,                 // unreadable / unwritable files, undecodable images
  PlacementExhausted  // rejection sampling ran out of attempts
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

// Hybrid background directory empty or one of its images failed to decode.
class HybridSourceMissing : public IoError {
 public:
  explicit HybridSourceMissing(const std::string& what) : IoError("hybrid background: " + what) {}
};

class PlacementExhausted : public Error {
 public:
  PlacementExhausted(std::string object_class, std::size_t placed_so_far);

  const std::string& object_class() const noexcept { return class_; }
  std::size_t placed_so_far() const noexcept { return placed_; }

 private:
  std::string class_;
  std::size_t placed_;
};

// Raised by dataset generation; carries the failing image so the run can be reproduced.
class ImagePlacementExhausted : public PlacementExhausted {
 public:
  ImagePlacementExhausted(const PlacementExhausted& cause, std::uint64_t image_index,
                          std::uint64_t image_seed);

  std::uint64_t image_index() const noexcept { return index_; }
  std::uint64_t image_seed() const noexcept { return seed_; }
  const std::string& message() const noexcept { return message_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::uint64_t index_;
  std::uint64_t seed_;
  std::string message_;
};

}  // namespace aeroforge
