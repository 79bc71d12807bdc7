/*
 * Copyright 2026 The RLBL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RLBL_ERRORS_H_
#define RLBL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rlbl {

// Coarse failure class; the CLI maps each class to its own exit code.
enum class ErrorClass { kConfig, kIo, kNumeric, kData, kCheck };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass error_class, const std::string& what)
      : std::runtime_error(what), error_class_(error_class) {}

  ErrorClass error_class() const { return error_class_; }

 private:
  ErrorClass error_class_;
};

#define RLBL_DEFINE_ERROR(Name, Class)                                 \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what)                             \
        : Error(ErrorClass::Class, std::string(#Name ": ") + what) {}  \
  }

RLBL_DEFINE_ERROR(DimError, kNumeric);
RLBL_DEFINE_ERROR(NumericError, kNumeric);
RLBL_DEFINE_ERROR(PositionError, kData);
RLBL_DEFINE_ERROR(IndexError, kData);
RLBL_DEFINE_ERROR(TimeError, kData);
RLBL_DEFINE_ERROR(SamplingError, kData);
RLBL_DEFINE_ERROR(EmptyCorpus, kData);
RLBL_DEFINE_ERROR(EmptyEval, kData);
RLBL_DEFINE_ERROR(UserError, kData);
RLBL_DEFINE_ERROR(FormatError, kIo);
RLBL_DEFINE_ERROR(IoError, kIo);
RLBL_DEFINE_ERROR(SnapshotError, kIo);
RLBL_DEFINE_ERROR(ConfigError, kConfig);

#undef RLBL_DEFINE_ERROR

}  // namespace rlbl

#endif  // RLBL_ERRORS_H_
