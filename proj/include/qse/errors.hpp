// Copyright 2026 The QSE Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qse {

/// Base class for every error raised by the workbench.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// linalg
class NotHermitian : public Error {
   public:
    using Error::Error;
};
class NoConvergence : public Error {
   public:
    using Error::Error;
};
class NegativeEigenvalue : public Error {
   public:
    using Error::Error;
};
class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

// spin model / environment
class InvalidDensityMatrix : public Error {
   public:
    using Error::Error;
};
/// The branch probability of a projective measurement fell to or below the
/// normalization floor.
class NormalizationUnderflow : public Error {
   public:
    NormalizationUnderflow(const std::string &what, double probability)
        : Error(what), probability_(probability) {
    }
    double probability() const {
        return probability_;
    }

   private:
    double probability_;
};
class EpisodeFinished : public Error {
   public:
    using Error::Error;
};

// function approximator
class ShapeMismatch : public Error {
   public:
    using Error::Error;
};
class NonFiniteLoss : public Error {
   public:
    using Error::Error;
};
class IoError : public Error {
   public:
    using Error::Error;
};
class SchemaMismatch : public Error {
   public:
    using Error::Error;
};

// sequence lab / harness
class BudgetExceeded : public Error {
   public:
    using Error::Error;
};
class ConfigError : public Error {
   public:
    using Error::Error;
};
/// Parse failure with the zero-based position (token index or line number,
/// depending on the input) where it occurred.
class ParseError : public Error {
   public:
    ParseError(const std::string &what, std::size_t position) : Error(what), position_(position) {
    }
    std::size_t position() const {
        return position_;
    }

   private:
    std::size_t position_;
};

}  // namespace qse
