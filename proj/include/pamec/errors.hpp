// SPDX-License-Identifier: Apache-2.0
//
// pamec - delay minimization for pinching-antenna NOMA edge offloading
// Copyright (C) 2026 The pamec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>

namespace pamec {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid physical parameters, user profiles or decoding orders.
struct ModelError : Error {
  using Error::Error;
};

/// A positive offload fraction was paired with a zero rate.
struct ZeroRateOffload : Error {
  using Error::Error;
};

/// Simplex hit its iteration cap without terminating.
struct LpNumericalFailure : Error {
  using Error::Error;
};

/// Element-wise position search found an empty interval.
struct LayoutError : Error {
  using Error::Error;
};

struct NoFeasibleDelay : Error {
  using Error::Error;
};

struct OrderEnumerationTooLarge : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace pamec
