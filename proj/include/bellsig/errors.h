// Copyright 2026 The bellsig Authors
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

#ifndef BELLSIG_ERRORS_H
#define BELLSIG_ERRORS_H

#include <stdexcept>
#include <string>

namespace bellsig {

/// Malformed or inconsistent input data (files, configs, plans).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that is well formed but statistically degenerate, e.g. a setting
/// with zero trials or a variance that is exactly zero.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bellsig

#endif
