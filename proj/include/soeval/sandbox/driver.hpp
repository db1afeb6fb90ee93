// Copyright 2026 The soeval Authors
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

#include <string_view>

namespace soeval::sandbox {

/// Python source run with `-I -c` as the parent of every sandboxed program.
///
/// argv: <mode> <program path>, mode is "compile" or "run". The driver compiles the program
/// first and reports on fd 3 one line "SOEVAL-RESULT <status> [detail]":
///   syntax <Type: message>   compile phase rejected the source (nothing executed)
///   ok                       compile-only check passed, or the program ran to completion
///   exception <TypeName>     the program raised and did not handle it
/// In run mode, file writes outside the working directory, process spawning, destructive os
/// calls and sockets are disabled before the program starts.
std::string_view driver_source();

inline constexpr std::string_view kResultPrefix = "SOEVAL-RESULT ";

}  // namespace soeval::sandbox
