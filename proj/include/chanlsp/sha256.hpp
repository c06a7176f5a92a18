// SPDX-License-Identifier: Apache-2.0
//
// chanlsp — urban radio channel measurement-to-model toolkit
// Copyright (C) 2026 chanlsp contributors
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

#ifndef chanlsp_sha256_H
#define chanlsp_sha256_H

#include <string>
#include <string_view>

namespace chanlsp
{

// SHA-256 (FIPS 180-4) of a byte string, returned as lowercase hex.
// Used for artifact content digests and config hashes in run reports.
std::string sha256_hex(std::string_view data);

} // namespace chanlsp

#endif
