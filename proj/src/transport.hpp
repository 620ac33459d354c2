// Copyright 2026 The Formalism Authors.
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

#ifndef FORMALISM_SRC_TRANSPORT_HPP_
#define FORMALISM_SRC_TRANSPORT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace formalism::detail {

// Non-empty lines of `text`, with trailing CR removed.
std::vector<std::string> split_lines(std::string_view text);

// POSTs `body` to an http:// URL and returns the response body lines.
// Throws ProtocolError on connection failure, timeout or non-200 status.
std::vector<std::string> run_http_batch(const std::string& url,
                                        const std::string& body,
                                        double timeout_seconds);

}  // namespace formalism::detail

#endif  // FORMALISM_SRC_TRANSPORT_HPP_
