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

#include <fmt/format.h>

#include "formalism/errors.hpp"
#include "httplib.h"
#include "transport.hpp"

namespace formalism::detail {

std::vector<std::string> run_http_batch(const std::string& url,
                                        const std::string& body,
                                        double timeout_seconds) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme)) {
    throw ProtocolError(fmt::format("unsupported endpoint '{}'", url));
  }
  auto slash = url.find('/', kScheme.size());
  std::string origin = slash == std::string::npos ? url : url.substr(0, slash);
  std::string path = slash == std::string::npos ? "/" : url.substr(slash);

  httplib::Client client(origin);
  auto secs = static_cast<time_t>(timeout_seconds);
  auto usecs = static_cast<time_t>((timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(path, body, "application/x-ndjson");
  if (!res) {
    throw ProtocolError(fmt::format("endpoint {}: {}", url,
                                    httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw ProtocolError(fmt::format("endpoint {} answered HTTP {}", url, res->status));
  }
  return split_lines(res->body);
}

}  // namespace formalism::detail
