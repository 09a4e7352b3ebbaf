// Copyright 2026 The qfdiv Authors.
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

#ifndef QFDIV_IO_HPP
#define QFDIV_IO_HPP

#include <filesystem>

#include <nlohmann/json.hpp>

#include "qfdiv/channels.hpp"

namespace qfdiv::io {

using json = nlohmann::json;

// Matrix format: {"dim": n, "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
/// Throws ParseError on malformed input, including entries.size() != dim^2.
ComplexMatrix matrix_from_json(const json& j);
HermitianOperator hermitian_from_json(const json& j);

// Channel format: {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}; Kraus
// operators are dim_out x dim_in, stored as {"rows", "cols", "entries"} when
// rectangular.
json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const json& j);

/// Finite values as numbers, +inf as the string "inf".
json extended_to_json(ExtendedReal v);

json reverse_test_to_json(const ReverseTest& rt);
json equality_report_to_json(const EqualityReport& rep);

json read_json_file(const std::filesystem::path& path);
HermitianOperator read_operator(const std::filesystem::path& path);
KrausChannel read_channel(const std::filesystem::path& path);

}  // namespace qfdiv::io

#endif  // QFDIV_IO_HPP
