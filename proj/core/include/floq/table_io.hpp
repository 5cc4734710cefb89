// Copyright 2026 The floquet-lindblad Authors
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

#include <optional>
#include <string>
#include <vector>

#include "floq/sweep.hpp"

namespace floq {

enum class TableFormat { kCsv, kJson, kPgm };

std::optional<TableFormat> parse_table_format(const std::string& name);

/// Column names in emission order; the optional quantities follow `outputs`.
std::vector<std::string> table_columns(const std::vector<OutputColumn>& outputs = all_output_columns());

/// Header row plus one line per row, LF line endings, floats as %.12g.
std::string to_csv(const std::vector<SweepResultRow>& rows,
                   const std::vector<OutputColumn>& outputs = all_output_columns());

/// Columns absent from the header keep their default values. Throws IoError.
std::vector<SweepResultRow> parse_csv(const std::string& text);

std::string to_json(const std::vector<SweepResultRow>& rows,
                    const std::vector<OutputColumn>& outputs = all_output_columns());

/// Binary P5 graymap of one column over the (omega, E) grid: omega along x,
/// E increasing upward, white at the column minimum. Non-finite cells are
/// black. Throws IoError if the rows are not a complete row-major grid.
std::string to_pgm(const std::vector<SweepResultRow>& rows, OutputColumn column);

/// Writes to `path`, or to stdout for "-". Throws IoError.
void emit(const std::vector<SweepResultRow>& rows, TableFormat format, const std::string& path,
          const std::vector<OutputColumn>& outputs = all_output_columns(),
          OutputColumn pgm_column = OutputColumn::kMuMin);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

/// %.12g
std::string format_real(double value);

}  // namespace floq
