// Copyright 2026 The shadowkit Authors.
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "shadowkit/cli.hpp"
#include "shadowkit/error.hpp"

namespace shadowkit::cli {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
  rows_.emplace_back();
  return *this;
}

CsvTable& CsvTable::add(const std::string& cell) {
  if (rows_.empty()) fail(ErrorCode::InvalidArgument, "call row() before adding cells");
  if (rows_.back().size() >= header_.size()) fail(ErrorCode::InvalidArgument, "row has more cells than the header");
  const bool quote = cell.find_first_of(",\"\n") != std::string::npos;
  if (!quote) {
    rows_.back().push_back(cell);
    return *this;
  }
  std::string escaped = "\"";
  for (char c : cell) {
    if (c == '"') escaped += '"';
    escaped += c;
  }
  rows_.back().push_back(escaped + "\"");
  return *this;
}

CsvTable& CsvTable::add(double value) { return add(format_double(value)); }

CsvTable& CsvTable::add_int(long long value) { return add(std::to_string(value)); }

std::string CsvTable::str() const {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.size() != header_.size()) fail(ErrorCode::InvalidArgument, "incomplete CSV row");
    line(r);
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  const std::string text = str();
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::IoError, "short write to '" + path + "'");
}

void write_sidecar(const std::string& path, std::string_view command, const Json& config, const Json& summary) {
  const Json doc = {{"command", std::string(command)}, {"config", config}, {"summary", summary}};
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) fail(ErrorCode::IoError, "short write to '" + path + "'");
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec || !std::filesystem::is_directory(path)) {
    fail(ErrorCode::IoError, "cannot create directory '" + path + "': " + ec.message());
  }
}

}  // namespace shadowkit::cli
