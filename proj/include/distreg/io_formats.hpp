// Copyright 2026 The distreg Authors. All Rights Reserved.
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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "distreg/moments.hpp"
#include "distreg/regression.hpp"

namespace distreg {

inline constexpr int kFormatVersion = 1;

// printf-style %.17g: enough digits to round-trip any double.
std::string format_double(double value);
// Throws InputError unless the whole of text is a finite number.
double parse_double(std::string_view text);

// Dataset files are JSON lines. The first line is a header object
//   {"meta": {"format_version": 1, ...}}
// whose remaining fields are free-form (the generator writes its config
// there). Every following non-blank line is one bag:
//   {"xs": [0.1, 0.2], "y": 1.0}
struct DatasetFile {
  BagDataset dataset;
  nlohmann::json meta = nlohmann::json::object();
};

void write_dataset(std::ostream& out, const BagDataset& dataset,
                   const nlohmann::json& meta = nlohmann::json::object());
// Throws FormatError with the offending line number, InputError when there
// are no records.
DatasetFile read_dataset(std::istream& in);

void save_dataset(const BagDataset& dataset, const std::filesystem::path& path,
                  const nlohmann::json& meta = nlohmann::json::object());
BagDataset load_dataset(const std::filesystem::path& path);
DatasetFile load_dataset_file(const std::filesystem::path& path);

// Model files are line-oriented "key: value" text:
//
//   format_version: 1
//   family: chebyshev
//   degree_count: 2
//   domain: -1.1 1.1
//   mode: size_normalized
//   mean_bag_size: 100
//   label_range: -1 1
//   G:
//   <d_x rows of d_x numbers>
//   yG:
//   <d_x rows of d_x numbers>
//   Y: <d_x numbers>
//   end
//
// Lines starting with '#' are comments. The trailing "end" marks a complete
// file; anything short of it is rejected.
void write_model(std::ostream& out, const TrainedModel& model);
TrainedModel read_model(std::istream& in);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace distreg
