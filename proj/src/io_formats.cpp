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

#include "distreg/io_formats.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "distreg/errors.hpp"

namespace distreg {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw InputError("not a finite number: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_for_reading(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "' for reading");
  return in;
}

void strip_carriage_return(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

Bag parse_bag(const json& record, std::size_t line_no) {
  if (!record.is_object()) {
    throw FormatError("record is not a JSON object", line_no);
  }
  const auto xs = record.find("xs");
  if (xs == record.end() || !xs->is_array()) {
    throw FormatError("record has no \"xs\" array", line_no);
  }
  const auto y = record.find("y");
  if (y == record.end() || !y->is_number()) {
    throw FormatError("record has no numeric \"y\"", line_no);
  }
  Bag bag;
  bag.label = y->get<double>();
  bag.observations.reserve(xs->size());
  for (const json& x : *xs) {
    if (!x.is_number()) {
      throw FormatError("\"xs\" holds a non-numeric entry", line_no);
    }
    bag.observations.push_back(x.get<double>());
  }
  try {
    bag.validate();
  } catch (const InputError& e) {
    throw FormatError(e.what(), line_no);
  }
  return bag;
}

// Reads model file lines while tracking line numbers and skipping comments.
class ModelReader {
 public:
  explicit ModelReader(std::istream& in) : in_(in) {}

  std::size_t line_no() const { return line_no_; }

  std::string next_line() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      strip_carriage_return(line);
      if (is_blank(line) || line.front() == '#') continue;
      return line;
    }
    throw FormatError("unexpected end of model file", line_no_ + 1);
  }

  // "key: rest" -> rest, after checking the key.
  std::string field(std::string_view key) {
    const std::string line = next_line();
    const auto colon = line.find(':');
    if (colon == std::string::npos || line.substr(0, colon) != key) {
      throw FormatError("expected '" + std::string(key) + ":'", line_no_);
    }
    return line.substr(colon + 1);
  }

  std::vector<double> numbers(const std::string& text, std::size_t count) {
    std::istringstream tokens(text);
    std::vector<double> values;
    std::string token;
    while (tokens >> token) {
      try {
        values.push_back(parse_double(token));
      } catch (const InputError& e) {
        throw FormatError(e.what(), line_no_);
      }
    }
    if (values.size() != count) {
      throw FormatError("expected " + std::to_string(count) + " numbers, got " +
                            std::to_string(values.size()),
                        line_no_);
    }
    return values;
  }

  std::string word(std::string_view key) {
    std::istringstream tokens(field(key));
    std::string value, extra;
    if (!(tokens >> value) || (tokens >> extra)) {
      throw FormatError("expected a single value for '" + std::string(key) + "'",
                        line_no_);
    }
    return value;
  }

  SymMatrix matrix(std::string_view key, std::size_t n) {
    const std::string rest = field(key);
    if (!is_blank(rest)) {
      throw FormatError("matrix rows must start on the next line", line_no_);
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(numbers(next_line(), n));
    try {
      return SymMatrix::from_rows(rows);
    } catch (const InputError& e) {
      throw FormatError(std::string(key) + ": " + e.what(), line_no_);
    }
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(values[i]);
  }
  out << '\n';
}

}  // namespace

void write_dataset(std::ostream& out, const BagDataset& dataset,
                   const json& meta) {
  json header_meta = meta.is_object() ? meta : json::object();
  header_meta["format_version"] = kFormatVersion;
  json header = json::object();
  header["meta"] = std::move(header_meta);
  out << header.dump() << '\n';
  for (const Bag& bag : dataset.bags) {
    json record = json::object();
    record["xs"] = bag.observations;
    record["y"] = bag.label;
    out << record.dump() << '\n';
  }
}

DatasetFile read_dataset(std::istream& in) {
  DatasetFile file;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    strip_carriage_return(line);
    if (is_blank(line)) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (first && record.is_object() && record.contains("meta")) {
      first = false;
      const json& meta = record["meta"];
      if (!meta.is_object()) {
        throw FormatError("\"meta\" must be an object", line_no);
      }
      const auto version = meta.find("format_version");
      if (version != meta.end() &&
          (!version->is_number_integer() || version->get<int>() != kFormatVersion)) {
        throw FormatError("unsupported dataset format_version " + version->dump(),
                          line_no);
      }
      file.meta = meta;
      continue;
    }
    first = false;
    file.dataset.bags.push_back(parse_bag(record, line_no));
  }
  if (file.dataset.bags.empty()) {
    throw InputError("dataset file has no records");
  }
  return file;
}

void save_dataset(const BagDataset& dataset, const std::filesystem::path& path,
                  const json& meta) {
  std::ofstream out = open_for_writing(path);
  write_dataset(out, dataset, meta);
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

DatasetFile load_dataset_file(const std::filesystem::path& path) {
  std::ifstream in = open_for_reading(path);
  return read_dataset(in);
}

BagDataset load_dataset(const std::filesystem::path& path) {
  return load_dataset_file(path).dataset;
}

void write_model(std::ostream& out, const TrainedModel& model) {
  const std::size_t n = model.basis().degree_count();
  out << "# distreg trained model\n";
  out << "format_version: " << kFormatVersion << '\n';
  out << "family: " << to_string(model.basis().family()) << '\n';
  out << "degree_count: " << n << '\n';
  out << "domain: " << format_double(model.basis().domain().lo) << ' '
      << format_double(model.basis().domain().hi) << '\n';
  out << "mode: " << to_string(model.mode()) << '\n';
  out << "mean_bag_size: " << format_double(model.mean_bag_size()) << '\n';
  out << "label_range: " << format_double(model.label_range().lo) << ' '
      << format_double(model.label_range().hi) << '\n';
  const auto write_matrix = [&](std::string_view key, const SymMatrix& m) {
    out << key << ":\n";
    for (const auto& row : m.to_rows()) write_row(out, row);
  };
  write_matrix("G", model.gram());
  write_matrix("yG", model.label_gram());
  out << "Y: ";
  write_row(out, model.label_moments());
  out << "end\n";
}

TrainedModel read_model(std::istream& in) {
  ModelReader reader(in);

  const std::string version = reader.word("format_version");
  if (version != std::to_string(kFormatVersion)) {
    throw FormatError("unsupported model format_version " + version,
                      reader.line_no());
  }

  std::optional<BasisFamily> family;
  try {
    family = parse_basis_family(reader.word("family"));
  } catch (const InputError& e) {
    throw FormatError(e.what(), reader.line_no());
  }

  const std::string count_text = reader.word("degree_count");
  std::size_t n = 0;
  const auto res =
      std::from_chars(count_text.data(), count_text.data() + count_text.size(), n);
  if (res.ec != std::errc() || res.ptr != count_text.data() + count_text.size() ||
      n == 0) {
    throw FormatError("degree_count must be a positive integer", reader.line_no());
  }

  const std::vector<double> domain = reader.numbers(reader.field("domain"), 2);

  std::optional<Normalization> mode;
  try {
    mode = parse_normalization(reader.word("mode"));
  } catch (const InputError& e) {
    throw FormatError(e.what(), reader.line_no());
  }

  const double mean_bag_size = reader.numbers(reader.field("mean_bag_size"), 1)[0];
  const std::vector<double> labels = reader.numbers(reader.field("label_range"), 2);
  SymMatrix gram = reader.matrix("G", n);
  SymMatrix label_gram = reader.matrix("yG", n);
  std::vector<double> label_moments = reader.numbers(reader.field("Y"), n);
  if (reader.next_line() != "end") {
    throw FormatError("expected 'end'", reader.line_no());
  }

  try {
    return TrainedModel(BasisSpec(*family, n, {domain[0], domain[1]}), *mode,
                        std::move(gram), std::move(label_gram),
                        std::move(label_moments), mean_bag_size,
                        {labels[0], labels[1]});
  } catch (const InputError& e) {
    throw FormatError(std::string("inconsistent model: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  write_model(out, model);
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in = open_for_reading(path);
  return read_model(in);
}

}  // namespace distreg
