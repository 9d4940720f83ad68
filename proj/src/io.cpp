#include "mla/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mla/error.hpp"

namespace mla::io {

namespace {

using json = nlohmann::json;

Dims read_dims(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw FormatError(std::string("tensor json: missing array \"") + key + "\"");
  Dims dims;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw FormatError(std::string("tensor json: \"") + key + "\" must hold integers");
    const auto d = v.get<std::int64_t>();
    if (d < 1) throw FormatError(std::string("tensor json: \"") + key + "\" entries must be >= 1");
    dims.push_back(static_cast<Index>(d));
  }
  return dims;
}

double read_number(const json& v) {
  if (!v.is_number()) throw FormatError("tensor json: data entries must be [re, im] number pairs");
  return v.get<double>();
}

TensorXcd from_json(const json& j) {
  if (!j.is_object()) throw FormatError("tensor json: top level must be an object");
  Shape shape;
  try {
    shape = Shape(read_dims(j, "row_dims"), read_dims(j, "col_dims"));
  } catch (const ShapeMismatch& e) {
    throw FormatError(std::string("tensor json: ") + e.what());
  }
  if (!j.contains("data") || !j["data"].is_array()) throw FormatError("tensor json: missing array \"data\"");
  const auto& data = j["data"];
  if (static_cast<Index>(data.size()) != shape.size())
    throw FormatError("tensor json: data has " + std::to_string(data.size()) + " entries, shape " +
                      shape.to_string() + " needs " + std::to_string(shape.size()));
  std::vector<std::complex<double>> values;
  values.reserve(data.size());
  for (const auto& pair : data) {
    if (!pair.is_array() || pair.size() != 2) throw FormatError("tensor json: data entries must be [re, im] pairs");
    values.emplace_back(read_number(pair[0]), read_number(pair[1]));
  }
  return TensorXcd(shape, std::move(values));
}

json to_json(const TensorXcd& t) {
  json data = json::array();
  for (const auto& v : t.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw FormatError("tensor json: cannot encode non-finite entries");
    data.push_back({v.real(), v.imag()});
  }
  return {{"row_dims", t.row_dims()}, {"col_dims", t.col_dims()}, {"data", std::move(data)}};
}

}  // namespace

TensorXcd read_tensor(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("tensor json: ") + e.what());
  }
  return from_json(j);
}

TensorXcd read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_tensor(in);
}

TensorXcd parse_tensor(const std::string& text) {
  std::istringstream in(text);
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const TensorXcd& t) {
  out << to_json(t).dump() << '\n';
}

void write_tensor(const std::filesystem::path& path, const TensorXcd& t) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_tensor(out, t);
}

std::string dump_tensor(const TensorXcd& t) {
  return to_json(t).dump();
}

void write_residuals(std::ostream& out, const std::vector<double>& history) {
  out << "iter,residual\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < history.size(); ++k) out << k << ',' << history[k] << '\n';
}

void write_residuals(const std::filesystem::path& path, const std::vector<double>& history) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_residuals(out, history);
}

std::vector<double> read_residuals(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iter,residual") throw FormatError("residual csv: bad header");
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw FormatError("residual csv: missing comma");
    try {
      if (std::stoul(line.substr(0, comma)) != out.size()) throw FormatError("residual csv: iterations out of order");
      out.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw FormatError("residual csv: bad row \"" + line + "\"");
    }
  }
  return out;
}

}  // namespace mla::io
