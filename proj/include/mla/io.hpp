#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mla/tensor.hpp"

namespace mla::io {

// Tensor JSON: {"row_dims": [...], "col_dims": [...], "data": [[re, im], ...]}
// with data in row-major order over (row modes, col modes).
TensorXcd read_tensor(std::istream& in);
TensorXcd read_tensor(const std::filesystem::path& path);
TensorXcd parse_tensor(const std::string& text);

void write_tensor(std::ostream& out, const TensorXcd& t);
void write_tensor(const std::filesystem::path& path, const TensorXcd& t);
std::string dump_tensor(const TensorXcd& t);

// Residual history CSV: header "iter,residual", 17 significant digits.
void write_residuals(std::ostream& out, const std::vector<double>& history);
void write_residuals(const std::filesystem::path& path, const std::vector<double>& history);
std::vector<double> read_residuals(std::istream& in);

}  // namespace mla::io
