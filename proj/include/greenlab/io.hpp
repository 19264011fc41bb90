#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "greenlab/domain.hpp"
#include "greenlab/operator.hpp"

namespace greenlab {

// v rounded to `digits` significant digits
double round_sig(double v, int digits = 12);
// copy of j with every floating value rounded to 12 significant digits
nlohmann::json rounded(const nlohmann::json& j);
std::string dump_json(const nlohmann::json& j);

std::string format_number(double v);

void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& j);
void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
// one row per node: i, j, k, x, y, z, class, then the named fields
void write_field_csv(const std::string& path, const Mesh& mesh,
                     const std::vector<std::pair<std::string, const DiscreteField*>>& fields);
// row, col, value text, one entry per line
void write_coo(const std::string& path, const SparseMatrix& m);

}  // namespace greenlab
