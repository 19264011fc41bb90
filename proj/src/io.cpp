#include "greenlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace greenlab {

double round_sig(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return std::strtod(buf, nullptr);
}

nlohmann::json rounded(const nlohmann::json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return std::isnan(v) ? nlohmann::json("nan") : nlohmann::json(v > 0 ? "inf" : "-inf");
    return round_sig(v);
  }
  if (j.is_array()) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& e : j) a.push_back(rounded(e));
    return a;
  }
  if (j.is_object()) {
    nlohmann::json o = nlohmann::json::object();
    for (auto it = j.begin(); it != j.end(); ++it) o[it.key()] = rounded(it.value());
    return o;
  }
  return j;
}

std::string dump_json(const nlohmann::json& j) { return rounded(j).dump(2) + "\n"; }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void write_json(const std::string& path, const nlohmann::json& j) { write_text(path, dump_json(j)); }

void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
  s += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + format_number(r[i]);
    s += "\n";
  }
  write_text(path, s);
}

void write_field_csv(const std::string& path, const Mesh& mesh,
                     const std::vector<std::pair<std::string, const DiscreteField*>>& fields) {
  std::string s = "i,j,k,x,y,z,class";
  for (const auto& f : fields) s += "," + f.first;
  s += "\n";
  for (std::size_t p = 0; p < mesh.size(); ++p) {
    const auto ix = mesh.multi_index(p);
    const Point x = mesh.coord(p);
    s += std::to_string(ix[0]) + "," + std::to_string(ix[1]) + "," + std::to_string(ix[2]);
    for (int k = 0; k < 3; ++k) s += "," + format_number(x[k]);
    s += "," + to_string(mesh.node_class[p]);
    for (const auto& f : fields) s += "," + format_number((*f.second)[p]);
    s += "\n";
  }
  write_text(path, s);
}

void write_coo(const std::string& path, const SparseMatrix& m) {
  std::string s = "row,col,value\n";
  for (long c = 0; c < m.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m, c); it; ++it)
      s += std::to_string(it.row()) + "," + std::to_string(it.col()) + "," + format_number(it.value()) + "\n";
  write_text(path, s);
}

}  // namespace greenlab
