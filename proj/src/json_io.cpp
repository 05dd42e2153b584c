#include "steerlab/json_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

using nlohmann::json;

json matrix_part(const Mat& m, bool imaginary) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_parts(const json& re, const json& im, const char* where) {
  if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
    throw ParseError(std::string(where) + ": re/im must be equal-shaped 2d arrays");
  const Eigen::Index rows = static_cast<Eigen::Index>(re.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(re.at(0).size());
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& re_row = re.at(static_cast<std::size_t>(i));
    const json& im_row = im.at(static_cast<std::size_t>(i));
    if (!re_row.is_array() || !im_row.is_array() ||
        static_cast<Eigen::Index>(re_row.size()) != cols ||
        static_cast<Eigen::Index>(im_row.size()) != cols)
      throw ParseError(std::string(where) + ": ragged matrix rows");
    for (Eigen::Index j = 0; j < cols; ++j)
      out(i, j) = Complex(re_row.at(static_cast<std::size_t>(j)).get<double>(),
                          im_row.at(static_cast<std::size_t>(j)).get<double>());
  }
  return out;
}

void reject_unknown_fields(const json& object, const std::set<std::string>& allowed,
                           const char* where) {
  for (const auto& item : object.items())
    if (!allowed.contains(item.key()))
      throw ParseError(std::string(where) + ": unknown field \"" + item.key() + "\"");
}

}  // namespace

std::string assemblage_to_json(const Assemblage& assemblage) {
  const Scenario& s = assemblage.scenario();
  json doc;
  doc["schema"] = "assemblage.v1";
  doc["m"] = s.settings;
  doc["k"] = s.outcomes;
  doc["n"] = s.trusted_dim;
  json sigma = json::array();
  for (int x = 0; x < s.settings; ++x)
    for (int a = 0; a < s.outcomes; ++a) {
      json entry;
      entry["a"] = a + 1;
      entry["x"] = x + 1;
      entry["re"] = matrix_part(assemblage.element(a, x), false);
      entry["im"] = matrix_part(assemblage.element(a, x), true);
      sigma.push_back(std::move(entry));
    }
  doc["sigma"] = std::move(sigma);
  return doc.dump(2);
}

Assemblage assemblage_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("assemblage json: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("assemblage json: top level must be an object");
  reject_unknown_fields(doc, {"schema", "m", "k", "n", "sigma"}, "assemblage json");
  if (doc.contains("schema") && doc["schema"] != "assemblage.v1")
    throw ParseError("assemblage json: unsupported schema " + doc["schema"].dump());
  for (const char* field : {"m", "k", "n", "sigma"})
    if (!doc.contains(field))
      throw ParseError(std::string("assemblage json: missing field \"") + field + "\"");

  Scenario scenario{doc["m"].get<int>(), doc["k"].get<int>(), doc["n"].get<int>()};
  check_scenario(scenario);
  const std::size_t expected =
      static_cast<std::size_t>(scenario.settings) * static_cast<std::size_t>(scenario.outcomes);
  if (!doc["sigma"].is_array() || doc["sigma"].size() != expected)
    throw ParseError("assemblage json: sigma must list every (a, x) exactly once");

  std::vector<Mat> elements(expected);
  std::vector<bool> seen(expected, false);
  for (const json& entry : doc["sigma"]) {
    if (!entry.is_object()) throw ParseError("assemblage json: sigma entries must be objects");
    reject_unknown_fields(entry, {"a", "x", "re", "im"}, "assemblage json sigma entry");
    for (const char* field : {"a", "x", "re", "im"})
      if (!entry.contains(field))
        throw ParseError(std::string("assemblage json: sigma entry missing \"") + field + "\"");
    const int a = entry["a"].get<int>() - 1;
    const int x = entry["x"].get<int>() - 1;
    if (a < 0 || a >= scenario.outcomes || x < 0 || x >= scenario.settings)
      throw ParseError("assemblage json: sigma entry labels out of range");
    const std::size_t idx = static_cast<std::size_t>(x) * scenario.outcomes + a;
    if (seen[idx]) throw ParseError("assemblage json: duplicate sigma entry");
    seen[idx] = true;
    Mat m = matrix_from_parts(entry["re"], entry["im"], "assemblage json sigma entry");
    if (m.rows() != scenario.trusted_dim || m.cols() != scenario.trusted_dim)
      throw ParseError("assemblage json: sigma matrix is not n x n");
    elements[idx] = std::move(m);
  }
  return Assemblage(scenario, std::move(elements));
}

void write_assemblage(const Assemblage& assemblage, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_assemblage: cannot open " + path);
  out << assemblage_to_json(assemblage) << "\n";
  if (!out) throw IoError("write_assemblage: write failed for " + path);
}

Assemblage read_assemblage(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_assemblage: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return assemblage_from_json(text);
}

std::string realization_to_json(const QuantumRealization& realization) {
  json doc;
  doc["schema"] = "realization.v1";
  doc["dA"] = realization.untrusted_dim;
  doc["rho_AB"] = {{"re", matrix_part(realization.rho_ab, false)},
                   {"im", matrix_part(realization.rho_ab, true)}};
  json povms = json::array();
  for (const Povm& povm : realization.povms) {
    json effects = json::array();
    for (const Mat& effect : povm.effects)
      effects.push_back({{"re", matrix_part(effect, false)}, {"im", matrix_part(effect, true)}});
    povms.push_back(std::move(effects));
  }
  doc["povms"] = std::move(povms);
  return doc.dump(2);
}

void write_realization(const QuantumRealization& realization, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_realization: cannot open " + path);
  out << realization_to_json(realization) << "\n";
  if (!out) throw IoError("write_realization: write failed for " + path);
}

}  // namespace steerlab
