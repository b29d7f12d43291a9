#include "entbound/json_io.hpp"

#include <fstream>
#include <sstream>

namespace entbound::io {

using linalg::ComplexMatrix;
using linalg::cx;

json density_to_json(const states::DensityMatrix& rho) {
  json j;
  j["dims"] = rho.dims.dims;
  json re = json::array(), im = json::array();
  for (int i = 0; i < rho.mat.rows(); ++i) {
    json re_row = json::array(), im_row = json::array();
    for (int k = 0; k < rho.mat.cols(); ++k) {
      re_row.push_back(rho.mat(i, k).real());
      im_row.push_back(rho.mat(i, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

states::DensityMatrix density_from_json(const json& j) {
  require(j.is_object() && j.contains("dims") && j.contains("re") && j.contains("im"), Err::BadInput,
          "state json: expected fields dims, re, im");
  std::vector<int> dims;
  for (const auto& d : j.at("dims")) {
    require(d.is_number_integer() && d.get<int>() >= 1, Err::BadInput, "state json: dims must be positive integers");
    dims.push_back(d.get<int>());
  }
  linalg::DimProfile profile(dims);
  const int n = profile.total();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(re.is_array() && im.is_array() && static_cast<int>(re.size()) == n && static_cast<int>(im.size()) == n,
          Err::BadInput, "state json: re/im row count does not match dims");
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& re_row = re.at(static_cast<size_t>(i));
    const auto& im_row = im.at(static_cast<size_t>(i));
    require(re_row.is_array() && im_row.is_array() && static_cast<int>(re_row.size()) == n &&
                static_cast<int>(im_row.size()) == n,
            Err::BadInput, "state json: re/im column count does not match dims");
    for (int k = 0; k < n; ++k) {
      require(re_row.at(static_cast<size_t>(k)).is_number() && im_row.at(static_cast<size_t>(k)).is_number(),
              Err::BadInput, "state json: matrix entries must be numbers");
      m(i, k) = cx(re_row.at(static_cast<size_t>(k)).get<double>(), im_row.at(static_cast<size_t>(k)).get<double>());
    }
  }
  return {std::move(m), std::move(profile)};
}

json bound_report_to_json(const bounds::BoundReport& report) {
  json j;
  j["name"] = report.name;
  j["raw"] = report.raw;
  j["clipped"] = report.clipped;
  j["side"] = report.side == bounds::BoundSide::Lower ? "lower" : "upper";
  j["target"] = report.target;
  json ing = json::object();
  for (const auto& [key, value] : report.ingredients) ing[key] = value;
  j["ingredients"] = std::move(ing);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Err::BadInput, "cannot open for writing: " + path);
  out << content;
  require(out.good(), Err::BadInput, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Err::BadInput, "cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace entbound::io
