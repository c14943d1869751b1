#include "algp/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "algp/errors.hpp"

namespace algp {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json moments_to_json(const MomentSet& m) {
  return nlohmann::ordered_json{{"mean", m.mean},
                                {"std", m.std},
                                {"skewness", m.skewness},
                                {"kurtosis", m.kurtosis},
                                {"range_warning", m.range_warning}};
}

namespace {

nlohmann::ordered_json config_to_json(const AlConfig& c) {
  return nlohmann::ordered_json{
      {"ymin", c.ymin},       {"ymax", c.ymax},
      {"eps_bar", c.eps_bar}, {"kbar", c.kbar},
      {"pool_size", c.pool_size}, {"init_size", c.init_size},
      {"mode", to_string(c.mode)}, {"tail", to_string(c.tail)},
      {"seed", c.seed},       {"budget", c.budget},
      {"threshold_count", c.threshold_count}};
}

}  // namespace

nlohmann::ordered_json report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "al-gp-run/1";
  j["benchmark"] = report.benchmark;
  j["config"] = config_to_json(report.config);
  j["termination"] = to_string(report.termination);
  j["n_model_calls"] = report.n_model_calls;
  j["band_fallbacks"] = report.band_fallbacks;
  j["final_w"] = report.final_w;
  j["final_moments"] = moments_to_json(report.final_moments);
  j["final_moments_plus"] = moments_to_json(report.final_moments_plus);
  j["final_moments_minus"] = moments_to_json(report.final_moments_minus);
  nlohmann::ordered_json its = nlohmann::ordered_json::array();
  for (const IterationRecord& r : report.iterations) {
    nlohmann::ordered_json ji;
    ji["iteration"] = r.iteration;
    ji["w_global"] = r.w_global;
    if (std::isnan(r.y_star)) {
      ji["y_star"] = nullptr;
    } else {
      ji["y_star"] = r.y_star;
    }
    ji["x_star"] = std::vector<double>(r.x_star.data(),
                                       r.x_star.data() + r.x_star.size());
    ji["model_value"] = r.model_value;
    ji["moments_plus"] = moments_to_json(r.moments_plus);
    ji["moments_mid"] = moments_to_json(r.moments_mid);
    ji["moments_minus"] = moments_to_json(r.moments_minus);
    ji["band_fallback"] = r.band_fallback;
    its.push_back(std::move(ji));
  }
  j["iterations"] = std::move(its);
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

void write_cdf_csv(const std::string& path, const ThreeFoldCdf& cdf,
                   double ymin, double ymax, int nodes) {
  if (nodes < 2) throw ConfigError("write_cdf_csv: need at least 2 nodes");
  std::ostringstream out;
  out << "y,F_minus,F_mid,F_plus\n";
  for (int i = 0; i < nodes; ++i) {
    const double y = ymin + (ymax - ymin) * double(i) / double(nodes - 1);
    out << format_double(y) << ',' << format_double(cdf.f_minus(y)) << ','
        << format_double(cdf.f_mid(y)) << ',' << format_double(cdf.f_plus(y))
        << '\n';
  }
  write_text_file(path, out.str());
}

void write_reference_csv(const std::string& path, const std::vector<double>& ys,
                         const std::vector<double>& fs) {
  if (ys.size() != fs.size() || ys.size() < 2) {
    throw ReferenceUnavailable("reference table needs matching columns, >= 2 rows");
  }
  std::ostringstream out;
  out << "y,F\n";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    out << format_double(ys[i]) << ',' << format_double(fs[i]) << '\n';
  }
  write_text_file(path, out.str());
}

ReferenceCdf load_reference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReferenceUnavailable("cannot open reference file: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw ReferenceUnavailable("empty reference file: " + path);
  }
  std::vector<double> ys, fs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ReferenceUnavailable("malformed reference row: " + line);
    }
    try {
      ys.push_back(std::stod(line.substr(0, comma)));
      fs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ReferenceUnavailable("malformed reference row: " + line);
    }
  }
  return ReferenceCdf(std::move(ys), std::move(fs));
}

}  // namespace algp
