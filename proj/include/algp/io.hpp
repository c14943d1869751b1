#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "algp/distribution.hpp"
#include "algp/learning.hpp"

namespace algp {

// Shortest representation that round-trips a double (up to 17 significant digits).
std::string format_double(double v);

nlohmann::ordered_json moments_to_json(const MomentSet& m);
nlohmann::ordered_json report_to_json(const RunReport& report);

void write_text_file(const std::string& path, const std::string& content);

// Three-fold CDF table sampled on a uniform grid: y,F_minus,F_mid,F_plus.
void write_cdf_csv(const std::string& path, const ThreeFoldCdf& cdf,
                   double ymin, double ymax, int nodes = 1001);

// Reference CDF as two columns y,F with a header row, ascending y.
void write_reference_csv(const std::string& path, const std::vector<double>& ys,
                         const std::vector<double>& fs);

ReferenceCdf load_reference_csv(const std::string& path);

}  // namespace algp
