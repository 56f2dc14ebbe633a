#include "mvproj/report.hpp"

#include <sstream>

#include "mvproj/csv_io.hpp"

namespace mvproj {

nlohmann::json center_to_json(const CenterSpec& center) {
  nlohmann::json j;
  std::visit(
      [&](const auto& origin) {
        using T = std::decay_t<decltype(origin)>;
        if constexpr (std::is_same_v<T, FixedOrigin>) {
          j["origin"] = "fixed";
        } else if constexpr (std::is_same_v<T, SampledOrigin>) {
          j["origin"] = "sampled";
          j["strategy"] = origin.strategy;
        } else {
          j["origin"] = "sample-point";
          j["index"] = origin.index;
        }
      },
      center.origin);
  if (const auto* t = std::get_if<TwoSampleCenter>(&center.point)) {
    j["z"] = t->z;
  } else {
    const auto& ic = std::get<IndepCenter>(center.point);
    j["z_x"] = ic.z_x;
    j["z_y"] = ic.z_y;
  }
  return j;
}

nlohmann::json to_json(const TestReport& report, bool include_runtime) {
  nlohmann::json j;
  j["method"] = {
      {"problem", report.method.problem},
      {"center_strategy", report.method.center_strategy},
      {"univariate", report.method.univariate},
      {"pooling", report.method.pooling},
      {"calibration", report.method.calibration},
      {"pooling_B", report.method.pooling_permutations},
  };
  j["statistic"] = report.statistic;
  j["p_value"] = report.p_value;
  j["per_center"] = nlohmann::json::array();
  for (const auto& c : report.per_center) {
    j["per_center"].push_back(
        {{"center", center_to_json(c.center)}, {"statistic", c.statistic}, {"p_value", c.p_value}});
  }
  j["B"] = report.permutations;
  j["seed"] = report.seed;
  j["runtime_ms"] = include_runtime ? report.runtime_ms : 0.0;
  return j;
}

std::string report_csv(const TestReport& report) {
  std::ostringstream out;
  out << "row,origin,index,statistic,p_value\n";
  for (std::size_t i = 0; i < report.per_center.size(); ++i) {
    const auto& c = report.per_center[i];
    const auto idx = c.center.sample_index();
    const char* origin = std::holds_alternative<FixedOrigin>(c.center.origin)     ? "fixed"
                         : std::holds_alternative<SampledOrigin>(c.center.origin) ? "sampled"
                                                                                 : "sample-point";
    out << "center," << origin << ',' << (idx ? *idx : i) << ',' << format_double(c.statistic)
        << ',' << format_double(c.p_value) << '\n';
  }
  out << "summary," << report.method.pooling << ',' << report.permutations << ','
      << format_double(report.statistic) << ',' << format_double(report.p_value) << '\n';
  return out.str();
}

nlohmann::json to_json(const PipelineConfig& config) {
  nlohmann::json centers;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        centers["strategy"] = strategy_name(config.centers);
        if constexpr (std::is_same_v<T, UniformBoundingBox>) {
          centers["count"] = s.count;
          centers["expansion"] = s.expansion;
        } else if constexpr (std::is_same_v<T, GaussianMomentFit>) {
          centers["count"] = s.count;
        } else if constexpr (std::is_same_v<T, FixedList>) {
          centers["points"] = nlohmann::json::array();
          for (const auto& c : s.centers) centers["points"].push_back(center_to_json(c));
        }
      },
      config.centers);
  return {{"problem", name(config.problem)}, {"centers", centers},
          {"test", name(config.test)},       {"pooling", name(config.pooling)},
          {"B", config.permutations},        {"seed", config.seed},
          {"alpha", config.alpha},           {"exact", config.exact},
          {"jitter", config.jitter}};
}

nlohmann::json to_json(const ScenarioSpec& s) {
  return {{"generator", name(s.generator)}, {"dim", s.dim},
          {"dim_x", s.dim_x},               {"groups", s.groups},
          {"shift", s.shift},               {"scale_ratio", s.scale_ratio},
          {"rho", s.rho},                   {"noise", s.noise},
          {"replications", s.replications}, {"sample_sizes", s.sample_sizes}};
}

nlohmann::json power_to_json(const PipelineConfig& config, const ScenarioSpec& scenario,
                             std::span<const PowerTable> tables) {
  nlohmann::json j;
  j["config"] = to_json(config);
  j["scenario"] = to_json(scenario);
  j["results"] = nlohmann::json::array();
  for (const auto& table : tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      rows.push_back({{"n", row.n},
                      {"replications", row.replications},
                      {"rejections", row.rejections},
                      {"rate", row.rate},
                      {"se", row.standard_error ? nlohmann::json(*row.standard_error) : nlohmann::json()},
                      {"se_defined", row.standard_error.has_value()}});
    }
    j["results"].push_back({{"pooling", name(table.pooling)}, {"rows", rows}});
  }
  return j;
}

std::string power_csv(std::span<const PowerTable> tables) {
  std::ostringstream out;
  out << "pooling,n,replications,rejections,rate,se\n";
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      out << name(table.pooling) << ',' << row.n << ',' << row.replications << ','
          << row.rejections << ',' << format_double(row.rate) << ','
          << (row.standard_error ? format_double(*row.standard_error) : std::string("NA")) << '\n';
    }
  }
  return out.str();
}

}  // namespace mvproj
