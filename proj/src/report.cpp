// CSV, SVG and resolved-config outputs of an experiment.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "kmax/errors.hpp"
#include "kmax/harness.hpp"
#include "kmax/instance_io.hpp"

namespace kmax {

std::string regret_csv(const ExperimentResult& result) {
  std::string csv = "round,policy,mean_cum_regret,stderr\n";
  for (const auto& curve : result.curves)
    for (std::size_t t = 0; t < curve.mean.size(); ++t)
      csv += fmt::format("{},{},{:.12g},{:.12g}\n", t + 1, curve.policy, curve.mean[t], curve.std_error[t]);
  return csv;
}

std::string regret_svg(const ExperimentResult& result) {
  constexpr double kWidth = 800, kHeight = 500;
  constexpr double kLeft = 80, kRight = 160, kTop = 30, kBottom = 60;
  constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  constexpr std::size_t kMaxPoints = 1000;

  std::size_t rounds = 1;
  double y_min = 0.0, y_max = 0.0;
  for (const auto& c : result.curves) {
    rounds = std::max(rounds, c.mean.size());
    for (double y : c.mean) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (y_max - y_min <= 0.0) y_max = y_min + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double round) { return kLeft + plot_w * round / static_cast<double>(rounds); };
  auto py = [&](double y) { return kTop + plot_h * (1.0 - (y - y_min) / (y_max - y_min)); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  // Axes and ticks.
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, kTop + plot_h,
                     kLeft + plot_w);
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, kTop,
                     kTop + plot_h);
  for (int tick = 0; tick <= 5; ++tick) {
    const double r = static_cast<double>(rounds) * tick / 5.0;
    const double y = y_min + (y_max - y_min) * tick / 5.0;
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.0f}</text>\n", px(r),
                       kTop + plot_h + 18, r);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", kLeft - 6, py(y) + 4, y);
  }
  svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">round</text>\n", kLeft + plot_w / 2,
                     kHeight - 15);
  svg += fmt::format(
      "<text x=\"20\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1f})\">cumulative "
      "regret</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2);

  for (std::size_t c = 0; c < result.curves.size(); ++c) {
    const auto& curve = result.curves[c];
    const char* color = kColors[c % kColors.size()];
    const std::size_t stride = std::max<std::size_t>(1, curve.mean.size() / kMaxPoints);
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"", color);
    for (std::size_t t = 0; t < curve.mean.size(); t += stride)
      svg += fmt::format("{:.1f},{:.1f} ", px(static_cast<double>(t + 1)), py(curve.mean[t]));
    if (!curve.mean.empty())
      svg += fmt::format("{:.1f},{:.1f}", px(static_cast<double>(curve.mean.size())), py(curve.mean.back()));
    svg += "\"/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(c + 1);
    svg += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" "
                       "stroke-width=\"2\"/>\n",
                       kLeft + plot_w + 15, ly, kLeft + plot_w + 40, color);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", kLeft + plot_w + 45, ly + 4, curve.policy);
  }
  svg += "</svg>\n";
  return svg;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

void emit_outputs(const ExperimentResult& result, const ExperimentConfig& cfg) {
  const std::filesystem::path dir = cfg.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  write_file(dir / "regret.csv", regret_csv(result));
  write_file(dir / "regret.svg", regret_svg(result));

  json resolved = config_to_json(cfg);
  resolved["seeds"] = result.seeds;
  resolved["opt"] = result.opt;
  resolved["opt_action"] = action_to_json(result.opt_action);
  resolved["regret_target"] = result.target;
  const OracleSpec spec = OracleSpec::of(cfg.oracle);
  resolved["oracle_guarantee"] = {{"alpha", spec.alpha}, {"beta", spec.beta}};
  resolved["resolved_instance"] = instance_to_json(result.instance);
  write_file(dir / "config.resolved.json", resolved.dump(2) + "\n");
}

}  // namespace kmax
