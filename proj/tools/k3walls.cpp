#include "k3walls/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace k3walls;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInconsistent = 3;

struct Options {
  std::string config;
  std::string h2, v, rank_bound, out, scale;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct Loaded {
  RunConfig config;
  AnnotationTable annotations;
};

Loaded load(const Options& opt) {
  std::string text;
  fs::path base = fs::current_path();
  if (!opt.config.empty()) {
    text = read_file(opt.config);
    base = fs::absolute(opt.config).parent_path();
  }
  std::vector<std::pair<std::string, std::string>> overrides;
  if (!opt.h2.empty()) overrides.emplace_back("h2", opt.h2);
  if (!opt.v.empty()) overrides.emplace_back("v", opt.v);
  if (!opt.rank_bound.empty()) overrides.emplace_back("rank_bound", opt.rank_bound);
  if (!opt.out.empty()) overrides.emplace_back("out", opt.out);
  if (!opt.scale.empty()) overrides.emplace_back("scale", opt.scale);
  // A new class or surface invalidates rays chosen for the old one.
  if ((!opt.h2.empty() || !opt.v.empty()) && !opt.config.empty()) {
    std::string kept;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
      const std::string key = line.substr(0, line.find('='));
      if (key.find_first_not_of(" \t") == std::string::npos ||
          key.substr(key.find_first_not_of(" \t"), 4) != "rays")
        kept += line + "\n";
    }
    text = kept;
  }
  Loaded loaded{parse_config(apply_overrides(text, overrides)), {}};
  if (loaded.config.annotations) {
    const fs::path path = base / *loaded.config.annotations;
    loaded.annotations = parse_annotations(read_file(path));
  }
  if (opt.out.empty() && !opt.config.empty() && fs::path(loaded.config.out).is_relative())
    loaded.config.out = (base / loaded.config.out).lexically_normal().string();
  return loaded;
}

void add_common(CLI::App* app, Options& opt) {
  app->add_option("--config", opt.config, "key=value configuration file");
  app->add_option("--h2", opt.h2, "H^2 of the K3 surface (even, >= 2)");
  app->add_option("--v", opt.v, "Mukai vector a,b,c");
  app->add_option("--rank-bound", opt.rank_bound, "largest subobject rank searched");
  app->add_option("--out", opt.out, "output directory");
  app->add_option("--scale", opt.scale, "SVG units per unit of beta or alpha");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walls, wall types and nef/movable cones for moduli of sheaves on Picard-rank-one K3 surfaces"};
  app.require_subcommand(1);
  Options opt;
  auto* walls = app.add_subcommand("walls", "list the vertical wall and the walls found on each ray");
  auto* cones = app.add_subcommand("cones", "print the positive, movable and nef cones");
  auto* report = app.add_subcommand("report", "write report.txt into the output directory");
  auto* figures = app.add_subcommand("figures", "write halfplane.svg and ns_cone.svg into the output directory");
  for (auto* sub : {walls, cones, report, figures}) add_common(sub, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const Loaded loaded = load(opt);
    const RunReport result = run_pipeline(loaded.config, loaded.annotations);
    if (walls->parsed()) {
      std::cout << render_walls_summary(result);
    } else if (cones->parsed()) {
      std::cout << render_cones_summary(result);
    } else {
      const fs::path dir = loaded.config.out;
      fs::create_directories(dir);
      if (report->parsed()) {
        write_file(dir / "report.txt", render_report(result));
        std::cout << (dir / "report.txt").string() << "\n";
      } else {
        write_file(dir / "halfplane.svg", render_halfplane_svg(result));
        write_file(dir / "ns_cone.svg", render_ns_cone_svg(result));
        std::cout << (dir / "halfplane.svg").string() << "\n" << (dir / "ns_cone.svg").string() << "\n";
      }
    }
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
