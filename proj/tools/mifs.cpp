// mifs: attractors and canonical projections of mixed iterated function systems.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mifs/atomic_file.hpp"
#include "mifs/cloud_csv.hpp"
#include "mifs/error.hpp"
#include "mifs/figures.hpp"
#include "mifs/parallel.hpp"
#include "mifs/projection.hpp"
#include "mifs/properties.hpp"
#include "mifs/scatter_png.hpp"
#include "mifs/system_config.hpp"
#include "mifs/word_spec.hpp"

namespace {

using namespace mifs;

enum Exit : int { kOk = 0, kOther = 1, kConfig = 2, kValidation = 3, kBudget = 4, kProperty = 5 };

Point parse_point(const std::string& text) {
  std::istringstream in(text);
  Point p;
  char comma = 0;
  if (!(in >> p.x >> comma >> p.y) || comma != ',' || !(in >> std::ws).eof() || !is_finite(p))
    throw ConfigError(0, "expected a point as x,y, got '" + text + "'");
  return p;
}

Viewport parse_viewport(const std::string& text) {
  std::istringstream in(text);
  Viewport v;
  char c1 = 0, c2 = 0, c3 = 0;
  if (!(in >> v.xmin >> c1 >> v.xmax >> c2 >> v.ymin >> c3 >> v.ymax) || c1 != ',' || c2 != ',' || c3 != ',' ||
      !(v.xmin < v.xmax && v.ymin < v.ymax))
    throw ConfigError(0, "expected a viewport as xmin,xmax,ymin,ymax, got '" + text + "'");
  return v;
}

MixedSystem load_or_default(const std::string& path) {
  return path.empty() ? example_system() : load_system_config(path);
}

void print_history(const AttractorApprox& a) {
  std::printf("iterations %zu, %zu points, stop: %s, delta %.3g, decimation slack %.3g\n", a.iterations, a.cloud.size(),
              to_string(a.stop), a.delta, a.decimation_slack);
  for (std::size_t n = 0; n < a.successive_h.size(); ++n)
    std::printf("  h(B%zu, B%zu) = %.6g\n", n, n + 1, a.successive_h[n]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attractors and canonical projections of mixed iterated function systems"};
  app.require_subcommand(1);
  std::string threads = "auto";
  app.add_option("--threads", threads, "Thread cap (integer or 'auto'; env MIFS_THREADS)");

  // check
  auto* check = app.add_subcommand("check", "Validate a system config");
  std::string check_path;
  std::size_t check_trials = 2000;
  check->add_option("config", check_path, "System config file")->required();
  check->add_option("--trials", check_trials, "Orbit pairs sampled per J-letter")->check(CLI::PositiveNumber);

  // attract
  auto* attract = app.add_subcommand("attract", "Iterate the fractal operator");
  std::string attract_path, csv_path, png_path, viewport;
  std::vector<std::string> seed_points{"0,0"};
  AttractorOptions aopts;
  attract->add_option("config", attract_path, "System config file (default: built-in example)");
  attract->add_option("--seed-point", seed_points, "Initial set, one x,y per flag");
  attract->add_option("--iters", aopts.max_iters, "Maximum iterations");
  attract->add_option("--delta", aopts.delta, "Decimation resolution (0 disables)")->check(CLI::NonNegativeNumber);
  attract->add_option("--stop-h", aopts.stop_h, "Stop when successive Hausdorff distance drops below this");
  attract->add_option("--csv", csv_path, "Write the cloud as CSV");
  attract->add_option("--png", png_path, "Render the CSV (or the cloud) as PNG");
  attract->add_option("--viewport", viewport, "PNG viewport xmin,xmax,ymin,ymax");

  // project
  auto* project = app.add_subcommand("project", "Evaluate the canonical projection");
  std::string project_path, word, point_text = "0,0";
  ProjectionOptions popts;
  project->add_option("config", project_path, "System config file (default: built-in example)");
  project->add_option("--word", word, "Word spec, e.g. 4.1.2.(4)^w")->required();
  project->add_option("--point", point_text, "Start point x,y");
  project->add_option("--tol", popts.tol, "Target error bound")->check(CLI::PositiveNumber);
  project->add_option("--max-steps", popts.max_steps, "Letter budget per stream");

  // figure
  auto* figure = app.add_subcommand("figure", "Reproduce one of the example figures");
  int figure_n = 0;
  std::string figure_path;
  FigureOptions fopts;
  std::optional<std::uint64_t> figure_seed;
  bool no_png = false;
  std::string out_dir = ".";
  figure->add_option("n", figure_n, "Figure number 1..5")->required()->check(CLI::Range(1, 5));
  figure->add_option("config", figure_path, "System config file (default: built-in example)");
  figure->add_option("--out", out_dir, "Output directory");
  figure->add_option("--display-delta", fopts.display_delta, "Snap resolution for large CSV clouds (0 = full)")
      ->check(CLI::NonNegativeNumber);
  figure->add_option("--seed", figure_seed, "Override the fixed figure seed");
  figure->add_flag("--no-png", no_png, "Write CSV files only");
  figure->add_flag("--quick", fopts.quick, "Smaller clouds and samples");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  std::string verify_path;
  VerifyOptions vopts;
  std::optional<std::size_t> trials;
  std::string fault;
  verify->add_option("config", verify_path, "System config file (default: built-in example)");
  verify->add_option("--trials", trials, "Override every per-property trial count");
  verify->add_option("--seed", vopts.seed, "Random seed");
  verify->add_option("--inject-fault", fault, "Negate one letter's translation on the projection side");
  verify->add_option("--only", vopts.only, "Run properties whose names contain this text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    std::optional<int> cap;
    if (threads != "auto") {
      try {
        cap = std::stoi(threads);
      } catch (const std::exception&) {
        throw ConfigError(0, "--threads expects an integer or 'auto'");
      }
      if (*cap < 1) throw ConfigError(0, "--threads must be at least 1");
    }
    configure_threads(cap);

    if (*check) {
      const MixedSystem sys = load_system_config(check_path);
      const auto report = validate_system(sys, check_trials);
      std::cout << report.summary(*sys.alphabet());
      return report.passed ? kOk : kValidation;
    }

    if (*attract) {
      const MixedSystem sys = load_or_default(attract_path);
      std::vector<Point> seeds;
      for (const auto& s : seed_points) seeds.push_back(parse_point(s));
      const auto result = iterate_attractor(sys, PointSet(std::move(seeds)), aopts);
      print_history(result);
      ScatterOptions png;
      if (!viewport.empty()) png.viewport = parse_viewport(viewport);
      if (!csv_path.empty()) {
        write_file_atomic(csv_path, [&](std::ostream& out) { write_cloud_csv(out, result.cloud.points()); });
        std::printf("wrote %s\n", csv_path.c_str());
      }
      if (!png_path.empty()) {
        if (!csv_path.empty()) {
          render_csv_to_png(csv_path, png_path, png);
        } else {
          const Series s{"cloud", {result.cloud.begin(), result.cloud.end()}, Marker::Dot};
          render_scatter_png(png_path, {&s, 1}, png);
        }
        std::printf("wrote %s\n", png_path.c_str());
      }
      return kOk;
    }

    if (*project) {
      const MixedSystem sys = load_or_default(project_path);
      const auto sigma = parse_sigma_word(word, sys.alphabet());
      const auto value = canonical_projection(sys, sigma, parse_point(point_text), popts);
      std::cout << value.to_record() << '\n';
      return kOk;
    }

    if (*figure) {
      const MixedSystem sys = load_or_default(figure_path);
      fopts.out_dir = out_dir;
      fopts.png = !no_png;
      fopts.seed = figure_seed;
      const auto report = make_figure(figure_n, sys, fopts);
      for (const auto& line : report.notes) std::cout << line << '\n';
      for (const auto& f : report.files) std::cout << "wrote " << f.string() << '\n';
      return kOk;
    }

    if (*verify) {
      const MixedSystem sys = load_or_default(verify_path);
      vopts.trials = trials;
      if (!fault.empty()) vopts.inject_fault = fault;
      const auto report = run_verify(sys, vopts);
      std::cout << report.format();
      return report.passed ? kOk : kProperty;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const SyntaxError& e) {
    std::cerr << "word spec: " << e.what() << '\n';
    return kConfig;
  } catch (const UnknownLetter& e) {
    std::cerr << "word spec: " << e.what() << '\n';
    return kConfig;
  } catch (const StructureError& e) {
    std::cerr << "word spec: " << e.what() << '\n';
    return kConfig;
  } catch (const ValidationFailure& e) {
    std::cerr << e.what() << '\n';
    return kValidation;
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
