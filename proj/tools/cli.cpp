#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "topent/compare.hpp"
#include "topent/entropy.hpp"
#include "topent/error.hpp"
#include "topent/numeric.hpp"
#include "topent/pcd.hpp"
#include "topent/persistence.hpp"
#include "topent/separate.hpp"
#include "topent/vrips.hpp"

namespace topent::cli {

namespace {

// Thrown by verification commands whose check failed after output was written.
struct AssertionFailure {
  std::string message;
};

struct Common {
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  int dim_cap = kDefaultDimCap;
  std::optional<int> dims;
  std::optional<double> t_max;
};

// --format defaults differ per subcommand, so the chosen value is copied into
// `c.format` only when that subcommand runs.
void add_output(CLI::App* cmd, Common& c, std::vector<std::string> formats) {
  const std::string fallback = formats.front();
  cmd->add_option("--out", c.out_path, "Write the result to PATH instead of stdout");
  cmd->add_option("--format", c.format, "Output format (default " + fallback + ")")
      ->check(CLI::IsMember(std::move(formats)));
  cmd->preparse_callback([&c, fallback](std::size_t) { c.format = fallback; });
}

void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw InputError("cannot open output file '" + c.out_path + "'");
  file << text;
  if (!file) throw InputError("failed writing output file '" + c.out_path + "'");
}

Barcode filtered(const Barcode& barcode, const std::optional<int>& dims) {
  return dims ? restrict_dim(barcode, *dims) : barcode;
}

std::vector<double> lengths_of(const Barcode& barcode) {
  std::vector<double> lengths;
  for (const Bar& bar : barcode.bars()) lengths.push_back(bar.length());
  return lengths;
}

std::string entropy_record(const Barcode& barcode, const std::optional<int>& dims,
                           bool json) {
  const std::vector<double> lengths = lengths_of(barcode);
  if (lengths.empty()) throw InputError("no bars to evaluate");
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  const double T = *hi;
  const double r = *lo;
  const double e = persistent_entropy(lengths);
  const double rel = relative_entropy(lengths, T, r);
  std::ostringstream out;
  if (json) {
    out << "{\"dims\": " << (dims ? std::to_string(*dims) : "null")
        << ", \"n\": " << lengths.size() << ", \"T\": " << format_double(T)
        << ", \"r\": " << format_double(r) << ", \"alpha\": " << format_double(r / T)
        << ", \"entropy\": " << format_double(e)
        << ", \"relative_entropy\": " << format_double(rel) << "}\n";
  } else {
    out << format_double(e) << '\n'
        << "n " << lengths.size() << '\n'
        << "T " << format_double(T) << '\n'
        << "r " << format_double(r) << '\n'
        << "alpha " << format_double(r / T) << '\n'
        << "relative_entropy " << format_double(rel) << '\n';
  }
  return out.str();
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> deltas;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) deltas.push_back(parse_double(item));
  if (deltas.empty()) throw InputError("--deltas needs at least one value");
  std::sort(deltas.begin(), deltas.end());
  return deltas;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vietoris-Rips persistence barcodes, persistent entropy and "
               "entropy-based separation of topological features from noise"};
  app.name("topent");
  app.require_subcommand(1);

  std::function<void()> action;
  Common c;

  // sample
  auto* sample = app.add_subcommand("sample", "Write a synthetic point cloud as CSV");
  sample->require_subcommand(1);
  std::size_t n = 0;
  double radius = 1.0, jitter = 0.0, major = 2.0, minor = 0.5;
  auto* circle = sample->add_subcommand("circle", "Points on a circle (angles 2*pi*k/n)");
  circle->add_option("--n", n, "Number of points (>= 3)")->required();
  circle->add_option("--radius", radius, "Circle radius")->capture_default_str();
  circle->add_option("--jitter", jitter, "Radial / angular noise bound")->capture_default_str();
  circle->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  circle->add_option("--out", c.out_path, "Write the CSV to PATH instead of stdout");
  circle->callback([&] {
    action = [&] {
      std::ostringstream csv;
      write_points(csv, sample_circle(n, radius, jitter, c.seed));
      emit(c, out, csv.str());
    };
  });
  auto* torus = sample->add_subcommand("torus", "Points on a torus, uniform in both angles");
  torus->add_option("--n", n, "Number of points")->required();
  torus->add_option("--R", major, "Major radius")->capture_default_str();
  torus->add_option("--rho", minor, "Minor (tube) radius")->capture_default_str();
  torus->add_option("--seed", c.seed, "Generator seed")->capture_default_str();
  torus->add_option("--out", c.out_path, "Write the CSV to PATH instead of stdout");
  torus->callback([&] {
    action = [&] {
      std::ostringstream csv;
      write_points(csv, sample_torus(n, major, minor, c.seed));
      emit(c, out, csv.str());
    };
  });

  // barcode
  std::string points_path;
  std::size_t budget = kDefaultSimplexBudget;
  auto* barcode = app.add_subcommand(
      "barcode",
      "Vietoris-Rips barcode of a CSV point cloud. Simplices up to dimension --dim-cap are "
      "built, so homology is exact in dimensions 0 .. dim-cap - 1 (H_k needs dim-cap >= k+1)");
  barcode->add_option("points", points_path, "CSV point file")->required();
  barcode->add_option("--dim-cap", c.dim_cap, "Largest simplex dimension (>= 1)")
      ->capture_default_str();
  barcode->add_option("--t-max", c.t_max,
                      "Cutoff scale (default: min over points of the max distance)");
  barcode->add_option("--budget", budget, "Maximum number of simplices")->capture_default_str();
  add_output(barcode, c, {"json", "text"});
  barcode->callback([&] {
    action = [&] {
      if (c.dim_cap < 1) throw InputError("--dim-cap must be at least 1");
      const PointCloud cloud = load_points_file(points_path);
      const DistanceMatrix d = pairwise_distances(cloud);
      const double t_max = c.t_max ? *c.t_max : scale_bounds(d).t_max;
      const Barcode bars = compute_barcode(build_vr_filtration(d, c.dim_cap, t_max, budget));
      if (c.format == "json") {
        emit(c, out, barcode_to_json(bars));
      } else {
        std::ostringstream text;
        for (const Bar& bar : bars.bars()) {
          text << bar.dim << ' ' << format_double(bar.birth) << ' ' << format_double(bar.death)
               << (bar.essential ? " essential" : "") << '\n';
        }
        emit(c, out, text.str());
      }
    };
  });

  // entropy
  std::string barcode_path;
  auto* entropy = app.add_subcommand("entropy", "Persistent entropy of a barcode JSON file");
  entropy->add_option("barcode", barcode_path, "Barcode JSON file")->required();
  entropy->add_option("--dims", c.dims, "Use only bars of this dimension");
  add_output(entropy, c, {"text", "json"});
  entropy->callback([&] {
    action = [&] {
      const Barcode bars = filtered(load_barcode_file(barcode_path), c.dims);
      emit(c, out, entropy_record(bars, c.dims, c.format == "json"));
    };
  });

  // separate
  auto* separate =
      app.add_subcommand("separate", "Separate topological features from noise in a barcode");
  separate->add_option("barcode", barcode_path, "Barcode JSON file")->required();
  separate->add_option("--dims", c.dims, "Use only bars of this dimension");
  add_output(separate, c, {"text", "json", "csv"});
  separate->callback([&] {
    action = [&] {
      const Barcode bars = filtered(load_barcode_file(barcode_path), c.dims);
      const SeparationResult result = separate_features(bars);
      const TraceFormat format = c.format == "json"  ? TraceFormat::kJson
                                 : c.format == "csv" ? TraceFormat::kCsv
                                                     : TraceFormat::kText;
      emit(c, out, render_trace(result, format));
    };
  });

  // bottleneck
  std::string second_path;
  auto* bottleneck =
      app.add_subcommand("bottleneck", "Bottleneck distance between two barcodes in one dimension");
  bottleneck->add_option("first", barcode_path, "Barcode JSON file")->required();
  bottleneck->add_option("second", second_path, "Barcode JSON file")->required();
  bottleneck->add_option("--dims", c.dims, "Homological dimension to compare")->required();
  add_output(bottleneck, c, {"text", "json"});
  bottleneck->callback([&] {
    action = [&] {
      const Barcode a = load_barcode_file(barcode_path);
      const Barcode b = load_barcode_file(second_path);
      const double d = bottleneck_distance(diagram_of(a, *c.dims), diagram_of(b, *c.dims));
      emit(c, out,
           c.format == "json" ? "{\"dim\": " + std::to_string(*c.dims) +
                                    ", \"bottleneck\": " + format_double(d) + "}\n"
                              : format_double(d) + "\n");
    };
  });

  // gh
  auto* gh = app.add_subcommand(
      "gh", "Min over surjections V -> W of the worst distance distortion (2 d_GH)");
  gh->add_option("first", points_path, "CSV point file V")->required();
  gh->add_option("second", second_path, "CSV point file W (|W| <= |V| <= 9)")->required();
  add_output(gh, c, {"text", "json"});
  gh->callback([&] {
    action = [&] {
      const double d = gh_distortion(load_points_file(points_path), load_points_file(second_path));
      emit(c, out,
           c.format == "json" ? "{\"gh_distortion\": " + format_double(d) + "}\n"
                              : format_double(d) + "\n");
    };
  });

  // stability
  std::string deltas_text = "0.1,0.01,0.001";
  auto* stability = app.add_subcommand(
      "stability", "Check bottleneck <= 2 d_GH and the entropy gap under perturbations");
  stability->add_option("points", points_path, "CSV point file")->required();
  stability->add_option("--deltas", deltas_text, "Comma-separated perturbation sizes")
      ->capture_default_str();
  stability->add_option("--seed", c.seed, "Perturbation seed")->capture_default_str();
  stability->add_option("--dim-cap", c.dim_cap, "Largest simplex dimension (>= 1)")
      ->capture_default_str();
  add_output(stability, c, {"text", "json"});
  stability->callback([&] {
    action = [&] {
      const StabilityReport report = stability_report(
          load_points_file(points_path), parse_deltas(deltas_text), c.seed, c.dim_cap);
      emit(c, out,
           c.format == "json" ? stability_report_json(report) : stability_report_text(report));
      if (!report.all_inequalities_hold) {
        throw AssertionFailure{"bottleneck distance exceeded 2 d_GH"};
      }
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    const int code = app.exit(e, help_out, err);
    out << help_out.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const AssertionFailure& e) {
    err << "topent: assertion failed: " << e.message << '\n';
    return kExitAssertion;
  } catch (const Error& e) {
    err << "topent: " << to_string(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kResource: return kExitResource;
      case ErrorKind::kInternal: return kExitAssertion;
      default: return kExitInput;
    }
  } catch (const std::exception& e) {
    err << "topent: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace topent::cli
