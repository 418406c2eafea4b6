#include "interp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "interp/decomposition.hpp"
#include "interp/delta.hpp"
#include "interp/error.hpp"
#include "interp/formula.hpp"
#include "interp/graph.hpp"
#include "interp/marking.hpp"
#include "interp/quasiflat.hpp"
#include "interp/rank.hpp"
#include "interp/region.hpp"
#include "interp/slope.hpp"

namespace interp::cli {
namespace {

using nlohmann::json;

constexpr std::string_view kModule = "cli";

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(kModule, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    throw InvalidArgument(kModule, "malformed JSON in " + path + ": " + ex.what());
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw InvalidArgument(kModule, "cannot write " + path);
  return f;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

struct RankArgs {
  int genus = 0, punctures = 0, xi = 0;
  bool witness = false;
};

struct DecompsArgs {
  int genus = 0, punctures = 0;
};

struct BallArgs {
  std::string model, region, center, out = "json";
  int radius = 0;
  std::int64_t height = 6;
};

struct DistArgs {
  std::string model, region, from, to;
};

struct FormulaArgs {
  std::string region, from, to, csv;
  std::optional<int> xi;
  std::int64_t k = 4, samples = 0, radius = 8, height = 6;
  std::optional<std::int64_t> b_max;
  std::uint64_t seed = 0;
  bool fit = false;
};

struct QuasiflatArgs {
  std::string region, geodesics, csv;
  std::int64_t grid = 0, k = 4;
  bool json = false;
};

struct ConeArgs {
  std::string graph, subsets, out = "json";
};

struct DeltaArgs {
  std::string graph;
};

void print_graph(std::ostream& out, const MetricGraph& g, const std::string& format) {
  if (format == "dot") {
    out << to_dot(g);
  } else {
    out << to_json(g).dump() << '\n';
  }
}

int run_rank(const RankArgs& a, std::ostream& out) {
  Surface s(a.genus, a.punctures);
  auto result = r_xi(s, a.xi);
  if (!a.witness) {
    out << result.count << '\n';
    return 0;
  }
  json j{{"surface", s.name()},
         {"xi", a.xi},
         {"rank", result.count},
         {"witness", to_json(result.witness)}};
  out << j.dump() << '\n';
  return 0;
}

int run_decomps(const DecompsArgs& a, std::ostream& out) {
  for (const auto& d : enumerate_decompositions(Surface(a.genus, a.punctures))) {
    out << to_json(d).dump() << '\n';
  }
  return 0;
}

Slope slope_arg(const std::string& text, const char* fallback) {
  return Slope::parse(text.empty() ? fallback : text);
}

int run_ball(const BallArgs& a, std::ostream& out) {
  if (a.radius < 0) throw InvalidArgument(kModule, "--radius must be >= 0");
  if (a.height < 1) throw InvalidArgument(kModule, "--height must be >= 1");
  if (a.model == "region") {
    if (a.region.empty()) throw InvalidArgument(kModule, "--model region needs --region");
    auto r = region_from_json(read_json(a.region));
    auto center = a.center.empty() ? base_point(r) : parse_point(r, a.center);
    print_graph(out, region_ball(r, center, a.radius, NeighborScope{a.height}), a.out);
    return 0;
  }
  if (!a.region.empty()) throw InvalidArgument(kModule, "--region only applies to --model region");
  if (a.model == "marking") {
    auto center = Marking11::parse(a.center.empty() ? "(0/1; 1/0)" : a.center);
    NeighborFn fn = [](const std::string& key) {
      std::vector<std::string> keys;
      for (const auto& m : marking_moves(Marking11::parse(key))) keys.push_back(m.to_string());
      return keys;
    };
    print_graph(out, ball(fn, center.to_string(), a.radius), a.out);
    return 0;
  }
  // farey and farey4 share one graph: slopes meeting once on the torus are
  // exactly those meeting twice on the four-holed sphere.
  auto center = slope_arg(a.center, "0/1");
  const auto h = a.height;
  if (center.height() > h) throw InvalidArgument(kModule, "--center exceeds --height");
  NeighborFn fn = [h](const std::string& key) {
    std::vector<std::string> keys;
    for (const auto& s : farey_neighbors(Slope::parse(key), h)) keys.push_back(s.to_string());
    return keys;
  };
  print_graph(out, ball(fn, center.to_string(), a.radius), a.out);
  return 0;
}

int run_dist(const DistArgs& a, std::ostream& out) {
  if (a.model == "region") {
    if (a.region.empty()) throw InvalidArgument(kModule, "--model region needs --region");
    auto r = region_from_json(read_json(a.region));
    out << region_distance_closed_form(r, parse_point(r, a.from), parse_point(r, a.to)) << '\n';
    return 0;
  }
  if (!a.region.empty()) throw InvalidArgument(kModule, "--region only applies to --model region");
  if (a.model == "marking") {
    out << marking_distance(Marking11::parse(a.from), Marking11::parse(a.to)) << '\n';
    return 0;
  }
  out << farey_distance(Slope::parse(a.from), Slope::parse(a.to)) << '\n';
  return 0;
}

int run_formula(const FormulaArgs& a, std::ostream& out) {
  auto region_json = read_json(a.region);
  if (a.xi) region_json["xi"] = *a.xi;
  auto r = region_from_json(region_json);
  ThresholdParams k(a.k);
  if (a.samples < 0) throw InvalidArgument(kModule, "--samples must be >= 0");
  if (a.samples == 0) {
    if (a.fit || a.b_max || !a.csv.empty()) {
      throw InvalidArgument(kModule, "--fit, --b-max and --csv need --samples");
    }
    if (a.from.empty() || a.to.empty()) throw InvalidArgument(kModule, "--from and --to are required");
    out << distance_formula(r, k, parse_point(r, a.from), parse_point(r, a.to)) << '\n';
    return 0;
  }
  if (!a.to.empty()) throw InvalidArgument(kModule, "--to does not apply with --samples");
  if (a.radius < 0) throw InvalidArgument(kModule, "--radius must be >= 0");
  if (a.b_max && *a.b_max < 0) throw InvalidArgument(kModule, "--b-max must be >= 0");

  auto center = a.from.empty() ? base_point(r) : parse_point(r, a.from);
  auto g = region_ball(r, center, static_cast<int>(a.radius), NeighborScope{a.height});
  std::mt19937_64 rng(a.seed);
  const auto n = g.size();
  RegionMetric metric(r);
  std::vector<DistanceSample> samples;
  std::ostringstream csv;
  csv << "x,y,d_graph,d_formula\n";
  for (std::int64_t i = 0; i < a.samples; ++i) {
    const auto& kx = g.vertices()[rng() % n];
    const auto& ky = g.vertices()[rng() % n];
    auto x = parse_point(r, kx);
    auto y = parse_point(r, ky);
    DistanceSample s{metric.distance(x, y), distance_formula(r, k, x, y)};
    samples.push_back(s);
    csv << kx << ',' << ky << ',' << s.first << ',' << s.second << '\n';
  }
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    f << csv.str();
  }
  if (!a.fit) {
    if (a.csv.empty()) out << csv.str();
    return 0;
  }
  auto fit = fit_qi_constants(samples);
  json summary = to_json(fit);
  summary["K"] = a.k;
  summary["samples"] = samples.size();
  summary["violations"] = std::count_if(samples.begin(), samples.end(), [&](const DistanceSample& s) {
    return !satisfies(fit, {s});
  });
  if (a.b_max) {
    auto capped = fit_qi_constants(samples, *a.b_max);
    summary["capped"] = capped ? to_json(*capped) : json(nullptr);
  }
  out << summary.dump() << '\n';
  return 0;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i]);
  }
  return s;
}

int run_quasiflat(const QuasiflatArgs& a, std::ostream& out) {
  if (a.grid < 0) throw InvalidArgument(kModule, "--grid must be >= 0");
  auto r = region_from_json(read_json(a.region));
  auto q = a.geodesics.empty() ? farey_quasiflat(r, std::max<std::int64_t>(a.grid, 1))
                               : quasiflat_from_json(r, read_json(a.geodesics));
  QuasiFlatOptions options;
  options.collect_rows = !a.csv.empty();
  options.threshold = a.k;
  auto report = verify_quasiflat(q, a.grid, options);
  if (!a.csv.empty()) {
    auto f = open_output(a.csv);
    f << "k,l,d_graph,d_formula\n";
    for (const auto& row : report.rows) {
      f << join(row.k) << ',' << join(row.l) << ',' << row.distance << ',' << row.formula << '\n';
    }
  }
  if (a.json) {
    out << to_json(report).dump() << '\n';
  } else {
    out << report.summary() << '\n';
  }
  return report.ok() || report.degenerate ? 0 : 1;
}

int run_cone(const ConeArgs& a, std::ostream& out) {
  auto g = graph_from_json(read_json(a.graph));
  auto j = read_json(a.subsets);
  std::vector<std::vector<std::string>> subsets;
  try {
    subsets = j.get<std::vector<std::vector<std::string>>>();
  } catch (const json::exception&) {
    throw InvalidArgument(kModule, "subsets file must be a JSON array of arrays of vertex keys");
  }
  print_graph(out, cone(g, subsets), a.out);
  return 0;
}

int run_delta(const DeltaArgs& a, std::ostream& out) {
  out << estimate_delta(graph_from_json(read_json(a.graph))).to_string() << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpolating graphs of surfaces: ranks, models, distance formula checks"};
  app.name(argv.empty() ? "interp" : argv.front());
  app.require_subcommand(1);

  const std::vector<std::string> models{"farey", "farey4", "marking", "region"};
  const std::vector<std::string> formats{"dot", "json"};

  RankArgs rank;
  auto* rank_cmd = app.add_subcommand("rank", "r_xi of S_{g,n}");
  rank_cmd->add_option("--genus", rank.genus)->required();
  rank_cmd->add_option("--punctures", rank.punctures)->required();
  rank_cmd->add_option("--xi", rank.xi)->required();
  rank_cmd->add_flag("--witness", rank.witness, "Print a maximising decomposition as JSON");

  DecompsArgs decomps;
  auto* decomps_cmd = app.add_subcommand("decomps", "All decomposition classes, one JSON per line");
  decomps_cmd->add_option("--genus", decomps.genus)->required();
  decomps_cmd->add_option("--punctures", decomps.punctures)->required();

  BallArgs ball_args;
  auto* ball_cmd = app.add_subcommand("ball", "Export a ball of a model graph");
  ball_cmd->add_option("--model", ball_args.model)->required()->check(CLI::IsMember(models));
  ball_cmd->add_option("--region", ball_args.region, "Region JSON file (model region)");
  ball_cmd->add_option("--center", ball_args.center, "Centre vertex; defaults to the base point");
  ball_cmd->add_option("--radius", ball_args.radius)->required();
  ball_cmd->add_option("--out", ball_args.out)->check(CLI::IsMember(formats));
  ball_cmd->add_option("--height", ball_args.height, "Largest slope height in the universe");

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Exact distance in a model graph");
  dist_cmd->add_option("--model", dist.model)->required()->check(CLI::IsMember(models));
  dist_cmd->add_option("--region", dist.region);
  dist_cmd->add_option("--from", dist.from)->required();
  dist_cmd->add_option("--to", dist.to)->required();

  FormulaArgs formula;
  auto* formula_cmd = app.add_subcommand("formula", "Thresholded distance formula");
  formula_cmd->add_option("--region", formula.region)->required();
  formula_cmd->add_option("--xi", formula.xi, "Override the region's xi");
  formula_cmd->add_option("-K", formula.k, "Threshold");
  formula_cmd->add_option("--from", formula.from, "First point, or the sampling centre");
  formula_cmd->add_option("--to", formula.to);
  formula_cmd->add_option("--samples", formula.samples, "Sample pairs from a ball instead");
  formula_cmd->add_option("--seed", formula.seed);
  formula_cmd->add_option("--radius", formula.radius, "Sampling ball radius");
  formula_cmd->add_option("--height", formula.height, "Largest slope height in the universe");
  formula_cmd->add_flag("--fit", formula.fit, "Print fitted (a, b) as JSON");
  formula_cmd->add_option("--b-max", formula.b_max, "Also report the least a with b <= B");
  formula_cmd->add_option("--csv", formula.csv, "Write sample rows to this file");

  QuasiflatArgs qf;
  auto* qf_cmd = app.add_subcommand("quasiflat", "Verify a quasi-flat on a grid");
  qf_cmd->add_option("--region", qf.region)->required();
  qf_cmd->add_option("--grid", qf.grid)->required();
  qf_cmd->add_option("--geodesic-file", qf.geodesics);
  qf_cmd->add_option("--csv", qf.csv, "Write one row per grid pair to this file");
  qf_cmd->add_option("-K", qf.k, "Threshold for the formula column of --csv");
  qf_cmd->add_flag("--json", qf.json, "Print the report as JSON");

  ConeArgs cone_args;
  auto* cone_cmd = app.add_subcommand("cone", "Cone off vertex subsets of a graph");
  cone_cmd->add_option("--graph", cone_args.graph)->required();
  cone_cmd->add_option("--subsets", cone_args.subsets)->required();
  cone_cmd->add_option("--out", cone_args.out)->check(CLI::IsMember(formats));

  DeltaArgs delta;
  auto* delta_cmd = app.add_subcommand("delta", "Four-point delta of a graph");
  delta_cmd->add_option("--graph", delta.graph)->required();

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& ex) {
    if (ex.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "cli: " << one_line(ex.what()) << '\n';
    return 2;
  }

  try {
    if (*rank_cmd) return run_rank(rank, out);
    if (*decomps_cmd) return run_decomps(decomps, out);
    if (*ball_cmd) return run_ball(ball_args, out);
    if (*dist_cmd) return run_dist(dist, out);
    if (*formula_cmd) return run_formula(formula, out);
    if (*qf_cmd) return run_quasiflat(qf, out);
    if (*cone_cmd) return run_cone(cone_args, out);
    if (*delta_cmd) return run_delta(delta, out);
  } catch (const InvalidArgument& ex) {
    err << one_line(ex.what()) << '\n';
    return 2;
  } catch (const Error& ex) {
    err << one_line(ex.what()) << '\n';
    return 1;
  } catch (const std::exception& ex) {
    err << "cli: " << one_line(ex.what()) << '\n';
    return 1;
  }
  return 2;
}

}  // namespace interp::cli
