// nscolor: colour-difference computation, STRESS statistics, fitting,
// synthetic dataset generation and ellipse plotting.
//
// Exit codes: 0 success, 2 usage/config error, 3 data error, 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nscolor/nscolor.hpp"

namespace {

using nlohmann::ordered_json;
using namespace nscolor;

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNumerical = 4 };

/// Error that carries its exit code.
struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw CliError(kUsage, "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- compute

struct ComputeArgs {
  std::string input;
  std::string output;
  std::string formula = "ciede2000";
  bool xyz = false;
  std::vector<double> white{kWorkedExampleWhite.Xn, kWorkedExampleWhite.Yn, kWorkedExampleWhite.Zn};
  double kl = 1.0, kc = 1.0, kh = 1.0;
  std::string correction;
  std::optional<double> a, b, c, d;
  bool json = false;
};

struct ComputeRow {
  std::int64_t pair_id;
  std::vector<std::pair<std::string, double>> values;
};

int cmd_compute(const ComputeArgs& args) {
  std::vector<std::pair<std::int64_t, ColorPair>> pairs;
  if (args.xyz) {
    if (args.white.size() != 3) throw CliError(kUsage, "--white needs three values");
    const WhitePoint w{args.white[0], args.white[1], args.white[2]};
    for (const auto& p : io::load_file(args.input, [](std::istream& in) { return io::load_xyz_pairs(in); }))
      pairs.emplace_back(p.pair_id, pair_differences(xyz_to_lab(p.reference, w), xyz_to_lab(p.sample, w)));
  } else {
    for (const auto& p : io::load_file(args.input, [](std::istream& in) {
           return io::load_pairs(in, io::MagnitudeMode::free);
         }))
      pairs.emplace_back(p.pair_id, p.pair());
  }

  const ParametricFactors k{args.kl, args.kc, args.kh};
  std::vector<ComputeRow> rows;
  std::vector<std::string> columns{"pair_id", "de"};

  if (!args.correction.empty()) {
    if (args.formula == "ns") throw CliError(kUsage, "--correction needs a base formula, not ns");
    const FormulaId base = parse_formula(args.formula);
    FormulaCoefficients co = base == FormulaId::cmc ? FormulaCoefficients{base, 0.0, 1.0, 1.0, 1.0}
                                                    : registry(base);
    if (args.a) co.a = *args.a;
    if (args.b) co.b = *args.b;
    if (args.c) co.c = *args.c;
    if (args.d) co.d = *args.d;
    const CorrectionKind kind = parse_correction(args.correction);
    columns.push_back("base_de");
    for (const auto& [id, p] : pairs) {
      const Components comps = formula_components(base, p, k);
      rows.push_back({id, {{"de", corrected_delta_e(kind, base, comps, co)}, {"base_de", comps.total()}}});
    }
  } else if (args.formula == "ns") {
    columns.insert(columns.end(), {"de00", "d_l", "dL", "dC", "dH", "rt"});
    for (const auto& [id, p] : pairs) {
      const NsResult ns = delta_e_ns(p.reference, p.sample);
      const De2000Breakdown bd = delta_e_ciede2000(p);
      rows.push_back({id,
                      {{"de", ns.de_ns}, {"de00", ns.de00}, {"d_l", ns.d_l}, {"dL", bd.dL_prime},
                       {"dC", bd.dC_prime}, {"dH", bd.dH_prime}, {"rt", bd.rt_term}}});
    }
  } else {
    const FormulaId base = parse_formula(args.formula);
    if (base == FormulaId::ciede2000) columns.insert(columns.end(), {"dL", "dC", "dH", "rt"});
    for (const auto& [id, p] : pairs) {
      const Components comps = formula_components(base, p, k);
      ComputeRow row{id, {{"de", comps.total()}}};
      if (base == FormulaId::ciede2000)
        row.values.insert(row.values.end(), {{"dL", comps.lightness}, {"dC", comps.chroma},
                                             {"dH", comps.hue}, {"rt", comps.rotation}});
      rows.push_back(std::move(row));
    }
  }

  Output out(args.output);
  if (args.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"pair_id", r.pair_id}};
      for (const auto& [name, v] : r.values) j[name] = v;
      arr.push_back(std::move(j));
    }
    write_json(out.stream(), {{"formula", args.formula}, {"rows", std::move(arr)}});
    return kOk;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out.stream() << (i ? "," : "") << columns[i];
  out.stream() << '\n';
  for (const auto& r : rows) {
    out.stream() << r.pair_id;
    for (const auto& [_, v] : r.values) out.stream() << ',' << io::fmt6(v);
    out.stream() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- stress / ftest

int cmd_stress(const std::string& visual_path, const std::string& pred_path, bool json,
               const std::string& output) {
  const auto records =
      io::load_file(visual_path, [](std::istream& in) { return io::load_assessments(in); });
  const auto preds = io::load_file(pred_path, [](std::istream& in) { return io::load_predictions(in); });
  const auto panel = panel_mean_dv(records);

  std::vector<double> a, b;
  std::set<std::int64_t> seen;
  for (const auto& [id, de] : preds) {
    auto it = panel.find(id);
    if (it == panel.end())
      throw CliError(kData, "pair id mismatch: " + std::to_string(id) + " has no assessments");
    seen.insert(id);
    a.push_back(it->second);
    b.push_back(de);
  }
  for (const auto& [id, _] : panel)
    if (!seen.contains(id))
      throw CliError(kData, "pair id mismatch: " + std::to_string(id) + " has no prediction");

  const StressReport rep = stress(a, b);
  Output out(output);
  if (json) {
    write_json(out.stream(), to_json(rep));
  } else {
    out.stream() << "stress,f_scale,n\n"
                 << io::fmt6(rep.stress) << ',' << io::fmt6(rep.f_scale) << ',' << rep.n << '\n';
  }
  return kOk;
}

int cmd_ftest(double s1, double s2, double confidence, std::optional<std::size_t> n1,
              std::optional<std::size_t> n2, bool json) {
  if (n1.has_value() != n2.has_value()) throw CliError(kUsage, "--n1 and --n2 go together");
  const FTestResult r = f_test(s1, s2, confidence, n1, n2);
  if (json) {
    write_json(std::cout, to_json(r));
  } else {
    std::cout << "f_value,lower_crit,upper_crit,verdict\n"
              << io::fmt6(r.f_value) << ',' << io::fmt6(r.lower_crit) << ','
              << io::fmt6(r.upper_crit) << ',' << (r.significant ? "significant" : "not significant")
              << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string target;
  std::string pairs;
  std::string assessments;
  std::string formula = "ciede2000";
  std::string output;
  std::vector<double> line;
  bool joint = false;
  bool by_magnitude = false;
  bool per_center_only = false;
};

int cmd_fit(const FitArgs& args) {
  const auto pairs = io::load_file(args.pairs, [](std::istream& in) {
    return io::load_pairs(in, io::MagnitudeMode::free);
  });
  const auto records =
      io::load_file(args.assessments, [](std::istream& in) { return io::load_assessments(in); });
  Output out(args.output);

  if (args.target == "ellipsoid") {
    const auto panel = panel_mean_dv(records);
    std::map<std::pair<std::int64_t, double>, std::vector<const PairRecord*>> groups;
    for (const auto& p : pairs)
      if (panel.contains(p.pair_id))
        groups[{p.center_id, args.per_center_only ? 0.0 : p.magnitude}].push_back(&p);
    ordered_json fits = ordered_json::array();
    for (const auto& [key, members] : groups) {
      std::vector<LabDelta> diffs;
      std::vector<double> dv;
      for (const PairRecord* p : members) {
        diffs.push_back(lab_delta(p->pair()));
        dv.push_back(panel.at(p->pair_id));
      }
      const EllipsoidFit f = fit_ellipsoid(diffs, dv, members.front()->reference);
      ordered_json j{{"center_id", key.first}};
      if (!args.per_center_only) j["magnitude"] = key.second;
      j.update(to_json(f));
      fits.push_back(std::move(j));
    }
    write_json(out.stream(), {{"target", "ellipsoid"}, {"fits", std::move(fits)}});
    return kOk;
  }

  const FormulaId base = parse_formula(args.formula);
  const FitData data = make_fit_data(pairs, records);
  ordered_json doc{{"target", args.target}, {"base", std::string(to_string(base))}};

  auto factor_fit = [&](FitTarget t) {
    if (args.by_magnitude) {
      ordered_json by = ordered_json::array();
      for (const auto& [m, r] : fit_parametric_by_magnitude(data, base, t)) {
        ordered_json j{{"magnitude", m}};
        j.update(to_json(r));
        by.push_back(std::move(j));
      }
      doc["by_magnitude"] = std::move(by);
    }
    doc["result"] = to_json(fit_parametric_factors(data, base, t));
  };

  if (args.target == "kl") {
    factor_fit(FitTarget::kL_only);
  } else if (args.target == "klkc") {
    factor_fit(FitTarget::kL_kC);
  } else if (args.target == "dl") {
    doc["result"] = to_json(fit_dl_line(data, base));
  } else if (args.target == "power") {
    doc["result"] = to_json(fit_power(data, base, FitTarget::power_c));
  } else if (args.target == "magpower") {
    PowerOptions opt;
    opt.joint = args.joint;
    if (!args.line.empty()) {
      if (args.line.size() != 2) throw CliError(kUsage, "--line needs a,b");
      opt.line = std::pair{args.line[0], args.line[1]};
    }
    doc["mode"] = args.joint ? "joint" : "sequential";
    doc["result"] = to_json(fit_power(data, base, FitTarget::magnitude_power_d, opt));
  } else {
    throw CliError(kUsage, "unknown fit target '" + args.target + "'");
  }
  write_json(out.stream(), doc);
  return kOk;
}

// ---------------------------------------------------------------- gen

struct GenConfig {
  std::vector<ColorCenter> centers;
  std::vector<double> magnitudes;
  GroundTruth truth;
  SynthesisOptions synth;
};

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
  throw CliError(kUsage, "invalid config field '" + field + "': " + why);
}

template <class T>
T config_get(const nlohmann::json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(field, "wrong type");
  }
}

GenConfig parse_gen_config(const nlohmann::json& cfg) {
  static const std::set<std::string> known{"centers",   "magnitudes", "noise_sigma", "n_observers",
                                           "seed",      "truth",      "repeat_centers"};
  if (!cfg.is_object()) config_error("<root>", "must be an object");
  for (const auto& [key, _] : cfg.items())
    if (!known.contains(key)) config_error(key, "unknown field");

  GenConfig g;
  const auto table = canonical_centers();
  if (cfg.contains("centers")) {
    const auto& cs = cfg.at("centers");
    if (!cs.is_array()) config_error("centers", "must be an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string field = "centers[" + std::to_string(i) + "]";
      const auto& c = cs[i];
      if (c.is_number_integer()) {
        const auto id = c.get<std::int64_t>();
        if (id < 1 || id > static_cast<std::int64_t>(table.size()))
          config_error(field, "no canonical center " + std::to_string(id));
        g.centers.push_back(table[static_cast<std::size_t>(id - 1)]);
      } else if (c.is_object()) {
        ColorCenter cc;
        cc.id = config_get<std::int64_t>(c.value("id", nlohmann::json()), field + ".id");
        cc.name = c.value("name", "center " + std::to_string(cc.id));
        cc.lab = {config_get<double>(c.value("L", nlohmann::json()), field + ".L"),
                  config_get<double>(c.value("a", nlohmann::json()), field + ".a"),
                  config_get<double>(c.value("b", nlohmann::json()), field + ".b")};
        g.centers.push_back(cc);
      } else {
        config_error(field, "must be a center id or an object with id, L, a, b");
      }
    }
  } else {
    g.centers = table;
  }

  if (cfg.contains("magnitudes")) {
    g.magnitudes = config_get<std::vector<double>>(cfg.at("magnitudes"), "magnitudes");
    for (double m : g.magnitudes)
      if (!(m > 0.0)) config_error("magnitudes", "must be positive");
  } else {
    g.magnitudes.assign(kCanonicalMagnitudes.begin(), kCanonicalMagnitudes.end());
  }

  g.synth.noise_sigma = config_get<double>(cfg.value("noise_sigma", nlohmann::json(0.0)), "noise_sigma");
  if (g.synth.noise_sigma < 0.0) config_error("noise_sigma", "must be non-negative");
  g.synth.n_observers = config_get<int>(cfg.value("n_observers", nlohmann::json(19)), "n_observers");
  if (g.synth.n_observers < 1) config_error("n_observers", "must be at least 1");
  g.synth.seed = config_get<std::uint64_t>(cfg.value("seed", nlohmann::json(1)), "seed");
  if (cfg.contains("repeat_centers"))
    for (auto id : config_get<std::vector<std::int64_t>>(cfg.at("repeat_centers"), "repeat_centers"))
      g.synth.repeat_centers.insert(id);

  if (cfg.contains("truth")) {
    const auto& t = cfg.at("truth");
    if (!t.is_object()) config_error("truth", "must be an object");
    try {
      g.truth.base = parse_formula(t.value("formula", std::string("ciede2000")));
    } catch (const Error& e) {
      config_error("truth.formula", e.what());
    }
    try {
      g.truth.model = parse_truth_model(t.value("model", std::string("ns")));
    } catch (const Error& e) {
      config_error("truth.model", e.what());
    }
    if (g.truth.base != FormulaId::cmc) {
      try {
        g.truth.coeffs = registry(g.truth.base);
      } catch (const Error& e) {
        config_error("truth.formula", e.what());
      }
    }
    for (const char* f : {"kL", "kC", "kH"}) {
      if (!t.contains(f)) continue;
      const double v = config_get<double>(t.at(f), std::string("truth.") + f);
      if (!(v > 0.0)) config_error(std::string("truth.") + f, "must be positive");
      (f[1] == 'L' ? g.truth.factors.kL : f[1] == 'C' ? g.truth.factors.kC : g.truth.factors.kH) = v;
    }
    if (t.contains("a")) g.truth.coeffs.a = config_get<double>(t.at("a"), "truth.a");
    if (t.contains("b")) g.truth.coeffs.b = config_get<double>(t.at("b"), "truth.b");
    if (t.contains("c")) g.truth.coeffs.c = config_get<double>(t.at("c"), "truth.c");
    if (t.contains("d")) g.truth.coeffs.d = config_get<double>(t.at("d"), "truth.d");
  }
  return g;
}

int cmd_gen(std::string config_path, const std::string& pairs_out, const std::string& assess_out) {
  if (config_path.empty()) {
    if (const char* env = std::getenv("NSCOLOR_CONFIG")) config_path = env;
  }
  nlohmann::json cfg = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw CliError(kUsage, "cannot open config '" + config_path + "'");
    try {
      cfg = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CliError(kUsage, std::string("config is not valid JSON: ") + e.what());
    }
  }
  const GenConfig g = parse_gen_config(cfg);
  const ExperimentDesign design = generate_design(g.centers, g.magnitudes);

  {
    Output out(pairs_out);
    io::save_pairs(out.stream(), design.pairs);
  }
  if (!assess_out.empty()) {
    const auto records = synthesize_assessments(design, g.truth, g.synth);
    Output out(assess_out);
    io::save_assessments(out.stream(), records);
  }
  return kOk;
}

// ---------------------------------------------------------------- plot

int cmd_plot(const std::string& fits_path, const std::string& output, double magnify) {
  std::ifstream in(fits_path);
  if (!in) throw CliError(kUsage, "cannot open '" + fits_path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CliError(kData, std::string("fits file is not valid JSON: ") + e.what());
  }
  const nlohmann::json& fits = doc.is_object() && doc.contains("fits") ? doc.at("fits") : doc;
  if (!fits.is_array()) throw CliError(kData, "fits file must hold an array of ellipsoid fits");
  std::vector<PlotEntry> entries;
  try {
    for (const auto& f : fits) {
      PlotEntry e{ellipsoid_from_json(f), std::nullopt};
      if (f.contains("magnitude")) e.magnitude = f.at("magnitude").get<double>();
      entries.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw CliError(kData, std::string("malformed fit entry: ") + e.what());
  }
  Output out(output);
  out.stream() << render_ellipses_svg(entries, {magnify});
  return kOk;
}

// ---------------------------------------------------------------- coefficients / variability

int cmd_coefficients(bool json) {
  if (json) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : kCoefficientTable) arr.push_back(to_json(row));
    write_json(std::cout, arr);
    return kOk;
  }
  std::cout << "formula,a,b,c,d,crossover\n";
  for (const auto& r : kCoefficientTable)
    std::cout << to_string(r.formula_id) << ',' << io::fmt6(r.a) << ',' << io::fmt6(r.b) << ','
              << io::fmt6(r.c) << ',' << io::fmt6(r.d) << ',' << io::fmt6(crossover(r.a, r.b))
              << '\n';
  return kOk;
}

int cmd_variability(const std::string& assess_path, const std::string& pairs_path, bool json,
                    const std::string& output) {
  const auto records =
      io::load_file(assess_path, [](std::istream& in) { return io::load_assessments(in); });
  std::map<std::int64_t, PairLabels> labels;
  if (!pairs_path.empty())
    labels = pair_labels(io::load_file(pairs_path, [](std::istream& in) {
      return io::load_pairs(in, io::MagnitudeMode::free);
    }));
  const VariabilityReport rep = observer_variability(records, labels);
  Output out(output);
  if (json) {
    write_json(out.stream(), to_json(rep));
    return kOk;
  }
  auto& os = out.stream();
  os << "kind,key,stress\n";
  for (const auto& [obs, s] : rep.intra) os << "intra,observer=" << obs << ',' << io::fmt6(s) << '\n';
  if (rep.intra_mean) os << "intra,mean," << io::fmt6(*rep.intra_mean) << '\n';
  for (const auto& [obs, s] : rep.inter) os << "inter,observer=" << obs << ',' << io::fmt6(s) << '\n';
  os << "inter,mean," << io::fmt6(rep.inter_mean) << '\n';
  for (const auto& g : rep.groups) os << "inter," << g.group << ',' << io::fmt6(g.mean_stress) << '\n';
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"nscolor: colour-difference formulas, STRESS statistics and fitting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nscolor 0.1.0");

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Colour differences for every pair in a file");
  c->add_option("input", compute.input, "pairs CSV (or XYZ pairs CSV with --xyz)")
      ->required()
      ->check(CLI::ExistingFile);
  c->add_option("--formula", compute.formula, "cielab|cie94|cmc|ciede2000|ns")
      ->check(CLI::IsMember({"cielab", "cie94", "cmc", "ciede2000", "ns"}));
  c->add_flag("--xyz", compute.xyz, "input holds XYZ tristimulus pairs");
  c->add_option("--white", compute.white, "reference white Xn,Yn,Zn")->delimiter(',')->expected(3);
  c->add_option("--kl", compute.kl, "lightness factor (l for CMC)");
  c->add_option("--kc", compute.kc, "chroma factor (c for CMC)");
  c->add_option("--kh", compute.kh, "hue factor");
  c->add_option("--correction", compute.correction, "magnitude|power|magnitude_power")
      ->check(CLI::IsMember({"magnitude", "power", "magnitude_power"}));
  c->add_option("--dl-a", compute.a, "override lightness-factor slope a");
  c->add_option("--dl-b", compute.b, "override lightness-factor intercept b");
  c->add_option("--power-c", compute.c, "override power exponent c");
  c->add_option("--power-d", compute.d, "override magnitude-power exponent d");
  c->add_flag("--json", compute.json, "emit one JSON document");
  c->add_option("-o,--output", compute.output, "output path (default stdout)");

  std::string visual, predictions, stress_out;
  bool stress_json = false;
  auto* s = app.add_subcommand("stress", "STRESS between visual data and predictions");
  s->add_option("--visual", visual, "assessments CSV")->required()->check(CLI::ExistingFile);
  s->add_option("--predictions", predictions, "CSV with pair_id and de columns")
      ->required()
      ->check(CLI::ExistingFile);
  s->add_flag("--json", stress_json);
  s->add_option("-o,--output", stress_out);

  double s1 = 0.0, s2 = 0.0, confidence = 0.95;
  std::optional<std::size_t> n1, n2;
  bool ftest_json = false;
  auto* f = app.add_subcommand("ftest", "F-test on two STRESS values");
  f->add_option("stress1", s1)->required();
  f->add_option("stress2", s2)->required();
  f->add_option("--confidence", confidence)->check(CLI::Range(0.0, 1.0));
  f->add_option("--n1", n1, "sample count of the first dataset");
  f->add_option("--n2", n2, "sample count of the second dataset");
  f->add_flag("--json", ftest_json);

  FitArgs fit;
  auto* ft = app.add_subcommand("fit", "Fit an ellipsoid or formula parameters to visual data");
  ft->add_option("--target", fit.target, "ellipsoid|kl|klkc|dl|power|magpower")
      ->required()
      ->check(CLI::IsMember({"ellipsoid", "kl", "klkc", "dl", "power", "magpower"}));
  ft->add_option("--pairs", fit.pairs)->required()->check(CLI::ExistingFile);
  ft->add_option("--assessments", fit.assessments)->required()->check(CLI::ExistingFile);
  ft->add_option("--formula", fit.formula, "base formula")
      ->check(CLI::IsMember({"cielab", "cie94", "cmc", "ciede2000"}));
  ft->add_option("--line", fit.line, "fixed a,b for magpower")->delimiter(',');
  ft->add_flag("--joint", fit.joint, "magpower: fit a, b and d together");
  ft->add_flag("--by-magnitude", fit.by_magnitude, "kl/klkc: also fit each magnitude subset");
  ft->add_flag("--per-center", fit.per_center_only, "ellipsoid: pool magnitudes per center");
  ft->add_option("-o,--output", fit.output);

  std::string gen_config, pairs_out, assess_out;
  auto* g = app.add_subcommand("gen", "Generate a design and synthetic assessments");
  g->add_option("config", gen_config, "JSON config (default: $NSCOLOR_CONFIG)");
  g->add_option("--pairs-out", pairs_out, "pairs CSV path (default stdout)");
  g->add_option("--assessments-out", assess_out, "assessments CSV path");

  std::string fits_path, plot_out;
  double magnify = 1.0;
  auto* p = app.add_subcommand("plot", "SVG of a*b* ellipses from ellipsoid fits");
  p->add_option("fits", fits_path, "JSON from `fit --target ellipsoid`")->required();
  p->add_option("--magnify", magnify)->check(CLI::PositiveNumber);
  p->add_option("-o,--output", plot_out);

  bool coef_json = false;
  auto* co = app.add_subcommand("coefficients", "Print the optimized coefficient table");
  co->add_flag("--json", coef_json);

  std::string var_assess, var_pairs, var_out;
  bool var_json = false;
  auto* v = app.add_subcommand("variability", "Intra- and inter-observer STRESS");
  v->add_option("--assessments", var_assess)->required()->check(CLI::ExistingFile);
  v->add_option("--pairs", var_pairs, "pairs CSV for group breakdowns")->check(CLI::ExistingFile);
  v->add_flag("--json", var_json);
  v->add_option("-o,--output", var_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return cmd_compute(compute);
    if (*s) return cmd_stress(visual, predictions, stress_json, stress_out);
    if (*f) return cmd_ftest(s1, s2, confidence, n1, n2, ftest_json);
    if (*ft) return cmd_fit(fit);
    if (*g) return cmd_gen(gen_config, pairs_out, assess_out);
    if (*p) return cmd_plot(fits_path, plot_out, magnify);
    if (*co) return cmd_coefficients(coef_json);
    if (*v) return cmd_variability(var_assess, var_pairs, var_json, var_out);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotImplementedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const OptimizationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
